"""HTTP surface for sessions, data payloads, and evaluation."""

from wildfire_advisor.service.api import ApiCode, ApiError, create_app

__all__ = ["ApiCode", "ApiError", "create_app"]
