"""Multi-agent, retrieval-augmented decision support for wildfire hazards."""

__version__ = "0.1.0"
