"""Canonical text serialization for domain values.

The canonical form is UTF-8 JSON with sorted keys and no insignificant
whitespace. It is the on-disk and on-wire representation for sessions,
fixtures, and API bodies: equal values always produce identical bytes, so
replay hashing and byte-level comparisons are meaningful.
"""

from __future__ import annotations

import json
from typing import Any, Callable, Type, TypeVar

T = TypeVar("T")

# class -> type name, type name -> (class, from_payload)
_NAME_BY_CLASS: dict[type, str] = {}
_DECODERS: dict[str, tuple[type, Callable[[Any], Any]]] = {}


def canonical_type(name: str) -> Callable[[Type[T]], Type[T]]:
    """Register a class for envelope-tagged canonical (de)serialization.

    The class must provide ``to_payload(self)`` and ``from_payload(cls, payload)``.
    """

    def register(cls: Type[T]) -> Type[T]:
        if name in _DECODERS:
            raise ValueError(f"canonical type {name!r} already registered")
        _NAME_BY_CLASS[cls] = name
        _DECODERS[name] = (cls, cls.from_payload)  # type: ignore[attr-defined]
        return cls

    return register


def canonical_enum(name: str, enum_cls: Type[T]) -> Type[T]:
    """Register an enum; its payload is the member value."""
    if name in _DECODERS:
        raise ValueError(f"canonical type {name!r} already registered")
    if not hasattr(enum_cls, "to_payload"):
        enum_cls.to_payload = lambda self: self.value  # type: ignore[attr-defined]
    _NAME_BY_CLASS[enum_cls] = name
    _DECODERS[name] = (enum_cls, enum_cls)
    return enum_cls


def canonical_dumps(obj: Any) -> str:
    """Serialize a JSON-compatible object to its canonical text form."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"),
                      ensure_ascii=False, allow_nan=False)


def canonical_serialize(value: Any) -> bytes:
    """Serialize a registered domain value to canonical UTF-8 bytes.

    Raises TypeError for unregistered types. Invariant-violating values
    cannot normally reach this point because constructors validate, but
    ``to_payload`` implementations may re-raise validation errors.
    """
    cls = type(value)
    name = _NAME_BY_CLASS.get(cls)
    if name is None:
        raise TypeError(f"no canonical serialization registered for {cls.__name__}")
    envelope = {"type": name, "value": value.to_payload()}
    return canonical_dumps(envelope).encode("utf-8")


def canonical_deserialize(data: bytes | str) -> Any:
    """Inverse of canonical_serialize: reconstruct the domain value."""
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    envelope = json.loads(text)
    if not isinstance(envelope, dict) or "type" not in envelope or "value" not in envelope:
        raise ValueError("not a canonical envelope")
    name = envelope["type"]
    entry = _DECODERS.get(name)
    if entry is None:
        raise ValueError(f"unknown canonical type {name!r}")
    _, from_payload = entry
    return from_payload(envelope["value"])


def canonical_loads(text: str | bytes) -> Any:
    """Parse canonical JSON text without envelope interpretation."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    return json.loads(text)
