"""Exception hierarchy.

Every error carries a ``witness`` (the offending element, pair, triple or
parameter) so callers and the CLI can report *why* something failed.
"""

from __future__ import annotations

from typing import Any


class GroupoidError(Exception):
    """Base class; ``kind`` is the class name, ``witness`` is JSON-friendly."""

    exit_code = 1

    def __init__(self, message: str = "", witness: Any = None):
        super().__init__(message or self.__class__.__name__)
        self.witness = witness

    @property
    def kind(self) -> str:
        return type(self).__name__

    def to_json(self) -> dict:
        return {"error": {"kind": self.kind, "message": str(self), "witness": _jsonable(self.witness)}}


def _jsonable(obj: Any) -> Any:
    if obj is None or isinstance(obj, (bool, int, float, str)):
        return obj
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if hasattr(obj, "id") and isinstance(getattr(obj, "id"), str):
        return obj.id
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = [_jsonable(v) for v in obj]
        return sorted(items, key=repr) if isinstance(obj, (set, frozenset)) else items
    return repr(obj)


# axiom failures (finite groups)
class NotAssociative(GroupoidError):
    pass


class NoIdentity(GroupoidError):
    pass


class NoInverse(GroupoidError):
    pass


class BadTable(GroupoidError):
    pass


# catalog / constructions
class UnknownName(GroupoidError):
    exit_code = 2


class BadParams(GroupoidError):
    exit_code = 2


class NotAHomomorphism(GroupoidError):
    pass


class NotAnAutomorphism(GroupoidError):
    pass


class NotPrime(GroupoidError):
    exit_code = 2


class NotASubgroup(GroupoidError):
    pass


class CapExceeded(GroupoidError):
    exit_code = 3


# raw groupoid axioms
class AssociativityViolation(GroupoidError):
    pass


class MissingIdentity(GroupoidError):
    pass


class MissingInverse(GroupoidError):
    pass


class CompositionDomainError(GroupoidError):
    pass


class EmptyGroupoid(GroupoidError):
    pass


# structured groupoids
class DuplicateLabels(GroupoidError):
    pass


class NotComposable(GroupoidError):
    """Signals that a product is undefined; not an axiom failure."""


class UnknownIdentity(GroupoidError):
    pass


class UnknownElement(GroupoidError):
    pass


class NotConnected(GroupoidError):
    pass


# subgroupoids
class NotClosed(GroupoidError):
    pass


class MissingIdentityOf(GroupoidError):
    pass


class Empty(GroupoidError):
    pass


class NotWide(GroupoidError):
    pass


class NotWideConnected(GroupoidError):
    pass


# sylow
class HypothesisNotMet(GroupoidError):
    pass


class NoSuchGroupOrder(GroupoidError):
    pass


class ProfileInfeasible(GroupoidError):
    pass


# classification
class TableGap(GroupoidError):
    pass


class CatalogGap(GroupoidError):
    pass


class OracleMismatch(GroupoidError):
    """A closed formula disagreed with its brute-force oracle."""
