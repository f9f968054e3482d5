"""Exception hierarchy shared by every latspec module."""

from __future__ import annotations

import os


class LatspecError(Exception):
    """Base class for all structured latspec errors."""

    code = "error"

    def __init__(self, message: str, **details):
        super().__init__(message)
        self.details = details

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self), **self.details}


class NotAPoset(LatspecError):
    code = "not_a_poset"


class NotALattice(LatspecError):
    code = "not_a_lattice"


class MissingBounds(LatspecError):
    code = "missing_bounds"


class UnknownElement(LatspecError):
    code = "unknown_element"


class CapacityExceeded(LatspecError):
    code = "capacity_exceeded"


class MemberOutOfRange(LatspecError):
    code = "member_out_of_range"


class NotAGroup(LatspecError):
    code = "not_a_group"


class UnknownCheck(LatspecError):
    code = "unknown_check"


class UnknownSelector(LatspecError):
    code = "unknown_selector"


class SchemaError(LatspecError):
    code = "schema_error"


DEFAULT_CAPS = {"lattice": 4096, "module": 512, "group": 128, "divisors": 4096}


def capacity(kind: str) -> int:
    """Capacity cap for ``kind``; ``LATSPEC_CAP`` overrides every cap at once."""
    override = os.environ.get("LATSPEC_CAP")
    if override:
        try:
            return int(override)
        except ValueError:
            raise SchemaError(f"LATSPEC_CAP must be an integer, got {override!r}") from None
    return DEFAULT_CAPS[kind]
