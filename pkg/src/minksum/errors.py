"""Exception hierarchy shared by every module of the kernel."""

from dataclasses import dataclass, field
from fractions import Fraction


def _show(v) -> str:
    if isinstance(v, Fraction):
        return str(v)
    if isinstance(v, (tuple, list)):
        return "(" + ", ".join(_show(x) for x in v) + ")"
    return str(v)


class MinksumError(Exception):
    """Base class for all errors raised by minksum."""


class DimensionMismatch(MinksumError, ValueError):
    pass


class ParseError(MinksumError, ValueError):
    pass


class InvalidPolygon(MinksumError, ValueError):
    pass


class NotFullDimensional(MinksumError, ValueError):
    pass


class GenerationFailed(MinksumError):
    pass


class CertificateError(MinksumError):
    """A facet accepted by the local test failed the global support test."""


@dataclass
class DegeneracyReport:
    """Witnesses explaining why an input violates non-degeneracy.

    Each witness is a dict with at least a ``kind`` key (``tie``, ``span``
    or ``zero-side``) plus the face ids involved.
    """

    witnesses: list = field(default_factory=list)

    def __bool__(self):
        return bool(self.witnesses)

    def __str__(self):
        lines = [f"degeneracy report: {len(self.witnesses)} witness(es)"]
        for w in self.witnesses:
            rest = ", ".join(f"{k}={_show(v)}" for k, v in w.items() if k != "kind")
            lines.append(f"  {w['kind']}: {rest}")
        return "\n".join(lines)


class DegeneracyError(MinksumError):
    """Input breaks the non-degeneracy assumption; carries a report."""

    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report if report is not None else DegeneracyReport()


class DegenerateSpan(DegeneracyError):
    pass


class DegenerateTie(DegeneracyError):
    def __init__(self, message, vertex_ids=(), report=None):
        super().__init__(message, report)
        self.vertex_ids = tuple(vertex_ids)


class ZeroSideSign(DegeneracyError):
    pass


class ValidationFailure(MinksumError):
    def __init__(self, report):
        super().__init__("lattice validation failed:\n" + "\n".join(report.violations[:20]))
        self.report = report
