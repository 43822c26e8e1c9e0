"""Exception hierarchy shared by every sliplab module."""

from __future__ import annotations


class SlipLabError(Exception):
    """Base class for all sliplab failures."""


class NonPrimeModulus(SlipLabError, ValueError):
    def __init__(self, p: int) -> None:
        super().__init__(f"modulus {p} is not a prime in [2, 65536]")
        self.p = p


class DivisionByZero(SlipLabError, ZeroDivisionError):
    pass


class DimensionMismatch(SlipLabError, ValueError):
    pass


class AlgebraMismatch(SlipLabError, ValueError):
    pass


class EnumerationCapExceeded(SlipLabError):
    def __init__(self, p: int, d: int, cap: int, what: str = "elements") -> None:
        super().__init__(f"enumerating {what} for p={p}, d={d} exceeds cap {cap}")
        self.p = p
        self.d = d
        self.cap = cap


class ValidationError(SlipLabError, ValueError):
    """An algebra or module fails one of its defining axioms."""


class NonAssociative(ValidationError):
    def __init__(self, i: int, j: int, k: int) -> None:
        super().__init__(f"(e{i} e{j}) e{k} != e{i} (e{j} e{k})")
        self.triple = (i, j, k)


class UnitAxiomViolated(ValidationError):
    def __init__(self, i: int) -> None:
        super().__init__(f"unit axiom fails on basis vector e{i}")
        self.index = i


class ModuleAxiomViolated(ValidationError):
    def __init__(self, i: int, j: int, k: int, kind: str = "right") -> None:
        super().__init__(f"{kind} module axiom fails on basis triple ({i}, {j}, {k})")
        self.triple = (i, j, k)
        self.kind = kind


class UnitActionViolated(ValidationError):
    def __init__(self, i: int, side: str = "right") -> None:
        super().__init__(f"{side} unit action fails on module basis vector f{i}")
        self.index = i
        self.side = side


class NotIdempotent(SlipLabError, ValueError):
    pass


class NotLeftSemicentral(SlipLabError, ValueError):
    pass


class NontrivialRequired(SlipLabError, ValueError):
    pass


class NotLIP(SlipLabError, ValueError):
    pass


class BlockStructureViolated(SlipLabError):
    """A LIP map on a triangular algebra broke the expected block shape.

    This would be a counterexample to the block decomposition of LIP maps,
    so it is raised rather than logged.
    """


class NotTriangulating(SlipLabError, ValueError):
    def __init__(self, clause: str, message: str) -> None:
        super().__init__(f"clause ({clause}): {message}")
        self.clause = clause


class ParseError(SlipLabError, ValueError):
    """Malformed input file; ``line`` is 1-based (0 when not tied to a line)."""

    def __init__(self, line: int, message: str, path: str = "") -> None:
        if path:
            where = f"{path}:{line}" if line else path
        else:
            where = f"line {line}" if line else "input"
        super().__init__(f"{where}: {message}")
        self.line = line
        self.path = path


class MissingEntry(ParseError):
    def __init__(self, keyword: str, i: int, j: int, line: int = 0, path: str = "") -> None:
        super().__init__(line, f"missing '{keyword} {i} {j}' row", path)
        self.entry = (i, j)
        self.keyword = keyword


class ValidationFailed(ParseError):
    """Parsed data violates an axiom; wraps the underlying :class:`ValidationError`."""

    def __init__(self, line: int, cause: ValidationError, path: str = "") -> None:
        super().__init__(line, f"validation failed: {cause}", path)
        self.cause = cause
