from __future__ import annotations


class WorkbenchError(ValueError):
    kind = "workbench-error"


class InvalidParameter(WorkbenchError):
    kind = "invalid-parameter"


class SizeCapExceeded(WorkbenchError):
    kind = "size-cap-exceeded"

    def __init__(self, what: str, order: int | None, cap: int, *, order_text: str | None = None) -> None:
        # order is None when it is too large to expand; order_text then carries it as a power
        self.order = order
        self.cap = cap
        self.order_text = order_text if order_text is not None else str(order)
        super().__init__(f"{what} would have order {self.order_text}, above the size cap {cap}")


class InvalidProjection(WorkbenchError):
    kind = "invalid-projection"

    def __init__(self, element: int, reason: str) -> None:
        self.element = element
        super().__init__(f"element {element} is not a projection ({reason})")


class AxiomViolation(WorkbenchError):
    kind = "axiom-violation"

    def __init__(self, law: str, witness: tuple[int, ...], detail: str = "") -> None:
        self.law = law
        self.witness = witness
        names = ("x", "y", "z")
        at = ", ".join(f"{n}={v}" for n, v in zip(names, witness))
        suffix = f": {detail}" if detail else ""
        super().__init__(f"ring axiom '{law}' fails at {at or 'table shape'}{suffix}")


class InvolutionViolation(WorkbenchError):
    kind = "involution-violation"

    def __init__(self, law: str, witness: tuple[int, ...], detail: str = "") -> None:
        self.law = law
        self.witness = witness
        names = ("x", "y")
        at = ", ".join(f"{n}={v}" for n, v in zip(names, witness))
        suffix = f": {detail}" if detail else ""
        super().__init__(f"involution axiom '{law}' fails at {at}{suffix}")


class NotAUnit(WorkbenchError):
    kind = "not-a-unit"

    def __init__(self, element: int) -> None:
        self.element = element
        super().__init__(f"element {element} has no two-sided inverse")


class SpecSyntaxError(WorkbenchError):
    kind = "syntax-error"

    def __init__(self, message: str, line: int, column: int) -> None:
        self.line = line
        self.column = column
        super().__init__(f"syntax error at line {line}, column {column}: {message}")


class SpecFormatError(WorkbenchError):
    kind = "format-error"

    def __init__(self, path: str, message: str) -> None:
        self.path = path
        super().__init__(f"{path}: {message}")


class UnknownKind(SpecFormatError):
    kind = "unknown-kind"


class InvolutionInadmissible(SpecFormatError):
    kind = "involution-inadmissible"


class ConsistencyError(RuntimeError):
    """Two independent decision procedures disagreed; always an implementation bug."""

    kind = "consistency-error"
