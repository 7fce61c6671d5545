"""Exception types raised across lielab."""


class LieLabError(Exception):
    """Base class for library errors."""


class FieldMismatchError(LieLabError, ValueError):
    """Operands live over different fields."""


class DimensionMismatchError(LieLabError, ValueError):
    pass


class JacobiError(LieLabError, ValueError):
    """A bracket table violates antisymmetry or the Jacobi identity."""


class NotASubringError(LieLabError, ValueError):
    pass


class NotAnIdealError(LieLabError, ValueError):
    pass


class ExcludedCharacteristicError(LieLabError, ValueError):
    """Operation requires characteristic outside {2, 3} (or some other excluded set)."""


class BudgetError(LieLabError, ValueError):
    """Requested computation exceeds the configured desk-scale budget."""


class DocumentError(LieLabError, ValueError):
    """Malformed Lie ring document; the message names the offending field."""


class LemmaFailure(LieLabError, AssertionError):
    """A lemma check produced a counterexample (always an implementation bug)."""

    def __init__(self, verdict):
        super().__init__(f"lemma {verdict.lemma_id} fails: {verdict.counterexample}")
        self.verdict = verdict
