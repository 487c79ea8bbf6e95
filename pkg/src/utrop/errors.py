"""Exception types shared across the package."""


class InvalidArgumentError(ValueError):
    """An argument violates a documented precondition."""


class NotAxiallySymmetricError(InvalidArgumentError):
    """A tree operation requiring the leaf-negating involution was applied
    to a tree that does not admit one."""


class GroebnerBudgetError(RuntimeError):
    """The pair budget of a Groebner basis run was exhausted.

    Raised instead of silently truncating; carries the number of pairs
    processed so far.
    """

    def __init__(self, pairs_processed: int, budget: int):
        super().__init__(
            f"Groebner pair budget exhausted ({pairs_processed} >= {budget})"
        )
        self.pairs_processed = pairs_processed
        self.budget = budget


class DegenerateIdealError(InvalidArgumentError):
    """An ideal handed to a tropical certification routine has a monomial
    generator, so every initial ideal contains a monomial and the
    certification question is vacuous."""


class InternalConsistencyError(AssertionError):
    """A structural invariant that is supposed to be unconditional failed.

    These indicate a bug, not bad input.
    """
