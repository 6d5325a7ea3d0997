"""Exception types raised across the package."""


class QPMSpaceError(Exception):
    pass


class InvalidSpace(QPMSpaceError, ValueError):
    pass


class DimensionMismatch(QPMSpaceError, ValueError):
    pass


class NotCompletelyRegular(QPMSpaceError):
    """No separating family of continuous isotone functions exists.

    ``witness`` is the counterexample reported by the complete-regularity check.
    """

    def __init__(self, witness=None):
        super().__init__(f"space is not completely regularly preordered (witness: {witness!r})")
        self.witness = witness


class EmptyFamily(QPMSpaceError, ValueError):
    pass


class NotAntisymmetric(QPMSpaceError, ValueError):
    def __init__(self, pair):
        super().__init__(f"preorder is not an order: {pair[0]} and {pair[1]} are equivalent")
        self.pair = pair


class NotAdmissible(QPMSpaceError, ValueError):
    pass


class NonTransitiveCore(QPMSpaceError, ValueError):
    def __init__(self, triple):
        x, y, z = triple
        super().__init__(f"core relation is not transitive: ({x},{y}),({y},{z}) present but not ({x},{z})")
        self.triple = triple
