"""Exception types raised across the package."""


class NotOrthogonal(ValueError):
    """Matrix fails the orthogonality check; ``residual`` is max |MᵀM − I|."""

    def __init__(self, residual, tol=None):
        self.residual = float(residual)
        self.tol = tol
        msg = f"matrix is not orthogonal: Gram residual {self.residual:.3e}"
        if tol is not None:
            msg += f" exceeds {tol:.1e}"
        super().__init__(msg)


class DimensionMismatch(ValueError):
    pass


class OutsideChart(ValueError):
    """Point is not in the open hemisphere of the requested chart."""


class OutsideDisc(ValueError):
    """Chart coordinate is not inside the open unit disc."""


class NonzeroPoleComponent(ValueError):
    """Chart coordinate has a component along the chart's pole direction."""


class DegenerateDenominator(ArithmeticError):
    """The normalisation in the shift homotopy came too close to zero."""


class DegeneratePair(ValueError):
    """Two sphere points are too close to define the reflection swapping them."""


class InvalidFibre(ValueError):
    pass
