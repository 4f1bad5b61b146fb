"""Exception types raised by the geometry and construction routines."""


class GeometryError(ValueError):
    pass


class LineImage(GeometryError):
    """The image of a circle is a line (the circle passes through the pole)."""


class NorthPoleCircle(GeometryError):
    """A spherical circle passes through the north pole and has no planar circle image."""


class IdenticalCircles(GeometryError):
    pass


class BadKindParams(GeometryError):
    pass


class OutOfRange(GeometryError):
    pass


class NumericBreakdown(ArithmeticError):
    pass


class NegativeC(GeometryError):
    pass


class NoInteriorMinimum(ArithmeticError):
    pass


class OutOfBand(ValueError):
    pass


class NoOrthogonalCircle(GeometryError):
    pass


class CenterInsideCircle(GeometryError):
    pass


class NormalizationFailed(ArithmeticError):
    pass


class LabelMismatch(ValueError):
    pass


class BadEquatorialSetup(GeometryError):
    pass


class NoTangencySolution(ArithmeticError):
    pass


class UndefinedLength(ValueError):
    def __init__(self, edge, value):
        super().__init__(f"edge {edge}: cosine argument {value!r} outside (-1, 1)")
        self.edge = edge
        self.value = value


class InvalidFace(ValueError):
    def __init__(self, face, reason):
        super().__init__(f"face {face}: {reason}")
        self.face = face
        self.reason = reason
