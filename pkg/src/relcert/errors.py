"""Exception types shared across the library."""


class RelcertError(Exception):
    """Base class for all library errors."""


class InputParse(RelcertError):
    """Raised when a JSON description of a category cannot be parsed."""


class MissingComposite(RelcertError):
    def __init__(self, g, f):
        self.g, self.f = g, f
        super().__init__(f"composite of ({g!r}, {f!r}) is missing from the table")


class NonAssociative(RelcertError):
    def __init__(self, h, g, f):
        self.h, self.g, self.f = h, g, f
        super().__init__(f"associativity fails on triple ({h!r}, {g!r}, {f!r})")


class BadIdentity(RelcertError):
    def __init__(self, obj, detail=""):
        self.obj = obj
        super().__init__(f"bad identity for object {obj!r}" + (f": {detail}" if detail else ""))


class UnknownObject(RelcertError):
    def __init__(self, obj):
        self.obj = obj
        super().__init__(f"unknown object {obj!r}")


class UnknownMorphism(RelcertError):
    def __init__(self, mor):
        self.mor = mor
        super().__init__(f"unknown morphism {mor!r}")


class SizeBudgetExceeded(RelcertError):
    def __init__(self, what, count, limit):
        self.what, self.count, self.limit = what, count, limit
        super().__init__(f"size budget exceeded: {what} would need {count} > {limit}")


class ShapeMismatch(RelcertError):
    """Raised when a zigzag rewrite does not relate the two given types."""


class BadZigzagType(RelcertError):
    """Raised when a zigzag type does not satisfy an operation's precondition."""


class NotAFibration(RelcertError):
    """Raised when transition functors are requested from a negative report."""


class EdgeMismatch(RelcertError):
    """Raised when two squares to be pasted do not share the common edge."""


class CubeNotCommutative(RelcertError):
    """Raised when the six faces of a transport cube do not commute."""
