"""Exception types raised across the package."""


class IfsProductError(Exception):
    """Base class."""


class NoRootFound(IfsProductError):
    pass


class InvalidParams(IfsProductError):
    """The pair (lambda, c) violates the overlap conditions.

    ``reason`` names the failed inequality.
    """

    def __init__(self, reason: str):
        super().__init__(reason)
        self.reason = reason


class NegativeInput(IfsProductError):
    pass


class WidthMismatch(IfsProductError):
    pass


class OrderViolation(IfsProductError):
    pass


class PreconditionViolated(IfsProductError):
    pass


class HypothesisFailure(IfsProductError):
    """A lemma-internal guard failed on inputs the classifier accepted."""


class CounterexampleFound(IfsProductError):
    def __init__(self, message: str, witness):
        super().__init__(message)
        self.witness = witness


class Undecided(IfsProductError):
    def __init__(self, boxes):
        super().__init__(f"{len(boxes)} undecided boxes")
        self.boxes = boxes


class NotInPurpleRegion(IfsProductError):
    pass


class InternalNoChildPair(IfsProductError):
    pass
