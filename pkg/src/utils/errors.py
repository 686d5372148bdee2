class BforgeError(Exception):
    """Base class for every error raised by the engine"""


class ParameterError(BforgeError, ValueError):
    """Invalid construction or search parameters (CLI exit code 2)"""


class PresentationError(BforgeError, ValueError):
    """Malformed .pcp text or an ill-shaped presentation"""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)


class WordSyntaxError(PresentationError):
    """Malformed word in the verify grammar"""


class CapExceededError(BforgeError):
    """Group order or search size above the configured cap (CLI exit code 3)"""

    def __init__(self, what: str, size: int, cap: int):
        self.size = size
        self.cap = cap
        super().__init__(f"{what}: {size} exceeds cap {cap}")


class InconsistentPresentationError(BforgeError):
    """A pc presentation whose normal forms are not well-defined"""

    def __init__(self, violation):
        self.violation = violation
        super().__init__(f"inconsistent presentation: {violation}")


class NotNormalError(BforgeError, ValueError):
    """Quotient requested by a subgroup that is not normal"""


class HomomorphismError(BforgeError):
    """Generator images do not extend to a homomorphism"""


class NotWellDefinedError(HomomorphismError):
    def __init__(self, relation: str):
        self.relation = relation
        super().__init__(f"not well-defined: relation {relation} is violated")


class NotSurjectiveError(HomomorphismError):
    def __init__(self, image_size: int, target_order: int):
        self.image_size = image_size
        super().__init__(f"not surjective: image has {image_size} of {target_order} elements")
