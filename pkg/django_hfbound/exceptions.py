class HfError(ValueError):
    """Base class for every error raised by django-hfbound."""


class BadParameters(HfError):
    pass


class EmptyWord(HfError):
    def __init__(self) -> None:
        super().__init__("HF word must contain at least one symbol")


class RepeatAt(HfError):
    def __init__(self, index: int) -> None:
        self.index = index
        super().__init__(f"adjacent repeat at positions {index} and {index + 1}")


class OutOfRange(HfError):
    def __init__(self, index: int, symbol: int, q: int) -> None:
        self.index = index
        self.symbol = symbol
        super().__init__(f"symbol {symbol} at position {index} is outside [0, {q})")


class LengthMismatch(HfError):
    pass


class BadEll(HfError):
    pass


class RadiusOutOfRange(HfError):
    pass


class UnsupportedParameters(HfError):
    """A closed form was asked for outside the parameters it covers."""


class UnsupportedRadius(HfError):
    pass


class BudgetExceeded(HfError):
    def __init__(self, size: int, budget: int) -> None:
        self.size = size
        self.budget = budget
        super().__init__(f"enumeration of {size} words exceeds the budget of {budget}")


class NonpositiveAverage(HfError):
    pass


class EmptyCode(HfError):
    pass


class EmptyDistance(HfError):
    def __init__(self, size: int) -> None:
        self.size = size
        super().__init__(f"minimum distance is undefined for a code of {size} word(s)")
