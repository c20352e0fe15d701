"""Exception types shared across the package."""


class HanoiError(Exception):
    """Base class for all hanoilab errors."""


class IllegalMoveError(HanoiError):
    """A move violates the stacking rules.

    ``reason`` names the clause that failed: the disk is not on the
    stated peg, it is buried, or it would cover a smaller disk.
    """

    def __init__(self, move, reason: str):
        super().__init__(f"illegal move {move}: {reason}")
        self.move = move
        self.reason = reason


class UnrealizableError(HanoiError):
    """A triple sequence admits no legal peg-level realization at some step."""

    def __init__(self, index: int, reason: str):
        super().__init__(f"unrealizable at index {index}: {reason}")
        self.index = index
        self.reason = reason


class SequenceParseError(HanoiError):
    """Malformed sequence text; ``line`` is 1-based."""

    def __init__(self, line: int, reason: str):
        super().__init__(f"line {line}: {reason}")
        self.line = line
        self.reason = reason


class BudgetExceededError(HanoiError):
    """Search ran out of its state or time budget.

    ``lower_bound`` is the best proven lower bound on the optimum when
    the search stopped (the depth reached guarantees no shorter path).
    """

    def __init__(self, reason: str, lower_bound: int | None = None, explored: int = 0):
        detail = f"; optimum >= {lower_bound}" if lower_bound is not None else ""
        super().__init__(f"{reason}{detail}")
        self.reason = reason
        self.lower_bound = lower_bound
        self.explored = explored


class CorruptCacheError(HanoiError):
    """Cache file failed its magic, version, or checksum validation."""


class LedgerTooShallowError(HanoiError):
    """The cost ledger has too few levels to decompose the requested size."""


class NotAViolationError(HanoiError):
    """shorten_violating was handed a sequence/witness pair that does not
    reproduce an avoidance violation on replay."""


class SymmetryUnavailableError(HanoiError):
    """The generated solution's tear-down phase has the wrong length, so
    the mirrored construction cannot be applied (signals a generator bug)."""
