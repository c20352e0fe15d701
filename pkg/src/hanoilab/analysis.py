"""Mechanical checkers for structural claims about tear-down phases.

A valid tear-down (demolishing) phase ends with the first move of the
largest disk. Immediately after that move the smaller disks sit on at
most two pegs, giving two scenarios: everything on one stack next to
the big disk, or two stacks whose bottoms are disk n-1 and some smaller
disk. The checkers here classify that end state, replay the history to
test the avoidance property (no disk bigger than the smallest bottom
ever visits the peg that stack ends on), and carry out the shortening
transformation that removes a violating excursion, producing a strictly
shorter phase. A deliberate-violation constructor supports fuzzing the
shortener.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterator, Mapping

from .core import (
    Move,
    MoveSequence,
    State,
    apply,
    cost_profile,
    disk_below,
    top_disk,
    validate_sequence,
)
from .errors import HanoiError, NotAViolationError


@dataclass(frozen=True)
class TwoStacks:
    """Smaller disks all on one peg; bottoms are n and n-1.

    ``degenerate`` marks n = 1 where no smaller disks exist.
    """

    big_peg: int
    other_bottom: int | None
    other_peg: int | None
    degenerate: bool = False


@dataclass(frozen=True)
class ThreeStacks:
    """Smaller disks split over two pegs; bottoms are n, n-1 and ``j4``."""

    big_peg: int
    bottoms: tuple[int, int]
    j4: int
    j4_peg: int


@dataclass(frozen=True)
class OtherArrangement:
    """Defensive catch-all; unreachable for legal tear-down phases."""

    description: str


EndStateClass = TwoStacks | ThreeStacks | OtherArrangement


@dataclass(frozen=True)
class ViolationWitness:
    disk: int
    peg: int
    move_index: int
    departure_index: int
    departure_to: int


@dataclass(frozen=True)
class AvoidanceReport:
    holds: bool
    scenario: EndStateClass
    witness: ViolationWitness | None = None

    def __bool__(self) -> bool:
        return self.holds


@dataclass(frozen=True)
class BottomCostCheck:
    """Per-disk move counts of the end-state stack bottoms.

    ``holds`` is the strict per-phase reading (every bottom moved exactly
    once). Aggregating over an enumeration answers the weaker existence
    reading; see ``bottom_cost_table``.
    """

    holds: bool
    costs: dict[int, int]
    scenario: EndStateClass

    def __bool__(self) -> bool:
        return self.holds


def _checked_phase(seq: MoveSequence) -> list[State]:
    """Replay a tear-down phase; states[i] is the state before move i,
    with the final state appended last."""
    if not seq.moves:
        raise ValueError("empty sequence is not a tear-down phase")
    if seq.moves[-1].disk != seq.n:
        raise ValueError("sequence does not end with a move of the largest disk")
    if any(m.disk == seq.n for m in seq.moves[:-1]):
        raise ValueError("largest disk moves before the final position")
    report = validate_sequence(seq)
    if not report.ok:
        raise ValueError(
            f"illegal move at index {report.error_index}: {report.reason}"
        )
    states = [seq.initial_state()]
    for move in seq.moves:
        states.append(apply(states[-1], move))
    return states


def classify_end_state(seq: MoveSequence) -> EndStateClass:
    """Scenario of the state immediately after the phase's last move."""
    states = _checked_phase(seq)
    end = states[-1]
    big_peg = end.peg_of(seq.n)
    small_pegs = sorted({end.peg_of(d) for d in range(1, seq.n)})
    if not small_pegs:
        return TwoStacks(big_peg=big_peg, other_bottom=None, other_peg=None, degenerate=True)
    if len(small_pegs) == 1:
        return TwoStacks(
            big_peg=big_peg, other_bottom=seq.n - 1, other_peg=small_pegs[0]
        )
    if len(small_pegs) == 2:
        bottoms = tuple(
            max(d for d in range(1, seq.n) if end.peg_of(d) == peg)
            for peg in small_pegs
        )
        j4 = min(bottoms)
        j4_peg = small_pegs[bottoms.index(j4)]
        return ThreeStacks(
            big_peg=big_peg,
            bottoms=(max(bottoms), j4),
            j4=j4,
            j4_peg=j4_peg,
        )
    return OtherArrangement(
        description=f"smaller disks on {len(small_pegs)} pegs; not a tear-down end state"
    )


def check_avoidance(seq: MoveSequence) -> AvoidanceReport:
    """Replay the phase and test the critical-peg avoidance property.

    Two-stack endings check that the big disk never visits the peg where
    disk n-1 ends; three-stack endings check that no disk larger than
    the smallest bottom ever sits on that bottom's final peg. A failure
    reports the last offending disk together with its parking and
    departure moves, which is exactly the witness the shortening
    transformation wants.
    """
    states = _checked_phase(seq)
    scenario = classify_end_state(seq)
    if isinstance(scenario, TwoStacks):
        if scenario.degenerate or scenario.other_peg is None:
            return AvoidanceReport(holds=True, scenario=scenario)
        watched_disks = {seq.n}
        critical = scenario.other_peg
    elif isinstance(scenario, ThreeStacks):
        watched_disks = set(range(scenario.j4 + 1, seq.n + 1))
        critical = scenario.j4_peg
    else:
        return AvoidanceReport(holds=True, scenario=scenario)

    last_seen: tuple[int, int] | None = None  # (state index, disk)
    for i, state in enumerate(states[:-1]):
        for disk in watched_disks:
            if state.peg_of(disk) == critical:
                if last_seen is None or i >= last_seen[0]:
                    last_seen = (i, disk)
    if last_seen is None:
        return AvoidanceReport(holds=True, scenario=scenario)

    _, disk = last_seen
    arrival = departure = None
    for idx, move in enumerate(seq.moves):
        if move.disk == disk and move.target == critical:
            arrival = idx
        if move.disk == disk and move.source == critical:
            departure = idx
    assert arrival is not None and departure is not None
    witness = ViolationWitness(
        disk=disk,
        peg=critical,
        move_index=arrival,
        departure_index=departure,
        departure_to=seq.moves[departure].target,
    )
    return AvoidanceReport(holds=False, scenario=scenario, witness=witness)


def shorten_violating(seq: MoveSequence, disk: int, departure_to: int) -> MoveSequence:
    """Remove a violating excursion, yielding a strictly shorter phase.

    ``disk`` must be the last disk bigger than the smallest bottom to
    visit that bottom's final peg, parked there on the floor, and
    ``departure_to`` the peg its final departure goes to (take both from
    the check_avoidance witness). The result keeps the prefix up to that
    departure, drops the departure and every later move of ``disk``, and
    leaves all other moves untouched: whatever used to land on the freed
    floor now lands on the parked disk, and whatever used to land on the
    parked disk lands on its old support, both on the same pegs as
    before.

    Raises NotAViolationError when replay does not confirm the witness.
    """
    states = _checked_phase(seq)
    scenario = classify_end_state(seq)
    if not isinstance(scenario, ThreeStacks):
        raise NotAViolationError(
            "only three-stack endings have an avoidable critical peg"
        )
    if disk <= scenario.j4:
        raise NotAViolationError(
            f"disk {disk} is not larger than the smallest bottom {scenario.j4}"
        )
    critical = scenario.j4_peg
    departures = [
        i
        for i, m in enumerate(seq.moves)
        if m.disk == disk and m.source == critical
    ]
    if not departures:
        raise NotAViolationError(f"disk {disk} never leaves peg {critical}")
    dep = departures[-1]
    if seq.moves[dep].target != departure_to:
        raise NotAViolationError(
            f"last departure of disk {disk} goes to peg {seq.moves[dep].target}, "
            f"not {departure_to}"
        )
    if disk_below(states[dep], disk) is not None:
        raise NotAViolationError(
            f"disk {disk} is not parked on the floor of peg {critical}"
        )
    for state in states[dep + 1 :]:
        for bigger in range(scenario.j4 + 1, seq.n + 1):
            if bigger != disk and state.peg_of(bigger) == critical:
                raise NotAViolationError(
                    f"disk {bigger} visits peg {critical} after disk {disk} left"
                )

    kept = seq.moves[:dep] + tuple(
        m for m in seq.moves[dep + 1 :] if m.disk != disk
    )
    shorter = MoveSequence(seq.n, seq.k, seq.source, kept)
    report = validate_sequence(shorter)
    if not report.ok or not kept or kept[-1].disk != seq.n:
        raise HanoiError(
            "shortening produced an invalid phase; the witness was not of the "
            "transformable shape"
        )
    return shorter


#: Excursion patterns understood by build_violating_phase.
EXCURSION_PATTERNS = ("direct", "via", "deep")


def build_violating_phase(
    n: int,
    j4: int,
    critical: int,
    parking: int,
    block_target: int,
    excursions: tuple[str, ...] = ("direct",),
) -> tuple[MoveSequence, int, int]:
    """Near-minimal tear-down phase that violates the avoidance property.

    Minimal phases never leave the critical peg bare while a disk bigger
    than the smallest bottom is movable (the small disks settle there
    first), so a violation cannot be created by inserting detours into
    one. Instead this builds the phase with the small stack 1..j4 parked
    on ``parking`` first, runs one or more big-disk excursions over the
    still-bare ``critical`` peg, rebuilds the small stack on ``critical``,
    sends disks j4+1..n-1 to ``block_target``, and finishes with disk
    n's move. The end state is the clean three-stack arrangement, but a
    disk bigger than j4 visited the critical peg on the way.

    Excursion patterns: "direct" parks disk j4+1 and brings it straight
    back; "via" routes its return through the free peg; "deep" unburies
    disk j4+2 first (needs j4 + 2 < n). Returns (phase, witness disk,
    witness departure peg) where the witness is the last excursion's.

    For n >= 4 and 1 <= j4 <= n-2 the result is always a valid phase; a
    final replay assert guards the construction.
    """
    from .frame_stewart import block_transfer_moves

    if n < 4:
        raise ValueError("violating phases need n >= 4")
    if not 1 <= j4 <= n - 2:
        raise ValueError(f"smallest bottom must lie in 1..{n - 2}, got {j4}")
    side_pegs = {1, 2, 3}
    if critical not in side_pegs or parking not in side_pegs or critical == parking:
        raise ValueError("critical and parking must be distinct non-source pegs")
    free = (side_pegs - {critical, parking}).pop()
    if block_target not in (parking, free):
        raise ValueError(f"block target must be {parking} or {free}")
    big_peg = free if block_target == parking else parking

    moves: list[Move] = []
    all_pegs = (0, 1, 2, 3)
    moves += block_transfer_moves(1, j4, all_pegs, 0, parking)
    witness: tuple[int, int] | None = None
    for pattern in excursions:
        if pattern == "direct":
            y = j4 + 1
            moves += [Move(y, 0, critical), Move(y, critical, 0)]
            witness = (y, 0)
        elif pattern == "via":
            y = j4 + 1
            moves += [Move(y, 0, critical), Move(y, critical, free), Move(y, free, 0)]
            witness = (y, free)
        elif pattern == "deep":
            y = j4 + 2
            if y >= n:
                raise ValueError("deep excursion needs j4 + 2 < n")
            moves += [
                Move(j4 + 1, 0, free),
                Move(y, 0, critical),
                Move(y, critical, 0),
                Move(j4 + 1, free, 0),
            ]
            witness = (y, 0)
        else:
            raise ValueError(f"unknown excursion pattern {pattern!r}")
    if witness is None:
        raise ValueError("at least one excursion is required")
    moves += block_transfer_moves(1, j4, all_pegs, parking, critical)
    moves += block_transfer_moves(
        j4 + 1, n - 1 - j4, (0, block_target, big_peg), 0, block_target
    )
    moves.append(Move(n, 0, big_peg))
    phase = MoveSequence(n=n, k=4, source=0, moves=tuple(moves))
    assert validate_sequence(phase).ok, "violating-phase construction broke legality"
    return phase, witness[0], witness[1]


def violating_phase_family(n: int) -> Iterator[tuple[MoveSequence, int, int]]:
    """Every (phase, witness disk, departure peg) the builder can produce
    for n disks: all stack placements, single excursions, and ordered
    pairs of excursions. Deterministic order."""
    for j4 in range(1, n - 1):
        patterns = ["direct", "via"] + (["deep"] if j4 + 2 < n else [])
        combos = [(p,) for p in patterns]
        combos += [(a, b) for a in patterns for b in patterns]
        for critical in (1, 2, 3):
            for parking in sorted({1, 2, 3} - {critical}):
                free = ({1, 2, 3} - {critical, parking}).pop()
                for block_target in (parking, free):
                    for excursions in combos:
                        yield build_violating_phase(
                            n, j4, critical, parking, block_target, excursions
                        )


def check_bottom_costs(seq: MoveSequence) -> BottomCostCheck:
    """Move counts of the disks lying at the bottoms of the end stacks."""
    scenario = classify_end_state(seq)
    profile = cost_profile(seq)
    bottoms = [seq.n]
    if isinstance(scenario, TwoStacks) and scenario.other_bottom is not None:
        bottoms.append(scenario.other_bottom)
    elif isinstance(scenario, ThreeStacks):
        bottoms.extend(scenario.bottoms)
    costs = {d: profile[d] for d in sorted(bottoms)}
    return BottomCostCheck(
        holds=all(c == 1 for c in costs.values()), costs=costs, scenario=scenario
    )


def bottom_cost_table(phases: list[MoveSequence]) -> dict[str, object]:
    """Aggregate bottom-cost check over an enumeration of phases.

    ``universal`` is true when every phase passes the strict reading;
    ``existential`` when at least one does, which is the arrangeability
    reading of the claim.
    """
    checks = [check_bottom_costs(p) for p in phases]
    return {
        "phases": len(checks),
        "passing": sum(1 for c in checks if c.holds),
        "universal": all(c.holds for c in checks),
        "existential": any(c.holds for c in checks),
    }


def case1_bound(n: int, optima: Mapping[int, int] | Callable[[int], int]) -> int:
    """Lower bound 1 + optimum(n-1) for one-stack (two-stack-ending) play.

    ``optima`` supplies the exact optimum for n-1 disks, either as a
    mapping or a callable (for example a cache-backed search); whatever
    it raises propagates.
    """
    if n < 2:
        raise ValueError(f"bound needs n >= 2, got {n}")
    h = optima(n - 1) if callable(optima) else optima[n - 1]
    return 1 + h
