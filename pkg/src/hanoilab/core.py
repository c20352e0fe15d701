"""Domain model for the multi-peg Tower of Hanoi.

States assign each disk to a peg; stacking order on a peg is implied by
size (larger disks always sit below smaller ones), so no explicit order
is stored. Moves are recorded peg-level (disk, from-peg, to-peg), which
is unambiguous and cheap to validate. The disk-relative triple view
(disk, was_on, lands_on), where ``None`` marks the bare peg, is a
serialization layer on top: ``encode_triples`` derives it from a legal
peg-level sequence and ``decode_triples`` reconstructs a legal
realization.

Disks are numbered 1..n with 1 the smallest; pegs 0..k-1. New towers
start on peg 0 and are conventionally sent to peg 1.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, NamedTuple

from .errors import IllegalMoveError, SequenceParseError, UnrealizableError

#: Marker for "no disk": the moving disk was lowest on its peg, or lands
#: on a bare peg. Rendered as ``inf`` in the text format.
FLOOR = None


class Move(NamedTuple):
    """One disk relocation between pegs."""

    disk: int
    source: int
    target: int

    def reversed(self) -> "Move":
        return Move(self.disk, self.target, self.source)


class TripleMove(NamedTuple):
    """Disk-relative move record: ``disk`` leaves the disk (or floor)
    ``was_on`` and is placed on the disk (or floor) ``lands_on``."""

    disk: int
    was_on: int | None
    lands_on: int | None

    def swapped(self) -> "TripleMove":
        return TripleMove(self.disk, self.lands_on, self.was_on)


@dataclass(frozen=True)
class State:
    """Immutable assignment of disks to pegs.

    ``pegs[d - 1]`` is the peg holding disk ``d``. Every reachable
    assignment is a legal state: order within a peg is forced by size.
    """

    n: int
    k: int
    pegs: tuple[int, ...]

    def peg_of(self, disk: int) -> int:
        return self.pegs[disk - 1]

    def disks_on(self, peg: int) -> list[int]:
        """Disks on ``peg``, top (smallest) first."""
        return [d for d in range(1, self.n + 1) if self.pegs[d - 1] == peg]

    def occupied_pegs(self) -> set[int]:
        return set(self.pegs)

    def bare_pegs(self) -> list[int]:
        used = self.occupied_pegs()
        return [p for p in range(self.k) if p not in used]


@dataclass(frozen=True)
class MoveSequence:
    """Ordered legal moves applied from the initial all-on-source state."""

    n: int
    k: int
    source: int
    moves: tuple[Move, ...]

    def __len__(self) -> int:
        return len(self.moves)

    def __iter__(self) -> Iterator[Move]:
        return iter(self.moves)

    def initial_state(self) -> State:
        return initial_state(self.n, self.k, self.source)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of replaying a sequence; failures are data, not errors."""

    ok: bool
    length: int
    final_state: State | None = None
    error_index: int | None = None
    reason: str | None = None


@dataclass(frozen=True)
class PhaseSplit:
    """A sequence cut at the first move of the largest disk.

    ``demolishing`` runs through that move inclusive; ``reconstructing``
    is the raw suffix (it does not start from the initial state, so it
    is kept as bare moves). ``complete`` is False when the largest disk
    never moves, in which case ``demolishing`` is the whole sequence.
    """

    demolishing: MoveSequence
    reconstructing: tuple[Move, ...]
    complete: bool


def initial_state(n: int, k: int, source: int = 0) -> State:
    """All ``n`` disks stacked on ``source``; ``n = 0`` gives the empty state."""
    if n < 0:
        raise ValueError(f"disk count must be >= 0, got {n}")
    if k < 3:
        raise ValueError(f"peg count must be >= 3, got {k}")
    if not 0 <= source < k:
        raise ValueError(f"source peg {source} out of range for k={k}")
    return State(n=n, k=k, pegs=(source,) * n)


def top_disk(state: State, peg: int) -> int | None:
    """Smallest disk on ``peg``, or None when the peg is bare."""
    if not 0 <= peg < state.k:
        raise ValueError(f"peg {peg} out of range for k={state.k}")
    for d in range(1, state.n + 1):
        if state.pegs[d - 1] == peg:
            return d
    return None


def disk_below(state: State, disk: int) -> int | None:
    """Disk directly beneath ``disk`` on its peg, or None when it rests
    on the floor."""
    peg = state.peg_of(disk)
    for d in range(disk + 1, state.n + 1):
        if state.pegs[d - 1] == peg:
            return d
    return None


def _legality_failure(state: State, move: Move) -> str | None:
    """Reason the move is illegal, or None when it is fine."""
    disk, src, dst = move
    if not 1 <= disk <= state.n:
        return f"disk {disk} does not exist (n={state.n})"
    if not (0 <= src < state.k and 0 <= dst < state.k):
        return f"peg out of range for k={state.k}"
    if src == dst:
        return "source and target pegs coincide"
    if state.peg_of(disk) != src:
        return f"disk {disk} is on peg {state.peg_of(disk)}, not {src}"
    if top_disk(state, src) != disk:
        return f"disk {disk} is buried under disk {top_disk(state, src)}"
    dst_top = top_disk(state, dst)
    if dst_top is not None and dst_top < disk:
        return f"would cover smaller disk {dst_top}"
    return None


def is_legal(state: State, move: Move) -> bool:
    """True iff ``move.disk`` is top of its stated peg and the landing
    spot is bare or topped by a larger disk."""
    return _legality_failure(state, move) is None


def apply(state: State, move: Move) -> State:
    """New state with only ``move.disk``'s peg changed.

    Raises IllegalMoveError naming the legality clause that failed.
    """
    reason = _legality_failure(state, move)
    if reason is not None:
        raise IllegalMoveError(move, reason)
    pegs = list(state.pegs)
    pegs[move.disk - 1] = move.target
    return State(n=state.n, k=state.k, pegs=tuple(pegs))


def replay(seq: MoveSequence) -> Iterator[State]:
    """States after each move; raises IllegalMoveError on the first bad one."""
    state = seq.initial_state()
    for move in seq.moves:
        state = apply(state, move)
        yield state


def final_state(seq: MoveSequence) -> State:
    state = seq.initial_state()
    for move in seq.moves:
        state = apply(state, move)
    return state


def validate_sequence(seq: MoveSequence) -> ValidationReport:
    """Replay the whole sequence; report the first illegal move, if any."""
    state = seq.initial_state()
    for i, move in enumerate(seq.moves):
        reason = _legality_failure(state, move)
        if reason is not None:
            return ValidationReport(
                ok=False, length=len(seq.moves), error_index=i, reason=reason
            )
        state = apply(state, move)
    return ValidationReport(ok=True, length=len(seq.moves), final_state=state)


def is_full_transfer(seq: MoveSequence, target: int) -> bool:
    """True iff the sequence ends with every disk on ``target`` != source.

    The sequence must be valid; n = 0 transfers vacuously.
    """
    if not 0 <= target < seq.k:
        raise ValueError(f"target peg {target} out of range for k={seq.k}")
    if target == seq.source:
        return False
    end = final_state(seq)
    return all(p == target for p in end.pegs)


def transfer_target(seq: MoveSequence) -> int | None:
    """The single peg holding every disk at the end, or None."""
    end = final_state(seq)
    if seq.n == 0:
        return None
    pegs = set(end.pegs)
    if len(pegs) == 1:
        t = pegs.pop()
        return t if t != seq.source else None
    return None


def encode_triples(seq: MoveSequence) -> list[TripleMove]:
    """Disk-relative view of a valid sequence.

    ``was_on`` is the disk directly beneath the mover before the move
    (floor when it was lowest on its peg); ``lands_on`` is the disk it
    comes to rest on (floor when the destination peg was bare).
    """
    state = seq.initial_state()
    triples = []
    for move in seq.moves:
        was_on = disk_below(state, move.disk)
        lands_on = top_disk(state, move.target)
        triples.append(TripleMove(move.disk, was_on, lands_on))
        state = apply(state, move)
    return triples


def _realize_triples(
    state: State, triples: Iterable[TripleMove], index_offset: int = 0
) -> tuple[list[Move], State]:
    """Peg-level realization of triples starting from ``state``.

    ``was_on`` must name the disk directly beneath the mover (or floor).
    ``lands_on`` may name any disk already resting on the destination
    peg, not only the top; encoding always emits the direct support, but
    hand-written triples sometimes name the stack's bottom instead. A
    floor landing picks the lowest-indexed bare peg.
    """
    moves: list[Move] = []
    for i, triple in enumerate(triples):
        idx = index_offset + i
        disk, was_on, lands_on = triple
        if not 1 <= disk <= state.n:
            raise UnrealizableError(idx, f"disk {disk} does not exist (n={state.n})")
        src = state.peg_of(disk)
        if top_disk(state, src) != disk:
            raise UnrealizableError(idx, f"disk {disk} is not on top of its peg")
        below = disk_below(state, disk)
        if below != was_on:
            raise UnrealizableError(
                idx, f"disk {disk} rests on {below}, triple says {was_on}"
            )
        if lands_on is FLOOR:
            bare = [p for p in state.bare_pegs() if p != src]
            if not bare:
                raise UnrealizableError(idx, "no bare peg available for floor landing")
            dst = bare[0]
        else:
            if not disk < lands_on <= state.n:
                raise UnrealizableError(idx, f"cannot land disk {disk} on {lands_on}")
            dst = state.peg_of(lands_on)
            if dst == src:
                raise UnrealizableError(
                    idx, f"disk {lands_on} shares peg {src} with the mover"
                )
            dst_top = top_disk(state, dst)
            if dst_top is not None and dst_top < disk:
                raise UnrealizableError(
                    idx, f"peg of disk {lands_on} is topped by smaller disk {dst_top}"
                )
        move = Move(disk, src, dst)
        moves.append(move)
        state = apply(state, move)
    return moves, state


def decode_triples(
    triples: Iterable[TripleMove], n: int, k: int, source: int = 0
) -> MoveSequence:
    """Legal peg-level realization of a triple list, or UnrealizableError.

    Floor landings are resolved to the lowest-indexed bare peg, so the
    realization is deterministic. Round-tripping through encode_triples
    reproduces the triple list whenever its landing markers name direct
    supports.
    """
    state = initial_state(n, k, source)
    moves, _ = _realize_triples(state, triples)
    return MoveSequence(n=n, k=k, source=source, moves=tuple(moves))


def split_phases(seq: MoveSequence) -> PhaseSplit:
    """Cut at the first move of disk n (inclusive).

    When disk n never moves the split is flagged incomplete and the
    whole sequence lands in ``demolishing``.
    """
    cut = None
    for i, move in enumerate(seq.moves):
        if move.disk == seq.n:
            cut = i
            break
    if cut is None:
        demolishing = seq
        return PhaseSplit(demolishing=demolishing, reconstructing=(), complete=False)
    head = MoveSequence(seq.n, seq.k, seq.source, seq.moves[: cut + 1])
    return PhaseSplit(
        demolishing=head, reconstructing=seq.moves[cut + 1 :], complete=True
    )


def mirror(demolishing: MoveSequence) -> MoveSequence:
    """Extend a tear-down phase of length l into a 2l-1 move full transfer.

    The reconstruction replays the phase backwards in the disk-relative
    view with each record's supports swapped: what left disk s to land
    on disk y now leaves y to land back on s. Because the largest disk
    moved in between, the tower is rebuilt on top of it rather than back
    where it started, which lands everything on a peg different from the
    source.
    """
    if not demolishing.moves:
        raise ValueError("cannot mirror an empty sequence")
    if demolishing.moves[-1].disk != demolishing.n:
        raise ValueError("sequence does not end with a move of the largest disk")
    if any(m.disk == demolishing.n for m in demolishing.moves[:-1]):
        raise ValueError("largest disk moves before the final position")
    report = validate_sequence(demolishing)
    if not report.ok:
        raise ValueError(
            f"invalid demolishing phase at index {report.error_index}: {report.reason}"
        )
    triples = encode_triples(demolishing)
    tail = [t.swapped() for t in reversed(triples[:-1])]
    assert report.final_state is not None
    tail_moves, _ = _realize_triples(
        report.final_state, tail, index_offset=len(triples)
    )
    return MoveSequence(
        n=demolishing.n,
        k=demolishing.k,
        source=demolishing.source,
        moves=demolishing.moves + tuple(tail_moves),
    )


def cost_profile(seq: MoveSequence) -> dict[int, int]:
    """Moves per disk, including zero entries; values sum to len(seq)."""
    counts = {d: 0 for d in range(1, seq.n + 1)}
    for move in seq.moves:
        counts[move.disk] += 1
    return counts


def first_freed_index(seq: MoveSequence, disk: int) -> int | None:
    """Index of ``disk``'s first move, or None if it never moves."""
    for i, move in enumerate(seq.moves):
        if move.disk == disk:
            return i
    return None


# --- text format -----------------------------------------------------------
#
# Header "n k source", then one triple per line as "disk was_on lands_on"
# with "inf" marking the floor. Blank lines are ignored.


def format_triple_text(seq: MoveSequence) -> str:
    def mark(v: int | None) -> str:
        return "inf" if v is FLOOR else str(v)

    lines = [f"{seq.n} {seq.k} {seq.source}"]
    for t in encode_triples(seq):
        lines.append(f"{t.disk} {mark(t.was_on)} {mark(t.lands_on)}")
    return "\n".join(lines) + "\n"


@dataclass(frozen=True)
class ParsedTriples:
    n: int
    k: int
    source: int
    triples: tuple[TripleMove, ...]

    def decode(self) -> MoveSequence:
        return decode_triples(self.triples, self.n, self.k, self.source)


def parse_triple_text(text: str) -> ParsedTriples:
    """Parse the text format; SequenceParseError carries the 1-based line."""
    header: tuple[int, int, int] | None = None
    triples: list[TripleMove] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        tokens = line.split()
        if len(tokens) != 3:
            raise SequenceParseError(lineno, f"expected 3 tokens, got {len(tokens)}")
        if header is None:
            try:
                n, k, source = (int(t) for t in tokens)
            except ValueError:
                raise SequenceParseError(lineno, "header must be three integers")
            if n < 0 or k < 3 or not 0 <= source < k:
                raise SequenceParseError(lineno, f"bad header values {line!r}")
            header = (n, k, source)
            continue

        def marker(tok: str) -> int | None:
            if tok == "inf":
                return FLOOR
            try:
                v = int(tok)
            except ValueError:
                raise SequenceParseError(lineno, f"bad token {tok!r}")
            if v < 1:
                raise SequenceParseError(lineno, f"disk number {v} out of range")
            return v

        try:
            disk = int(tokens[0])
        except ValueError:
            raise SequenceParseError(lineno, f"bad disk token {tokens[0]!r}")
        if disk < 1:
            raise SequenceParseError(lineno, f"disk number {disk} out of range")
        triples.append(TripleMove(disk, marker(tokens[1]), marker(tokens[2])))
    if header is None:
        raise SequenceParseError(1, "missing header line")
    return ParsedTriples(header[0], header[1], header[2], tuple(triples))
