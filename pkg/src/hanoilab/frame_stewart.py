"""Move counts and explicit solutions for the split-recursion strategy.

The 4-peg count has a closed form: disk j contributes 2**e(j) moves
where e(j) is the largest m with j > m*(m+1)/2, i.e. exponent m is
shared by m+1 consecutive disks. The general k-peg count is the usual
recursion min over t of 2*count(n-t, k) + count(t, k-1) with the
classic 2**n - 1 base at k = 3; for k = 4 both agree. All counts use
Python integers, so arbitrarily large n cannot overflow.

``generate_solution`` realizes the strategy as an explicit legal move
list: park the top n-t disks on a spare peg, shift the bottom t with
one peg fewer, then retrieve the parked block.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from .core import Move, MoveSequence, split_phases, mirror
from .errors import SymmetryUnavailableError


def f4_exponent(j: int) -> int:
    """Largest m with j > m*(m+1)/2, for j >= 1.

    This is the doubling exponent of disk j's contribution to the 4-peg
    count: 1 disk at 2**0, then 2 disks at 2**1, 3 at 2**2, and so on.
    """
    if j < 1:
        raise ValueError(f"disk index must be >= 1, got {j}")
    # m(m+1)/2 <= j-1  <=>  m <= (sqrt(8j-7) - 1) / 2
    return (math.isqrt(8 * j - 7) - 1) // 2


def stewart_count(n: int) -> int:
    """4-peg move count: sum of 2**f4_exponent(j) over disks 1..n."""
    if n < 0:
        raise ValueError(f"disk count must be >= 0, got {n}")
    return sum(1 << f4_exponent(j) for j in range(1, n + 1))


@lru_cache(maxsize=None)
def frame_stewart_count(n: int, k: int) -> int:
    """Recursive k-peg move count; equals stewart_count(n) at k = 4."""
    if k < 3:
        raise ValueError(f"peg count must be >= 3, got {k}")
    if n < 0:
        raise ValueError(f"disk count must be >= 0, got {n}")
    if n == 0:
        return 0
    if k == 3:
        return (1 << n) - 1
    return min(
        2 * frame_stewart_count(n - t, k) + frame_stewart_count(t, k - 1)
        for t in range(1, n + 1)
    )


@dataclass(frozen=True)
class SplitChoice:
    """How many bottom disks ``t`` are handled with one peg fewer."""

    n: int
    k: int
    t: int


def optimal_split(n: int, k: int) -> SplitChoice:
    """Smallest t minimizing 2*count(n-t, k) + count(t, k-1)."""
    if n < 1:
        raise ValueError(f"disk count must be >= 1, got {n}")
    if k < 4:
        raise ValueError(f"split needs k >= 4, got {k}")
    best_t = 1
    best = 2 * frame_stewart_count(n - 1, k) + frame_stewart_count(1, k - 1)
    for t in range(2, n + 1):
        cost = 2 * frame_stewart_count(n - t, k) + frame_stewart_count(t, k - 1)
        if cost < best:
            best, best_t = cost, t
    return SplitChoice(n=n, k=k, t=best_t)


def block_transfer_moves(
    smallest: int, count: int, pegs: tuple[int, ...], src: int, dst: int
) -> tuple[Move, ...]:
    """Split-recursion transfer of the block smallest..smallest+count-1
    from src to dst, using only the given pegs.

    The block must be on top of src and everything else on the board
    larger than the block, so landings outside the block are legal.
    """
    if len(pegs) < 3 and count > 1:
        raise ValueError("moving more than one disk needs at least 3 pegs")
    out: list[Move] = []
    _emit_block(smallest, count, pegs, src, dst, out)
    return tuple(out)


def _emit_block(
    smallest: int, count: int, pegs: tuple[int, ...], src: int, dst: int, out: list[Move]
) -> None:
    # Disks smallest..smallest+count-1 sit on top of src; everything
    # else in play is larger, so every peg in `pegs` is usable.
    if count == 0:
        return
    if count == 1:
        out.append(Move(smallest, src, dst))
        return
    if len(pegs) == 3:
        aux = next(p for p in pegs if p != src and p != dst)
        _emit_block(smallest, count - 1, pegs, src, aux, out)
        out.append(Move(smallest + count - 1, src, dst))
        _emit_block(smallest, count - 1, pegs, aux, dst, out)
        return
    t = optimal_split(count, len(pegs)).t
    top = count - t
    spare = min(p for p in pegs if p != src and p != dst)
    _emit_block(smallest, top, pegs, src, spare, out)
    _emit_block(smallest + top, t, tuple(p for p in pegs if p != spare), src, dst, out)
    _emit_block(smallest, top, pegs, spare, dst, out)


def generate_solution(n: int, k: int, source: int = 0, target: int = 1) -> MoveSequence:
    """Legal full transfer of length frame_stewart_count(n, k).

    The spare peg at each recursion level is the lowest-indexed peg that
    is neither source nor target of the current subproblem, which makes
    the output deterministic.
    """
    if k < 3:
        raise ValueError(f"peg count must be >= 3, got {k}")
    if not (0 <= source < k and 0 <= target < k):
        raise ValueError(f"pegs must lie in 0..{k - 1}")
    if source == target:
        raise ValueError("source and target pegs coincide")
    if n < 0:
        raise ValueError(f"disk count must be >= 0, got {n}")
    moves: list[Move] = []
    _emit_block(1, n, tuple(range(k)), source, target, moves)
    return MoveSequence(n=n, k=k, source=source, moves=tuple(moves))


def generate_symmetric_solution(n: int, source: int = 0, target: int = 1) -> MoveSequence:
    """4-peg full transfer whose rebuild phase mirrors its tear-down phase.

    Built by mirroring the tear-down phase of the generated solution,
    after checking that phase has the expected (count+1)/2 length;
    SymmetryUnavailableError otherwise, which would indicate a generator
    bug rather than a property of the instance.
    """
    if n == 0:
        return MoveSequence(n=0, k=4, source=source, moves=())
    solution = generate_solution(n, 4, source, target)
    phase = split_phases(solution).demolishing
    expected = (stewart_count(n) + 1) // 2
    if len(phase) != expected:
        raise SymmetryUnavailableError(
            f"tear-down phase has {len(phase)} moves, expected {expected}"
        )
    return mirror(phase)
