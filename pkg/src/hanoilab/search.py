"""Exhaustive search over the implicit move graph of packed states.

A state is packed into an integer with a fixed-width field per disk
(2 bits for up to 4 pegs, wider for more), so the whole search works on
flat numpy arrays: frontiers are arrays of codes, the visited structure
is a flat bitmap indexed by code (one bit per slot of the code space,
which keeps even the 14-disk 4-peg space at ~32 MB per direction), and
level expansion is vectorized across the frontier. Moves are generated
smallest-disk-first under a running occupancy mask of pegs claimed by
smaller disks, which encodes both legality clauses at once.

The exact optimum is computed by level-synchronized bidirectional BFS
(expanding the smaller frontier) or by plain forward BFS; results are
deterministic either way. For 4 pegs with fixed endpoints the search
can optionally quotient by the swap of the two auxiliary pegs, halving
the explored space.

Enumeration of all optimal solutions runs over forward and backward
distance tables: a move u -> v lies on a shortest path iff
dist_fwd(u) + 1 + dist_bwd(v) equals the optimum.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

import numpy as np

from .core import Move, MoveSequence, State
from .errors import BudgetExceededError

#: Default guard on allocated code-space entries for full distance tables.
DEFAULT_TABLE_SPACE = 1 << 28

#: Default guard on the packed code space for bitmap-based searches.
DEFAULT_SEARCH_SPACE = 1 << 32

#: Default bound on n accepted by the enumeration helpers.
DEFAULT_ENUMERATION_BOUND = 6

#: Default cap on enumerated sequences.
DEFAULT_ENUMERATION_CAP = 1_000_000


@dataclass(frozen=True)
class Budget:
    """Limits on search effort; None means unlimited."""

    max_states: int | None = None
    max_seconds: float | None = None


@dataclass(frozen=True)
class SearchResult:
    n: int
    k: int
    source: int
    target: int | None
    optimum: int
    explored: int
    elapsed: float
    method: str
    symmetry: bool = False


@dataclass(frozen=True)
class Enumeration:
    """Optimal sequences plus a flag telling whether the cap cut them off."""

    sequences: list[MoveSequence]
    optimum: int
    truncated: bool

    def __len__(self) -> int:
        return len(self.sequences)

    def __iter__(self):
        return iter(self.sequences)


# --- packed codes -----------------------------------------------------------


def bits_per_disk(k: int) -> int:
    if k < 3:
        raise ValueError(f"peg count must be >= 3, got {k}")
    return max(2, (k - 1).bit_length())


def pack_state(state: State) -> int:
    bits = bits_per_disk(state.k)
    code = 0
    for d in range(state.n):
        code |= state.pegs[d] << (bits * d)
    return code


def unpack_state(code: int, n: int, k: int) -> State:
    bits = bits_per_disk(k)
    mask = (1 << bits) - 1
    return State(n=n, k=k, pegs=tuple((code >> (bits * d)) & mask for d in range(n)))


def uniform_code(n: int, k: int, peg: int) -> int:
    """Code of the state with every disk on ``peg``."""
    bits = bits_per_disk(k)
    code = 0
    for d in range(n):
        code |= peg << (bits * d)
    return code


def code_space(n: int, k: int) -> int:
    return 1 << (bits_per_disk(k) * n)


def canonicalize(code: int, n: int, source: int, target: int) -> int:
    """Representative of ``code`` under swapping the two auxiliary pegs (k=4)."""
    aux = [p for p in range(4) if p != source and p != target]
    if len(aux) != 2:
        raise ValueError("canonicalization needs distinct source and target on 4 pegs")
    return min(code, _swap_pegs_scalar(code, n, aux[0], aux[1]))


def _swap_pegs_scalar(code: int, n: int, a: int, b: int) -> int:
    out = 0
    for d in range(n):
        p = (code >> (2 * d)) & 3
        if p == a:
            p = b
        elif p == b:
            p = a
        out |= p << (2 * d)
    return out


def _swap_pegs_vec(codes: np.ndarray, n: int, a: int, b: int) -> np.ndarray:
    out = np.zeros_like(codes)
    for d in range(n):
        shift = 2 * d
        p = (codes >> shift) & 3
        p = np.where(p == a, -1, p)
        p = np.where(p == b, a, p)
        p = np.where(p == -1, b, p)
        out |= p << shift
    return out


def _canonicalize_vec(codes: np.ndarray, n: int, source: int, target: int) -> np.ndarray:
    aux = [p for p in range(4) if p != source and p != target]
    return np.minimum(codes, _swap_pegs_vec(codes, n, aux[0], aux[1]))


# --- vectorized expansion ---------------------------------------------------


def _expand(codes: np.ndarray, n: int, k: int, bits: int) -> np.ndarray:
    """All legal successors of each code, concatenated, duplicates kept."""
    out = []
    occ = np.zeros(codes.shape, dtype=np.uint16)  # pegs claimed by smaller disks
    one = np.uint16(1)
    for d in range(n):
        shift = bits * d
        p = ((codes >> shift) & ((1 << bits) - 1)).astype(np.int64)
        movable = (occ >> p) & 1 == 0
        for q in range(k):
            ok = movable & ((occ >> q) & 1 == 0) & (p != q)
            if ok.any():
                out.append(codes[ok] + ((q - p[ok]) << shift))
        occ |= one << p.astype(np.uint16)
    if not out:
        return codes[:0]
    return np.concatenate(out)


def _legal_moves(code: int, n: int, k: int, bits: int) -> list[tuple[Move, int]]:
    """Single-state successor list in (disk, source, target) order."""
    mask = (1 << bits) - 1
    out = []
    occ = 0
    for d in range(n):
        p = (code >> (bits * d)) & mask
        if not (occ >> p) & 1:
            for q in range(k):
                if q != p and not (occ >> q) & 1:
                    out.append((Move(d + 1, p, q), code + ((q - p) << (bits * d))))
        occ |= 1 << p
    return out


# --- visited bitmaps --------------------------------------------------------


class _Bitmap:
    """Flat bit-per-code visited set with vectorized test/set."""

    def __init__(self, space: int):
        self.bytes = np.zeros((space + 7) >> 3, dtype=np.uint8)

    def test(self, codes: np.ndarray) -> np.ndarray:
        return (self.bytes[codes >> 3] >> (codes & 7).astype(np.uint8)) & 1 == 1

    def set_sorted(self, codes: np.ndarray) -> None:
        """Mark codes visited; requires sorted unique input."""
        if codes.size == 0:
            return
        byte_idx = codes >> 3
        bits = np.uint8(1) << (codes & 7).astype(np.uint8)
        uniq, start = np.unique(byte_idx, return_index=True)
        self.bytes[uniq] |= np.bitwise_or.reduceat(bits, start)


# --- searches ---------------------------------------------------------------


class _Stopwatch:
    def __init__(self, budget: Budget | None):
        self.budget = budget or Budget()
        self.t0 = time.perf_counter()
        self.explored = 0

    def elapsed(self) -> float:
        return time.perf_counter() - self.t0

    def charge(self, count: int, lower_bound: int | None) -> None:
        self.explored += count
        b = self.budget
        if b.max_states is not None and self.explored > b.max_states:
            raise BudgetExceededError(
                f"state budget {b.max_states} exceeded",
                lower_bound=lower_bound,
                explored=self.explored,
            )
        if b.max_seconds is not None and self.elapsed() > b.max_seconds:
            raise BudgetExceededError(
                f"time budget {b.max_seconds}s exceeded",
                lower_bound=lower_bound,
                explored=self.explored,
            )


def _check_dimensions(n: int, k: int, space_limit: int) -> int:
    if k > 16:
        raise ValueError("packed search supports at most 16 pegs")
    space = code_space(n, k)
    if space > space_limit:
        raise BudgetExceededError(
            f"packed code space {space} exceeds the configured limit {space_limit}",
            lower_bound=None,
        )
    return space


def _distance_dtype(n: int, k: int):
    bound = (1 << n) - 1 if k == 3 else max(255, n * 8)
    for dtype in (np.uint8, np.uint16, np.uint32):
        if bound < np.iinfo(dtype).max:
            return dtype
    return np.uint64


@dataclass
class DistanceTable:
    """Forward BFS distances from one state to every reachable code."""

    n: int
    k: int
    source: int
    start_code: int
    dist: np.ndarray = field(repr=False)
    explored: int = 0
    elapsed: float = 0.0

    @property
    def sentinel(self) -> int:
        return int(np.iinfo(self.dist.dtype).max)

    def of_code(self, code: int) -> int | None:
        d = int(self.dist[code])
        return None if d == self.sentinel else d

    def of_state(self, state: State) -> int | None:
        return self.of_code(pack_state(state))

    def optimum_to(self, target: int) -> int | None:
        return self.of_code(uniform_code(self.n, self.k, target))

    def reachable(self) -> int:
        return int(np.count_nonzero(self.dist != self.sentinel))


def distance_table(
    n: int,
    k: int = 4,
    source: int = 0,
    budget: Budget | None = None,
    *,
    start_code: int | None = None,
    space_limit: int = DEFAULT_TABLE_SPACE,
) -> DistanceTable:
    """Exhaustive forward BFS; every one of the k**n states is reachable."""
    if n < 0:
        raise ValueError(f"disk count must be >= 0, got {n}")
    bits = bits_per_disk(k)
    if not 0 <= source < k:
        raise ValueError(f"source peg {source} out of range for k={k}")
    if budget is not None and budget.max_states is not None:
        space_limit = min(space_limit, budget.max_states)
    space = _check_dimensions(n, k, space_limit)
    watch = _Stopwatch(budget)
    dist = np.full(space, np.iinfo(_distance_dtype(n, k)).max, dtype=_distance_dtype(n, k))
    start = uniform_code(n, k, source) if start_code is None else start_code
    dist[start] = 0
    frontier = np.array([start], dtype=np.int64)
    watch.charge(1, lower_bound=None)
    sentinel = np.iinfo(dist.dtype).max
    level = 0
    while frontier.size:
        succ = _expand(frontier, n, k, bits)
        succ = np.unique(succ)
        succ = succ[dist[succ] == sentinel]
        level += 1
        if level >= sentinel:
            raise RuntimeError("distance overflow; state graph deeper than expected")
        dist[succ] = level
        watch.charge(int(succ.size), lower_bound=level)
        frontier = succ
    return DistanceTable(
        n=n,
        k=k,
        source=source,
        start_code=start,
        dist=dist,
        explored=watch.explored,
        elapsed=watch.elapsed(),
    )


def _level_distance(levels: list[np.ndarray], codes: np.ndarray) -> np.ndarray:
    """Exact BFS depth of each code, looked up in per-level sorted arrays."""
    res = np.full(codes.shape, -1, dtype=np.int64)
    for depth, arr in enumerate(levels):
        if arr.size == 0:
            continue
        idx = np.searchsorted(arr, codes)
        idx[idx >= arr.size] = 0
        hit = (arr[idx] == codes) & (res < 0)
        res[hit] = depth
    return res


def exact_min_moves(
    n: int,
    k: int = 4,
    source: int = 0,
    target: int | None = 1,
    *,
    method: str = "bidirectional",
    symmetry: bool | None = None,
    budget: Budget | None = None,
    space_limit: int = DEFAULT_SEARCH_SPACE,
) -> SearchResult:
    """Exact optimum move count from the full tower on ``source``.

    ``target=None`` asks for the minimum over all non-source targets
    (computed forward; by symmetry the per-target optima coincide, which
    the test suite verifies rather than assumes). Raises
    BudgetExceededError carrying the proven lower bound when a budget
    runs out.
    """
    if n < 0:
        raise ValueError(f"disk count must be >= 0, got {n}")
    bits = bits_per_disk(k)
    if not 0 <= source < k:
        raise ValueError(f"source peg {source} out of range for k={k}")
    if target is not None:
        if not 0 <= target < k:
            raise ValueError(f"target peg {target} out of range for k={k}")
        if target == source:
            raise ValueError("source and target pegs coincide")
    if method not in ("forward", "bidirectional"):
        raise ValueError(f"unknown method {method!r}")
    if symmetry is None:
        symmetry = k == 4 and target is not None
    if symmetry and (k != 4 or target is None):
        raise ValueError("symmetry reduction needs k=4 and a fixed target")

    if n == 0:
        return SearchResult(n, k, source, target, 0, 1, 0.0, method, symmetry)

    _check_dimensions(n, k, space_limit)
    watch = _Stopwatch(budget)
    if target is None or method == "forward":
        optimum = _forward_search(n, k, bits, source, target, symmetry, watch)
        used = "forward"
    else:
        optimum = _bidirectional_search(n, k, bits, source, target, symmetry, watch)
        used = "bidirectional"
    return SearchResult(
        n=n,
        k=k,
        source=source,
        target=target,
        optimum=optimum,
        explored=watch.explored,
        elapsed=watch.elapsed(),
        method=used,
        symmetry=symmetry,
    )


def _forward_search(
    n: int,
    k: int,
    bits: int,
    source: int,
    target: int | None,
    symmetry: bool,
    watch: _Stopwatch,
) -> int:
    space = code_space(n, k)
    visited = _Bitmap(space)
    start = uniform_code(n, k, source)
    goals = (
        {uniform_code(n, k, t) for t in range(k) if t != source}
        if target is None
        else {uniform_code(n, k, target)}
    )
    if start in goals:
        return 0
    frontier = np.array([start], dtype=np.int64)
    visited.set_sorted(frontier)
    watch.charge(1, lower_bound=0)
    goal_arr = np.fromiter(goals, dtype=np.int64)
    depth = 0
    while frontier.size:
        succ = _expand(frontier, n, k, bits)
        if symmetry:
            assert target is not None
            succ = _canonicalize_vec(succ, n, source, target)
        succ = np.unique(succ)
        succ = succ[~visited.test(succ)]
        depth += 1
        if np.isin(goal_arr, succ).any():
            return depth
        visited.set_sorted(succ)
        watch.charge(int(succ.size), lower_bound=depth + 1)
        frontier = succ
    raise RuntimeError("goal unreachable; the move graph is connected, so this is a bug")


def _bidirectional_search(
    n: int,
    k: int,
    bits: int,
    source: int,
    target: int,
    symmetry: bool,
    watch: _Stopwatch,
) -> int:
    space = code_space(n, k)
    start = uniform_code(n, k, source)
    goal = uniform_code(n, k, target)

    def canon(codes: np.ndarray) -> np.ndarray:
        return _canonicalize_vec(codes, n, source, target) if symmetry else codes

    vis = {0: _Bitmap(space), 1: _Bitmap(space)}
    levels: dict[int, list[np.ndarray]] = {
        0: [np.array([start], dtype=np.int64)],
        1: [np.array([goal], dtype=np.int64)],
    }
    for side in (0, 1):
        vis[side].set_sorted(levels[side][0])
    watch.charge(2, lower_bound=0)
    best: int | None = None
    depth = {0: 0, 1: 0}

    while True:
        side = 0 if levels[0][-1].size <= levels[1][-1].size else 1
        other = 1 - side
        succ = canon(_expand(levels[side][-1], n, k, bits))
        succ = np.unique(succ)
        succ = succ[~vis[side].test(succ)]
        vis[side].set_sorted(succ)
        depth[side] += 1
        levels[side].append(succ)
        lower = depth[0] + depth[1] + 1
        watch.charge(int(succ.size), lower_bound=None if best is not None else lower)
        meet = succ[vis[other].test(succ)]
        if meet.size:
            other_depths = _level_distance(levels[other], meet)
            candidate = depth[side] + int(other_depths.min())
            if best is None or candidate < best:
                best = candidate
        if best is not None and best <= depth[0] + depth[1] + 1:
            return best
        if not succ.size:
            if best is not None:
                return best
            raise RuntimeError("frontier died before the searches met; bug")


# --- enumeration of optimal sequences ---------------------------------------


def _dag_tables(
    n: int, k: int, source: int, target: int, budget: Budget | None
) -> tuple[DistanceTable, DistanceTable, int]:
    fwd = distance_table(n, k, source, budget)
    bwd = distance_table(
        n, k, source=target, budget=budget, start_code=uniform_code(n, k, target)
    )
    optimum = fwd.optimum_to(target)
    assert optimum is not None
    return fwd, bwd, optimum


def _check_enumeration_args(n: int, k: int, source: int, target: int, max_n: int) -> None:
    if n > max_n:
        raise ValueError(
            f"enumeration is configured for n <= {max_n}; pass max_n to raise the bound"
        )
    if not 0 <= source < k or not 0 <= target < k:
        raise ValueError(f"pegs must lie in 0..{k - 1}")
    if source == target:
        raise ValueError("source and target pegs coincide")


def enumerate_minimal_solutions(
    n: int,
    k: int = 4,
    source: int = 0,
    target: int = 1,
    cap: int = DEFAULT_ENUMERATION_CAP,
    *,
    max_n: int = DEFAULT_ENUMERATION_BOUND,
    budget: Budget | None = None,
) -> Enumeration:
    """Every optimal full transfer, lexicographic by peg-level move list.

    A DFS walks only edges on shortest paths (checked against the
    forward and backward distance tables), so each emitted sequence is
    optimal and none is missed; the cap truncates the tail.
    """
    _check_enumeration_args(n, k, source, target, max_n)
    if n == 0:
        return Enumeration([MoveSequence(0, k, source, ())], optimum=0, truncated=False)
    bits = bits_per_disk(k)
    fwd, bwd, optimum = _dag_tables(n, k, source, target, budget)
    goal = uniform_code(n, k, target)
    out: list[MoveSequence] = []
    trail: list[Move] = []
    truncated = False

    def walk(code: int, depth: int) -> bool:
        if code == goal:
            out.append(MoveSequence(n, k, source, tuple(trail)))
            return len(out) < cap
        for move, nxt in _legal_moves(code, n, k, bits):
            if depth + 1 + int(bwd.dist[nxt]) == optimum:
                trail.append(move)
                more = walk(nxt, depth + 1)
                trail.pop()
                if not more:
                    return False
        return True

    if not walk(uniform_code(n, k, source), 0):
        truncated = True
    out.sort(key=lambda s: s.moves)
    return Enumeration(out, optimum=optimum, truncated=truncated)


def enumerate_minimal_demolishing(
    n: int,
    k: int = 4,
    source: int = 0,
    target: int = 1,
    cap: int = DEFAULT_ENUMERATION_CAP,
    *,
    max_n: int = DEFAULT_ENUMERATION_BOUND,
    budget: Budget | None = None,
) -> Enumeration:
    """Distinct tear-down phases of optimal solutions.

    These are the prefixes of optimal solutions through the first move
    of disk n; the DFS emits each exactly once by cutting at that move.
    """
    _check_enumeration_args(n, k, source, target, max_n)
    if n == 0:
        return Enumeration([MoveSequence(0, k, source, ())], optimum=0, truncated=False)
    bits = bits_per_disk(k)
    fwd, bwd, optimum = _dag_tables(n, k, source, target, budget)
    out: list[MoveSequence] = []
    trail: list[Move] = []
    truncated = False

    def walk(code: int, depth: int) -> bool:
        for move, nxt in _legal_moves(code, n, k, bits):
            if depth + 1 + int(bwd.dist[nxt]) != optimum:
                continue
            trail.append(move)
            if move.disk == n:
                out.append(MoveSequence(n, k, source, tuple(trail)))
                more = len(out) < cap
            else:
                more = walk(nxt, depth + 1)
            trail.pop()
            if not more:
                return False
        return True

    if not walk(uniform_code(n, k, source), 0):
        truncated = True
    out.sort(key=lambda s: s.moves)
    return Enumeration(out, optimum=optimum, truncated=truncated)
