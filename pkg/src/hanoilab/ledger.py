"""Cost ledgers and the lower-bound formulas built on them.

A ledger tabulates, level by level, the distinct per-disk move counts
``costs`` that can occur in optimal tear-down phases, how many disks can
share each cost at once (``peak_counts``), and the derived capacities:
cumulative totals, the largest tower transferable within a given cost
on four or three pegs, and the level-to-level increments.

The analytic ledger encodes the closed-form shape costs(t) = 2**(t-1),
peak_counts = 3, then t+1, which makes the transferable-tower numbers
the triangular numbers t(t+1)/2 and reproduces the 4-peg move count
exactly through both bound formulas. The empirical ledger measures the
same quantities on enumerated phases so any gap between story and
reality is surfaced by comparison, never hidden.

Both bound evaluators decompose n greedily into full cost groups plus a
remainder; a full-sequence disk costs twice its tear-down cost except
the largest disk, which moves exactly once. For n >= 3 this evaluates
the textbook sums verbatim; for n = 1, 2 the greedy fill degrades
gracefully where the closed sums would not apply.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .core import MoveSequence, cost_profile
from .errors import LedgerTooShallowError
from .frame_stewart import stewart_count


@dataclass(frozen=True)
class CostLedger:
    provenance: str
    costs: tuple[int, ...]
    peak_counts: tuple[int, ...]
    cumulative_counts: tuple[int, ...]
    transferable4: tuple[int, ...] | None = None
    transferable3: tuple[int, ...] | None = None
    increments: tuple[int, ...] | None = None

    @property
    def depth(self) -> int:
        return len(self.costs)

    def validate_growth(self) -> None:
        """Costs must at least double level to level."""
        for t in range(1, self.depth):
            if self.costs[t] < 2 * self.costs[t - 1]:
                raise ValueError(
                    f"cost level {t + 1} ({self.costs[t]}) is less than twice "
                    f"level {t} ({self.costs[t - 1]})"
                )


def analytic_ledger(depth: int) -> CostLedger:
    """Closed-form ledger: costs double, capacities grow triangularly."""
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    costs = tuple(1 << (t - 1) for t in range(1, depth + 1))
    peak = tuple(3 if t == 1 else t + 1 for t in range(1, depth + 1))
    cumulative = []
    total = 0
    for p in peak:
        total += p
        cumulative.append(total)
    transferable4 = tuple(t * (t + 1) // 2 for t in range(1, depth + 1))
    transferable3 = tuple(range(1, depth + 1))
    increments = tuple(
        transferable4[t] - (transferable4[t - 1] if t else 0) for t in range(depth)
    )
    return CostLedger(
        provenance="analytic",
        costs=costs,
        peak_counts=peak,
        cumulative_counts=tuple(cumulative),
        transferable4=transferable4,
        transferable3=transferable3,
        increments=increments,
    )


PhaseSource = Mapping[int, Iterable[MoveSequence]] | Callable[[int], Iterable[MoveSequence]]


def empirical_ledger(n_max: int, phases_for: PhaseSource) -> CostLedger:
    """Measure costs and multiplicities on enumerated tear-down phases.

    ``phases_for`` maps a disk count to its enumerated optimal phases;
    pass a mapping or a callable (enumeration is never triggered
    implicitly here). Records, for each observed cost, the largest
    number of disks sharing it within a single phase.
    """
    if n_max < 1:
        raise ValueError(f"n_max must be >= 1, got {n_max}")
    peak: dict[int, int] = {}
    for n in range(1, n_max + 1):
        phases = phases_for(n) if callable(phases_for) else phases_for.get(n, ())
        for phase in phases:
            multiplicity: dict[int, int] = {}
            for cost in cost_profile(phase).values():
                if cost > 0:
                    multiplicity[cost] = multiplicity.get(cost, 0) + 1
            for cost, count in multiplicity.items():
                peak[cost] = max(peak.get(cost, 0), count)
    costs = tuple(sorted(peak))
    peaks = tuple(peak[c] for c in costs)
    cumulative = []
    total = 0
    for p in peaks:
        total += p
        cumulative.append(total)
    return CostLedger(
        provenance="empirical",
        costs=costs,
        peak_counts=peaks,
        cumulative_counts=tuple(cumulative),
    )


@dataclass(frozen=True)
class LedgerDiscrepancy:
    cost: int
    analytic_peak: int | None
    empirical_peak: int | None


def compare_ledgers(analytic: CostLedger, empirical: CostLedger) -> list[LedgerDiscrepancy]:
    """Levels where measured multiplicities differ from the closed form.

    Empirical coverage is bounded by the enumeration size, so missing
    levels show up as discrepancies with an absent side; they are
    reported, not judged.
    """
    a = dict(zip(analytic.costs, analytic.peak_counts))
    e = dict(zip(empirical.costs, empirical.peak_counts))
    out = []
    for cost in sorted(set(a) | set(e)):
        if a.get(cost) != e.get(cost):
            out.append(
                LedgerDiscrepancy(
                    cost=cost, analytic_peak=a.get(cost), empirical_peak=e.get(cost)
                )
            )
    return out


def _greedy_groups(n: int, capacities: Iterable[int]) -> list[int]:
    """Fill cost groups in order; LedgerTooShallowError when disks remain."""
    remaining = n
    filled = []
    for cap in capacities:
        take = min(remaining, cap)
        filled.append(take)
        remaining -= take
        if remaining == 0:
            return filled
    raise LedgerTooShallowError(
        f"ledger exhausted with {remaining} of {n} disks unplaced"
    )


def bound_formula_1(n: int, ledger: CostLedger) -> int:
    """Lower bound from peak multiplicities: the largest disk moves once
    and each further disk in cost group t moves twice its tear-down cost."""
    if n < 1:
        raise ValueError(f"bound needs n >= 1, got {n}")
    ledger.validate_growth()
    groups = _greedy_groups(n, ledger.peak_counts)
    total = 0
    for t, count in enumerate(groups, start=1):
        if t == 1:
            total += 1 + (count - 1) * 2 * ledger.costs[0]
        else:
            total += count * 2 * ledger.costs[t - 1]
    return total


def bound_formula_2(n: int, ledger: CostLedger) -> int:
    """Lower bound from transfer increments: group t gains ledger
    increment t disks, each moving twice the previous level's cost."""
    if n < 1:
        raise ValueError(f"bound needs n >= 1, got {n}")
    if ledger.increments is None:
        raise ValueError("ledger has no transfer increments (empirical ledger?)")
    ledger.validate_growth()
    if ledger.increments[0] != 1:
        raise ValueError("first transfer increment must be the lone largest disk")
    groups = _greedy_groups(n, ledger.increments)
    total = 0
    for t, count in enumerate(groups, start=1):
        if t == 1:
            total += count  # the largest disk's single move
        else:
            total += count * 2 * ledger.costs[t - 2]
    return total


@dataclass(frozen=True)
class EqualityRow:
    n: int
    stewart: int
    bound1: int
    bound2: int
    exact: int | None

    @property
    def equal(self) -> bool:
        values = {self.stewart, self.bound1, self.bound2}
        if self.exact is not None:
            values.add(self.exact)
        return len(values) == 1


def equality_report(
    ns: Iterable[int],
    ledger: CostLedger,
    exact: Mapping[int, int] | None = None,
) -> list[EqualityRow]:
    """Per-n comparison of the closed-form count, both bounds, and (when
    supplied) the exact optimum; gaps in ``exact`` stay absent."""
    rows = []
    for n in ns:
        rows.append(
            EqualityRow(
                n=n,
                stewart=stewart_count(n),
                bound1=bound_formula_1(n, ledger),
                bound2=bound_formula_2(n, ledger),
                exact=None if exact is None else exact.get(n),
            )
        )
    return rows
