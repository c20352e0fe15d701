"""Acceptance suite: one test per criterion, one printed line each.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the lines.
"""

import random
import time

from hanoilab.cli import main as cli_main
from hanoilab.core import (
    cost_profile,
    decode_triples,
    encode_triples,
    final_state,
    is_full_transfer,
    mirror,
    split_phases,
    validate_sequence,
)
from hanoilab.frame_stewart import (
    f4_exponent,
    generate_solution,
    generate_symmetric_solution,
    stewart_count,
)
from hanoilab.ledger import analytic_ledger, bound_formula_1, bound_formula_2
from hanoilab.analysis import check_avoidance, shorten_violating, violating_phase_family
from hanoilab.search import (
    enumerate_minimal_demolishing,
    enumerate_minimal_solutions,
    exact_min_moves,
)
from tests.conftest import REFERENCE_PHASES_N5, random_walk

EXPECTED_OPTIMA = [1, 3, 5, 9, 13, 17, 25, 33, 41, 49, 65, 81]  # n = 1..12


def report(cid: int, detail: str) -> None:
    print(f"ACCEPTANCE {cid}: PASS - {detail}")


def test_criterion_01_exact_optimum_n5_under_one_second(capsys):
    t0 = time.perf_counter()
    result = exact_min_moves(5, 4, 0, 1)
    elapsed = time.perf_counter() - t0
    assert result.optimum == 13
    assert elapsed < 1.0, f"search took {elapsed:.3f}s"
    code = cli_main(["search", "-n", "5", "-k", "4"])
    out = capsys.readouterr().out
    assert code == 0 and "optimum=13" in out
    with capsys.disabled():
        report(1, f"search(5, 4) = 13 in {elapsed * 1000:.1f} ms")


def test_criterion_02_search_matches_closed_form_to_twelve(capsys):
    t0 = time.perf_counter()
    optima = [exact_min_moves(n, 4, 0, 1).optimum for n in range(1, 13)]
    elapsed = time.perf_counter() - t0
    assert optima == EXPECTED_OPTIMA
    assert optima == [stewart_count(n) for n in range(1, 13)]
    assert elapsed < 600.0, f"took {elapsed:.1f}s"
    with capsys.disabled():
        report(2, f"exact = closed form for n = 1..12 in {elapsed:.2f} s")


def test_criterion_03_exponent_table(capsys):
    rows = {
        0: (1,),
        1: (2, 3),
        2: (4, 5, 6),
        3: (7, 8, 9, 10),
        4: (11, 12, 13, 14, 15),
        5: (16, 17, 18, 19, 20, 21),
    }
    for exponent, row in rows.items():
        for j in row:
            assert f4_exponent(j) == exponent, (j, exponent)
    with capsys.disabled():
        report(3, "all six exponent-table rows reproduced exactly")


def test_criterion_04_generator_soundness(capsys):
    for n in range(0, 16):
        seq = generate_solution(n, 4, 0, 1)
        assert validate_sequence(seq).ok
        assert len(seq) == stewart_count(n)
        assert n == 0 or is_full_transfer(seq, 1)
    for n in range(1, 11):
        seq = generate_symmetric_solution(n, 0, 1)
        assert validate_sequence(seq).ok and is_full_transfer(seq, 1)
        assert len(seq) == stewart_count(n)
        triples = encode_triples(seq)
        half = (len(seq) + 1) // 2
        assert triples[half - 1].disk == n
        for u in range(1, half):
            # rebuild move half+u is tear-down move half-u with its
            # support markers exchanged
            assert triples[half + u - 1] == triples[half - u - 1].swapped(), (n, u)
    with capsys.disabled():
        report(4, "solutions sound to n = 15; mirrored rebuilds exact to n = 10")


def test_criterion_05_unique_big_move_and_phase_length(capsys):
    checked = 0
    for n in range(1, 7):
        enum = enumerate_minimal_solutions(n, 4, 0, 1)
        assert not enum.truncated
        for seq in enum:
            assert sum(1 for m in seq.moves if m.disk == n) == 1
            assert len(split_phases(seq).demolishing) == (enum.optimum + 1) // 2
            checked += 1
    with capsys.disabled():
        report(5, f"{checked} optimal solutions: one big move, half-length tear-down")


def test_criterion_06_reference_phases(capsys):
    enum_cache: dict[int, list] = {}
    for idx, triples in enumerate(REFERENCE_PHASES_N5):
        seq = decode_triples(triples, 5, 4, 0)
        assert validate_sequence(seq).ok and len(seq) == 7
        full = mirror(seq)
        assert len(full) == 13 and validate_sequence(full).ok
        target = final_state(seq).peg_of(5)
        assert is_full_transfer(full, target)
        if target not in enum_cache:
            enum_cache[target] = enumerate_minimal_demolishing(5, 4, 0, target).sequences
        assert any(seq.moves == p.moves for p in enum_cache[target]), idx
    # canonical encodings also all appear in the default enumeration
    default = {
        tuple(encode_triples(p)) for p in enumerate_minimal_demolishing(5, 4, 0, 1)
    }
    for triples in REFERENCE_PHASES_N5:
        canonical = tuple(encode_triples(decode_triples(triples, 5, 4, 0)))
        assert canonical in default
    with capsys.disabled():
        report(6, "all four reference phases decode, mirror, and are enumerated")


def test_criterion_07_avoidance_and_shortening(capsys):
    phases = 0
    for n in range(1, 7):
        for target in (1, 2, 3):
            for phase in enumerate_minimal_demolishing(n, 4, 0, target):
                assert check_avoidance(phase).holds, (n, target)
                phases += 1
    fuzzed = 0
    for n in (4, 5, 6):
        for padded, disk, departure_to in violating_phase_family(n):
            report_ = check_avoidance(padded)
            assert not report_.holds and report_.witness.disk == disk
            shorter = shorten_violating(padded, disk, departure_to)
            assert validate_sequence(shorter).ok
            assert len(shorter) < len(padded)
            assert shorter.moves[-1].disk == n
            fuzzed += 1
    assert fuzzed >= 1000, fuzzed
    with capsys.disabled():
        report(7, f"avoidance holds on {phases} phases; {fuzzed} violations shortened")


def test_criterion_08_ledger_and_bounds(capsys):
    led = analytic_ledger(16)
    for n in range(1, 101):
        expected = stewart_count(n)
        assert bound_formula_1(n, led) == expected, n
        assert bound_formula_2(n, led) == expected, n
    assert bound_formula_1(5, led) == 13
    assert bound_formula_1(6, led) == 17
    assert bound_formula_1(10, led) == 49
    for t in range(1, 11):
        assert led.transferable4[t - 1] == t * (t + 1) // 2
        if t >= 2:
            assert (
                led.transferable4[t - 1]
                == led.transferable3[t - 1] + led.transferable4[t - 2]
            )
    with capsys.disabled():
        report(8, "both bounds equal the closed form for n = 1..100; identities hold")


def test_criterion_09_three_peg_oracle(capsys):
    for n in range(1, 11):
        assert exact_min_moves(n, 3, 0, 1).optimum == (1 << n) - 1, n
    with capsys.disabled():
        report(9, "3-peg search equals 2**n - 1 for n = 1..10")


def test_criterion_10_property_suites(capsys):
    cases = 10_000
    rng = random.Random(20260810)
    for _ in range(cases):
        n = rng.randrange(0, 7)
        k = rng.choice((3, 4, 5))
        seq = random_walk(rng, n, k, rng.randrange(0, 30))
        triples = encode_triples(seq)
        assert encode_triples(decode_triples(triples, n, k, seq.source)) == triples
        assert sum(cost_profile(seq).values()) == len(seq)
    mirrors = 0
    for n in range(1, 7):
        for phase in enumerate_minimal_demolishing(n, 4, 0, 1):
            full = mirror(phase)
            assert len(full) == 2 * len(phase) - 1
            assert validate_sequence(full).ok
            target = final_state(phase).peg_of(n)
            assert is_full_transfer(full, target)
            mirrors += 1
    canon = 0
    for n in range(1, 11):
        on = exact_min_moves(n, 4, 0, 1, symmetry=True).optimum
        off = exact_min_moves(n, 4, 0, 1, symmetry=False).optimum
        assert on == off == stewart_count(n)
        canon += 1
    for n in range(1, 7):
        for source in range(4):
            for target in range(4):
                if source != target:
                    on = exact_min_moves(n, 4, source, target, symmetry=True).optimum
                    off = exact_min_moves(n, 4, source, target, symmetry=False).optimum
                    assert on == off == stewart_count(n)
                    canon += 1
    with capsys.disabled():
        report(
            10,
            f"{cases} round-trip/cost cases, {mirrors} mirrored phases, "
            f"{canon} symmetry-invariance runs",
        )
