import random

import pytest

from hanoilab.cache import OptimaCache, load_cache, load_or_new, save_cache
from hanoilab.core import initial_state, is_full_transfer, validate_sequence
from hanoilab.errors import BudgetExceededError, CorruptCacheError
from hanoilab.search import (
    Budget,
    canonicalize,
    code_space,
    distance_table,
    enumerate_minimal_demolishing,
    enumerate_minimal_solutions,
    exact_min_moves,
    pack_state,
    uniform_code,
    unpack_state,
)
from tests import oracle
from tests.conftest import random_walk

FOUR_PEG_COUNTS = {n: c for n, c in enumerate([1, 3, 5, 9, 13, 17, 25, 33, 41, 49, 65, 81], start=1)}

# golden enumeration sizes for source 0, target 1 (first computed with
# the dict-based oracle, kept frozen here)
SOLUTION_COUNTS = {1: 1, 2: 2, 3: 2, 4: 22, 5: 40, 6: 18}
PHASE_COUNTS = {1: 1, 2: 2, 3: 2, 4: 10, 5: 16, 6: 6}


class TestPacking:
    def test_round_trip_states(self):
        rng = random.Random(7)
        for _ in range(200):
            k = rng.choice((3, 4, 5))
            n = rng.randrange(0, 8)
            seq = random_walk(rng, n, k, rng.randrange(0, 25))
            state = initial_state(n, k, 0)
            from hanoilab.core import apply

            for move in seq.moves:
                state = apply(state, move)
            assert unpack_state(pack_state(state), n, k) == state

    def test_code_round_trip(self):
        rng = random.Random(11)
        for _ in range(500):
            n, k = rng.randrange(0, 9), rng.choice((3, 4, 5))
            code = 0
            for d in range(n):
                code |= rng.randrange(k) << (2 if k <= 4 else 3) * d
            assert pack_state(unpack_state(code, n, k)) == code

    def test_uniform(self):
        assert uniform_code(3, 4, 2) == 0b101010
        assert code_space(3, 4) == 64


class TestDistanceTable:
    def test_single_disk(self):
        table = distance_table(1, 4, 0)
        assert [table.of_code(uniform_code(1, 4, p)) for p in range(4)] == [0, 1, 1, 1]

    def test_five_disks(self):
        assert distance_table(5, 4, 0).optimum_to(1) == 13

    def test_two_disks(self):
        assert distance_table(2, 4, 0).optimum_to(1) == 3

    @pytest.mark.parametrize("n,k", [(4, 3), (4, 4), (3, 5)])
    def test_all_states_reachable(self, n, k):
        assert distance_table(n, k, 0).reachable() == k**n

    def test_space_guard(self):
        with pytest.raises(BudgetExceededError):
            distance_table(10, 4, 0, space_limit=1 << 10)


class TestExactOptimum:
    def test_five_disks(self):
        assert exact_min_moves(5, 4, 0, 1).optimum == 13

    def test_single_disk(self):
        assert exact_min_moves(1, 4, 0, 1).optimum == 1

    def test_empty(self):
        assert exact_min_moves(0, 4, 0, 1).optimum == 0

    @pytest.mark.parametrize("n", range(1, 11))
    def test_three_pegs_classic(self, n):
        assert exact_min_moves(n, 3, 0, 1).optimum == (1 << n) - 1

    @pytest.mark.parametrize("n", range(1, 9))
    def test_forward_equals_bidirectional(self, n):
        fwd = exact_min_moves(n, 4, 0, 1, method="forward")
        bid = exact_min_moves(n, 4, 0, 1, method="bidirectional")
        assert fwd.optimum == bid.optimum == FOUR_PEG_COUNTS[n]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_symmetry_on_off_agree(self, n):
        on = exact_min_moves(n, 4, 0, 1, symmetry=True)
        off = exact_min_moves(n, 4, 0, 1, symmetry=False)
        assert on.optimum == off.optimum
        assert on.explored <= off.explored

    def test_all_targets_equal(self):
        for n in range(1, 7):
            optima = {exact_min_moves(n, 4, 0, t).optimum for t in (1, 2, 3)}
            assert len(optima) == 1

    def test_any_target_matches_fixed(self):
        for n in range(1, 7):
            any_t = exact_min_moves(n, 4, 0, None)
            assert any_t.optimum == exact_min_moves(n, 4, 0, 1).optimum
            assert any_t.method == "forward"

    def test_oracle_agreement_small(self):
        for k in (3, 4, 5):
            for n in range(1, 6):
                assert (
                    exact_min_moves(n, k, 0, 1).optimum
                    == oracle.optimum(n, k, 0, 1)
                ), (n, k)

    def test_deterministic_explored(self):
        a = exact_min_moves(7, 4, 0, 1)
        b = exact_min_moves(7, 4, 0, 1)
        assert (a.optimum, a.explored) == (b.optimum, b.explored)

    def test_rejects_same_pegs(self):
        with pytest.raises(ValueError):
            exact_min_moves(3, 4, 1, 1)


class TestBudget:
    def test_state_budget_carries_lower_bound(self):
        with pytest.raises(BudgetExceededError) as err:
            exact_min_moves(8, 4, 0, 1, budget=Budget(max_states=50))
        assert err.value.lower_bound is not None and err.value.lower_bound >= 1
        assert err.value.explored > 50

    def test_time_budget(self):
        with pytest.raises(BudgetExceededError):
            exact_min_moves(10, 4, 0, 1, budget=Budget(max_seconds=0.0))

    def test_forward_budget(self):
        with pytest.raises(BudgetExceededError):
            exact_min_moves(
                8, 4, 0, 1, method="forward", budget=Budget(max_states=50)
            )


class TestCanonicalize:
    def test_uniform_states_fixed(self):
        for peg in range(4):
            code = uniform_code(5, 4, peg)
            assert canonicalize(code, 5, 0, 1) == code or peg in (2, 3)

    def test_source_fixed_point(self):
        code = uniform_code(5, 4, 0)
        assert canonicalize(code, 5, 0, 1) == code

    def test_swapped_states_share_representative(self):
        # disk 1 on either auxiliary peg, the rest on the source
        a = pack_state(initial_state(3, 4, 0)) | (2 << 0)
        b = pack_state(initial_state(3, 4, 0)) | (3 << 0)
        assert canonicalize(a, 3, 0, 1) == canonicalize(b, 3, 0, 1)

    def test_idempotent(self):
        rng = random.Random(3)
        for _ in range(200):
            code = rng.randrange(code_space(6, 4))
            once = canonicalize(code, 6, 0, 1)
            assert canonicalize(once, 6, 0, 1) == once


class TestEnumeration:
    def test_single_disk(self):
        result = enumerate_minimal_solutions(1, 4, 0, 1)
        assert len(result) == 1 and len(result.sequences[0]) == 1

    @pytest.mark.parametrize("n", range(1, 7))
    def test_solution_counts(self, n):
        result = enumerate_minimal_solutions(n, 4, 0, 1)
        assert len(result) == SOLUTION_COUNTS[n]
        assert not result.truncated
        assert result.optimum == FOUR_PEG_COUNTS[n]

    @pytest.mark.parametrize("n", range(1, 7))
    def test_phase_counts(self, n):
        result = enumerate_minimal_demolishing(n, 4, 0, 1)
        assert len(result) == PHASE_COUNTS[n]

    def test_all_solutions_valid_full_transfers(self):
        for n in range(1, 7):
            for seq in enumerate_minimal_solutions(n, 4, 0, 1):
                assert validate_sequence(seq).ok and is_full_transfer(seq, 1)
        for n in range(1, 7):
            for seq in enumerate_minimal_demolishing(n, 4, 0, 1):
                assert validate_sequence(seq).ok

    def test_lexicographic_order(self):
        seqs = enumerate_minimal_solutions(5, 4, 0, 1).sequences
        assert [s.moves for s in seqs] == sorted(s.moves for s in seqs)

    def test_cap_truncates(self):
        result = enumerate_minimal_solutions(5, 4, 0, 1, cap=7)
        assert len(result) == 7 and result.truncated
        full = enumerate_minimal_solutions(5, 4, 0, 1)
        assert [s.moves for s in result] == [s.moves for s in full.sequences[:7]]

    def test_bound_guard(self):
        with pytest.raises(ValueError):
            enumerate_minimal_solutions(7, 4, 0, 1)
        enumerate_minimal_solutions(7, 4, 0, 1, cap=10, max_n=7)

    def test_oracle_agreement(self):
        for n in range(1, 5):
            mine = [s.moves for s in enumerate_minimal_solutions(n, 4, 0, 1)]
            ref = [s.moves for s in oracle.all_optimal_solutions(n, 4, 0, 1)]
            assert mine == ref
            mine_ph = [s.moves for s in enumerate_minimal_demolishing(n, 4, 0, 1)]
            ref_ph = [s.moves for s in oracle.all_optimal_phases(n, 4, 0, 1)]
            assert mine_ph == ref_ph

    def test_phases_are_solution_prefixes(self):
        phases = {s.moves for s in enumerate_minimal_demolishing(5, 4, 0, 1)}
        from hanoilab.core import split_phases

        derived = {split_phases(s).demolishing.moves
                   for s in enumerate_minimal_solutions(5, 4, 0, 1)}
        assert phases == derived

    def test_empty_tower(self):
        result = enumerate_minimal_solutions(0, 4, 0, 1)
        assert len(result) == 1 and result.sequences[0].moves == ()


class TestCache:
    def test_round_trip(self, tmp_path):
        cache = OptimaCache()
        for n in range(1, 9):
            cache.put(n, 4, FOUR_PEG_COUNTS[n], "bidirectional")
        path = tmp_path / "optima.json"
        save_cache(cache, path)
        again = load_cache(path)
        assert len(again) == 8
        for n in range(1, 9):
            assert again.get(n, 4).optimum == FOUR_PEG_COUNTS[n]

    def test_tampered_checksum(self, tmp_path):
        cache = OptimaCache()
        cache.put(5, 4, 13, "bidirectional")
        path = tmp_path / "optima.json"
        save_cache(cache, path)
        text = path.read_text().replace('"optimum": 13', '"optimum": 12')
        path.write_text(text)
        with pytest.raises(CorruptCacheError):
            load_cache(path)

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "optima.json"
        path.write_text('{"magic": "something-else", "version": 1, "records": []}')
        with pytest.raises(CorruptCacheError):
            load_cache(path)

    def test_not_json(self, tmp_path):
        path = tmp_path / "optima.json"
        path.write_text("not json at all")
        with pytest.raises(CorruptCacheError):
            load_cache(path)

    def test_load_or_new_missing(self, tmp_path):
        assert len(load_or_new(tmp_path / "absent.json")) == 0
