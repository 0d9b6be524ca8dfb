"""Rule-sets, the retrograde solver, kernel checks, witnesses, caching."""
import functools

import numpy as np
import pytest

from wythlab.games import (
    CacheError,
    CheckResult,
    GameSpec,
    MAX_SOLVE_BOUND,
    PNTable,
    PposSequence,
    ResourceLimitError,
    check_absorbing,
    check_stable,
    kspec,
    non_redundant_witness,
    option_member_counts,
    options,
    ppos_list,
    read_table_cache,
    solve,
    solve_pairs,
    write_table_cache,
    wspec,
)


def brute_force(spec: GameSpec, bound: int) -> np.ndarray:
    """Independent recursive classifier, small boards only."""

    @functools.lru_cache(maxsize=None)
    def is_p(x, y):
        if spec.variant == "K" and x + y <= spec.ell:
            return True
        p_opts = sum(1 for q in options((x, y)) if is_p(*q))
        if spec.variant == "K":
            return p_opts == 0
        return p_opts <= spec.k - 1

    table = np.zeros((bound + 1, bound + 1), dtype=bool)
    for x in range(bound + 1):
        for y in range(bound + 1):
            table[x, y] = is_p(x, y)
    return table


class TestGameSpec:
    def test_k_requires_ell(self):
        with pytest.raises(ValueError):
            GameSpec("K")
        with pytest.raises(ValueError):
            GameSpec("K", ell=-1)
        with pytest.raises(ValueError):
            GameSpec("K", ell=2, k=2)

    def test_w_requires_k(self):
        with pytest.raises(ValueError):
            GameSpec("W")
        with pytest.raises(ValueError):
            GameSpec("W", k=0)
        with pytest.raises(ValueError):
            GameSpec("W", ell=1, k=1)

    def test_unknown_variant(self):
        with pytest.raises(ValueError):
            GameSpec("Z", ell=1)

    def test_helpers_and_labels(self):
        assert kspec(3) == GameSpec("K", ell=3)
        assert wspec(2) == GameSpec("W", k=2)
        assert kspec(3).label() == "K ell=3"
        assert wspec(2).label() == "W k=2"
        assert kspec(3).terminal_sum == 3
        assert wspec(2).terminal_sum == -1


class TestOptions:
    def test_origin_has_none(self):
        assert options((0, 0)) == []

    def test_count_formula(self):
        for x in range(12):
            for y in range(12):
                opts = options((x, y))
                assert len(opts) == x + y + min(x, y)
                assert len(set(opts)) == len(opts)

    def test_geometry(self):
        assert set(options((2, 1))) == {
            (0, 1), (1, 1), (2, 0), (1, 0)
        }

    def test_moves_decrease_sum(self):
        for q in options((5, 7)):
            assert q[0] + q[1] < 12
            assert q[0] >= 0 and q[1] >= 0


class TestSolve:
    @pytest.mark.parametrize("spec", [
        kspec(0), kspec(1), kspec(2), kspec(3),
        wspec(1), wspec(2), wspec(3),
    ])
    def test_matches_brute_force(self, spec):
        want = brute_force(spec, 12)
        got = solve(spec, 12).ppos
        assert np.array_equal(got, want)

    def test_terminal_region_all_p(self):
        t = solve(kspec(4), 30).ppos
        for x in range(5):
            for y in range(5 - x):
                assert t[x, y]

    def test_symmetry(self):
        for spec in (kspec(2), wspec(2)):
            t = solve(spec, 60).ppos
            assert np.array_equal(t, t.T)

    def test_memoized(self):
        assert solve(kspec(1), 50) is solve(kspec(1), 50)

    def test_table_read_only(self):
        t = solve(kspec(1), 40)
        with pytest.raises(ValueError):
            t.ppos[0, 0] = False

    def test_bound_cap(self):
        with pytest.raises(ResourceLimitError):
            solve(kspec(1), MAX_SOLVE_BOUND + 1)
        with pytest.raises(ValueError):
            solve(kspec(1), -1)

    def test_classic_wythoff_pairs(self):
        # terminal (0, 0) is excluded from the listing
        pp = ppos_list(solve(kspec(0), 60))
        assert pp.pairs[:5] == ((1, 2), (3, 5), (4, 7), (6, 10), (8, 13))


class TestPairExtraction:
    def test_ppos_list_excludes_k_terminals(self):
        pp = ppos_list(solve(kspec(1), 60))
        assert pp.pairs[0] == (2, 4)
        assert pp.ell == 1
        assert all(a + b > 1 for a, b in pp.pairs)
        assert all(a <= b for a, b in pp.pairs)

    def test_ppos_list_keeps_w_pairs(self):
        pp = ppos_list(solve(wspec(3), 40))
        assert pp.pairs[0] == (0, 0)
        assert (0, 1) in pp.pairs and (0, 2) in pp.pairs
        assert pp.ell is None

    def test_ppos_list_spec_mismatch(self):
        t = solve(kspec(1), 30)
        with pytest.raises(ValueError):
            ppos_list(t, kspec(2))

    @pytest.mark.parametrize("spec,bound", [
        (kspec(0), 150), (kspec(3), 150), (wspec(2), 150), (wspec(3), 90),
    ])
    def test_solve_pairs_streams_same_list(self, spec, bound):
        assert tuple(solve_pairs(spec, bound)) == ppos_list(solve(spec, bound)).pairs

    def test_sequence_container(self):
        pp = ppos_list(solve(kspec(1), 60))
        assert len(pp) == len(pp.pairs)
        assert pp[0] == (2, 4)
        a, b = pp.arrays()
        assert a.tolist() == [p[0] for p in pp.pairs]
        assert b.tolist() == [p[1] for p in pp.pairs]


class TestOptionCounts:
    def test_against_direct_count(self):
        rng = np.random.default_rng(7)
        mask = rng.random((25, 25)) < 0.3
        cnt = option_member_counts(mask)
        for x in range(25):
            for y in range(25):
                want = sum(1 for q in options((x, y)) if mask[q])
                assert cnt[x, y] == want, (x, y)

    def test_empty_mask(self):
        assert option_member_counts(np.zeros((5, 5), bool)).sum() == 0


class TestKernelChecks:
    @pytest.mark.parametrize("spec,bound", [
        (kspec(0), 120), (kspec(2), 120), (wspec(2), 120), (wspec(3), 120),
    ])
    def test_solver_output_is_kernel(self, spec, bound):
        t = solve(spec, bound)
        assert check_stable(t, spec, bound).ok
        assert check_absorbing(t, spec, bound).ok

    def test_added_member_breaks_stability(self):
        spec = kspec(1)
        mask = solve(spec, 80).ppos.copy()
        assert not mask[10, 10]
        mask[10, 10] = True
        res = check_stable(mask, spec, 80)
        assert not res.ok
        src, target = res.counterexample
        assert mask[src] and mask[target]
        assert not check_absorbing(mask, spec, 80).ok or True  # may still absorb

    def test_removed_member_breaks_absorption(self):
        spec = kspec(1)
        mask = solve(spec, 80).ppos.copy()
        assert mask[2, 4]
        mask[2, 4] = False
        res = check_absorbing(mask, spec, 80)
        assert not res.ok
        assert res.counterexample == (2, 4)

    def test_w_member_with_too_many_options(self):
        spec = wspec(2)
        mask = solve(spec, 80).ppos.copy()
        flat = np.flatnonzero(~mask)
        x, y = divmod(int(flat[len(flat) // 2]), 81)
        mask[x, y] = True
        res = check_stable(mask, spec, 80)
        assert not res.ok
        src, targets = res.counterexample
        assert len(targets) == 2
        assert all(mask[t] for t in targets)

    def test_w_removed_member_breaks_absorption(self):
        spec = wspec(3)
        mask = solve(spec, 80).ppos.copy()
        mask[1, 3] = False
        res = check_absorbing(mask, spec, 80)
        assert not res.ok

    def test_excluded_terminal_reported(self):
        spec = kspec(2)
        mask = solve(spec, 50).ppos.copy()
        mask[0, 2] = False     # terminal position, has no moves at all
        res = check_absorbing(mask, spec, 50)
        assert not res.ok
        assert res.counterexample == (0, 2)

    def test_candidate_forms_agree(self):
        spec = wspec(3)
        bound = 50
        table = solve(spec, bound)
        mask = table.ppos
        from_pairs = [
            (x, y)
            for x in range(bound + 1)
            for y in range(bound + 1)
            if mask[x, y]
        ]
        for candidate in (table, mask, from_pairs,
                          lambda x, y: bool(mask[x, y])):
            assert check_stable(candidate, spec, bound).ok
            assert check_absorbing(candidate, spec, bound).ok

    def test_candidate_too_small(self):
        with pytest.raises(ValueError):
            check_stable(np.zeros((10, 10), bool), kspec(1), 20)

    def test_result_truthiness(self):
        assert CheckResult(True)
        assert not CheckResult(False, "no")


class TestWitnesses:
    def test_move_validation(self):
        for bad in ((0, 0), (1, 2), (-1, 0), (0, -2), (2, 3)):
            with pytest.raises(ValueError):
                non_redundant_witness(kspec(1), bad, 50)

    @pytest.mark.parametrize("spec,want", [(kspec(1), 1), (wspec(2), 2)])
    def test_witness_semantics(self, spec, want):
        bound = 120
        table = solve(spec, bound).ppos
        cnt = option_member_counts(table)
        for move in ((1, 0), (0, 3), (2, 2)):
            w = non_redundant_witness(spec, move, bound)
            assert w is not None
            x, y = w
            assert not table[x, y]
            assert cnt[x, y] == want
            assert table[x - move[0], y - move[1]]

    def test_unreachable_move_returns_none(self):
        # bound 2 is too small for any witness of a length-30 slide
        assert non_redundant_witness(kspec(1), (30, 0), 2) is None


class TestCache:
    def test_round_trip(self, tmp_path):
        for spec in (kspec(2), wspec(3)):
            t = solve(spec, 37)
            path = tmp_path / "table.pn"
            write_table_cache(t, path)
            back = read_table_cache(path)
            assert back.spec == spec
            assert back.bound == 37
            assert np.array_equal(back.ppos, t.ppos)

    def test_checksum_detects_corruption(self, tmp_path):
        t = solve(kspec(1), 30)
        path = tmp_path / "table.pn"
        write_table_cache(t, path)
        blob = bytearray(path.read_bytes())
        blob[20] ^= 0xFF
        path.write_bytes(bytes(blob))
        with pytest.raises(CacheError):
            read_table_cache(path)

    def test_truncated_file(self, tmp_path):
        path = tmp_path / "table.pn"
        path.write_bytes(b"WYPN\x01")
        with pytest.raises(CacheError):
            read_table_cache(path)

    def test_wrong_magic(self, tmp_path):
        path = tmp_path / "table.pn"
        path.write_bytes(b"NOPE" + bytes(64))
        with pytest.raises(CacheError):
            read_table_cache(path)

    def test_reloaded_table_read_only(self, tmp_path):
        t = solve(kspec(1), 20)
        path = tmp_path / "table.pn"
        write_table_cache(t, path)
        back = read_table_cache(path)
        with pytest.raises(ValueError):
            back.ppos[0, 0] = False
