"""Named verification suites shared by the command line and the tests.

Each suite runs a family of bounded checks and returns items carrying the
check name, the rule-set label, the bound, the verdict with any
counterexample, and the wall time.  Ordering of the returned list is by
item name so reports are deterministic.
"""
from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import characterizations as ch
from .catalog import ADJUST_SYSTEMS, PARTITION_SYSTEMS, adjust_dfao
from .games import (
    CheckResult,
    GameSpec,
    check_absorbing,
    check_stable,
    kspec,
    non_redundant_witness,
    ppos_list,
    solve,
    wspec,
)
from .morphisms import (
    Coding,
    eval_dfao,
    fixed_point_prefix,
    k2_adjust_prefix,
    k2_adjust_prefix_by_recurrence,
    promote,
)

__all__ = [
    "SuiteItem",
    "SUITES",
    "run_suite",
    "K_BOUND_DEFAULT",
    "W_BOUND_DEFAULT",
    "DISCREPANCY_HORIZON_DEFAULT",
    "MORPHIC_HORIZON_DEFAULT",
]

K_BOUND_DEFAULT = 800
W_BOUND_DEFAULT = 400
W1_CROSS_BOUND_DEFAULT = 300
DISCREPANCY_HORIZON_DEFAULT = 10**5
MORPHIC_HORIZON_DEFAULT = 10**4
REDUNDANCY_BOUND_DEFAULT = 400
REDUNDANCY_MAX_DELTA = 30


@dataclass(frozen=True)
class SuiteItem:
    """One row of a verification report."""

    name: str
    spec: str
    bound: int
    result: CheckResult
    seconds: float


def _timed(name: str, spec_label: str, bound: int, fn) -> SuiteItem:
    t0 = time.perf_counter()
    result = fn()
    return SuiteItem(name, spec_label, bound, result, time.perf_counter() - t0)


def _mask_equality(got: np.ndarray, want: np.ndarray, what: str) -> CheckResult:
    diff = got ^ want
    if not diff.any():
        return CheckResult(True, f"{what}: sets identical")
    flat = int(np.flatnonzero(diff)[0])
    x, y = divmod(flat, diff.shape[1])
    return CheckResult(
        False,
        f"{what}: first difference at ({x},{y}); "
        f"closed form says {bool(got[x, y])}, solver says {bool(want[x, y])}",
        (x, y),
    )


def _k_closed_mask(ell: int, bound: int) -> np.ndarray:
    if ell == 1:
        return ch.k1_closed_form_mask(bound)
    if ell == 2:
        return ch.k2_closed_form_mask(bound)
    closed = ch.closed_form_K3 if ell == 3 else ch.closed_form_K4
    mask = np.zeros((bound + 1, bound + 1), dtype=bool)
    for s in range(min(ell, bound) + 1):
        for x in range(s + 1):
            mask[x, s - x] = True
    n = 0
    while True:
        a, b = closed(n)
        if a > bound:
            break
        if b <= bound:
            mask[a, b] = mask[b, a] = True
        n += 1
    return mask


def _w_closed_mask(k: int, bound: int) -> np.ndarray:
    if k == 2:
        return ch.w2_closed_form_mask(bound)
    if k == 3:
        return ch.w3_closed_form_mask(bound)
    raise ValueError(f"no closed form for W^{k}")


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------

def suite_kernel(ell=None, k=None, bound=None) -> list[SuiteItem]:
    """Stability and absorption of the solver's own output."""
    specs: list[tuple[GameSpec, int]] = []
    ells = range(5) if ell is None and k is None else ([ell] if ell is not None else [])
    ks = range(1, 4) if ell is None and k is None else ([k] if k is not None else [])
    for e in ells:
        specs.append((kspec(e), bound or K_BOUND_DEFAULT))
    for kk in ks:
        specs.append((wspec(kk), bound or W_BOUND_DEFAULT))
    items = []
    for spec, B in specs:
        tag = spec.label().replace(" ", "-")
        table = solve(spec, B)
        items.append(
            _timed(f"kernel/{tag}/stable", spec.label(), B,
                   lambda t=table, s=spec, b=B: check_stable(t, s, b))
        )
        items.append(
            _timed(f"kernel/{tag}/absorbing", spec.label(), B,
                   lambda t=table, s=spec, b=B: check_absorbing(t, s, b))
        )
    return sorted(items, key=lambda it: it.name)


def suite_closed_forms(ell=None, k=None, bound=None) -> list[SuiteItem]:
    """Closed-form sets versus solver ground truth, plus their kernel checks."""
    del k
    B = bound or K_BOUND_DEFAULT
    ells = [ell] if ell is not None else [1, 2, 3, 4]
    items = []
    for e in ells:
        spec = kspec(e)
        mask = _k_closed_mask(e, B)
        table = solve(spec, B)
        items.append(
            _timed(f"closed-forms/K{e}/set-equality", spec.label(), B,
                   lambda m=mask, t=table, e=e: _mask_equality(m, t.ppos, f"K^{e}"))
        )
        items.append(
            _timed(f"closed-forms/K{e}/stable", spec.label(), B,
                   lambda m=mask, s=spec: check_stable(m, s, B))
        )
        items.append(
            _timed(f"closed-forms/K{e}/absorbing", spec.label(), B,
                   lambda m=mask, s=spec: check_absorbing(m, s, B))
        )
    return sorted(items, key=lambda it: it.name)


def suite_mex(ell=None, k=None, bound=None) -> list[SuiteItem]:
    """The mex recursion versus the solver, partition, and counting."""
    del k
    B = bound or K_BOUND_DEFAULT
    ells = [ell] if ell is not None else list(range(7))
    items = []
    for e in ells:
        spec = kspec(e)
        count = B * 2 // 3 + 2 * e + 8
        pp = ch.mex_sequence(e, count)

        def equality(e=e, spec=spec, pp=pp):
            got = [p for p in pp.pairs if p[1] <= B]
            want = list(ppos_list(solve(spec, B)).pairs)
            if got == want:
                return CheckResult(True, f"{len(want)} pairs match")
            short = min(len(got), len(want))
            n = next((i for i in range(short) if got[i] != want[i]), short)
            return CheckResult(False, f"first difference at pair {n}", n)

        def partition(e=e, pp=pp):
            a, b = pp.arrays()
            horizon = int(a[-1])
            both = np.concatenate([a, b])
            both = np.sort(both[both <= horizon])
            want = np.arange(e + 1, horizon + 1)
            if both.size == want.size and np.array_equal(both, want):
                return CheckResult(True, f"values {e + 1}..{horizon} partitioned")
            if np.unique(both).size != both.size:
                dup = int(both[np.flatnonzero(np.diff(both) == 0)[0]])
                return CheckResult(False, f"value {dup} appears in both sequences", dup)
            missing = int(np.setdiff1d(want, both)[0])
            return CheckResult(False, f"value {missing} in neither sequence", missing)

        items.append(_timed(f"mex/K{e}/solver-equality", spec.label(), B, equality))
        items.append(_timed(f"mex/K{e}/partition", spec.label(), B, partition))
        items.append(
            _timed(f"mex/K{e}/counting", spec.label(), B,
                   lambda pp=pp: ch.counting_check(pp, B))
        )
    return sorted(items, key=lambda it: it.name)


def suite_blocking(ell=None, k=None, bound=None) -> list[SuiteItem]:
    """Explicit W^2/W^3 families versus the solver; W^1 equals K^0."""
    del ell
    B = bound or W_BOUND_DEFAULT
    ks = [k] if k is not None else [2, 3]
    items = []
    for kk in ks:
        if kk == 1:
            continue
        spec = wspec(kk)
        mask = _w_closed_mask(kk, B)
        table = solve(spec, B)
        items.append(
            _timed(f"blocking/W{kk}/set-equality", spec.label(), B,
                   lambda m=mask, t=table, kk=kk: _mask_equality(m, t.ppos, f"W^{kk}"))
        )
        items.append(
            _timed(f"blocking/W{kk}/stable", spec.label(), B,
                   lambda m=mask, s=spec: check_stable(m, s, B))
        )
        items.append(
            _timed(f"blocking/W{kk}/absorbing", spec.label(), B,
                   lambda m=mask, s=spec: check_absorbing(m, s, B))
        )
    if k is None or k == 1:
        B1 = min(B, W1_CROSS_BOUND_DEFAULT) if bound is None else B

        def w1_equals_k0(B1=B1):
            got = solve(wspec(1), B1).ppos
            want = solve(kspec(0), B1).ppos
            return _mask_equality(got, want, "W^1 vs K^0")

        items.append(_timed("blocking/W1-equals-K0", "W k=1", B1, w1_equals_k0))
    return sorted(items, key=lambda it: it.name)


def suite_discrepancy(ell=None, k=None, bound=None) -> list[SuiteItem]:
    """Certified discrepancy bounds and density along the a-sequence."""
    del k
    N = bound or DISCREPANCY_HORIZON_DEFAULT
    ells = [ell] if ell is not None else list(range(1, 9))
    items = []
    for e in ells:
        profile = ch.discrepancy_profile(e, N)
        items.append(
            _timed(f"discrepancy/K{e}/profile", f"K ell={e}", N,
                   lambda p=profile: ch.check_discrepancy(p))
        )

        def density(profile=profile, N=N):
            a_N = int(profile.a[N])
            ok = ch.density_certificate(a_N, N, 1, 100)
            detail = f"|a_n/n - phi| {'<=' if ok else '>'} 1/100 at n={N} (a_n={a_N})"
            return CheckResult(ok, detail, None if ok else (N, a_N))

        items.append(_timed(f"discrepancy/K{e}/density", f"K ell={e}", N, density))
    return sorted(items, key=lambda it: it.name)


def _redundancy_moves(max_delta: int) -> list[tuple[int, int]]:
    moves = []
    for i in range(1, max_delta + 1):
        moves += [(i, 0), (0, i), (i, i)]
    return moves


def suite_redundancy(ell=None, k=None, bound=None) -> list[SuiteItem]:
    """Every elementary move admits a witness position that needs it."""
    B = bound or REDUNDANCY_BOUND_DEFAULT
    specs: list[GameSpec]
    if ell is not None:
        specs = [kspec(ell)]
    elif k is not None:
        specs = [wspec(k)]
    else:
        specs = [kspec(e) for e in (1, 2, 3, 4)] + [wspec(2), wspec(3)]
    moves = _redundancy_moves(REDUNDANCY_MAX_DELTA)
    items = []
    for spec in specs:
        tag = spec.label().replace(" ", "-")

        def all_moves(spec=spec):
            for move in moves:
                if non_redundant_witness(spec, move, B) is None:
                    return CheckResult(
                        False, f"no witness for move {move} within {B}", move
                    )
            return CheckResult(True, f"witnesses for all {len(moves)} moves")

        items.append(_timed(f"redundancy/{tag}", spec.label(), B, all_moves))
    return sorted(items, key=lambda it: it.name)


def suite_morphic(ell=None, k=None, bound=None) -> list[SuiteItem]:
    """Automatic-sequence machinery: oracles, automata, partition words."""
    del k
    H = bound or MORPHIC_HORIZON_DEFAULT
    items = []
    if ell is None or ell == 2:

        def k2_oracles(H=H):
            direct = k2_adjust_prefix(H)
            rec = k2_adjust_prefix_by_recurrence(H)
            if direct == rec:
                return CheckResult(True, f"{H} values agree")
            n = next(i for i, (x, y) in enumerate(zip(direct, rec)) if x != y)
            return CheckResult(False, f"definitions disagree at n={n}", n)

        items.append(_timed("morphic/k2-adjust/definition-vs-recurrence",
                            "K ell=2", H, k2_oracles))
    adj_ells = [e for e in ADJUST_SYSTEMS if ell is None or e == ell]
    for e in adj_ells:
        morphism, coding = ADJUST_SYSTEMS[e]

        def dfao_vs_word(e=e, morphism=morphism, coding=coding, H=H):
            word = coding.map(fixed_point_prefix(morphism, 0, H))
            d = adjust_dfao(e)
            for n in range(H):
                got = eval_dfao(d, n)
                if got != word[n]:
                    return CheckResult(
                        False, f"automaton says {got}, word says {word[n]} at n={n}", n
                    )
            return CheckResult(True, f"{H} values agree")

        items.append(_timed(f"morphic/k{e}-adjust/dfao-vs-word",
                            f"K ell={e}", H, dfao_vs_word))
    part_ells = [e for e in PARTITION_SYSTEMS if ell is None or e == ell]
    for e in part_ells:
        part = PARTITION_SYSTEMS[e]

        def word_vs_pairs(e=e, part=part, H=H):
            pp = ch.mex_sequence(e, H * 2 // 3 + 8)
            return ch.morphic_coding_check(part.morphism, part.coding,
                                           part.offset, pp, H)

        items.append(_timed(f"morphic/partition-word/K{e}",
                            f"K ell={e}", H, word_vs_pairs))
    return sorted(items, key=lambda it: it.name)


SUITES = {
    "kernel": suite_kernel,
    "closed-forms": suite_closed_forms,
    "mex": suite_mex,
    "blocking": suite_blocking,
    "discrepancy": suite_discrepancy,
    "redundancy": suite_redundancy,
    "morphic": suite_morphic,
}


def run_suite(name: str, ell=None, k=None, bound=None) -> list[SuiteItem]:
    """Run one named suite, or every suite for name 'all'."""
    if name == "all":
        items = []
        for key in sorted(SUITES):
            items += SUITES[key](ell=ell, k=k, bound=bound)
        return sorted(items, key=lambda it: it.name)
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    return SUITES[name](ell=ell, k=k, bound=bound)
