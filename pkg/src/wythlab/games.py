"""Rule-sets and exact bounded solvers for two Wythoff variants.

Positions are pairs of naturals; a move removes tokens from one pile or the
same number from both.  Variant K declares every position with coordinate
sum at most ell terminal: terminal positions are winning to enter and allow
no further moves.  Variant W lets the player who just moved forbid up to
k-1 of the opponent's options for one turn, which turns the usual "some
option is P" losing test into "at least k options are P".

Every move strictly decreases the coordinate sum, so solving all positions
in increasing-sum order is exact on the full box with no truncation at the
boundary.  The solver keeps per-row, per-column and per-diagonal counts of
already-classified P-positions; each anti-diagonal is then classified in a
few array operations.  The same counting view of the final table drives the
stability and absorption checks and the redundant-move witness search.
"""
from __future__ import annotations

import hashlib
import struct
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

__all__ = [
    "GameSpec",
    "kspec",
    "wspec",
    "PNTable",
    "PposSequence",
    "CheckResult",
    "ResourceLimitError",
    "CacheError",
    "options",
    "solve",
    "solve_pairs",
    "ppos_list",
    "option_member_counts",
    "check_stable",
    "check_absorbing",
    "non_redundant_witness",
    "write_table_cache",
    "read_table_cache",
]

MAX_SOLVE_BOUND = 32768


class ResourceLimitError(RuntimeError):
    """Raised instead of attempting a solve that would exhaust memory."""


class CacheError(ValueError):
    """Raised when a table cache file is malformed or corrupt."""


@dataclass(frozen=True)
class GameSpec:
    """Rule-set identifier: variant 'K' with ell, or variant 'W' with k."""

    variant: str
    ell: int | None = None
    k: int | None = None

    def __post_init__(self) -> None:
        if self.variant == "K":
            if self.ell is None or self.ell < 0 or self.k is not None:
                raise ValueError(f"K variant needs ell >= 0 and no k: {self}")
        elif self.variant == "W":
            if self.k is None or self.k < 1 or self.ell is not None:
                raise ValueError(f"W variant needs k >= 1 and no ell: {self}")
        else:
            raise ValueError(f"unknown variant {self.variant!r}")

    @property
    def terminal_sum(self) -> int:
        """Largest coordinate sum of a terminal position (-1 when none)."""
        return self.ell if self.variant == "K" else -1

    def label(self) -> str:
        if self.variant == "K":
            return f"K ell={self.ell}"
        return f"W k={self.k}"


def kspec(ell: int) -> GameSpec:
    return GameSpec("K", ell=ell)


def wspec(k: int) -> GameSpec:
    return GameSpec("W", k=k)


@dataclass(frozen=True, eq=False)
class PNTable:
    """P/N classification of the full box [0,B]^2; ppos[x,y] is True for P."""

    spec: GameSpec
    bound: int
    ppos: np.ndarray


@dataclass(frozen=True)
class PposSequence:
    """Sorted non-terminal P-pairs (a_n, b_n), a_n <= b_n, indexed from 0."""

    ell: int | None
    pairs: tuple[tuple[int, int], ...]

    def __len__(self) -> int:
        return len(self.pairs)

    def __getitem__(self, n: int) -> tuple[int, int]:
        return self.pairs[n]

    def arrays(self) -> tuple[np.ndarray, np.ndarray]:
        """The a- and b-sequences as int64 arrays."""
        if not self.pairs:
            return np.zeros(0, dtype=np.int64), np.zeros(0, dtype=np.int64)
        arr = np.asarray(self.pairs, dtype=np.int64)
        return arr[:, 0], arr[:, 1]


@dataclass(frozen=True)
class CheckResult:
    """Verdict of a bounded check; counterexample is None when ok."""

    ok: bool
    detail: str = ""
    counterexample: object = None

    def __bool__(self) -> bool:
        return self.ok


def options(p: tuple[int, int]) -> list[tuple[int, int]]:
    """All Wythoff options of p: shrink one pile, or both by the same amount."""
    x, y = p
    out = [(c, y) for c in range(x)]
    out += [(x, c) for c in range(y)]
    out += [(x - t, y - t) for t in range(1, min(x, y) + 1)]
    return out


def _scan(spec: GameSpec, bound: int, record_table: bool):
    """Increasing-sum sweep; returns (table or None, sorted pair list).

    The pair list follows the ppos_list convention: x <= y, terminals of K
    excluded.  hP/vP/dP hold counts of P-positions already seen in each row,
    column and difference-diagonal; all positions of one anti-diagonal have
    pairwise distinct rows, columns and differences, so each diagonal is a
    handful of strided slice operations.
    """
    if bound < 0:
        raise ValueError(f"negative bound {bound}")
    if bound > MAX_SOLVE_BOUND:
        raise ResourceLimitError(
            f"bound {bound} exceeds the solver cap {MAX_SOLVE_BOUND}; "
            "no partial table is produced"
        )
    B = bound
    ell = spec.terminal_sum
    blocking = spec.k - 1 if spec.variant == "W" else 0
    table = np.zeros((B + 1, B + 1), dtype=bool) if record_table else None
    hP = np.zeros(B + 1, dtype=np.int32)
    vP = np.zeros(B + 1, dtype=np.int32)
    dP = np.zeros(2 * B + 1, dtype=np.int32)
    xs_all = np.arange(B + 1)
    chunks: list[np.ndarray] = []
    for s in range(2 * B + 1):
        x0 = max(0, s - B)
        x1 = min(s, B)
        if s <= ell:
            is_p = np.ones(x1 - x0 + 1, dtype=bool)
        else:
            d_hi = s - 2 * x1 + B - 1
            cnt = (
                hP[x0 : x1 + 1]
                + vP[s - x1 : s - x0 + 1][::-1]
                + dP[s - 2 * x0 + B : (d_hi if d_hi >= 0 else None) : -2]
            )
            is_p = cnt <= blocking if spec.variant == "W" else cnt == 0
        if record_table:
            xs = xs_all[x0 : x1 + 1]
            table[xs, s - xs] = is_p
        if s > ell:
            half = np.flatnonzero(is_p) + x0
            half = half[2 * half <= s]
            if half.size:
                chunks.append(np.stack([half, s - half], axis=1))
        upd = is_p.view(np.int8)
        hP[x0 : x1 + 1] += upd
        vP[s - x1 : s - x0 + 1] += upd[::-1]
        d_hi = s - 2 * x1 + B - 1
        dP[s - 2 * x0 + B : (d_hi if d_hi >= 0 else None) : -2] += upd
    if chunks:
        pts = np.concatenate(chunks)
        order = np.lexsort((pts[:, 1], pts[:, 0]))
        pairs = [tuple(int(v) for v in row) for row in pts[order]]
    else:
        pairs = []
    if record_table:
        table.flags.writeable = False
    return table, pairs


@lru_cache(maxsize=64)
def _solve_cached(spec: GameSpec, bound: int) -> PNTable:
    table, _ = _scan(spec, bound, record_table=True)
    return PNTable(spec=spec, bound=bound, ppos=table)


def solve(spec: GameSpec, bound: int) -> PNTable:
    """Exact classification of the full box [0,bound]^2.

    Results are memoised; the returned table is immutable and safe to share.
    """
    return _solve_cached(spec, bound)


def solve_pairs(spec: GameSpec, bound: int) -> list[tuple[int, int]]:
    """Sorted non-terminal P-pairs of the box without materialising a table.

    Suited to bounds in the tens of thousands where the full byte mask would
    be the only memory consumer.
    """
    _, pairs = _scan(spec, bound, record_table=False)
    return pairs


def ppos_list(table: PNTable, spec: GameSpec | None = None) -> PposSequence:
    """Non-terminal P-pairs (a_n, b_n) of a solved table, sorted, a_n <= b_n.

    For K-boards the in-box pairs are a true prefix of the infinite pair
    sequence, because the b-sequence is increasing; the bound only truncates.
    """
    spec = table.spec if spec is None else spec
    if spec != table.spec:
        raise ValueError(f"table solved for {table.spec}, not {spec}")
    P = table.ppos
    xs, ys = np.nonzero(P)
    keep = (xs <= ys) & (xs + ys > spec.terminal_sum)
    xs, ys = xs[keep], ys[keep]
    order = np.lexsort((ys, xs))
    pairs = tuple((int(x), int(y)) for x, y in zip(xs[order], ys[order]))
    return PposSequence(ell=spec.ell, pairs=pairs)


def option_member_counts(mask: np.ndarray) -> np.ndarray:
    """cnt[x,y] = number of options of (x,y) that lie in the mask.

    Exclusive prefix sums along rows, columns and difference-diagonals; the
    diagonal direction uses a sheared copy indexed by (x, y-x).
    """
    m = mask.astype(np.int32)
    n = mask.shape[0]
    row = np.cumsum(m, axis=1) - m
    col = np.cumsum(m, axis=0) - m
    xs, ys = np.indices(mask.shape)
    sheared = np.zeros((n, 2 * n - 1), dtype=np.int32)
    sheared[xs, ys - xs + n - 1] = m
    sheared = np.cumsum(sheared, axis=0) - sheared
    return row + col + sheared[xs, ys - xs + n - 1]


def _candidate_mask(candidate, bound: int) -> np.ndarray:
    """Normalise a membership predicate to a boolean box mask."""
    if isinstance(candidate, PNTable):
        if candidate.bound < bound:
            raise ValueError(
                f"candidate table bound {candidate.bound} below check bound {bound}"
            )
        return candidate.ppos[: bound + 1, : bound + 1]
    if isinstance(candidate, np.ndarray):
        if candidate.shape[0] <= bound or candidate.shape[1] <= bound:
            raise ValueError(f"candidate array too small for bound {bound}")
        return candidate[: bound + 1, : bound + 1].astype(bool)
    if callable(candidate):
        mask = np.zeros((bound + 1, bound + 1), dtype=bool)
        for x in range(bound + 1):
            for y in range(bound + 1):
                mask[x, y] = bool(candidate(x, y))
        return mask
    mask = np.zeros((bound + 1, bound + 1), dtype=bool)
    for x, y in candidate:
        if 0 <= x <= bound and 0 <= y <= bound:
            mask[x, y] = True
    return mask


def _first_true(mask: np.ndarray) -> tuple[int, int] | None:
    """Row-major first True coordinate, or None."""
    flat = np.flatnonzero(mask)
    if flat.size == 0:
        return None
    n = mask.shape[1]
    return int(flat[0]) // n, int(flat[0]) % n


def _member_options(mask: np.ndarray, p: tuple[int, int], limit: int) -> list:
    out = []
    for q in options(p):
        if mask[q]:
            out.append(q)
            if len(out) == limit:
                break
    return out


def check_stable(candidate, spec: GameSpec, bound: int) -> CheckResult:
    """Bounded stability check of a candidate P-set.

    K variant: no move may connect two members when the source is outside
    the terminal region (terminal positions allow no moves).  W variant: a
    member may have at most k-1 member options.  The counterexample is
    (source, member option) for K and (source, tuple of k member options)
    for W.
    """
    mask = _candidate_mask(candidate, bound)
    cnt = option_member_counts(mask)
    if spec.variant == "K":
        sums = np.add.outer(np.arange(bound + 1), np.arange(bound + 1))
        bad = mask & (sums > spec.terminal_sum) & (cnt >= 1)
        src = _first_true(bad)
        if src is None:
            return CheckResult(True, f"stable on [0,{bound}]^2")
        target = _member_options(mask, src, 1)[0]
        return CheckResult(
            False,
            f"member {src} moves to member {target}",
            (src, target),
        )
    bad = mask & (cnt >= spec.k)
    src = _first_true(bad)
    if src is None:
        return CheckResult(True, f"stable on [0,{bound}]^2")
    targets = tuple(_member_options(mask, src, spec.k))
    return CheckResult(
        False,
        f"member {src} has {int(cnt[src])} member options (max {spec.k - 1})",
        (src, targets),
    )


def check_absorbing(
    candidate, spec: GameSpec, bound: int, safety_margin: int = 0
) -> CheckResult:
    """Bounded absorption check of a candidate P-set.

    K variant: every non-member must have a member option; a non-member
    inside the terminal region has no moves at all and is reported directly.
    W variant: every non-member needs at least k member options.  Options
    never leave the box, so safety_margin 0 is always sufficient; the
    parameter is accepted for interface symmetry.
    """
    del safety_margin  # options only decrease coordinates
    mask = _candidate_mask(candidate, bound)
    cnt = option_member_counts(mask)
    if spec.variant == "K":
        sums = np.add.outer(np.arange(bound + 1), np.arange(bound + 1))
        bad = ~mask & ((sums <= spec.terminal_sum) | (cnt < 1))
        need = 1
    else:
        bad = ~mask & (cnt < spec.k)
        need = spec.k
    pos = _first_true(bad)
    if pos is None:
        return CheckResult(True, f"absorbing on [0,{bound}]^2")
    return CheckResult(
        False,
        f"non-member {pos} has {int(cnt[pos])} member options (needs {need})",
        pos,
    )


def _validate_move(move: tuple[int, int]) -> None:
    dx, dy = move
    ok = (dx > 0 and dy == 0) or (dx == 0 and dy > 0) or (dx == dy and dx > 0)
    if not ok:
        raise ValueError(f"move {move} is not of Wythoff shape")


def non_redundant_witness(
    spec: GameSpec, move: tuple[int, int], bound: int
) -> tuple[int, int] | None:
    """Search for an N-position that needs the given move.

    K variant: a witness has exactly one P-option, reached by this move.
    W variant: a witness has exactly k P-options, one reached by this move
    (blocking the other k-1 would leave only it).  None means no witness in
    the box, which is inconclusive, never a redundancy proof.
    """
    _validate_move(move)
    dx, dy = move
    table = solve(spec, bound)
    P = table.ppos
    cnt = _p_option_counts(spec, bound)
    want = 1 if spec.variant == "K" else spec.k
    witness = (~P) & (cnt == want)
    reached = np.zeros_like(P)
    reached[dx:, dy:] = P[: bound + 1 - dx, : bound + 1 - dy]
    return _first_true(witness & reached)


@lru_cache(maxsize=64)
def _p_option_counts(spec: GameSpec, bound: int) -> np.ndarray:
    cnt = option_member_counts(solve(spec, bound).ppos)
    cnt.flags.writeable = False
    return cnt


# ---------------------------------------------------------------------------
# Table cache files: fixed header, bit-packed rows, sha256 trailer.
# ---------------------------------------------------------------------------

_MAGIC = b"WYPN"
_VERSION = 1


def write_table_cache(table: PNTable, path) -> None:
    """Write a solved table; layout is header, packed bits, checksum."""
    spec = table.spec
    param = spec.ell if spec.variant == "K" else spec.k
    header = _MAGIC + struct.pack(
        "<BcII", _VERSION, spec.variant.encode(), param, table.bound
    )
    payload = np.packbits(table.ppos.reshape(-1)).tobytes()
    digest = hashlib.sha256(header + payload).digest()
    with open(path, "wb") as fh:
        fh.write(header + payload + digest)


def read_table_cache(path) -> PNTable:
    """Read a table written by write_table_cache, verifying the checksum."""
    with open(path, "rb") as fh:
        blob = fh.read()
    head_len = len(_MAGIC) + struct.calcsize("<BcII")
    if len(blob) < head_len + 32 or blob[: len(_MAGIC)] != _MAGIC:
        raise CacheError(f"{path}: not a table cache")
    version, variant, param, bound = struct.unpack(
        "<BcII", blob[len(_MAGIC) : head_len]
    )
    if version != _VERSION:
        raise CacheError(f"{path}: unsupported cache version {version}")
    header, payload, digest = blob[:head_len], blob[head_len:-32], blob[-32:]
    if hashlib.sha256(header + payload).digest() != digest:
        raise CacheError(f"{path}: checksum mismatch")
    variant = variant.decode()
    spec = kspec(param) if variant == "K" else wspec(param)
    n = bound + 1
    expect = (n * n + 7) // 8
    if len(payload) != expect:
        raise CacheError(f"{path}: payload length {len(payload)} != {expect}")
    bits = np.unpackbits(np.frombuffer(payload, dtype=np.uint8), count=n * n)
    ppos = bits.astype(bool).reshape(n, n)
    ppos.flags.writeable = False
    return PNTable(spec=spec, bound=bound, ppos=ppos)
