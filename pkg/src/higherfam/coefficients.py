"""The coefficients b_(i,j,k) of ch_j(H_i) and their positivity checks.

For i >= 2,

    b_(i,j,k) = sum_{m=0}^{min(j, i+j-k)} (-1)^m B_m / m! * b_(i-1, j+1-m, k)
                - [k == 0] / j!

and the recursion never mixes different k.  Each k is therefore filled as an
independent column, bottom-up in the depth i.  A column needed up to depth
``i_top`` for degree ``j_top`` holds, at depth d, every degree up to
``j_top + i_top - d``.
"""

from __future__ import annotations

import threading
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from typing import Iterable, Iterator, NamedTuple

from .combinatorics import bernoulli, c_coeff

try:  # C-level rationals for the bulk fills; values leave as Fraction.
    from gmpy2 import mpq as _Q
except ImportError:  # pragma: no cover
    _Q = Fraction

__all__ = [
    "CoeffIndex",
    "CoeffTable",
    "PositivityReport",
    "Violation",
    "b_closed_form_k0",
    "b_closed_form_k1",
    "b_coeff",
    "b_row",
    "default_table",
    "verify_positivity",
]


class CoeffIndex(NamedTuple):
    i: int
    j: int
    k: int

    def check(self) -> "CoeffIndex":
        i, j, k = self
        if i < 1 or j < 1:
            raise ValueError(f"b_({i},{j},{k}): need i >= 1 and j >= 1")
        if not 0 <= k <= i + j:
            raise ValueError(f"b_({i},{j},{k}): k must lie in [0, {i + j}]")
        return self


def _to_fraction(x) -> Fraction:
    return Fraction(int(x.numerator), int(x.denominator))


_weight_cache: list = []
_weight_lock = threading.Lock()


def _weights(n: int) -> list:
    """(-1)^m B_m / m! for m = 0..n (a shared, append-only list)."""
    cache = _weight_cache
    if len(cache) <= n:
        with _weight_lock:
            while len(cache) <= n:
                m = len(cache)
                cache.append(_Q((-1) ** m * bernoulli(m) / factorial(m)))
    return cache


class _Column:
    """All computed b_(d, j, k) for one fixed k: rows[d][j].

    Row d always holds a contiguous run of degrees max(1, k - d)..top[d].
    """

    __slots__ = ("k", "rows", "top")

    def __init__(self, k: int):
        self.k = k
        self.rows: list[dict[int, object]] = [{}]  # depth 0 unused
        self.top: list[int] = [0]

    def extend(self, i_top: int, j_top: int) -> list[tuple[int, int]]:
        """Fill up to depth i_top for degree j_top; returns the new (d, j)."""
        k = self.k
        w = _weights(i_top + j_top + 1)
        nonzero = [m for m, wm in enumerate(w) if wm]
        added: list[tuple[int, int]] = []
        while len(self.rows) <= i_top:
            self.rows.append({})
            self.top.append(0)
        for d in range(1, i_top + 1):
            lo = max(1, k - d, self.top[d] + 1)
            hi = j_top + i_top - d
            if hi < lo:
                continue
            prev, cur = self.rows[d - 1], self.rows[d]
            for j in range(lo, hi + 1):
                if d == 1:
                    # b_(1,j,k)
                    cur[j] = _Q(-1, factorial(j)) if k == 0 else w[j + 1 - k]
                else:
                    cur[j] = _step(prev, w, nonzero, d, j, k)
                added.append((d, j))
            self.top[d] = hi
        return added


def _step(prev: dict, w: list, nonzero: list[int], d: int, j: int, k: int):
    top = min(j, d + j - k)
    # inner index (d-1, j+1-m, k) must stay in its domain; tightest at m = top
    assert k <= (d - 1) + (j + 1 - top), (d, j, k)
    s = _Q(0)
    for m in nonzero:
        if m > top:
            break
        s += w[m] * prev[j + 1 - m]
    if k == 0:
        s -= _Q(1, factorial(j))
    return s


def _iter_column(k: int, i_top: int, j_top: int) -> Iterator[tuple[int, dict]]:
    """Yield (d, {j: b_(d,j,k)}) for d = 1..i_top keeping only two rows alive."""
    w = _weights(i_top + j_top + 1)
    nonzero = [m for m, wm in enumerate(w) if wm]
    prev = {}
    for j in range(max(1, k - 1), j_top + i_top):
        prev[j] = _Q(-1, factorial(j)) if k == 0 else w[j + 1 - k]
    yield 1, prev
    for d in range(2, i_top + 1):
        cur = {
            j: _step(prev, w, nonzero, d, j, k)
            for j in range(max(1, k - d), j_top + i_top - d + 1)
        }
        yield d, cur
        prev = cur


class CoeffTable:
    """Memo of b_(i,j,k); safe to share between threads."""

    def __init__(self) -> None:
        self._columns: dict[int, _Column] = {}
        self._lock = threading.Lock()
        self.high_water: dict[int, int] = {}

    def __len__(self) -> int:
        return sum(len(r) for c in self._columns.values() for r in c.rows)

    def __contains__(self, idx) -> bool:
        i, j, k = idx
        col = self._columns.get(k)
        return col is not None and i < len(col.rows) and j in col.rows[i]

    def _raw(self, i: int, j: int, k: int):
        col = self._columns.get(k)
        if col is not None and i < len(col.rows):
            val = col.rows[i].get(j)
            if val is not None:
                return val
        with self._lock:
            col = self._columns.setdefault(k, _Column(k))
            for d, jj in col.extend(i, j):
                if self.high_water.get(jj, 0) < d:
                    self.high_water[jj] = d
            return col.rows[i][j]

    def get(self, i: int, j: int, k: int) -> Fraction:
        CoeffIndex(i, j, k).check()
        return _to_fraction(self._raw(i, j, k))

    def row(self, i: int, j: int) -> list[Fraction]:
        CoeffIndex(i, j, 0).check()
        return [_to_fraction(self._raw(i, j, k)) for k in range(i + j + 1)]


default_table = CoeffTable()


def b_coeff(i: int, j: int, k: int, table: CoeffTable | None = None) -> Fraction:
    """b_(i,j,k); raises ValueError outside 0 <= k <= i+j."""
    return (table or default_table).get(i, j, k)


def b_row(i: int, j: int, table: CoeffTable | None = None) -> list[Fraction]:
    """[b_(i,j,0), ..., b_(i,j,i+j)]."""
    return (table or default_table).row(i, j)


def b_closed_form_k0(i: int, j: int) -> Fraction:
    if i < 1 or j < 1:
        raise ValueError("need i >= 1 and j >= 1")
    return Fraction(-i, factorial(j))


def b_closed_form_k1(i: int, j: int) -> Fraction:
    """((-1)^j / j!) * sum_{p=1}^{j} c_(j,p) / (i+p)."""
    if i < 1 or j < 1:
        raise ValueError("need i >= 1 and j >= 1")
    s = sum((c_coeff(j, p) / (i + p) for p in range(1, j + 1)), Fraction(0))
    return (-1) ** j * s / factorial(j)


class Violation(NamedTuple):
    index: CoeffIndex
    value: Fraction


@dataclass
class PositivityReport:
    i_range: tuple[int, int]
    j_set: tuple[int, ...]
    strict: bool
    violations: list[Violation]
    elapsed: float
    # Regularities seen on the scanned range; recorded, never enforced.
    observations: dict[str, bool] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return not self.violations

    def payload(self) -> dict:
        """JSON-ready result, deterministic for fixed parameters."""
        return {
            "violations": [
                {"i": v.index.i, "j": v.index.j, "k": v.index.k, "value": str(v.value)}
                for v in self.violations
            ],
            "verified": {
                "i_lo": self.i_range[0],
                "i_hi": self.i_range[1],
                "j_list": list(self.j_set),
                "strict": self.strict,
            },
            "observations": dict(sorted(self.observations.items())),
        }


_TOP_IS_ONE = "b(i,j,i+j) = 1"
_SUBTOP_IS_HALF_I = "b(i,j,i+j-1) = i/2"


def _scan_columns(
    ks: Iterable[int], i_lo: int, i_hi: int, j_set: tuple[int, ...], strict: bool
) -> tuple[list[Violation], dict[str, bool]]:
    j_top = max(j_set)
    found: list[Violation] = []
    obs = {_TOP_IS_ONE: True, _SUBTOP_IS_HALF_I: True}
    for k in ks:
        for d, row in _iter_column(k, i_hi, j_top):
            if d < i_lo:
                continue
            for j in j_set:
                if k > d + j:
                    continue
                val = row[j]
                if val < 0 or (strict and val == 0):
                    found.append(Violation(CoeffIndex(d, j, k), _to_fraction(val)))
                if k == d + j and val != 1:
                    obs[_TOP_IS_ONE] = False
                elif k == d + j - 1 and val != _Q(d, 2):
                    obs[_SUBTOP_IS_HALF_I] = False
    return found, obs


def _scan_shard(args):
    return _scan_columns(*args)


def verify_positivity(
    i_lo: int,
    i_hi: int,
    j_set: Iterable[int],
    strict: bool = True,
    workers: int = 1,
) -> PositivityReport:
    """Check the sign of b_(i,j,k) for i_lo <= i <= i_hi, j in j_set, 1 <= k <= i+j.

    Failures (<= 0 when strict, < 0 otherwise) are returned as data.  With
    ``workers > 1`` the k-columns are split across processes; the report is
    the same for any worker count.
    """
    js = tuple(sorted(set(j_set)))
    if not 1 <= i_lo <= i_hi:
        raise ValueError("need 1 <= i_lo <= i_hi")
    if not js or js[0] < 1:
        raise ValueError("j_set must be a nonempty set of positive integers")
    start = time.perf_counter()
    ks = list(range(1, i_hi + js[-1] + 1))
    workers = max(1, min(workers, len(ks)))
    if workers == 1:
        violations, obs = _scan_columns(ks, i_lo, i_hi, js, strict)
    else:
        # round-robin: column cost falls off with k
        shards = [(ks[w::workers], i_lo, i_hi, js, strict) for w in range(workers)]
        violations, obs = [], {}
        with ProcessPoolExecutor(workers) as pool:
            for part, part_obs in pool.map(_scan_shard, shards):
                violations.extend(part)
                for key, val in part_obs.items():
                    obs[key] = obs.get(key, True) and val
    violations.sort(key=lambda v: v.index)
    return PositivityReport(
        i_range=(i_lo, i_hi),
        j_set=js,
        strict=strict,
        violations=violations,
        elapsed=time.perf_counter() - start,
        observations=obs,
    )
