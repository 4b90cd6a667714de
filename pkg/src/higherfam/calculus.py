"""Formal Chern-character calculus along a chain X |- H_1 |- ... |- H_i.

Classes on H_i are rational combinations of free symbols

    c1(L_i)^s                      pure          (k = 0)
    T^k(ch_k(X)) c1(L_i)^s         scalar-chern  (1 <= k <= i)
    T^i(ch_k(X)) c1(L_i)^s         cycle-chern   (k > i)

T^k(ch_k(X)) has codimension zero, so it behaves as a constant under further
pushforwards.  Depth 0 is X itself, where ch_k(X) is the cycle-chern symbol
with k > 0 and s = 0.  One step down the chain with intersection number a:

    T(c1(L)^s)            = a^s c1(L')^(s-1)
    T(alpha . c1(L)^s)    = a^s T(alpha) . c1(L')^s
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

from .combinatorics import bernoulli, format_rational

__all__ = [
    "BasisTerm",
    "ChainConfig",
    "FormalClass",
    "ambient_chern",
    "chern_next",
    "corollary1_c1",
    "corollary1_ch2",
    "expand_chain",
    "pushforward_term",
]

PURE = "pure"
SCALAR = "scalar-chern"
CYCLE = "cycle-chern"


@dataclass(frozen=True, order=True)
class BasisTerm:
    depth: int
    k: int
    L_power: int

    def __post_init__(self):
        if self.depth < 0 or self.k < 0 or self.L_power < 0:
            raise ValueError(f"negative field in {self!r}")
        if self.depth == 0 and (self.k == 0 or self.L_power):
            raise ValueError("depth 0 only carries the bare ch_k(X) symbols")

    @property
    def kind(self) -> str:
        if self.k == 0:
            return PURE
        return SCALAR if self.k <= self.depth else CYCLE

    @property
    def codim(self) -> int:
        if self.kind == CYCLE:
            return self.k - self.depth + self.L_power
        return self.L_power

    @classmethod
    def alpha(cls, i: int, j: int, k: int) -> "BasisTerm":
        """The symbol alpha_(i,j,k) in ch_j(H_i)."""
        if not 0 <= k <= i + j:
            raise ValueError(f"alpha_({i},{j},{k}) undefined")
        return cls(i, k, j if k <= i else i + j - k)

    def render(self) -> str:
        parts = []
        if self.k:
            t_order = min(self.k, self.depth)
            ch = "c1(X)" if self.k == 1 else f"ch_{self.k}(X)"
            if t_order == 0:
                parts.append(ch)
            elif t_order == 1:
                parts.append(f"T({ch})")
            else:
                parts.append(f"T^{t_order}({ch})")
        if self.L_power:
            lb = f"c1(L_{self.depth})"
            parts.append(lb if self.L_power == 1 else f"{lb}^{self.L_power}")
        return " ".join(parts) or "1"

    def render_tex(self) -> str:
        parts = []
        if self.k:
            t_order = min(self.k, self.depth)
            ch = "c_1(X)" if self.k == 1 else f"{{\\rm ch}}_{{{self.k}}}(X)"
            if t_order == 0:
                parts.append(ch)
            elif t_order == 1:
                parts.append(f"T({ch})")
            else:
                parts.append(f"T^{{{t_order}}}({ch})")
        if self.L_power:
            lb = f"c_1(L_{{{self.depth}}})"
            parts.append(lb if self.L_power == 1 else f"{lb}^{{{self.L_power}}}")
        return "".join(parts) or "1"


def pushforward_term(t: BasisTerm, a: int, m: int = 0) -> tuple[BasisTerm, Fraction]:
    """Apply T (intersection number ``a``) to ``t``, then multiply by c1(L)^m.

    Returns the resulting symbol one level deeper and its multiplier a^s,
    where s is the L-power of ``t``.
    """
    if a < 1:
        raise ValueError("intersection number a must be positive")
    if m < 0:
        raise ValueError("extra L-power must be non-negative")
    s = t.L_power
    if t.kind == CYCLE:
        new = BasisTerm(t.depth + 1, t.k, s + m)
    else:
        if s == 0:
            raise ValueError(f"T is undefined on the codimension-0 term {t.render()}")
        new = BasisTerm(t.depth + 1, t.k, s - 1 + m)
    return new, Fraction(a**s)


@dataclass(frozen=True)
class FormalClass:
    """Immutable rational combination of BasisTerms of one depth and codimension."""

    depth: int
    codim: int
    terms: Mapping[BasisTerm, Fraction] = field(default_factory=dict)

    def __post_init__(self):
        clean = {}
        for t, c in self.terms.items():
            if t.depth != self.depth:
                raise ValueError(f"{t!r} is not at depth {self.depth}")
            if t.codim != self.codim:
                raise ValueError(f"{t!r} is not of codimension {self.codim}")
            c = Fraction(c)
            if c:
                clean[t] = c
        object.__setattr__(self, "terms", MappingProxyType(dict(sorted(clean.items()))))

    @classmethod
    def from_pairs(
        cls, depth: int, codim: int, pairs: Iterable[tuple[BasisTerm, Fraction]]
    ) -> "FormalClass":
        acc: dict[BasisTerm, Fraction] = {}
        for t, c in pairs:
            acc[t] = acc.get(t, Fraction(0)) + c
        return cls(depth, codim, acc)

    def __eq__(self, other):
        if not isinstance(other, FormalClass):
            return NotImplemented
        return (self.depth, self.codim, dict(self.terms)) == (
            other.depth,
            other.codim,
            dict(other.terms),
        )

    def __hash__(self):
        return hash((self.depth, self.codim, tuple(self.terms.items())))

    def _check_compatible(self, other: "FormalClass"):
        if (self.depth, self.codim) != (other.depth, other.codim):
            raise ValueError("classes live in different groups")

    def __add__(self, other: "FormalClass") -> "FormalClass":
        self._check_compatible(other)
        return FormalClass.from_pairs(
            self.depth, self.codim, [*self.terms.items(), *other.terms.items()]
        )

    def __neg__(self) -> "FormalClass":
        return self.scaled(-1)

    def __sub__(self, other: "FormalClass") -> "FormalClass":
        return self + (-other)

    def scaled(self, c) -> "FormalClass":
        c = Fraction(c)
        return FormalClass(self.depth, self.codim, {t: c * v for t, v in self.terms.items()})

    __rmul__ = scaled

    def coefficient(self, k: int) -> Fraction:
        """Coefficient on the unique symbol with Chern index k (0 if absent)."""
        for t, c in self.terms.items():
            if t.k == k:
                return c
        return Fraction(0)

    def coefficients(self) -> list[Fraction]:
        """Coefficients for k = 0..depth+codim, i.e. on alpha_(i,j,0..i+j)."""
        by_k = {t.k: c for t, c in self.terms.items()}
        return [by_k.get(k, Fraction(0)) for k in range(self.depth + self.codim + 1)]

    def rows(self) -> list[dict]:
        return [
            {"k": t.k, "kind": t.kind, "L_power": t.L_power, "coefficient": format_rational(c)}
            for t, c in self.terms.items()
        ]

    def render(self) -> str:
        out = []
        for n, (t, c) in enumerate(self.terms.items()):
            mag = format_rational(abs(c))
            if n == 0:
                out.append(f"{'-' if c < 0 else ''}{mag} {t.render()}")
            else:
                out.append(f"{'-' if c < 0 else '+'} {mag} {t.render()}")
        return " ".join(out) if out else "0"

    def render_tex(self) -> str:
        out = []
        for n, (t, c) in enumerate(self.terms.items()):
            sign = "-" if c < 0 else ("+" if n else "")
            c = abs(c)
            mag = str(c.numerator) if c.denominator == 1 else f"\\frac{{{c.numerator}}}{{{c.denominator}}}"
            if mag == "1" and t.render() != "1":
                mag = ""
            out.append(f"{sign}{mag}{t.render_tex()}")
        return "".join(out) if out else "0"


def ambient_chern(n: int) -> list[FormalClass]:
    """[ch_1(X), ..., ch_n(X)] as bare depth-0 symbols."""
    return [FormalClass(0, k, {BasisTerm(0, k, 0): Fraction(1)}) for k in range(1, n + 1)]


def chern_next(j: int, prev: Sequence[FormalClass], a: int = 1) -> FormalClass:
    """ch_j of the next family from ch_1..ch_{j+1} of the current one.

    ch_j(H) = sum_{m=0}^{j} (-1)^m B_m/m! T(ch_{j+1-m}) c1(L)^m - c1(L)^j / j!

    ``prev[d-1]`` must be ch_d; entries past ch_{j+1} are ignored.
    """
    if j < 1:
        raise ValueError("j must be positive")
    if len(prev) < j + 1:
        raise ValueError(f"need ch_1..ch_{j + 1} of the previous family, got {len(prev)}")
    depth = prev[0].depth
    for d, cls in enumerate(prev[: j + 1], start=1):
        if cls.codim != d or cls.depth != depth:
            raise ValueError(f"prev[{d - 1}] must be ch_{d} at depth {depth}")
    pairs = []
    for m in range(j + 1):
        w = (-1) ** m * bernoulli(m) / factorial(m)
        if not w:
            continue
        # ch_0 never enters: j + 1 - m >= 1
        for t, c in prev[j - m].terms.items():
            new, mult = pushforward_term(t, a, m)
            pairs.append((new, w * mult * c))
    pairs.append((BasisTerm(depth + 1, 0, j), Fraction(-1, factorial(j))))
    return FormalClass.from_pairs(depth + 1, j, pairs)


@dataclass(frozen=True)
class ChainConfig:
    """A chain of length ``length`` with intersection numbers a_2..a_length."""

    length: int
    a: tuple[int, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "a", tuple(self.a))
        if self.length < 1:
            raise ValueError("chain length must be positive")
        if len(self.a) != self.length - 1:
            raise ValueError(f"a chain of length {self.length} needs {self.length - 1} a-values")
        if any(x < 1 for x in self.a):
            raise ValueError("intersection numbers must be positive")

    @classmethod
    def from_a(cls, a: Iterable[int]) -> "ChainConfig":
        a = tuple(a)
        return cls(len(a) + 1, a)

    @classmethod
    def all_ones(cls, length: int) -> "ChainConfig":
        return cls(length, (1,) * (length - 1))


def expand_chain(cfg: ChainConfig, j: int) -> FormalClass:
    """ch_j(H_i) for the chain ``cfg`` in terms of the BasisTerm symbols."""
    i = cfg.length
    classes = ambient_chern(j + i)
    for d in range(1, i + 1):
        # a is irrelevant at d = 1: depth-0 symbols carry no L-power
        a = cfg.a[d - 2] if d >= 2 else 1
        classes = [chern_next(jj, classes, a) for jj in range(1, j + i - d + 1)]
    return classes[j - 1]


def corollary1_c1(i: int, d1: int) -> Fraction:
    """Coefficient of c1(L_i) in c1(H_i) once T(c1(X)) = d1 + 2 is substituted."""
    if i < 1:
        raise ValueError("i must be positive")
    return -i + Fraction(d1 + 2, i + 1)


def corollary1_ch2(i: int, d1: int) -> Fraction:
    """Coefficient of c1(L_i)^2 in ch_2(H_i) once T(c1(X)) = d1 + 2."""
    if i < 1:
        raise ValueError("i must be positive")
    return Fraction(-i, 2) + Fraction(i * (d1 + 2), 2 * (i + 1) * (i + 2))
