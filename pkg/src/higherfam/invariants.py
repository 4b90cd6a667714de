"""Numeric invariants of minimal families and the model Fano manifolds.

Model families are written in a compact grammar:

    P:n       projective space P^n              (n >= 1)
    Q:n       smooth quadric Q^n                (n >= 3)
    Bl:n,m    blow-up of P^n along a linear P^m (0 <= m <= n-1)
    QxP:m     product Q^(m+1) x P^m              (m >= 1)
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple

__all__ = [
    "DimensionCheck",
    "HypothesisCheck",
    "InvariantPair",
    "ModelFamily",
    "PolarizedFamily",
    "chain_dim_lower_bound",
    "example_invariants",
    "example_polarized_family",
    "minimal_family_dim",
    "second_family_dim_bound",
    "theorem1_hypothesis",
]

PROJECTIVE = "projective-space"
QUADRIC = "quadric"
BLOWUP = "blowup-linear-subspace"
PRODUCT = "quadric-times-projective"

_SPEC_RE = re.compile(r"^(P|Q|Bl|QxP):(\d+)(?:,(\d+))?$")


@dataclass(frozen=True)
class ModelFamily:
    kind: str
    n: int = 0
    m: int = 0

    def __post_init__(self):
        if self.kind == PROJECTIVE:
            ok = self.n >= 1
        elif self.kind == QUADRIC:
            ok = self.n >= 3
        elif self.kind == BLOWUP:
            ok = 0 <= self.m <= self.n - 1
        elif self.kind == PRODUCT:
            ok = self.m >= 1
        else:
            raise ValueError(f"unknown model family {self.kind!r}")
        if not ok:
            raise ValueError(f"parameters out of range for {self.kind}: n={self.n}, m={self.m}")

    @classmethod
    def projective(cls, n: int) -> "ModelFamily":
        return cls(PROJECTIVE, n=n)

    @classmethod
    def quadric(cls, n: int) -> "ModelFamily":
        return cls(QUADRIC, n=n)

    @classmethod
    def blowup(cls, n: int, m: int) -> "ModelFamily":
        return cls(BLOWUP, n=n, m=m)

    @classmethod
    def product(cls, m: int) -> "ModelFamily":
        return cls(PRODUCT, m=m)

    @classmethod
    def parse(cls, text: str) -> "ModelFamily":
        match = _SPEC_RE.match(text.strip())
        if not match:
            raise ValueError(f"cannot parse model spec {text!r}; expected P:n, Q:n, Bl:n,m or QxP:m")
        tag, first, second = match.groups()
        if (tag == "Bl") != (second is not None):
            raise ValueError(f"wrong number of parameters in {text!r}")
        first = int(first)
        if tag == "P":
            return cls.projective(first)
        if tag == "Q":
            return cls.quadric(first)
        if tag == "Bl":
            return cls.blowup(first, int(second))
        return cls.product(first)

    @property
    def dim(self) -> int:
        if self.kind == PRODUCT:
            return 2 * self.m + 1
        return self.n

    def spec(self) -> str:
        if self.kind == PROJECTIVE:
            return f"P:{self.n}"
        if self.kind == QUADRIC:
            return f"Q:{self.n}"
        if self.kind == BLOWUP:
            return f"Bl:{self.n},{self.m}"
        return f"QxP:{self.m}"


class InvariantPair(NamedTuple):
    n_lower: int
    n_upper: int


class PolarizedFamily(NamedTuple):
    """(H, L) for a model family; ``variety`` uses the P:/Q: spec grammar."""

    variety: str
    polarization: str


class DimensionCheck(NamedTuple):
    dim: int
    bound_holds: bool
    projective_case: bool


class HypothesisCheck(NamedTuple):
    holds: bool
    reasons: list[str]


def minimal_family_dim(anticanonical_degree: int, n: int) -> DimensionCheck:
    """d = (-K_X . C) - 2, flagging whether d <= n - 1 holds.

    ``projective_case`` is set when the bound is an equality, which happens
    exactly for X = P^n.
    """
    if anticanonical_degree < 2:
        raise ValueError("anticanonical degree must be >= 2")
    if n < 1:
        raise ValueError("ambient dimension must be positive")
    d = anticanonical_degree - 2
    return DimensionCheck(d, d <= n - 1, d == n - 1)


def example_invariants(f: ModelFamily) -> InvariantPair:
    if f.kind == PROJECTIVE:
        return InvariantPair(f.n, f.n)
    if f.kind == QUADRIC:
        v = (f.n + 1) // 2
        return InvariantPair(v, v)
    if f.kind == BLOWUP:
        return InvariantPair(f.m + 1, f.m + 1)
    return InvariantPair((f.m + 2) // 2, f.m)


def example_polarized_family(f: ModelFamily) -> PolarizedFamily:
    if f.kind == PROJECTIVE:
        return PolarizedFamily(f"P:{f.n - 1}", "hyperplane")
    if f.kind == QUADRIC:
        return PolarizedFamily(f"Q:{f.n - 2}", "hyperplane")
    if f.kind == BLOWUP:
        return PolarizedFamily(f"P:{f.m}", "hyperplane")
    raise ValueError(f"(H, L) is not known for {f.spec()}")


def theorem1_hypothesis(N: int, d1: int) -> HypothesisCheck:
    """Numeric hypotheses: 2 <= N <= 100 and dim H_1 >= N^2 - N - 1."""
    reasons = []
    if not 2 <= N <= 100:
        reasons.append(f"N={N} is outside 2 <= N <= 100")
    if d1 < N * N - N - 1:
        reasons.append(f"d1={d1} is below N^2-N-1={N * N - N - 1}")
    return HypothesisCheck(not reasons, reasons)


def chain_dim_lower_bound(M: int, d1: int) -> Fraction:
    """Lower bound -(M-1) + (d1+2)/M - 2 on d_M when a_2 = ... = a_M = 1."""
    if M < 2:
        raise ValueError("M must be >= 2")
    return -(M - 1) + Fraction(d1 + 2, M) - 2


def second_family_dim_bound(d1: int, a2: int) -> Fraction:
    # d_2 + 2 = (d1/2) a_2 + T^2(ch_2(X)) with the last term nef, hence >= 0
    return Fraction(d1, 2) * a2 - 2
