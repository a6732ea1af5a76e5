"""
Two-bridge knots K(p, q) and the classical invariants read off from the
Alexander grading of the p generators x_1, ..., x_p.

Conventions: p is odd and positive, q is odd with -p < q < p and
gcd(p, q) = 1.  K(1, 1) stands for the unknot.  Signatures follow the
grading formula sigma = eps(x_1) - eps(x_p), which gives K(p, 1) the value
-(p - 1); no chirality words are attached to that sign.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from math import gcd
from typing import Dict, Iterator, Tuple


class KnotError(ValueError):
    pass


class TwoBridgeLinkError(KnotError):
    """p even: the double branched cover L(p, q) comes from a two-bridge link."""


def _ceil_div(a: int, b: int) -> int:
    return -((-a) // b)


@dataclass(frozen=True, order=True)
class TwoBridgeKnot:
    p: int
    q: int

    def __post_init__(self):
        p, q = self.p, self.q
        if p == 1:
            if q != 1:
                raise KnotError("the unknot is written K(1,1)")
            return
        if p <= 0 or p % 2 == 0 or q % 2 == 0 or not -p < q < p or gcd(p, q) != 1:
            raise KnotError(f"K({p},{q}) is not normalized; use normalize()")

    @property
    def is_unknot(self) -> bool:
        return self.p == 1

    def __str__(self):
        return f"K({self.p},{self.q})"


UNKNOT = TwoBridgeKnot(1, 1)


def normalize(p: int, q: int) -> TwoBridgeKnot:
    """Pick the odd representative of q mod p in (-p, p)."""
    if p <= 0:
        raise KnotError(f"p must be positive, got {p}")
    if p % 2 == 0:
        raise TwoBridgeLinkError(
            f"p = {p} is even: L({p},{q}) is the branched double cover of a "
            "two-bridge link, and two-bridge links are not supported")
    if p == 1:
        return UNKNOT
    if gcd(p, q) != 1:
        raise KnotError(f"gcd({p}, {q}) != 1")
    r = q % p
    return TwoBridgeKnot(p, r if r % 2 else r - p)


def mirror(k: TwoBridgeKnot) -> TwoBridgeKnot:
    return normalize(k.p, -k.q)


def inverse_form(k: TwoBridgeKnot) -> TwoBridgeKnot:
    """The same knot presented with q replaced by its inverse mod p."""
    if k.is_unknot:
        return k
    return normalize(k.p, pow(k.q, -1, k.p))


def amphichiral(k: TwoBridgeKnot) -> bool:
    return (k.q * k.q + 1) % k.p == 0


@dataclass(frozen=True)
class LaurentPoly:
    """Integer Laurent polynomial, stored as ``{exponent: coefficient}``."""

    coefficients: Tuple[Tuple[int, int], ...]

    @classmethod
    def from_dict(cls, coeffs: Dict[int, int]) -> "LaurentPoly":
        return cls(tuple(sorted((e, c) for e, c in coeffs.items() if c)))

    def __getitem__(self, exponent: int) -> int:
        return dict(self.coefficients).get(exponent, 0)

    @property
    def degree(self) -> int:
        return max((e for e, _ in self.coefficients), default=0)

    def __call__(self, t: int) -> int:
        # only the units of Z[t, 1/t] keep the value an integer
        if t not in (1, -1):
            raise ValueError("Laurent polynomials are evaluated at t = 1 or t = -1 only")
        return sum(c * (t if e % 2 else 1) for e, c in self.coefficients)

    def shifted_values(self, t: int) -> int:
        """t^d * Delta(t) for d = degree, an ordinary polynomial value."""
        d = self.degree
        return sum(c * t ** (e + d) for e, c in self.coefficients)

    def is_symmetric(self) -> bool:
        d = dict(self.coefficients)
        return all(d.get(-e, 0) == c for e, c in d.items())

    def symmetric_list(self) -> list:
        """Coefficients a_{-d}, ..., a_d."""
        d = self.degree
        return [self[e] for e in range(-d, d + 1)]

    def __str__(self):
        terms = []
        for e, c in sorted(self.coefficients, reverse=True):
            mono = "" if e == 0 else ("t" if e == 1 else f"t^{e}")
            coef = str(c) if (e == 0 or abs(c) != 1) else ("-" if c < 0 else "")
            terms.append(f"{coef}{mono}")
        return " + ".join(terms).replace("+ -", "- ") or "0"


@dataclass(frozen=True)
class AlexanderData:
    knot: TwoBridgeKnot
    epsilon: Tuple[int, ...]

    @property
    def counts(self) -> Dict[int, int]:
        """n_k: how many generators sit at Alexander grading k."""
        return dict(sorted(Counter(self.epsilon).items()))

    @property
    def signature(self) -> int:
        return self.epsilon[0] - self.epsilon[-1]

    @property
    def half_signature(self) -> int:
        return self.signature // 2

    @property
    def genus(self) -> int:
        return max(self.epsilon)


@lru_cache(maxsize=None)
def alexander_grading(k: TwoBridgeKnot) -> AlexanderData:
    """Integer lift of eps_x, antisymmetric under x_i <-> x_{p+1-i}.

    Consecutive differences are (-1)^floor(i q / p); the partial sums are
    shifted by the one constant making eps(x_i) = -eps(x_{p+1-i}).
    """
    p, q = k.p, k.q
    s = [0]
    for i in range(1, p):
        s.append(s[-1] + (-1 if (i * q // p) % 2 else 1))
    # antisymmetry forces the shift -(s_1 + s_p)/2 = -s_p/2
    if s[-1] % 2:
        raise AssertionError(f"odd total {s[-1]} for {k}: signature would be odd")
    shift = s[-1] // 2
    eps = tuple(x - shift for x in s)
    assert all(eps[i] == -eps[p - 1 - i] for i in range(p))
    return AlexanderData(k, eps)


@lru_cache(maxsize=None)
def alexander_polynomial(k: TwoBridgeKnot) -> LaurentPoly:
    """(-1)^eps(x_1) * sum_k n_k (-t)^k, normalized so that Delta(1) = 1."""
    data = alexander_grading(k)
    e1 = data.epsilon[0]
    return LaurentPoly.from_dict({e: (-1) ** ((e1 + e) % 2) * n for e, n in data.counts.items()})


def signature(k: TwoBridgeKnot) -> int:
    return alexander_grading(k).signature


def genus(k: TwoBridgeKnot) -> int:
    return alexander_grading(k).genus


def determinant(k: TwoBridgeKnot) -> int:
    return abs(alexander_polynomial(k)(-1))


@dataclass(frozen=True)
class SpincInvariants:
    k: int
    u: int
    h: int
    b: int


def torsion_coefficient(k: TwoBridgeKnot, spinc: int) -> int:
    """u_k = sum_{i > k} (i - k) a_i, evaluated at |k|."""
    spinc = abs(spinc)
    delta = alexander_polynomial(k)
    return sum((e - spinc) * c for e, c in delta.coefficients if e > spinc)


@lru_cache(maxsize=None)
def spinc_invariants(k: TwoBridgeKnot, spinc: int) -> SpincInvariants:
    """u_k, h_k and b_k at level |spinc|.

    b_k = u_k - h_k.  Its absolute value is the rank of the u-trivial part
    Q_k; that rank is pinned by chi(C_k) = (-1)^(sigma/2) u_k together with
    h_k copies of Z in parity sigma/2, and (-1)^(k - sigma/2 + 1) b_k >= 0.
    Torus knots K(m, +-1) get b_k = 0 for every k.
    """
    spinc = abs(spinc)
    half = alexander_grading(k).half_signature
    u = torsion_coefficient(k, spinc)
    h = max(_ceil_div(abs(half) - spinc, 2), 0)
    return SpincInvariants(spinc, u, h, u - h)


def torus_companion(k: TwoBridgeKnot) -> TwoBridgeKnot:
    """The K(m, +-1) torus knot with the same signature (unknot if sigma = 0)."""
    sigma = signature(k)
    if sigma == 0:
        return UNKNOT
    # sigma(K(m, 1)) = -(m - 1) under the grading formula
    return normalize(abs(sigma) + 1, -1 if sigma > 0 else 1)


def knots_up_to(max_p: int, min_p: int = 3) -> Iterator[TwoBridgeKnot]:
    """Every normalized K(p, q) with min_p <= p <= max_p, q in both signs."""
    for p in range(max(min_p, 1) | 1, max_p + 1, 2):
        if p == 1:
            yield UNKNOT
            continue
        for q in range(-p + 1, p):
            if q % 2 and gcd(p, q) == 1:
                yield TwoBridgeKnot(p, q)


def census_representatives(max_p: int) -> Iterator[TwoBridgeKnot]:
    """One positive-q representative per {q, q^-1} class, ordered by (p, q)."""
    for p in range(3, max_p + 1, 2):
        for q in range(1, p, 2):
            if gcd(p, q) != 1:
                continue
            alt = inverse_form(TwoBridgeKnot(p, q)).q
            if 0 < alt < q:
                continue
            yield TwoBridgeKnot(p, q)
