"""
Heegaard Floer homology of integer surgeries on two-bridge knots.

Everything is assembled from the Alexander polynomial and the signature:
for each Spin^c label k the finite pieces are

    Q_k = Z^|b_k| in grading k - 1, with u acting as zero,
    V_k = Z[u^-1] / u^-h_k, a cyclic torsion module of length h_k,

and HF+ adds one tower Z[u^-1].  Gradings are relative: they are only
meaningful compared with each other inside one module.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field, replace
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from .homalg import IntMatrix, rank
from .twobridge import (
    TwoBridgeKnot,
    genus,
    signature,
    spinc_invariants,
    torus_companion,
)

RELATIVE = "relative"
UNGRADED = "ungraded"


class FloerError(ValueError):
    pass


class TwistedCaseError(FloerError):
    """Spin^c label 0 on the 0-surgery needs twisted coefficients."""


class DecompositionError(FloerError):
    pass


@dataclass(frozen=True)
class Tower:
    """Z[u^-1] starting at ``grading`` (or Z[u] ending there, if downward)."""

    grading: Optional[int] = None
    downward: bool = False

    def to_dict(self) -> dict:
        out = {"type": "tower"}
        if self.downward:
            out["direction"] = "down"
        if self.grading is not None:
            out["top" if self.downward else "bottom"] = self.grading
        return out


@dataclass(frozen=True)
class Torsion:
    """Z[u^-1] / u^-length, elements at bottom, bottom + 2, ..."""

    length: int
    bottom: Optional[int] = None

    def __post_init__(self):
        if self.length < 1:
            raise FloerError("torsion summands have length >= 1")

    def to_dict(self) -> dict:
        out = {"type": "torsion", "length": self.length}
        if self.bottom is not None:
            out["bottom"] = self.bottom
        return out


@dataclass(frozen=True)
class Free:
    """Z^rank in one grading, killed by u."""

    rank: int
    grading: Optional[int] = None

    def __post_init__(self):
        if self.rank < 1:
            raise FloerError("free summands have rank >= 1")

    def to_dict(self) -> dict:
        out = {"type": "free", "rank": self.rank}
        if self.grading is not None:
            out["grading"] = self.grading
        return out


Summand = Union[Tower, Torsion, Free]
_ORDER = {Free: 0, Torsion: 1, Tower: 2}


def _sort_key(s: Summand):
    g = getattr(s, "grading", None) if not isinstance(s, Torsion) else s.bottom
    size = s.rank if isinstance(s, Free) else s.length if isinstance(s, Torsion) else int(s.downward)
    return (_ORDER[type(s)], size, g is None, g or 0)


def summand_from_dict(d: dict) -> Summand:
    kind = d["type"]
    if kind == "tower":
        down = d.get("direction") == "down"
        return Tower(d.get("top" if down else "bottom"), down)
    if kind == "torsion":
        return Torsion(d["length"], d.get("bottom"))
    if kind == "free":
        return Free(d["rank"], d.get("grading"))
    raise FloerError(f"unknown summand type {kind!r}")


@dataclass(frozen=True, eq=False)
class UModule:
    """Direct sum of towers, torsion cyclics and u-trivial free groups.

    With ``twisted`` set, the Free and Torsion summands are tensored with
    Z[T, T^-1] and the tower is not.  Equality ignores summand order.
    """

    summands: Tuple[Summand, ...]
    grading_kind: str = RELATIVE
    twisted: bool = False

    def __post_init__(self):
        if self.grading_kind not in (RELATIVE, UNGRADED):
            raise FloerError(f"unknown grading kind {self.grading_kind!r}")
        if self.grading_kind == UNGRADED:
            for s in self.summands:
                if (s.bottom if isinstance(s, Torsion) else s.grading) is not None:
                    raise FloerError("ungraded modules carry no gradings")

    def __eq__(self, other):
        if not isinstance(other, UModule):
            return NotImplemented
        return ((self.grading_kind, self.twisted, sorted(self.summands, key=_sort_key))
                == (other.grading_kind, other.twisted, sorted(other.summands, key=_sort_key)))

    def __hash__(self):
        return hash((self.grading_kind, self.twisted, tuple(sorted(self.summands, key=_sort_key))))

    def ungraded(self) -> "UModule":
        strip = []
        for s in self.summands:
            if isinstance(s, Torsion):
                strip.append(replace(s, bottom=None))
            else:
                strip.append(replace(s, grading=None))
        return UModule(tuple(strip), UNGRADED, self.twisted)

    def is_zero(self) -> bool:
        return not self.summands

    def of_type(self, cls) -> List[Summand]:
        return [s for s in self.summands if isinstance(s, cls)]

    def euler_characteristic(self) -> int:
        """Signed rank of the finite part (towers excluded)."""
        if self.grading_kind != RELATIVE:
            raise FloerError("Euler characteristic needs gradings")
        chi = 0
        for s in self.summands:
            if isinstance(s, Free):
                chi += (-1) ** (s.grading % 2) * s.rank
            elif isinstance(s, Torsion):
                chi += (-1) ** (s.bottom % 2) * s.length
        return chi

    def to_dict(self) -> dict:
        out = {"summands": [s.to_dict() for s in self.summands], "grading_kind": self.grading_kind}
        if self.twisted:
            out["twisted"] = True
        return out

    @classmethod
    def from_dict(cls, d: dict) -> "UModule":
        return cls(tuple(summand_from_dict(s) for s in d["summands"]),
                   d["grading_kind"], d.get("twisted", False))


@dataclass(frozen=True)
class HatModule:
    """Free abelian group, rank per grading."""

    ranks: Dict[int, int] = field(default_factory=dict)

    @property
    def total_rank(self) -> int:
        return sum(self.ranks.values())

    def euler_characteristic(self) -> int:
        return sum((-1) ** (g % 2) * r for g, r in self.ranks.items())

    def to_dict(self) -> dict:
        return {"summands": [{"rank": r, "grading": g}
                             for g, r in sorted(self.ranks.items(), reverse=True)],
                "grading_kind": RELATIVE}

    @classmethod
    def from_dict(cls, d: dict) -> "HatModule":
        return cls({s["grading"]: s["rank"] for s in d["summands"]})


# -- large surgery -------------------------------------------------------------

def _pieces(knot: TwoBridgeKnot, spinc: int):
    k = abs(spinc)
    inv = spinc_invariants(knot, k)
    sigma = signature(knot)
    half = sigma // 2
    return k, inv, sigma, half


def _v_bottom(k: int, half: int, h: int, sigma: int) -> int:
    """Grading of 1 in V_k."""
    if sigma > 0:
        # V_k is the bottom of the tower: its top u^(-h+1) sits at sigma/2 - 2
        return half - 2 * h
    return k - 2 * h if (k - half) % 2 == 0 else k + 1 - 2 * h


def _finite_part(knot: TwoBridgeKnot, spinc: int, with_v: bool) -> List[Summand]:
    k, inv, sigma, half = _pieces(knot, spinc)
    out: List[Summand] = []
    if inv.b:
        out.append(Free(abs(inv.b), k - 1))
    if with_v and inv.h:
        out.append(Torsion(inv.h, _v_bottom(k, half, inv.h, sigma)))
    return out


def hf_plus_large_n(knot: TwoBridgeKnot, spinc: int) -> UModule:
    """HF+ of n-surgery for n >> 0 in the Spin^c structure s_k, k = |spinc|."""
    k, inv, sigma, half = _pieces(knot, spinc)
    if sigma >= 0:
        # V_k is absorbed into the tower, which then starts 2h_k lower
        return UModule(tuple(_finite_part(knot, k, with_v=False)) + (Tower(half - 2 * inv.h),))
    return UModule(tuple(_finite_part(knot, k, with_v=True)) + (Tower(half),))


def hf_hat_large_n(knot: TwoBridgeKnot, spinc: int) -> HatModule:
    """HF-hat read off HF+ through the Gysin sequence.

    Tower -> Z at its bottom; V_k -> Z at its bottom and at bottom + 2h - 1;
    each generator of Q_k -> Z at k - 1 and Z at k.
    """
    ranks: Counter = Counter()
    for s in hf_plus_large_n(knot, spinc).summands:
        if isinstance(s, Tower):
            ranks[s.grading] += 1
        elif isinstance(s, Torsion):
            ranks[s.bottom] += 1
            ranks[s.bottom + 2 * s.length - 1] += 1
        else:
            ranks[s.grading] += s.rank
            ranks[s.grading + 1] += s.rank
    return HatModule(dict(sorted(ranks.items())))


def hf_minus_large_n(knot: TwoBridgeKnot, spinc: int) -> UModule:
    """Same Q and V with gradings lowered by one; Z[u] ends 2 below the HF+ tower."""
    out: List[Summand] = []
    for s in hf_plus_large_n(knot, spinc).summands:
        if isinstance(s, Tower):
            out.append(Tower(s.grading - 2, downward=True))
        elif isinstance(s, Torsion):
            out.append(Torsion(s.length, s.bottom - 1))
        else:
            out.append(Free(s.rank, s.grading - 1))
    return UModule(tuple(out))


# -- other surgeries -----------------------------------------------------------

def hf_plus_zero_surgery(knot: TwoBridgeKnot, spinc: int) -> UModule:
    """HF+(K^0, s_k) = Q_k + V_k for k != 0; twisted coefficients at k = 0.

    At k = 0 the tower's grading relative to Q_0 and V_0 is not determined,
    so it is emitted without one.
    """
    k = abs(spinc)
    if k == 0:
        return UModule(tuple(_finite_part(knot, 0, with_v=True)) + (Tower(None),), twisted=True)
    if k >= genus(knot):
        return UModule(())
    return UModule(tuple(_finite_part(knot, k, with_v=True)))


def _labels_in_class(knot: TwoBridgeKnot, n: int, spinc: int) -> Tuple[List[int], int]:
    if n <= 0:
        raise FloerError(f"surgery coefficient must be positive here, got {n}")
    r = spinc % n
    g = genus(knot)
    first = r - n * ((r + g - 1) // n)  # smallest i > -g with i = r mod n
    labels = list(range(first, g, n))
    nearest = min((r, r - n), key=lambda i: (abs(i), -i))
    return labels, nearest


def _surgery_sum(knot: TwoBridgeKnot, n: int, spinc: int, drop_nearest_v: bool) -> UModule:
    labels, nearest = _labels_in_class(knot, n, spinc)
    out: List[Summand] = []
    for i in labels:
        inv = spinc_invariants(knot, i)
        if inv.b:
            out.append(Free(abs(inv.b)))
    for i in labels:
        if drop_nearest_v and i == nearest:
            continue
        h = spinc_invariants(knot, i).h
        if h:
            out.append(Torsion(h))
    out.append(Tower())
    return UModule(tuple(out), UNGRADED)


def hf_plus_n_surgery(knot: TwoBridgeKnot, n: int, spinc: int) -> UModule:
    """HF+(K^n, s_k), n >= 1, as an ungraded module.

    Sum over the labels i = k mod n of Q_i and V_i plus one tower; when
    sigma >= 0 the V_i of the label nearest to zero is left out.
    """
    return _surgery_sum(knot, n, spinc, drop_nearest_v=signature(knot) >= 0)


def hf_plus_negative_surgery(knot: TwoBridgeKnot, n: int, spinc: int) -> UModule:
    """HF+(K^-n, s_k): the same sum with the two signature cases swapped."""
    return _surgery_sum(knot, n, spinc, drop_nearest_v=signature(knot) <= 0)


class DInvariants(NamedTuple):
    plus_one: int   # d of +1 surgery
    minus_one: int  # d of -1 surgery


def d_invariants(knot: TwoBridgeKnot) -> DInvariants:
    sigma = signature(knot)
    half = sigma // 2
    plus = min(0, -2 * -(-sigma // 4))
    minus = 0 if sigma >= 0 else 2 * -(-abs(half) // 2)
    return DInvariants(plus, minus)


class TorusDecomposition(NamedTuple):
    q_rank: int
    q_grading: int


def torus_decomposition_check(knot: TwoBridgeKnot, spinc: int) -> TorusDecomposition:
    """Split HF+(K^0, s_k) as Q + HF+(T^0, s_k), T the torus knot of equal signature.

    Raises DecompositionError if the torsion parts differ or the free parts
    differ anywhere except in grading k - 1.
    """
    if spinc == 0:
        raise TwistedCaseError("k = 0 needs twisted coefficients; decomposition not checked")
    k = abs(spinc)
    ours = hf_plus_zero_surgery(knot, k)
    theirs = hf_plus_zero_surgery(torus_companion(knot), k)
    if sorted(ours.of_type(Torsion), key=_sort_key) != sorted(theirs.of_type(Torsion), key=_sort_key):
        raise DecompositionError(f"V summands of {knot} and its torus companion differ at k={k}")
    ranks: Counter = Counter()
    for s in ours.of_type(Free):
        ranks[s.grading] += s.rank
    for s in theirs.of_type(Free):
        ranks[s.grading] -= s.rank
    extra = {g: r for g, r in ranks.items() if r}
    if any(r < 0 for r in extra.values()) or set(extra) - {k - 1}:
        raise DecompositionError(f"free parts differ outside grading {k - 1}: {extra}")
    return TorusDecomposition(extra.get(k - 1, 0), k - 1)


# -- Gysin recomputation ---------------------------------------------------------

def gysin_hat_ranks(m: UModule, headroom: int = 6) -> Dict[int, int]:
    """Ranks of HF-hat from an HF+ module, by explicit linear algebra.

    The module is truncated a few steps above its highest interesting
    grading; u is written out as an integer matrix in each degree and

        rank HF-hat_i = rank ker(u : HF+_i -> HF+_{i-2})
                      + rank coker(u : HF+_{i+1} -> HF+_{i-1}).
    """
    if m.grading_kind != RELATIVE:
        raise FloerError("needs a graded module")
    marks = []
    for s in m.summands:
        if isinstance(s, Torsion):
            marks += [s.bottom, s.bottom + 2 * s.length]
        else:
            marks.append(s.grading)
    cap = max(marks, default=0) + headroom
    low = min(marks, default=0)

    # basis elements: (summand index, grading); u moves down by 2 inside a summand
    basis: Dict[int, List[Tuple[int, int]]] = {}
    for idx, s in enumerate(m.summands):
        if isinstance(s, Tower):
            if s.downward:
                raise FloerError("expects an HF+ style module")
            degrees = range(s.grading, cap + 1, 2)
        elif isinstance(s, Torsion):
            degrees = range(s.bottom, s.bottom + 2 * s.length, 2)
        else:
            degrees = [s.grading] * s.rank
        for copy, g in enumerate(degrees):
            basis.setdefault(g, []).append((idx, g if not isinstance(s, Free) else copy))

    def u_rank(src: int) -> int:
        rows, cols = basis.get(src - 2, []), basis.get(src, [])
        if not rows or not cols:
            return 0
        pos = {key: r for r, key in enumerate(rows)}
        entries = {}
        for c, (idx, g) in enumerate(cols):
            if isinstance(m.summands[idx], Free):
                continue
            tgt = (idx, g - 2)
            if tgt in pos:
                entries[(pos[tgt], c)] = 1
        return rank(IntMatrix(len(rows), len(cols), entries))

    out = {}
    for i in range(low - 2, cap):
        dim_i = len(basis.get(i, []))
        dim_im1 = len(basis.get(i - 1, []))
        r = (dim_i - u_rank(i)) + (dim_im1 - u_rank(i + 1))
        if r:
            out[i] = r
    return out
