"""
Exact integer linear algebra and homology of graded chain complexes.

Everything here works over the integers with Python's arbitrary precision
ints; there is no floating point anywhere.  Matrices are stored sparsely
(a dict of nonzero entries) because the complexes coming out of two-bridge
knots have at most two nonzero entries per column.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple


class HomalgError(ValueError):
    """Base class for errors raised by this module."""


class InvalidComplexError(HomalgError):
    """The differential violates the grading rule or does not square to zero."""


class PivotError(HomalgError):
    """A cancellation was requested on a non-unit (or missing) entry."""


class IntMatrix:
    """Immutable integer matrix with sparse storage.

    ``IntMatrix(2, 3)`` is the zero matrix; entries are given either as a
    mapping ``{(row, col): value}`` or through :meth:`from_rows`.
    """

    __slots__ = ("rows", "cols", "_entries")

    def __init__(self, rows: int, cols: int,
                 entries: Mapping[Tuple[int, int], int] | None = None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be non-negative")
        self.rows = rows
        self.cols = cols
        clean: Dict[Tuple[int, int], int] = {}
        for (i, j), v in (entries or {}).items():
            if not (0 <= i < rows and 0 <= j < cols):
                raise IndexError(f"entry ({i}, {j}) outside {rows}x{cols} matrix")
            if not isinstance(v, int):
                raise TypeError("matrix entries must be integers")
            if v:
                clean[(i, j)] = int(v)
        self._entries = clean

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: int | None = None) -> "IntMatrix":
        nrows = len(rows)
        ncols = len(rows[0]) if nrows else (cols or 0)
        if any(len(r) != ncols for r in rows):
            raise ValueError("ragged rows")
        return cls(nrows, ncols, {(i, j): v for i, r in enumerate(rows)
                                   for j, v in enumerate(r) if v})

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    @property
    def shape(self) -> Tuple[int, int]:
        return (self.rows, self.cols)

    def __getitem__(self, key: Tuple[int, int]) -> int:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"entry ({i}, {j}) outside {self.rows}x{self.cols} matrix")
        return self._entries.get((i, j), 0)

    def nonzero(self) -> Dict[Tuple[int, int], int]:
        return dict(self._entries)

    def to_rows(self) -> List[List[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (i, j), v in self._entries.items():
            out[i][j] = v
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(j, i): v for (i, j), v in self._entries.items()})

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "IntMatrix":
        rpos = {r: a for a, r in enumerate(rows)}
        cpos = {c: b for b, c in enumerate(cols)}
        return IntMatrix(len(rows), len(cols),
                         {(rpos[i], cpos[j]): v for (i, j), v in self._entries.items()
                          if i in rpos and j in cpos})

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        by_row: Dict[int, List[Tuple[int, int]]] = {}
        for (k, j), v in other._entries.items():
            by_row.setdefault(k, []).append((j, v))
        out: Dict[Tuple[int, int], int] = {}
        for (i, k), a in self._entries.items():
            for j, b in by_row.get(k, ()):
                out[(i, j)] = out.get((i, j), 0) + a * b
        return IntMatrix(self.rows, other.cols, out)

    def is_zero(self) -> bool:
        return not self._entries

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self._entries == other._entries

    def __hash__(self) -> int:
        return hash((self.rows, self.cols, frozenset(self._entries.items())))

    def __repr__(self) -> str:
        return f"IntMatrix({self.to_rows()!r})" if self.rows else f"IntMatrix(0, {self.cols})"


def determinant(m: IntMatrix) -> int:
    """Exact determinant by fraction-free (Bareiss) elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant of a non-square matrix")
    n = m.rows
    a = m.to_rows()
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


def smith_normal_form(m: IntMatrix) -> Tuple[IntMatrix, IntMatrix, IntMatrix]:
    """Return ``(d, u, v)`` with ``u @ m @ v == d``.

    ``u`` and ``v`` are unimodular and ``d`` is diagonal with non-negative
    entries d1 | d2 | ...  Pivots are chosen by smallest absolute value,
    ties broken by (row, col) order, so the transforms are reproducible.
    """
    a, u, v = _reduce(m, track=True)
    nr, nc = m.shape
    return (IntMatrix.from_rows(a, nc), IntMatrix.from_rows(u, nr), IntMatrix.from_rows(v, nc))


def _reduce(m: IntMatrix, track: bool):
    """Diagonalize a copy of ``m`` in place; u and v stay empty unless tracked."""
    nr, nc = m.shape
    a = m.to_rows()
    u = [[int(i == j) for j in range(nr)] for i in range(nr)] if track else []
    v = [[int(i == j) for j in range(nc)] for i in range(nc)] if track else []

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        if track:
            u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:  # empty unless tracked
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        # row[dst] += c * row[src]
        ra, rs = a[dst], a[src]
        for k in range(nc):
            if rs[k]:
                ra[k] += c * rs[k]
        if track:
            ua, us = u[dst], u[src]
            for k in range(nr):
                if us[k]:
                    ua[k] += c * us[k]

    def add_col(src, dst, c):
        for row in a:
            if row[src]:
                row[dst] += c * row[src]
        for row in v:
            if row[src]:
                row[dst] += c * row[src]

    for t in range(min(nr, nc)):
        while True:
            best = None
            for i in range(t, nr):
                row = a[i]
                for j in range(t, nc):
                    x = row[j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                break
            _, bi, bj = best
            if bi != t:
                swap_rows(t, bi)
            if bj != t:
                swap_cols(t, bj)
            piv = a[t][t]
            dirty = False
            for i in range(t + 1, nr):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // piv))
                    dirty = dirty or a[i][t] != 0
            for j in range(t + 1, nc):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // piv))
                    dirty = dirty or a[t][j] != 0
            if dirty:
                continue
            if abs(piv) == 1:
                break
            # pivot must divide the rest of the block
            bad = next((i for i in range(t + 1, nr)
                        if any(a[i][j] % piv for j in range(t + 1, nc))), None)
            if bad is None:
                break
            add_row(bad, t, 1)
        if best is None:
            break
        if a[t][t] < 0:
            a[t] = [-x for x in a[t]]
            if track:
                u[t] = [-x for x in u[t]]
    return a, u, v


def elementary_divisors(m: IntMatrix) -> List[int]:
    a, _, _ = _reduce(m, track=False)
    return [a[i][i] for i in range(min(m.shape)) if a[i][i]]


def rank(m: IntMatrix) -> int:
    return len(elementary_divisors(m))


@dataclass(frozen=True)
class GradedComplex:
    """Finitely generated free graded complex over Z.

    ``differential[y, x]`` is the coefficient of generator ``y`` in ``d(x)``.
    Construction checks that d lowers grading by one and that d o d = 0.
    """

    labels: Tuple[str, ...]
    gradings: Tuple[int, ...]
    differential: IntMatrix

    def __post_init__(self):
        n = len(self.labels)
        if len(self.gradings) != n:
            raise InvalidComplexError("one grading per generator required")
        if len(set(self.labels)) != n:
            raise InvalidComplexError("generator labels must be distinct")
        if self.differential.shape != (n, n):
            raise InvalidComplexError(
                f"differential has shape {self.differential.shape}, expected {(n, n)}")
        for (y, x), _ in self.differential.nonzero().items():
            if self.gradings[y] != self.gradings[x] - 1:
                raise InvalidComplexError(
                    f"d({self.labels[x]}) hits {self.labels[y]} outside grading "
                    f"{self.gradings[x] - 1}")
        if not (self.differential @ self.differential).is_zero():
            raise InvalidComplexError("d o d != 0")

    @classmethod
    def build(cls, generators: Iterable[Tuple[str, int]],
              arrows: Mapping[Tuple[str, str], int] = ()) -> "GradedComplex":
        """Build from ``(label, grading)`` pairs and ``{(src, dst): coeff}``."""
        gens = list(generators)
        labels = tuple(g[0] for g in gens)
        index = {lab: i for i, lab in enumerate(labels)}
        entries = {}
        for (src, dst), c in dict(arrows).items():
            if src not in index or dst not in index:
                raise InvalidComplexError(f"unknown generator in arrow {src} -> {dst}")
            entries[(index[dst], index[src])] = c
        return cls(labels, tuple(g[1] for g in gens),
                   IntMatrix(len(labels), len(labels), entries))

    def __len__(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(label) from None

    def coefficient(self, src: str, dst: str) -> int:
        return self.differential[self.index(dst), self.index(src)]

    def arrows(self) -> Dict[Tuple[str, str], int]:
        return {(self.labels[x], self.labels[y]): c
                for (y, x), c in self.differential.nonzero().items()}

    def generators_in(self, grading: int) -> List[int]:
        return [i for i, g in enumerate(self.gradings) if g == grading]


@dataclass(frozen=True)
class HomologyGroup:
    free_rank: int = 0
    torsion: Tuple[int, ...] = ()

    def is_trivial(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def __str__(self):
        parts = ["Z" if self.free_rank == 1 else f"Z^{self.free_rank}"] if self.free_rank else []
        parts += [f"Z/{t}" for t in self.torsion]
        return " + ".join(parts) or "0"


@dataclass(frozen=True)
class HomologySummary:
    """Homology per grading; gradings with trivial homology are omitted."""

    groups: Mapping[int, HomologyGroup] = field(default_factory=dict)

    def __getitem__(self, grading: int) -> HomologyGroup:
        return self.groups.get(grading, HomologyGroup())

    def total_rank(self) -> int:
        return sum(g.free_rank for g in self.groups.values())

    def ranks(self) -> Dict[int, int]:
        return {i: g.free_rank for i, g in self.groups.items() if g.free_rank}

    def __eq__(self, other):
        if not isinstance(other, HomologySummary):
            return NotImplemented
        return dict(self.groups) == dict(other.groups)


def homology(c: GradedComplex) -> HomologySummary:
    """H_i = ker(d_i) / im(d_{i+1}) for every grading, via Smith normal form."""
    by_grading: Dict[int, List[int]] = {}
    for i, g in enumerate(c.gradings):
        by_grading.setdefault(g, []).append(i)

    divisors: Dict[int, List[int]] = {}

    def divs(i: int) -> List[int]:
        # elementary divisors of d_i : C_i -> C_{i-1}
        if i not in divisors:
            src, dst = by_grading.get(i, []), by_grading.get(i - 1, [])
            divisors[i] = elementary_divisors(c.differential.submatrix(dst, src)) if src and dst else []
        return divisors[i]

    groups = {}
    for i in sorted(by_grading):
        n = len(by_grading[i])
        incoming = divs(i + 1)
        grp = HomologyGroup(n - len(divs(i)) - len(incoming), tuple(x for x in incoming if x > 1))
        if not grp.is_trivial():
            groups[i] = grp
    return HomologySummary(groups)


def cancel_generator(c: GradedComplex, x: str, y: str) -> GradedComplex:
    """Cancel the pair ``x -> y`` joined by a unit coefficient.

    The returned complex drops ``x`` and ``y``; every other generator ``a``
    in the grading of ``x`` gets ``d(a) - d(a, y) * d(x)`` (after scaling
    ``x`` so that ``d(x, y) = 1``).  It is chain homotopy equivalent to ``c``.
    """
    if x not in c.labels or y not in c.labels:
        raise PivotError(f"labels {x!r}, {y!r} not both present")
    ix, iy = c.index(x), c.index(y)
    pivot = c.differential[iy, ix]
    if pivot not in (1, -1):
        raise PivotError(f"d({x}, {y}) = {pivot} is not a unit")

    cols: Dict[int, Dict[int, int]] = {}
    for (r, s), v in c.differential.nonzero().items():
        cols.setdefault(s, {})[r] = v
    dx = {r: pivot * v for r, v in cols.get(ix, {}).items()}  # d(x) with pivot made +1

    keep = [i for i in range(len(c)) if i not in (ix, iy)]
    pos = {old: new for new, old in enumerate(keep)}
    entries: Dict[Tuple[int, int], int] = {}
    for s in keep:
        col = dict(cols.get(s, {}))
        coeff = col.get(iy, 0)
        if coeff:
            for r, v in dx.items():
                col[r] = col.get(r, 0) - coeff * v
        for r, v in col.items():
            if v and r in pos:
                entries[(pos[r], pos[s])] = v
    return GradedComplex(tuple(c.labels[i] for i in keep),
                         tuple(c.gradings[i] for i in keep),
                         IntMatrix(len(keep), len(keep), entries))


def euler_characteristic(c: GradedComplex) -> int:
    return sum(-1 if g % 2 else 1 for g in c.gradings)
