"""Exact linear algebra over the rationals.

Vectors are tuples of :class:`fractions.Fraction`; subspaces are kept in
reduced row-echelon form so that equality of subspaces is equality of
their canonical bases. Nothing here ever touches floating point.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import product as _cartesian
from typing import Iterable, Mapping, Sequence

from .errors import DimensionMismatch, NonSplitSpectrum, ParseError, SingularMatrix

Vector = tuple  # tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


# ---------------------------------------------------------------------------
# scalars and vectors
# ---------------------------------------------------------------------------
def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, str):
        return parse_scalar(x)
    if isinstance(x, float):
        # floats only make it in via user error; refuse silently lossy input
        raise TypeError(f"refusing float scalar {x!r}; use int, Fraction or 'p/q'")
    return Fraction(x)


def parse_scalar(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"p"`` into a Fraction."""
    s = text.strip()
    try:
        if "/" in s:
            p, q = s.split("/")
            return Fraction(int(p), int(q))
        return Fraction(int(s))
    except (ValueError, ZeroDivisionError) as exc:
        raise ParseError(f"bad scalar {text!r}") from exc


def format_scalar(q: Fraction) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def vector(coords: Iterable) -> Vector:
    return tuple(to_fraction(c) for c in coords)


def zero_vector(dim: int) -> Vector:
    return (ZERO,) * dim


def unit_vector(dim: int, i: int) -> Vector:
    v = [ZERO] * dim
    v[i] = ONE
    return tuple(v)


def is_zero(v: Sequence) -> bool:
    return not any(v)


def vec_add(u: Sequence, v: Sequence) -> Vector:
    return tuple(a + b for a, b in zip(u, v))


def vec_sub(u: Sequence, v: Sequence) -> Vector:
    return tuple(a - b for a, b in zip(u, v))


def vec_scale(c, v: Sequence) -> Vector:
    c = to_fraction(c)
    return tuple(c * a for a in v)


def lin_comb(coeffs: Sequence, vectors: Sequence[Sequence], dim: int) -> Vector:
    out = [ZERO] * dim
    for c, v in zip(coeffs, vectors):
        if c:
            for i, a in enumerate(v):
                if a:
                    out[i] += c * a
    return tuple(out)


def sparse_to_dense(sv: Mapping[int, Fraction], dim: int) -> Vector:
    out = [ZERO] * dim
    for i, c in sv.items():
        out[i] = c
    return tuple(out)


def dense_to_sparse(v: Sequence) -> dict:
    return {i: c for i, c in enumerate(v) if c}


# ---------------------------------------------------------------------------
# row reduction
# ---------------------------------------------------------------------------
class SpanBuilder:
    """Incrementally maintained reduced row-echelon basis.

    Rows are kept mutually reduced after every insertion, so ``rows()`` is
    already canonical.
    """

    def __init__(self, dim: int):
        self.dim = dim
        self._rows: dict[int, list] = {}
        self._nz: dict[int, list] = {}   # pivot -> nonzero positions of that row

    def __len__(self):
        return len(self._rows)

    @property
    def full(self) -> bool:
        return len(self._rows) == self.dim

    def reduce(self, v: Sequence) -> list:
        w = list(v)
        for p, row in self._rows.items():
            c = w[p]
            if c:
                for i in self._nz[p]:
                    w[i] -= c * row[i]
        return w

    def add(self, v: Sequence) -> bool:
        """Insert ``v``; return True when it enlarged the span."""
        if len(v) != self.dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a {self.dim}-dim space")
        if self.full:
            return False
        w = self.reduce(v)
        p = next((i for i, c in enumerate(w) if c), None)
        if p is None:
            return False
        inv = 1 / Fraction(w[p])
        w = [c * inv if c else ZERO for c in w]
        nz = [i for i, c in enumerate(w) if c]
        for q, row in self._rows.items():
            c = row[p]
            if c:
                for i in nz:
                    row[i] -= c * w[i]
                self._nz[q] = [i for i, x in enumerate(row) if x]
        self._rows[p] = w
        self._nz[p] = nz
        return True

    def rows(self) -> tuple:
        return tuple(tuple(self._rows[p]) for p in sorted(self._rows))

    def pivots(self) -> tuple:
        return tuple(sorted(self._rows))


def rref(rows: Iterable[Sequence], ncols: int) -> tuple[tuple, tuple]:
    sb = SpanBuilder(ncols)
    for r in rows:
        sb.add(r)
    return sb.rows(), sb.pivots()


def solve_homogeneous(equations: Iterable[Mapping[int, Fraction]], nvars: int) -> list[Vector]:
    """Basis of the solution space of sparse homogeneous linear equations.

    Each equation maps variable index to coefficient and means
    ``sum(coef * x[var]) == 0``. Elimination works on dict rows so that the
    large, very sparse systems produced by multilinear conditions stay cheap.
    """
    pivot_rows: dict[int, dict] = {}
    seen = set()
    for eq in equations:
        row = {k: Fraction(v) for k, v in eq.items() if v}
        if not row:
            continue
        key = frozenset(row.items())
        if key in seen:
            continue
        seen.add(key)
        while row:
            p = min(row)
            prow = pivot_rows.get(p)
            if prow is None:
                inv = 1 / row[p]
                pivot_rows[p] = {k: v * inv for k, v in row.items()}
                break
            c = row[p]
            for k, v in prow.items():
                nv = row.get(k, ZERO) - c * v
                if nv:
                    row[k] = nv
                else:
                    row.pop(k, None)
    # back substitution: express each pivot through free variables only
    reduced: dict[int, dict] = {}
    for p in sorted(pivot_rows, reverse=True):
        expr: dict[int, Fraction] = {}
        for k, v in pivot_rows[p].items():
            if k == p:
                continue
            if k in reduced:
                for f, c in reduced[k].items():
                    expr[f] = expr.get(f, ZERO) - v * c
            else:
                expr[k] = expr.get(k, ZERO) - v
        reduced[p] = {k: c for k, c in expr.items() if c}
    free = [j for j in range(nvars) if j not in pivot_rows]
    basis = []
    for f in free:
        x = [ZERO] * nvars
        x[f] = ONE
        for p, expr in reduced.items():
            c = expr.get(f)
            if c:
                x[p] = c
        basis.append(tuple(x))
    return basis


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[Vector]:
    """Vectors x with ``row . x == 0`` for every row."""
    eqs = [{j: c for j, c in enumerate(r) if c} for r in rows]
    return solve_homogeneous(eqs, ncols)


# ---------------------------------------------------------------------------
# subspaces
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class Subspace:
    """A subspace of Q^d stored by its canonical RREF basis."""

    ambient_dim: int
    basis: tuple
    pivots: tuple

    @classmethod
    def span(cls, vectors: Iterable[Sequence], ambient_dim: int) -> "Subspace":
        sb = SpanBuilder(ambient_dim)
        for v in vectors:
            sb.add(v)
            if sb.full:
                break
        return cls(ambient_dim, sb.rows(), sb.pivots())

    @classmethod
    def zero(cls, ambient_dim: int) -> "Subspace":
        return cls(ambient_dim, (), ())

    @classmethod
    def full(cls, ambient_dim: int) -> "Subspace":
        return cls.coordinate(range(ambient_dim), ambient_dim)

    @classmethod
    def coordinate(cls, indices: Iterable[int], ambient_dim: int) -> "Subspace":
        idx = sorted(set(indices))
        for i in idx:
            if not 0 <= i < ambient_dim:
                raise DimensionMismatch(f"coordinate {i} outside 0..{ambient_dim - 1}")
        return cls(ambient_dim, tuple(unit_vector(ambient_dim, i) for i in idx), tuple(idx))

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def is_full(self) -> bool:
        return len(self.basis) == self.ambient_dim

    def _check(self, other: "Subspace"):
        if other.ambient_dim != self.ambient_dim:
            raise DimensionMismatch(f"ambient dims {self.ambient_dim} and {other.ambient_dim}")

    def reduce(self, v: Sequence) -> Vector:
        """Remainder of ``v`` after eliminating the pivot columns."""
        w = list(v)
        for p, row in zip(self.pivots, self.basis):
            c = w[p]
            if c:
                w = [a - c * b for a, b in zip(w, row)]
        return tuple(w)

    def contains_vector(self, v: Sequence) -> bool:
        if len(v) != self.ambient_dim:
            raise DimensionMismatch(f"vector of length {len(v)} in a {self.ambient_dim}-dim space")
        return is_zero(self.reduce(v))

    def __contains__(self, v) -> bool:
        return self.contains_vector(v)

    def coordinates(self, v: Sequence) -> Vector:
        """Coordinates of ``v`` in the RREF basis (``v`` must lie in the subspace)."""
        if not self.contains_vector(v):
            raise ValueError("vector is not in the subspace")
        return tuple(Fraction(v[p]) for p in self.pivots)

    def issubset(self, other: "Subspace") -> bool:
        self._check(other)
        return all(other.contains_vector(b) for b in self.basis)

    def __le__(self, other: "Subspace") -> bool:
        return self.issubset(other)

    def __ge__(self, other: "Subspace") -> bool:
        return other.issubset(self)

    def __add__(self, other: "Subspace") -> "Subspace":
        self._check(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim)

    def annihilator(self) -> list[Vector]:
        """Linear functionals (as vectors) vanishing exactly on this subspace."""
        return nullspace(self.basis, self.ambient_dim)

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check(other)
        if self.is_zero() or other.is_zero():
            return Subspace.zero(self.ambient_dim)
        if other.is_full():
            return self
        if self.is_full():
            return other
        funcs = other.annihilator()
        # a . basis of self must be killed by every functional vanishing on other
        eqs = []
        for f in funcs:
            eqs.append({i: sum(fi * bi for fi, bi in zip(f, b)) for i, b in enumerate(self.basis)})
        sols = solve_homogeneous(eqs, self.dim)
        return Subspace.span((lin_comb(s, self.basis, self.ambient_dim) for s in sols),
                             self.ambient_dim)

    def __and__(self, other: "Subspace") -> "Subspace":
        return self.intersect(other)

    def complement_indices(self) -> tuple:
        """Non-pivot coordinates; their unit vectors span a complement."""
        piv = set(self.pivots)
        return tuple(i for i in range(self.ambient_dim) if i not in piv)

    def __repr__(self):
        rows = ", ".join("(" + " ".join(format_scalar(c) for c in b) + ")" for b in self.basis)
        return f"Subspace(dim={self.dim}/{self.ambient_dim}: {rows})"


def intersect_all(spaces: Iterable[Subspace], ambient_dim: int) -> Subspace:
    out = Subspace.full(ambient_dim)
    for s in spaces:
        out = out & s
        if out.is_zero():
            break
    return out


# ---------------------------------------------------------------------------
# linear maps
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class LinearOperator:
    """Exact matrix acting on column vectors: column j is the image of e_j.

    Square in every use except the quotient projection, whose shape is
    ``(dim L/I, dim L)``.
    """

    rows: tuple

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable]) -> "LinearOperator":
        return cls(tuple(vector(r) for r in rows))

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int | None = None) -> "LinearOperator":
        if nrows is None:
            nrows = len(cols[0]) if cols else 0
        return cls(tuple(tuple(Fraction(cols[j][i]) for j in range(len(cols)))
                         for i in range(nrows)))

    @classmethod
    def identity(cls, d: int) -> "LinearOperator":
        return cls(tuple(unit_vector(d, i) for i in range(d)))

    @classmethod
    def zero(cls, d: int, m: int | None = None) -> "LinearOperator":
        m = d if m is None else m
        return cls(tuple((ZERO,) * m for _ in range(d)))

    @classmethod
    def diagonal(cls, entries: Sequence) -> "LinearOperator":
        d = len(entries)
        return cls(tuple(tuple(to_fraction(entries[i]) if i == j else ZERO for j in range(d))
                         for i in range(d)))

    @property
    def shape(self) -> tuple:
        return (len(self.rows), len(self.rows[0]) if self.rows else 0)

    @property
    def dim(self) -> int:
        r, c = self.shape
        if r != c:
            raise DimensionMismatch(f"operator of shape {self.shape} is not square")
        return r

    def is_square(self) -> bool:
        r, c = self.shape
        return r == c

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def columns(self) -> list[Vector]:
        return [self.column(j) for j in range(self.shape[1])]

    def apply(self, v: Sequence) -> Vector:
        if len(v) != self.shape[1]:
            raise DimensionMismatch(f"vector of length {len(v)} for operator of shape {self.shape}")
        nz = [(j, c) for j, c in enumerate(v) if c]
        return tuple(sum((r[j] * c for j, c in nz), ZERO) for r in self.rows)

    def __call__(self, v: Sequence) -> Vector:
        return self.apply(v)

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f"cannot compose {self.shape} with {other.shape}")
        ocols = other.shape[1]
        out = []
        for r in self.rows:
            nz = [(k, a) for k, a in enumerate(r) if a]
            out.append(tuple(sum((a * other.rows[k][j] for k, a in nz), ZERO)
                             for j in range(ocols)))
        return LinearOperator(tuple(out))

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")
        return LinearOperator(tuple(vec_add(a, b) for a, b in zip(self.rows, other.rows)))

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")
        return LinearOperator(tuple(vec_sub(a, b) for a, b in zip(self.rows, other.rows)))

    def __neg__(self) -> "LinearOperator":
        return self.scale(-1)

    def scale(self, c) -> "LinearOperator":
        return LinearOperator(tuple(vec_scale(c, r) for r in self.rows))

    def __pow__(self, k: int) -> "LinearOperator":
        if k < 0:
            return self.inverse() ** (-k)
        result = LinearOperator.identity(self.dim)
        base = self
        while k:
            if k & 1:
                result = result @ base
            k >>= 1
            if k:
                base = base @ base
        return result

    def commutator(self, other: "LinearOperator") -> "LinearOperator":
        return self @ other - other @ self

    def flatten(self) -> Vector:
        return tuple(c for r in self.rows for c in r)

    @classmethod
    def unflatten(cls, flat: Sequence, d: int) -> "LinearOperator":
        return cls(tuple(tuple(Fraction(x) for x in flat[i * d:(i + 1) * d]) for i in range(d)))

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.dim)), ZERO)

    def kernel(self) -> Subspace:
        return Subspace.span(nullspace(self.rows, self.shape[1]), self.shape[1])

    def image(self) -> Subspace:
        return Subspace.span(self.columns(), self.shape[0])

    def image_of(self, s: Subspace) -> Subspace:
        return Subspace.span((self.apply(b) for b in s.basis), self.shape[0])

    def rank(self) -> int:
        return self.image().dim

    def is_nilpotent(self) -> bool:
        return (self ** self.dim).is_zero()

    def restrict(self, s: Subspace) -> "LinearOperator":
        """Matrix of the operator restricted to an invariant subspace, in its RREF basis."""
        cols = [s.coordinates(self.apply(b)) for b in s.basis]
        return LinearOperator.from_columns(cols, s.dim) if cols else LinearOperator(())

    def inverse(self) -> "LinearOperator":
        d = self.dim
        aug = [list(r) + list(unit_vector(d, i)) for i, r in enumerate(self.rows)]
        rows, piv = rref(aug, 2 * d)
        if piv[:d] != tuple(range(d)) or len(piv) < d:
            raise SingularMatrix("operator is not invertible")
        return LinearOperator(tuple(tuple(r[d:]) for r in rows[:d]))

    def det(self) -> Fraction:
        d = self.dim
        m = [list(r) for r in self.rows]
        det = ONE
        for c in range(d):
            p = next((i for i in range(c, d) if m[i][c]), None)
            if p is None:
                return ZERO
            if p != c:
                m[c], m[p] = m[p], m[c]
                det = -det
            det *= m[c][c]
            inv = 1 / m[c][c]
            for i in range(c + 1, d):
                f = m[i][c] * inv
                if f:
                    for j in range(c, d):
                        m[i][j] -= f * m[c][j]
        return det

    def charpoly(self) -> list[Fraction]:
        return charpoly(self)

    def __repr__(self):
        body = "; ".join(" ".join(format_scalar(c) for c in r) for r in self.rows)
        return f"LinearOperator([{body}])"


# ---------------------------------------------------------------------------
# polynomials (coefficient lists, lowest degree first)
# ---------------------------------------------------------------------------
def charpoly(op: LinearOperator) -> list[Fraction]:
    """Characteristic polynomial det(tI - A), coefficients low to high.

    Faddeev-LeVerrier recursion; exact in characteristic zero.
    """
    d = op.dim
    coeffs = [ZERO] * (d + 1)
    coeffs[d] = ONE
    m = LinearOperator.zero(d)
    ident = LinearOperator.identity(d)
    for k in range(1, d + 1):
        m = op @ m + ident.scale(coeffs[d - k + 1])
        coeffs[d - k] = -(op @ m).trace() / k
    return coeffs


def _poly_trim(p: list) -> list:
    p = list(p)
    while p and not p[-1]:
        p.pop()
    return p


def poly_eval(p: Sequence, x) -> Fraction:
    acc = ZERO
    for c in reversed(p):
        acc = acc * x + c
    return acc


def poly_divmod(a: Sequence, b: Sequence) -> tuple[list, list]:
    a = [Fraction(c) for c in _poly_trim(a)]
    b = [Fraction(c) for c in _poly_trim(b)]
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [ZERO] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, c in enumerate(b):
            a[i + shift] -= f * c
        a = _poly_trim(a)
    return q, a


def poly_derivative(p: Sequence) -> list:
    return [i * Fraction(c) for i, c in enumerate(p)][1:]


def poly_gcd(a: Sequence, b: Sequence) -> list:
    a, b = _poly_trim(a), _poly_trim(b)
    while b:
        _, r = poly_divmod(a, b)
        a, b = b, r
    if not a:
        return [ONE]
    lead = a[-1]
    return [Fraction(c) / lead for c in a]


def _divisors(n: int) -> list[int]:
    n = abs(n)
    small, large = [], []
    i = 1
    while i * i <= n:
        if n % i == 0:
            small.append(i)
            if i * i != n:
                large.append(n // i)
        i += 1
    return small + large[::-1]


def rational_roots(p: Sequence) -> dict[Fraction, int]:
    """All rational roots with multiplicity; raises if p does not split over Q.

    Integer-scales the polynomial, extracts candidates from the square-free
    part by the rational root theorem, then strips each root from the
    original polynomial as often as it divides.
    """
    p = _poly_trim([Fraction(c) for c in p])
    if not p:
        raise ValueError("zero polynomial has no finite root set")
    roots: dict[Fraction, int] = {}
    zeros = 0
    while p and p[0] == 0:
        p = p[1:]
        zeros += 1
    if zeros:
        roots[ZERO] = zeros
    if len(p) > 1:
        sqfree, _ = poly_divmod(p, poly_gcd(p, poly_derivative(p)))
        lcm = 1
        for c in sqfree:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        ints = [int(c * lcm) for c in sqfree]
        g = 0
        for c in ints:
            g = math.gcd(g, c)
        ints = [c // g for c in ints]
        cands = set()
        for num in _divisors(ints[0]):
            for den in _divisors(ints[-1]):
                cands.add(Fraction(num, den))
                cands.add(Fraction(-num, den))
        for r in sorted(cands):
            mult = 0
            while len(p) > 1 and poly_eval(p, r) == 0:
                p, _ = poly_divmod(p, [-r, ONE])
                mult += 1
            if mult:
                roots[r] = roots.get(r, 0) + mult
    if len(p) > 1:
        raise NonSplitSpectrum(f"factor of degree {len(p) - 1} without rational roots remains")
    return dict(sorted(roots.items()))


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in compositions(total - first, parts - 1):
            yield (first,) + rest


def index_tuples(sizes: Sequence[int]):
    return _cartesian(*(range(s) for s in sizes))
