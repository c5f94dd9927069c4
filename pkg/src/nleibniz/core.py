"""Leibniz n-algebras given by sparse structure constants.

An :class:`Algebra` stores its n-ary product as a map from basis index
tuples to sparse coefficient dicts; absent tuples multiply to zero. All
multilinear work funnels through :func:`contract`, which substitutes
vectors into selected slots of the structure tensor.
"""
from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations
from typing import Iterable, Mapping, Sequence

from .errors import (ArityMismatch, BadArity, BadSlot, ConflictingEntry, DimensionMismatch,
                     IndexOutOfRange, NotAnIdeal, NotASubalgebra)
from .linalg import (ZERO, LinearOperator, SpanBuilder, Subspace, Vector, sparse_to_dense,
                     to_fraction, unit_vector)

SparseVec = dict  # dict[int, Fraction]


@dataclass(frozen=True, eq=False)
class Algebra:
    arity: int
    dim: int
    tensor: Mapping[tuple, Mapping[int, Fraction]]
    basis_names: tuple = ()
    name: str = ""
    metadata: Mapping = field(default_factory=dict)

    def __post_init__(self):
        if self.arity < 2:
            raise BadArity(f"arity must be at least 2, got {self.arity}")
        if not self.basis_names:
            object.__setattr__(self, "basis_names", tuple(f"e{i + 1}" for i in range(self.dim)))
        for t, val in self.tensor.items():
            if len(t) != self.arity:
                raise BadArity(f"tuple {t} has {len(t)} indices, arity is {self.arity}")
            for i in t:
                if not 0 <= i < self.dim:
                    raise IndexOutOfRange(f"index {i} in {t} outside 0..{self.dim - 1}")
            for j, c in val.items():
                if not 0 <= j < self.dim:
                    raise IndexOutOfRange(f"output index {j} for {t}")
                if not c:
                    raise ValueError(f"stored zero coefficient at {t}")

    def __eq__(self, other):
        if not isinstance(other, Algebra):
            return NotImplemented
        return (self.arity, self.dim, _normalized(self.tensor)) == \
            (other.arity, other.dim, _normalized(other.tensor))

    __hash__ = None

    def product(self, *indices: int) -> Vector:
        """Product of basis vectors, as a dense vector."""
        return sparse_to_dense(self.tensor.get(tuple(indices), {}), self.dim)

    def full(self) -> Subspace:
        return Subspace.full(self.dim)

    def zero(self) -> Subspace:
        return Subspace.zero(self.dim)

    def basis_vector(self, i: int) -> Vector:
        return unit_vector(self.dim, i)

    def span(self, vectors: Iterable[Sequence]) -> Subspace:
        return Subspace.span(vectors, self.dim)

    def coordinate(self, names_or_indices: Iterable) -> Subspace:
        idx = [self.index(x) for x in names_or_indices]
        return Subspace.coordinate(idx, self.dim)

    def index(self, name_or_index) -> int:
        if isinstance(name_or_index, int):
            return name_or_index
        return self.basis_names.index(name_or_index)

    def vec(self, **coeffs) -> Vector:
        """Build a vector from basis-name keyword coefficients, e.g. ``A.vec(e2=1, e3=1)``."""
        v = [ZERO] * self.dim
        for name, c in coeffs.items():
            v[self.index(name)] += to_fraction(c)
        return tuple(v)

    def is_lie(self) -> bool:
        """True when the product is alternating in every pair of slots."""
        return is_alternating(self, range(self.arity))

    def __repr__(self):
        return f"Algebra({self.name or 'unnamed'}, arity={self.arity}, dim={self.dim}, " \
               f"entries={len(self.tensor)})"


def _normalized(tensor) -> frozenset:
    return frozenset((t, frozenset((j, c) for j, c in v.items() if c))
                     for t, v in tensor.items() if any(v.values()))


# ---------------------------------------------------------------------------
# definitions
# ---------------------------------------------------------------------------
@dataclass
class AlgebraDefinition:
    """Parsed algebra description before skew expansion.

    ``products`` maps an index tuple to a sparse value; ``skew_blocks`` lists
    index sets on which the product is alternating.
    """

    arity: int
    dim: int
    products: list = field(default_factory=list)  # [(tuple, {idx: Fraction})]
    skew_blocks: list = field(default_factory=list)
    basis_names: tuple = ()
    name: str = ""
    metadata: dict = field(default_factory=dict)


def _perm_sign(perm: Sequence[int]) -> int:
    sign, seen = 1, [False] * len(perm)
    for i in range(len(perm)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def build_algebra(defn: AlgebraDefinition) -> Algebra:
    if defn.arity < 2:
        raise BadArity(f"arity must be at least 2, got {defn.arity}")
    if defn.dim < 0:
        raise DimensionMismatch("negative dimension")
    blocks = [frozenset(b) for b in defn.skew_blocks]
    for b in blocks:
        for i in b:
            if not 0 <= i < defn.dim:
                raise IndexOutOfRange(f"skew block index {i} outside 0..{defn.dim - 1}")
    tensor: dict[tuple, dict] = {}
    origin: dict[tuple, tuple] = {}

    def put(t, val, src):
        val = {j: c for j, c in val.items() if c}
        if t in tensor:
            if tensor[t] != val:
                raise ConflictingEntry(f"tuple {t} assigned twice with different values "
                                       f"(from {origin[t]} and {src})")
            return
        tensor[t] = val
        origin[t] = src

    for args, value in defn.products:
        t = tuple(int(i) for i in args)
        if len(t) != defn.arity:
            raise BadArity(f"product {t} has {len(t)} arguments, arity is {defn.arity}")
        for i in t:
            if not 0 <= i < defn.dim:
                raise IndexOutOfRange(f"index {i} in {t} outside 0..{defn.dim - 1}")
        val = {}
        for j, c in value.items():
            if not 0 <= j < defn.dim:
                raise IndexOutOfRange(f"output index {j} for product {t}")
            c = to_fraction(c)
            val[j] = val.get(j, ZERO) + c
        block = next((b for b in blocks if set(t) <= b), None)
        if block is None:
            put(t, val, t)
            continue
        if len(set(t)) < len(t):
            if any(val.values()):
                raise ConflictingEntry(f"alternating block forces {t} to vanish")
            continue
        for perm in permutations(range(len(t))):
            s = _perm_sign(perm)
            put(tuple(t[p] for p in perm), {j: s * c for j, c in val.items()}, t)
    tensor = {t: v for t, v in tensor.items() if v}
    meta = dict(defn.metadata)
    if defn.skew_blocks:
        meta["skew_blocks"] = [sorted(b) for b in defn.skew_blocks]
    return Algebra(defn.arity, defn.dim, tensor, tuple(defn.basis_names), defn.name, meta)


def algebra_from_products(arity: int, dim: int, products: Mapping, *, skew_blocks=(),
                          basis_names=(), name="", metadata=None) -> Algebra:
    """Convenience: ``products`` maps index tuples to ``{out_index: coeff}``."""
    defn = AlgebraDefinition(arity, dim, [(t, v) for t, v in products.items()],
                             [list(b) for b in skew_blocks], tuple(basis_names), name,
                             dict(metadata or {}))
    return build_algebra(defn)


def is_alternating(A: Algebra, slots: Iterable[int]) -> bool:
    """Swapping any two of the given slots negates every product."""
    slots = list(slots)
    for t, val in A.tensor.items():
        for a, b in combinations(slots, 2):
            if t[a] == t[b]:
                return False
            s = list(t)
            s[a], s[b] = s[b], s[a]
            other = A.tensor.get(tuple(s), {})
            if {j: -c for j, c in val.items()} != dict(other):
                return False
    return True


# ---------------------------------------------------------------------------
# multilinear machinery
# ---------------------------------------------------------------------------
def contract(A: Algebra, slot_vectors: Sequence) -> dict:
    """Substitute vector families into slots of the structure tensor.

    ``slot_vectors[i]`` is ``None`` (keep the basis index) or a sequence of
    vectors ``v_0, v_1, ...``. The result maps a tuple whose i-th entry
    indexes into slot i's family to the sparse product
    ``[w_0, ..., w_{n-1}]``; tuples with zero product are absent.
    """
    if len(slot_vectors) != A.arity:
        raise ArityMismatch(f"{len(slot_vectors)} slot families for arity {A.arity}")
    current: dict = A.tensor
    for i, fam in enumerate(slot_vectors):
        if fam is None:
            continue
        lookup = defaultdict(list)
        for a, v in enumerate(fam):
            if len(v) != A.dim:
                raise DimensionMismatch(f"slot {i} vector of length {len(v)}, dim is {A.dim}")
            for u, c in enumerate(v):
                if c:
                    lookup[u].append((a, c))
        nxt: dict = defaultdict(dict)
        for t, val in current.items():
            hits = lookup.get(t[i])
            if not hits:
                continue
            for a, c in hits:
                key = t[:i] + (a,) + t[i + 1:]
                acc = nxt[key]
                for j, x in val.items():
                    acc[j] = acc.get(j, ZERO) + c * x
        current = {t: {j: x for j, x in v.items() if x} for t, v in nxt.items()}
        current = {t: v for t, v in current.items() if v}
    return dict(current)


def multiply(A: Algebra, *args: Sequence) -> Vector:
    if len(args) != A.arity:
        raise ArityMismatch(f"{len(args)} arguments for arity {A.arity}")
    supports = []
    for v in args:
        if len(v) != A.dim:
            raise DimensionMismatch(f"argument of length {len(v)}, dim is {A.dim}")
        supports.append({i: to_fraction(c) for i, c in enumerate(v) if c})
    out = [ZERO] * A.dim
    for t, val in A.tensor.items():
        coef = Fraction(1)
        for i, ti in enumerate(t):
            c = supports[i].get(ti)
            if c is None:
                break
            coef *= c
        else:
            for j, x in val.items():
                out[j] += coef * x
    return tuple(out)


def subspace_product(A: Algebra, *spaces: Subspace) -> Subspace:
    """Span of all products with slot i drawn from ``spaces[i]``."""
    if len(spaces) != A.arity:
        raise ArityMismatch(f"{len(spaces)} subspaces for arity {A.arity}")
    for s in spaces:
        if s.ambient_dim != A.dim:
            raise DimensionMismatch(f"subspace in Q^{s.ambient_dim}, algebra dim {A.dim}")
        if s.is_zero():
            return Subspace.zero(A.dim)
    fams = [None if s.is_full() else s.basis for s in spaces]
    sb = SpanBuilder(A.dim)
    for val in contract(A, fams).values():
        sb.add(sparse_to_dense(val, A.dim))
        if sb.full:
            break
    return Subspace(A.dim, sb.rows(), sb.pivots())


def slot_product(A: Algebra, S: Subspace, s: int, other: Subspace | None = None) -> Subspace:
    """``[other, ..., S (slot s, 1-based), ..., other]``; ``other`` defaults to L."""
    _check_slot(A, s)
    other = A.full() if other is None else other
    spaces = [other] * A.arity
    spaces[s - 1] = S
    return subspace_product(A, *spaces)


def _check_slot(A: Algebra, s: int):
    if not 1 <= s <= A.arity:
        raise BadSlot(f"slot {s} outside 1..{A.arity}")


def all_slot_products(A: Algebra, S: Subspace) -> Subspace:
    """Sum over every slot s of ``[L, ..., S, ..., L]``."""
    out = Subspace.zero(A.dim)
    for s in range(1, A.arity + 1):
        out = out + slot_product(A, S, s)
    return out


def ideal_closure(A: Algebra, S: Subspace) -> Subspace:
    """Smallest ideal containing ``S``.

    Each vector that enters the span is multiplied against L in every slot
    exactly once; products are linear in that slot, so this suffices.
    """
    if S.ambient_dim != A.dim:
        raise DimensionMismatch(f"subspace in Q^{S.ambient_dim}, algebra dim {A.dim}")
    sb = SpanBuilder(A.dim)
    queue = []
    for b in S.basis:
        if sb.add(b):
            queue.append(b)
    while queue and not sb.full:
        v = queue.pop()
        for s in range(A.arity):
            fams = [None] * A.arity
            fams[s] = [v]
            for val in contract(A, fams).values():
                w = sparse_to_dense(val, A.dim)
                if sb.add(w):
                    queue.append(w)
    return Subspace(A.dim, sb.rows(), sb.pivots())


def is_ideal(A: Algebra, S: Subspace) -> bool:
    return all(slot_product(A, S, s) <= S for s in range(1, A.arity + 1))


# ---------------------------------------------------------------------------
# the fundamental identity
# ---------------------------------------------------------------------------
@dataclass
class IdentityReport:
    passed: bool
    violations: list  # [(x_tuple, y_tuple, residual_vector)]
    checked_operators: int

    def __bool__(self):
        return self.passed


def _column_lookup(columns: Mapping[int, Mapping[int, Fraction]]) -> dict:
    """Invert ``j -> D(e_j)`` into ``row -> [(j, D[row][j])]``."""
    rows = defaultdict(list)
    for j, col in columns.items():
        for r, c in col.items():
            if c:
                rows[r].append((j, c))
    return rows


def derivation_residuals(A: Algebra, columns: Mapping[int, Mapping[int, Fraction]]) -> dict:
    """Residuals ``D[x] - sum_i [.., D x_i, ..]`` over basis tuples, nonzero ones only.

    ``columns[j]`` is the sparse image ``D(e_j)``. Only tuples that agree with
    a stored product in all but at most one slot can have a nonzero residual,
    so the scan is over that neighbourhood instead of all d^n tuples.
    """
    rows = _column_lookup(columns)
    candidates = set(A.tensor)
    for t in A.tensor:
        for i, ti in enumerate(t):
            for j, _ in rows.get(ti, ()):
                candidates.add(t[:i] + (j,) + t[i + 1:])
    out = {}
    for x in candidates:
        res: dict = defaultdict(lambda: ZERO)
        for k, c in A.tensor.get(x, {}).items():
            for r, dc in columns.get(k, {}).items():
                res[r] += c * dc
        for i, xi in enumerate(x):
            for r, dc in columns.get(xi, {}).items():
                val = A.tensor.get(x[:i] + (r,) + x[i + 1:])
                if val:
                    for k, c in val.items():
                        res[k] -= dc * c
        res = {k: c for k, c in res.items() if c}
        if res:
            out[x] = res
    return out


def verify_fundamental_identity(A: Algebra) -> IdentityReport:
    """Check ``[[x_1..x_n], y] = sum_i [x_1, .., [x_i, y], .., x_n]`` on basis tuples.

    The identity says every right multiplication z -> [z, y_2, .., y_n] is a
    derivation. A right multiplication by a tuple y that is not the tail of
    a stored product is zero and trivially satisfies it.
    """
    tails = defaultdict(dict)
    for t, val in A.tensor.items():
        tails[t[1:]][t[0]] = val
    violations = []
    for y in sorted(tails):
        for x, res in sorted(derivation_residuals(A, tails[y]).items()):
            violations.append((x, y, sparse_to_dense(res, A.dim)))
    return IdentityReport(not violations, violations, len(tails))


# ---------------------------------------------------------------------------
# constructions
# ---------------------------------------------------------------------------
def restrict(A: Algebra, S: Subspace, name: str = "") -> Algebra:
    """The subalgebra ``S`` as an algebra in its own right (RREF basis of S)."""
    if S.ambient_dim != A.dim:
        raise DimensionMismatch("subspace and algebra dims differ")
    if S.is_full():
        return A
    tensor = {}
    for t, val in contract(A, [S.basis] * A.arity).items():
        v = sparse_to_dense(val, A.dim)
        if not S.contains_vector(v):
            raise NotASubalgebra(f"product of basis tuple {t} leaves the subspace")
        coords = S.coordinates(v)
        sv = {i: c for i, c in enumerate(coords) if c}
        if sv:
            tensor[t] = sv
    names = tuple(f"b{i + 1}" for i in range(S.dim))
    return Algebra(A.arity, S.dim, tensor, names, name or f"{A.name}|sub", {"parent": A.name})


def quotient_algebra(A: Algebra, I: Subspace, check: bool = False) -> tuple[Algebra, LinearOperator]:
    """``A / I`` on the coordinate complement of I's pivots, plus the projection."""
    if I.ambient_dim != A.dim:
        raise DimensionMismatch("ideal and algebra dims differ")
    if check and not is_ideal(A, I):
        raise NotAnIdeal("subspace is not an ideal")
    comp = I.complement_indices()
    pos = {c: k for k, c in enumerate(comp)}
    q = len(comp)

    def project(v):
        r = I.reduce(v)
        return tuple(r[c] for c in comp)

    proj = LinearOperator.from_columns([project(unit_vector(A.dim, j)) for j in range(A.dim)], q) \
        if A.dim else LinearOperator(())
    tensor = {}
    for t, val in A.tensor.items():
        if all(i in pos for i in t):
            pv = project(sparse_to_dense(val, A.dim))
            sv = {k: c for k, c in enumerate(pv) if c}
            if sv:
                tensor[tuple(pos[i] for i in t)] = sv
    names = tuple(A.basis_names[c] for c in comp)
    Q = Algebra(A.arity, q, tensor, names, f"{A.name}/I" if A.name else "quotient",
                {"parent": A.name})
    return Q, proj


def squares_ideal(A: Algebra) -> Subspace:
    """Ideal generated by products with two equal arguments.

    Over Q that ideal is spanned, before closure, by products with a repeated
    basis index together with the symmetrized sums obtained by swapping two
    slots; quotienting by it yields a Lie n-algebra.
    """
    gens = SpanBuilder(A.dim)
    n = A.arity
    for t, val in A.tensor.items():
        if len(set(t)) < n:
            gens.add(sparse_to_dense(val, A.dim))
        for a, b in combinations(range(n), 2):
            if t[a] == t[b]:
                continue
            s = list(t)
            s[a], s[b] = s[b], s[a]
            other = A.tensor.get(tuple(s), {})
            tot = dict(val)
            for j, c in other.items():
                tot[j] = tot.get(j, ZERO) + c
            gens.add(sparse_to_dense(tot, A.dim))
    return ideal_closure(A, Subspace(A.dim, gens.rows(), gens.pivots()))


def direct_sum(A: Algebra, B: Algebra) -> Algebra:
    if A.arity != B.arity:
        raise ArityMismatch(f"arities {A.arity} and {B.arity}")
    off = A.dim
    tensor = {t: dict(v) for t, v in A.tensor.items()}
    for t, v in B.tensor.items():
        tensor[tuple(i + off for i in t)] = {j + off: c for j, c in v.items()}
    names = tuple(A.basis_names) + tuple(
        n if n not in A.basis_names else f"{n}'" for n in B.basis_names)
    return Algebra(A.arity, A.dim + B.dim, tensor, names, f"({A.name})+({B.name})",
                   {"blocks": [A.dim, B.dim]})


def change_of_basis(A: Algebra, P: LinearOperator) -> Algebra:
    """Transport the product to the basis formed by the columns of ``P``."""
    Pinv = P.inverse()  # raises SingularMatrix
    cols = P.columns()
    tensor = {}
    for t, val in contract(A, [cols] * A.arity).items():
        w = Pinv.apply(sparse_to_dense(val, A.dim))
        sv = {j: c for j, c in enumerate(w) if c}
        if sv:
            tensor[t] = sv
    names = tuple(f"f{i + 1}" for i in range(A.dim))
    return Algebra(A.arity, A.dim, tensor, names, f"{A.name}^P", {"parent": A.name})
