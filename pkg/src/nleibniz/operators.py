"""Right multiplications, derivations and the spectral decompositions they induce.

Tuples ``x = (x_2, .., x_n)`` are passed as sequences of coordinate vectors;
a plain int inside a tuple stands for that basis vector.
"""
from __future__ import annotations

import random
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian
from math import factorial
from typing import Iterable, Sequence

from .core import Algebra, contract, derivation_residuals, subspace_product
from .errors import (CapExceeded, DimensionMismatch, InternalInvariantViolation, NotADerivation,
                     NotAutomorphism, NotNilpotent)
from .linalg import (ONE, ZERO, LinearOperator, SpanBuilder, Subspace, Vector, compositions,
                     rational_roots, solve_homogeneous, sparse_to_dense, to_fraction, unit_vector)

MAX_POWER = 6


# ---------------------------------------------------------------------------
# right multiplication
# ---------------------------------------------------------------------------
def as_vectors(A: Algebra, x: Sequence) -> tuple:
    out = []
    for v in x:
        if isinstance(v, int):
            out.append(unit_vector(A.dim, v))
        else:
            if len(v) != A.dim:
                raise DimensionMismatch(f"vector of length {len(v)} for dim {A.dim}")
            out.append(tuple(to_fraction(c) for c in v))
    return tuple(out)


def _check_tuple(A: Algebra, x: Sequence):
    if len(x) != A.arity - 1:
        raise DimensionMismatch(f"need {A.arity - 1} vectors, got {len(x)}")


def right_mult(A: Algebra, x: Sequence) -> LinearOperator:
    """Matrix of ``z -> [z, x_2, .., x_n]``."""
    _check_tuple(A, x)
    x = as_vectors(A, x)
    cols = [[ZERO] * A.dim for _ in range(A.dim)]
    for t, val in contract(A, [None] + [[v] for v in x]).items():
        for j, c in val.items():
            cols[t[0]][j] += c
    return LinearOperator.from_columns(cols, A.dim)


def right_mult_basis(A: Algebra) -> dict:
    """``R(e_y)`` for every basis (n-1)-tuple ``y`` that gives a nonzero operator."""
    tails = defaultdict(dict)
    for t, val in A.tensor.items():
        tails[t[1:]][t[0]] = val
    out = {}
    for y, cols in sorted(tails.items()):
        out[y] = LinearOperator.from_columns(
            [sparse_to_dense(cols.get(j, {}), A.dim) for j in range(A.dim)], A.dim)
    return out


def operator_span(ops: Iterable[LinearOperator], d: int) -> list[LinearOperator]:
    """A basis (RREF in flattened coordinates) of the span of ``ops``."""
    sb = SpanBuilder(d * d)
    for op in ops:
        sb.add(op.flatten())
    return [LinearOperator.unflatten(r, d) for r in sb.rows()]


def right_mult_span(A: Algebra) -> list[LinearOperator]:
    """Basis of ``R(L)``, the span of all right multiplications."""
    return operator_span(right_mult_basis(A).values(), A.dim)


# ---------------------------------------------------------------------------
# derivations
# ---------------------------------------------------------------------------
def _sparse_columns(T: LinearOperator) -> dict:
    d = T.shape[1]
    return {j: {i: T.rows[i][j] for i in range(T.shape[0]) if T.rows[i][j]} for j in range(d)}


def derivation_defects(A: Algebra, T: LinearOperator) -> dict:
    """Basis tuples where ``T`` breaks the Leibniz rule, with the residual."""
    if T.shape != (A.dim, A.dim):
        raise DimensionMismatch(f"operator of shape {T.shape} for dim {A.dim}")
    return derivation_residuals(A, _sparse_columns(T))


def is_derivation(A: Algebra, T: LinearOperator) -> bool:
    return not derivation_defects(A, T)


def derivation_equations(A: Algebra) -> list[dict]:
    """Linear system for ``D`` with unknown ``D[r][j]`` at position ``r*d + j``.

    A tuple can only give a nontrivial equation if it is a stored key or
    differs from one in a single slot, so only that neighbourhood is listed.
    """
    d, n = A.dim, A.arity
    cands = set(A.tensor)
    for t in A.tensor:
        for i in range(n):
            for j in range(d):
                cands.add(t[:i] + (j,) + t[i + 1:])
    eqs = []
    for x in sorted(cands):
        rows: dict = defaultdict(lambda: defaultdict(lambda: ZERO))
        for l, c in A.tensor.get(x, {}).items():
            for k in range(d):
                rows[k][k * d + l] += c
        for i, xi in enumerate(x):
            for r in range(d):
                val = A.tensor.get(x[:i] + (r,) + x[i + 1:])
                if val:
                    for k, c in val.items():
                        rows[k][r * d + xi] -= c
        for eq in rows.values():
            eq = {v: c for v, c in eq.items() if c}
            if eq:
                eqs.append(eq)
    return eqs


def derivation_algebra(A: Algebra) -> list[LinearOperator]:
    """Basis of ``Der(L)``; each element is re-checked against the Leibniz rule."""
    d = A.dim
    basis = [LinearOperator.unflatten(v, d) for v in solve_homogeneous(derivation_equations(A), d * d)]
    for D in basis:
        if not is_derivation(A, D):
            raise InternalInvariantViolation("solver returned a non-derivation")
    return basis


def in_operator_span(T: LinearOperator, basis: Sequence[LinearOperator]) -> bool:
    d = T.shape[0]
    sb = SpanBuilder(d * d)
    for b in basis:
        sb.add(b.flatten())
    return not any(sb.reduce(T.flatten()))


def lie_closure_check(ops: Sequence[LinearOperator]) -> bool:
    """True iff every pairwise commutator stays in the span of ``ops``."""
    if not ops:
        return True
    d = ops[0].dim
    if any(op.shape != (d, d) for op in ops):
        raise DimensionMismatch("operators of different shapes")
    sb = SpanBuilder(d * d)
    for op in ops:
        sb.add(op.flatten())
    for a in range(len(ops)):
        for b in range(a + 1, len(ops)):
            if any(sb.reduce(ops[a].commutator(ops[b]).flatten())):
                return False
    return True


def lie_ideal_check(big: Sequence[LinearOperator], small: Sequence[LinearOperator]) -> bool:
    """True iff ``[D, S]`` lies in span(small) for every D in big, S in small."""
    if not small:
        return True
    d = small[0].dim
    if any(op.shape != (d, d) for op in list(big) + list(small)):
        raise DimensionMismatch("operators of different shapes")
    sb = SpanBuilder(d * d)
    for op in small:
        sb.add(op.flatten())
    return all(not any(sb.reduce(D.commutator(S).flatten())) for D in big for S in small)


# ---------------------------------------------------------------------------
# Fitting and root space decompositions
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class FittingPair:
    null_component: Subspace
    one_component: Subspace
    operator: LinearOperator

    def to_dict(self) -> dict:
        return {"null_dim": self.null_component.dim, "one_dim": self.one_component.dim}


def fitting_decomposition(T: LinearOperator) -> FittingPair:
    d = T.dim
    Td = T ** d
    null, one = Td.kernel(), Td.image()
    if null.dim + one.dim != d or not (null & one).is_zero():
        raise InternalInvariantViolation("Fitting components do not split the space")
    if not (T.image_of(null) <= null and T.image_of(one) <= one):
        raise InternalInvariantViolation("Fitting component not invariant")
    if null.dim and not (T.restrict(null) ** null.dim).is_zero():
        raise InternalInvariantViolation("operator not nilpotent on the null component")
    if one.dim and T.restrict(one).det() == 0:
        raise InternalInvariantViolation("operator not invertible on the one component")
    return FittingPair(null, one, T)


def fitting_null(T: LinearOperator) -> Subspace:
    return (T ** T.dim).kernel()


@dataclass(frozen=True)
class RootDecomposition:
    roots: tuple
    spaces: tuple
    operator: LinearOperator

    def space(self, alpha) -> Subspace:
        alpha = to_fraction(alpha)
        for r, s in zip(self.roots, self.spaces):
            if r == alpha:
                return s
        return Subspace.zero(self.operator.dim)

    def components(self, v: Sequence) -> dict:
        """Split ``v`` into its root components ``{alpha: v_alpha}``."""
        d = self.operator.dim
        basis, owner = [], []
        for r, s in zip(self.roots, self.spaces):
            basis.extend(s.basis)
            owner.extend([r] * s.dim)
        M = LinearOperator.from_columns(basis, d)
        coeffs = M.inverse().apply(v)
        out = {r: [ZERO] * d for r in self.roots}
        for c, b, r in zip(coeffs, basis, owner):
            if c:
                acc = out[r]
                for i, x in enumerate(b):
                    acc[i] += c * x
        return {r: tuple(w) for r, w in out.items()}

    def to_dict(self) -> dict:
        from .linalg import format_scalar
        return {"roots": [format_scalar(r) for r in self.roots],
                "dims": [s.dim for s in self.spaces]}


def root_space_decomposition(T: LinearOperator) -> RootDecomposition:
    """Generalized eigenspaces ``ker (T - a)^d`` over the rational spectrum."""
    d = T.dim
    roots = rational_roots(T.charpoly())  # raises NonSplitSpectrum
    spaces = []
    for r, mult in roots.items():
        S = ((T - LinearOperator.identity(d).scale(r)) ** d).kernel()
        if S.dim != mult:
            raise InternalInvariantViolation(f"root {r}: space of dim {S.dim}, multiplicity {mult}")
        spaces.append(S)
    return RootDecomposition(tuple(roots), tuple(spaces), T)


def root_product_rule_check(A: Algebra, D: RootDecomposition) -> bool:
    """``[L_a1, .., L_an]`` lies in ``L_{a1+..+an}`` (zero if that is not a root)."""
    if not is_derivation(A, D.operator):
        raise NotADerivation("root decomposition of a non-derivation")
    pairs = list(zip(D.roots, D.spaces))
    for combo in cartesian(pairs, repeat=A.arity):
        total = sum((r for r, _ in combo), ZERO)
        prod = subspace_product(A, *(s for _, s in combo))
        if not prod <= D.space(total):
            return False
    return True


# ---------------------------------------------------------------------------
# zero weight part and the eigenvalue corollary
# ---------------------------------------------------------------------------
def zero_weight_part(A: Algebra, x: Sequence) -> tuple[LinearOperator, RootDecomposition]:
    """Sum of ``R(x_2^b2, .., x_n^bn)`` over root labels with ``b2+..+bn = 0``."""
    x = as_vectors(A, x)
    R = right_mult(A, x)
    D = root_space_decomposition(R)
    comps = [D.components(v) for v in x]
    B = LinearOperator.zero(A.dim)
    for labels in cartesian(D.roots, repeat=len(x)):
        if sum(labels, ZERO) != 0:
            continue
        parts = [comps[i][b] for i, b in enumerate(labels)]
        if any(not any(p) for p in parts):
            continue
        B = B + right_mult(A, parts)
    return B, D


def zero_weight_decomposition_check(A: Algebra, x: Sequence) -> bool:
    B, D = zero_weight_part(A, x)
    return B == D.operator


def small_combination_vanishes(roots: Sequence[Fraction], bound: int):
    """A non-negative integer vector mu, 0 < |mu| <= bound, with sum mu_i a_i = 0, or None."""
    roots = list(roots)
    for total in range(1, bound + 1):
        for mu in compositions(total, len(roots)):
            if sum((m * a for m, a in zip(mu, roots)), ZERO) == 0:
                return mu
    return None


@dataclass
class EigenWitnessReport:
    nonzero_roots: tuple
    condition_holds: bool
    vanishing_combination: tuple | None
    projections: tuple          # b_i = (x_i)_0
    projection_works: bool      # L_0(R(b)) = L_0(R(x))
    found: bool
    witness: tuple | None
    exhaustive_checked: int = 0  # basis tuples of L_0 searched when the projection fails

    def to_dict(self) -> dict:
        from .linalg import format_scalar
        return {"nonzero_roots": [format_scalar(r) for r in self.nonzero_roots],
                "condition_holds": self.condition_holds,
                "vanishing_combination": list(self.vanishing_combination)
                if self.vanishing_combination else None,
                "projection_works": self.projection_works, "found": self.found,
                "witness": [[format_scalar(c) for c in v] for v in self.witness]
                if self.witness else None,
                "exhaustive_checked": self.exhaustive_checked}


def eigen_witness_search(A: Algebra, x: Sequence, exhaustive: bool = True,
                     cap: int = 100000) -> EigenWitnessReport:
    """Look for ``b`` in ``L_0(R(x))`` with the same Fitting null component.

    First tries the zero-root projections of the ``x_i``; when that fails
    and ``exhaustive`` is set, all (n-1)-tuples of RREF basis vectors of
    ``L_0`` are tried.
    """
    x = as_vectors(A, x)
    R = right_mult(A, x)
    D = root_space_decomposition(R)
    L0 = D.space(0) if 0 in D.roots else Subspace.zero(A.dim)
    nonzero = tuple(r for r in D.roots if r != 0)
    mu = small_combination_vanishes(nonzero, A.arity - 1)
    if 0 in D.roots:
        b = tuple(D.components(v)[ZERO] for v in x)
    else:
        b = tuple((ZERO,) * A.dim for _ in x)
    target = fitting_null(R)
    works = fitting_null(right_mult(A, b)) == target
    if works:
        return EigenWitnessReport(nonzero, mu is None, mu, b, True, True, b)
    checked = 0
    if exhaustive and L0.dim:
        if L0.dim ** len(x) > cap:
            raise CapExceeded(f"{L0.dim}^{len(x)} basis tuples exceeds cap {cap}")
        for combo in cartesian(L0.basis, repeat=len(x)):
            checked += 1
            if fitting_null(right_mult(A, combo)) == target:
                return EigenWitnessReport(nonzero, mu is None, mu, b, False, True, tuple(combo), checked)
    return EigenWitnessReport(nonzero, mu is None, mu, b, False, False, None, checked)


# ---------------------------------------------------------------------------
# regular elements
# ---------------------------------------------------------------------------
@dataclass
class RegularElementReport:
    best_tuple: tuple
    null_dim: int
    trials: int
    pool: str
    seed: int
    basis_tuples: int = 0
    null_dims_seen: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        from .linalg import format_scalar
        return {"best_tuple": [[format_scalar(c) for c in v] for v in self.best_tuple],
                "null_dim": self.null_dim, "trials": self.trials, "seed": self.seed,
                "pool": self.pool, "basis_tuples": self.basis_tuples,
                "null_dims_seen": {str(k): v for k, v in sorted(self.null_dims_seen.items())}}


def regular_element_search(A: Algebra, trials: int = 64, seed: int = 0,
                           coord_range: int = 3) -> RegularElementReport:
    """Minimise ``dim L_0(R(h))`` over basis tuples plus seeded random integer tuples.

    Basis tuples whose operator vanishes have null dimension ``d`` and are
    counted without building a matrix.
    """
    if trials < 0:
        raise ValueError("trials must be non-negative")
    d, k = A.dim, A.arity - 1
    seen: dict = defaultdict(int)
    nonzero = right_mult_basis(A)
    best = None
    n_basis = d ** k
    if len(nonzero) < n_basis:
        seen[d] += n_basis - len(nonzero)
        zero_tail = next(t for t in cartesian(range(d), repeat=k) if t not in nonzero) if d else ()
        best = (d, tuple(unit_vector(d, i) for i in zero_tail))
    for y, R in nonzero.items():
        nd = fitting_null(R).dim
        seen[nd] += 1
        if best is None or nd < best[0]:
            best = (nd, tuple(unit_vector(d, i) for i in y))
    rng = random.Random(seed)
    for _ in range(trials):
        h = tuple(tuple(Fraction(rng.randint(-coord_range, coord_range)) for _ in range(d))
                  for _ in range(k))
        nd = fitting_null(right_mult(A, h)).dim
        seen[nd] += 1
        if best is None or nd < best[0]:
            best = (nd, h)
    if best is None:
        best = (d, tuple((ZERO,) * d for _ in range(k)))
    pool = f"all {n_basis} basis tuples + {trials} random tuples with coordinates in [-{coord_range},{coord_range}]"
    return RegularElementReport(best[1], best[0], trials, pool, seed, n_basis, dict(seen))


# ---------------------------------------------------------------------------
# Engel
# ---------------------------------------------------------------------------
@dataclass
class EngelReport:
    one_nilpotent: bool
    envelope_nilpotent: bool
    series_dims: tuple
    envelope_word_dims: tuple     # dims of span of words of length 1, 2, ..
    witness: tuple | None         # basis tuple with non-nilpotent R, if any
    witness_roots: tuple | None

    @property
    def agree(self) -> bool:
        return self.one_nilpotent == self.envelope_nilpotent

    def to_dict(self) -> dict:
        from .linalg import format_scalar
        return {"one_nilpotent": self.one_nilpotent, "envelope_nilpotent": self.envelope_nilpotent,
                "agree": self.agree, "series_dims": list(self.series_dims),
                "envelope_word_dims": list(self.envelope_word_dims),
                "witness": list(self.witness) if self.witness else None,
                "witness_roots": [format_scalar(r) for r in self.witness_roots]
                if self.witness_roots is not None else None}


def envelope_words(A: Algebra) -> tuple[bool, tuple]:
    """Is the associative algebra generated by all ``R(x)`` nilpotent?

    Words of length l span W_l = W_{l-1} R(L). A nilpotent envelope is
    strictly triangular in a suitable basis, so W_d = 0; conversely W_l = 0
    for some l means nilpotent. W_{l+1} = W_l != 0 proves it never dies.
    """
    d = A.dim
    gens = right_mult_span(A)
    dims = []
    W = gens
    for _ in range(max(d, 1)):
        dims.append(len(W))
        if not W:
            return True, tuple(dims)
        nxt = operator_span((w @ g for w in W for g in gens), d)
        if [o.flatten() for o in nxt] == [o.flatten() for o in W]:
            dims.append(len(nxt))
            return False, tuple(dims)
        W = nxt
    dims.append(len(W))
    return not W, tuple(dims)


def engel_check(A: Algebra) -> EngelReport:
    from .series import s_central_series  # local: series imports nothing from here
    chain = s_central_series(A, 1)
    env, words = envelope_words(A)
    witness = roots = None
    for y, R in right_mult_basis(A).items():
        if not R.is_nilpotent():
            witness = y
            try:
                roots = tuple(rational_roots(R.charpoly()))
            except ValueError:
                roots = None
            break
    return EngelReport(chain.terminated, env, chain.dims, words, witness, roots)


# ---------------------------------------------------------------------------
# derivation powers and special automorphisms
# ---------------------------------------------------------------------------
def _apply_sparse(T: LinearOperator, sv: dict) -> dict:
    out: dict = defaultdict(lambda: ZERO)
    for j, c in sv.items():
        for i in range(T.shape[0]):
            x = T.rows[i][j]
            if x:
                out[i] += x * c
    return {i: c for i, c in out.items() if c}


def _add_into(acc: dict, key, sv: dict, scale=ONE):
    tgt = acc.setdefault(key, {})
    for j, c in sv.items():
        tgt[j] = tgt.get(j, ZERO) + scale * c


def _clean(table: dict) -> dict:
    out = {}
    for t, sv in table.items():
        sv = {j: c for j, c in sv.items() if c}
        if sv:
            out[t] = sv
    return out


def derivation_power_check(A: Algebra, T: LinearOperator, k: int) -> bool:
    """``T^k [x_1..x_n] = sum multinomial(k; i) [T^i1 x_1, .., T^in x_n]`` on basis tuples."""
    if k > MAX_POWER:
        raise CapExceeded(f"k={k} above the cap {MAX_POWER}")
    if k < 0:
        raise ValueError("k must be non-negative")
    if not is_derivation(A, T):
        raise NotADerivation("operator is not a derivation")
    d, n = A.dim, A.arity
    powers = [LinearOperator.identity(d)]
    for _ in range(k):
        powers.append(powers[-1] @ T)
    Tk = powers[k]
    lhs = {t: _apply_sparse(Tk, val) for t, val in A.tensor.items()}
    lhs = _clean(lhs)
    rhs: dict = {}
    cols = [p.columns() for p in powers]
    for comp in compositions(k, n):
        coef = Fraction(factorial(k))
        for i in comp:
            coef /= factorial(i)
        for t, val in contract(A, [cols[i] for i in comp]).items():
            _add_into(rhs, t, val, coef)
    return lhs == _clean(rhs)


def exp_nilpotent(N: LinearOperator) -> LinearOperator:
    d = N.dim
    out = LinearOperator.identity(d)
    term = LinearOperator.identity(d)
    for j in range(1, d + 1):
        term = (term @ N).scale(Fraction(1, j))
        if term.is_zero():
            break
        out = out + term
    return out


def is_automorphism(A: Algebra, X: LinearOperator) -> bool:
    """``X [a_1..a_n] = [X a_1, .., X a_n]`` on all basis tuples, and X invertible."""
    if X.det() == 0:
        return False
    lhs = _clean({t: _apply_sparse(X, val) for t, val in A.tensor.items()})
    rhs = contract(A, [X.columns()] * A.arity)
    return lhs == _clean(rhs)


def exp_special_automorphism(A: Algebra, x: Sequence) -> LinearOperator:
    R = right_mult(A, x)
    if not R.is_nilpotent():
        raise NotNilpotent("R(x) is not nilpotent")
    X = exp_nilpotent(R)
    if not is_automorphism(A, X):
        raise NotAutomorphism("exp R(x) does not preserve the product")
    if X @ exp_nilpotent(-R) != LinearOperator.identity(A.dim):
        raise NotAutomorphism("exp(-R(x)) is not the inverse")
    return X


# names used by the interface listing
cor_eigen_search = eigen_witness_search
CorEigenReport = EigenWitnessReport
