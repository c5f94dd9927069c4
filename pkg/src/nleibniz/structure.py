"""Ideals, normalizers, maximal subalgebras, Frattini and Jacobson radicals.

Statements that cannot be decided exactly come with a soundness level:
``proven_codim1`` (a closed hyperplane is maximal by dimension),
``probabilistic`` (random extension probes, seed and trial count recorded)
or ``unverified``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction

from .core import (Algebra, _check_slot, contract, ideal_closure, is_ideal, quotient_algebra,
                   slot_product, squares_ideal, subspace_product)
from .errors import InternalInvariantViolation, NotAnIdeal, PreconditionFailed
from .linalg import Subspace, intersect_all, solve_homogeneous, sparse_to_dense
from .operators import as_vectors, fitting_null, right_mult
from .series import is_k_solvable, is_nilpotent

PROVEN = "proven_codim1"
PROBABILISTIC = "probabilistic"
UNVERIFIED = "unverified"

__all__ = [
    "is_s_ideal", "is_ideal", "ideal_closure", "s_normalizer", "normalizer", "is_subalgebra",
    "subalgebra_closure", "maximal_subalgebra_search", "frattini", "frattini_ideal",
    "frattini_quotient_bound", "frattini_pipeline", "is_simple", "jacobson_radical",
    "self_normalizing_check", "MaximalityCertificate", "FrattiniReport", "SimplicityCertificate",
]


def is_s_ideal(A: Algebra, S: Subspace, s: int) -> bool:
    return slot_product(A, S, s) <= S


def derived_algebra(A: Algebra) -> Subspace:
    """``[L, L, .., L]``."""
    return subspace_product(A, *([A.full()] * A.arity))


# ---------------------------------------------------------------------------
# pull-backs: {a : [f_1, .., a (slot s), .., f_n] in target for f_i in family_i}
# ---------------------------------------------------------------------------
def _pullback(A: Algebra, families: list, s: int, target: Subspace) -> Subspace:
    """Solve for ``a``; ``families[i]`` is None for all of L or a list of vectors."""
    fams = list(families)
    fams[s] = None
    eqs = []
    ann = target.annihilator()
    if not ann:
        return A.full()
    # group products by the indices of the other slots; slot s keeps the basis index
    grouped: dict = {}
    for t, val in contract(A, fams).items():
        key = t[:s] + t[s + 1:]
        grouped.setdefault(key, {})[t[s]] = val
    for cols in grouped.values():
        for phi in ann:
            eq = {}
            for j, val in cols.items():
                c = sum((phi[k] * x for k, x in val.items()), Fraction(0))
                if c:
                    eq[j] = c
            if eq:
                eqs.append(eq)
    return Subspace.span(solve_homogeneous(eqs, A.dim), A.dim)


def s_normalizer(A: Algebra, X: Subspace, s: int) -> Subspace:
    """``N_s(X)``: elements that land in X in slot s against tuples from X."""
    _check_slot(A, s)
    if X.is_zero():
        return A.full()
    return _pullback(A, [list(X.basis)] * A.arity, s - 1, X)


def normalizer(A: Algebra, X: Subspace) -> Subspace:
    N = intersect_all((s_normalizer(A, X, s) for s in range(1, A.arity + 1)), A.dim)
    if is_subalgebra(A, X) and not X <= N:
        raise InternalInvariantViolation("normalizer of a subalgebra misses the subalgebra")
    return N


def is_subalgebra(A: Algebra, S: Subspace) -> bool:
    return subspace_product(A, *([S] * A.arity)) <= S


def subalgebra_closure(A: Algebra, S: Subspace) -> Subspace:
    cur = S
    while True:
        nxt = cur + subspace_product(A, *([cur] * A.arity))
        if nxt == cur:
            return cur
        cur = nxt


# ---------------------------------------------------------------------------
# maximal subalgebras
# ---------------------------------------------------------------------------
@dataclass(frozen=True)
class MaximalityCertificate:
    subalgebra: Subspace
    level: str
    trials: int = 0
    seed: int | None = None
    source: str = ""

    def __post_init__(self):
        if self.level == PROVEN and self.subalgebra.codim != 1:
            raise InternalInvariantViolation("proven_codim1 needs codimension 1")

    def to_dict(self) -> dict:
        return {"dim": self.subalgebra.dim, "level": self.level, "trials": self.trials,
                "seed": self.seed, "source": self.source,
                "basis": [[str(c) for c in b] for b in self.subalgebra.basis]}


def _random_vector(rng: random.Random, d: int, r: int = 3) -> tuple:
    return tuple(Fraction(rng.randint(-r, r)) for _ in range(d))


def _random_outside(rng: random.Random, S: Subspace, r: int = 3) -> tuple:
    while True:
        v = _random_vector(rng, S.ambient_dim, r)
        if not S.contains_vector(v):
            return v


def _probe_maximal(A: Algebra, S: Subspace, rng: random.Random, trials: int):
    """Return None if every probe generates L, else a larger proper subalgebra."""
    full = A.full()
    for _ in range(trials):
        v = _random_outside(rng, S)
        T = subalgebra_closure(A, S + Subspace.span([v], A.dim))
        if T != full:
            return T
    return None


def maximal_subalgebra_search(A: Algebra, seed: int = 0, trials: int = 64,
                              samples: int = 8) -> list[MaximalityCertificate]:
    """Closed coordinate hyperplanes, plus random-start candidates probed for maximality."""
    d = A.dim
    certs: list[MaximalityCertificate] = []
    seen: set = set()
    if d == 0:
        return certs
    for skip in range(d):
        H = Subspace.coordinate([i for i in range(d) if i != skip], d)
        if is_subalgebra(A, H):
            certs.append(MaximalityCertificate(H, PROVEN, source=f"coordinate hyperplane without {A.basis_names[skip]}"))
            seen.add(H)
    rng = random.Random(seed)
    full = A.full()
    for _ in range(samples):
        S = subalgebra_closure(A, Subspace.span([_random_vector(rng, d)], d))
        if S == full:
            continue
        while True:
            if S in seen:
                break
            if S.codim == 1:
                certs.append(MaximalityCertificate(S, PROVEN, source="random start"))
                seen.add(S)
                break
            bigger = _probe_maximal(A, S, rng, trials)
            if bigger is None:
                certs.append(MaximalityCertificate(S, PROBABILISTIC, trials, seed, "random start"))
                seen.add(S)
                break
            S = bigger
    return certs


# ---------------------------------------------------------------------------
# Frattini subalgebra and ideal
# ---------------------------------------------------------------------------
def frattini_ideal(A: Algebra, X: Subspace) -> Subspace:
    """Largest ideal of A inside X (greatest fixed point)."""
    cur = X
    for _ in range(A.dim + 1):
        nxt = cur
        for s in range(A.arity):
            nxt = nxt & _pullback(A, [None] * A.arity, s, cur)
        if nxt == cur:
            if not is_ideal(A, cur):
                raise InternalInvariantViolation("Frattini ideal iteration produced a non-ideal")
            return cur
        cur = nxt
    raise InternalInvariantViolation("Frattini ideal iteration did not settle")


EXACT_THEOREM = "exact_by_theorem"
EXACT_ZERO = "exact_zero_bound"
UPPER = "upper_bound"


@dataclass
class FrattiniReport:
    """``value`` is a proven statement about F(L): exact, or an upper bound.

    Only ``proven_codim1`` certificates enter ``value``. The intersection
    that also uses probabilistically maximal candidates is kept apart in
    ``probable_value``; it is evidence, not a bound.
    """
    value: Subspace
    exactness: str
    frattini_ideal: Subspace
    certificates: list = field(default_factory=list)
    rules: list = field(default_factory=list)
    probable_value: Subspace | None = None

    @property
    def exact(self) -> bool:
        return self.exactness != UPPER

    def to_dict(self) -> dict:
        return {"dim": self.value.dim, "exactness": self.exactness,
                "basis": [[str(c) for c in b] for b in self.value.basis],
                "frattini_ideal_dim": self.frattini_ideal.dim,
                "probable_dim": None if self.probable_value is None else self.probable_value.dim,
                "certificates": [c.to_dict() for c in self.certificates],
                "rules": list(self.rules)}


def frattini(A: Algebra, certs: list | None = None, seed: int = 0,
             trials: int = 64) -> FrattiniReport:
    P = derived_algebra(A)
    if is_nilpotent(A)[0]:
        return FrattiniReport(P, EXACT_THEOREM, frattini_ideal(A, P), [],
                              ["nilpotent: F(L) = phi(L) = J(L) = [L,..,L]"], P)
    if certs is None:
        certs = maximal_subalgebra_search(A, seed, trials)
    proven = [c for c in certs if c.level == PROVEN]
    value = intersect_all([c.subalgebra for c in proven] + [A.full()], A.dim)
    probable = intersect_all([c.subalgebra for c in certs] + [A.full()], A.dim)
    exactness = EXACT_ZERO if value.is_zero() else UPPER
    return FrattiniReport(value, exactness, frattini_ideal(A, value), list(certs),
                          [f"F(L) lies in each of {len(proven)} proven maximal subalgebras"],
                          probable)


@dataclass
class SimplicityCertificate:
    simple: bool
    level: str                  # "probabilistic" or "disproved"
    trials: int
    seed: int
    derived_full: bool
    basis_closures_full: bool
    witness_ideal: Subspace | None = None
    reason: str = ""

    def __bool__(self):
        return self.simple

    def to_dict(self) -> dict:
        return {"simple": self.simple, "level": self.level, "trials": self.trials,
                "seed": self.seed, "derived_full": self.derived_full,
                "basis_closures_full": self.basis_closures_full,
                "witness_ideal_dim": None if self.witness_ideal is None else self.witness_ideal.dim,
                "reason": self.reason}


def is_simple(A: Algebra, seed: int = 0, trials: int = 64) -> SimplicityCertificate:
    """No proper nonzero ideal and ``[L,..,L] != 0``.

    A basis or random vector whose ideal closure is proper disproves
    simplicity; surviving all probes is only probabilistic evidence.
    """
    d = A.dim
    full = A.full()
    if d == 0:
        return SimplicityCertificate(False, "disproved", 0, seed, False, False, None, "zero algebra")
    P = derived_algebra(A)
    if P.is_zero():
        w = Subspace.span([A.basis_vector(0)], d) if d > 1 else None
        return SimplicityCertificate(False, "disproved", 0, seed, False, False, w,
                                     "zero product")
    if P != full:
        return SimplicityCertificate(False, "disproved", 0, seed, False, False, P,
                                     "[L,..,L] is a proper ideal")
    basis_ok = True
    for i in range(d):
        C = ideal_closure(A, Subspace.span([A.basis_vector(i)], d))
        if C != full:
            return SimplicityCertificate(False, "disproved", 0, seed, True, False, C,
                                         f"ideal generated by {A.basis_names[i]} is proper")
    rng = random.Random(seed)
    for t in range(trials):
        v = _random_vector(rng, d)
        if not any(v):
            continue
        C = ideal_closure(A, Subspace.span([v], d))
        if C != full:
            return SimplicityCertificate(False, "disproved", t + 1, seed, True, True, C,
                                         "random vector generates a proper ideal")
    return SimplicityCertificate(True, PROBABILISTIC, trials, seed, True, basis_ok, None,
                                 "every probed ideal closure is L")


@dataclass
class QuotientBound:
    bound: Subspace
    fired: bool
    reason: str
    quotient_frattini_dim: int | None
    simplicity: SimplicityCertificate | None = None

    def to_dict(self) -> dict:
        return {"fired": self.fired, "bound_dim": self.bound.dim, "reason": self.reason,
                "quotient_frattini_dim": self.quotient_frattini_dim,
                "simplicity": None if self.simplicity is None else self.simplicity.to_dict()}


def frattini_quotient_bound(A: Algebra, B: Subspace, seed: int = 0,
                            trials: int = 64) -> QuotientBound:
    """If ``F(L/B) = 0`` then ``F(L)`` lies in ``B``.

    ``F(L/B) = 0`` is established either directly (nilpotent quotient or a
    zero intersection of certified maximal subalgebras) or by the rule that
    a simple Lie n-algebra has zero Frattini subalgebra, which fires only
    on a positive simplicity certificate.
    """
    if not is_ideal(A, B):
        raise NotAnIdeal("quotient bound needs an ideal B")
    full = A.full()
    if B == full:
        return QuotientBound(full, True, "B = L", 0)
    Q, _ = quotient_algebra(A, B)
    simp = None
    if Q.is_lie():
        simp = is_simple(Q, seed, trials)
        if simp.simple:
            return QuotientBound(B, True, "L/B is a simple Lie n-algebra, so F(L/B) = 0", 0, simp)
    FQ = frattini(Q, seed=seed, trials=trials)
    if FQ.value.is_zero():
        return QuotientBound(B, True, f"F(L/B) = 0 ({FQ.exactness})", 0, simp)
    return QuotientBound(full, False, "F(L/B) not shown to vanish", FQ.value.dim, simp)


def frattini_pipeline(A: Algebra, B: Subspace | None = None, seed: int = 0,
                      trials: int = 64) -> tuple[FrattiniReport, QuotientBound | None]:
    """Frattini report tightened by the quotient rule; B defaults to the squares ideal."""
    rep = frattini(A, seed=seed, trials=trials)
    if rep.exact and B is None:
        return rep, None
    if B is None:
        B = squares_ideal(A)
    qb = frattini_quotient_bound(A, B, seed, trials)
    if not qb.fired:
        return rep, qb
    value = rep.value & qb.bound
    rules = rep.rules + [f"F(L) lies in B: {qb.reason}"]
    exactness = EXACT_ZERO if value.is_zero() else UPPER
    return FrattiniReport(value, exactness, frattini_ideal(A, value), rep.certificates, rules,
                          rep.probable_value & qb.bound), qb


# ---------------------------------------------------------------------------
# Jacobson radical
# ---------------------------------------------------------------------------
@dataclass
class JacobsonReport:
    value: Subspace
    exact: bool
    solvable_k: int | None
    maximal_ideals: list = field(default_factory=list)   # [(Subspace, reason)]

    def to_dict(self) -> dict:
        return {"dim": self.value.dim, "exact": self.exact, "solvable_k": self.solvable_k,
                "basis": [[str(c) for c in b] for b in self.value.basis],
                "maximal_ideals": [{"dim": S.dim, "reason": r} for S, r in self.maximal_ideals]}


def jacobson_radical(A: Algebra, seed: int = 0, trials: int = 64) -> JacobsonReport:
    P = derived_algebra(A)
    for k in range(1, A.arity + 1):
        if is_k_solvable(A, A.full(), k)[0]:
            return JacobsonReport(P, True, k, [])
    found = []
    if P != A.full():
        found.append((P, "every hyperplane over [L,..,L] is a maximal ideal"))
    S = squares_ideal(A)
    if S != A.full():
        Q, _ = quotient_algebra(A, S)
        cert = is_simple(Q, seed, trials)
        if cert.simple:
            found.append((S, f"L/I is simple ({cert.level}, trials={cert.trials}, seed={seed})"))
    value = intersect_all([s for s, _ in found] + [A.full()], A.dim)
    if not value <= P:
        raise InternalInvariantViolation("Jacobson bound escapes [L,..,L]")
    return JacobsonReport(value, False, None, found)


# ---------------------------------------------------------------------------
# self-normalizing subalgebras over a Fitting null component
# ---------------------------------------------------------------------------
@dataclass
class NormalizerCheck:
    passed: bool
    null_component: Subspace
    checked: list = field(default_factory=list)   # [(dim U, N(U) == U)]

    def __bool__(self):
        return self.passed


def self_normalizing_check(A: Algebra, x, certs: list | None = None, seed: int = 0,
                   trials: int = 64) -> NormalizerCheck:
    """N(U) = U for every known subalgebra U containing ``L_0(R(x))``."""
    xv = as_vectors(A, x)
    L0 = fitting_null(right_mult(A, xv))
    if not all(L0.contains_vector(v) for v in xv):
        raise PreconditionFailed("x_2, .., x_n must lie in L_0(R(x))")
    if certs is None:
        certs = maximal_subalgebra_search(A, seed, trials)
    cands = [L0, A.full()] + [c.subalgebra for c in certs if L0 <= c.subalgebra]
    seen, checked, ok = set(), [], True
    for U in cands:
        if U in seen or not is_subalgebra(A, U):
            continue
        seen.add(U)
        eq = normalizer(A, U) == U
        checked.append((U.dim, eq))
        ok = ok and eq
    return NormalizerCheck(ok, L0, checked)


# names used by the interface listing
prop_315_check = self_normalizing_check
