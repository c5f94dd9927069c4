"""Radicals as certified lower bounds.

Each radical is the sum of all ideals with a property (k-solvable,
s-nilpotent, nilpotent, K1-nilpotent). Sums of such ideals keep the
property, so greedily adding candidate ideals that have it yields an ideal
inside the true radical. The sum is re-verified after every step.

For s-nilpotency and nilpotency an ideal is treated as an algebra in its
own right, so its series uses only the ideal in every slot. The k-derived
and K1 series already mention L explicitly and are used as defined.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .core import Algebra, ideal_closure, is_ideal, restrict
from .errors import (BadParams, CapExceeded, InternalClosureViolation, NotADerivation, NotAnIdeal,
                     PropertyMissing)
from .linalg import LinearOperator, Subspace
from .operators import is_derivation, right_mult_basis, root_space_decomposition
from .series import derived_power, k1_series, k_derived_series, lower_series, s_central_series

KINDS = ("k_solvable", "s_nilpotent", "nilpotent", "k1_nilpotent")
EXPONENT_CAP = 64


def _norm_kind(kind, param):
    if kind not in KINDS:
        raise BadParams(f"unknown radical kind {kind!r}; known: {KINDS}")
    if kind in ("k_solvable", "s_nilpotent"):
        if param is None:
            raise BadParams(f"{kind} needs a parameter")
        return kind, int(param)
    return kind, None


def has_property(A: Algebra, J: Subspace, kind: str, param: int | None = None) -> bool:
    kind, param = _norm_kind(kind, param)
    if J.is_zero():
        return True
    if kind == "k_solvable":
        return k_derived_series(A, J, param, check_ideal=False).terminated
    if kind == "k1_nilpotent":
        return k1_series(A, J).terminated
    B = restrict(A, J)
    if kind == "s_nilpotent":
        return s_central_series(B, param).terminated
    return lower_series(B).terminated


@dataclass
class RadicalReport:
    kind: str
    param: int | None
    value: Subspace
    exact: bool
    exact_reason: str
    candidates_used: list = field(default_factory=list)   # labels of the added candidates
    candidates_tried: int = 0
    seed: int = 0
    trials: int = 0

    def to_dict(self) -> dict:
        return {"kind": self.kind, "param": self.param, "dim": self.value.dim,
                "exact": self.exact, "exact_reason": self.exact_reason,
                "soundness": "lower bound: an ideal with the property inside the radical",
                "basis": [[str(c) for c in b] for b in self.value.basis],
                "candidates_used": list(self.candidates_used),
                "candidates_tried": self.candidates_tried, "seed": self.seed,
                "trials": self.trials}


def candidate_ideals(A: Algebra, seed: int = 0, trials: int = 16) -> list:
    """Fixed, seed-reproducible pool of distinct ideals as (label, ideal) pairs.

    Seeds are basis lines, root spaces of the distinct basis right
    multiplications, and random lines; each seed is closed to an ideal.
    """
    d = A.dim
    seeds = [(f"closure({A.basis_names[i]})", Subspace.span([A.basis_vector(i)], d))
             for i in range(d)]
    ops_seen = set()
    for y, R in right_mult_basis(A).items():
        if R in ops_seen:
            continue
        ops_seen.add(R)
        try:
            D = root_space_decomposition(R)
        except ValueError:
            continue
        for r, S in zip(D.roots, D.spaces):
            seeds.append((f"closure(root {r} of R{tuple(y)})", S))
    rng = random.Random(seed)
    for t in range(trials):
        v = tuple(Fraction(rng.randint(-3, 3)) for _ in range(d))
        if any(v):
            seeds.append((f"closure(random #{t})", Subspace.span([v], d)))
    out, seen_seed, seen = [], set(), set()
    for label, S in seeds:
        if S in seen_seed:
            continue
        seen_seed.add(S)
        C = ideal_closure(A, S)
        if C not in seen:
            seen.add(C)
            out.append((label, C))
    return out


def radical(A: Algebra, kind: str, param: int | None = None, seed: int = 0,
            trials: int = 16, pool: list | None = None) -> RadicalReport:
    kind, param = _norm_kind(kind, param)
    full = A.full()
    if has_property(A, full, kind, param):
        return RadicalReport(kind, param, full, True, "L has the property", ["L"], 1, seed, trials)
    value = Subspace.zero(A.dim)
    used, tried = [], 0
    if pool is None:
        pool = candidate_ideals(A, seed, trials)
    for label, C in pool:
        tried += 1
        if C <= value:
            continue
        if not has_property(A, C, kind, param):
            continue
        S = value + C
        if not has_property(A, S, kind, param):
            raise InternalClosureViolation(f"sum of two {kind} ideals lost the property")
        value = S
        used.append(label)
    if not is_ideal(A, value):
        raise InternalClosureViolation("radical value is not an ideal")
    exact, why = False, "lower bound"
    if value.codim == 1:
        exact, why = True, "codimension 1 and L lacks the property"
    return RadicalReport(kind, param, value, exact, why, used, tried, seed, trials)


# ---------------------------------------------------------------------------
# checks built on the radical properties
# ---------------------------------------------------------------------------
@dataclass
class SumCheck:
    passed: bool
    containments: list = field(default_factory=list)   # per k: chain term inside the bound

    def __bool__(self):
        return self.passed


def sum_property_check(A: Algebra, I: Subspace, J: Subspace, kind: str,
                       param: int | None = None) -> SumCheck:
    kind, param = _norm_kind(kind, param)
    for name, X in (("I", I), ("J", J)):
        if not has_property(A, X, kind, param):
            raise PropertyMissing(f"{name} lacks the {kind} property")
    ok = has_property(A, I + J, kind, param)
    steps = []
    if kind == "k1_nilpotent":
        ci, cj, cs = k1_series(A, I), k1_series(A, J), k1_series(A, I + J)
        zero = Subspace.zero(A.dim)

        def term(chain, k):  # 1-based, zero past termination
            return chain.terms[k - 1] if k <= len(chain.terms) else (
                zero if chain.terminated else chain.last)

        for k in range(1, len(cs.terms) + 1):
            bound = term(ci, k) + term(cj, k)
            for r in range(1, k):
                bound = bound + (term(ci, k - r) & term(cj, r))
            inside = term(cs, k) <= bound
            steps.append(inside)
            ok = ok and inside
    return SumCheck(ok, steps)


def invariance_check(A: Algebra, J: Subspace, ders: Sequence[LinearOperator]) -> bool:
    return all(T.image_of(J) <= J for T in ders)


def ideal_plus_image_check(A: Algebra, I: Subspace, T: LinearOperator) -> bool:
    if not is_derivation(A, T):
        raise NotADerivation("operator is not a derivation")
    if not is_ideal(A, I):
        raise NotAnIdeal("subspace is not an ideal")
    return is_ideal(A, I + T.image_of(I))


def derivation_power_inclusion_check(A: Algebra, I: Subspace, T: LinearOperator, m: int, k: int) -> bool:
    """``(T(I))^(m)_k`` lies in ``I + T^(k^(m-1)) (I^(m)_k)``."""
    if m < 1:
        raise BadParams("m must be >= 1")
    e = k ** (m - 1)
    if e > EXPONENT_CAP:
        raise CapExceeded(f"exponent {k}^{m - 1} = {e} above the cap {EXPONENT_CAP}")
    if not is_derivation(A, T):
        raise NotADerivation("operator is not a derivation")
    if not is_ideal(A, I):
        raise NotAnIdeal("subspace is not an ideal")
    lhs = derived_power(A, T.image_of(I), k, m)
    rhs = I + (T ** e).image_of(derived_power(A, I, k, m))
    return lhs <= rhs


def all_radicals(A: Algebra, seed: int = 0, trials: int = 16) -> list[RadicalReport]:
    """Every kind with every admissible parameter (k, s in 1..n)."""
    pool = candidate_ideals(A, seed, trials)
    out = []
    for k in range(1, A.arity + 1):
        out.append(radical(A, "k_solvable", k, seed, trials, pool))
    for s in range(1, A.arity + 1):
        out.append(radical(A, "s_nilpotent", s, seed, trials, pool))
    out.append(radical(A, "nilpotent", None, seed, trials, pool))
    out.append(radical(A, "k1_nilpotent", None, seed, trials, pool))
    return out


# names used by the interface listing
prop44_inclusion_check = derivation_power_inclusion_check
