"""Cartan subalgebras: verification, the Fitting-null criterion and search.

A subalgebra C is Cartan when it is 1-nilpotent as an algebra in its own
right and equals its own normalizer ``N_1(C)`` in L. Every found subalgebra
is re-verified through :func:`is_cartan` before it enters a report, so the
dimension spectrum lists only checked Cartan subalgebras.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product as cartesian

from .core import Algebra, is_alternating, restrict
from .errors import BadParams, InternalInvariantViolation, NotACartan, NotASubalgebra, NotNilpotent
from .linalg import Subspace, format_scalar, intersect_all
from .operators import as_vectors, fitting_null, right_mult, right_mult_basis
from .series import s_central_series
from .structure import is_subalgebra, s_normalizer, subalgebra_closure

VERIFIED_CANDIDATE = "verified_candidate"
FROM_REGULAR = "from_regular_element"
SEARCH = "search"


@dataclass
class CartanReport:
    subalgebra: Subspace
    one_nilpotent_index: int | None   # None when the s=1 series of C stabilizes above zero
    normalizer_equal: bool
    source: str
    label: str = ""
    note: str = ""

    @property
    def valid(self) -> bool:
        return self.one_nilpotent_index is not None and self.normalizer_equal

    @property
    def dim(self) -> int:
        return self.subalgebra.dim

    def to_dict(self) -> dict:
        return {"label": self.label, "source": self.source, "dim": self.dim, "valid": self.valid,
                "one_nilpotent_index": self.one_nilpotent_index,
                "normalizer_equal": self.normalizer_equal, "note": self.note,
                "basis": [[format_scalar(c) for c in b] for b in self.subalgebra.basis]}


def _one_nilpotent_index(A: Algebra, C: Subspace) -> int | None:
    chain = s_central_series(restrict(A, C), 1)
    return chain.index if chain.terminated else None


def is_cartan(A: Algebra, C: Subspace, source: str = VERIFIED_CANDIDATE,
              label: str = "") -> CartanReport:
    if not is_subalgebra(A, C):
        raise NotASubalgebra("Cartan candidate is not closed under the product")
    idx = _one_nilpotent_index(A, C)
    N = s_normalizer(A, C, 1)
    return CartanReport(C, idx, N == C, source, label)


def _basis_tuples(A: Algebra, C: Subspace):
    """Right multiplications R(c) for all (n-1)-tuples of basis vectors of C."""
    for combo in cartesian(C.basis, repeat=A.arity - 1):
        yield right_mult(A, combo)


def common_fitting_null(A: Algebra, C: Subspace) -> Subspace:
    """Intersection of ``L_0(R(c))`` over basis (n-1)-tuples c of C."""
    spaces, seen = [], set()
    for R in _basis_tuples(A, C):
        if R in seen:
            continue
        seen.add(R)
        spaces.append(fitting_null(R))
    return intersect_all(spaces, A.dim)


def fitting_cartan_criterion(A: Algebra, C: Subspace) -> bool:
    """A 1-nilpotent subalgebra is Cartan iff it is the common Fitting null space of R(C)."""
    if not is_subalgebra(A, C):
        raise NotASubalgebra("criterion needs a subalgebra")
    if _one_nilpotent_index(A, C) is None:
        raise NotNilpotent("criterion needs a 1-nilpotent subalgebra")
    return common_fitting_null(A, C) == C


def cartan_from_regular(A: Algebra, h) -> CartanReport:
    """Take ``L_0 = L_0(R(h))``; it is Cartan when every h_i lies in L_0.

    When the membership condition fails the subalgebra is still reported,
    with ``source`` marked and a note explaining the refusal.
    """
    h = as_vectors(A, h)
    L0 = fitting_null(right_mult(A, h))
    label = "L_0(R(h))"
    if not is_subalgebra(A, L0):
        return CartanReport(L0, None, False, FROM_REGULAR, label,
                            "refused: L_0 is not a subalgebra")
    rep = is_cartan(A, L0, FROM_REGULAR, label)
    if not all(L0.contains_vector(v) for v in h):
        rep.note = "refused: some h_i lies outside L_0, Cartan property not claimed"
        return rep
    if rep.one_nilpotent_index is None:
        # happens for non-regular h, e.g. R(h) nilpotent gives L_0 = L
        rep.note = "refused: L_0 is not 1-nilpotent, so h is not regular"
        return rep
    if not rep.normalizer_equal:
        # x in N_1(L_0) gives R(h)x in L_0, hence x in the generalized null space
        raise InternalInvariantViolation("1-nilpotent L_0 containing h is not self-normalizing")
    return rep


# ---------------------------------------------------------------------------
# the candidate families of the non-conjugacy example
# ---------------------------------------------------------------------------
def example_5_4_candidates(n: int = 4, m: int = 5, s: int = 2) -> dict[str, Subspace]:
    """Coordinate subspaces H_1..H_3, N_i, M_1, M_2 and C_i for parameters (n, m, s).

    Basis order is e_1..e_{n+1}, x_1..x_m. The index ranges only give the
    intended dimensions when 2 <= s <= n-2 and s <= m; other parameters
    are refused instead of guessed.
    """
    if n < 4 or not 2 <= s <= n - 2 or s > m:
        raise BadParams(f"candidate families need n >= 4, 2 <= s <= n-2 and s <= m; "
                        f"got n={n}, m={m}, s={s}")
    d = n + 1 + m

    def e(*ps):  # 1-based e indices
        return [p - 1 for p in ps]

    def x(*ks):
        return [n + k for k in ks]

    def rng(a, b):
        return list(range(a, b + 1))

    fam = {
        "H_1": e(*rng(1, n - 1)),
        "H_2": e(*rng(1, s), *rng(s + 2, n - 1), n),
        "H_3": e(*rng(1, s), *rng(s + 3, n - 1), n + 1),
    }
    for i in range(1, s):
        fam[f"N_{i}"] = e(*rng(1, i - 1)) + x(i) + e(*rng(i + 1, n))
    fam["M_1"] = e(*rng(1, s - 1), *rng(s + 1, n)) + x(*rng(s, m))
    fam["M_2"] = e(*rng(1, s - 1), *rng(s + 2, n + 1)) + x(*rng(s, m))
    for i in range(1, s):
        fam[f"C_{i}"] = e(*rng(1, i - 1)) + x(i) + e(*rng(i + 1, s - 1), *rng(s + 1, n + 1)) + \
            x(*rng(s, m))
    return {k: Subspace.coordinate(sorted(set(v)), d) for k, v in fam.items()}


@dataclass
class NonConjugacyEvidence:
    reports: list = field(default_factory=list)       # verified CartanReports, deduplicated
    dimension_spectrum: tuple = ()
    rejected: list = field(default_factory=list)      # (label, reason) of candidates that failed
    seed: int = 0
    trials: int = 0

    @property
    def non_conjugate(self) -> bool:
        # automorphisms preserve dimension
        return len(self.dimension_spectrum) >= 2

    def to_dict(self) -> dict:
        return {"dimension_spectrum": list(self.dimension_spectrum),
                "non_conjugate": self.non_conjugate, "seed": self.seed, "trials": self.trials,
                "reports": [r.to_dict() for r in self.reports],
                "rejected": [list(r) for r in self.rejected]}


def cartan_search(A: Algebra, pool: dict | None = None, seed: int = 0,
                  trials: int = 64) -> NonConjugacyEvidence:
    """Verify candidates from three sources and collect the dimension spectrum.

    ``pool`` maps labels to candidate subspaces. When omitted and A is an
    instance of the non-conjugacy example, its listed families are used.
    Then come Fitting null spaces of distinct basis right multiplications
    and of seeded random tuples, then subalgebra closures of random lines
    and planes.
    """
    found: dict = {}
    rejected = []

    def consider(label, C, source):
        if C in found:
            return
        try:
            if source == FROM_REGULAR:
                rep = cartan_from_regular(A, C)     # C is a tuple here
                C = rep.subalgebra
                if C in found:
                    return
                if "refused" in rep.note:
                    rejected.append((label, rep.note))
                    return
            else:
                rep = is_cartan(A, C, source)
        except NotASubalgebra:
            rejected.append((label, "not a subalgebra"))
            return
        rep.label = label
        if rep.valid:
            found[C] = rep
        else:
            rejected.append((label, "not 1-nilpotent" if rep.one_nilpotent_index is None
                             else "normalizer strictly larger"))

    if pool is None and A.metadata.get("family") == "example_5_4":
        p = A.metadata["params"]
        try:
            pool = example_5_4_candidates(p["n"], p["m"], p["s"])
        except BadParams:
            pool = None
    for label, C in (pool or {}).items():
        consider(label, C, VERIFIED_CANDIDATE)

    d, k = A.dim, A.arity - 1
    rng = random.Random(seed)
    seen_ops = set()
    for y, R in sorted(right_mult_basis(A).items()):
        if R in seen_ops:
            continue
        seen_ops.add(R)
        consider(f"L_0(R{tuple(A.basis_names[i] for i in y)})",
                 tuple(A.basis_vector(i) for i in y), FROM_REGULAR)
    for t in range(trials):
        h = tuple(tuple(Fraction(rng.randint(-3, 3)) for _ in range(d)) for _ in range(k))
        consider(f"L_0(R(random #{t}))", h, FROM_REGULAR)
    if not right_mult_basis(A):
        consider("L_0(R(0))", tuple((Fraction(0),) * d for _ in range(k)), FROM_REGULAR)
    for t in range(trials):
        vecs = [tuple(Fraction(rng.randint(-2, 2)) for _ in range(d)) for _ in range(1 + t % 2)]
        S = Subspace.span(vecs, d)
        if S.is_zero():
            continue
        consider(f"closure(random #{t})", subalgebra_closure(A, S), SEARCH)

    reports = sorted(found.values(), key=lambda r: (r.dim, r.source != VERIFIED_CANDIDATE, r.label))
    spectrum = tuple(sorted({r.dim for r in reports}))
    return NonConjugacyEvidence(reports, spectrum, rejected, seed, trials)


def block_decomposition_check(C: Subspace, block_dims) -> bool:
    """True when C is the direct sum of its intersections with the coordinate blocks."""
    start, parts = 0, []
    for bd in block_dims:
        parts.append(C & Subspace.coordinate(range(start, start + bd), C.ambient_dim))
        start += bd
    if start != C.ambient_dim:
        raise BadParams("block dimensions do not add up to the ambient dimension")
    total = Subspace.zero(C.ambient_dim)
    for P in parts:
        total = total + P
    return total == C


# ---------------------------------------------------------------------------
# conditions for a regular element inside a Cartan subalgebra
# ---------------------------------------------------------------------------
@dataclass
class RegularWitnessReport:
    skew_first_two: bool
    kernel_condition: bool
    kernel_counterexample: tuple | None
    witness: tuple | None
    searched: int

    def to_dict(self) -> dict:
        def fmt(t):
            return None if t is None else [[format_scalar(c) for c in v] for v in t]
        return {"skew_first_two": self.skew_first_two, "kernel_condition": self.kernel_condition,
                "kernel_counterexample": fmt(self.kernel_counterexample),
                "witness": fmt(self.witness), "searched": self.searched}


def regular_witness_check(A: Algebra, H: Subspace, seed: int = 0,
                             trials: int = 64) -> RegularWitnessReport:
    """Check skew symmetry in slots 1, 2 and ``h_i in Ker R(h)`` on H, then look for a witness.

    The witness is an (n-1)-tuple h from H with ``H = L_0(R(h))``.
    """
    try:
        rep = is_cartan(A, H)
    except NotASubalgebra:
        raise NotACartan("H is not a subalgebra") from None
    if not rep.valid:
        raise NotACartan("H is not a Cartan subalgebra")
    skew = is_alternating(A, (0, 1))
    counter = None
    for combo in cartesian(H.basis, repeat=A.arity - 1):
        K = right_mult(A, combo).kernel()
        if not all(K.contains_vector(v) for v in combo):
            counter = tuple(combo)
            break
    kernel_ok = counter is None
    witness, searched = None, 0
    if skew and kernel_ok:
        rng = random.Random(seed)
        candidates = list(cartesian(H.basis, repeat=A.arity - 1))
        for _ in range(trials):
            candidates.append(tuple(
                tuple(sum((Fraction(rng.randint(-3, 3)) * b[j] for b in H.basis), Fraction(0))
                      for j in range(A.dim))
                for _ in range(A.arity - 1)))
        if not candidates:
            candidates = [()]
        for h in candidates:
            searched += 1
            if fitting_null(right_mult(A, h)) == H:
                witness = tuple(h)
                break
    return RegularWitnessReport(skew, kernel_ok, counter, witness, searched)


# names used by the interface listing
thm58_precondition_check = regular_witness_check
