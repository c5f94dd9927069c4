"""Descending series of a Leibniz n-algebra and the predicates built on them.

Every series here is produced by a monotone map on subspaces, so once two
consecutive terms agree the chain is constant from then on. A stabilized
nonzero term is therefore an exact certificate that zero is never reached.
"""
from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .core import Algebra, is_ideal, slot_product, subspace_product
from .errors import BadK, InternalClosureViolation, NotAnIdeal, NotAOneIdeal
from .linalg import Subspace

TERMINATED = "terminated_at_zero"
STABILIZED = "stabilized"
TRUNCATED = "truncated"


@dataclass(frozen=True)
class SeriesChain:
    """Terms start at index 1 (``terms[0]`` is the starting set).

    ``index`` depends on ``status``: the 1-based index of the first zero
    term, the first index of the repeating term, or the length cap. A
    stabilized chain ends with the repeated term listed twice.
    """
    kind: str
    param: int | None
    terms: tuple
    status: str
    index: int

    @property
    def dims(self) -> tuple:
        return tuple(t.dim for t in self.terms)

    @property
    def terminated(self) -> bool:
        return self.status == TERMINATED

    @property
    def last(self) -> Subspace:
        return self.terms[-1]

    def to_dict(self) -> dict:
        return {"kind": self.kind, "param": self.param, "dims": list(self.dims),
                "status": self.status, "index": self.index}


def _run(kind: str, param, start: Subspace, step: Callable[[Subspace], Subspace],
         max_len: int, check: Callable[[Subspace], None] | None = None) -> SeriesChain:
    terms = [start]
    while True:
        cur = terms[-1]
        if cur.is_zero():
            return SeriesChain(kind, param, tuple(terms), TERMINATED, len(terms))
        if len(terms) >= max_len:
            return SeriesChain(kind, param, tuple(terms), TRUNCATED, max_len)
        nxt = step(cur)
        if not nxt <= cur:
            raise InternalClosureViolation(f"{kind} series failed to descend at term {len(terms) + 1}")
        if check is not None:
            check(nxt)
        if nxt == cur:
            # keep the repeat so the dims show the fixed point, e.g. (4, 3, 3)
            return SeriesChain(kind, param, tuple(terms) + (nxt,), STABILIZED, len(terms))
        terms.append(nxt)


def _cap(A: Algebra, max_len: int | None) -> int:
    return A.dim + 1 if max_len is None else max(1, max_len)


def s_central_series(A: Algebra, s: int, max_len: int | None = None) -> SeriesChain:
    """``L^<k+1>_s = [L, .., L^<k>_s (slot s), .., L]``."""
    slot_product(A, A.zero(), s)  # validates s
    return _run("s_central", s, A.full(), lambda T: slot_product(A, T, s), _cap(A, max_len))


def lower_series(A: Algebra, max_len: int | None = None) -> SeriesChain:
    """``L^{k+1}`` is the sum over every slot i of ``[L, .., L^k (slot i), .., L]``."""
    def step(T):
        out = Subspace.zero(A.dim)
        for i in range(1, A.arity + 1):
            out = out + slot_product(A, T, i)
        return out
    return _run("lower", None, A.full(), step, _cap(A, max_len))


def placements(n: int, k: int):
    """All ways to choose the k slots (0-based) that carry the previous term."""
    return combinations(range(n), k)


def derived_step(A: Algebra, T: Subspace, k: int) -> Subspace:
    full = A.full()
    out = Subspace.zero(A.dim)
    for slots in placements(A.arity, k):
        spaces = [full] * A.arity
        for i in slots:
            spaces[i] = T
        out = out + subspace_product(A, *spaces)
    return out


def _check_k(A: Algebra, k: int):
    if not 1 <= k <= A.arity:
        raise BadK(f"k={k} outside 1..{A.arity}")


def k_derived_series(A: Algebra, H: Subspace, k: int, max_len: int | None = None,
                     check_ideal: bool = True) -> SeriesChain:
    _check_k(A, k)
    if check_ideal and not is_ideal(A, H):
        raise NotAnIdeal("k-derived series needs an ideal H")
    return _run("k_derived", k, H, lambda T: derived_step(A, T, k), _cap(A, max_len))


def is_one_ideal(A: Algebra, S: Subspace) -> bool:
    return slot_product(A, S, 1) <= S


def k1_series(A: Algebra, I: Subspace, max_len: int | None = None) -> SeriesChain:
    """``I^[k+1] = [I^[k], I, L, .., L]``; every term is checked to be a 1-sided ideal."""
    if not is_one_ideal(A, I):
        raise NotAOneIdeal("K1 series needs a 1-sided ideal")
    full = A.full()

    def step(T):
        return subspace_product(A, T, I, *([full] * (A.arity - 2)))

    def check(T):
        if not is_one_ideal(A, T):
            raise InternalClosureViolation("K1 term is not a 1-sided ideal")

    return _run("k1", None, I, step, _cap(A, max_len), check)


# ---------------------------------------------------------------------------
# predicates: (verdict, index) with index = nilpotency index or the
# stabilization index when the verdict is False
# ---------------------------------------------------------------------------
def _verdict(chain: SeriesChain) -> tuple[bool, int]:
    return chain.terminated, chain.index


def is_s_nilpotent(A: Algebra, s: int, max_len: int | None = None) -> tuple[bool, int]:
    return _verdict(s_central_series(A, s, max_len))


def is_nilpotent(A: Algebra, max_len: int | None = None) -> tuple[bool, int]:
    return _verdict(lower_series(A, max_len))


def is_k_solvable(A: Algebra, H: Subspace, k: int, max_len: int | None = None) -> tuple[bool, int]:
    return _verdict(k_derived_series(A, H, k, max_len))


def is_k1_nilpotent(A: Algebra, I: Subspace, max_len: int | None = None) -> tuple[bool, int]:
    return _verdict(k1_series(A, I, max_len))


def derived_power(A: Algebra, H: Subspace, k: int, m: int) -> Subspace:
    """``H^(m)_k`` (1-based: m=1 returns H)."""
    _check_k(A, k)
    if m < 1:
        raise BadK(f"series index m={m} must be >= 1")
    cur = H
    for _ in range(m - 1):
        if cur.is_zero():
            break
        cur = derived_step(A, cur, k)
    return cur
