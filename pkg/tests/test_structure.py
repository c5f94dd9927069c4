import pytest

from nleibniz.core import is_ideal, quotient_algebra
from nleibniz.errors import NotAnIdeal, PreconditionFailed
from nleibniz.structure import (EXACT_THEOREM, EXACT_ZERO, PROVEN, UPPER, frattini,
                                frattini_ideal, frattini_pipeline, frattini_quotient_bound,
                                is_s_ideal, is_simple, is_subalgebra, jacobson_radical,
                                maximal_subalgebra_search, normalizer, self_normalizing_check,
                                s_normalizer, subalgebra_closure)


def test_s_ideals(catalog):
    A = catalog["example_5_2"]
    I = A.coordinate(["x1", "x2"])
    assert all(is_s_ideal(A, I, s) for s in (1, 2, 3))
    for X in (A.zero(), A.full()):
        assert all(is_s_ideal(A, X, s) for s in (1, 2, 3))
    fix = catalog["example_3_10"]
    e2 = fix.coordinate([1])
    assert is_s_ideal(fix, e2, 1) and is_ideal(fix, e2)


def test_normalizers(catalog):
    A = catalog["example_5_4"]
    X = A.coordinate(["e1", "e2", "e3"])
    assert s_normalizer(A, X, 1) == X
    assert normalizer(A, A.full()).is_full()
    fix = catalog["example_3_10"]
    assert s_normalizer(fix, fix.coordinate([1, 2, 3]), 1).is_full()


def test_subalgebras(catalog):
    A = catalog["example_5_4"]
    assert is_subalgebra(A, A.zero()) and is_subalgebra(A, A.full())
    four = A.coordinate(["e1", "e2", "e3", "e4"])
    assert not is_subalgebra(A, four)
    # products of e's only output e's, so the closure stops at the e-span
    assert subalgebra_closure(A, four) == A.coordinate(["e1", "e2", "e3", "e4", "e5"])


def test_maximal_subalgebra_certificates(catalog):
    A = catalog["example_5_2"]
    proven = {c.subalgebra for c in maximal_subalgebra_search(A) if c.level == PROVEN}
    for k in ("x1", "x2"):
        L_k = A.coordinate([n for n in A.basis_names if n != k])
        assert L_k in proven
    ab = catalog["abelian"]
    proven_ab = {c.subalgebra for c in maximal_subalgebra_search(ab) if c.level == PROVEN}
    assert all(ab.coordinate([j for j in range(3) if j != i]) in proven_ab for i in range(3))
    ch = catalog["chain"]
    assert ch.coordinate([1, 2, 3]) in {c.subalgebra for c in maximal_subalgebra_search(ch)
                                        if c.level == PROVEN}


def test_frattini_values(catalog):
    ch = catalog["chain"]
    rep = frattini(ch)
    assert rep.value == ch.coordinate([1, 2, 3]) and rep.exactness == EXACT_THEOREM
    ab = frattini(catalog["abelian"])
    assert ab.value.is_zero() and ab.frattini_ideal.is_zero()
    A = catalog["example_5_2"]
    up = frattini(A)
    assert up.value <= A.coordinate(["e1", "e2", "e3", "e4"])


def test_probabilistic_certificates_do_not_tighten_the_value(catalog):
    A = catalog["example_5_2"]
    rep = frattini(A)
    proven = [c.subalgebra for c in rep.certificates if c.level == PROVEN]
    for S in proven:
        assert rep.value <= S
    assert rep.probable_value <= rep.value


def test_quotient_rule(catalog):
    A = catalog["example_5_2"]
    I = A.coordinate(["x1", "x2"])
    qb = frattini_quotient_bound(A, I)
    assert qb.fired and qb.bound == I and qb.simplicity.simple
    assert frattini_quotient_bound(A, A.full()).fired
    ch = catalog["chain"]
    qc = frattini_quotient_bound(ch, ch.coordinate([1, 2, 3]))
    assert qc.fired and frattini(ch).value <= qc.bound
    with pytest.raises(NotAnIdeal):
        frattini_quotient_bound(A, A.coordinate(["e1"]))


def test_frattini_pipeline_example_5_2(catalog):
    rep, qb = frattini_pipeline(catalog["example_5_2"], seed=0, trials=64)
    assert rep.value.is_zero() and rep.exactness == EXACT_ZERO
    assert qb is not None and qb.simplicity.simple


def test_simplicity(catalog):
    A = catalog["example_5_2"]
    Q, _ = quotient_algebra(A, A.coordinate(["x1", "x2"]))
    assert is_simple(Q).simple
    assert not is_simple(catalog["abelian"]).simple
    ch = is_simple(catalog["chain"])
    assert not ch.simple and is_ideal(catalog["chain"], ch.witness_ideal)


def test_frattini_ideal_is_largest_ideal_inside(catalog):
    ch = catalog["chain"]
    X = ch.coordinate([1, 2, 3])
    assert frattini_ideal(ch, X) == X
    A = catalog["example_5_2"]
    assert frattini_ideal(A, A.coordinate(["e1", "x1"])) == A.coordinate(["x1"])


def test_jacobson(catalog):
    ch = catalog["chain"]
    J = jacobson_radical(ch)
    assert J.exact and J.value == ch.coordinate([1, 2, 3])
    assert jacobson_radical(catalog["abelian"]).value.is_zero()
    A = catalog["example_5_2"]
    from nleibniz.structure import derived_algebra
    assert jacobson_radical(A).value <= derived_algebra(A)


def test_self_normalizing_over_null_component(catalog):
    assert self_normalizing_check(catalog["example_3_10"], (0, 0)).passed
    assert self_normalizing_check(catalog["chain"], (0, 0)).passed
    with pytest.raises(PreconditionFailed):
        self_normalizing_check(catalog["example_3_11"], (0, 1, 2))
