import pytest

from nleibniz.catalog import chain
from nleibniz.core import direct_sum, ideal_closure
from nleibniz.errors import CapExceeded, NotADerivation, NotAnIdeal, PropertyMissing
from nleibniz.linalg import LinearOperator
from nleibniz.operators import derivation_algebra, right_mult
from nleibniz.radicals import (all_radicals, candidate_ideals, ideal_plus_image_check,
                               invariance_check, derivation_power_inclusion_check, radical,
                               sum_property_check)


def test_radical_values(catalog):
    A = catalog["example_5_2"]
    I = A.coordinate(["x1", "x2"])
    r = radical(A, "k_solvable", 2)
    assert I <= r.value
    for kind in ("k_solvable", "s_nilpotent", "nilpotent", "k1_nilpotent"):
        ab = radical(catalog["abelian"], kind, 1)
        assert ab.value.is_full() and ab.exact
    B = catalog["example_5_4"]
    nil = radical(B, "nilpotent")
    assert nil.value == B.coordinate([f"x{k}" for k in range(1, 6)])


def test_candidate_pool_is_reproducible(catalog):
    A = catalog["example_3_11"]
    assert candidate_ideals(A, 5) == candidate_ideals(A, 5)


def test_sum_property(catalog):
    A = catalog["example_5_2"]
    I1 = ideal_closure(A, A.coordinate(["x1"]))
    I2 = ideal_closure(A, A.coordinate(["x2"]))
    assert sum_property_check(A, I1, I2, "k_solvable", 2)
    assert sum_property_check(A, I1, I1, "k_solvable", 2)
    cc = direct_sum(chain(4, 3), chain(4, 3))
    assert sum_property_check(cc, cc.coordinate(range(4)), cc.coordinate(range(4, 8)), "nilpotent")
    fix = catalog["example_3_10"]
    Ifix = fix.coordinate([1, 2, 3])
    assert sum_property_check(fix, Ifix, fix.coordinate([1]), "k1_nilpotent")
    with pytest.raises(PropertyMissing):
        sum_property_check(A, A.full(), I1, "k_solvable", 1)


def test_invariance(catalog):
    for name in ("example_5_2", "example_3_10"):
        A = catalog[name]
        ders = derivation_algebra(A)
        for rep in all_radicals(A):
            assert invariance_check(A, rep.value, ders)
    fix = catalog["example_3_10"]
    assert invariance_check(fix, fix.zero(), derivation_algebra(fix))


def test_ideal_plus_image(catalog):
    A = catalog["example_5_2"]
    I = A.coordinate(["x1", "x2"])
    for T in derivation_algebra(A):
        assert ideal_plus_image_check(A, I, T)
    assert ideal_plus_image_check(A, I, LinearOperator.zero(A.dim))
    ch = catalog["chain"]
    R = right_mult(ch, (0, 0))
    assert ideal_plus_image_check(ch, ch.coordinate([2, 3]), R)
    assert R.image_of(ch.coordinate([2, 3])) == ch.coordinate([3])
    with pytest.raises(NotAnIdeal):
        ideal_plus_image_check(A, A.coordinate(["e1"]), LinearOperator.zero(A.dim))
    with pytest.raises(NotADerivation):
        ideal_plus_image_check(A, I, LinearOperator.identity(A.dim))


def test_derivation_power_inclusion(catalog):
    A = catalog["example_5_2"]
    I = A.coordinate(["x1", "x2"])
    T = derivation_algebra(A)[0]
    assert derivation_power_inclusion_check(A, I, LinearOperator.zero(A.dim), 2, 2)
    assert derivation_power_inclusion_check(A, I, T, 1, 2)
    assert derivation_power_inclusion_check(A, I, T, 2, 2)
    with pytest.raises(CapExceeded):
        derivation_power_inclusion_check(A, I, T, 8, 2)
