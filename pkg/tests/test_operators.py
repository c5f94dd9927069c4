from fractions import Fraction

import pytest

from _oracles import dense_derivation_dim
from nleibniz.errors import CapExceeded, NonSplitSpectrum, NotADerivation, NotNilpotent
from nleibniz.linalg import LinearOperator, Subspace
from nleibniz.operators import (eigen_witness_search, derivation_algebra, derivation_power_check,
                                engel_check, exp_special_automorphism, fitting_decomposition,
                                in_operator_span, is_automorphism, is_derivation,
                                lie_closure_check, lie_ideal_check, regular_element_search,
                                right_mult, right_mult_span, root_product_rule_check,
                                root_space_decomposition, zero_weight_decomposition_check)

EXPECTED_DER_DIMS = {"example_3_10": 9, "example_3_11": 4, "example_5_2": 8,
                     "example_5_4": 20, "abelian": 9, "chain": 4}


def test_right_mult_values(catalog):
    assert right_mult(catalog["example_3_10"], (0, 0)) == LinearOperator.diagonal([0, 1, 1, 1])
    assert right_mult(catalog["example_3_11"], (0, 1, 2)) == \
        LinearOperator.diagonal([0, 1, -1, 2, 3])
    A = catalog["example_3_10"]
    assert right_mult(A, ((0,) * 4, A.basis_vector(0))).is_zero()


def test_right_mult_is_derivation(catalog):
    for name, A in catalog.items():
        if name == "example_5_4":
            continue
        for R in right_mult_span(A):
            assert is_derivation(A, R), name


def test_example_5_4_right_mults_are_not_all_derivations(catalog):
    # the printed table fails the identity, so some R(y) is not a derivation
    A = catalog["example_5_4"]
    assert not all(is_derivation(A, R) for R in right_mult_span(A))


def test_identity_operator_as_derivation(catalog):
    assert is_derivation(catalog["abelian"], LinearOperator.identity(3))
    assert not is_derivation(catalog["example_3_10"], LinearOperator.identity(4))


def test_derivation_dims_and_oracle(catalog):
    for name, A in catalog.items():
        ders = derivation_algebra(A)
        assert len(ders) == EXPECTED_DER_DIMS[name], name
        assert all(is_derivation(A, T) for T in ders)
    for name in ("example_3_10", "example_3_11", "example_5_2", "abelian", "chain"):
        assert dense_derivation_dim(catalog[name]) == EXPECTED_DER_DIMS[name], name


def test_der_contains_r_and_is_lie(catalog):
    A = catalog["example_3_10"]
    ders = derivation_algebra(A)
    assert in_operator_span(LinearOperator.diagonal([0, 1, 1, 1]), ders)
    assert lie_closure_check(ders)
    assert lie_closure_check([LinearOperator.identity(3)])
    B = catalog["example_5_2"]
    assert lie_ideal_check(derivation_algebra(B), right_mult_span(B))


def test_fitting_decomposition():
    fp = fitting_decomposition(LinearOperator.diagonal([0, 1, 1, 1]))
    assert (fp.null_component.dim, fp.one_component.dim) == (1, 3)
    fz = fitting_decomposition(LinearOperator.zero(3))
    assert fz.null_component.is_full() and fz.one_component.is_zero()
    J = LinearOperator.from_rows([(0, 1, 0), (0, 0, 1), (0, 0, 0)])
    fj = fitting_decomposition(J)
    assert fj.null_component.dim == 3 and fj.one_component.dim == 0


def test_root_spaces():
    D = root_space_decomposition(LinearOperator.diagonal([0, 1, 1, 1]))
    assert dict(zip(D.roots, (s.dim for s in D.spaces))) == {0: 1, 1: 3}
    Z = root_space_decomposition(LinearOperator.zero(3))
    assert Z.roots == (0,) and Z.spaces[0].is_full()
    with pytest.raises(NonSplitSpectrum):
        root_space_decomposition(LinearOperator.from_rows([(0, -1), (1, 0)]))


def test_root_product_rule(catalog):
    for name, x in (("example_3_10", (0, 0)), ("example_3_11", (0, 1, 2)), ("abelian", (0, 1))):
        A = catalog[name]
        assert root_product_rule_check(A, root_space_decomposition(right_mult(A, x)))
    A = catalog["example_3_10"]
    fake = root_space_decomposition(LinearOperator.identity(4))
    with pytest.raises(NotADerivation):
        root_product_rule_check(A, fake)


def test_zero_weight_decomposition(catalog):
    assert zero_weight_decomposition_check(catalog["example_3_10"], (0, 0))
    assert zero_weight_decomposition_check(catalog["example_3_11"], (0, 1, 2))
    assert zero_weight_decomposition_check(catalog["abelian"], (0, 1))


def test_eigen_witness_dichotomy(catalog):
    fix = eigen_witness_search(catalog["example_3_10"], (0, 0))
    assert fix.condition_holds and fix.found
    ab = eigen_witness_search(catalog["abelian"], (0, 1))
    assert ab.condition_holds and ab.found
    bad = eigen_witness_search(catalog["example_3_11"], (0, 1, 2))
    assert not bad.condition_holds and not bad.found and bad.witness is None
    assert tuple(bad.vanishing_combination) == (1, 1, 0, 0)


def test_regular_elements(catalog):
    assert regular_element_search(catalog["example_3_10"]).null_dim == 1
    assert regular_element_search(catalog["abelian"]).null_dim == 3
    rep = regular_element_search(catalog["example_5_4"], trials=16)
    assert rep.null_dim == 3
    assert regular_element_search(catalog["chain"], seed=3).to_dict() == \
        regular_element_search(catalog["chain"], seed=3).to_dict()


def test_engel(catalog):
    for name, A in catalog.items():
        assert engel_check(A).agree, name
    ch = engel_check(catalog["chain"])
    assert ch.one_nilpotent and ch.envelope_nilpotent
    fix = engel_check(catalog["example_3_10"])
    assert not fix.one_nilpotent and set(fix.witness_roots) == {0, 1}


def test_derivation_powers(catalog):
    A = catalog["example_3_10"]
    R = right_mult(A, (0, 0))
    assert derivation_power_check(A, R, 1) and derivation_power_check(A, R, 2)
    B = catalog["abelian"]
    assert derivation_power_check(B, LinearOperator.from_rows([(1, 2, 0), (0, 1, 0), (3, 0, 0)]), 3)
    with pytest.raises(CapExceeded):
        derivation_power_check(A, R, 7)
    with pytest.raises(NotADerivation):
        derivation_power_check(A, LinearOperator.identity(4), 2)


def test_special_automorphisms(catalog):
    A = catalog["example_3_10"]
    assert exp_special_automorphism(A, ((0,) * 4, (0,) * 4)) == LinearOperator.identity(4)
    ch = catalog["chain"]
    X = exp_special_automorphism(ch, (0, 0))
    assert is_automorphism(ch, X)
    assert all(X.rows[i][j] == 0 for i in range(4) for j in range(i + 1, 4))
    assert all(X.rows[i][i] == 1 for i in range(4))
    with pytest.raises(NotNilpotent):
        exp_special_automorphism(A, (0, 0))
