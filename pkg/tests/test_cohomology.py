import json

import pytest

from hessgkm.cohomology import (
    Disconnected, cochain_to_vec, degree2_spanning_set, degree2_specs, equivariant_kernel_basis,
    equivariant_rank_oracle, invariant_quotient_hilbert, is_degree2_generated,
    presentation_generators, product_span_ranks, subring_hilbert, vec_to_cochain,
)
from hessgkm.gkm import TooLarge, is_gkm_class
from hessgkm.hessfn import dimension, enumerate_functions, lollipop_form, validate
from hessgkm.linalg import rank
from hessgkm.qseries import QPoly, family_function, hilb_invariants, poincare_direct, q_fact

Q = QPoly([0, 1])


def test_spanning_set_sizes():
    assert len(degree2_spanning_set(validate((2, 3, 3)))) == 9
    assert len(degree2_spanning_set(validate((3, 3, 3)))) == 6


def test_spanning_set_size_eleven_contents():
    specs = degree2_specs(validate((4, 4, 4, 5, 6, 7, 11, 11, 11, 11, 11)))
    names = [str(s) for s in specs]
    assert {f"y:3,{k}" for k in range(1, 12)} <= set(names)
    tau_sizes = {name.count(",") + 1 for name in names if name.startswith("tau:")}
    assert tau_sizes == {4, 5, 6}


@pytest.mark.parametrize("n", range(2, 6))
def test_spanning_set_classes_are_gkm(n):
    for h in enumerate_functions(n, connected_only=True):
        for f in degree2_spanning_set(h):
            assert is_gkm_class(h, f)


def test_rank_of_flag_degree_one():
    h = validate((3, 3, 3))
    vecs = [cochain_to_vec(f) for f in degree2_spanning_set(h)]
    assert rank(vecs) == 5 == equivariant_rank_oracle(h, 1)


def test_vec_round_trip():
    h = validate((2, 3, 3))
    for f in degree2_spanning_set(h):
        assert vec_to_cochain(3, 1, cochain_to_vec(f, 1)) == f


def test_oracle_values():
    assert equivariant_rank_oracle(validate((2, 3, 3)), 1) == 7
    assert equivariant_rank_oracle(validate((3, 3, 3)), 1) == 5
    assert equivariant_rank_oracle(validate((3, 3, 3)), 2) == 14


@pytest.mark.parametrize("n", range(2, 5))
def test_kernel_dimension_matches_oracle(n):
    for h in enumerate_functions(n, connected_only=True):
        for d in range(dimension(h) + 1):
            assert equivariant_kernel_basis(h, d, 10 ** 9).rank == equivariant_rank_oracle(h, d)


def test_kernel_gate():
    with pytest.raises(TooLarge):
        equivariant_kernel_basis(validate([5] * 5), 3, max_columns=100)


def test_product_span_ranks():
    h = validate((3, 3, 3))
    assert product_span_ranks(h, 3) == [equivariant_rank_oracle(h, d) for d in range(4)]
    h = validate((2, 3, 3))
    assert product_span_ranks(h, 2) == [equivariant_rank_oracle(h, d) for d in range(3)]
    h = validate((3, 4, 4, 4))
    ranks = product_span_ranks(h, dimension(h))
    assert any(r < equivariant_rank_oracle(h, d) for d, r in enumerate(ranks))


@pytest.mark.parametrize("h, expected", [((3, 3, 3), True), ((2, 3, 3), True), ((3, 4, 4, 4), False)])
def test_generation_examples(h, expected):
    for method in ("evaluation", "equivariant"):
        assert is_degree2_generated(validate(h), method=method).verdict is expected


def test_report_json_shape():
    report = is_degree2_generated(validate((2, 3, 4, 4)))
    data = json.loads(report.to_json())
    assert data["h"] == "2,3,4,4" and data["dim"] == 3
    assert data["generated_in_degree_2"] is True
    assert [row["d"] for row in data["degrees"]] == [0, 1, 2, 3]


@pytest.mark.parametrize("n", [3, 4])
def test_methods_agree(n):
    for h in enumerate_functions(n, connected_only=True):
        a = is_degree2_generated(h, method="evaluation")
        b = is_degree2_generated(h, method="equivariant")
        assert a.verdict == b.verdict == (lollipop_form(h) is not None)
        assert a.first_failure() == b.first_failure()


def test_disconnected_rejected():
    with pytest.raises(Disconnected):
        is_degree2_generated(validate((2, 2, 3)))


def test_deficit_at_five():
    h = family_function(5)
    sub = subring_hilbert(h, 2)
    assert sub[2] <= 42
    assert poincare_direct(h)[2] - sub[2] >= 5
    report = is_degree2_generated(h)
    assert not report.verdict and report.first_failure() == 4


def test_subring_equals_poincare_when_generated():
    h = validate((3, 3, 3))
    assert subring_hilbert(h) == poincare_direct(h)
    assert subring_hilbert(h, method="equivariant") == poincare_direct(h)


@pytest.mark.parametrize("n, d_max", [(3, None), (4, 3)])
def test_subring_methods_agree(n, d_max):
    for h in enumerate_functions(n, connected_only=True):
        assert subring_hilbert(h, d_max) == subring_hilbert(h, d_max, method="equivariant")


def test_subring_gate():
    with pytest.raises(TooLarge):
        subring_hilbert(family_function(6))


def test_presentation_generators():
    gens = presentation_generators(validate((2, 3, 3)))
    assert [g.max_degree() for g in gens] == [2, 2, 1]


def test_invariant_quotient_examples():
    assert invariant_quotient_hilbert(validate((2, 3, 3))) == QPoly([1, 2, 1])
    assert invariant_quotient_hilbert(validate((3, 3, 3))) == q_fact(3)
    assert invariant_quotient_hilbert(family_function(5)) == (1 + Q) ** 2 * q_fact(3)


@pytest.mark.parametrize("n", range(2, 5))
def test_invariant_quotient_literal_agrees(n):
    for h in enumerate_functions(n, connected_only=True):
        lit = invariant_quotient_hilbert(h, eliminate_linear=False)
        assert lit == invariant_quotient_hilbert(h) == hilb_invariants(h)
