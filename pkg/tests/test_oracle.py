import pytest

from rainbow_torus import bounds
from rainbow_torus.errors import CapacityError, InputError
from rainbow_torus.oracle import (
    Budget, exact, exact_brute, exact_dp, gamma_prism, prism_graph,
)
from rainbow_torus.rdf_core import column_profile, lemma33_check, verify

SMALL = [(m, n) for m in range(3, 5) for n in range(3, 5) if m * n <= 12]


def check_witness(res, m, n, k):
    rep = verify(res.witness)
    assert res.witness.dims.m == m and res.witness.dims.n == n and res.witness.dims.k_colors == k
    assert rep.valid and rep.weight == res.value
    if k == 2:
        assert lemma33_check(column_profile(res.witness), m) == []


@pytest.mark.parametrize("m, n, k, want", [(3, 3, 2, 4), (3, 4, 2, 6), (3, 4, 1, 3)])
def test_brute_examples(m, n, k, want):
    res = exact_brute(m, n, k)
    assert res.value == want and res.engine == "brute"
    check_witness(res, m, n, k)


@pytest.mark.parametrize("m, n, want", [(3, 6, 6), (4, 8, 12), (4, 4, 7), (3, 5, 6)])
def test_dp_examples(m, n, want):
    res = exact_dp(m, n, 2)
    assert res.value == want and res.engine == "dp"
    check_witness(res, m, n, 2)


def test_auto_prefers_dp():
    assert exact(3, 5, 2).engine == "dp"


@pytest.mark.parametrize("k", [1, 2])
@pytest.mark.parametrize("m, n", SMALL)
def test_engines_agree(m, n, k):
    a, b = exact_brute(m, n, k), exact_dp(m, n, k)
    assert a.value == b.value
    check_witness(a, m, n, k)
    check_witness(b, m, n, k)


@pytest.mark.parametrize("n", range(3, 21))
def test_c3_witnesses(n):
    res = exact(3, n, 2)
    check_witness(res, 3, n, 2)
    assert res.value == bounds.known_exact_r2(3, n)


@pytest.mark.parametrize("m, n", [(3, 7), (4, 6), (4, 9), (5, 3), (7, 4)])
def test_transpose_symmetry(m, n):
    a, b = exact(m, n, 2), exact(n, m, 2)
    assert a.value == b.value
    check_witness(a, m, n, 2)
    check_witness(b, n, m, 2)


@pytest.mark.parametrize("m, n", [(3, 3), (3, 4), (4, 4), (3, 8), (4, 7)])
def test_two_color_at_most_twice_domination(m, n):
    assert exact(m, n, 2).value <= 2 * exact(m, n, 1).value


@pytest.mark.parametrize("m, n", [(3, 3), (3, 4)])
def test_prism_equals_rainbow(m, n):
    assert gamma_prism(m, n) == exact(m, n, 2).value


def test_prism_graph_shape():
    g = prism_graph(3, 4)
    assert g.number_of_nodes() == 24
    assert all(d == 5 for _, d in g.degree())


def test_registry_agrees_except_c4_c6():
    """The only disagreement between the known-value formulas and the oracle for small m."""
    disagree = []
    for m in (3, 4):
        for n in range(3, 26):
            known = bounds.known_exact_r2(m, n)
            if known is not None and known != exact(m, n, 2).value:
                disagree.append((m, n))
    assert disagree == [(4, 6)]
    assert exact(4, 6, 2).value == 10 < bounds.known_exact_r2(4, 6) == 11


@pytest.mark.slow
def test_registry_agrees_c5():
    for n in range(5, 11):
        assert exact(5, n, 2).value == bounds.known_exact_r2(5, n) == 2 * n


@pytest.mark.parametrize("m, n", [(3, n) for n in range(3, 13)] + [(4, n) for n in range(4, 13)]
                         + [(5, n) for n in range(5, 11)])
def test_gamma_registry(m, n):
    known = bounds.known_gamma(m, n)
    assert known is not None
    assert exact(m, n, 1).value == known


@pytest.mark.parametrize("m, n", [(3, 6), (3, 9), (4, 8), (4, 10), (3, 14)])
def test_sandwich(m, n):
    v = exact(m, n, 2).value
    assert bounds.lower_bound(m, n) <= v <= bounds.best_upper(m, n)


def test_deterministic_across_runs_and_threads():
    base = exact_dp(4, 9, 2)
    again = exact_dp(4, 9, 2)
    threaded = exact_dp(4, 9, 2, workers=4)
    assert base.value == again.value == threaded.value
    assert base.witness == again.witness == threaded.witness
    assert exact_brute(3, 4, 2).witness == exact_brute(3, 4, 2).witness


def test_capacity_errors():
    with pytest.raises(CapacityError):
        exact(6, 6, 2)
    with pytest.raises(CapacityError):
        exact_brute(4, 4, 2)
    with pytest.raises(CapacityError):
        exact_dp(6, 7, 2)
    with pytest.raises(CapacityError):
        gamma_prism(3, 5)


def test_budget_is_configurable():
    assert exact_dp(3, 6, 1, Budget(dp_height_k1=3)).value == bounds.known_gamma(3, 6)
    with pytest.raises(CapacityError):
        exact_dp(4, 6, 1, Budget(dp_height_k1=3))
    with pytest.raises(CapacityError):
        exact_dp(4, 4, 2, Budget(dp_height_k2=3))


def test_bad_inputs():
    with pytest.raises(InputError):
        exact(2, 5, 2)
    with pytest.raises(InputError):
        exact(3, 5, 2, engine="magic")
