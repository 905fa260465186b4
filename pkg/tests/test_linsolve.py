from fractions import Fraction as Q

from hypothesis import given, settings, strategies as st

from ybsl21.linsolve import solve_in_span
from ybsl21.superpoly import Monomial, SuperPolynomial

coeffs = st.fractions(min_value=-4, max_value=4)
monomials = st.builds(
    Monomial, st.tuples(st.integers(0, 2), st.integers(0, 2)),
    st.integers(0, 15))


@st.composite
def polys(draw):
    pairs = [(draw(monomials), draw(coeffs)) for _ in range(draw(st.integers(1, 4)))]
    return SuperPolynomial.from_terms(pairs, 2)


def test_solve_simple():
    z1 = SuperPolynomial.z_var(1, 2)
    z2 = SuperPolynomial.z_var(2, 2)
    sol = solve_in_span([z1 + z2, z1 - z2], Q(3) * z1 + z2)
    assert sol == [Q(2), Q(1)]
    assert solve_in_span([z1], z2) is None
    assert solve_in_span([z1, z2], SuperPolynomial.zero(2)) == [0, 0]


@settings(max_examples=40, deadline=None)
@given(st.lists(polys(), min_size=1, max_size=3), st.lists(coeffs, min_size=3,
                                                           max_size=3))
def test_combinations_are_recovered(span, weights):
    target = SuperPolynomial.zero(2)
    for c, p in zip(weights, span):
        target = target + c * p
    sol = solve_in_span(span, target)
    assert sol is not None
    rebuilt = SuperPolynomial.zero(2)
    for c, p in zip(sol, span):
        rebuilt = rebuilt + c * p
    assert rebuilt == target


@settings(max_examples=40, deadline=None)
@given(polys())
def test_outside_vector_detected(p):
    z1 = SuperPolynomial.z_var(1, 2)
    # the fifth power of z1 never appears in the generated polynomials
    alien = z1 ** 5
    sol = solve_in_span([p], alien + p)
    if sol is not None:
        rebuilt = sol[0] * p
        assert rebuilt == alien + p
