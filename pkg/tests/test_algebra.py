import itertools
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import derivation_tuples, derivations
from findim.algebra import (
    DimensionError,
    HomogeneousDerivation,
    InvalidElementError,
    LaurentOnly,
    Monomial,
    TypeI,
    TypeII,
    Zero,
    apply,
    bracket,
    bracket_vectors,
    canonicalize,
    classify,
    commutator_on,
    derivation,
    delta,
    nabla,
    pairing,
    pretty,
    proportional,
    weight,
)

F = Fraction


# --- pairing -----------------------------------------------------------------------


@pytest.mark.parametrize(
    "alpha,u,expected",
    [((0, 1), (1, 0), 0), ((2, -1), (1, 2), 0), ((1, -1), (0, 1), -1)],
)
def test_pairing_examples(alpha, u, expected):
    assert pairing([F(a) for a in alpha], u) == expected


def test_pairing_length_mismatch():
    with pytest.raises(DimensionError):
        pairing([F(1)], (1, 2))


# --- bracket -----------------------------------------------------------------------


def test_bracket_example_pair():
    D = derivation((1, 0), (1, -1))
    E = derivation((0, 1), (0, 1))
    B = bracket(D, E)
    assert B == derivation((1, 1), (0, -1))
    assert pretty(B) == "-x1*x2^2*d2"


def test_bracket_with_itself_is_zero():
    D = derivation((1, 0), (1, -1))
    assert bracket(D, D) is None
    assert classify(bracket(D, D)) == Zero()


def test_bracket_e_f_against_composition():
    e, f = derivation((-1, 1), (1, 0)), derivation((1, -1), (0, 1))
    h = bracket(e, f)
    assert h == derivation((0, 0), (-1, 1))
    # composition oracle on x1 and x2
    for u in [(1, 0), (0, 1)]:
        lhs = commutator_on(e, f, {u: F(1)})
        m = apply(h, Monomial(u, F(1)))
        assert lhs == {m.exponents: m.coefficient}


def test_bracket_dimension_mismatch():
    with pytest.raises(DimensionError):
        bracket(derivation((1,), (1,)), derivation((1, 0), (1, 0)))


def test_zero_coeffs_rejected():
    with pytest.raises(InvalidElementError):
        derivation((1, 0), (0, 0))


# --- classify / weight -------------------------------------------------------------


def test_classify_examples():
    assert classify(derivation((-1, 2), (1, 0))) == TypeI(0, (0, 2))
    assert classify(derivation((1, 1), (2, -1))) == TypeII((1, 1), (F(2), F(-1)))
    assert classify(derivation((-1, 0), (0, 1))) == LaurentOnly()
    assert classify(derivation((-1, -1), (1, 0))) == LaurentOnly()
    assert classify(derivation((-2, 3), (1, 0))) == LaurentOnly()


def test_classify_scaled_type1():
    # proportional to e_i is enough
    assert classify(derivation((2, -1), (0, F(-3, 2)))) == TypeI(1, (2, 0))


@pytest.mark.parametrize(
    "D,w",
    [
        (derivation((-1, 2), (1, 0)), 1),
        (derivation((-1, 0), (1, 0)), -1),
        (delta((0, 0), (1, 5)), 0),
    ],
)
def test_weight_examples(D, w):
    assert weight(D) == w


def test_weight_matches_both_formulas():
    n1 = nabla(2, (1, 3, 0))
    assert weight(n1) == classify(n1).weight == 1 + 3 - 1
    d2 = delta((2, 0, 1), (1, 1, 1))
    assert weight(d2) == classify(d2).weight == 3


# --- apply -------------------------------------------------------------------------


def test_apply_examples():
    m = apply(derivation((0, 1), (0, 1)), Monomial((0, 1), F(1)))
    assert m == Monomial((0, 2), F(1))
    assert apply(derivation((0, 1), (0, 1)), Monomial((0, 0), F(5))).is_zero
    assert apply(derivation((1, 0), (1, -1)), Monomial((1, 1), F(1))).is_zero


def test_zero_monomial_is_canonical():
    assert Monomial((3, -2), F(0)) == Monomial((0, 0), F(0))


def test_apply_dimension_mismatch():
    with pytest.raises(DimensionError):
        apply(derivation((0, 1), (0, 1)), Monomial((1,), F(1)))


# --- canonicalize / proportional ----------------------------------------------------


@pytest.mark.parametrize(
    "alpha,expected",
    [((2, -4), (1, -2)), ((1, -2), (1, -2)), ((0, -3), (0, 1))],
)
def test_canonicalize_examples(alpha, expected):
    c = (1, 0) if alpha[0] else (0, 1)
    assert canonicalize(derivation(c, alpha)) == derivation(c, expected)


def test_proportional_examples():
    assert proportional([F(1), F(-1)], [F(2), F(-2)])
    assert not proportional([F(1), F(-1)], [F(0), F(1)])
    assert not proportional([F(1), F(0), F(0)], [F(1), F(0), F(1)])
    with pytest.raises(InvalidElementError):
        proportional([F(0), F(0)], [F(1), F(0)])


def test_pretty():
    assert pretty(derivation((1, 0), (1, -1))) == "x1^2*d1 - x1*x2*d2"
    assert pretty(derivation((-1, 0), (1, 0))) == "d1"
    assert pretty(None) == "0"


# --- properties ----------------------------------------------------------------------


def _accumulate(*terms):
    out = {}
    for D in terms:
        if D is None:
            continue
        acc = out.setdefault(D.degree, [F(0)] * D.n)
        for k, x in enumerate(D.coeffs):
            acc[k] += x
    return {c: v for c, v in out.items() if any(v)}


@given(derivation_tuples(2))
def test_antisymmetry(pair):
    D, E = pair
    assert _accumulate(bracket(D, E), bracket(E, D)) == {}


@settings(max_examples=200)
@given(derivation_tuples(3))
def test_jacobi(triple):
    D, E, G = triple

    def br(X, Y):
        return None if X is None or Y is None else bracket(X, Y)

    total = _accumulate(br(D, bracket(E, G)), br(E, bracket(G, D)), br(G, bracket(D, E)))
    assert total == {}


@given(derivation_tuples(2))
def test_degree_and_weight_additivity(pair):
    D, E = pair
    B = bracket(D, E)
    if B is not None:
        assert B.degree == tuple(a + b for a, b in zip(D.degree, E.degree))
        assert weight(B) == weight(D) + weight(E)


@settings(max_examples=60)
@given(derivation_tuples(2))
def test_oracle_equivalence(pair):
    D, E = pair
    B = bracket(D, E)
    for u in itertools.product(range(-3, 4), repeat=D.n):
        lhs = commutator_on(D, E, {u: F(1)})
        m = Monomial(u, F(0)) if B is None else apply(B, Monomial(u, F(1)))
        assert lhs == ({} if m.is_zero else {m.exponents: m.coefficient})


@given(derivations())
def test_classification_totality(D):
    cls = classify(D)
    assert isinstance(cls, (TypeI, TypeII, LaurentOnly))
    if isinstance(cls, TypeI):
        assert cls.a[cls.i] == 0 and all(x >= 0 for x in cls.a)
        assert all(x >= 0 for x in D.degree if x != -1) and D.degree.count(-1) == 1
    elif isinstance(cls, TypeII):
        assert all(x >= 0 for x in D.degree)
    else:
        # neither of the polynomial forms applies
        assert any(x < 0 for x in D.degree)


@given(derivations(), st.fractions(min_value=-5, max_value=5, max_denominator=7).filter(bool))
def test_canonicalize_scale_invariant(D, s):
    C = canonicalize(D)
    assert canonicalize(D.scaled(s)) == C
    assert canonicalize(C) == C
    assert next(x for x in C.coeffs if x) == 1


@st.composite
def polynomial_fields(draw, n):
    if draw(st.booleans()):
        i = draw(st.integers(0, n - 1))
        a = list(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))
        a[i] = 0
        return nabla(i, a)
    p = draw(st.lists(st.integers(0, 3), min_size=n, max_size=n))
    beta = draw(st.lists(st.integers(-2, 2), min_size=n, max_size=n).filter(any))
    return delta(p, beta)


@given(st.integers(1, 3).flatmap(lambda n: st.tuples(polynomial_fields(n), polynomial_fields(n))))
def test_polynomial_fields_closed_under_bracket(pair):
    assert not isinstance(classify(bracket(*pair)), LaurentOnly)


# --- independent symbolic check -----------------------------------------------------


def _sympy_field(D, xs):
    mono = sympy.Integer(1)
    for x, e in zip(xs, D.degree):
        mono *= x**e
    return [sympy.Rational(a.numerator, a.denominator) * mono * x for a, x in zip(D.coeffs, xs)]


def _sympy_bracket(X, Y, xs):
    return [
        sympy.simplify(sum(X[j] * sympy.diff(Y[k], xs[j]) - Y[j] * sympy.diff(X[k], xs[j]) for j in range(len(xs))))
        for k in range(len(xs))
    ]


@settings(max_examples=40, deadline=None)
@given(derivation_tuples(2))
def test_bracket_matches_symbolic_vector_fields(pair):
    D, E = pair
    xs = sympy.symbols(f"x1:{D.n + 1}")
    expected = _sympy_bracket(_sympy_field(D, xs), _sympy_field(E, xs), xs)
    B = bracket(D, E)
    got = [sympy.Integer(0)] * D.n if B is None else _sympy_field(B, xs)
    assert all(sympy.simplify(a - b) == 0 for a, b in zip(got, expected))


def test_bracket_vectors_raw_zero():
    c, v = bracket_vectors((1, 0), (F(1), F(0)), (1, 0), (F(1), F(0)))
    assert c == (2, 0) and not any(v)


def test_frozen_value_semantics():
    D = HomogeneousDerivation((1, 0), (F(1), F(2)))
    assert D == derivation([1, 0], [1, 2])
    assert hash(D) == hash(derivation([1, 0], [1, 2]))
