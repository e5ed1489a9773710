import random

import pytest

from herringbone.bipoly import (
    ONE,
    X,
    Y,
    ZERO,
    BiPoly,
    CoefficientMatrix,
    det,
    det_cofactor,
    divide_exact,
    equal_up_to_unit,
    evaluate,
    normalize_unit,
    to_coeff_matrix,
)
from herringbone.errors import NotDivisible, SignPatternViolation, UndefinedAtZero

WHITEHEAD_REDUCED = [
    [ONE, ZERO, -Y, ZERO, ZERO],
    [ONE, X, -ONE, ZERO, ZERO],
    [ZERO, ONE, -ONE, ZERO, -X],
    [ZERO, Y, ZERO, ONE, -Y],
    [ZERO, ZERO, ZERO, X, -X],
]
WHITEHEAD_DET = BiPoly.from_triples(
    [(1, 2, -1), (2, 2, 1), (1, 1, 2), (2, 1, -2), (1, 0, -1), (2, 0, 1)]
)
WHITEHEAD_DELTA = 1 - X - Y + X * Y


def naive_mul(p, q):
    # list-of-triples product with a final merge; independent of BiPoly.__mul__
    triples = [(i1 + i2, j1 + j2, c1 * c2) for i1, j1, c1 in p.to_json() for i2, j2, c2 in q.to_json()]
    return BiPoly.from_triples(triples)


def random_poly(rng, terms=4, span=3, coeff=3, negative=False):
    lo = -span if negative else 0
    return BiPoly(
        {(rng.randint(lo, span), rng.randint(lo, span)): rng.randint(-coeff, coeff) for _ in range(terms)}
    )


class TestArithmetic:
    def test_difference_of_squares(self):
        assert (1 - X) * (1 + X) == 1 - X**2

    def test_product_with_one_minus_y(self):
        got = (1 - Y) * (1 - X - Y + X * Y)
        want = BiPoly.from_triples(
            [(0, 0, 1), (1, 0, -1), (0, 1, -2), (1, 1, 2), (0, 2, 1), (1, 2, -1)]
        )
        assert got == want
        assert naive_mul(1 - Y, 1 - X - Y + X * Y) == want

    def test_additive_inverse_is_empty(self):
        p = 3 * X**2 - Y + 7
        assert (p + (-p)).terms == {}
        assert (p - p).is_zero()

    def test_no_zero_coefficients_stored(self):
        p = BiPoly({(0, 0): 0, (1, 1): 2})
        assert p.terms == {(1, 1): 2}

    def test_laurent_inverse_of_monomial(self):
        assert X ** -2 * X**2 == ONE
        with pytest.raises(ValueError):
            (1 + X) ** -1

    def test_render_graded_lex(self):
        assert str(1 - X - Y + X * Y) == "1 - y - x + x*y"
        assert str(ZERO) == "0"
        assert str(-2 * X**3 * Y**-1) == "-2*x^3*y^-1"

    def test_json_terms(self):
        assert (1 - X).to_json() == [[0, 0, 1], [1, 0, -1]]

    def test_ring_axioms_random(self):
        rng = random.Random(11)
        for _ in range(300):
            a, b, c = (random_poly(rng, negative=True) for _ in range(3))
            assert (a * b) * c == a * (b * c)
            assert a * (b + c) == a * b + a * c
            assert a * b == b * a
            assert a * b == naive_mul(a, b)
            assert (a + b) - b == a


class TestDivideExact:
    def test_strip_one_minus_y(self):
        p = BiPoly.from_triples([(0, 0, 1), (1, 0, -1), (0, 1, -2), (1, 1, 2), (0, 2, 1), (1, 2, -1)])
        assert divide_exact(p, 1 - Y) == 1 - X - Y + X * Y

    def test_divide_by_one(self):
        p = 4 * X * Y - Y**3 + 2
        assert divide_exact(p, ONE) == p

    def test_not_divisible(self):
        with pytest.raises(NotDivisible):
            divide_exact(1 - X**2, 1 - Y)

    def test_laurent_shift_absorbed(self):
        p = (1 - Y) * (X**-3 + 2 * Y)
        assert divide_exact(p, (1 - Y) * X**5) == X**-8 + 2 * Y * X**-5

    def test_round_trip_random(self):
        rng = random.Random(5)
        for _ in range(300):
            p = random_poly(rng, negative=True)
            d = random_poly(rng, terms=3, span=2)
            if d.is_zero():
                continue
            assert divide_exact(p * d, d) == p


class TestDeterminant:
    def test_whitehead_reduced(self):
        assert det(WHITEHEAD_REDUCED) == WHITEHEAD_DET
        assert det_cofactor(WHITEHEAD_REDUCED) == WHITEHEAD_DET

    def test_identity(self):
        eye = [[ONE if i == j else ZERO for j in range(4)] for i in range(4)]
        assert det(eye) == ONE

    def test_zero_pivot_needs_swap(self):
        m = [[ZERO, X], [Y, ONE]]
        assert det(m) == -X * Y

    def test_singular(self):
        m = [[X, Y], [X, Y]]
        assert det(m).is_zero()

    def test_bareiss_matches_cofactor_random(self):
        rng = random.Random(2024)
        entries = [ZERO, ONE, -ONE, X, -X, Y, -Y]
        for t in range(600):
            k = 1 + t % 6
            m = [[rng.choice(entries) for _ in range(k)] for _ in range(k)]
            assert det(m) == det_cofactor(m)

    def test_multilinear_and_alternating(self):
        rng = random.Random(9)
        entries = [ZERO, ONE, -ONE, X, -X, Y, -Y]
        for _ in range(100):
            k = rng.randint(2, 5)
            m = [[rng.choice(entries) for _ in range(k)] for _ in range(k)]
            swapped = [m[1], m[0]] + m[2:]
            assert det(swapped) == -det(m)
            r = [rng.choice(entries) for _ in range(k)]
            s = rng.choice([X, 2 - Y, ONE])
            row_sum = [[a + s * b for a, b in zip(m[0], r)]] + m[1:]
            assert det(row_sum) == det(m) + s * det([r] + m[1:])


class TestEvaluateNormalize:
    def test_evaluations(self):
        assert evaluate(WHITEHEAD_DELTA, -1, 0) == 2
        assert evaluate(WHITEHEAD_DELTA, -1, -1) == 4
        assert evaluate(ZERO, 5, 0) == 0

    def test_negative_exponent_at_zero(self):
        with pytest.raises(UndefinedAtZero):
            evaluate(Y**-1, 1, 0)
        assert evaluate(X**-3, -1, 0) == -1

    def test_normalize_whitehead_determinant(self):
        want = Y**2 - X * Y**2 - 2 * Y + 2 * X * Y + 1 - X
        assert normalize_unit(WHITEHEAD_DET) == want

    def test_normalize_monomial(self):
        assert normalize_unit(X**3 * Y) == ONE
        assert normalize_unit(-(X**2) * Y**-5) == ONE

    def test_already_normal(self):
        assert normalize_unit(WHITEHEAD_DELTA) == WHITEHEAD_DELTA

    def test_sign_pattern_violation(self):
        with pytest.raises(SignPatternViolation):
            normalize_unit(1 + X)

    def test_idempotent_random(self):
        rng = random.Random(3)
        for _ in range(200):
            p = random_poly(rng, negative=True)
            if p.is_zero():
                continue
            signed = BiPoly({k: abs(c) * (-1) ** (k[0] + k[1]) for k, c in p.terms.items()})
            unit = rng.choice([1, -1]) * X ** rng.randint(-3, 3) * Y ** rng.randint(-3, 3)
            once = normalize_unit(signed * unit)
            assert normalize_unit(once) == once
            assert once.min_exponents() == (0, 0)
            assert equal_up_to_unit(once, signed)


class TestCoefficientMatrix:
    def test_whitehead(self):
        cm = to_coeff_matrix(WHITEHEAD_DELTA)
        assert cm.as_lists() == [[-1, 1], [1, -1]]
        assert cm.bottom_row() == (1, -1)
        assert cm.coeff(1, 1) == 1 and cm.coeff(0, 1) == -1

    def test_constant(self):
        assert to_coeff_matrix(ONE).as_lists() == [[1]]

    def test_offsets_and_render(self):
        cm = to_coeff_matrix(X**2 - X**3 * Y)
        assert cm == CoefficientMatrix(((0, -1), (1, 0)), 2, 0)
        assert "bottom row = y^0" in cm.render()
        assert cm.to_json() == {"rows": [[0, -1], [1, 0]], "min_i": 2, "min_j": 0}
