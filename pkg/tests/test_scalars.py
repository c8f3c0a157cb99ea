"""Field arithmetic in Q(i, sqrt2) and the square-root helpers."""

import math
import random
from fractions import Fraction

import pytest

from symdom import Exact, EXACT_ZERO, EXACT_ONE, EXACT_I, SQRT2, HALF_SQRT2
from symdom import field_sqrt, rational_sqrt
from symdom.scalars import coerce, mode_of


def rand_exact(r, small=False):
    hi = 2 if small else 5
    parts = [Fraction(r.randint(-hi, hi), r.randint(1, 4)) for _ in range(4)]
    return Exact(*parts)


def test_constants():
    assert complex(EXACT_ZERO) == 0
    assert complex(EXACT_ONE) == 1
    assert complex(EXACT_I) == 1j
    assert abs(complex(SQRT2) - math.sqrt(2)) < 1e-15
    assert SQRT2 * SQRT2 == Exact(2)
    assert HALF_SQRT2 * SQRT2 == EXACT_ONE


def test_field_axioms_random():
    r = random.Random(20240817)
    for _ in range(200):
        a, b, c = rand_exact(r), rand_exact(r), rand_exact(r)
        assert a + b == b + a
        assert (a + b) + c == a + (b + c)
        assert a * (b + c) == a * b + a * c
        assert (a * b) * c == a * (b * c)
        assert a + (-a) == EXACT_ZERO
        assert a - b == a + (-b)
        if not a.is_zero:
            assert a * a.inverse() == EXACT_ONE
            assert (EXACT_ONE / a) * a == EXACT_ONE


def test_conjugation_and_abs2():
    r = random.Random(7)
    for _ in range(100):
        a, b = rand_exact(r), rand_exact(r)
        assert (a * b).conjugate() == a.conjugate() * b.conjugate()
        assert (a + b).conjugate() == a.conjugate() + b.conjugate()
        m = a.abs2()
        assert m == a * a.conjugate()
        assert m.is_real
        assert complex(m).real >= -1e-15


def test_complex_embedding_matches_float_arithmetic():
    r = random.Random(99)
    for _ in range(100):
        a, b = rand_exact(r, small=True), rand_exact(r, small=True)
        assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-9
        assert abs(complex(a + b) - (complex(a) + complex(b))) < 1e-12


def test_powers():
    r = random.Random(3)
    for _ in range(20):
        a = rand_exact(r, small=True)
        assert a ** 3 == a * a * a
        assert a ** 0 == EXACT_ONE
    assert (SQRT2 ** 4) == Exact(4)
    with pytest.raises(ValueError):
        SQRT2 ** -1


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    assert rational_sqrt(Fraction(49)) == 7
    assert rational_sqrt(Fraction(0)) == 0
    assert rational_sqrt(Fraction(2)) is None
    assert rational_sqrt(Fraction(-4)) is None


def test_field_sqrt_golden():
    assert field_sqrt(Exact(2)) == SQRT2
    assert field_sqrt(Exact(Fraction(1, 2))) == HALF_SQRT2
    # (1 + sqrt2)^2 = 3 + 2 sqrt2
    assert field_sqrt(Exact(3, 0, 2, 0)) == Exact(1, 0, 1, 0)
    assert field_sqrt(Exact(Fraction(9, 4))) == Exact(Fraction(3, 2))
    assert field_sqrt(EXACT_ZERO) == EXACT_ZERO
    assert field_sqrt(Exact(3)) is None
    assert field_sqrt(Exact(7, 0, 1, 0)) is None


def test_field_sqrt_roundtrip_on_squares():
    r = random.Random(41)
    hits = 0
    for _ in range(120):
        u = Fraction(r.randint(-4, 4), r.randint(1, 3))
        v = Fraction(r.randint(-4, 4), r.randint(1, 3))
        x = Exact(u, 0, v, 0)
        sq = x * x
        root = field_sqrt(sq)
        if sq.is_zero:
            assert root == EXACT_ZERO
            continue
        assert root is not None
        assert root * root == sq
        assert complex(root).real > 0
        hits += 1
    assert hits > 80


def test_field_sqrt_rejects_nonreal():
    with pytest.raises(ValueError):
        field_sqrt(EXACT_I)


def test_coerce_refuses_float_to_exact():
    assert coerce(3, "exact") == Exact(3)
    assert coerce(Fraction(1, 3), "exact") == Exact(Fraction(1, 3))
    with pytest.raises(TypeError):
        coerce(0.5, "exact")
    with pytest.raises(TypeError):
        coerce(1 + 2j, "exact")
    assert coerce(Exact(1, 1), "float") == 1 + 1j
    assert mode_of(Exact(1)) == "exact"
    assert mode_of(0.25) == "float"
