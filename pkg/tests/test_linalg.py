import random
from fractions import Fraction

from nilcohom.algebra import Gaussian, ZERO
from nilcohom.linalg import ExactMatrix, exact_rank, hstack, kernel_dimension, vstack, _rank_field


def G(re, im=0):
    return Gaussian.of(Fraction(re), Fraction(im))


def mat(rows):
    return ExactMatrix(len(rows), len(rows[0]) if rows else 0,
                       [[G(*e) if isinstance(e, tuple) else G(e) for e in row] for row in rows])


def test_rank_trivial():
    assert exact_rank(ExactMatrix.zeros(4, 6)) == 0
    assert exact_rank(ExactMatrix.identity(5)) == 5
    assert exact_rank(ExactMatrix.zeros(0, 3)) == 0


def test_rank_rectangular_with_fractions():
    m = mat([["1/2", 1, 0], [1, 2, 0], [0, 0, "1/3"]])
    assert exact_rank(m) == 2
    assert kernel_dimension(m) == 1


def test_rank_complex_dependence():
    # second row is i times the first
    m = mat([[(1, 0), (0, 1)], [(0, 1), (-1, 0)]])
    assert exact_rank(m) == 1


def test_stacking():
    a = mat([[1, 2]])
    b = mat([[3, 4], [5, 6]])
    v = vstack(a, b)
    assert (v.rows, v.cols) == (3, 2)
    h = hstack(b, b)
    assert (h.rows, h.cols) == (2, 4)


def test_matmul_identity():
    m = mat([[1, (0, 1)], [(2, -1), "1/2"]])
    assert ExactMatrix.identity(2) @ m == m
    assert (m @ ExactMatrix.zeros(2, 3)).is_zero()


def _random_matrix(rng, rows, cols):
    entries = []
    for _ in range(rows):
        row = []
        for _ in range(cols):
            if rng.random() < 0.35:
                row.append(ZERO)
            else:
                row.append(Gaussian.of(
                    Fraction(rng.randint(-4, 4), rng.randint(1, 3)),
                    Fraction(rng.randint(-2, 2), rng.randint(1, 2)),
                ))
        entries.append(row)
    return ExactMatrix(rows, cols, entries)


def test_bareiss_agrees_with_field_elimination():
    rng = random.Random(42)
    for _ in range(120):
        m = _random_matrix(rng, rng.randint(1, 7), rng.randint(1, 7))
        assert exact_rank(m) == _rank_field(m)
