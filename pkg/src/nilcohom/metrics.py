"""Invariant Hermitian forms: positivity, pluriclosed and balanced tests.

A form is stored as its Hermitian coefficient matrix ``H`` against the
(1,0)-coframe; the associated real fundamental 2-form is
``Omega = i * sum_jk H_jk w^j /\\ wbar^k``.  Following the classical
parametrization ``Omega = i(r^2 w^{1~1} + s^2 w^{2~2} + t^2 w^{3~3})
+ u w^{1~2} - conj(u) w^{2~1} + ...`` the off-diagonal entries are
``H_12 = -i u`` and so on, so diagonal entries are the positive rationals
r^2, s^2, t^2.

``ddbar_of`` reports del delbar of the coefficient form ``sum H_jk w^{j~k}``
(without the overall i): that is the normalization in which the classical
six-dimensional families have del delbar of the standard form equal to a
rational multiple of ``w^{12~1~2}``, and the overall i does not affect any
vanishing test.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .algebra import BasisElement, Form, Gaussian, ONE, ZERO, I
from .cohomology import del_form, delbar_form
from .model import ComplexStructure


class HermitianForm:
    """An n x n Hermitian coefficient matrix with positive rational diagonal."""

    def __init__(self, entries):
        n = len(entries)
        if any(len(row) != n for row in entries):
            raise ValueError("coefficient grid must be square")
        for j in range(n):
            d = entries[j][j]
            if not d.is_real() or d.re <= 0:
                raise ValueError(f"diagonal entry {j + 1} must be a positive rational")
            for k in range(n):
                if entries[k][j] != entries[j][k].conjugate():
                    raise ValueError("coefficient grid is not Hermitian")
        self.n = n
        self.entries = [row[:] for row in entries]

    def __getitem__(self, jk):
        return self.entries[jk[0]][jk[1]]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, HermitianForm)
            and self.n == other.n
            and self.entries == other.entries
        )

    def __repr__(self) -> str:
        return f"HermitianForm(n={self.n})"


def standard_form(n: int) -> HermitianForm:
    """The identity coefficient matrix: Omega = i sum_j w^j /\\ wbar^j."""
    return HermitianForm(
        [[ONE if j == k else ZERO for k in range(n)] for j in range(n)]
    )


def hermitian_form(diag, upper=None) -> HermitianForm:
    """Build from a rational diagonal and the strictly-upper entries H_jk.

    ``upper`` maps 1-based pairs (j, k) with j < k to Gaussian values.
    """
    n = len(diag)
    entries = [[ZERO] * n for _ in range(n)]
    for j, d in enumerate(diag):
        entries[j][j] = d if isinstance(d, Gaussian) else Gaussian.rational(d)
    for (j, k), value in (upper or {}).items():
        if not 1 <= j < k <= n:
            raise ValueError(f"not a strictly upper index pair: {(j, k)}")
        entries[j - 1][k - 1] = value
        entries[k - 1][j - 1] = value.conjugate()
    return HermitianForm(entries)


def form_from_uvz(r2, s2, t2, u=ZERO, v=ZERO, z=ZERO) -> HermitianForm:
    """The classical 3-dimensional parametrization (see module docstring)."""
    mi = Gaussian.of(0, -1)
    return hermitian_form(
        [r2, s2, t2],
        {(1, 2): mi * u, (2, 3): mi * v, (1, 3): mi * z},
    )


def coefficient_form(h: HermitianForm) -> Form:
    """``sum_jk H_jk w^j /\\ wbar^k`` over the coframe, without the i."""
    return Form(
        h.n,
        [
            (BasisElement((j,), (k,)), h.entries[j - 1][k - 1])
            for j in range(1, h.n + 1)
            for k in range(1, h.n + 1)
        ],
    )


def to_two_form(h: HermitianForm) -> Form:
    """The real fundamental (1,1)-form ``i sum_jk H_jk w^j /\\ wbar^k``."""
    return coefficient_form(h).scale(I)


def _determinant(entries) -> Gaussian:
    n = len(entries)
    if n == 0:
        return ONE
    if n == 1:
        return entries[0][0]
    total = ZERO
    for col in range(n):
        head = entries[0][col]
        if not head:
            continue
        minor = [
            [row[c] for c in range(n) if c != col]
            for row in entries[1:]
        ]
        sign = -1 if col % 2 else 1
        total = total + head * _determinant(minor) * sign
    return total


def is_positive(h: HermitianForm) -> bool:
    """Positive-definiteness via leading principal minors (all exact)."""
    for k in range(1, h.n + 1):
        sub = [row[:k] for row in h.entries[:k]]
        minor = _determinant(sub)
        if not minor.is_real() or minor.re <= 0:
            return False
    return True


def ddbar_of(cs: ComplexStructure, h: HermitianForm) -> Form:
    """The (2,2)-form del delbar of the coefficient form of ``h``."""
    if cs.n != h.n:
        raise ValueError(f"dimension mismatch: structure n={cs.n}, form n={h.n}")
    return del_form(cs, delbar_form(cs, coefficient_form(h)))


def _require_positive(h: HermitianForm):
    if not is_positive(h):
        raise ValueError("the Hermitian form is not positive definite")


def is_pluriclosed(cs: ComplexStructure, h: HermitianForm) -> bool:
    """Whether del delbar Omega vanishes exactly (the SKT condition)."""
    _require_positive(h)
    return ddbar_of(cs, h).is_zero()


def is_balanced(cs: ComplexStructure, h: HermitianForm) -> bool:
    """Whether d(Omega^(n-1)) vanishes exactly."""
    _require_positive(h)
    omega = to_two_form(h)
    power = omega
    for _ in range(cs.n - 2):
        power = power.wedge(omega)
    return cs.d(power).is_zero()


def random_positive_forms(n: int, count: int, seed: int = 0) -> list[HermitianForm]:
    """Deterministic sample of positive forms: small Hermitian perturbations
    of a random positive diagonal, with non-positive draws rejected."""
    rng = random.Random(seed)
    out: list[HermitianForm] = []
    while len(out) < count:
        diag = [Fraction(rng.randint(1, 4)) for _ in range(n)]
        upper = {}
        for j in range(1, n + 1):
            for k in range(j + 1, n + 1):
                upper[(j, k)] = Gaussian.of(
                    Fraction(rng.randint(-2, 2), 2),
                    Fraction(rng.randint(-2, 2), 2),
                )
        candidate = hermitian_form(diag, upper)
        if is_positive(candidate):
            out.append(candidate)
    return out
