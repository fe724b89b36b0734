"""Exact cohomology of the invariant bigraded complex.

Every dimension is computed as (kernel dimension) minus (rank of the incoming
image), never by constructing quotient bases; the ranks come from the
fraction-free elimination in :mod:`nilcohom.linalg`.  Matrix rows and columns
are indexed by the fixed lexicographic basis order of :func:`nilcohom.algebra.basis`.

Conventions, for a structure of complex dimension ``n``:

* ``del`` is the (p+1, q) component of ``d``, ``delbar`` the (p, q+1) one;
* Bott-Chern at (p,q) is ``ker[del; delbar] / im(del delbar)``;
* Aeppli at (p,q) is ``ker(del delbar) / (im del + im delbar)``;
* the de Rham/Betti numbers come from the total complex with ``d = del+delbar``;
* ``delta[k]`` sums Bott-Chern and Aeppli dimensions in total degree k minus
  twice the Betti number; it vanishes in every degree exactly on structures
  satisfying the del-delbar lemma, and obeys ``delta[k] == delta[2n-k]``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .algebra import Form, basis, basis_dimension
from .linalg import ExactMatrix, exact_rank, hstack, vstack
from .model import ComplexStructure


# ---------------------------------------------------------------------------
# differential component matrices
# ---------------------------------------------------------------------------

def del_form(cs: ComplexStructure, f: Form) -> Form:
    """The component of d raising the holomorphic degree of each term."""
    out = Form.zero(f.n)
    for (p, q) in f.bidegrees():
        out = out + cs.d(f.component(p, q)).component(p + 1, q)
    return out


def delbar_form(cs: ComplexStructure, f: Form) -> Form:
    """The component of d raising the antiholomorphic degree of each term."""
    out = Form.zero(f.n)
    for (p, q) in f.bidegrees():
        out = out + cs.d(f.component(p, q)).component(p, q + 1)
    return out


def _component_matrix(cs: ComplexStructure, p: int, q: int, dp: int, dq: int) -> ExactMatrix:
    n = cs.n
    src_dim = basis_dimension(n, p, q)
    tgt_dim = basis_dimension(n, p + dp, q + dq)
    m = ExactMatrix(tgt_dim, src_dim)
    if not src_dim or not tgt_dim:
        return m
    index = {e: i for i, e in enumerate(basis(n, p + dp, q + dq))}
    for col, elem in enumerate(basis(n, p, q)):
        image = cs.d(Form.single(n, elem)).component(p + dp, q + dq)
        for e, c in image.terms.items():
            m.entries[index[e]][col] = c
    return m


def _check_bidegree(cs: ComplexStructure, p: int, q: int):
    if not (0 <= p <= cs.n and 0 <= q <= cs.n):
        raise ValueError(f"bidegree ({p},{q}) out of range for n={cs.n}")


def del_matrix(cs: ComplexStructure, p: int, q: int) -> ExactMatrix:
    """Matrix of del: (p,q) -> (p+1,q) in the fixed basis order."""
    _check_bidegree(cs, p, q)
    return _component_matrix(cs, p, q, 1, 0)


def delbar_matrix(cs: ComplexStructure, p: int, q: int) -> ExactMatrix:
    """Matrix of delbar: (p,q) -> (p,q+1) in the fixed basis order."""
    _check_bidegree(cs, p, q)
    return _component_matrix(cs, p, q, 0, 1)


def deldelbar_matrix(cs: ComplexStructure, p: int, q: int) -> ExactMatrix:
    """Matrix of (del at (p,q+1)) composed with (delbar at (p,q))."""
    _check_bidegree(cs, p, q)
    return _component_matrix(cs, p, q + 1, 1, 0) @ _component_matrix(cs, p, q, 0, 1)


# ---------------------------------------------------------------------------
# cached per-structure engine
# ---------------------------------------------------------------------------

class _Engine:
    """Caches component matrices and their ranks for one structure."""

    def __init__(self, cs: ComplexStructure):
        self.cs = cs
        self.n = cs.n
        self._matrices: dict = {}
        self._ranks: dict = {}

    def dim(self, p: int, q: int) -> int:
        return basis_dimension(self.n, p, q)

    def _valid(self, p: int, q: int) -> bool:
        return 0 <= p <= self.n and 0 <= q <= self.n

    def matrix(self, kind: str, p: int, q: int) -> ExactMatrix:
        key = (kind, p, q)
        if key not in self._matrices:
            if not self._valid(p, q):
                shape = {
                    "del": (self.dim(p + 1, q), self.dim(p, q)),
                    "delbar": (self.dim(p, q + 1), self.dim(p, q)),
                    "dd": (self.dim(p + 1, q + 1), self.dim(p, q)),
                }[kind]
                self._matrices[key] = ExactMatrix(*shape)
            elif kind == "del":
                self._matrices[key] = _component_matrix(self.cs, p, q, 1, 0)
            elif kind == "delbar":
                self._matrices[key] = _component_matrix(self.cs, p, q, 0, 1)
            else:
                self._matrices[key] = self.matrix("del", p, q + 1) @ self.matrix("delbar", p, q)
        return self._matrices[key]

    def rank(self, kind: str, p: int, q: int) -> int:
        key = (kind, p, q)
        if key not in self._ranks:
            if kind in ("del", "delbar", "dd"):
                m = self.matrix(kind, p, q)
            elif kind == "stack":
                # ker del /\ ker delbar at (p,q): the targets are distinct slots
                m = vstack(self.matrix("del", p, q), self.matrix("delbar", p, q))
            elif kind == "concat":
                # im del + im delbar landing in (p,q)
                m = hstack(self.matrix("del", p - 1, q), self.matrix("delbar", p, q - 1))
            else:
                raise KeyError(kind)
            self._ranks[key] = exact_rank(m)
        return self._ranks[key]

    # -- pointwise dimensions ------------------------------------------------

    def hodge_dolbeault(self, p: int, q: int) -> int:
        return self.dim(p, q) - self.rank("delbar", p, q) - self.rank("delbar", p, q - 1)

    def hodge_del(self, p: int, q: int) -> int:
        return self.hodge_dolbeault(q, p)

    def hodge_bc(self, p: int, q: int) -> int:
        return self.dim(p, q) - self.rank("stack", p, q) - self.rank("dd", p - 1, q - 1)

    def hodge_aeppli(self, p: int, q: int) -> int:
        return self.dim(p, q) - self.rank("dd", p, q) - self.rank("concat", p, q)

    def a_dim(self, p: int, q: int) -> int:
        # dim(im del /\ im delbar) - dim im(del delbar), all landing in (p,q)
        return (
            self.rank("del", p - 1, q)
            + self.rank("delbar", p, q - 1)
            - self.rank("concat", p, q)
            - self.rank("dd", p - 1, q - 1)
        )

    def f_dim(self, p: int, q: int) -> int:
        # dim ker(del delbar) - dim(ker del + ker delbar), all at (p,q)
        return (
            self.rank("del", p, q)
            + self.rank("delbar", p, q)
            - self.rank("stack", p, q)
            - self.rank("dd", p, q)
        )

    # -- total complex ----------------------------------------------------------

    def _blocks(self, k: int):
        return [(p, k - p) for p in range(min(self.n, k), max(0, k - self.n) - 1, -1)]

    def total_matrix(self, k: int) -> ExactMatrix:
        src = self._blocks(k)
        tgt = self._blocks(k + 1)
        col_offset, acc = {}, 0
        for blk in src:
            col_offset[blk] = acc
            acc += self.dim(*blk)
        row_offset, racc = {}, 0
        for blk in tgt:
            row_offset[blk] = racc
            racc += self.dim(*blk)
        out = ExactMatrix(racc, acc)
        for (p, q) in src:
            for kind, target in (("del", (p + 1, q)), ("delbar", (p, q + 1))):
                if target not in row_offset:
                    continue
                m = self.matrix(kind, p, q)
                ro, co = row_offset[target], col_offset[(p, q)]
                for i in range(m.rows):
                    row = m.entries[i]
                    dest = out.entries[ro + i]
                    for j in range(m.cols):
                        dest[co + j] = row[j]
        return out

    def total_rank(self, k: int) -> int:
        key = ("total", k)
        if key not in self._ranks:
            if not 0 <= k <= 2 * self.n:
                self._ranks[key] = 0
            else:
                self._ranks[key] = exact_rank(self.total_matrix(k))
        return self._ranks[key]

    def total_dim(self, k: int) -> int:
        return sum(self.dim(p, q) for p, q in self._blocks(k))

    def betti(self, k: int) -> int:
        if not 0 <= k <= 2 * self.n:
            return 0
        return self.total_dim(k) - self.total_rank(k) - self.total_rank(k - 1)

    def delta(self, k: int) -> int:
        total = 0
        for p, q in self._blocks(k):
            total += self.hodge_bc(p, q) + self.hodge_aeppli(p, q)
        return total - 2 * self.betti(k)


# ---------------------------------------------------------------------------
# public operations
# ---------------------------------------------------------------------------

def hodge_dolbeault(cs: ComplexStructure, p: int, q: int) -> int:
    return _Engine(cs).hodge_dolbeault(p, q)


def hodge_del(cs: ComplexStructure, p: int, q: int) -> int:
    return _Engine(cs).hodge_del(p, q)


def hodge_bc(cs: ComplexStructure, p: int, q: int) -> int:
    return _Engine(cs).hodge_bc(p, q)


def hodge_aeppli(cs: ComplexStructure, p: int, q: int) -> int:
    return _Engine(cs).hodge_aeppli(p, q)


def a_dim(cs: ComplexStructure, p: int, q: int) -> int:
    return _Engine(cs).a_dim(p, q)


def f_dim(cs: ComplexStructure, p: int, q: int) -> int:
    return _Engine(cs).f_dim(p, q)


def betti(cs: ComplexStructure, k: int) -> int:
    return _Engine(cs).betti(k)


def delta(cs: ComplexStructure, k: int) -> int:
    return _Engine(cs).delta(k)


@dataclass
class CohomologyTable:
    """Every cohomological dimension of one instantiated structure.

    Grids are (n+1) x (n+1) nested lists indexed ``grid[p][q]``; ``betti`` and
    ``delta`` run over total degrees 0 .. 2n.
    """

    n: int
    h_dolbeault: list
    h_del: list
    h_bc: list
    h_aeppli: list
    a_dim: list
    f_dim: list
    betti: list
    delta: list

    def level(self, grid_name: str, k: int) -> int:
        grid = getattr(self, grid_name)
        return sum(
            grid[p][k - p]
            for p in range(max(0, k - self.n), min(self.n, k) + 1)
        )

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * b for k, b in enumerate(self.betti))

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "hodge": {
                "dolbeault": self.h_dolbeault,
                "del": self.h_del,
                "bott_chern": self.h_bc,
                "aeppli": self.h_aeppli,
            },
            "a": self.a_dim,
            "f": self.f_dim,
            "betti": self.betti,
            "delta": self.delta,
        }


def full_table(cs: ComplexStructure) -> CohomologyTable:
    eng = _Engine(cs)
    n = cs.n
    grids = {name: [[0] * (n + 1) for _ in range(n + 1)] for name in
             ("h_dolbeault", "h_del", "h_bc", "h_aeppli", "a_dim", "f_dim")}
    for p in range(n + 1):
        for q in range(n + 1):
            grids["h_dolbeault"][p][q] = eng.hodge_dolbeault(p, q)
            grids["h_del"][p][q] = eng.hodge_del(p, q)
            grids["h_bc"][p][q] = eng.hodge_bc(p, q)
            grids["h_aeppli"][p][q] = eng.hodge_aeppli(p, q)
            grids["a_dim"][p][q] = eng.a_dim(p, q)
            grids["f_dim"][p][q] = eng.f_dim(p, q)
    return CohomologyTable(
        n=n,
        betti=[eng.betti(k) for k in range(2 * n + 1)],
        delta=[eng.delta(k) for k in range(2 * n + 1)],
        **grids,
    )


@dataclass
class LemmaVerdict:
    """Outcome of the del-delbar lemma test on a cohomology table."""

    satisfied: bool
    witness: int | None
    parity_sufficient: bool
    parity_branch: str | None

    @property
    def verdict(self) -> str:
        return "SATISFIED" if self.satisfied else f"FAILS at k={self.witness}"

    def as_dict(self) -> dict:
        return {
            "verdict": "SATISFIED" if self.satisfied else "FAILS",
            "witness": self.witness,
            "parity_sufficient": self.parity_sufficient,
            "parity_branch": self.parity_branch,
        }


def ddbar_lemma_status(table: CohomologyTable) -> LemmaVerdict:
    """SATISFIED iff delta vanishes in every degree; report the parity test too.

    The parity-restricted sufficient condition holds when delta vanishes in
    all degrees of one parity class (that of n, or the complementary one) and
    the a-spaces vanish in all total degrees of the complementary parity
    (odd degrees for the first branch, even for the second).
    """
    n = table.n
    witness = next((k for k, d in enumerate(table.delta) if d), None)
    degrees = range(2 * n + 1)
    a_levels = [table.level("a_dim", k) for k in degrees]
    branch_same = all(
        table.delta[k] == 0 for k in degrees if k % 2 == n % 2
    ) and all(a_levels[k] == 0 for k in degrees if k % 2 == 1)
    branch_other = all(
        table.delta[k] == 0 for k in degrees if k % 2 == (n - 1) % 2
    ) and all(a_levels[k] == 0 for k in degrees if k % 2 == 0)
    branch = "same-parity" if branch_same else "complementary-parity" if branch_other else None
    return LemmaVerdict(
        satisfied=witness is None,
        witness=witness,
        parity_sufficient=branch_same or branch_other,
        parity_branch=branch,
    )


def differential_identities_ok(cs: ComplexStructure) -> bool:
    """del^2 = 0, delbar^2 = 0 and del delbar = -delbar del as matrices."""
    eng = _Engine(cs)
    n = cs.n
    for p in range(n + 1):
        for q in range(n + 1):
            d1 = eng.matrix("del", p, q)
            db1 = eng.matrix("delbar", p, q)
            if not (eng.matrix("del", p + 1, q) @ d1).is_zero():
                return False
            if not (eng.matrix("delbar", p, q + 1) @ db1).is_zero():
                return False
            anti = (eng.matrix("del", p, q + 1) @ db1) + (eng.matrix("delbar", p + 1, q) @ d1)
            if not anti.is_zero():
                return False
    return True


__all__ = [
    "CohomologyTable",
    "LemmaVerdict",
    "ExactMatrix",
    "a_dim",
    "betti",
    "ddbar_lemma_status",
    "del_form",
    "del_matrix",
    "delbar_form",
    "delbar_matrix",
    "deldelbar_matrix",
    "delta",
    "differential_identities_ok",
    "exact_rank",
    "f_dim",
    "full_table",
    "hodge_aeppli",
    "hodge_bc",
    "hodge_del",
    "hodge_dolbeault",
]
