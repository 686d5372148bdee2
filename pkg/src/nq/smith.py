"""Smith normal form bookkeeping for presentations of finite abelian groups.

A relation matrix W (rows are relations over Z^n) is decomposed as

    S = U W V

with U, V unimodular and S diagonal. The coordinates of v in
Z^n / rowspace(W) are ``(v V)_j mod d_j`` and row j of ``V^-1`` is the
generator of the j-th cyclic factor.
"""
from __future__ import annotations

from typing import Sequence

from sympy import ZZ, Matrix
from sympy.polys.matrices import DomainMatrix
from sympy.matrices.normalforms import smith_normal_decomp

IntMatrix = list[list[int]]


def identity_matrix(n: int) -> IntMatrix:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _to_ints(m: Matrix) -> IntMatrix:
    return [[int(x) for x in m.row(i)] for i in range(m.rows)]


class Diagonalization:
    """Smith form of an integer relation matrix with the column transform.

    Usage
    -----
    diag = Diagonalization(rows, ncols).run()
    diag.diagonal, diag.Q, diag.Q_inv
    """

    def __init__(self, rows: Sequence[Sequence[int]], ncols: int):
        self.ncols = ncols
        self._rows: IntMatrix = [list(map(int, row)) for row in rows if any(row)]
        self.Q = identity_matrix(ncols)
        self.Q_inv = identity_matrix(ncols)
        self.diagonal: list[int] = [0] * ncols

    def run(self) -> Diagonalization:
        if not self._rows:
            return self
        S, _, V = smith_normal_decomp(Matrix(self._rows), domain=ZZ)
        rank = min(S.rows, S.cols)
        self.diagonal = [abs(int(S[j, j])) for j in range(rank)] + [0] * (self.ncols - rank)
        self.Q = _to_ints(V)
        self.Q_inv = _to_ints(DomainMatrix.from_Matrix(V).to_field().inv().to_Matrix())
        return self

    def coordinates(self, vector: Sequence[int]) -> list[int]:
        """(v Q) reduced modulo the diagonal (free coordinates left as they are)"""
        coords = [sum(v * self.Q[i][j] for i, v in enumerate(vector) if v) for j in range(self.ncols)]
        return [c % d if d else c for c, d in zip(coords, self.diagonal)]


def kernel_basis(images: Sequence[Sequence[int]], moduli: Sequence[int]) -> IntMatrix:
    """Rows spanning {c : sum_l c_l images[l] = 0 in (+) Z/moduli_j}.

    The left null space of [[Y], [D]] is spanned by the rows of U past the
    rank of its Smith form; their first block is the kernel.
    """
    m = len(images)
    s = len(moduli)
    stacked = [list(map(int, row)) for row in images]
    stacked += [[d if j == k else 0 for k in range(s)] for j, d in enumerate(moduli)]
    S, U, _ = smith_normal_decomp(Matrix(stacked), domain=ZZ)
    rank = sum(1 for j in range(min(S.rows, S.cols)) if S[j, j] != 0)
    basis = [[int(U[i, l]) for l in range(m)] for i in range(rank, U.rows)]
    return [row for row in basis if any(row)]
