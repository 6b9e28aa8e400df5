"""Integral bilinear forms, their epsilon-symmetrizations and adjoints.

A :class:`BilinearForm` is a Gram matrix ``A`` (``A(x, y) = x^T A y``) plus
the sign ``epsilon``.  The symmetrized form is ``S = A + epsilon A^T`` and
the adjoint ``S*: G -> G*`` is represented by a matrix acting on column
vectors.  Two conventions are possible for that matrix:

``"right"`` (default)
    ``S*(x) = S(-, x)``, matrix ``S``.
``"left"``
    ``S*(x) = S(x, -)``, matrix ``S^T``.

Because ``S^T = epsilon S`` the two matrices differ by a sign, so kernels,
cokernels and every lattice derived from them are literally the same; the
convention is carried on the form so that this can be checked end to end.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from functools import cached_property
from typing import Optional, Sequence

from .abgroup import FgAbelianGroup, GroupHom, free
from .zlattice import (CokernelData, IntMatrix, Submodule, as_matrix, cokernel, det,
                       kernel_basis, snf, unimodular_inverse)

CONVENTIONS = ("right", "left")


@dataclass(frozen=True)
class BilinearForm:
    gram: IntMatrix
    epsilon: int = 1
    adjoint: str = "right"
    n: Optional[int] = None

    def __post_init__(self):
        object.__setattr__(self, "gram", as_matrix(self.gram))
        if not self.gram.is_square():
            raise ValueError(f"Gram matrix must be square, got shape {self.gram.shape}")
        if self.epsilon not in (1, -1):
            raise ValueError(f"epsilon must be +1 or -1, got {self.epsilon}")
        if self.adjoint not in CONVENTIONS:
            raise ValueError(f"unknown adjoint convention {self.adjoint!r}")
        if self.n is not None and (-1) ** self.n != self.epsilon:
            raise ValueError(f"epsilon {self.epsilon} does not match dimension n={self.n}")

    @classmethod
    def empty(cls, epsilon: int = 1, adjoint: str = "right") -> "BilinearForm":
        return cls(IntMatrix.zeros(0, 0), epsilon, adjoint)

    @property
    def rank(self) -> int:
        return self.gram.rows

    def __call__(self, x: Sequence[int], y: Sequence[int]) -> int:
        return sum(a * b for a, b in zip(x, self.gram.apply(y)))

    def with_adjoint(self, adjoint: str) -> "BilinearForm":
        return replace(self, adjoint=adjoint)

    def with_epsilon(self, epsilon: int) -> "BilinearForm":
        return replace(self, epsilon=epsilon, n=None)

    @cached_property
    def symmetrized(self) -> IntMatrix:
        return symmetrize(self)

    @cached_property
    def adjoint_matrix(self) -> IntMatrix:
        S = self.symmetrized
        return S if self.adjoint == "right" else S.T


def symmetrize(A: BilinearForm) -> IntMatrix:
    """``S = A + epsilon A^T``."""
    return A.gram + A.epsilon * A.gram.T


def signature(S: IntMatrix) -> int:
    """Signature of a symmetric integer matrix.

    Exact congruence diagonalization over the rationals; by Sylvester's law
    of inertia the signs on the diagonal give the signature.
    """
    if S != S.T:
        raise ValueError("signature needs a symmetric matrix")
    M = [[Fraction(x) for x in row] for row in S]
    n = len(M)
    pos = neg = 0
    for i in range(n):
        if M[i][i] == 0:
            j = next((j for j in range(i + 1, n) if M[j][j] != 0), None)
            if j is not None:
                M[i], M[j] = M[j], M[i]
                for row in M:
                    row[i], row[j] = row[j], row[i]
            else:
                j = next((j for j in range(i + 1, n) if M[i][j] != 0), None)
                if j is None:
                    continue
                # e_i -> e_i + e_j makes the diagonal entry 2 M[i][j]
                M[i] = [a + b for a, b in zip(M[i], M[j])]
                for row in M:
                    row[i] += row[j]
        p = M[i][i]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for k in range(i + 1, n):
            f = M[k][i] / p
            if f:
                M[k] = [a - f * b for a, b in zip(M[k], M[i])]
                for row in M:
                    row[k] -= f * row[i]
    return pos - neg


@dataclass(frozen=True)
class FormInvariants:
    symmetrized: IntMatrix
    kernel_of_adjoint: Submodule
    cokernel: FgAbelianGroup
    torsion_of_cokernel: FgAbelianGroup
    det_S: int
    signature: Optional[int] = None
    cokernel_data: CokernelData = field(default=None, compare=False, repr=False)

    def summary(self) -> dict:
        return {
            "det_S": self.det_S,
            "kernel_rank": self.kernel_of_adjoint.rank,
            "cokernel": {"free_rank": self.cokernel.free_rank,
                         "torsion": list(self.cokernel.torsion)},
            "signature": self.signature,
        }


def invariants(A: BilinearForm) -> FormInvariants:
    S = A.symmetrized
    adj = A.adjoint_matrix
    K = kernel_basis(adj)
    C, data = cokernel(adj)
    return FormInvariants(
        symmetrized=S,
        kernel_of_adjoint=K,
        cokernel=C,
        torsion_of_cokernel=C.torsion_subgroup(),
        det_S=det(S),
        signature=signature(S) if A.epsilon == 1 else None,
        cokernel_data=data,
    )


def induced_form(A: BilinearForm) -> tuple[IntMatrix, GroupHom]:
    """The nondegenerate form ``Sbar`` on ``G / Ker S*`` and the projection onto it.

    The complement basis comes from the Smith form of the kernel inclusion:
    if ``U K V = [I 0]`` then the rows of ``V^{-1}`` form a basis of ``Z^m``
    whose first ``k`` rows span the kernel, and the remaining rows project
    to a basis of the quotient.
    """
    m = A.rank
    K = kernel_basis(A.adjoint_matrix)
    k = K.rank
    if k == 0:
        return A.symmetrized, GroupHom.identity(free(m))
    dec = snf(K.basis)
    W = unimodular_inverse(dec.V)
    C = W.take_rows(range(k, m))
    Sbar = C @ A.symmetrized @ C.T
    # x = a W  =>  a = x V; keep the last m - k coordinates
    P = dec.V.take_cols(range(k, m)).T
    return Sbar, GroupHom(free(m), free(m - k), P)


def boundary_homology(A: BilinearForm) -> tuple[FgAbelianGroup, FgAbelianGroup]:
    """``(H_n(K), H_{n-1}(K))`` read off as ``(Ker S*, Coker S*)``."""
    inv = invariants(A)
    return free(inv.kernel_of_adjoint.rank), inv.cokernel


def assemble_difference(A0: BilinearForm, A1: BilinearForm) -> BilinearForm:
    """``(-A0) + A1`` on ``G0 + G1``."""
    if A0.epsilon != A1.epsilon:
        raise ValueError(f"epsilon mismatch: {A0.epsilon} vs {A1.epsilon}")
    if A0.adjoint != A1.adjoint:
        raise ValueError("adjoint convention mismatch")
    return BilinearForm(IntMatrix.block_diag(-A0.gram, A1.gram), A0.epsilon, A0.adjoint)
