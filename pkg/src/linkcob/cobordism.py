"""Algebraic cobordism of Seifert forms.

``A0`` is algebraically cobordant to ``A1`` when ``B = (-A0) + A1`` has a
metabolizer ``M`` such that

* the image of ``M`` in ``(G0 + G1) / Ker S_B*`` is pure,
* ``M ∩ Ker S_B*`` is the graph of an isomorphism
  ``phi: Ker S0* -> Ker S1*``, and
* ``d(S_B*(M)^)`` is the graph of an isomorphism
  ``theta: Tors Coker S0* -> Tors Coker S1*``, where ``^`` is saturation in
  ``G*`` and ``d`` the quotient map onto ``Coker S_B*``.

``phi`` and ``theta`` are never supplied: when they exist they are
determined by ``M`` and are extracted here.  ``phi`` is expressed in the
coordinates of the kernel bases returned by ``kernel_basis`` for ``S0*`` and
``S1*``; ``theta`` in the invariant-factor coordinates of the two cokernels.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Sequence

from .abgroup import (FgAbelianGroup, GroupHom, SubgroupInProduct, free,
                      is_graph_of_isomorphism)
from .forms import BilinearForm, assemble_difference, invariants
from .witt import (DEFAULT_HEIGHT, DEFAULT_NODES, Obstruction, SearchOutcome,
                   find_metabolizer, verify_metabolizer)
from .zlattice import IntMatrix, Submodule, is_pure, saturate


class FailedClause(enum.Enum):
    NOT_METABOLIZER = "NotMetabolizer"
    MBAR_NOT_PURE = "MbarNotPure"
    C1_NOT_GRAPH = "C1NotGraph"
    C2_NOT_GRAPH = "C2NotGraph"


@dataclass(frozen=True)
class CobordismReport:
    verdict: bool
    metabolizer: Submodule
    phi: Optional[GroupHom]
    theta: Optional[GroupHom]
    failed_clause: Optional[FailedClause]
    order_check: tuple[int, int]
    clauses: dict = field(default_factory=dict, compare=False)
    kernel_bases: tuple[IntMatrix, IntMatrix] = field(default=None, compare=False)
    torsion: tuple[FgAbelianGroup, FgAbelianGroup] = field(default=None, compare=False)
    image_generators: tuple = field(default=(), compare=False)
    intersection_identity: Optional[bool] = field(default=None, compare=False)
    detail: str = field(default="", compare=False)

    def __bool__(self) -> bool:
        return self.verdict


def _check_pair(A0: BilinearForm, A1: BilinearForm) -> None:
    if A0.epsilon != A1.epsilon:
        raise ValueError(f"epsilon mismatch: {A0.epsilon} vs {A1.epsilon}")
    if A0.adjoint != A1.adjoint:
        raise ValueError("adjoint convention mismatch")


def _kernel_graph(M: Submodule, K0: Submodule, K1: Submodule) -> SubgroupInProduct:
    """``M ∩ (K0 + K1)`` in the coordinates of the two kernel bases."""
    m0, m1 = K0.ambient_rank, K1.ambient_rank
    k0, k1 = K0.rank, K1.rank
    Kb = IntMatrix.block_diag(K0.basis, K1.basis)
    inter = M.intersection(Submodule.from_generators(Kb, m0 + m1))
    gens = []
    for v in inter.basis:
        c0 = K0.coordinates(v[:m0]) if k0 else ()
        c1 = K1.coordinates(v[m0:]) if k1 else ()
        gens.append(tuple(c0) + tuple(c1))
    return SubgroupInProduct((free(k0), free(k1)), tuple(gens))


def verify_witness(A0: BilinearForm, A1: BilinearForm, M: Submodule) -> CobordismReport:
    """Check a candidate witness ``M`` of ``A0 ~ A1`` clause by clause."""
    _check_pair(A0, A1)
    m0, m1 = A0.rank, A1.rank
    if M.ambient_rank != m0 + m1:
        raise ValueError(f"witness lives in Z^{M.ambient_rank}, expected Z^{m0 + m1}")
    B = assemble_difference(A0, A1)
    inv0, inv1 = invariants(A0), invariants(A1)
    K0, K1 = inv0.kernel_of_adjoint, inv1.kernel_of_adjoint
    T0, T1 = inv0.torsion_of_cokernel, inv1.torsion_of_cokernel
    clauses = {}
    notes = []

    # (1) metabolizer for B
    meta = verify_metabolizer(B, M)
    clauses["metabolizer"] = meta.ok
    if not meta.ok:
        notes.append(f"metabolizer: {meta.failed} ({meta.detail})")

    # (2) image of M in G / Ker S_B* is pure, i.e. M + Ker is pure in G
    K = Submodule.from_generators(IntMatrix.block_diag(K0.basis, K1.basis), m0 + m1)
    mbar_pure = is_pure(M + K) if (M.rank or K.rank) else True
    clauses["mbar_pure"] = mbar_pure

    # (c1)
    kgraph = _kernel_graph(M, K0, K1)
    phi = is_graph_of_isomorphism(kgraph)
    clauses["c1"] = phi is not None

    # (c2)
    adjB = B.adjoint_matrix
    image = Submodule.from_generators(
        M.basis @ adjB.T if M.rank else IntMatrix([], cols=m0 + m1), m0 + m1)
    N = saturate(image)
    adj_span = Submodule.from_generators(adjB.T, m0 + m1)
    identity = adj_span.intersection(N) == image
    d0, d1 = inv0.cokernel_data, inv1.cokernel_data
    t0, t1 = len(T0.torsion), len(T1.torsion)
    gens = []
    lands_in_torsion = True
    for w in N.basis:
        c0 = d0.coordinates(w[:m0])
        c1 = d1.coordinates(w[m0:])
        if any(c0[t0:]) or any(c1[t1:]):
            lands_in_torsion = False
        gens.append(c0[:t0] + c1[:t1])
    tgraph = SubgroupInProduct((T0, T1), tuple(gens))
    theta = is_graph_of_isomorphism(tgraph) if lands_in_torsion else None
    clauses["c2"] = theta is not None
    order = tgraph.order() if lands_in_torsion else None
    order_check = (order if order is not None else -1, T0.torsion_order)

    failed = None
    for key, clause in (("metabolizer", FailedClause.NOT_METABOLIZER),
                        ("mbar_pure", FailedClause.MBAR_NOT_PURE),
                        ("c1", FailedClause.C1_NOT_GRAPH),
                        ("c2", FailedClause.C2_NOT_GRAPH)):
        if not clauses[key]:
            failed = clause
            break
    verdict = failed is None
    return CobordismReport(
        verdict=verdict,
        metabolizer=M,
        phi=phi,
        theta=theta,
        failed_clause=failed,
        order_check=order_check,
        clauses=clauses,
        kernel_bases=(K0.basis, K1.basis),
        torsion=(T0, T1),
        image_generators=tuple(gens),
        intersection_identity=identity,
        detail="; ".join(notes),
    )


def diagonal_witness(A: BilinearForm) -> Submodule:
    """The diagonal ``{(x, x)}`` inside ``Z^m + Z^m``."""
    m = A.rank
    return Submodule.from_generators(IntMatrix.identity(m).hstack(IntMatrix.identity(m)), 2 * m)


def swap_witness(M: Submodule, m0: int, m1: int) -> Submodule:
    """``{(y, x) : (x, y) in M}`` inside ``Z^m1 + Z^m0``."""
    if M.ambient_rank != m0 + m1:
        raise ValueError(f"witness lives in Z^{M.ambient_rank}, expected Z^{m0 + m1}")
    order = list(range(m0, m0 + m1)) + list(range(m0))
    return Submodule.from_generators(M.basis.take_cols(order), m0 + m1)


def stabilize(A: BilinearForm, cross_row: Optional[Sequence[int]] = None,
              cross_col: Optional[Sequence[int]] = None,
              self_pair: int = 0) -> tuple[BilinearForm, Submodule]:
    """Add a hyperbolic-type pair ``l, l*`` and return the canonical witness.

    The new Gram matrix on ``G + Z l + Z l*`` is::

        [ A          0  cross_col ]
        [ 0          0  1         ]
        [ cross_row  0  self_pair ]

    so ``l`` pairs trivially with everything except ``A'(l, l*) = 1``.  The
    witness is the diagonal of ``G`` together with ``l``, a submodule of
    ``Z^m + Z^(m+2)`` of rank ``m + 1``.
    """
    m = A.rank
    row = [0] * m if cross_row is None else list(cross_row)
    col = [0] * m if cross_col is None else list(cross_col)
    if len(row) != m or len(col) != m:
        raise ValueError(f"cross pairings must have length {m}")
    g = A.gram.tolist()
    new = [g[i] + [0, col[i]] for i in range(m)]
    new.append([0] * m + [0, 1])
    new.append(row + [0, self_pair])
    A2 = BilinearForm(IntMatrix(new, rows=m + 2, cols=m + 2), A.epsilon, A.adjoint, A.n)
    diag = IntMatrix.identity(m).hstack(IntMatrix.identity(m)).hstack(IntMatrix.zeros(m, 2))
    ell = IntMatrix([[0] * (2 * m) + [1, 0]])
    return A2, Submodule.from_generators(diag.vstack(ell), 2 * m + 2)


def cobordism_obstruction(A0: BilinearForm, A1: BilinearForm) -> Optional[Obstruction]:
    """Group-level reasons that no witness can exist (beyond Witt obstructions).

    ``phi`` and ``theta`` are isomorphisms, so the kernels must have equal
    rank and the cokernel torsion subgroups must be isomorphic.
    """
    inv0, inv1 = invariants(A0), invariants(A1)
    k0, k1 = inv0.kernel_of_adjoint.rank, inv1.kernel_of_adjoint.rank
    if k0 != k1:
        return Obstruction("kernel_rank_mismatch", f"Ker S0* has rank {k0}, Ker S1* has rank {k1}")
    if inv0.torsion_of_cokernel != inv1.torsion_of_cokernel:
        return Obstruction("torsion_mismatch",
                           f"Tors Coker S0* = {inv0.torsion_of_cokernel}, "
                           f"Tors Coker S1* = {inv1.torsion_of_cokernel}")
    return None


def search_witness(A0: BilinearForm, A1: BilinearForm, height: int = DEFAULT_HEIGHT,
                   nodes: int = DEFAULT_NODES) -> SearchOutcome:
    """Search for a witness of ``A0 ~ A1`` among short-vector metabolizers of ``B``.

    A partial metabolizer is pruned as soon as it contains a nonzero
    ``(x, 0)`` or ``(0, y)`` with ``x, y`` in the kernels: such an element
    survives into every extension and can never lie on the graph of an
    isomorphism.  Complete metabolizers are kept only if the full verifier
    accepts them.
    """
    _check_pair(A0, A1)
    m0, m1 = A0.rank, A1.rank
    B = assemble_difference(A0, A1)
    K0 = invariants(A0).kernel_of_adjoint
    K1 = invariants(A1).kernel_of_adjoint
    left = Submodule.from_generators(
        K0.basis.hstack(IntMatrix.zeros(K0.rank, m1)), m0 + m1)
    right = Submodule.from_generators(
        IntMatrix.zeros(K1.rank, m0).hstack(K1.basis), m0 + m1)

    def prune(M: Submodule) -> bool:
        return ((left.rank and M.intersection(left).rank > 0) or
                (right.rank and M.intersection(right).rank > 0))

    reports = {}

    def accept(M: Submodule) -> bool:
        rep = verify_witness(A0, A1, M)
        reports[M] = rep
        return rep.verdict

    out = find_metabolizer(B, height, nodes, prune=prune, accept=accept,
                           extra_obstruction=lambda: cobordism_obstruction(A0, A1))
    if out.found:
        M = out.witness.submodule
        rep = reports.get(M) or verify_witness(A0, A1, M)
        return SearchOutcome(out.verdict, out.stats, out.witness, None, rep)
    return out
