"""Exactness of the torsion-free homology sequence of a Seifert surface.

For a Seifert surface ``F`` of a link ``K`` the relevant sequence is ::

    0 -> H_n(K) -> H_n(F)/Tors -> H_n(F,K)/Tors -> H_{n-1}(K) -> 0

Only this homological shadow is modelled.  The last map need not descend to
``H_n(F,K)/Tors``; :meth:`SeifertHomologyData.build` rejects data where the
torsion of ``H_n(F,K)`` does not die in ``H_{n-1}(K)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .abgroup import FgAbelianGroup, GroupHom, free, is_exact_at
from .forms import BilinearForm, invariants
from .zlattice import IntMatrix


class IllDefinedBoundary(ValueError):
    """The boundary map does not factor through ``H_n(F,K)/Tors``."""


POSITIONS = {
    1: "H_n(K) -> H_n(F)/Tors is not injective",
    2: "not exact at H_n(F)/Tors",
    3: "not exact at H_n(F,K)/Tors",
    4: "H_n(F,K)/Tors -> H_{n-1}(K) is not surjective",
}


@dataclass(frozen=True)
class SeifertHomologyData:
    HnK: FgAbelianGroup
    HnF_modTors: FgAbelianGroup
    HnFK_modTors: FgAbelianGroup
    Hn1K: FgAbelianGroup
    alpha: GroupHom
    beta: GroupHom
    boundary: GroupHom

    def __post_init__(self):
        for name in ("HnK", "HnF_modTors", "HnFK_modTors"):
            if not getattr(self, name).is_free():
                raise ValueError(f"{name} must be torsion free, got {getattr(self, name)}")
        chain = [("alpha", self.alpha, self.HnK, self.HnF_modTors),
                 ("beta", self.beta, self.HnF_modTors, self.HnFK_modTors),
                 ("boundary", self.boundary, self.HnFK_modTors, self.Hn1K)]
        for name, f, src, dst in chain:
            if f.source != src or f.target != dst:
                raise ValueError(f"{name} goes {f.source} -> {f.target}, expected {src} -> {dst}")

    @classmethod
    def build(cls, HnK: FgAbelianGroup, HnF: FgAbelianGroup, HnFK: FgAbelianGroup,
              Hn1K: FgAbelianGroup, alpha, beta, boundary) -> "SeifertHomologyData":
        """Assemble data from maps given on the full groups.

        ``HnF`` and ``HnFK`` may carry torsion; the maps are then given on all
        their generators and are pushed down to the torsion-free quotients.
        Raises :class:`IllDefinedBoundary` if the boundary map is nonzero on
        the torsion of ``HnFK``.
        """
        if not HnK.is_free():
            raise ValueError(f"H_n(K) must be torsion free, got {HnK}")
        a = GroupHom(HnK, HnF, _m(alpha, HnF.ngens, HnK.ngens))
        b = GroupHom(HnF, HnFK, _m(beta, HnFK.ngens, HnF.ngens))
        try:
            d = GroupHom(HnFK, Hn1K, _m(boundary, Hn1K.ngens, HnFK.ngens))
        except ValueError as exc:
            raise IllDefinedBoundary(str(exc)) from None
        tF, tFK = len(HnF.torsion), len(HnFK.torsion)
        for j in range(tFK):
            if any(d.matrix.col(j)):
                raise IllDefinedBoundary(
                    f"torsion generator {j} of H_n(F,K) maps to {d.matrix.col(j)} != 0 "
                    "in H_{n-1}(K); the map does not descend to H_n(F,K)/Tors")
        F, FK = HnF.free_quotient(), HnFK.free_quotient()
        return cls(
            HnK, F, FK, Hn1K,
            GroupHom(HnK, F, a.matrix.take_rows(range(tF, HnF.ngens))),
            GroupHom(F, FK, b.matrix.take_rows(range(tFK, HnFK.ngens))
                     .take_cols(range(tF, HnF.ngens))),
            GroupHom(FK, Hn1K, d.matrix.take_cols(range(tFK, HnFK.ngens))),
        )


def _m(x, rows: int, cols: int) -> IntMatrix:
    return x if isinstance(x, IntMatrix) else IntMatrix(x, rows=rows, cols=cols)


@dataclass(frozen=True)
class ExactnessReport:
    exact: bool
    failures: tuple[int, ...]

    @property
    def first_failure(self) -> Optional[int]:
        return self.failures[0] if self.failures else None

    def describe(self) -> list[str]:
        return [f"position {p}: {POSITIONS[p]}" for p in self.failures]

    def __bool__(self) -> bool:
        return self.exact


def is_exact_surface(data: SeifertHomologyData) -> ExactnessReport:
    checks = {
        1: data.alpha.is_injective(),
        2: is_exact_at(data.alpha, data.beta),
        3: is_exact_at(data.beta, data.boundary),
        4: data.boundary.is_surjective(),
    }
    failures = tuple(p for p, ok in checks.items() if not ok)
    return ExactnessReport(not failures, failures)


def data_from_form(A: BilinearForm) -> SeifertHomologyData:
    """The exact sequence ``0 -> Ker S* -> G -> G* -> Coker S* -> 0`` of a form."""
    m = A.rank
    inv = invariants(A)
    K = inv.kernel_of_adjoint
    G = free(m)
    return SeifertHomologyData(
        HnK=free(K.rank),
        HnF_modTors=G,
        HnFK_modTors=G,
        Hn1K=inv.cokernel,
        alpha=GroupHom(free(K.rank), G, K.basis.T if K.rank else IntMatrix.zeros(m, 0)),
        beta=GroupHom(G, G, A.adjoint_matrix),
        boundary=GroupHom(G, inv.cokernel, inv.cokernel_data.projection),
    )


FIXTURE_NOTES = {
    "F0-product": "K = S^{n-1} x S^n bounding F0 = D^n x S^n; every map but the middle one is an iso",
    "F1-product": "K = S^{n-1} x S^n bounding F1 = S^{n-1} x D^{n+1}; H_n(F1) = H_n(F1,K) = 0",
    "sphere-knot": "homotopy sphere: H_n(K) = H_{n-1}(K) = 0, beta the unimodular intersection form",
    "simple-link": "(n-1)-connected surface; sequence is a piece of the long exact sequence",
    "fibered-fiber": "fiber of a fibered link; H_n(F) and H_n(F,K) have equal rank by duality",
}


def fixture(name: str) -> SeifertHomologyData:
    """Named surface data sets (see ``FIXTURE_NOTES``)."""
    Z, O = free(1), free(0)
    if name == "F0-product":
        return SeifertHomologyData.build(Z, Z, Z, Z, [[1]], [[0]], [[1]])
    if name == "F1-product":
        return SeifertHomologyData.build(Z, O, O, Z, IntMatrix.zeros(0, 1),
                                         IntMatrix.zeros(0, 0), IntMatrix.zeros(1, 0))
    if name == "sphere-knot":
        G = free(2)
        return SeifertHomologyData.build(O, G, G, O, IntMatrix.zeros(2, 0), [[0, 1], [-1, 0]],
                                         IntMatrix.zeros(0, 2))
    if name == "simple-link":
        # S = [[0, 0], [0, 2]]: H_n(K) = Z, H_{n-1}(K) = Z/2 + Z
        return data_from_form(BilinearForm([[0, 0], [0, 1]], 1))
    if name == "fibered-fiber":
        # unimodular Seifert matrix with epsilon = -1: S = [[0,1,0],[-1,0,0],[0,0,0]]
        return data_from_form(BilinearForm([[1, 1, 0], [0, 1, 0], [0, 0, 1]], -1))
    raise KeyError(f"unknown fixture {name!r}; choose from {sorted(FIXTURE_NOTES)}")
