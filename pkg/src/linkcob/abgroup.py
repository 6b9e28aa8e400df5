"""Finitely generated abelian groups and homomorphisms between them.

A group is stored in invariant-factor form ``Z/d_1 + ... + Z/d_k + Z^r``
with ``d_1 | d_2 | ... | d_k`` and every ``d_i >= 2``.  Elements are
coordinate tuples against these generators: the torsion coordinates come
first (reduced modulo ``d_i``), then the free ones.

Subgroups are handled through their preimage lattice in ``Z^ngens``, which
always contains the relation lattice ``d_1 Z + ... + d_k Z + 0``.  That
turns every question about subgroups (equality, membership, kernels,
images) into a lattice computation from :mod:`linkcob.zlattice`.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import prod
from typing import Iterator, Optional, Sequence

from .zlattice import IntMatrix, Submodule, cokernel, kernel_basis, solve


class BudgetExceeded(RuntimeError):
    """An enumeration would exceed its element budget."""


@dataclass(frozen=True)
class FgAbelianGroup:
    free_rank: int = 0
    torsion: tuple[int, ...] = ()

    def __post_init__(self):
        t = tuple(int(d) for d in self.torsion)
        object.__setattr__(self, "torsion", t)
        if self.free_rank < 0:
            raise ValueError("negative free rank")
        if any(d < 2 for d in t):
            raise ValueError(f"invariant factors must be >= 2, got {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"invariant factors {t} do not form a divisibility chain")

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.torsion + (0,) * self.free_rank

    @property
    def ngens(self) -> int:
        return len(self.torsion) + self.free_rank

    @property
    def torsion_order(self) -> int:
        return prod(self.torsion)

    @property
    def order(self) -> Optional[int]:
        """Group order, or None for an infinite group."""
        return None if self.free_rank else self.torsion_order

    def is_trivial(self) -> bool:
        return self.ngens == 0

    def is_free(self) -> bool:
        return not self.torsion

    def is_finite(self) -> bool:
        return self.free_rank == 0

    def torsion_subgroup(self) -> "FgAbelianGroup":
        return FgAbelianGroup(0, self.torsion)

    def free_quotient(self) -> "FgAbelianGroup":
        return FgAbelianGroup(self.free_rank)

    def reduce(self, x: Sequence[int]) -> tuple[int, ...]:
        if len(x) != self.ngens:
            raise ValueError(f"element {tuple(x)} has wrong length for {self}")
        return tuple(v % d if d else v for v, d in zip(x, self.moduli))

    def relation_lattice(self) -> Submodule:
        return relation_lattice(self.moduli)

    def direct_sum(self, other: "FgAbelianGroup") -> "FgAbelianGroup":
        return from_presentation(IntMatrix.diag(self.moduli + other.moduli))

    def __str__(self) -> str:
        parts = [f"Z/{d}" for d in self.torsion]
        if self.free_rank == 1:
            parts.append("Z")
        elif self.free_rank > 1:
            parts.append(f"Z^{self.free_rank}")
        return " + ".join(parts) if parts else "0"


def free(rank: int) -> FgAbelianGroup:
    return FgAbelianGroup(rank)


def cyclic(d: int) -> FgAbelianGroup:
    return FgAbelianGroup(1) if d == 0 else FgAbelianGroup(0, (d,) if d > 1 else ())


def from_presentation(relations) -> FgAbelianGroup:
    """The group ``Z^n / rowspan(relations)``."""
    R = relations if isinstance(relations, IntMatrix) else IntMatrix(relations)
    G, _ = cokernel(R.T)
    return G


def relation_lattice(moduli: Sequence[int]) -> Submodule:
    n = len(moduli)
    return Submodule.from_generators(
        [[d if i == j else 0 for j in range(n)] for i, d in enumerate(moduli) if d], n)


@dataclass(frozen=True)
class Subgroup:
    """Subgroup of ``Z/m_1 + ... + Z/m_n`` (``m_i = 0`` meaning ``Z``).

    Stored as its preimage lattice in ``Z^n``, which contains the relations.
    """

    moduli: tuple[int, ...]
    lattice: Submodule

    @classmethod
    def generated_by(cls, moduli: Sequence[int], gens: Sequence[Sequence[int]]) -> "Subgroup":
        moduli = tuple(moduli)
        G = IntMatrix(gens, cols=len(moduli)) if len(gens) else IntMatrix([], cols=len(moduli))
        return cls(moduli, Submodule.from_generators(G.vstack(relation_lattice(moduli).basis)))

    def __contains__(self, x) -> bool:
        return tuple(x) in self.lattice

    def is_whole(self) -> bool:
        return self.lattice == Submodule.full(len(self.moduli))

    def is_trivial(self) -> bool:
        return self.lattice == relation_lattice(self.moduli)

    def order(self) -> Optional[int]:
        """Number of elements, or None when the subgroup is infinite."""
        tors = [i for i, d in enumerate(self.moduli) if d]
        if self.lattice.rank > len(tors):
            return None
        if not tors:
            return 1
        sub = self.lattice.project(tors)
        return prod(self.moduli[i] for i in tors) // sub.index()


@dataclass(frozen=True)
class GroupHom:
    """A homomorphism given by its matrix on the normal-form generators.

    ``matrix`` has shape ``(target.ngens, source.ngens)`` and acts on column
    coordinate vectors.  Entries are reduced modulo the target's torsion,
    so equal homomorphisms compare equal.  Construction fails unless every
    torsion generator of the source lands on an element of compatible order.
    """

    source: FgAbelianGroup
    target: FgAbelianGroup
    matrix: IntMatrix

    def __post_init__(self):
        F = self.matrix if isinstance(self.matrix, IntMatrix) else IntMatrix(
            self.matrix, rows=self.target.ngens, cols=self.source.ngens)
        if F.shape != (self.target.ngens, self.source.ngens):
            raise ValueError(f"matrix shape {F.shape} does not fit {self.source} -> {self.target}")
        tm = self.target.moduli
        for j, d in enumerate(self.source.moduli):
            if d == 0:
                continue
            for i, t in enumerate(tm):
                if ((d * F[i, j]) % t) if t else F[i, j]:
                    raise ValueError(f"not well defined: generator {j} of order {d} "
                                     f"cannot map to {F.col(j)} in {self.target}")
        reduced = IntMatrix([[x % t if t else x for x in row] for row, t in zip(F, tm)],
                            rows=F.rows, cols=F.cols)
        object.__setattr__(self, "matrix", reduced)

    @classmethod
    def identity(cls, G: FgAbelianGroup) -> "GroupHom":
        return cls(G, G, IntMatrix.identity(G.ngens))

    @classmethod
    def zero(cls, G: FgAbelianGroup, H: FgAbelianGroup) -> "GroupHom":
        return cls(G, H, IntMatrix.zeros(H.ngens, G.ngens))

    def __call__(self, x: Sequence[int]) -> tuple[int, ...]:
        return self.target.reduce(self.matrix.apply(x))

    def compose(self, inner: "GroupHom") -> "GroupHom":
        """``self ∘ inner``."""
        if inner.target != self.source:
            raise ValueError("maps are not composable")
        return GroupHom(inner.source, self.target, self.matrix @ inner.matrix)

    def image(self) -> Subgroup:
        cols = [self.matrix.col(j) for j in range(self.source.ngens)]
        return Subgroup.generated_by(self.target.moduli, cols)

    def kernel(self) -> Subgroup:
        # x lies over the kernel iff F x = R y for some y
        n = self.source.ngens
        R = IntMatrix.diag(self.target.moduli)
        sol = kernel_basis(self.matrix.hstack(-R))
        return Subgroup(self.source.moduli, sol.project(range(n)))

    def is_injective(self) -> bool:
        return self.kernel().is_trivial()

    def is_surjective(self) -> bool:
        return self.image().is_whole()

    def is_isomorphism(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def preimage_of(self, y: Sequence[int]) -> Optional[tuple[int, ...]]:
        """Some ``x`` with ``self(x) == y``, or None."""
        R = IntMatrix.diag(self.target.moduli)
        sol = solve(self.matrix.hstack(R), list(y))
        return None if sol is None else self.source.reduce(sol[:self.source.ngens])

    def inverse(self) -> "GroupHom":
        if not self.is_isomorphism():
            raise ValueError("only isomorphisms have inverses")
        n = self.target.ngens
        cols = [self.preimage_of([int(i == j) for i in range(n)]) for j in range(n)]
        return GroupHom(self.target, self.source,
                        IntMatrix.from_columns(cols, self.source.ngens))

    def __str__(self) -> str:
        return f"{self.source} -> {self.target}: {self.matrix.tolist()}"


def is_exact_at(f: GroupHom, g: GroupHom) -> bool:
    """Whether ``im f == ker g`` inside the common group."""
    if f.target != g.source:
        raise ValueError(f"maps are not composable: {f.target} vs {g.source}")
    return f.image().lattice == g.kernel().lattice


@dataclass(frozen=True)
class SubgroupInProduct:
    """A subgroup of ``G0 + G1``; generators are ``G0`` coordinates followed by ``G1``'s."""

    ambient: tuple[FgAbelianGroup, FgAbelianGroup]
    generators: tuple[tuple[int, ...], ...] = field(default=())

    def __post_init__(self):
        G0, G1 = self.ambient
        n0 = G0.ngens
        gens = []
        for g in self.generators:
            if len(g) != n0 + G1.ngens:
                raise ValueError(f"generator {tuple(g)} does not live in {G0} + {G1}")
            gens.append(G0.reduce(g[:n0]) + G1.reduce(g[n0:]))
        object.__setattr__(self, "generators", tuple(gens))

    @property
    def moduli(self) -> tuple[int, ...]:
        return self.ambient[0].moduli + self.ambient[1].moduli

    def subgroup(self) -> Subgroup:
        return Subgroup.generated_by(self.moduli, self.generators)

    def order(self) -> Optional[int]:
        return self.subgroup().order()

    def elements(self, budget: int = 10**5) -> set[tuple[int, ...]]:
        """All elements, by closure under addition.  Finite ambients only."""
        mods = self.moduli
        if not all(mods):
            raise ValueError("element enumeration needs finite factors")
        seen = {(0,) * len(mods)}
        frontier = list(seen)
        while frontier:
            nxt = []
            for x in frontier:
                for g in self.generators:
                    y = tuple((a + b) % d for a, b, d in zip(x, g, mods))
                    if y not in seen:
                        seen.add(y)
                        if len(seen) > budget:
                            raise BudgetExceeded(f"more than {budget} elements")
                        nxt.append(y)
            frontier = nxt
        return seen


def graph_of(phi: GroupHom) -> SubgroupInProduct:
    """``{(x, phi(x))}`` as a subgroup of ``source + target``."""
    n = phi.source.ngens
    gens = [tuple(int(i == j) for i in range(n)) + phi.matrix.col(j) for j in range(n)]
    return SubgroupInProduct((phi.source, phi.target), tuple(gens))


def is_graph_of_isomorphism(H: SubgroupInProduct) -> Optional[GroupHom]:
    """If ``H = {(x, phi(x))}`` for an isomorphism ``phi: G0 -> G1``, return phi.

    Both factors must be free, or both finite.  ``H`` is a graph exactly when
    its projection to ``G0`` is bijective; ``phi`` is then read off by
    lifting each generator of ``G0`` into ``H``, and must itself be bijective.
    """
    G0, G1 = H.ambient
    if not ((G0.is_free() and G1.is_free()) or (G0.is_finite() and G1.is_finite())):
        raise ValueError(f"ambient {G0} + {G1} must be free x free or finite x finite")
    n0, n1 = G0.ngens, G1.ngens
    L = H.subgroup().lattice
    B0 = L.basis.take_cols(range(n0))
    B1 = L.basis.take_cols(range(n0, n0 + n1))
    if L.project(range(n0)) != Submodule.full(n0):
        return None
    # elements (0, y) of H must all be trivial in G1
    c = kernel_basis(B0.T)
    rel1 = G1.relation_lattice()
    if c.rank and not all(y in rel1 for y in c.basis @ B1):
        return None
    cols = [B1.T.apply(solve(B0.T, [int(i == j) for j in range(n0)])) for i in range(n0)]
    phi = GroupHom(G0, G1, IntMatrix.from_columns(cols, n1))
    return phi if phi.is_isomorphism() else None


def torsion_elements(G: FgAbelianGroup, budget: int = 10**5) -> Iterator[tuple[int, ...]]:
    """Every element of the torsion subgroup of ``G`` exactly once."""
    if G.torsion_order > budget:
        raise BudgetExceeded(
            f"torsion subgroup of order {G.torsion_order} exceeds budget {budget}")
    tail = (0,) * G.free_rank
    return (x + tail for x in itertools.product(*(range(d) for d in G.torsion)))
