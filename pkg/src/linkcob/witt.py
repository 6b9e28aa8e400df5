"""Metabolizers: verification, sound obstructions and bounded search.

A metabolizer for a form ``A`` of even rank ``m`` is a pure submodule of
rank ``m/2`` on which ``A`` vanishes identically.  Existence over ``Z`` has
no small complete decision procedure, so :func:`find_metabolizer` is a
search that is exhaustive only up to a coordinate height bound.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass, field
from math import gcd
from typing import Callable, Optional

from .forms import BilinearForm, signature
from .zlattice import IntMatrix, Submodule, is_pure, rank, saturate

DEFAULT_HEIGHT = 5
DEFAULT_NODES = 10**6


@dataclass(frozen=True)
class MetabolizerCheck:
    ok: bool
    failed: Optional[str] = None
    detail: str = ""

    def __bool__(self) -> bool:
        return self.ok


def _vanishes_on(A: BilinearForm, M: Submodule) -> bool:
    B = M.basis
    return (B @ A.gram @ B.T).is_zero() if B.rows else True


def verify_metabolizer(A: BilinearForm, M: Submodule) -> MetabolizerCheck:
    """Check the four defining clauses in order, naming the first failure."""
    m = A.rank
    if M.ambient_rank != m:
        raise ValueError(f"submodule lives in Z^{M.ambient_rank}, form has rank {m}")
    if m % 2:
        return MetabolizerCheck(False, "odd_rank", f"rank {m} is odd")
    if not is_pure(M):
        return MetabolizerCheck(False, "not_pure", "quotient by the submodule has torsion")
    if M.rank != m // 2:
        return MetabolizerCheck(False, "wrong_rank", f"rank {M.rank}, need {m // 2}")
    if not _vanishes_on(A, M):
        return MetabolizerCheck(False, "not_isotropic", "form does not vanish on M x M")
    return MetabolizerCheck(True)


@dataclass(frozen=True)
class MetabolizerWitness:
    form: BilinearForm
    submodule: Submodule

    def verify(self) -> MetabolizerCheck:
        return verify_metabolizer(self.form, self.submodule)


@dataclass(frozen=True)
class Obstruction:
    kind: str
    detail: str

    def __str__(self) -> str:
        return f"{self.kind}: {self.detail}"


def obstructions(A: BilinearForm) -> Optional[Obstruction]:
    """Cheap sound reasons for ``A`` to have no metabolizer.

    ``odd_rank`` is immediate.  For ``epsilon = +1`` a metabolizer of ``A``
    is a half-rank isotropic subspace of the symmetric form ``S``.  Over Q
    the largest isotropic subspace of ``S`` has dimension
    ``min(p, q) + z`` (``p, q`` positive and negative inertia, ``z`` the
    nullity), which reaches ``m/2`` exactly when ``|signature| <= z``.  So a
    nonzero signature only obstructs when it exceeds the nullity; for
    nondegenerate ``S`` that is any nonzero signature.
    """
    if A.rank % 2:
        return Obstruction("odd_rank", f"rank {A.rank} is odd")
    if A.epsilon == 1:
        S = A.symmetrized
        sig = signature(S)
        nullity = A.rank - rank(S)
        if abs(sig) > nullity:
            detail = f"signature {sig}"
            if nullity:
                detail += f" exceeds nullity {nullity}"
            return Obstruction("nonzero_signature", detail)
    return None


class Verdict(enum.Enum):
    FOUND = "found"
    IMPOSSIBLE = "impossible_by_obstruction"
    NOT_FOUND = "not_found_within_bounds"


@dataclass
class SearchStats:
    height: int
    node_budget: int
    nodes: int = 0
    candidates: int = 0
    exhausted_budget: bool = False


@dataclass(frozen=True)
class SearchOutcome:
    verdict: Verdict
    stats: SearchStats
    witness: Optional[MetabolizerWitness] = None
    obstruction: Optional[Obstruction] = None
    report: object = field(default=None, compare=False)

    @property
    def found(self) -> bool:
        return self.verdict is Verdict.FOUND


class SearchInterrupted(KeyboardInterrupt):
    """Raised when a search is interrupted; carries the partial stats."""

    def __init__(self, stats: SearchStats):
        super().__init__("search interrupted")
        self.stats = stats


class _OutOfNodes(Exception):
    pass


def primitive_vectors(m: int, height: int):
    """Primitive vectors of ``Z^m`` with entries in ``[-height, height]``.

    Lexicographic order; only the representative whose first nonzero
    coordinate is positive is produced.
    """
    for v in itertools.product(range(-height, height + 1), repeat=m):
        first = next((x for x in v if x), 0)
        if first > 0 and gcd(*v) == 1:
            yield v


def isotropic_candidates(A: BilinearForm, height: int) -> list[tuple[int, ...]]:
    return [v for v in primitive_vectors(A.rank, height) if A(v, v) == 0]


def find_metabolizer(
    A: BilinearForm,
    height: int = DEFAULT_HEIGHT,
    nodes: int = DEFAULT_NODES,
    *,
    prune: Optional[Callable[[Submodule], bool]] = None,
    accept: Optional[Callable[[Submodule], bool]] = None,
    extra_obstruction: Optional[Callable[[], Optional[Obstruction]]] = None,
) -> SearchOutcome:
    """Depth-first search for a metabolizer spanned by short vectors.

    Candidates are the isotropic primitive vectors of height at most
    ``height`` in lexicographic order.  A partial solution is a saturated
    isotropic submodule; it is extended by a later candidate that pairs to
    zero with it (both ways), then saturated again and re-checked.  Every
    candidate examined counts as one node.

    ``prune(partial)`` may reject a branch and ``accept(full)`` may reject
    a complete metabolizer; both are used by the cobordism search.
    """
    if height < 1 or nodes < 1:
        raise ValueError("height and node budget must be positive")
    stats = SearchStats(height=height, node_budget=nodes)
    obs = obstructions(A) or (extra_obstruction() if extra_obstruction else None)
    if obs is not None:
        return SearchOutcome(Verdict.IMPOSSIBLE, stats, obstruction=obs)
    m = A.rank
    half = m // 2
    if half == 0:
        M = Submodule.zero(m)
        if accept is None or accept(M):
            return SearchOutcome(Verdict.FOUND, stats, MetabolizerWitness(A, M))
        return SearchOutcome(Verdict.NOT_FOUND, stats)

    try:
        cands = isotropic_candidates(A, height)
    except KeyboardInterrupt:
        raise SearchInterrupted(stats) from None
    stats.candidates = len(cands)
    gram = A.gram

    def pairs_to_zero(v, M: Submodule) -> bool:
        Av = gram.apply(v)
        vA = IntMatrix([v]) @ gram
        return all(sum(a * b for a, b in zip(row, Av)) == 0 and
                   sum(a * b for a, b in zip(vA[0], row)) == 0 for row in M.basis)

    def dfs(start: int, M: Submodule) -> Optional[Submodule]:
        for idx in range(start, len(cands)):
            stats.nodes += 1
            if stats.nodes > nodes:
                raise _OutOfNodes
            v = cands[idx]
            if v in M or not pairs_to_zero(v, M):
                continue
            ext = saturate(M.with_vector(v))
            # cheap insurance: the saturated basis is checked, not just the generators
            if not _vanishes_on(A, ext):
                continue
            if prune is not None and prune(ext):
                continue
            if ext.rank == half:
                if accept is None or accept(ext):
                    return ext
                continue
            found = dfs(idx + 1, ext)
            if found is not None:
                return found
        return None

    try:
        M = dfs(0, Submodule.zero(m))
    except _OutOfNodes:
        stats.nodes = nodes
        stats.exhausted_budget = True
        return SearchOutcome(Verdict.NOT_FOUND, stats)
    except KeyboardInterrupt:
        raise SearchInterrupted(stats) from None
    if M is None:
        return SearchOutcome(Verdict.NOT_FOUND, stats)
    return SearchOutcome(Verdict.FOUND, stats, MetabolizerWitness(A, M))
