"""Named Seifert matrices shipped with the package.

Each entry is a JSON form file with extra keys: ``notes``, the normalized
Alexander polynomial ``det(A - t A^T)`` (ascending coefficients) and an
``expected`` invariant summary for each value of epsilon.  Loading an entry
recomputes everything and refuses to return data that disagrees.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from importlib import resources
from pathlib import Path
from typing import Optional

from .forms import BilinearForm, invariants
from .zlattice import IntMatrix, det

BASE_NAMES = ("unknot", "zero-rank-1", "hyperbolic", "trefoil", "figure-eight")


class CorpusError(ValueError):
    pass


@dataclass(frozen=True)
class CorpusEntry:
    name: str
    form: BilinearForm
    expected: dict
    notes: str
    alexander: tuple[int, ...]

    def validate(self) -> None:
        got = invariants(self.form).summary()
        if got != self.expected:
            raise CorpusError(f"{self.name}: stored invariants {self.expected} != recomputed {got}")
        poly = alexander_polynomial(self.form.gram)
        if poly != self.alexander:
            raise CorpusError(f"{self.name}: stored Alexander polynomial {self.alexander} "
                              f"!= recomputed {poly}")


def data_dir() -> Path:
    return Path(str(resources.files("linkcob") / "data"))


def names() -> list[str]:
    """Base entries followed by their stabilizations."""
    return list(BASE_NAMES) + [f"{n}-stab" for n in BASE_NAMES]


def load(name: str, epsilon: Optional[int] = None, adjoint: str = "right") -> CorpusEntry:
    if name not in names():
        raise KeyError(f"unknown corpus entry {name!r}")
    raw = json.loads((data_dir() / f"{name}.json").read_text())
    eps = raw["epsilon"] if epsilon is None else epsilon
    m = len(raw["matrix"])
    form = BilinearForm(IntMatrix(raw["matrix"], rows=m, cols=m), eps, adjoint)
    entry = CorpusEntry(name, form, raw["expected"][str(eps)], raw.get("notes", ""),
                        tuple(raw["alexander"]))
    entry.validate()
    return entry


def alexander_polynomial(A: IntMatrix) -> tuple[int, ...]:
    """``det(A - t A^T)`` up to units ``±t^k``, as ascending coefficients.

    The determinant is evaluated at ``t = 0..m`` and interpolated exactly.
    Normalized so the lowest coefficient is nonzero and positive; the zero
    polynomial is ``()``.
    """
    m = A.rows
    pts = list(range(m + 1))
    vals = [det(A - t * A.T) for t in pts]
    # Vandermonde solve over Q
    rows = [[Fraction(t) ** k for k in range(m + 1)] + [Fraction(v)] for t, v in zip(pts, vals)]
    n = m + 1
    for c in range(n):
        p = next(i for i in range(c, n) if rows[i][c] != 0)
        rows[c], rows[p] = rows[p], rows[c]
        rows[c] = [x / rows[c][c] for x in rows[c]]
        for i in range(n):
            if i != c and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[c])]
    coeffs = [int(r[-1]) for r in rows]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    while coeffs and coeffs[0] == 0:
        coeffs.pop(0)
    if coeffs and coeffs[0] < 0:
        coeffs = [-c for c in coeffs]
    return tuple(coeffs)
