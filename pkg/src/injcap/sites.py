"""The per-prime socle data shared by both ring universes."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Any, Callable, List, NamedTuple, Optional

from .fields import Field
from .linalg import Matrix


@dataclass(eq=False)
class SocleSite:
    """One prime, its residue field and the socles of N and M there.

    ``evaluator`` sends a hom (in the universe's own representation) to the
    ``dim_m x dim_n`` matrix over ``kappa`` of its restriction to socles.
    ``residue`` sends a ring element to kappa; ``lift`` goes back, so that
    ``residue(lift(a)) == a``.  ``kappa_elements(n)`` lists n distinct
    residues in canonical order; their lifts are what the searches use.
    """

    key: str
    kappa: Field
    dim_n: int
    dim_m: int
    evaluator: Callable[[Any], Matrix]
    residue: Callable[[Any], Any]
    lift: Callable[[Any], Any]
    is_maximal: bool = True
    n_basis: Optional[list] = None
    m_basis: Optional[list] = None
    sort_key: tuple = ()

    @property
    def active(self) -> bool:
        return self.dim_n > 0

    def kappa_elements(self, count: int) -> list:
        return self.kappa.first_elements(count)

    def __repr__(self):
        return f"SocleSite({self.key}, kappa={self.kappa!r}, soc N={self.dim_n}, soc M={self.dim_m})"


class InjectivityReport(NamedTuple):
    injective: bool
    prime: Optional[str] = None
    witness: Optional[tuple] = None

    def __bool__(self):
        return self.injective


def socle_injective(site: SocleSite, hom) -> InjectivityReport:
    """Socle test at one site; the witness is a kappa-vector in the kernel."""
    if not site.active:
        return InjectivityReport(True)
    e = site.evaluator(hom)
    if e.rank() == site.dim_n:
        return InjectivityReport(True)
    return InjectivityReport(False, site.key, e.kernel().column(0))


def row_matrix(site: SocleSite, homs: List) -> Matrix:
    """Socle matrix of the row (h_1, ..., h_t) at ``site``."""
    if not homs:
        return Matrix.zeros(site.kappa, site.dim_m, 0)
    return Matrix.hstack(*[site.evaluator(h) for h in homs])


def column_matrix(site: SocleSite, homs: List) -> Matrix:
    if not homs:
        return Matrix(site.kappa, [], site.dim_n)
    return Matrix.vstack(*[site.evaluator(h) for h in homs])
