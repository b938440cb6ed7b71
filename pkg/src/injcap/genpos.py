"""General-position searches over finite grids.

Given finitely many fields and, for each coordinate j, a finite label set C_j
embedded injectively into every field, these routines find a grid point at
which several polynomials (one per field) are simultaneously nonzero, or at
which several matrix combinations keep a prescribed rank.  The cardinality
preconditions below guarantee a hit exists, so the searches are exhaustive
sweeps with early exit; running out of points is reported as an internal
contradiction rather than a normal failure.

Sweep order: the first coordinate varies fastest (the last coordinate is the
most significant), labels within a coordinate in sorted order.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, Iterator, List, NamedTuple, Sequence, Tuple

from .errors import HypothesisError, InfeasibleError, InputError, InternalContradiction
from .fields import Field
from .linalg import Matrix


@dataclass(frozen=True)
class GridProblem:
    """Fields k_1..k_s, label sets C_1..C_t and embeddings phi[j][i]: C_j -> k_i."""

    fields: Tuple[Field, ...]
    labels: Tuple[Tuple, ...]
    embeddings: Tuple[Tuple[Dict[Any, Any], ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple(self.fields))
        object.__setattr__(self, "labels", tuple(tuple(sorted(c)) for c in self.labels))
        object.__setattr__(self, "embeddings", tuple(tuple(dict(m) for m in row) for row in self.embeddings))
        if len(self.embeddings) != len(self.labels):
            raise InputError("one embedding row per label set required")
        for j, (cj, row) in enumerate(zip(self.labels, self.embeddings)):
            if len(set(cj)) != len(cj):
                raise InputError(f"label set C_{j + 1} has repeated labels")
            if len(row) != len(self.fields):
                raise InputError(f"C_{j + 1}: need one embedding per field")
            for i, (k, phi) in enumerate(zip(self.fields, row)):
                if set(phi) != set(cj):
                    raise InputError(f"embedding C_{j + 1} -> k_{i + 1} does not cover the labels")
                images = [k.canonical(phi[c]) for c in cj]
                if len(set(images)) != len(images):
                    raise InputError(f"embedding C_{j + 1} -> k_{i + 1} ({k!r}) is not injective")
                phi.update(zip(cj, images))

    @classmethod
    def canonical(cls, fields: Sequence[Field], sizes: Sequence[int]) -> "GridProblem":
        """Labels 0..n-1 sent to the first n canonical elements of every field."""
        embeddings = []
        for n in sizes:
            embeddings.append([dict(enumerate(k.first_elements(n))) for k in fields])
        return cls(tuple(fields), tuple(tuple(range(n)) for n in sizes), tuple(tuple(r) for r in embeddings))

    @property
    def s(self) -> int:
        return len(self.fields)

    @property
    def t(self) -> int:
        return len(self.labels)

    def image(self, point: Sequence, i: int) -> tuple:
        return tuple(self.embeddings[j][i][c] for j, c in enumerate(point))

    def points(self) -> Iterator[tuple]:
        return grid_points(self.labels)

    def size(self) -> int:
        n = 1
        for c in self.labels:
            n *= len(c)
        return n


def grid_points(label_sets: Sequence[Sequence]) -> Iterator[tuple]:
    """All points of C_1 x ... x C_t, first coordinate varying fastest."""
    for rev in itertools.product(*reversed([list(c) for c in label_sets])):
        yield tuple(reversed(rev))


@dataclass(frozen=True)
class MultiPoly:
    """A nonzero polynomial over field k_i whose monomials divide x^bounds."""

    field_index: int
    bounds: Tuple[int, ...]
    terms: Tuple[Tuple[Tuple[int, ...], Any], ...] = dc_field(default=())

    def __post_init__(self):
        terms = self.terms.items() if isinstance(self.terms, dict) else self.terms
        object.__setattr__(self, "terms", tuple(sorted((tuple(e), c) for e, c in terms)))
        object.__setattr__(self, "bounds", tuple(self.bounds))
        if not self.terms:
            raise InputError("MultiPoly must be nonzero")
        for e, _ in self.terms:
            if len(e) != len(self.bounds) or any(a < 0 or a > b for a, b in zip(e, self.bounds)):
                raise InputError(f"monomial {e} does not divide x^{self.bounds}")

    def evaluate(self, k: Field, values: Sequence) -> Any:
        acc = k.zero
        for e, c in self.terms:
            term = k.canonical(c)
            for v, a in zip(values, e):
                if a:
                    term = k.mul(term, k.pow(v, a))
            acc = k.add(acc, term)
        return acc


class Certificate(NamedTuple):
    point: tuple
    ranks: Tuple[int, ...]


def find_nonvanishing_point(gp: GridProblem, polys: Sequence[MultiPoly]) -> tuple:
    for f in polys:
        if not 0 <= f.field_index < gp.s:
            raise InputError(f"polynomial refers to field {f.field_index} of {gp.s}")
        if len(f.bounds) != gp.t:
            raise InputError("polynomial arity differs from the number of label sets")
        k = gp.fields[f.field_index]
        if all(k.is_zero(k.canonical(c)) for _, c in f.terms):
            raise InputError("MultiPoly has only zero coefficients")
    for j, cj in enumerate(gp.labels):
        need = sum(f.bounds[j] for f in polys)
        if len(cj) <= need:
            raise HypothesisError(f"|C_{j + 1}| = {len(cj)} must exceed {need}")
    for point in gp.points():
        if all(not gp.fields[f.field_index].is_zero(f.evaluate(gp.fields[f.field_index], gp.image(point, f.field_index)))
               for f in polys):
            return point
    raise InternalContradiction("grid exhausted although the cardinality bound holds")


@dataclass(frozen=True)
class RankTarget:
    """Data for one field: target rank r, base matrix A and matrices B_1..B_t."""

    r: int
    base: Matrix
    blocks: Tuple[Matrix, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(self.blocks))
        if self.r < 0:
            raise InputError("target rank must be nonnegative")


@dataclass(frozen=True)
class RankProblem:
    targets: Tuple[RankTarget, ...]
    mode: str = "block"            # "block" or "sum"
    orientation: str = "plain"     # "plain" or "transposed" (block mode)

    def __post_init__(self):
        object.__setattr__(self, "targets", tuple(self.targets))
        if self.mode not in ("block", "sum"):
            raise InputError(f"unknown mode {self.mode!r}")
        if self.orientation not in ("plain", "transposed"):
            raise InputError(f"unknown orientation {self.orientation!r}")

    def combination(self, i: int, scalars: Sequence) -> Matrix:
        tgt = self.targets[i]
        if self.mode == "sum":
            out = tgt.base
            for c, b in zip(scalars, tgt.blocks):
                out = out + b.scale(c)
            return out
        scaled = [b.scale(c) for c, b in zip(scalars, tgt.blocks)]
        stacked = Matrix.vstack(*scaled) if self.orientation == "transposed" else Matrix.hstack(*scaled)
        return tgt.base + stacked


def _check_shapes(rp: RankProblem, gp: GridProblem):
    if len(rp.targets) != gp.s:
        raise InputError("one rank target per field required")
    for i, tgt in enumerate(rp.targets):
        if len(tgt.blocks) != gp.t:
            raise InputError(f"field {i + 1}: need {gp.t} blocks")
        k = gp.fields[i]
        if tgt.base.field != k or any(b.field != k for b in tgt.blocks):
            raise InputError(f"field {i + 1}: matrices over the wrong field")


def _sweep(rp: RankProblem, gp: GridProblem, guaranteed: bool = True) -> Certificate:
    for point in gp.points():
        ranks = []
        for i, tgt in enumerate(rp.targets):
            rk = rp.combination(i, gp.image(point, i)).rank()
            if rk < tgt.r:
                break
            ranks.append(rk)
        else:
            return Certificate(point, tuple(ranks))
    if not guaranteed:
        raise InfeasibleError("no grid point meets the rank targets (the cardinality bound was waived)")
    raise InternalContradiction("grid exhausted although the cardinality bound holds")


def combine_block_rank(rp: RankProblem, gp: GridProblem, require_bound: bool = True) -> Certificate:
    """Find c with rank(A_i + (c_1 B_i1 | ... | c_t B_it)) >= r_i for every i.

    With ``require_bound=False`` the cardinality check is skipped: the sweep
    still runs, but success is no longer guaranteed (InfeasibleError).
    """
    if rp.mode != "block":
        raise InputError("combine_block_rank needs a block-mode problem")
    _check_shapes(rp, gp)
    tr = rp.orientation == "transposed"
    for i, tgt in enumerate(rp.targets):
        whole = Matrix.vstack(*tgt.blocks) if tr else Matrix.hstack(*tgt.blocks)
        if whole.shape != tgt.base.shape:
            raise InputError(f"field {i + 1}: base and block matrix shapes differ")
        if whole.rank() < tgt.r:
            raise HypothesisError(f"field {i + 1}: rank(B) < r = {tgt.r}")
    for j, cj in enumerate(gp.labels):
        need = 0
        for tgt in rp.targets:
            n_ij = tgt.blocks[j].nrows if tr else tgt.blocks[j].ncols
            need += min(tgt.r, n_ij)
        if len(cj) <= need and require_bound:
            raise HypothesisError(f"|C_{j + 1}| = {len(cj)} must exceed {need}")
    return _sweep(rp, gp, require_bound)


def combine_sum_rank(rp: RankProblem, gp: GridProblem) -> Certificate:
    """Find c with rank(A_i + c_1 B_i1 + ... + c_t B_it) >= r_i for every i."""
    if rp.mode != "sum":
        raise InputError("combine_sum_rank needs a sum-mode problem")
    _check_shapes(rp, gp)
    for i, tgt in enumerate(rp.targets):
        if any(b.shape != tgt.base.shape for b in tgt.blocks):
            raise InputError(f"field {i + 1}: all matrices must share one shape")
        if tgt.r and not any(b.rank() >= tgt.r for b in tgt.blocks):
            raise HypothesisError(f"field {i + 1}: no B_ij has rank >= {tgt.r}")
    need = 1 + sum(tgt.r for tgt in rp.targets)
    for j, cj in enumerate(gp.labels):
        if len(cj) < need:
            raise HypothesisError(f"|C_{j + 1}| = {len(cj)} must be at least {need}")
    return _sweep(rp, gp)
