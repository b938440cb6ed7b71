"""Local-to-global construction of injective rows and columns of homs.

Everything here runs against a small adapter interface so that the Artinian
and F_p[x] universes share one engine.  A hom in the submodule F generated
by g_1..g_k is carried around as its coefficient vector (r_1..r_k) of ring
elements; at a site the socle matrix of sum r_k g_k is
sum residue(r_k) E(g_k), so every rank question reduces to linear algebra
over the residue field on the precomputed generator images E(g_k).

Rows: (h_1..h_t) viewed as N^t -> M.  Columns: (h_1..h_t)^T viewed as
N -> M^t.  A row is injective at a site iff its stacked socle matrix has
full column rank t * dim Soc N; a column iff the vertically stacked matrix
has rank dim Soc N.
"""

from __future__ import annotations

import itertools
import math
import random
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import artinian as A
from . import pid as D
from . import poly as P
from .errors import BudgetError, InputError, InternalContradiction, LocalTargetUnmet
from .fields import all_tuples
from .genpos import GridProblem, RankProblem, RankTarget, combine_block_rank
from .linalg import Matrix, span_basis
from .sites import SocleSite

INF = math.inf
EXHAUSTIVE_LIMIT = 4096      # max |V| enumerated directly at a finite site
GRID_LIMIT = 250_000         # max grid points swept at a large or infinite site
RANDOM_TRIES = 64


# -- adapters ----------------------------------------------------------------

class RingAdapter:
    """Common surface used by the engine.  Subclasses fill in the ring."""

    sites: List[SocleSite]
    gens: list

    def __init__(self, seed: int = 0):
        self.seed = seed
        self._images: Dict[int, List[Matrix]] = {}

    # ring arithmetic on the coefficient level
    def add(self, a, b):
        raise NotImplementedError

    def mul(self, a, b):
        raise NotImplementedError

    zero: Any = None
    one: Any = None

    def combine(self, coeffs: Sequence) -> Any:
        raise NotImplementedError

    def s_element(self, site_index: int, maximal: Sequence[int]):
        raise NotImplementedError

    def j_samples(self, site_index: int, count: int) -> list:
        raise NotImplementedError

    def row_injective(self, homs: Sequence) -> bool:
        raise NotImplementedError

    def column_injective(self, homs: Sequence) -> bool:
        raise NotImplementedError

    def is_injective(self, hom) -> bool:
        return self.row_injective([hom])

    def images(self, site_index: int) -> List[Matrix]:
        imgs = self._images.get(site_index)
        if imgs is None:
            site = self.sites[site_index]
            imgs = [site.evaluator(g) for g in self.gens]
            self._images[site_index] = imgs
        return imgs

    def maximal_members(self) -> List[int]:
        """Indices of sites whose prime is not strictly inside another associated prime."""
        if any(s.is_maximal for s in self.sites):
            return [i for i, s in enumerate(self.sites) if s.is_maximal]
        return list(range(len(self.sites)))

    def coeffs_to_jsonable(self, coeffs):
        return [list(c) if isinstance(c, tuple) else c for c in coeffs]


class ArtinianAdapter(RingAdapter):
    def __init__(self, N: A.FpModule, M: A.FpModule, gens: Sequence[Matrix], seed: int = 0,
                 dec: Optional[A.AlgebraDecomposition] = None):
        super().__init__(seed)
        if N.algebra != M.algebra:
            raise InputError("modules over different algebras")
        self.N, self.M = N, M
        self.R = N.algebra
        self.dec = dec or A.decompose(self.R, seed)
        for k, g in enumerate(gens):
            if not A.check_linear(g, N, M):
                raise InputError(f"generator {k + 1} of F is not an R-linear map N -> M")
        self.gens = list(gens)
        self.sites = A.ass_sites(self.dec, N, M)
        self._comp_of = [int(s.key[1:]) for s in self.sites]
        self.zero, self.one = self.R.zero, self.R.one

    def add(self, a, b):
        return self.R.add(a, b)

    def mul(self, a, b):
        return self.R.mul(a, b)

    def combine(self, coeffs):
        f = self.R.field
        out = Matrix.zeros(f, self.M.dim, self.N.dim)
        for r, g in zip(coeffs, self.gens):
            if any(r):
                out = out + self.M.act(r) @ g
        return out

    def s_element(self, site_index, maximal):
        return self.dec.components[self._comp_of[site_index]].idempotent

    def j_samples(self, site_index, count):
        raise InternalContradiction("every associated prime of an Artinian ring is maximal")

    def row_injective(self, homs):
        if not homs:
            return self.N.dim == 0
        m = Matrix.hstack(*homs)
        return m.rank() == m.ncols

    def column_injective(self, homs):
        if not homs:
            return self.N.dim == 0
        m = Matrix.vstack(*homs)
        return m.rank() == self.N.dim


class PidAdapter(RingAdapter):
    def __init__(self, N: D.PidModule, M: D.PidModule, gens: Sequence[D.PidHom], seed: int = 0):
        super().__init__(seed)
        if N.p != M.p:
            raise InputError("modules over different primes")
        self.N, self.M, self.p = N, M, N.p
        for k, g in enumerate(gens):
            if not D.check_witness(g, N, M):
                raise InputError(f"generator {k + 1} of F fails its witness equation")
        self.gens = list(gens)
        self.primes = D.pid_associated_primes(N)
        self.sites = [D.pid_socle_site(N, M, q) for q in self.primes]
        self.zero, self.one = (), P.ONE

    def add(self, a, b):
        return P.add(a, b, self.p)

    def mul(self, a, b):
        return P.mul(a, b, self.p)

    def combine(self, coeffs):
        return D.hom_combination(self.gens, coeffs, self.N, self.M)

    def s_element(self, site_index, maximal):
        out = P.ONE
        for i in maximal:
            if i != site_index:
                out = P.mul(out, self.primes[i].f, self.p)
        return out

    def j_generator(self, site_index) -> P.Poly:
        """Generator of the intersection of all associated primes handled before this one."""
        out = P.ONE
        for i, q in enumerate(self.primes):
            if i != site_index and not q.is_zero:
                out = P.mul(out, q.f, self.p)
        return out

    def j_samples(self, site_index, count):
        return D.pid_sample_with_residues(self.j_generator(site_index), self.primes[site_index], count)

    def _stack_row(self, homs):
        t = len(homs)
        Nt = D.pid_direct_sum(*([self.N] * t))
        H = [sum((list(h.H[i]) for h in homs), []) for i in range(self.M.gens)]
        return D.make_pid_hom(H, Nt, self.M), Nt, self.M

    def _stack_column(self, homs):
        t = len(homs)
        Mt = D.pid_direct_sum(*([self.M] * t))
        H = [list(r) for h in homs for r in h.H]
        return D.make_pid_hom(H, self.N, Mt), self.N, Mt

    def row_injective(self, homs):
        if not homs:
            return self.N.is_zero
        return bool(D.pid_is_injective_kernel(*self._stack_row(homs)))

    def column_injective(self, homs):
        if not homs:
            return self.N.is_zero
        return bool(D.pid_is_injective_kernel(*self._stack_column(homs)))

    def coeffs_to_jsonable(self, coeffs):
        return [list(c) for c in coeffs]


# -- local searches ------------------------------------------------------------

def _combo(kappa, mats: Sequence[Matrix], coeffs: Sequence) -> Matrix:
    out = Matrix.zeros(kappa, mats[0].nrows, mats[0].ncols)
    for c, m in zip(coeffs, mats):
        if not kappa.is_zero(c):
            out = out + m.scale(c)
    return out


@dataclass
class LocalData:
    """The image V of F at one site, as a kappa-basis of generator images."""

    site: SocleSite
    basis: List[Matrix]           # independent images
    index: List[int]              # generator index of each basis matrix
    ngens: int

    def expand(self, coeffs: Sequence) -> list:
        """Basis coefficients -> kappa coefficients on all generators."""
        kappa = self.site.kappa
        out = [kappa.zero] * self.ngens
        for c, k in zip(coeffs, self.index):
            out[k] = c
        return out


def local_data(adapter: RingAdapter, i: int) -> LocalData:
    site = adapter.sites[i]
    imgs = adapter.images(i)
    kappa = site.kappa
    chosen, index, flats = [], [], []
    for k, m in enumerate(imgs):
        cand = flats + [m.flat()]
        if len(span_basis(kappa, cand, site.dim_m * site.dim_n)) > len(flats):
            flats.append(m.flat())
            chosen.append(m)
            index.append(k)
    return LocalData(site, chosen, index, len(imgs))


def _rows_rank(site, mats) -> int:
    return Matrix.hstack(*mats).rank()


def _cols_rank(site, mats) -> int:
    return Matrix.vstack(*mats).rank()


def _use_exhaustive(ld: LocalData) -> bool:
    k = ld.site.kappa
    return k.is_finite and k.order ** len(ld.basis) <= EXHAUSTIVE_LIMIT


def _grid_search(ld: LocalData, t: int, ok, degree_bound: int, rng: random.Random):
    """Find t basis-coefficient vectors passing ``ok`` via random tries, then a full grid sweep.

    A sweep over C^(t*b) with |C| > degree_bound is exact: the rank
    condition is a nonzero minor, of degree at most degree_bound in each
    coefficient, as soon as any solution over the residue field exists.
    """
    kappa, b = ld.site.kappa, len(ld.basis)
    if kappa.is_finite and kappa.order <= degree_bound:
        raise BudgetError(f"site {ld.site.key}: |kappa| = {kappa.order} too small for a grid search "
                          f"and kappa^{b} too large to enumerate")
    C = kappa.first_elements(degree_bound + 1)
    npts = len(C) ** (t * b)
    if npts > EXHAUSTIVE_LIMIT:
        pool = list(kappa.elements()) if kappa.is_finite else C
        for _ in range(RANDOM_TRIES):
            cand = [[rng.choice(pool) for _ in range(b)] for _ in range(t)]
            if ok(cand):
                return cand
    if npts > GRID_LIMIT:
        raise BudgetError(f"site {ld.site.key}: exact search needs {npts} grid points (limit {GRID_LIMIT})")
    for flat in itertools.product(C, repeat=t * b):
        cand = [list(flat[i * b:(i + 1) * b]) for i in range(t)]
        if ok(cand):
            return cand
    return None


def local_row_search(ld: LocalData, t: int, seed: int = 0) -> Optional[List[list]]:
    """Basis coefficients of a t-row with full socle rank at the site, or None."""
    site, kappa = ld.site, ld.site.kappa
    if t == 0:
        return []
    if not ld.basis or t * site.dim_n > site.dim_m or t > len(ld.basis):
        return None

    def ok(cand):
        return _rows_rank(site, [_combo(kappa, ld.basis, c) for c in cand]) == t * site.dim_n

    if _use_exhaustive(ld):
        best = _exhaustive_rows(ld, t)
        return best
    return _grid_search(ld, t, ok, site.dim_n, random.Random(seed))


def _exhaustive_rows(ld: LocalData, want: Optional[int]):
    """DFS over distinct full-rank column spaces; returns a row of length ``want``
    (or the longest row when want is None)."""
    site, kappa = ld.site, ld.site.kappa
    n, m = site.dim_n, site.dim_m
    if not ld.basis:
        return [] if want is None else None
    spaces = {}
    for coeffs in all_tuples(kappa, len(ld.basis)):
        mat = _combo(kappa, ld.basis, coeffs)
        if mat.rank() != n:
            continue
        key = tuple(span_basis(kappa, mat.columns(), m))
        spaces.setdefault(key, list(coeffs))
    items = list(spaces.items())
    cap = min(len(ld.basis), m // n) if n else 0
    target = cap if want is None else want
    best: List[list] = []

    def dfs(start, chosen, span):
        nonlocal best
        if len(chosen) > len(best):
            best = list(chosen)
        if len(best) >= target:
            return True
        for idx in range(start, len(items)):
            key, coeffs = items[idx]
            new = span_basis(kappa, list(span) + list(key), m)
            if len(new) == len(span) + n:
                chosen.append(coeffs)
                if dfs(idx + 1, chosen, new):
                    return True
                chosen.pop()
        return False

    dfs(0, [], [])
    if want is None:
        return best
    return best if len(best) >= want else None


def local_capacity(adapter: RingAdapter, i: int, seed: int = 0) -> Tuple[int, List[list]]:
    """Largest t with a full-socle-rank t-row from F at site i, and a witness row."""
    ld = local_data(adapter, i)
    site = ld.site
    if site.dim_n == 0:
        return INF, []
    cap = min(len(ld.basis), site.dim_m // site.dim_n)
    if _use_exhaustive(ld):
        row = _exhaustive_rows(ld, None)
        return len(row), [ld.expand(c) for c in row]
    best: List[list] = []
    for t in range(1, cap + 1):
        row = local_row_search(ld, t, seed)
        if row is None:
            break
        best = row
    return len(best), [ld.expand(c) for c in best]


def local_column_search(ld: LocalData, t: int, seed: int = 0) -> Optional[List[list]]:
    site, kappa = ld.site, ld.site.kappa
    if site.dim_n == 0:
        return []
    if not ld.basis or t == 0:
        return None

    def ok(cand):
        return _cols_rank(site, [_combo(kappa, ld.basis, c) for c in cand]) == site.dim_n

    return _grid_search(ld, t, ok, min(site.dim_n, site.dim_m), random.Random(seed))


def _exhaustive_columns(ld: LocalData):
    """BFS over kernel intersections; the shortest injective column or None."""
    site, kappa = ld.site, ld.site.kappa
    n = site.dim_n
    kernels = {}
    for coeffs in all_tuples(kappa, len(ld.basis)):
        mat = _combo(kappa, ld.basis, coeffs)
        key = tuple(span_basis(kappa, mat.kernel().columns(), n))
        if len(key) < n:
            kernels.setdefault(key, list(coeffs))
    full = tuple(span_basis(kappa, Matrix.identity(kappa, n).columns(), n))
    level = {full: []}
    seen = {full}
    for _ in range(n):
        nxt = {}
        for space, path in level.items():
            for key, coeffs in kernels.items():
                if space == full:
                    inter = key
                else:
                    inter = tuple(span_basis(kappa, _intersect(kappa, space, key, n), n))
                if len(inter) < len(space) and inter not in seen:
                    seen.add(inter)
                    nxt[inter] = path + [coeffs]
                    if not inter:
                        return nxt[inter]
        if not nxt:
            return None
        level = nxt
    return None


def _intersect(kappa, U, W, n):
    """Intersection of two subspaces given by bases."""
    if not U or not W:
        return []
    m = Matrix.from_columns(kappa, list(U) + [tuple(kappa.neg(x) for x in w) for w in W], n)
    out = []
    for v in m.kernel().columns():
        acc = [kappa.zero] * n
        for c, u in zip(v[:len(U)], U):
            acc = [kappa.add(a, kappa.mul(c, x)) for a, x in zip(acc, u)]
        out.append(tuple(acc))
    return out


def local_cog(adapter: RingAdapter, i: int, seed: int = 0) -> Tuple[Any, List[list]]:
    """Smallest t with an injective t-column from F at site i (INF if none)."""
    ld = local_data(adapter, i)
    site = ld.site
    if site.dim_n == 0:
        return 0, []
    if not ld.basis or Matrix.vstack(*ld.basis).rank() < site.dim_n:
        return INF, []
    if _use_exhaustive(ld):
        col = _exhaustive_columns(ld)
        if col is None:
            raise InternalContradiction(f"site {site.key}: stacked basis is injective but no column found")
        return len(col), [ld.expand(c) for c in col]
    for t in range(1, site.dim_n + 1):
        col = local_column_search(ld, t, seed)
        if col is not None:
            return t, [ld.expand(c) for c in col]
    raise InternalContradiction(f"site {site.key}: no column up to length {site.dim_n}")


# -- global invariants ----------------------------------------------------------

def _site_indices(adapter: RingAdapter, maximal_only: bool) -> List[int]:
    return adapter.maximal_members() if maximal_only else list(range(len(adapter.sites)))


def compute_inj(adapter: RingAdapter, maximal_only: bool = False, seed: Optional[int] = None):
    """inf over associated primes of the local capacities (INF when N = 0)."""
    seed = adapter.seed if seed is None else seed
    vals = [local_capacity(adapter, i, seed)[0] for i in _site_indices(adapter, maximal_only)]
    return min(vals, default=INF)


def compute_cog(adapter: RingAdapter, maximal_only: bool = False, seed: Optional[int] = None):
    """sup over associated primes of the local cogenerator numbers (0 when N = 0)."""
    seed = adapter.seed if seed is None else seed
    vals = [local_cog(adapter, i, seed)[0] for i in _site_indices(adapter, maximal_only)]
    return max(vals, default=0)


def _local_injection_exists(adapter: RingAdapter, i: int) -> bool:
    ld = local_data(adapter, i)
    site = ld.site
    if site.dim_n == 0:
        return True
    if site.dim_m < site.dim_n or not ld.basis:
        return False
    if _use_exhaustive(ld):
        return bool(_exhaustive_rows(ld, 1))
    return local_row_search(ld, 1, adapter.seed) is not None


def has_injection(adapter: RingAdapter, maximal_only: bool = False) -> bool:
    """Whether some element of F is injective, cross-checked against inj and cog."""
    idx = _site_indices(adapter, maximal_only)
    direct = all(_local_injection_exists(adapter, i) for i in idx)
    via_inj = compute_inj(adapter, maximal_only) >= 1
    via_cog = compute_cog(adapter, maximal_only) <= 1
    if not (direct == via_inj == via_cog):
        raise InternalContradiction(f"injection tests disagree: direct={direct}, inj>=1 {via_inj}, cog<=1 {via_cog}")
    return direct


# -- synthesis ---------------------------------------------------------------------

@dataclass
class SynthesisResult:
    orientation: str
    homs: list
    coefficients: List[list]
    targets: Dict[str, int]
    certificates: Dict[str, int]
    trace: Dict[str, Any] = dc_field(default_factory=dict)

    @property
    def v(self) -> int:
        return len(self.homs)

    def prefix(self, length: int) -> list:
        return self.homs[:length]


def _lift_row(adapter: RingAdapter, i: int, kappa_row: List[list]) -> List[list]:
    site = adapter.sites[i]
    return [[site.lift(c) if not site.kappa.is_zero(c) else adapter.zero for c in vec] for vec in kappa_row]


def _socle_matrix(adapter, i, coeff_vecs, orientation):
    site = adapter.sites[i]
    imgs = adapter.images(i)
    mats = [_combo(site.kappa, imgs, [site.residue(r) for r in vec]) for vec in coeff_vecs]
    if orientation == "row":
        return Matrix.hstack(*mats)
    return Matrix.vstack(*mats)


def _target_rank(site, t, orientation):
    return t * site.dim_n if orientation == "row" else site.dim_n


def _resolve_targets(adapter, targets, orientation, seed):
    keys = [s.key for s in adapter.sites]
    if targets is None:
        targets = {}
        for i, s in enumerate(adapter.sites):
            val = local_capacity(adapter, i, seed)[0] if orientation == "row" else local_cog(adapter, i, seed)[0]
            if val == INF and orientation == "column":
                raise LocalTargetUnmet(f"local target unmet at {s.key}: no injective column exists there", s.key)
            if val == 0:
                raise LocalTargetUnmet(f"local target unmet at {s.key}: local capacity is 0", s.key)
            targets[s.key] = int(val)
    targets = dict(targets)
    for k in targets:
        if k not in keys:
            raise InputError(f"target given for {k}, which is not an associated prime ({', '.join(keys)})")
    for k in keys:
        if k not in targets:
            raise InputError(f"no target given for associated prime {k}")
        if not isinstance(targets[k], int) or targets[k] < 1:
            raise InputError(f"target at {k} must be a positive integer, got {targets[k]!r}")
    return targets


def _local_vectors(adapter, i, t, orientation, supplied, seed):
    """Coefficient vectors (ring elements) of a local row/column of length t at site i."""
    site = adapter.sites[i]
    if supplied is not None and site.key in supplied:
        vecs = [list(v) for v in supplied[site.key]]
        if len(vecs) != t or any(len(v) != len(adapter.gens) for v in vecs):
            raise InputError(f"supplied local {orientation} at {site.key} must have {t} entries of "
                             f"{len(adapter.gens)} coefficients")
        if _socle_matrix(adapter, i, vecs, orientation).rank() != _target_rank(site, t, orientation):
            raise InputError(f"supplied local {orientation} at {site.key} is not injective there")
        return vecs
    ld = local_data(adapter, i)
    if orientation == "row":
        found = local_row_search(ld, t, seed)
    else:
        if ld.basis and Matrix.vstack(*ld.basis).rank() == site.dim_n and t >= 1:
            found = _exhaustive_columns(ld) if _use_exhaustive(ld) else local_column_search(ld, min(t, site.dim_n), seed)
        else:
            found = None
        if found is not None and len(found) > t:
            found = None
    if found is None:
        raise LocalTargetUnmet(f"local target unmet at {site.key}: no {orientation} of length {t} "
                               f"from F is injective there", site.key)
    kappa_vecs = [ld.expand(c) for c in found]
    vecs = _lift_row(adapter, i, kappa_vecs)
    # a column shorter than t is padded with zero maps; injectivity is kept
    while len(vecs) < t:
        vecs.append([adapter.zero] * len(adapter.gens))
    return vecs


def _synthesize(adapter: RingAdapter, orientation: str, targets=None, local=None, seed: Optional[int] = None):
    seed = adapter.seed if seed is None else seed
    sites = adapter.sites
    if not sites:
        return SynthesisResult(orientation, [], [], {}, {}, {"note": "N has no associated primes"})
    targets = _resolve_targets(adapter, targets, orientation, seed)
    v = max(targets.values())
    k = len(adapter.gens)
    zero_vec = [adapter.zero] * k
    rows = {i: _local_vectors(adapter, i, targets[s.key], orientation, local, seed) for i, s in enumerate(sites)}
    trace: Dict[str, Any] = {"s": {}, "d": {}, "j_samples": {}, "c": {}}

    if len(sites) == 1:
        e = rows[0] + [list(zero_vec) for _ in range(v - len(rows[0]))]
        trace["d"][sites[0].key] = [adapter.coeffs_to_jsonable(r) for r in rows[0]]
    else:
        maximal = [i for i, s in enumerate(sites) if s.is_maximal]
        e = [list(zero_vec) for _ in range(v)]
        for i in maximal:
            s_m = adapter.s_element(i, maximal)
            trace["s"][sites[i].key] = list(s_m)
            d = rows[i] + [list(zero_vec) for _ in range(v - len(rows[i]))]
            trace["d"][sites[i].key] = [adapter.coeffs_to_jsonable(r) for r in rows[i]]
            for a in range(v):
                e[a] = [adapter.add(x, adapter.mul(s_m, y)) for x, y in zip(e[a], d[a])]
        others = [i for i, s in enumerate(sites) if not s.is_maximal]
        others.sort(key=lambda i: sites[i].sort_key)
        for i in others:
            e = _nonmaximal_step(adapter, i, e, rows[i], targets[sites[i].key], orientation, trace)

    homs = [adapter.combine(vec) for vec in e]
    certs = {}
    for i, s in enumerate(sites):
        t = targets[s.key]
        pre = homs[:t]
        mats = [s.evaluator(h) for h in pre]
        rk = (Matrix.hstack(*mats) if orientation == "row" else Matrix.vstack(*mats)).rank()
        if rk != _target_rank(s, t, orientation):
            raise InternalContradiction(f"synthesized prefix has rank {rk} at {s.key}, "
                                        f"expected {_target_rank(s, t, orientation)}")
        certs[s.key] = rk
    coeffs = [adapter.coeffs_to_jsonable(vec) for vec in e]
    return SynthesisResult(orientation, homs, coeffs, targets, certs, trace)


def _nonmaximal_step(adapter, i, e, local_vecs, t, orientation, trace):
    """Make the length-t prefix full rank at a non-maximal prime using J-multiples of its local row."""
    site = adapter.sites[i]
    kappa = site.kappa
    base = _socle_matrix(adapter, i, e[:t], orientation)
    blocks = [_socle_matrix(adapter, i, [vec], orientation) for vec in local_vecs]
    if orientation == "row":
        ncand = site.dim_n + 1
    else:
        ncand = min(site.dim_n, site.dim_m) + 1
    samples = adapter.j_samples(i, ncand)
    residues = [site.residue(c) for c in samples]
    labels = list(range(ncand))
    gp = GridProblem((kappa,), tuple(tuple(labels) for _ in range(t)),
                     tuple((dict(zip(labels, residues)),) for _ in range(t)))
    rp = RankProblem((RankTarget(_target_rank(site, t, orientation), base, tuple(blocks)),), "block",
                     "plain" if orientation == "row" else "transposed")
    cert = combine_block_rank(rp, gp)
    trace["j_samples"][site.key] = [list(c) for c in samples]
    trace["c"][site.key] = list(cert.point)
    out = [list(vec) for vec in e]
    for a, label in enumerate(cert.point):
        c = samples[label]
        out[a] = [adapter.add(x, adapter.mul(c, y)) for x, y in zip(out[a], local_vecs[a])]
    return out


def synthesize_row(adapter: RingAdapter, targets: Optional[Dict[str, int]] = None,
                   local_rows: Optional[Dict[str, List[list]]] = None, seed: Optional[int] = None) -> SynthesisResult:
    """h_1..h_v in F whose length-t(p) prefix is injective on socles at every associated prime p."""
    return _synthesize(adapter, "row", targets, local_rows, seed)


def synthesize_column(adapter: RingAdapter, targets: Optional[Dict[str, int]] = None,
                      local_columns: Optional[Dict[str, List[list]]] = None, seed: Optional[int] = None) -> SynthesisResult:
    """Dual of synthesize_row: the stacked column of each length-t(p) prefix is injective at p."""
    return _synthesize(adapter, "column", targets, local_columns, seed)


# -- avoiding a submodule -------------------------------------------------------------

@dataclass
class AvoidResult:
    homs: List[Matrix]
    induced: List[Matrix]
    synthesis: SynthesisResult


def avoid_submodule(orientation: str, C: A.FpModule, incl_A: Matrix, D_: A.FpModule, incl_B: Matrix,
                    G: Sequence[Matrix], targets: Optional[Dict[str, int]] = None, seed: int = 0) -> AvoidResult:
    """Lifts in span(G) whose induced maps A -> D/B form an injective row (or column).

    The sub-modules are given by inclusion matrices whose columns are F_p
    coordinates of spanning vectors in C and D.
    """
    if orientation not in ("row", "column"):
        raise InputError(f"orientation must be row or column, got {orientation!r}")
    Asub, inc_a = A.submodule(C, incl_A.columns())
    Q, proj = A.quotient_module(D_, incl_B.columns())
    for k, g in enumerate(G):
        if not A.check_linear(g, C, D_):
            raise InputError(f"element {k + 1} of G is not R-linear C -> D")
    f = C.algebra.field
    induced_gens = []
    for g in G:
        if Q.dim and Asub.dim:
            induced_gens.append(proj @ g @ inc_a)
        else:
            induced_gens.append(Matrix.zeros(f, Q.dim, Asub.dim))
    adapter = ArtinianAdapter(Asub, Q, induced_gens, seed)
    res = _synthesize(adapter, orientation, targets, None, seed)
    lifts = []
    for vec in res.coefficients:
        out = Matrix.zeros(f, D_.dim, C.dim)
        for r, g in zip(vec, G):
            r = tuple(r)
            if any(r):
                out = out + D_.act(r) @ g
        lifts.append(out)
    return AvoidResult(lifts, res.homs, res)
