"""Z-graded modules, graded Hom components and homogeneous synthesis.

Two graded universes are supported:

* ``R = R_0`` a structure-constant algebra concentrated in degree 0, with
  modules whose F_p-basis vectors carry integer degrees (the action must
  preserve them);
* ``F_p[x]`` with ``deg x = 1`` and modules that are direct sums of shifted
  cyclic pieces ``F_p[x]/(x^e)[s]`` or ``F_p[x][s]``.

Shifts follow ``(M[i])_j = M_{i+j}``: a basis vector of degree d in M has
degree d - i in M[i], so the generator of ``F_p[x][s]`` sits in degree -s.

Homogeneous localization needs no new machinery here.  For R = R_0 every
element is homogeneous, so it is ordinary localization.  For F_p[x] the
homogeneous elements outside (x) are the nonzero constants, and those
outside (0) are the monomials c x^k, whose inverses do not change the rank
of a homogeneous socle matrix over F_p(x).  So the ordinary socle sites are
reused and only the bookkeeping (fibers, ranks, degrees) is graded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field as dc_field
from typing import Any, Dict, List, Optional, Sequence, Tuple

from . import artinian as A
from . import pid as D
from . import poly as P
from .errors import BudgetError, HypothesisError, InputError, InternalContradiction
from .fields import PrimeField, all_tuples
from .genpos import GridProblem, RankProblem, RankTarget, combine_sum_rank
from .linalg import Matrix
from .sites import SocleSite


# -- rings and modules -----------------------------------------------------------

@dataclass(frozen=True)
class GradedAlgebra:
    """Either a StructAlgebra with basis degrees, or F_p[x] with deg x = 1."""

    kind: str                              # "artinian" or "pid"
    p: int
    algebra: Optional[A.StructAlgebra] = None
    degrees: Tuple[int, ...] = ()

    def __post_init__(self):
        if self.kind not in ("artinian", "pid"):
            raise InputError(f"unknown graded universe {self.kind!r}")
        if self.kind == "artinian":
            R = self.algebra
            degs = tuple(self.degrees) if self.degrees else (0,) * R.dim
            object.__setattr__(self, "degrees", degs)
            if len(degs) != R.dim:
                raise InputError("one degree per algebra basis element required")
            for i in range(R.dim):
                for j in range(R.dim):
                    for k, c in enumerate(R.constants[i][j]):
                        if c and degs[k] != degs[i] + degs[j]:
                            raise InputError(f"product of basis elements ({i + 1}, {j + 1}) = "
                                             f"({R.labels[i]}, {R.labels[j]}) is not homogeneous")
            for k, c in enumerate(R.unity):
                if c and degs[k] != 0:
                    raise InputError("unity must lie in degree 0")

    @property
    def concentrated_in_degree_zero(self) -> bool:
        return self.kind == "artinian" and not any(self.degrees)

    @property
    def degree_zero_order(self) -> Optional[int]:
        """|R_0| for F_p[x]; None for the Artinian universe (use residue fields there)."""
        return self.p if self.kind == "pid" else None

    def homogeneous_part(self, k: int) -> list:
        """F_p-basis of R_k."""
        if self.kind == "pid":
            return [P.monomial(1, k, self.p)] if k >= 0 else []
        R = self.algebra
        return [R.basis(j) for j in range(R.dim) if self.degrees[j] == k]

    @classmethod
    def artinian(cls, R: A.StructAlgebra, degrees: Sequence[int] = ()) -> "GradedAlgebra":
        return cls("artinian", R.p, R, tuple(degrees))

    @classmethod
    def polynomial(cls, p: int) -> "GradedAlgebra":
        PrimeField(p)
        return cls("pid", p)


@dataclass(eq=False)
class GradedModule:
    ring: GradedAlgebra
    module: Any                                  # FpModule or PidModule
    degrees: Tuple[int, ...] = ()                # artinian: per basis vector
    summands: Tuple[Tuple[Optional[int], int], ...] = ()   # pid: (exponent or None, shift)

    def __post_init__(self):
        self.degrees = tuple(self.degrees)
        self.summands = tuple(self.summands)
        if self.ring.kind == "artinian":
            M = self.module
            if len(self.degrees) != M.dim:
                raise InputError(f"need {M.dim} module degrees, got {len(self.degrees)}")
            rdeg = self.ring.degrees
            for b, act in enumerate(M.actions):
                for a in range(M.dim):
                    for c in range(M.dim):
                        if act.rows[a][c] and self.degrees[a] != self.degrees[c] + rdeg[b]:
                            raise InputError(f"action of basis element {b + 1} does not respect degrees "
                                             f"at entry ({a + 1}, {c + 1})")

    @classmethod
    def artinian(cls, ring: GradedAlgebra, module: A.FpModule, degrees: Sequence[int]) -> "GradedModule":
        return cls(ring, module, tuple(degrees))

    @classmethod
    def polynomial(cls, ring: GradedAlgebra, summands: Sequence[Tuple[Optional[int], int]]) -> "GradedModule":
        p = ring.p
        parts = []
        for e, s in summands:
            if e is not None and e < 1:
                raise InputError(f"torsion exponent must be positive, got {e}")
            parts.append(P.monomial(1, e, p) if e is not None else None)
        return cls(ring, D.PidModule.from_summands(p, parts), summands=tuple((e, int(s)) for e, s in summands))

    @property
    def is_pid(self) -> bool:
        return self.ring.kind == "pid"

    def generator_degrees(self) -> List[int]:
        return [-s for _, s in self.summands]

    def component(self, j: int) -> list:
        """Basis of the degree-j component: basis indices (artinian) or (summand, power of x) pairs."""
        if not self.is_pid:
            return [a for a, d in enumerate(self.degrees) if d == j]
        out = []
        for l, ((e, _), g) in enumerate(zip(self.summands, self.generator_degrees())):
            k = j - g
            if k >= 0 and (e is None or k < e):
                out.append((l, k))
        return out

    def occupied_degrees(self) -> List[int]:
        """Degrees of basis vectors (artinian) or of generators (pid)."""
        return sorted(set(self.degrees if not self.is_pid else self.generator_degrees()))

    def to_dict(self) -> dict:
        if self.is_pid:
            return {"summands": [{"exponent": e, "shift": s} if e is not None else {"free": True, "shift": s}
                                 for e, s in self.summands]}
        out = self.module.to_dict()
        out["degrees"] = list(self.degrees)
        return out


def shift(M: GradedModule, i: int) -> GradedModule:
    """M[i], with (M[i])_j = M_{i+j}."""
    if M.is_pid:
        return GradedModule(M.ring, M.module, summands=tuple((e, s + i) for e, s in M.summands))
    return GradedModule(M.ring, M.module, tuple(d - i for d in M.degrees))


def graded_direct_sum(*mods: GradedModule) -> GradedModule:
    ring = mods[0].ring
    if ring.kind == "pid":
        return GradedModule.polynomial(ring, [s for M in mods for s in M.summands])
    return GradedModule(ring, A.direct_sum(*[M.module for M in mods]), tuple(d for M in mods for d in M.degrees))


# -- graded Hom ---------------------------------------------------------------------

def _pid_entry_exponent(N: GradedModule, M: GradedModule, j: int, l: int, i: int) -> Optional[int]:
    """Exponent e with x^e * gen'_j the degree-i image of gen_l, or None when no nonzero map exists."""
    a, _ = N.summands[l]
    b, _ = M.summands[j]
    e = N.generator_degrees()[l] + i - M.generator_degrees()[j]
    if e < 0:
        return None
    if b is not None:
        if e >= b:
            return None
        if a is not None and a + e < b:
            return None
    elif a is not None:
        return None
    return e


def graded_hom_component(N: GradedModule, M: GradedModule, i: int) -> list:
    """F_p-basis of the degree-i homogeneous component of Hom_R(N, M)."""
    if N.ring != M.ring:
        raise InputError("graded modules over different rings")
    if N.is_pid:
        p = N.ring.p
        out = []
        for j in range(len(M.summands)):
            for l in range(len(N.summands)):
                e = _pid_entry_exponent(N, M, j, l, i)
                if e is None:
                    continue
                H = [[() for _ in N.summands] for _ in M.summands]
                H[j][l] = P.monomial(1, e, p)
                out.append(D.make_pid_hom(H, N.module, M.module))
        return out
    return A.hom_basis(N.module, M.module, lambda a, b: M.degrees[a] == N.degrees[b] + i).basis


def hom_degrees(N: GradedModule, M: GradedModule) -> List[int]:
    """Every degree in which Hom_R(N, M) can be nonzero (artinian: exact; pid: from generators)."""
    if N.is_pid:
        degs = set()
        for j, (b, _) in enumerate(M.summands):
            for l, (a, _) in enumerate(N.summands):
                lo = M.generator_degrees()[j] - N.generator_degrees()[l]
                hi = lo + (b - 1 if b is not None else max(0, (a or 0)) + 2)
                degs.update(range(lo, hi + 1))
        return sorted(k for k in degs if graded_hom_component(N, M, k))
    diffs = {dm - dn for dm in M.degrees for dn in N.degrees}
    return sorted(k for k in diffs if graded_hom_component(N, M, k))


def hom_degree(h, N: GradedModule, M: GradedModule) -> Optional[int]:
    """The degree of a homogeneous hom, or None if h is zero or not homogeneous."""
    if N.is_pid:
        p = N.ring.p
        degs = set()
        for j in range(len(M.summands)):
            for l in range(len(N.summands)):
                entry = h.H[j][l]
                b = M.summands[j][0]
                if b is not None:
                    entry = P.mod(entry, P.monomial(1, b, p), p)
                for k, c in enumerate(entry):
                    if c:
                        degs.add(M.generator_degrees()[j] + k - N.generator_degrees()[l])
        return degs.pop() if len(degs) == 1 else None
    degs = {M.degrees[a] - N.degrees[b] for a in range(M.module.dim) for b in range(N.module.dim) if h.rows[a][b]}
    return degs.pop() if len(degs) == 1 else None


# -- homogeneous sites ----------------------------------------------------------------

@dataclass
class GradedPrimeSite:
    key: str
    fiber: str                 # key of p_0 = p ∩ R_0
    residue_size: int          # |R_0 / p_0|
    rank: int                  # r(p): graded socle rank, summed over degrees
    site: SocleSite
    socle_degrees: List[int] = dc_field(default_factory=list)


def graded_primes(N: GradedModule) -> List[str]:
    if N.is_pid:
        return [q.key for q in D.pid_associated_primes(N.module)]
    dec = A.decompose(N.module.algebra)
    return [dec.components[i].key for i in A.associated_primes(N.module, dec)]


def homogeneous_site(prime: str, N: GradedModule, M: GradedModule, seed: int = 0) -> GradedPrimeSite:
    if N.is_pid:
        primes = {q.key: q for q in D.pid_associated_primes(N.module)}
        if prime not in ("(x)", "(0)"):
            raise InputError(f"prime {prime} is not graded in F_p[x] with deg x = 1")
        if prime not in primes:
            raise InputError(f"prime {prime} is not associated to N")
        q = primes[prime]
        site = D.pid_socle_site(N.module, M.module, q)
        if q.is_zero:
            degs = [g for (e, _), g in zip(N.summands, N.generator_degrees()) if e is None]
        else:
            degs = [g + e - 1 for (e, _), g in zip(N.summands, N.generator_degrees()) if e is not None]
        return GradedPrimeSite(prime, "(0)", N.ring.p, site.dim_n, site, sorted(degs))
    if not N.ring.concentrated_in_degree_zero:
        raise InputError("homogeneous sites are implemented for algebras concentrated in degree 0")
    dec = A.decompose(N.module.algebra, seed)
    idx = next((c.index for c in dec.components if c.key == prime), None)
    if idx is None:
        raise InputError(f"no maximal ideal named {prime}")
    site = A.socle_site(dec, idx, N.module, M.module)
    if not site.active:
        raise InputError(f"prime {prime} is not associated to N")
    degs = sorted({N.degrees[a] for v in site.n_basis for a, x in enumerate(v) if x})
    return GradedPrimeSite(prime, prime, site.kappa.order, site.dim_n, site, degs)


def graded_sites(N: GradedModule, M: GradedModule, seed: int = 0) -> List[GradedPrimeSite]:
    return [homogeneous_site(k, N, M, seed) for k in graded_primes(N)]


# -- helpers on homs ------------------------------------------------------------------

def _combine(N: GradedModule, M: GradedModule, basis: list, coeffs: Sequence[int]):
    p = N.ring.p
    if N.is_pid:
        return D.hom_combination(basis, [P.const(c, p) for c in coeffs], N.module, M.module)
    return A.combine_homs(N.module.algebra.field, basis, coeffs, M.module.dim, N.module.dim)


def _scale(N: GradedModule, M: GradedModule, r, h):
    """r * h for a ring element r."""
    if N.is_pid:
        return D.hom_combination([h], [r], N.module, M.module)
    return M.module.act(r) @ h


def _add(N: GradedModule, M: GradedModule, a, b):
    if N.is_pid:
        return D.hom_combination([a, b], [P.ONE, P.ONE], N.module, M.module)
    return a + b


def _zero_hom(N: GradedModule, M: GradedModule):
    if N.is_pid:
        return D.make_pid_hom([[() for _ in range(N.module.gens)] for _ in range(M.module.gens)], N.module, M.module)
    return Matrix.zeros(N.module.algebra.field, M.module.dim, N.module.dim)


def locally_injective(gs: GradedPrimeSite, h) -> bool:
    s = gs.site
    return s.dim_n == 0 or s.evaluator(h).rank() == s.dim_n


def find_local_injection(gs: GradedPrimeSite, N: GradedModule, M: GradedModule, basis: list,
                         limit: int = 4096, grid_limit: int = 250_000) -> Optional[Any]:
    """First F_p-combination (canonical order) of ``basis`` injective on the socle at gs.

    Small components are enumerated outright.  Otherwise the coefficients run
    over {0, .., r} with r = dim Soc N at gs: the relevant socle minor has
    degree at most r in each coefficient, so if any combination works one on
    this grid does, provided p > r.
    """
    p = N.ring.p
    if not basis:
        return None
    if p ** len(basis) <= limit:
        candidates = (c for c in all_tuples(PrimeField(p), len(basis)) if any(c))
    else:
        r = gs.site.dim_n
        if p <= r or (r + 1) ** len(basis) > grid_limit:
            raise BudgetError(f"degree component of dimension {len(basis)} too large to search at {gs.key}")
        candidates = (tuple(reversed(c)) for c in itertools.product(range(r + 1), repeat=len(basis)) if any(c))
    for coeffs in candidates:
        h = _combine(N, M, basis, coeffs)
        if locally_injective(gs, h):
            return h
    return None


def injective_degrees(gs: GradedPrimeSite, N: GradedModule, M: GradedModule,
                      degrees: Optional[Sequence[int]] = None) -> Dict[int, Any]:
    """degree -> a map of that degree injective at gs, for each degree that has one."""
    out = {}
    for i in (degrees if degrees is not None else hom_degrees(N, M)):
        h = find_local_injection(gs, N, M, graded_hom_component(N, M, i))
        if h is not None:
            out[i] = h
    return out


def graded_is_injective(h, N: GradedModule, M: GradedModule) -> bool:
    """Direct check, independent of socles: F_p rank (artinian) or the Smith-form kernel path (pid)."""
    if N.is_pid:
        return bool(D.pid_is_injective_kernel(h, N.module, M.module))
    return h.rank() == N.module.dim


# -- degree uniformization ------------------------------------------------------------

@dataclass
class Uniformized:
    degree: int
    maps: Dict[str, Any]
    multipliers: Dict[str, Any]


def _multiplier(ring: GradedAlgebra, k: int, gs: GradedPrimeSite):
    """A homogeneous element of degree k outside the prime, or None."""
    if ring.kind == "pid":
        if k < 0:
            return None
        if gs.key == "(x)" and k > 0:
            return None
        return P.monomial(1, k, ring.p)
    if k != 0:
        return None
    return ring.algebra.one


def uniformize_degrees(local: Dict[str, Tuple[int, Any]], target: int, N: GradedModule, M: GradedModule,
                       sites: Sequence[GradedPrimeSite]) -> Uniformized:
    """Replace each local map f(p) of degree i(p) with s(p) f(p) of degree ``target``."""
    by_key = {gs.key: gs for gs in sites}
    maps, mults = {}, {}
    for key, (deg, f) in local.items():
        gs = by_key[key]
        s = _multiplier(N.ring, target - deg, gs)
        if s is None:
            raise HypothesisError(
                f"degree uniformity fails at {key}: its local injection has degree {deg}, and "
                f"R_{target - deg} has no element outside {key} to move it to degree {target}")
        g = _scale(N, M, s, f)
        if not locally_injective(gs, g):
            raise InternalContradiction(f"multiplier lost local injectivity at {key}")
        maps[key] = g
        mults[key] = list(s)
    return Uniformized(target, maps, mults)


def choose_uniform_degree(N: GradedModule, M: GradedModule, sites: Sequence[GradedPrimeSite],
                          degrees: Optional[Sequence[int]] = None) -> Tuple[Uniformized, Dict[str, List[int]]]:
    """Find a degree i where every site has a local injection in F_i, directly or after uniformizing.

    Raises HypothesisError naming the per-site degrees when no degree works.
    """
    per_site = {gs.key: injective_degrees(gs, N, M, degrees) for gs in sites}
    table = {k: sorted(v) for k, v in per_site.items()}
    missing = [k for k, v in per_site.items() if not v]
    if missing:
        raise HypothesisError(f"no degree component of F contains a map injective at {', '.join(missing)}")
    common = set.intersection(*[set(v) for v in per_site.values()]) if per_site else set()
    if common:
        i = min(common)
        return Uniformized(i, {k: v[i] for k, v in per_site.items()}, {}), table
    candidates = sorted(set().union(*[set(v) for v in per_site.values()]))
    for i in candidates:
        try:
            local = {}
            for k, v in per_site.items():
                # prefer a map already in degree i, else the nearest lower degree
                d = i if i in v else max((x for x in v if x <= i), default=min(v))
                local[k] = (d, v[d])
            return uniformize_degrees(local, i, N, M, sites), table
        except HypothesisError:
            continue
    detail = "; ".join(f"{k}: degree(s) {', '.join(map(str, v))}" for k, v in table.items())
    raise HypothesisError(f"degree uniformity fails: no single degree carries local injections at every "
                          f"associated prime ({detail}), and no homogeneous multiplier moves them to a common degree")


# -- graded synthesis -------------------------------------------------------------------

@dataclass
class GradedSynthesisResult:
    degree: int
    hom: Any
    certificates: Dict[str, int]
    trace: Dict[str, Any]


def check_hypothesis(sites: Sequence[GradedPrimeSite]) -> Dict[str, Tuple[int, int]]:
    """|R_0/p_0| > sum of r(p') over the fiber, for every fiber; returns fiber -> (size, sum)."""
    fibers: Dict[str, List[GradedPrimeSite]] = {}
    for gs in sites:
        fibers.setdefault(gs.fiber, []).append(gs)
    out = {}
    for fk, members in fibers.items():
        size = members[0].residue_size
        total = sum(gs.rank for gs in members)
        out[fk] = (size, total)
        if size <= total:
            near = " (equality: a near miss)" if size == total else ""
            raise HypothesisError(f"cardinality hypothesis fails on the fiber over {fk}: |R_0/p_0| = {size} "
                                  f"is not larger than the socle rank sum {total}{near}")
    return out


def _fiber_samples(N: GradedModule, sites: Sequence[GradedPrimeSite], fiber: str, before: List[str],
                   count: int, seed: int) -> list:
    """``count`` degree-0 elements in every earlier fiber's p_0 with distinct residues mod this p_0."""
    if N.is_pid:
        return [P.const(c, N.ring.p) for c in range(count)]
    dec = A.decompose(N.module.algebra, seed)
    index = {c.key: c.index for c in dec.components}
    cons = {index[b]: "zero" for b in before}
    return A.sample_elements(dec, cons, count, distinct_at=index[fiber])


def synthesize_graded(N: GradedModule, M: GradedModule, degree: int, local: Optional[Dict[str, Any]] = None,
                      seed: int = 0) -> GradedSynthesisResult:
    """A single injective map of the given degree, glued fiber by fiber from local injections."""
    sites = graded_sites(N, M, seed)
    if not sites:
        h = _zero_hom(N, M)
        return GradedSynthesisResult(degree, h, {}, {"note": "N has no associated primes"})
    sizes = check_hypothesis(sites)
    basis = graded_hom_component(N, M, degree)
    local = dict(local or {})
    for gs in sites:
        if gs.key in local:
            d = hom_degree(local[gs.key], N, M)
            if d is not None and d != degree:
                raise HypothesisError(f"local map at {gs.key} has degree {d}, not the requested {degree}")
            if not locally_injective(gs, local[gs.key]):
                raise InputError(f"supplied local map at {gs.key} is not injective there")
        else:
            g = find_local_injection(gs, N, M, basis)
            if g is None:
                raise HypothesisError(f"degree uniformity fails: F_{degree} has no map injective at {gs.key}")
            local[gs.key] = g
    # fibers ordered so that no p_0 contains an earlier one: here the p_0 are
    # pairwise incomparable maximal ideals (artinian) or a single prime (pid)
    order: List[str] = []
    for gs in sites:
        if gs.fiber not in order:
            order.append(gs.fiber)
    f = _zero_hom(N, M)
    trace: Dict[str, Any] = {"fibers": order, "samples": {}, "c": {}, "hypothesis": {k: list(v) for k, v in sizes.items()}}
    for pos, fiber in enumerate(order):
        members = [gs for gs in sites if gs.fiber == fiber]
        n = 1 + sum(gs.rank for gs in members)
        samples = _fiber_samples(N, sites, fiber, order[:pos], n, seed)
        labels = list(range(n))
        fields = tuple(gs.site.kappa for gs in members)
        gp = GridProblem(fields, tuple(tuple(labels) for _ in members),
                         tuple(tuple({c: gs.site.residue(samples[c]) for c in labels} for gs in members)
                               for _ in members))
        targets = []
        for gs in members:
            base = gs.site.evaluator(f)
            blocks = tuple(gs.site.evaluator(local[other.key]) for other in members)
            targets.append(RankTarget(gs.rank, base, blocks))
        cert = combine_sum_rank(RankProblem(tuple(targets), "sum"), gp)
        for label, other in zip(cert.point, members):
            f = _add(N, M, f, _scale(N, M, samples[label], local[other.key]))
        trace["samples"][fiber] = [list(s) for s in samples]
        trace["c"][fiber] = {other.key: label for label, other in zip(cert.point, members)}
    certs = {}
    for gs in sites:
        rk = gs.site.evaluator(f).rank()
        if rk != gs.rank:
            raise InternalContradiction(f"graded synthesis lost rank at {gs.key}: {rk} < {gs.rank}")
        certs[gs.key] = rk
    if hom_degree(f, N, M) not in (degree, None):
        raise InternalContradiction("synthesized map is not homogeneous of the requested degree")
    return GradedSynthesisResult(degree, f, certs, trace)


def counterexample_fixture() -> Tuple[GradedModule, GradedModule]:
    """R = R_0 = F_2 x F_2, N = R/p + R/q, M = (R/p)[-1] + R/q for the two maximal ideals p, q."""
    F2 = A.algebra_from_polynomial(2, [0, 1])
    R = A.product_algebra(F2, F2)
    ring = GradedAlgebra.artinian(R)
    Rp = A.cyclic_module(R, [(0, 1)])      # p = 0 x F_2, the maximal ideal of component m0
    Rq = A.cyclic_module(R, [(1, 0)])
    N = GradedModule.artinian(ring, A.direct_sum(Rp, Rq), (0, 0))
    M = graded_direct_sum(shift(GradedModule.artinian(ring, Rp, (0,)), -1), GradedModule.artinian(ring, Rq, (0,)))
    return N, M
