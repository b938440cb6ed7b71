"""Finite-dimensional commutative F_p-algebras and their modules.

An algebra is given by structure constants ``c[i][j]`` (the coordinate
vector of b_i * b_j) and the coordinates of its unity.  A module is given by
one action matrix per basis element.  Ring elements and module elements are
plain coordinate tuples over F_p; homs are :class:`Matrix` objects (target
dimension x source dimension).

Localization at a maximal ideal is projection onto the matching local
component e_i R, which is exact for Artinian rings; everything prime-local
below (residue fields, socles, samplers) is built on that identification.
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from . import poly as P
from .errors import AxiomError, InfeasibleError, InputError, InternalContradiction
from .fields import ExtensionField, PrimeField, all_tuples
from .linalg import Coordinatizer, Matrix, intersect_kernels, rank_of, span_basis
from .sites import InjectivityReport, SocleSite, socle_injective

Vec = Tuple[int, ...]


class StructAlgebra:
    """Commutative unital F_p-algebra given by structure constants."""

    def __init__(self, p: int, labels: Sequence[str], constants, unity: Sequence[int]):
        self.field = PrimeField(p)
        self.p = p
        self.labels = tuple(str(x) for x in labels)
        self.dim = len(self.labels)
        d = self.dim
        self.constants = tuple(tuple(tuple(int(v) % p for v in cij) for cij in ci) for ci in constants)
        self.unity = tuple(int(v) % p for v in unity)
        if len(self.constants) != d or any(len(ci) != d or any(len(c) != d for c in ci) for ci in self.constants):
            raise InputError(f"structure constants must have shape {d}x{d}x{d}")
        if len(self.unity) != d:
            raise InputError(f"unity must have {d} coordinates")
        self.zero = (0,) * d
        self.one = self.unity

    def basis(self, i: int) -> Vec:
        return tuple(1 if j == i else 0 for j in range(self.dim))

    def add(self, a: Vec, b: Vec) -> Vec:
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def sub(self, a: Vec, b: Vec) -> Vec:
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def scale(self, c: int, a: Vec) -> Vec:
        p = self.p
        return tuple((c * x) % p for x in a)

    def mul(self, a: Vec, b: Vec) -> Vec:
        p, d, table = self.p, self.dim, self.constants
        out = [0] * d
        for i, x in enumerate(a):
            if not x:
                continue
            row = table[i]
            for j, y in enumerate(b):
                if not y:
                    continue
                xy = x * y
                for k, c in enumerate(row[j]):
                    if c:
                        out[k] += xy * c
        return tuple(v % p for v in out)

    def power(self, a: Vec, n: int) -> Vec:
        result = self.one
        while n:
            if n & 1:
                result = self.mul(result, a)
            n >>= 1
            if n:
                a = self.mul(a, a)
        return result

    def lmul(self, a: Vec) -> Matrix:
        """Matrix of r -> a*r in the standard basis."""
        cols = [self.mul(a, self.basis(j)) for j in range(self.dim)]
        return Matrix.from_columns(self.field, cols, self.dim)

    def is_zero(self, a: Vec) -> bool:
        return not any(a)

    def to_dict(self) -> dict:
        return {
            "p": self.p,
            "basis": list(self.labels),
            "structure_constants": [[list(c) for c in ci] for ci in self.constants],
            "unity": list(self.unity),
        }

    def _key(self):
        return (self.p, self.labels, self.constants, self.unity)

    def __eq__(self, other):
        return isinstance(other, StructAlgebra) and self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def __repr__(self):
        return f"StructAlgebra(F_{self.p}, dim={self.dim}, basis={list(self.labels)})"


def validate_algebra(raw) -> StructAlgebra:
    """Parse a dict (or pass through an algebra) and check all ring axioms."""
    if isinstance(raw, StructAlgebra):
        R = raw
    else:
        try:
            R = StructAlgebra(raw["p"], raw["basis"], raw["structure_constants"], raw["unity"])
        except KeyError as exc:
            raise InputError(f"algebra description lacks field {exc.args[0]!r}") from None
    d, lab = R.dim, R.labels
    for i in range(d):
        for j in range(i + 1, d):
            if R.constants[i][j] != R.constants[j][i]:
                raise AxiomError(f"not commutative at basis pair ({i + 1}, {j + 1}) = ({lab[i]}, {lab[j]})",
                                 (lab[i], lab[j]))
    b = [R.basis(i) for i in range(d)]
    for i in range(d):
        if R.mul(R.unity, b[i]) != b[i]:
            raise AxiomError(f"unity does not act as identity on basis element {i + 1} ({lab[i]})", (lab[i],))
    for i in range(d):
        for j in range(d):
            bij = R.constants[i][j]
            for k in range(d):
                if R.mul(bij, b[k]) != R.mul(b[i], R.constants[j][k]):
                    raise AxiomError(
                        f"not associative at basis triple ({i + 1}, {j + 1}, {k + 1}) = ({lab[i]}, {lab[j]}, {lab[k]})",
                        (lab[i], lab[j], lab[k]))
    return R


def algebra_from_polynomial(p: int, modulus: Sequence[int], var: str = "x") -> StructAlgebra:
    """F_p[x]/(modulus) in the monomial basis 1, x, ..., x^{n-1}."""
    f = P.trim(modulus, p)
    lc, f = P.monic(f, p)
    n = P.deg(f)
    if n < 1:
        raise InputError("modulus must have positive degree")
    labels = ["1"] + [var if k == 1 else f"{var}^{k}" for k in range(1, n)]
    consts = []
    for i in range(n):
        row = []
        for j in range(n):
            r = P.mod(P.monomial(1, i + j, p), f, p)
            row.append(tuple(r) + (0,) * (n - len(r)))
        consts.append(row)
    return StructAlgebra(p, labels, consts, (1,) + (0,) * (n - 1))


def product_algebra(*algebras: StructAlgebra) -> StructAlgebra:
    p = algebras[0].p
    if any(A.p != p for A in algebras):
        raise InputError("product of algebras over different primes")
    d = sum(A.dim for A in algebras)
    labels, unity = [], []
    consts = [[[0] * d for _ in range(d)] for _ in range(d)]
    off = 0
    for t, A in enumerate(algebras):
        labels.extend(f"{lab}_{t + 1}" for lab in A.labels)
        unity.extend(A.unity)
        for i in range(A.dim):
            for j in range(A.dim):
                for k in range(A.dim):
                    consts[off + i][off + j][off + k] = A.constants[i][j][k]
        off += A.dim
    return StructAlgebra(p, labels, consts, unity)


# -- ideals and the nilradical -------------------------------------------

def ideal_closure(R: StructAlgebra, gens: Sequence[Vec]) -> List[Vec]:
    """RREF basis of the ideal generated by ``gens``."""
    basis = span_basis(R.field, [g for g in gens if any(g)], R.dim)
    while True:
        prods = [R.mul(v, R.basis(i)) for v in basis for i in range(R.dim)]
        new = span_basis(R.field, basis + prods, R.dim)
        if len(new) == len(basis):
            return new
        basis = new


def nilradical(R: StructAlgebra) -> List[Vec]:
    """Kernel of the F_p-linear map r -> r^(p^e) with p^e >= dim R."""
    q = 1
    while q < R.dim:
        q *= R.p
    cols = [R.power(R.basis(j), q) for j in range(R.dim)]
    frob = Matrix.from_columns(R.field, cols, R.dim)
    return span_basis(R.field, frob.kernel().columns(), R.dim)


def _minpoly(R: StructAlgebra, y: Vec, unit: Vec) -> P.Poly:
    """Minimal polynomial of y over F_p inside the algebra with identity ``unit``."""
    powers = [unit]
    while True:
        nxt = R.mul(powers[-1], y)
        sol = Matrix.from_columns(R.field, powers, R.dim).solve(nxt)
        if sol is not None:
            return P.trim([(-c) % R.p for c in sol] + [1], R.p)
        powers.append(nxt)


def quotient_algebra(R: StructAlgebra, ideal: Sequence[Vec]):
    """R/I together with lift (S-coords -> R) and projection (R -> S-coords)."""
    f, d = R.field, R.dim
    complement = []
    cur = list(ideal)
    for j in range(d):
        e = R.basis(j)
        if rank_of(f, cur + [e], d) > len(cur):
            cur.append(e)
            complement.append(e)
    coords = Coordinatizer(f, list(ideal) + complement, d)
    k = len(ideal)

    def project(v: Vec) -> Vec:
        return coords(v)[k:]

    def lift(s: Vec) -> Vec:
        out = R.zero
        for c, e in zip(s, complement):
            if c:
                out = R.add(out, R.scale(c, e))
        return out

    m = len(complement)
    consts = [[project(R.mul(complement[i], complement[j])) for j in range(m)] for i in range(m)]
    S = StructAlgebra(R.p, [f"[{j}]" for j in range(m)], consts, project(R.one))
    return S, lift, project


# -- decomposition into local components ---------------------------------

@dataclass(eq=False)
class Component:
    index: int
    idempotent: Vec
    basis: List[Vec]            # F_p-basis of e R
    max_ideal: List[Vec]        # maximal ideal of the local ring e R
    maximal_ideal: List[Vec]    # the maximal ideal of R it corresponds to
    kappa: object
    theta: Vec                  # lift of the residue field generator
    degree: int
    _coords: Coordinatizer = None
    _algebra: StructAlgebra = None

    @property
    def key(self) -> str:
        return f"m{self.index}"

    def residue(self, r: Vec):
        c = self._coords(r)[: self.degree]
        return c[0] if isinstance(self.kappa, PrimeField) else tuple(c)

    def lift(self, a) -> Vec:
        R = self._algebra
        coeffs = (a,) if isinstance(self.kappa, PrimeField) else a
        out = R.zero
        pw = self.idempotent
        for c in coeffs:
            if c:
                out = R.add(out, R.scale(c, pw))
            pw = R.mul(pw, self.theta)
        return out


@dataclass(eq=False)
class AlgebraDecomposition:
    algebra: StructAlgebra
    nilradical: List[Vec]
    components: List[Component]
    seed: int = 0

    @property
    def idempotents(self) -> List[Vec]:
        return [c.idempotent for c in self.components]

    def __len__(self):
        return len(self.components)


def _split_semisimple(S: StructAlgebra, rng: random.Random) -> List[Vec]:
    f, d, p = S.field, S.dim, S.p
    frob = Matrix.from_columns(f, [S.power(S.basis(j), p) for j in range(d)], d)
    berlekamp = (frob - Matrix.identity(f, d)).kernel().columns()
    n = len(berlekamp)
    idems = [S.one]
    while len(idems) < n:
        nxt = []
        for e in idems:
            local = span_basis(f, [S.mul(e, b) for b in berlekamp], d)
            if len(local) == 1:
                nxt.append(e)
                continue
            while True:
                y = S.zero
                for b in local:
                    y = S.add(y, S.scale(rng.randrange(p), b))
                if rank_of(f, [e, y], d) == 2:
                    break
            mu = _minpoly(S, y, e)
            roots = [a for a in range(p) if P.evaluate(mu, a, p) == 0]
            for lam in roots:
                acc = e
                for other in roots:
                    if other == lam:
                        continue
                    factor = S.sub(y, S.scale(other, e))
                    acc = S.scale(pow(lam - other, p - 2, p), S.mul(acc, factor))
                nxt.append(acc)
        idems = nxt
    return idems


def decompose(R: StructAlgebra, seed: int = 0) -> AlgebraDecomposition:
    """Primitive idempotents, local components and residue fields of R."""
    cached = _DECOMP_CACHE.get((R, seed))
    if cached is not None:
        return cached
    f, d, p = R.field, R.dim, R.p
    rng = random.Random(seed)
    nil = nilradical(R)
    S, lift, _ = quotient_algebra(R, nil)
    idems = []
    max_steps = math.ceil(math.log2(max(d, 2))) + 2
    for es in _split_semisimple(S, rng):
        e = lift(es)
        for _ in range(max_steps + 1):
            e2 = R.mul(e, e)
            if e2 == e:
                break
            e = R.sub(R.scale(3, e2), R.scale(2, R.mul(e2, e)))
        else:
            raise InternalContradiction("idempotent lifting did not stabilize")
        idems.append(e)
    idems.sort(reverse=True)
    comps = []
    for idx, e in enumerate(idems):
        comp_basis = span_basis(f, [R.mul(e, R.basis(j)) for j in range(d)], d)
        m_local = span_basis(f, [R.mul(e, v) for v in nil], d)
        rest = span_basis(f, [R.sub(R.basis(j), R.mul(e, R.basis(j))) for j in range(d)], d)
        k = len(comp_basis) - len(m_local)
        if k == 1:
            theta, kappa = e, PrimeField(p)
        else:
            for _ in range(64):
                cand = R.zero
                for b in comp_basis:
                    cand = R.add(cand, R.scale(rng.randrange(p), b))
                psi = [q for q, _ in P.factor(_minpoly(R, cand, e), p)]
                if len(psi) == 1 and P.deg(psi[0]) == k:
                    theta, kappa = cand, ExtensionField(p, psi[0])
                    break
            else:
                raise InternalContradiction(f"no primitive element found for component {idx}")
        powers = [e]
        for _ in range(k - 1):
            powers.append(R.mul(powers[-1], theta))
        coords = Coordinatizer(f, powers + m_local + rest, d)
        comps.append(Component(idx, e, comp_basis, m_local, span_basis(f, m_local + rest, d),
                               kappa, theta, k, coords, R))
    dec = AlgebraDecomposition(R, nil, comps, seed)
    _DECOMP_CACHE[(R, seed)] = dec
    return dec


_DECOMP_CACHE: Dict[tuple, AlgebraDecomposition] = {}


def sample_elements(dec: AlgebraDecomposition, constraints: Dict[int, str], count: int = 1,
                    distinct_at: Optional[int] = None) -> List[Vec]:
    """Ring elements meeting per-component constraints.

    Each constraint is ``"unit"`` (invertible in that component),
    ``"maximal"`` (in its maximal ideal), ``"zero"`` (killed by its
    idempotent) or ``"any"``; unnamed components default to ``"any"``.
    Without ``distinct_at`` a single canonical element is returned (the sum
    of the idempotents of the "unit" components).  With ``distinct_at = i``
    the ``count`` elements have pairwise distinct residues at component i.
    """
    R = dec.algebra
    for i, c in constraints.items():
        if c not in ("unit", "maximal", "zero", "any"):
            raise InputError(f"unknown constraint {c!r}")
        if not 0 <= i < len(dec.components):
            raise InputError(f"no component {i}")
    base = R.zero
    for i, c in constraints.items():
        if c == "unit" and i != distinct_at:
            base = R.add(base, dec.components[i].idempotent)
    if distinct_at is None:
        return [base] * count
    comp = dec.components[distinct_at]
    rule = constraints.get(distinct_at, "any")
    if rule in ("maximal", "zero"):
        avail = 1
    else:
        avail = comp.kappa.order - (1 if rule == "unit" else 0)
    if count > avail:
        raise InfeasibleError(
            f"{count} distinct residues requested at {comp.key} but only {avail} are available "
            f"(|kappa| = {comp.kappa.order})")
    if rule in ("maximal", "zero"):
        return [base]
    start = 1 if rule == "unit" else 0
    return [R.add(base, comp.lift(a)) for a in comp.kappa.first_elements(count + start)[start:]]


# -- modules ---------------------------------------------------------------

class FpModule:
    """A module over a StructAlgebra, given by its action matrices."""

    def __init__(self, algebra: StructAlgebra, dim: int, actions, check: bool = True, name: str = ""):
        self.algebra = algebra
        self.dim = dim
        self.name = name
        f = algebra.field
        mats = []
        for a in actions:
            m = a if isinstance(a, Matrix) else (Matrix.from_values(f, a, dim) if dim else Matrix.zeros(f, 0, 0))
            if m.shape != (dim, dim):
                raise InputError(f"action matrix has shape {m.shape}, expected {(dim, dim)}")
            mats.append(m)
        if len(mats) != algebra.dim:
            raise InputError(f"need {algebra.dim} action matrices, got {len(mats)}")
        self.actions = tuple(mats)
        self._act_cache: Dict[Vec, Matrix] = {}
        if check:
            self.validate()

    def validate(self):
        R, lab = self.algebra, self.algebra.labels
        f = R.field
        if self.act(R.one) != Matrix.identity(f, self.dim):
            raise AxiomError("unity does not act as the identity")
        for i in range(R.dim):
            for j in range(R.dim):
                if self.actions[i] @ self.actions[j] != self.act(R.constants[i][j]):
                    raise AxiomError(f"action not multiplicative at basis pair ({i + 1}, {j + 1}) = ({lab[i]}, {lab[j]})",
                                     (lab[i], lab[j]))

    def act(self, r: Vec) -> Matrix:
        m = self._act_cache.get(r)
        if m is None:
            m = Matrix.zeros(self.algebra.field, self.dim, self.dim)
            for c, a in zip(r, self.actions):
                if c:
                    m = m + a.scale(c)
            self._act_cache[r] = m
        return m

    def to_dict(self) -> dict:
        return {"action": [a.to_lists() for a in self.actions]} if self.dim else {"dimension": 0}

    def __eq__(self, other):
        return (isinstance(other, FpModule) and self.algebra == other.algebra and self.dim == other.dim
                and self.actions == other.actions)

    def __hash__(self):
        return hash((self.algebra, self.dim, self.actions))

    def __repr__(self):
        return f"FpModule({self.name or '?'}, dim={self.dim})"


def regular_module(R: StructAlgebra) -> FpModule:
    return FpModule(R, R.dim, [R.lmul(R.basis(i)) for i in range(R.dim)], check=False, name="R")


def zero_module(R: StructAlgebra) -> FpModule:
    return FpModule(R, 0, [Matrix.zeros(R.field, 0, 0)] * R.dim, check=False, name="0")


def module_closure(M: FpModule, vectors: Sequence[Vec]) -> List[Vec]:
    """RREF basis of the submodule generated by ``vectors``."""
    f = M.algebra.field
    basis = span_basis(f, [v for v in vectors if any(v)], M.dim)
    while True:
        imgs = [a.apply(v) for v in basis for a in M.actions]
        new = span_basis(f, basis + imgs, M.dim)
        if len(new) == len(basis):
            return new
        basis = new


def quotient_module(M: FpModule, sub: Sequence[Vec]) -> Tuple[FpModule, Matrix]:
    """M/W for a submodule W; returns the quotient and the projection matrix."""
    f, m = M.algebra.field, M.dim
    sub = module_closure(M, sub)
    complement = []
    cur = list(sub)
    for j in range(m):
        e = tuple(1 if i == j else 0 for i in range(m))
        if rank_of(f, cur + [e], m) > len(cur):
            cur.append(e)
            complement.append(e)
    q = len(complement)
    if m:
        inv = Matrix.from_columns(f, cur, m).inverse()
        proj = Matrix(f, inv.rows[len(sub):], m)
    else:
        proj = Matrix(f, [], 0)
    lift = Matrix.from_columns(f, complement, m) if q else Matrix.zeros(f, m, 0)
    actions = [proj @ a @ lift if q else Matrix.zeros(f, 0, 0) for a in M.actions]
    return FpModule(M.algebra, q, actions, check=False), proj


def submodule(M: FpModule, vectors: Sequence[Vec]) -> Tuple[FpModule, Matrix]:
    """The submodule generated by ``vectors`` and its inclusion matrix."""
    f = M.algebra.field
    basis = module_closure(M, vectors)
    k = len(basis)
    incl = Matrix.from_columns(f, basis, M.dim) if k else Matrix.zeros(f, M.dim, 0)
    coords = Coordinatizer(f, basis, M.dim)
    actions = []
    for a in M.actions:
        cols = [coords(a.apply(v)) for v in basis]
        actions.append(Matrix.from_columns(f, cols, k) if k else Matrix.zeros(f, 0, 0))
    return FpModule(M.algebra, k, actions, check=False), incl


def cyclic_module(R: StructAlgebra, ideal_gens: Sequence[Vec]) -> FpModule:
    """R/I for the ideal generated by ``ideal_gens``."""
    Q, _ = quotient_module(regular_module(R), ideal_closure(R, ideal_gens))
    return Q


def direct_sum(*mods: FpModule) -> FpModule:
    R = mods[0].algebra
    if any(M.algebra != R for M in mods):
        raise InputError("direct sum of modules over different algebras")
    dim = sum(M.dim for M in mods)
    actions = [Matrix.block_diag(R.field, *[M.actions[i] for M in mods]) if dim else Matrix.zeros(R.field, 0, 0)
               for i in range(R.dim)]
    return FpModule(R, dim, actions, check=False)


def dual_module(M: FpModule) -> FpModule:
    """Hom_{F_p}(M, F_p) with the transposed action."""
    return FpModule(M.algebra, M.dim, [a.T for a in M.actions], check=False)


# -- Hom -------------------------------------------------------------------

def _flat(H: Matrix) -> Vec:
    return H.flat()


def _unflat(f, v: Sequence, rows: int, cols: int) -> Matrix:
    return Matrix(f, [v[i * cols:(i + 1) * cols] for i in range(rows)], cols)


def check_linear(H: Matrix, N: FpModule, M: FpModule) -> bool:
    if H.shape != (M.dim, N.dim):
        return False
    return all(H @ a == b @ H for a, b in zip(N.actions, M.actions))


class HomSpace:
    """F_p-basis of Hom_R(N, M) plus the R-action in that basis."""

    def __init__(self, source: FpModule, target: FpModule, basis: List[Matrix]):
        self.source = source
        self.target = target
        self.basis = basis
        self.field = source.algebra.field
        self.dim = len(basis)
        mm, mn = target.dim, source.dim
        self._coords = Coordinatizer(self.field, [_flat(H) for H in basis], mm * mn)
        self.closure = []
        for a in target.actions:
            cols = [self._coords(_flat(a @ H)) for H in basis]
            self.closure.append(Matrix.from_columns(self.field, cols, self.dim) if self.dim
                                else Matrix.zeros(self.field, 0, 0))

    @property
    def size(self) -> int:
        return self.field.p ** self.dim

    def coords(self, H: Matrix) -> Vec:
        return self._coords(_flat(H))

    def contains(self, H: Matrix) -> bool:
        return H.shape == (self.target.dim, self.source.dim) and self._coords.contains(_flat(H))

    def element(self, coeffs: Sequence[int]) -> Matrix:
        return combine_homs(self.field, self.basis, coeffs, self.target.dim, self.source.dim)

    def elements(self):
        for coeffs in all_tuples(self.field, self.dim):
            yield self.element(coeffs)


def combine_homs(f, basis: Sequence[Matrix], coeffs: Sequence[int], rows: int, cols: int) -> Matrix:
    out = Matrix.zeros(f, rows, cols)
    for c, H in zip(coeffs, basis):
        if c:
            out = out + H.scale(c)
    return out


def hom_basis(N: FpModule, M: FpModule, degree_mask=None) -> HomSpace:
    """Solve H rho_N(b) = rho_M(b) H for all basis elements b.

    ``degree_mask(a, b)`` (optional) forces entry H[a][b] to vanish when it
    returns False; the graded code uses it to pick out one degree.
    """
    if N.algebra != M.algebra:
        raise InputError("Hom between modules over different algebras")
    f = N.algebra.field
    mm, mn = M.dim, N.dim
    nv = mm * mn
    eqs = []
    for an, am in zip(N.actions, M.actions):
        for a in range(mm):
            for c in range(mn):
                row = [0] * nv
                for b in range(mn):
                    row[a * mn + b] += an.rows[b][c]
                for e in range(mm):
                    row[e * mn + c] -= am.rows[a][e]
                eqs.append(row)
    if degree_mask is not None:
        for a in range(mm):
            for b in range(mn):
                if not degree_mask(a, b):
                    row = [0] * nv
                    row[a * mn + b] = 1
                    eqs.append(row)
    if nv == 0:
        basis = []
    elif eqs:
        sol = Matrix.from_values(f, eqs, nv).kernel()
        basis = [_unflat(f, v, mm, mn) for v in span_basis(f, sol.columns(), nv)]
    else:
        basis = [_unflat(f, tuple(1 if i == j else 0 for i in range(nv)), mm, mn) for j in range(nv)]
    return HomSpace(N, M, basis)


def hom_submodule(N: FpModule, M: FpModule, gens: Sequence[Matrix]) -> List[Matrix]:
    """F_p-basis (RREF order) of the R-submodule of Hom generated by ``gens``."""
    f = N.algebra.field
    for H in gens:
        if not check_linear(H, N, M):
            raise InputError("generator is not an R-linear map")
    nv = M.dim * N.dim
    vecs = span_basis(f, [_flat(H) for H in gens], nv)
    while True:
        imgs = [_flat(a @ _unflat(f, v, M.dim, N.dim)) for v in vecs for a in M.actions]
        new = span_basis(f, vecs + imgs, nv)
        if len(new) == len(vecs):
            break
        vecs = new
    return [_unflat(f, v, M.dim, N.dim) for v in vecs]


# -- socles ------------------------------------------------------------------

def socle_vectors(N: FpModule, comp: Component) -> List[Vec]:
    """F_p-basis of the socle of N localized at the component's maximal ideal."""
    return intersect_kernels(N.algebra.field, [N.act(x) for x in comp.maximal_ideal], N.dim)


def _kappa_basis(N: FpModule, comp: Component, vecs: List[Vec]):
    f = N.algebra.field
    th = N.act(comp.theta)
    chosen, spanned = [], []
    for v in vecs:
        if rank_of(f, spanned + [v], N.dim) > len(spanned):
            chosen.append(v)
            w = v
            for _ in range(comp.degree):
                spanned.append(w)
                w = th.apply(w)
    return chosen, spanned


def socle_site(dec: AlgebraDecomposition, index: int, N: FpModule, M: FpModule) -> SocleSite:
    if not 0 <= index < len(dec.components):
        raise InputError(f"no component {index}")
    comp = dec.components[index]
    k = comp.degree
    nb, _ = _kappa_basis(N, comp, socle_vectors(N, comp))
    mb, mspan = _kappa_basis(M, comp, socle_vectors(M, comp))
    coords = Coordinatizer(M.algebra.field, mspan, M.dim)
    kappa = comp.kappa
    prime = isinstance(kappa, PrimeField)
    sn, sm = len(nb), len(mb)

    def evaluator(H: Matrix) -> Matrix:
        cols = []
        for v in nb:
            c = coords(H.apply(v))
            cols.append([c[l * k] if prime else tuple(c[l * k:(l + 1) * k]) for l in range(sm)])
        return Matrix.from_columns(kappa, cols, sm)

    return SocleSite(comp.key, kappa, sn, sm, evaluator, comp.residue, comp.lift, True, nb, mb,
                     sort_key=(index,))


def socle_to_module_vector(site: SocleSite, N: FpModule, lam: Sequence) -> Vec:
    """Turn a kappa-coordinate vector on the socle basis of N into an F_p vector."""
    p = N.algebra.p
    out = [0] * N.dim
    for c, v in zip(lam, site.n_basis):
        for i, x in enumerate(N.act(site.lift(c)).apply(v)):
            out[i] = (out[i] + x) % p
    return tuple(out)


def associated_primes(N: FpModule, dec: Optional[AlgebraDecomposition] = None) -> List[int]:
    dec = dec or decompose(N.algebra)
    return [c.index for c in dec.components if socle_vectors(N, c)]


def ass_sites(dec: AlgebraDecomposition, N: FpModule, M: FpModule) -> List[SocleSite]:
    return [socle_site(dec, i, N, M) for i in associated_primes(N, dec)]


def is_injective(h: Matrix, N: FpModule, M: FpModule, sites: Optional[List[SocleSite]] = None) -> InjectivityReport:
    """Socle criterion: h is injective iff it is injective on every local socle.

    A failing report carries the prime and an F_p vector of N in the kernel.
    """
    if not check_linear(h, N, M):
        raise InputError("map is not R-linear")
    if sites is None:
        sites = ass_sites(decompose(N.algebra), N, M)
    for site in sites:
        rep = socle_injective(site, h)
        if not rep:
            return InjectivityReport(False, site.key, socle_to_module_vector(site, N, rep.witness))
    return InjectivityReport(True)


def kernel_dimension(h: Matrix) -> int:
    return h.ncols - h.rank()
