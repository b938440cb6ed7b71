"""Finitely generated modules over F_p[x].

A module is presented as R^g / (column span of P) with P a g x r matrix of
polynomials.  Smith normal form D = U P V turns this into a direct sum of
cyclic pieces R/(d) (torsion, d monic non-unit) and R (free).  The
"normalized coordinates" of an element are its coordinates in those pieces,
in the order they sit on the diagonal; unit diagonal entries contribute
nothing and are dropped.

A hom N -> M is a g_M x g_N polynomial matrix H (images of N's generators)
together with a witness Y satisfying H P_N = P_M Y, i.e. H respects the
relations.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import List, Optional, Sequence, Tuple

from . import poly as P
from .errors import InfeasibleError, InputError, InternalContradiction
from .fields import ExtensionField, PrimeField, RationalFunctionField
from .linalg import Matrix
from .sites import InjectivityReport, SocleSite, socle_injective

Poly = P.Poly
PMat = List[List[Poly]]


# -- polynomial matrices -------------------------------------------------------

def pm_zeros(m: int, n: int) -> PMat:
    return [[() for _ in range(n)] for _ in range(m)]


def pm_identity(n: int) -> PMat:
    return [[P.ONE if i == j else () for j in range(n)] for i in range(n)]


def pm_mul(a: PMat, b: PMat, p: int, inner: Optional[int] = None, cols: Optional[int] = None) -> PMat:
    n = len(b) if inner is None else inner
    if cols is None:
        cols = len(b[0]) if b else 0
    out = []
    for row in a:
        new = []
        for j in range(cols):
            acc = ()
            for k in range(n):
                if row[k] and b[k][j]:
                    acc = P.add(acc, P.mul(row[k], b[k][j], p), p)
            new.append(acc)
        out.append(new)
    return out


def pm_mul3(a: PMat, b: PMat, c: PMat, p: int, b_rows: int, c_rows: int, cols: Optional[int] = None) -> PMat:
    return pm_mul(pm_mul(a, b, p, inner=b_rows, cols=c_rows), c, p, inner=c_rows, cols=cols)


def pm_det(a: PMat, p: int) -> Poly:
    n = len(a)
    if n == 0:
        return P.ONE
    if n == 1:
        return a[0][0]
    acc = ()
    for j in range(n):
        if not a[0][j]:
            continue
        minor = [row[:j] + row[j + 1:] for row in a[1:]]
        term = P.mul(a[0][j], pm_det(minor, p), p)
        acc = P.add(acc, term, p) if j % 2 == 0 else P.sub(acc, term, p)
    return acc


def pm_trim(a: Sequence[Sequence], p: int) -> PMat:
    return [[P.trim(e, p) for e in row] for row in a]


def pm_to_lists(a: PMat) -> list:
    return [[list(e) for e in row] for row in a]


def pm_is_zero(a: PMat) -> bool:
    return not any(e for row in a for e in row)


# -- Smith normal form -------------------------------------------------------

@dataclass(frozen=True)
class SmithForm:
    """D = U P V with U^-1, V^-1 kept alongside."""

    U: tuple
    D: tuple
    V: tuple
    Uinv: tuple
    Vinv: tuple

    @property
    def diagonal(self) -> List[Poly]:
        return [self.D[i][i] for i in range(min(len(self.D), len(self.D[0]) if self.D else 0))]


def _freeze(a: PMat) -> tuple:
    return tuple(tuple(r) for r in a)


def smith_normal_form(Pm: Sequence[Sequence], p: int, nrows: Optional[int] = None) -> SmithForm:
    """Diagonalize by unimodular row/column operations.

    Pivot: entry of minimal degree in the remaining block, ties broken by
    smallest row then column.  Diagonal entries are monic or zero and form a
    divisibility chain.
    """
    A = pm_trim(Pm, p)
    m = len(A) if nrows is None else nrows
    n = len(A[0]) if A else 0
    U, Uinv, V, Vinv = pm_identity(m), pm_identity(m), pm_identity(n), pm_identity(n)

    def row_sub(i, t, q):            # row_i -= q row_t
        for M_ in (A, U):
            M_[i] = [P.sub(x, P.mul(q, y, p), p) for x, y in zip(M_[i], M_[t])]
        for r in Uinv:               # col_t += q col_i
            r[t] = P.add(r[t], P.mul(q, r[i], p), p)

    def row_add(t, i):               # row_t += row_i
        for M_ in (A, U):
            M_[t] = [P.add(x, y, p) for x, y in zip(M_[t], M_[i])]
        for r in Uinv:               # col_i -= col_t
            r[i] = P.sub(r[i], r[t], p)

    def row_swap(i, t):
        for M_ in (A, U):
            M_[i], M_[t] = M_[t], M_[i]
        for r in Uinv:
            r[i], r[t] = r[t], r[i]

    def row_scale(t, c):
        ci = pow(c, p - 2, p)
        for M_ in (A, U):
            M_[t] = [P.scale(x, c, p) for x in M_[t]]
        for r in Uinv:
            r[t] = P.scale(r[t], ci, p)

    def col_sub(j, t, q):            # col_j -= q col_t
        for M_ in (A, V):
            for r in M_:
                r[j] = P.sub(r[j], P.mul(q, r[t], p), p)
        Vinv[t] = [P.add(x, P.mul(q, y, p), p) for x, y in zip(Vinv[t], Vinv[j])]

    def col_swap(j, t):
        for M_ in (A, V):
            for r in M_:
                r[j], r[t] = r[t], r[j]
        Vinv[j], Vinv[t] = Vinv[t], Vinv[j]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    if A[i][j] and (best is None or P.deg(A[i][j]) < best[0]):
                        best = (P.deg(A[i][j]), i, j)
            if best is None:
                break
            _, i, j = best
            if i != t:
                row_swap(i, t)
            if j != t:
                col_swap(j, t)
            dirty = False
            for i in range(t + 1, m):
                if A[i][t]:
                    q, r = P.divmod_(A[i][t], A[t][t], p)
                    row_sub(i, t, q)
                    dirty = dirty or bool(r)
            for j in range(t + 1, n):
                if A[t][j]:
                    q, r = P.divmod_(A[t][j], A[t][t], p)
                    col_sub(j, t, q)
                    dirty = dirty or bool(r)
            if dirty:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                        if A[i][j] and not P.divides(A[t][t], A[i][j], p)), None)
            if bad is None:
                break
            row_add(t, bad[0])
        if A[t][t]:
            lc = A[t][t][-1]
            if lc != 1:
                row_scale(t, pow(lc, p - 2, p))
        else:
            break
    return SmithForm(_freeze(U), _freeze(A), _freeze(V), _freeze(Uinv), _freeze(Vinv))


# -- modules -------------------------------------------------------------------

class PidModule:
    """R^g modulo the column span of a g x r presentation matrix."""

    def __init__(self, p: int, gens: int, presentation: Sequence[Sequence] = (), name: str = ""):
        PrimeField(p)
        self.p = p
        self.gens = gens
        self.presentation = _freeze(pm_trim(presentation, p)) if presentation else tuple(() for _ in range(gens))
        self.name = name
        if len(self.presentation) != gens:
            raise InputError(f"presentation has {len(self.presentation)} rows, expected {gens}")
        lens = {len(r) for r in self.presentation}
        if len(lens) > 1:
            raise InputError("ragged presentation matrix")
        self.relations = lens.pop() if lens else 0

    @classmethod
    def from_summands(cls, p: int, summands: Sequence[Optional[Sequence[int]]], name: str = "") -> "PidModule":
        """Direct sum of R/(d) for each d (``None`` or ``()`` means a free summand R)."""
        ds = [P.trim(d, p) if d else () for d in summands]
        tors = [(i, d) for i, d in enumerate(ds) if d]
        g = len(ds)
        pres = [[() for _ in tors] for _ in range(g)]
        for c, (i, d) in enumerate(tors):
            pres[i][c] = d
        return cls(p, g, pres, name)

    @classmethod
    def free(cls, p: int, rank: int) -> "PidModule":
        return cls.from_summands(p, [None] * rank)

    @classmethod
    def zero(cls, p: int) -> "PidModule":
        return cls(p, 0, ())

    @cached_property
    def smith(self) -> SmithForm:
        return smith_normal_form([list(r) for r in self.presentation], self.p, nrows=self.gens)

    @cached_property
    def components(self) -> List[Tuple[int, Poly]]:
        """(row index in U-coordinates, modulus) for each non-unit piece; modulus () is free."""
        diag = self.smith.diagonal
        out = []
        for i in range(self.gens):
            d = diag[i] if i < len(diag) else ()
            if d != P.ONE:
                out.append((i, d))
        return out

    @property
    def invariant_factors(self) -> List[Poly]:
        return [d for _, d in self.components if d]

    @property
    def free_rank(self) -> int:
        return sum(1 for _, d in self.components if not d)

    @property
    def moduli(self) -> List[Poly]:
        return [d for _, d in self.components]

    @property
    def is_zero(self) -> bool:
        return not self.components

    def normalize(self, x: Sequence[Poly]) -> List[Poly]:
        """Original generator coordinates -> normalized coordinates (reduced)."""
        U, p = self.smith.U, self.p
        out = []
        for i, d in self.components:
            acc = ()
            for u, xi in zip(U[i], x):
                if u and xi:
                    acc = P.add(acc, P.mul(u, xi, p), p)
            out.append(P.mod(acc, d, p) if d else acc)
        return out

    def denormalize(self, z: Sequence[Poly]) -> List[Poly]:
        Uinv, p = self.smith.Uinv, self.p
        out = [() for _ in range(self.gens)]
        for (i, _), zi in zip(self.components, z):
            if zi:
                for r in range(self.gens):
                    if Uinv[r][i]:
                        out[r] = P.add(out[r], P.mul(Uinv[r][i], zi, p), p)
        return out

    def to_dict(self) -> dict:
        return {"generators": self.gens, "presentation": pm_to_lists([list(r) for r in self.presentation])}

    def __eq__(self, other):
        return (isinstance(other, PidModule) and (self.p, self.gens, self.presentation)
                == (other.p, other.gens, other.presentation))

    def __hash__(self):
        return hash((self.p, self.gens, self.presentation))

    def __repr__(self):
        tors = ", ".join(P.to_str(d) for d in self.invariant_factors)
        return f"PidModule(F_{self.p}[x]; torsion [{tors}], free rank {self.free_rank})"


def pid_direct_sum(*mods: PidModule) -> PidModule:
    p = mods[0].p
    g = sum(M.gens for M in mods)
    r = sum(M.relations for M in mods)
    pres = pm_zeros(g, r)
    go = ro = 0
    for M in mods:
        for i, row in enumerate(M.presentation):
            pres[go + i][ro:ro + M.relations] = list(row)
        go += M.gens
        ro += M.relations
    return PidModule(p, g, pres)


# -- primes ----------------------------------------------------------------------

@dataclass(frozen=True, order=True)
class PidPrime:
    """(f) for a monic irreducible f, or the zero prime when ``f`` is empty."""

    f: Poly = ()
    p: int = dc_field(default=2, compare=False)

    @property
    def is_zero(self) -> bool:
        return not self.f

    @property
    def kind(self) -> str:
        return "zero-prime" if self.is_zero else "irreducible"

    @property
    def key(self) -> str:
        return "(0)" if self.is_zero else f"({P.to_str(self.f)})"

    @cached_property
    def kappa(self):
        if self.is_zero:
            return RationalFunctionField(self.p)
        if P.deg(self.f) == 1:
            return PrimeField(self.p)
        return ExtensionField(self.p, self.f, check=False)

    def residue(self, r: Poly):
        k = self.kappa
        if self.is_zero:
            return k.from_poly(r)
        red = P.mod(P.trim(r, self.p), self.f, self.p)
        if isinstance(k, PrimeField):
            return red[0] if red else 0
        return k.from_poly(red)

    def lift(self, a) -> Poly:
        p = self.p
        if self.is_zero:
            num, den = self.kappa.canonical(a)
            if den != P.ONE:
                raise InputError("only polynomial residues lift to ring elements")
            return num
        if isinstance(a, int):
            return P.const(a, p)
        return P.trim(a, p)

    def sort_key(self) -> tuple:
        # maximal primes first (by degree, then coefficients); the zero prime last
        return (1,) if self.is_zero else (0, P.deg(self.f), self.f)

    def __repr__(self):
        return f"PidPrime{self.key}"


def make_prime(f: Sequence[int], p: int) -> PidPrime:
    f = P.trim(f, p)
    if f:
        _, f = P.monic(f, p)
        if not P.is_irreducible(f, p):
            raise InputError(f"{P.to_str(f)} is not irreducible over F_{p}")
    return PidPrime(f, p)


def pid_associated_primes(N: PidModule) -> List[PidPrime]:
    primes = set()
    for d in N.invariant_factors:
        for f, _ in P.factor(d, N.p):
            primes.add(f)
    out = [PidPrime(f, N.p) for f in primes]
    out.sort(key=PidPrime.sort_key)
    if N.free_rank:
        out.append(PidPrime((), N.p))
    return out


# -- homs ------------------------------------------------------------------------

@dataclass(frozen=True)
class PidHom:
    """Generator images H (g_M x g_N) and a witness Y with H P_N = P_M Y."""

    H: tuple
    Y: tuple

    def to_dict(self) -> dict:
        return {"matrix": pm_to_lists([list(r) for r in self.H]), "witness": pm_to_lists([list(r) for r in self.Y])}


def _witness(H: PMat, N: PidModule, M: PidModule) -> Optional[PMat]:
    """Y with H P_N = P_M Y, or None if H does not respect the relations."""
    p = M.p
    if N.relations == 0:
        return [[] for _ in range(M.relations)]
    Z = pm_mul3([list(r) for r in M.smith.U], H, [list(r) for r in N.presentation], p, M.gens, N.gens,
                N.relations)
    D = M.smith.D
    Ypp = pm_zeros(M.relations, N.relations)
    for j in range(M.gens):
        e = D[j][j] if j < M.relations else ()
        for l in range(N.relations):
            z = Z[j][l]
            if not z:
                continue
            if not e:
                return None
            q, r = P.divmod_(z, e, p)
            if r:
                return None
            Ypp[j][l] = q
    return pm_mul([list(r) for r in M.smith.V], Ypp, p, inner=M.relations, cols=N.relations)


def make_pid_hom(H: Sequence[Sequence], N: PidModule, M: PidModule) -> PidHom:
    p = N.p
    H = pm_trim(H, p) if H else [[] for _ in range(M.gens)]
    if len(H) != M.gens or any(len(r) != N.gens for r in H):
        raise InputError(f"hom matrix must be {M.gens} x {N.gens}")
    Y = _witness(H, N, M)
    if Y is None:
        raise InputError("matrix does not respect the relations of the source module")
    return PidHom(_freeze(H), _freeze(Y))


def check_witness(h: PidHom, N: PidModule, M: PidModule) -> bool:
    p = N.p
    lhs = pm_mul([list(r) for r in h.H], [list(r) for r in N.presentation], p, inner=N.gens, cols=N.relations)
    rhs = pm_mul([list(r) for r in M.presentation], [list(r) for r in h.Y], p, inner=M.relations, cols=N.relations)
    if N.relations == 0:
        return True
    return lhs == rhs


def normalized_hom(h: PidHom, N: PidModule, M: PidModule) -> PMat:
    """H' = U_M H U_N^-1 restricted to non-unit pieces, entries reduced mod M's moduli."""
    p = N.p
    full = pm_mul3([list(r) for r in M.smith.U], [list(r) for r in h.H], [list(r) for r in N.smith.Uinv],
                   p, M.gens, N.gens, N.gens)
    out = []
    for j, e in M.components:
        out.append([P.mod(full[j][l], e, p) if e else full[j][l] for l, _ in N.components])
    return out


def hom_from_normalized(Hn: Sequence[Sequence[Poly]], N: PidModule, M: PidModule) -> PidHom:
    """Transport a hom given in normalized coordinates back to generator coordinates."""
    p = N.p
    E = pm_zeros(M.gens, N.gens)
    for a, (j, _) in enumerate(M.components):
        for b, (l, _) in enumerate(N.components):
            E[j][l] = P.trim(Hn[a][b], p)
    H = pm_mul3([list(r) for r in M.smith.Uinv], E, [list(r) for r in N.smith.U], p, M.gens, N.gens, N.gens)
    return make_pid_hom(H, N, M)


def _generator_entry(a: Poly, b: Poly, p: int) -> Optional[Poly]:
    """Generator of Hom(R/(a), R/(b)); an empty modulus means a free piece."""
    if a and b:
        return P.div(b, P.gcd(a, b, p), p)
    if a and not b:
        return None
    return P.ONE


def pid_hom_generators(N: PidModule, M: PidModule) -> List[PidHom]:
    """Standard generators of Hom_R(N, M), one per pair of cyclic pieces."""
    p = N.p
    gens = []
    cn, cm = len(N.components), len(M.components)
    for a, (_, e) in enumerate(M.components):
        for b, (_, d) in enumerate(N.components):
            g = _generator_entry(d, e, p)
            if g is None or (e and not P.mod(g, e, p)):
                continue
            Hn = [[() for _ in range(cn)] for _ in range(cm)]
            Hn[a][b] = g
            gens.append(hom_from_normalized(Hn, N, M))
    return gens


def hom_combination(homs: Sequence[PidHom], coeffs: Sequence[Poly], N: PidModule, M: PidModule) -> PidHom:
    """Sum of r_k h_k (coefficients are polynomials); the witness is combined too."""
    p = N.p
    H = pm_zeros(M.gens, N.gens)
    Y = pm_zeros(M.relations, N.relations)
    for c, h in zip(coeffs, homs):
        c = P.trim(c, p)
        if not c:
            continue
        for i in range(M.gens):
            for j in range(N.gens):
                if h.H[i][j]:
                    H[i][j] = P.add(H[i][j], P.mul(c, h.H[i][j], p), p)
        for i in range(M.relations):
            for j in range(N.relations):
                if h.Y[i][j]:
                    Y[i][j] = P.add(Y[i][j], P.mul(c, h.Y[i][j], p), p)
    return PidHom(_freeze(H), _freeze(Y))


def hom_coefficients(h: PidHom, N: PidModule, M: PidModule) -> Optional[dict]:
    """Express h in the standard generators: {(a, b): r} or None if impossible."""
    p = N.p
    Hn = normalized_hom(h, N, M)
    out = {}
    for a, (_, e) in enumerate(M.components):
        for b, (_, d) in enumerate(N.components):
            entry = Hn[a][b]
            if not entry:
                continue
            g = _generator_entry(d, e, p)
            if g is None:
                return None
            q, r = P.divmod_(entry, g, p)
            if r:
                return None
            out[(a, b)] = q
    return out


def identity_hom(N: PidModule) -> PidHom:
    return make_pid_hom(pm_identity(N.gens), N, N)


def scalar_hom(r: Sequence[int], N: PidModule) -> PidHom:
    r = P.trim(r, N.p)
    return make_pid_hom([[r if i == j else () for j in range(N.gens)] for i in range(N.gens)], N, N)


# -- socles ----------------------------------------------------------------------

def pid_socle_site(N: PidModule, M: PidModule, q: PidPrime) -> SocleSite:
    p = N.p
    kappa = q.kappa
    if q.is_zero:
        ncomp = [b for b, (_, d) in enumerate(N.components) if not d]
        mcomp = [a for a, (_, e) in enumerate(M.components) if not e]

        def evaluator(h: PidHom) -> Matrix:
            Hn = normalized_hom(h, N, M)
            rows = [[kappa.from_poly(Hn[a][b]) for b in ncomp] for a in mcomp]
            return Matrix(kappa, rows, len(ncomp))
    else:
        f = q.f
        ncomp = [b for b, (_, d) in enumerate(N.components) if d and P.divides(f, d, p)]
        mcomp = [a for a, (_, e) in enumerate(M.components) if e and P.divides(f, e, p)]
        dn = [N.components[b][1] for b in ncomp]
        em = [M.components[a][1] for a in mcomp]

        def evaluator(h: PidHom) -> Matrix:
            Hn = normalized_hom(h, N, M)
            rows = []
            for a, e in zip(mcomp, em):
                row = []
                for b, d in zip(ncomp, dn):
                    entry = Hn[a][b]
                    if entry:
                        val, r = P.divmod_(P.mul(entry, d, p), e, p)
                        if r:
                            raise InternalContradiction("hom does not respect the socle filtration")
                        row.append(q.residue(val))
                    else:
                        row.append(kappa.zero)
                rows.append(row)
            return Matrix(kappa, rows, len(ncomp))

    return SocleSite(q.key, kappa, len(ncomp), len(mcomp), evaluator, q.residue, q.lift,
                     not q.is_zero, ncomp, mcomp, sort_key=q.sort_key())


def pid_sites(N: PidModule, M: PidModule) -> List[SocleSite]:
    return [pid_socle_site(N, M, q) for q in pid_associated_primes(N)]


def _socle_witness_vector(site: SocleSite, N: PidModule, q: PidPrime, lam) -> List[Poly]:
    """Generator coordinates of the socle element with kappa-coordinates lam."""
    p = N.p
    z = [() for _ in N.components]
    for b, c in zip(site.n_basis, lam):
        if q.is_zero:
            num, den = c
            # clear denominators: any nonzero multiple is still in the kernel
            z[b] = ("den", num, den)
        else:
            d = N.components[b][1]
            z[b] = P.mul(q.lift(c), P.div(d, q.f, p), p)
    if q.is_zero:
        dens = [t[2] for t in z if t]
        common = P.ONE
        for d in dens:
            common = P.lcm(common, d, p)
        z = [P.mul(t[1], P.div(common, t[2], p), p) if t else () for t in z]
    return N.denormalize(z)


def pid_is_injective(h: PidHom, N: PidModule, M: PidModule, sites: Optional[List[SocleSite]] = None) -> InjectivityReport:
    """Socle criterion at every associated prime; the witness is in N's generator coordinates."""
    if not check_witness(h, N, M):
        raise InputError("witness equation H P_N = P_M Y fails")
    primes = pid_associated_primes(N)
    if sites is None:
        sites = [pid_socle_site(N, M, q) for q in primes]
    by_key = {q.key: q for q in primes}
    for site in sites:
        rep = socle_injective(site, h)
        if not rep:
            vec = _socle_witness_vector(site, N, by_key[site.key], rep.witness)
            return InjectivityReport(False, site.key, tuple(vec))
    return InjectivityReport(True)


def _in_image(x: Sequence[Poly], N: PidModule) -> bool:
    """Is x in the column span of P_N?  Solved through N's Smith form."""
    p = N.p
    S = N.smith
    y = [()] * N.gens
    for i in range(N.gens):
        acc = ()
        for u, xi in zip(S.U[i], x):
            if u and xi:
                acc = P.add(acc, P.mul(u, xi, p), p)
        y[i] = acc
    diag = S.diagonal
    for i, yi in enumerate(y):
        d = diag[i] if i < len(diag) else ()
        if yi and (not d or not P.divides(d, yi, p)):
            return False
    return True


def pid_kernel_generators(h: PidHom, N: PidModule, M: PidModule) -> List[List[Poly]]:
    """Generators (in N's generator coordinates) of {x : H x in im P_M}.

    Computed from the Smith form of the block matrix [H | -P_M]: the columns
    of V beyond the rank span its kernel.
    """
    p = N.p
    G = [list(h.H[i]) + [P.neg(e, p) for e in M.presentation[i]] for i in range(M.gens)]
    cols = N.gens + M.relations
    if M.gens == 0:
        return [[P.ONE if i == j else () for i in range(N.gens)] for j in range(N.gens)]
    S = smith_normal_form(G, p, nrows=M.gens)
    rank = sum(1 for d in S.diagonal if d)
    return [[S.V[i][j] for i in range(N.gens)] for j in range(rank, cols)]


def pid_is_injective_kernel(h: PidHom, N: PidModule, M: PidModule) -> InjectivityReport:
    """Independent check: every kernel generator must already vanish in N."""
    for x in pid_kernel_generators(h, N, M):
        if not _in_image(x, N):
            return InjectivityReport(False, "kernel", tuple(x))
    return InjectivityReport(True)


def pid_sample_with_residues(j: Sequence[int], q: PidPrime, count: int) -> List[Poly]:
    """``count`` multiples of j with pairwise distinct residues at q."""
    p = q.p
    j = P.trim(j, p)
    if not j or (not q.is_zero and P.divides(q.f, j, p)):
        raise InfeasibleError(f"the ideal ({P.to_str(j)}) lies inside the prime {q.key}")
    if q.is_zero:
        return [P.shift(j, k) for k in range(count)]
    avail = p ** P.deg(q.f)
    if count > avail:
        raise InfeasibleError(f"{count} distinct residues requested at {q.key} but |kappa| = {avail}")
    return [P.mul(j, P.from_index(i, p), p) for i in range(count)]


# -- random objects for tests and fixtures ----------------------------------------

def random_poly(rng: random.Random, p: int, max_deg: int) -> Poly:
    return P.trim([rng.randrange(p) for _ in range(rng.randint(0, max_deg) + 1)], p)


def random_unimodular(rng: random.Random, p: int, n: int, steps: int = 4, max_deg: int = 1) -> PMat:
    """Product of random elementary matrices with unit-scaled rows."""
    A = pm_identity(n)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        q = random_poly(rng, p, max_deg)
        A[i] = [P.add(x, P.mul(q, y, p), p) for x, y in zip(A[i], A[j])]
    for i in range(n):
        A[i] = [P.scale(x, rng.randrange(1, p), p) for x in A[i]]
    return A
