"""Brute-force ground truth for tiny Artinian instances.

Nothing here uses row reduction, socles or the decomposition machinery
beyond the list of maximal ideals: homs are enumerated as integer arrays,
injectivity means "no nonzero domain vector is sent to zero", checked by
applying the map to every vector of the domain.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import List, Sequence

import numpy as np

from . import artinian as A
from .errors import BudgetError
from .linalg import Matrix

INF = math.inf


@dataclass(frozen=True)
class OracleBudget:
    max_span: int = 2 ** 12
    max_dim: int = 4
    max_prime: int = 3

    def __post_init__(self):
        if min(self.max_span, self.max_dim, self.max_prime) <= 0:
            raise ValueError("oracle budgets must be positive")

    def check_modules(self, *mods: A.FpModule):
        for M in mods:
            if M.dim > self.max_dim:
                raise BudgetError(f"module dimension {M.dim} exceeds oracle budget {self.max_dim}")
        p = mods[0].algebra.p
        if p > self.max_prime:
            raise BudgetError(f"prime {p} exceeds oracle budget {self.max_prime}")


def _as_array(m: Matrix) -> np.ndarray:
    return np.array(m.rows, dtype=np.int64).reshape(m.nrows, m.ncols)


def _all_vectors(p: int, n: int, nonzero: bool = True) -> np.ndarray:
    """All vectors of F_p^n as columns (n x p^n), optionally without zero."""
    vecs = np.array(list(itertools.product(range(p), repeat=n)), dtype=np.int64).reshape(-1, n).T
    return vecs[:, 1:] if nonzero else vecs


def span_elements(gens: Sequence[Matrix], N: A.FpModule, M: A.FpModule,
                  budget: OracleBudget = OracleBudget()) -> np.ndarray:
    """Every element of the R-span of ``gens`` as an array (count x dim M x dim N)."""
    budget.check_modules(N, M)
    p = N.algebra.p
    basis = A.hom_submodule(N, M, list(gens)) if gens else []
    if p ** len(basis) > budget.max_span:
        raise BudgetError(f"span of F has {p}^{len(basis)} elements, above the budget {budget.max_span}")
    if not basis:
        return np.zeros((1, M.dim, N.dim), dtype=np.int64)
    B = np.stack([_as_array(b) for b in basis])
    coeffs = np.array(list(itertools.product(range(p), repeat=len(basis))), dtype=np.int64)
    return np.einsum("ck,kij->cij", coeffs, B) % p


def _kills(H: np.ndarray, vecs: np.ndarray, p: int) -> np.ndarray:
    """Boolean mask over domain vectors sent to zero by H."""
    return ~((H @ vecs) % p).any(axis=0)


def is_injective_direct(H: np.ndarray, p: int) -> bool:
    n = H.shape[1]
    if n == 0:
        return True
    return not _kills(H, _all_vectors(p, n), p).any()


def oracle_inj(elements: np.ndarray, N: A.FpModule, M: A.FpModule) -> float:
    """Largest t with an injective row of t elements (INF when N = 0)."""
    p = N.algebra.p
    n, m = N.dim, M.dim
    if n == 0:
        return INF
    cands = [H for H in _dedupe(elements) if is_injective_direct(H, p)]
    best = 0

    def dfs(start, row):
        nonlocal best
        best = max(best, len(row))
        if (len(row) + 1) * n > m:
            return
        for i in range(start, len(cands)):
            new = row + [cands[i]]
            if is_injective_direct(np.hstack(new), p):
                dfs(i + 1, new)
                if best * n + n > m:
                    return

    dfs(0, [])
    return best


def _dedupe(elements: np.ndarray) -> List[np.ndarray]:
    seen, out = set(), []
    for H in elements:
        key = H.tobytes()
        if key not in seen:
            seen.add(key)
            out.append(H)
    return out


def oracle_cog(elements: np.ndarray, N: A.FpModule, M: A.FpModule) -> float:
    """Smallest t with an injective column of t elements (INF if none up to dim N)."""
    p = N.algebra.p
    n = N.dim
    if n == 0:
        return 0
    vecs = _all_vectors(p, n)
    masks = set()
    for H in elements:
        bits = _kills(H, vecs, p)
        masks.add(int("".join("1" if b else "0" for b in bits), 2))
    full = (1 << vecs.shape[1]) - 1
    level = {full}
    for t in range(1, n + 1):
        level = {a & b for a in level for b in masks}
        if 0 in level:
            return t
    return INF


def oracle_has_injection(elements: np.ndarray, N: A.FpModule) -> bool:
    p = N.algebra.p
    return any(is_injective_direct(H, p) for H in elements)


def _ring_elements(R: A.StructAlgebra) -> List[tuple]:
    return list(itertools.product(range(R.p), repeat=R.dim))


def _span_set(R: A.StructAlgebra, basis: Sequence[tuple]) -> frozenset:
    p = R.p
    out = set()
    for coeffs in itertools.product(range(p), repeat=len(basis)):
        v = [0] * R.dim
        for c, b in zip(coeffs, basis):
            for i, x in enumerate(b):
                v[i] = (v[i] + c * x) % p
        out.add(tuple(v))
    return frozenset(out)


def oracle_ass(N: A.FpModule, dec: A.AlgebraDecomposition, budget: OracleBudget = OracleBudget()) -> List[int]:
    """Components whose maximal ideal is the annihilator of some element of N."""
    R = N.algebra
    budget.check_modules(N)
    if R.p ** R.dim > budget.max_span or R.p ** N.dim > budget.max_span:
        raise BudgetError("ring or module too large to enumerate")
    maximals = {c.index: _span_set(R, c.maximal_ideal) for c in dec.components}
    ring = _ring_elements(R)
    acts = [np.array(a.rows, dtype=np.int64).reshape(N.dim, N.dim) for a in N.actions]
    p = R.p
    act_of = {}
    for r in ring:
        m = np.zeros((N.dim, N.dim), dtype=np.int64)
        for c, a in zip(r, acts):
            m = m + c * a
        act_of[r] = m % p
    found = set()
    for v in itertools.product(range(p), repeat=N.dim):
        if not any(v):
            continue
        vec = np.array(v, dtype=np.int64)
        ann = frozenset(r for r in ring if not ((act_of[r] @ vec) % p).any())
        for idx, mset in maximals.items():
            if ann == mset:
                found.add(idx)
    return sorted(found)


def oracle_hom_dimension(N: A.FpModule, M: A.FpModule, budget: OracleBudget = OracleBudget()) -> int:
    """Dimension of Hom_R(N, M) by testing every F_p-matrix against the actions."""
    p = N.algebra.p
    size = p ** (N.dim * M.dim)
    if size > budget.max_span:
        raise BudgetError(f"{size} candidate matrices exceed the budget {budget.max_span}")
    if N.dim * M.dim == 0:
        return 0
    allm = np.array(list(itertools.product(range(p), repeat=N.dim * M.dim)), dtype=np.int64)
    allm = allm.reshape(-1, M.dim, N.dim)
    ok = np.ones(len(allm), dtype=bool)
    for an, am in zip(N.actions, M.actions):
        a_n = np.array(an.rows, dtype=np.int64).reshape(N.dim, N.dim)
        a_m = np.array(am.rows, dtype=np.int64).reshape(M.dim, M.dim)
        lhs = np.einsum("cij,jk->cik", allm, a_n) % p
        rhs = np.einsum("ij,cjk->cik", a_m, allm) % p
        ok &= (lhs == rhs).all(axis=(1, 2))
    count = int(ok.sum())
    dim = round(math.log(count, p))
    if p ** dim != count:
        raise AssertionError(f"solution count {count} is not a power of {p}")
    return dim


def evaluate_multipoly(field, terms, values):
    """Naive evaluation: every power is built by repeated multiplication."""
    acc = field.zero
    for exps, coeff in terms:
        term = field.canonical(coeff)
        for v, e in zip(values, exps):
            for _ in range(e):
                term = field.mul(term, v)
        acc = field.add(acc, term)
    return acc


def to_array(H: Matrix) -> np.ndarray:
    return _as_array(H)
