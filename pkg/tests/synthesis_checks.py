"""Seeded synthesis instances and the survivor-set prefix checks shared by several test modules."""

import itertools
import random

import pid_cases
from injcap import artinian as A
from injcap import pid as D
from injcap import synthesis as S
from injcap.fixtures import fixture_algebras, module_family
from injcap.sites import column_matrix, row_matrix


def prefix_failures(adapter, res):
    """Every (T, p) where the survivor-set prefix claim fails; empty means the result is sound.

    For a nonempty subset T of the associated primes, rows take the prefix of
    length min over T of t(p), columns the prefix of length max over T; the
    prefix must have full socle rank at every p in T.  For T = Ass the prefix
    must also be injective globally, which is checked by a direct kernel
    computation rather than through socles.
    """
    sites = adapter.sites
    t = res.targets
    row = res.orientation == "row"
    bad = []
    for size in range(1, len(sites) + 1):
        for T in itertools.combinations(sites, size):
            L = (min if row else max)(t[s.key] for s in T)
            pre = res.homs[:L]
            for s in T:
                if row:
                    ok = row_matrix(s, pre).rank() == L * s.dim_n
                else:
                    ok = column_matrix(s, pre).rank() == s.dim_n
                if not ok:
                    bad.append((tuple(x.key for x in T), s.key))
    if sites:
        L = (min if row else max)(t.values())
        whole = adapter.row_injective(res.homs[:L]) if row else adapter.column_injective(res.homs[:L])
        if not whole:
            bad.append(("global", L))
    return bad


def _random_targets(rng, adapter, orientation):
    out = {}
    for i, s in enumerate(adapter.sites):
        if orientation == "row":
            cap = S.local_capacity(adapter, i)[0]
            if cap == 0:
                return None
            out[s.key] = rng.randint(1, min(int(cap), 3))
        else:
            cog = S.local_cog(adapter, i)[0]
            if cog == S.INF:
                return None
            out[s.key] = int(cog) + rng.randint(0, 1)
    return out


_ART_CACHE = {}


def _artinian_pool():
    if not _ART_CACHE:
        for name, R in fixture_algebras().items():
            mods = [m for m in module_family(R, 2) if m.dim > 0]
            _ART_CACHE[name] = (R, mods)
    return _ART_CACHE


def artinian_instance(seed, orientation):
    """An adapter with all of Hom(N, N + X) or a random sub-family, plus random feasible targets."""
    rng = random.Random(seed)
    pool = _artinian_pool()
    name = rng.choice(sorted(pool))
    R, mods = pool[name]
    N = rng.choice(mods)
    X = rng.choice([A.zero_module(R)] + mods)
    M = A.direct_sum(N, X) if orientation == "row" else rng.choice(mods)
    basis = A.hom_basis(N, M).basis
    gens = basis if rng.random() < 0.5 else rng.sample(basis, k=rng.randint(len(basis) // 2, len(basis)))
    adapter = S.ArtinianAdapter(N, M, gens, seed)
    return name, adapter, _random_targets(rng, adapter, orientation)


def pid_instance(seed, orientation):
    """F_p[x] modules N with a free summand (so (0) is associated) and M = N + extra, F = Hom generators."""
    rng = random.Random(seed)
    p = rng.choice([2, 3])
    sn = [None] + pid_cases.random_summands(rng, p, 2)
    sm = sn + pid_cases.random_summands(rng, p, 1)
    if orientation == "column":
        sm = [s for s in sm if s is None or rng.random() < 0.7] or [None]
    N = pid_cases.disguised_module(rng, p, sn)[0]
    M = pid_cases.disguised_module(rng, p, sm)[0]
    gens = D.pid_hom_generators(N, M)
    adapter = S.PidAdapter(N, M, gens, seed)
    return f"F{p}[x]", adapter, _random_targets(rng, adapter, orientation)
