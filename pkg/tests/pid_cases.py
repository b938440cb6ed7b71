"""Seeded random F_p[x]-modules with disguised presentations, and homs built without Smith forms."""

import random

from injcap import pid as D
from injcap import poly as P

MODULI = {
    2: [(0, 1), (1, 1), (0, 0, 1), (1, 1, 1), (0, 1, 1), (1, 0, 1), (0, 0, 0, 1)],
    3: [(0, 1), (1, 1), (2, 1), (0, 0, 1), (1, 0, 1), (2, 0, 1)],
}


def elementary_pair(rng, p, n, steps=4):
    """A random unimodular matrix together with its inverse, built from elementary operations."""
    U, Ui = D.pm_identity(n), D.pm_identity(n)
    for _ in range(steps if n > 1 else 0):
        i, j = rng.sample(range(n), 2)
        q = D.random_poly(rng, p, 1)
        # U <- E U with E = I + q e_ij ; Ui <- Ui E^{-1}, E^{-1} = I - q e_ij
        U[i] = [P.add(x, P.mul(q, y, p), p) for x, y in zip(U[i], U[j])]
        for row in Ui:
            row[j] = P.sub(row[j], P.mul(q, row[i], p), p)
    return U, Ui


def random_summands(rng, p, max_pieces=3):
    k = rng.randint(0, max_pieces)
    return [None if rng.random() < 0.3 else rng.choice(MODULI[p]) for _ in range(k)]


def disguised_module(rng, p, summands):
    """R^g / (U0 diag V0) for random unimodular U0, V0; returns (module, U0, U0^{-1})."""
    g = len(summands)
    base = D.PidModule.from_summands(p, summands)
    r = base.relations
    U0, U0i = elementary_pair(rng, p, g)
    V0, _ = elementary_pair(rng, p, r)
    pres = D.pm_mul(D.pm_mul(U0, [list(x) for x in base.presentation], p, inner=g, cols=r), V0, p, inner=r, cols=r)
    return D.PidModule(p, g, pres), U0, U0i


def random_diag_hom_entry(rng, p, a, b):
    """A random map R/(a) -> R/(b) as a polynomial (a or b empty means free)."""
    if a and not b:
        return ()
    if a and b:
        g = P.div(b, P.gcd(a, b, p), p)
        return P.mul(g, D.random_poly(rng, p, 2), p)
    return D.random_poly(rng, p, 2)


def module_pair(seed):
    rng = random.Random(seed)
    p = rng.choice([2, 3])
    sn, sm = random_summands(rng, p), random_summands(rng, p)
    N, U0, U0i = disguised_module(rng, p, sn)
    M, U1, U1i = disguised_module(rng, p, sm)
    return rng, p, (sn, N, U0, U0i), (sm, M, U1, U1i)


def random_hom(rng, p, n_data, m_data):
    """H = U1 H_D U0^{-1} with H_D a map between the diagonal presentations."""
    sn, N, U0, U0i = n_data
    sm, M, U1, U1i = m_data
    HD = [[random_diag_hom_entry(rng, p, a or (), b or ()) for a in sn] for b in sm]
    H = D.pm_mul(D.pm_mul(U1, HD, p, inner=len(sm), cols=len(sn)), U0i, p, inner=len(sn), cols=len(sn))
    return D.make_pid_hom(H, N, M)
