import random

import pytest

import pid_cases as cases
from injcap import pid as D
from injcap import poly as P
from injcap.errors import InfeasibleError, InputError

X = (0, 1)


def mod(p, *summands):
    return D.PidModule.from_summands(p, list(summands))


def check_snf(Pm, p):
    m = len(Pm)
    n = len(Pm[0]) if Pm else 0
    S = D.smith_normal_form(Pm, p)
    U, V = [list(r) for r in S.U], [list(r) for r in S.V]
    assert D.pm_mul3(U, Pm, V, p, m, n, n) == [list(r) for r in S.D]
    assert D.pm_mul(U, [list(r) for r in S.Uinv], p) == D.pm_identity(m)
    assert D.pm_mul(V, [list(r) for r in S.Vinv], p) == D.pm_identity(n)
    assert P.deg(D.pm_det(U, p)) == 0 and P.deg(D.pm_det(V, p)) == 0
    diag = S.diagonal
    for a, b in zip(diag, diag[1:]):
        assert not b or (a and P.divides(a, b, p))
    for d in diag:
        assert not d or d[-1] == 1
    return S


def test_snf_examples():
    assert check_snf([[X, ()], [(), (0, 0, 1)]], 2).diagonal == [X, (0, 0, 1)]
    assert check_snf([[X, (1,)], [(), X]], 2).diagonal == [(1,), (0, 0, 1)]
    assert check_snf([[(), ()], [(), ()]], 2).diagonal == [(), ()]


def test_snf_random():
    rng = random.Random(11)
    for _ in range(120):
        p = rng.choice([2, 3])
        m, n = rng.randint(1, 4), rng.randint(1, 4)
        check_snf([[D.random_poly(rng, p, 4) for _ in range(n)] for _ in range(m)], p)


def test_associated_primes_examples():
    assert [q.key for q in D.pid_associated_primes(mod(2, X, None))] == ["(x)", "(0)"]
    assert [q.key for q in D.pid_associated_primes(mod(2, (0, 1, 1)))] == ["(x)", "(x+1)"]
    assert D.pid_associated_primes(D.PidModule.zero(2)) == []


def test_associated_primes_of_sum_is_union():
    for seed in range(30):
        _, p, (sn, N, *_), (sm, M, *_) = cases.module_pair(seed)
        both = D.pid_direct_sum(N, M)
        keys = lambda Z: {q.key for q in D.pid_associated_primes(Z)}
        assert keys(both) == keys(N) | keys(M)


def test_socle_site_examples():
    q = D.PidPrime(X, 2)
    Mx2 = mod(2, (0, 0, 1))
    assert D.pid_socle_site(Mx2, Mx2, q).dim_n == 1
    zero = D.PidPrime((), 2)
    assert D.pid_socle_site(D.PidModule.free(2, 2), D.PidModule.free(2, 1), zero).dim_n == 2
    tors = D.pid_socle_site(Mx2, Mx2, zero)
    assert tors.dim_n == 0 and not tors.active


def test_hom_generator_examples():
    gens = D.pid_hom_generators(mod(2, X), mod(2, (0, 0, 1)))
    assert [h.H for h in gens] == [((X,),)]
    assert D.pid_hom_generators(mod(2, X), D.PidModule.free(2, 1)) == []
    F = D.PidModule.free(2, 1)
    assert [h.H for h in D.pid_hom_generators(F, F)] == [(((1,),),)]


def test_hom_generators_span_independent_maps():
    found = 0
    for seed in range(60):
        rng, p, nd, md = cases.module_pair(seed)
        h = cases.random_hom(rng, p, nd, md)
        assert D.check_witness(h, nd[1], md[1])
        assert D.hom_coefficients(h, nd[1], md[1]) is not None
        found += 1
    assert found == 60


def test_injectivity_examples():
    Mx2 = mod(2, (0, 0, 1))
    F = D.PidModule.free(2, 1)
    N = mod(2, X, None)
    assert D.pid_is_injective(D.identity_hom(N), N, N)
    assert D.pid_is_injective_kernel(D.identity_hom(N), N, N)
    x_on_tors = D.scalar_hom(X, Mx2)
    assert not D.pid_is_injective(x_on_tors, Mx2, Mx2)
    assert not D.pid_is_injective_kernel(x_on_tors, Mx2, Mx2)
    x_on_free = D.scalar_hom(X, F)
    assert D.pid_is_injective(x_on_free, F, F) and D.pid_is_injective_kernel(x_on_free, F, F)


def test_injectivity_paths_agree_on_random_homs():
    for seed in range(40):
        rng, p, nd, md = cases.module_pair(seed)
        N, M = nd[1], md[1]
        homs = D.pid_hom_generators(N, M) + [cases.random_hom(rng, p, nd, md) for _ in range(3)]
        for h in homs:
            assert bool(D.pid_is_injective(h, N, M)) == bool(D.pid_is_injective_kernel(h, N, M))


def test_bad_witness_rejected():
    N = mod(2, X)
    with pytest.raises(InputError):
        D.make_pid_hom([[(1,)]], N, D.PidModule.free(2, 1))


def test_sample_with_residues_examples():
    zero, qx = D.PidPrime((), 2), D.PidPrime(X, 2)
    assert D.pid_sample_with_residues((1, 1), zero, 3) == [(1, 1), (0, 1, 1), (0, 0, 1, 1)]
    els = D.pid_sample_with_residues((1,), qx, 2)
    assert sorted(qx.residue(e) for e in els) == [0, 1]
    with pytest.raises(InfeasibleError):
        D.pid_sample_with_residues(X, qx, 1)
    with pytest.raises(InfeasibleError):
        D.pid_sample_with_residues((1,), qx, 3)


def test_normalize_round_trip():
    for seed in range(20):
        rng, p, nd, md = cases.module_pair(seed)
        N = nd[1]
        x = [D.random_poly(rng, p, 3) for _ in range(N.gens)]
        z = N.normalize(x)
        assert N.normalize(N.denormalize(z)) == z


def test_module_round_trip_through_dict():
    for seed in range(10):
        _, p, nd, _ = cases.module_pair(seed)
        N = nd[1]
        raw = N.to_dict()
        pres = [[tuple(c) for c in row] for row in raw["presentation"]]
        assert D.PidModule(p, raw["generators"], pres) == N
