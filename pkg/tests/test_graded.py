import itertools
import random

import pytest

from injcap import artinian as A
from injcap import graded as G
from injcap import pid as D
from injcap import poly as P
from injcap.errors import HypothesisError, InputError
from injcap.fixtures import building_blocks, fixture_algebras
from injcap.linalg import Matrix, span_basis

ALG = fixture_algebras()
PID2, PID3 = G.GradedAlgebra.polynomial(2), G.GradedAlgebra.polynomial(3)


def gpid(ring, *summands):
    return G.GradedModule.polynomial(ring, list(summands))


def random_graded_artinian(rng, name, pieces=2):
    R = ALG[name]
    ring = G.GradedAlgebra.artinian(R)
    blocks = [m for _, m in building_blocks(R, 2)]
    mods = []
    for _ in range(rng.randint(1, pieces)):
        b = rng.choice(blocks)
        mods.append(G.GradedModule.artinian(ring, b, (rng.randint(-1, 1),) * b.dim))
    return G.graded_direct_sum(*mods)


def random_graded_pid(rng, ring, pieces=2, free=True):
    summands = []
    for _ in range(rng.randint(1, pieces)):
        e = None if free and rng.random() < 0.3 else rng.randint(1, 3)
        summands.append((e, rng.randint(-2, 2)))
    return gpid(ring, *summands)


def all_component_elements(N, M, i):
    basis = G.graded_hom_component(N, M, i)
    for coeffs in itertools.product(range(N.ring.p), repeat=len(basis)):
        if any(coeffs):
            yield G._combine(N, M, basis, coeffs)


# -- Hom components ------------------------------------------------------------------------

def test_identity_in_degree_zero():
    N, _ = G.counterexample_fixture()
    ident = Matrix.identity(N.module.algebra.field, N.module.dim)
    assert G.hom_degree(ident, N, N) == 0
    Np = gpid(PID2, (2, 0), (None, 1))
    assert G.hom_degree(D.identity_hom(Np.module), Np, Np) == 0


def test_multiplication_by_x_has_degree_one():
    Np = gpid(PID2, (3, 0), (None, -1))
    assert G.hom_degree(D.scalar_hom((0, 1), Np.module), Np, Np) == 1


def test_counterexample_components():
    N, M = G.counterexample_fixture()
    dims = {i: len(G.graded_hom_component(N, M, i)) for i in range(-2, 4)}
    assert dims == {-2: 0, -1: 0, 0: 1, 1: 1, 2: 0, 3: 0}
    assert G.hom_degrees(N, M) == [0, 1]


def test_components_span_ungraded_hom_artinian():
    rng = random.Random(1)
    for name in ["F2xF2", "F2[x]/(x^2)", "F3[x]/(x^2-1)", "F2[x]/(x^2)xF2"]:
        for _ in range(5):
            N, M = random_graded_artinian(rng, name), random_graded_artinian(rng, name)
            flats = []
            for i in range(-3, 4):
                flats += [h.flat() for h in G.graded_hom_component(N, M, i)]
            full = A.hom_basis(N.module, M.module)
            assert len(span_basis(N.module.algebra.field, flats, M.module.dim * N.module.dim)) == len(flats)
            assert len(flats) == full.dim


def test_components_count_torsion_pid():
    rng = random.Random(2)
    for _ in range(20):
        N = random_graded_pid(rng, PID3, free=False)
        M = random_graded_pid(rng, PID3, free=False)
        total = sum(len(G.graded_hom_component(N, M, i)) for i in range(-10, 11))
        expect = sum(min(a, b) for a, _ in N.summands for b, _ in M.summands)
        assert total == expect


def test_shift_identity():
    rng = random.Random(3)
    for _ in range(10):
        M = random_graded_artinian(rng, "F2xF2", 3)
        Mp = random_graded_pid(rng, PID2, 3)
        for i, j in itertools.product(range(-2, 3), repeat=2):
            assert G.shift(M, i).component(j) == M.component(i + j)
            assert G.shift(Mp, i).component(j) == Mp.component(i + j)


# -- sites and uniformization ------------------------------------------------------------------

def test_counterexample_site_ranks():
    N, M = G.counterexample_fixture()
    sites = G.graded_sites(N, M)
    assert [(s.key, s.rank, s.residue_size) for s in sites] == [("m0", 1, 2), ("m1", 1, 2)]


def test_pid_sites_share_fiber():
    N = gpid(PID2, (1, -2), (None, 0))
    sites = G.graded_sites(N, N)
    assert [(s.key, s.rank, s.fiber) for s in sites] == [("(x)", 1, "(0)"), ("(0)", 1, "(0)")]
    assert sites[0].socle_degrees == [2]


def test_zero_module_has_no_sites():
    Z = gpid(PID2)
    assert G.graded_sites(Z, gpid(PID2, (None, 0))) == []


def test_non_graded_prime_rejected():
    N = gpid(PID2, (None, 0))
    with pytest.raises(InputError):
        G.homogeneous_site("(x+1)", N, N)


def test_uniformize_noop_and_raise():
    N = gpid(PID2, (None, 0))
    sites = G.graded_sites(N, N)
    ident = D.identity_hom(N.module)
    same = G.uniformize_degrees({"(0)": (0, ident)}, 0, N, N, sites)
    assert same.multipliers == {"(0)": [1]}
    up = G.uniformize_degrees({"(0)": (0, ident)}, 1, N, N, sites)
    assert up.multipliers == {"(0)": [0, 1]}
    h = up.maps["(0)"]
    assert G.hom_degree(h, N, N) == 1 and G.locally_injective(sites[0], h)


def test_counterexample_uniformity_fails():
    N, M = G.counterexample_fixture()
    sites = G.graded_sites(N, M)
    table = {s.key: sorted(G.injective_degrees(s, N, M)) for s in sites}
    assert table == {"m0": [1], "m1": [0]}
    local = {s.key: (table[s.key][0], G.injective_degrees(s, N, M)[table[s.key][0]]) for s in sites}
    with pytest.raises(HypothesisError, match="fails at m0"):
        G.uniformize_degrees(local, 0, N, M, sites)
    with pytest.raises(HypothesisError, match="degree uniformity fails"):
        G.choose_uniform_degree(N, M, sites)
    for i in (0, 1):
        assert not any(G.graded_is_injective(h, N, M) for h in all_component_elements(N, M, i))


# -- synthesis -------------------------------------------------------------------------------

def test_single_free_prime_succeeds():
    N = gpid(PID2, (None, 0))
    res = G.synthesize_graded(N, N, 0)
    assert G.graded_is_injective(res.hom, N, N)
    assert D.pid_is_injective_kernel(res.hom, N.module, N.module)


def test_shared_fiber_hypothesis_fails_over_f2():
    N = gpid(PID2, (1, -2), (None, 0))
    with pytest.raises(HypothesisError, match="near miss"):
        G.check_hypothesis(G.graded_sites(N, N))


def test_shared_fiber_over_f3():
    N = gpid(PID3, (1, 0), (None, 0))
    M = gpid(PID3, (2, 1), (None, 0))
    uni, _ = G.choose_uniform_degree(N, M, G.graded_sites(N, M))
    res = G.synthesize_graded(N, M, uni.degree)
    assert res.degree == 0
    assert D.pid_is_injective_kernel(res.hom, N.module, M.module)
    # degree 0 forces the x-multiple on the torsion part
    assert [list(r) for r in res.hom.H] == [[(0, 1), ()], [(), (1,)]]


def test_artinian_identity_synthesis():
    R = ALG["F2xF2"]
    ring = G.GradedAlgebra.artinian(R)
    N = G.GradedModule.artinian(ring, A.regular_module(R), (0, 0))
    res = G.synthesize_graded(N, N, 0)
    assert res.hom.rank() == 2 and res.certificates == {"m0": 1, "m1": 1}


def _positive_cases(seed):
    rng = random.Random(seed)
    if rng.random() < 0.5:
        name = rng.choice(["F3", "F9", "F4", "F3[x]/(x^2-1)", "F2[x]/(x^2)xF4"])
        N = random_graded_artinian(rng, name)
        extra = random_graded_artinian(rng, name)
    else:
        ring = rng.choice([PID3, G.GradedAlgebra.polynomial(5)])
        N = random_graded_pid(rng, ring)
        extra = random_graded_pid(rng, ring)
    M = G.graded_direct_sum(N, extra)
    return N, M


def test_graded_socle_reduction_and_ungraded_consistency():
    checked = 0
    for seed in range(40):
        N, M = _positive_cases(seed)
        sites = G.graded_sites(N, M)
        try:
            G.check_hypothesis(sites)
            uni, _ = G.choose_uniform_degree(N, M, sites)
        except HypothesisError:
            continue
        res = G.synthesize_graded(N, M, uni.degree)
        h = res.hom
        direct = G.graded_is_injective(h, N, M)
        local = all(G.locally_injective(s, h) for s in sites)
        assert direct and local
        if N.is_pid:
            assert D.pid_is_injective(h, N.module, M.module)
        else:
            assert A.is_injective(h, N.module, M.module)
        checked += 1
    assert checked >= 20


def test_graded_socle_reduction_on_all_small_homs():
    rng = random.Random(9)
    for _ in range(15):
        N = random_graded_artinian(rng, "F2xF2")
        M = random_graded_artinian(rng, "F2xF2", 3)
        sites = G.graded_sites(N, M)
        for i in G.hom_degrees(N, M):
            for h in all_component_elements(N, M, i):
                assert G.graded_is_injective(h, N, M) == all(G.locally_injective(s, h) for s in sites)


def test_large_component_uses_exact_grid():
    r5 = G.GradedAlgebra.polynomial(5)
    N = gpid(r5, (1, 0), (2, -1), (None, 0))
    M = gpid(r5, (2, 1), (3, 0), (None, 0), (None, 2))
    sites = G.graded_sites(N, M)
    x_site = next(s for s in sites if s.key == "(x)")
    basis = G.graded_hom_component(N, M, 0)
    assert 5 ** len(basis) > 4096
    assert not any(G.locally_injective(x_site, b) for b in basis)
    h = G.find_local_injection(x_site, N, M, basis)
    assert h is not None and G.locally_injective(x_site, h)
