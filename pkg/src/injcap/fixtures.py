"""Named rings and module families used by the test sweeps and the examples.

The module family for a ring is: the zero module, every cyclic module R/I
and its F_p-dual, and direct sums of these, up to a total dimension bound.
Direct sums are taken over multisets of building blocks, so reordering the
summands does not produce a second copy.
"""

from __future__ import annotations

import itertools
import random
from typing import Dict, List, Sequence, Tuple

from . import artinian as A
from .linalg import span_basis


def _field(p: int) -> A.StructAlgebra:
    return A.algebra_from_polynomial(p, [0, 1])


def _local_two_variable(p: int) -> A.StructAlgebra:
    """F_p[x, y]/(x, y)^2 with basis 1, x, y."""
    d = 3
    consts = [[[0] * d for _ in range(d)] for _ in range(d)]
    for i in range(d):
        consts[0][i][i] = 1
        consts[i][0][i] = 1
    return A.StructAlgebra(p, ["1", "x", "y"], consts, [1, 0, 0])


def fixture_algebras() -> Dict[str, A.StructAlgebra]:
    """Twelve algebras of dimension at most 4 over F_2 and F_3."""
    poly = A.algebra_from_polynomial
    return {
        "F2": _field(2),
        "F3": _field(3),
        "F2xF2": A.product_algebra(_field(2), _field(2)),
        "F2[x]/(x^2)": poly(2, [0, 0, 1]),
        "F4": poly(2, [1, 1, 1]),
        "F3[x]/(x^2)": poly(3, [0, 0, 1]),
        "F3[x]/(x^2-1)": poly(3, [2, 0, 1]),
        "F9": poly(3, [1, 0, 1]),
        "F2[x]/(x^3)": poly(2, [0, 0, 0, 1]),
        "F2[x,y]/(x,y)^2": _local_two_variable(2),
        "F2[x]/(x^2)xF2": A.product_algebra(poly(2, [0, 0, 1]), _field(2)),
        "F2[x]/(x^2)xF4": A.product_algebra(poly(2, [0, 0, 1]), poly(2, [1, 1, 1])),
    }


def all_ideals(R: A.StructAlgebra) -> List[List[tuple]]:
    """Every ideal generated by at most two elements (all ideals for the fixture rings)."""
    elems = list(itertools.product(range(R.p), repeat=R.dim))
    principal = {}
    for r in elems:
        key = tuple(A.ideal_closure(R, [r]))
        principal.setdefault(key, list(key))
    ideals = dict(principal)
    keys = list(principal)
    for a, b in itertools.combinations(keys, 2):
        key = tuple(span_basis(R.field, list(a) + list(b), R.dim))
        ideals.setdefault(key, list(key))
    return sorted(ideals.values(), key=lambda b: (len(b), b))


def building_blocks(R: A.StructAlgebra, max_dim: int = 3) -> List[Tuple[str, A.FpModule]]:
    """Cyclic modules R/I of dimension 1..max_dim and their duals, without repeats."""
    out, seen = [], set()
    for I in all_ideals(R):
        q = R.dim - len(I)
        if not 1 <= q <= max_dim:
            continue
        M = A.cyclic_module(R, I)
        for name, mod in ((f"R/I{len(out)}", M), (f"(R/I{len(out)})^*", A.dual_module(M))):
            if mod not in seen:
                seen.add(mod)
                mod.name = name
                out.append((name, mod))
    return out


def module_family(R: A.StructAlgebra, max_dim: int = 3) -> List[A.FpModule]:
    blocks = building_blocks(R, max_dim)
    mods = [A.zero_module(R)]
    for k in range(1, max_dim + 1):
        for combo in itertools.combinations_with_replacement(range(len(blocks)), k):
            if sum(blocks[i][1].dim for i in combo) > max_dim:
                continue
            if k == 1:
                mods.append(blocks[combo[0]][1])
            else:
                M = A.direct_sum(*[blocks[i][1] for i in combo])
                M.name = " + ".join(blocks[i][0] for i in combo)
                mods.append(M)
    return mods


def random_submodules(N: A.FpModule, M: A.FpModule, count: int, seed: int) -> List[List]:
    """``count`` seeded random submodules of Hom(N, M) given by F_p-bases, duplicates removed."""
    H = A.hom_basis(N, M)
    rng = random.Random(seed)
    p = N.algebra.p
    out, seen = [], set()
    for _ in range(count):
        k = rng.randint(0, max(H.dim, 1))
        gens = [H.element([rng.randrange(p) for _ in range(H.dim)]) for _ in range(k)] if H.dim else []
        basis = A.hom_submodule(N, M, gens) if gens else []
        key = tuple(b.flat() for b in basis)
        if key not in seen:
            seen.add(key)
            out.append(basis)
    return out
