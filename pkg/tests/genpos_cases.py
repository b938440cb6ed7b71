"""Seeded random instances for the general-position searches.

Every generator returns a problem satisfying the cardinality precondition of
the search it feeds, so the search must succeed.
"""

import random

from injcap.fields import ExtensionField, PrimeField
from injcap.genpos import GridProblem, MultiPoly, RankProblem, RankTarget
from injcap.linalg import Matrix

_FIELDS = {
    2: [PrimeField(2), ExtensionField(2, (1, 1, 1))],
    3: [PrimeField(3), ExtensionField(3, (1, 0, 1))],
    5: [PrimeField(5)],
}


def random_fields(rng, s):
    p = rng.choice([2, 3, 5])
    return [rng.choice(_FIELDS[p]) for _ in range(s)]


def random_grid(rng, fields, sizes):
    """Labels are strings; embeddings are random injective maps into each field."""
    labels, emb = [], []
    for j, n in enumerate(sizes):
        cj = [f"c{j}_{a}" for a in range(n)]
        labels.append(tuple(cj))
        row = []
        for k in fields:
            imgs = rng.sample(list(k.elements()), n)
            row.append(dict(zip(cj, imgs)))
        emb.append(tuple(row))
    return GridProblem(tuple(fields), tuple(labels), tuple(emb))


def _random_element(rng, k, nonzero=False):
    els = list(k.elements())
    if nonzero:
        els = [a for a in els if not k.is_zero(a)]
    return rng.choice(els)


def random_matrix(rng, k, m, n):
    return Matrix(k, [[_random_element(rng, k) for _ in range(n)] for _ in range(m)], n)


def nonvanishing_instance(seed):
    rng = random.Random(seed)
    s, t = rng.randint(1, 3), rng.randint(1, 3)
    fields = random_fields(rng, s)
    cap = min(k.order for k in fields)
    bounds = [[rng.randint(0, 3) for _ in range(t)] for _ in range(s)]
    for j in range(t):
        while sum(b[j] for b in bounds) >= cap:
            i = rng.randrange(s)
            if bounds[i][j]:
                bounds[i][j] -= 1
    sizes = [rng.randint(sum(b[j] for b in bounds) + 1, cap) for j in range(t)]
    gp = random_grid(rng, fields, sizes)
    polys = []
    for i, k in enumerate(fields):
        terms = {}
        for _ in range(rng.randint(1, 4)):
            e = tuple(rng.randint(0, b) for b in bounds[i])
            terms[e] = _random_element(rng, k, nonzero=True)
        polys.append(MultiPoly(i, tuple(bounds[i]), tuple(terms.items())))
    return gp, polys


def _matrix_with_rank_at_least(rng, k, m, n, r):
    while True:
        B = random_matrix(rng, k, m, n)
        if B.rank() >= r:
            return B


def block_instance(seed):
    rng = random.Random(seed)
    s, t = rng.randint(1, 3), rng.randint(1, 3)
    fields = random_fields(rng, s)
    cap = min(k.order for k in fields)
    orientation = rng.choice(["plain", "transposed"])
    targets, widths = [], []
    for i, k in enumerate(fields):
        m = rng.randint(1, 3)
        w = [rng.randint(1, 2) for _ in range(t)]
        r = rng.randint(0, min(m, sum(w)))
        widths.append((m, w, r))
    # shrink targets until every label set can be large enough
    for j in range(t):
        while sum(min(r, w[j]) for _, w, r in widths) >= cap:
            i = rng.randrange(s)
            m, w, r = widths[i]
            if r:
                widths[i] = (m, w, r - 1)
    for i, k in enumerate(fields):
        m, w, r = widths[i]
        whole = _matrix_with_rank_at_least(rng, k, m, sum(w), r)
        blocks, c0 = [], 0
        for wj in w:
            blocks.append(Matrix(k, [row[c0:c0 + wj] for row in whole.rows], wj))
            c0 += wj
        A = random_matrix(rng, k, m, sum(w))
        if orientation == "transposed":
            blocks = [b.T for b in blocks]
            A = A.T
        targets.append(RankTarget(r, A, tuple(blocks)))
    sizes = [rng.randint(sum(min(r, w[j]) for _, w, r in widths) + 1, cap) for j in range(t)]
    return RankProblem(tuple(targets), "block", orientation), random_grid(rng, fields, sizes)


def sum_instance(seed):
    rng = random.Random(seed)
    s, t = rng.randint(1, 3), rng.randint(1, 3)
    fields = random_fields(rng, s)
    cap = min(k.order for k in fields)
    shapes = [(rng.randint(1, 3), rng.randint(1, 3)) for _ in fields]
    rs = [rng.randint(0, min(sh)) for sh in shapes]
    while 1 + sum(rs) > cap:
        i = rng.randrange(s)
        if rs[i]:
            rs[i] -= 1
    targets = []
    for k, (m, n), r in zip(fields, shapes, rs):
        blocks = [random_matrix(rng, k, m, n) for _ in range(t)]
        ji = rng.randrange(t)
        blocks[ji] = _matrix_with_rank_at_least(rng, k, m, n, r)
        targets.append(RankTarget(r, random_matrix(rng, k, m, n), tuple(blocks)))
    sizes = [rng.randint(1 + sum(rs), cap) for _ in range(t)]
    return RankProblem(tuple(targets), "sum"), random_grid(rng, fields, sizes)


def recheck_rank(rp, gp, point):
    """Independent re-evaluation: rebuild each combination entrywise and rank it."""
    out = []
    for i, tgt in enumerate(rp.targets):
        k = gp.fields[i]
        scal = gp.image(point, i)
        if rp.mode == "sum":
            rows = [list(r) for r in tgt.base.rows]
            for c, B in zip(scal, tgt.blocks):
                for a in range(B.nrows):
                    for b in range(B.ncols):
                        rows[a][b] = k.add(rows[a][b], k.mul(c, B.rows[a][b]))
            M = Matrix(k, rows, tgt.base.ncols)
        elif rp.orientation == "plain":
            rows = [[] for _ in range(tgt.base.nrows)]
            for c, B in zip(scal, tgt.blocks):
                for a in range(B.nrows):
                    rows[a].extend(k.mul(c, x) for x in B.rows[a])
            M = Matrix(k, [[k.add(x, y) for x, y in zip(r, br)] for r, br in zip(rows, tgt.base.rows)],
                       tgt.base.ncols)
        else:
            rows = []
            for c, B in zip(scal, tgt.blocks):
                rows.extend([k.mul(c, x) for x in r] for r in B.rows)
            M = Matrix(k, [[k.add(x, y) for x, y in zip(r, br)] for r, br in zip(rows, tgt.base.rows)],
                       tgt.base.ncols)
        out.append(M.rank() >= tgt.r)
    return all(out)
