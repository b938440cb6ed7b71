"""Dense univariate polynomials over a prime field F_p.

A polynomial is a tuple of ints in ``range(p)``, least significant
coefficient first, with no trailing zeros.  The zero polynomial is ``()``.
All functions take the characteristic ``p`` explicitly; nothing here
allocates objects beyond tuples, so the helpers are cheap to call in the
inner loops of the Smith normal form and of factorization.
"""

from __future__ import annotations

import random
from typing import List, Sequence, Tuple

Poly = Tuple[int, ...]

ZERO: Poly = ()
ONE: Poly = (1,)
X: Poly = (0, 1)


def trim(coeffs: Sequence[int], p: int) -> Poly:
    c = [a % p for a in coeffs]
    while c and c[-1] == 0:
        c.pop()
    return tuple(c)


def deg(a: Poly) -> int:
    """Degree, with deg(0) = -1."""
    return len(a) - 1


def const(c: int, p: int) -> Poly:
    c %= p
    return (c,) if c else ()


def monomial(c: int, k: int, p: int) -> Poly:
    c %= p
    return (0,) * k + (c,) if c else ()


def add(a: Poly, b: Poly, p: int) -> Poly:
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def neg(a: Poly, p: int) -> Poly:
    return tuple((-x) % p for x in a)


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, neg(b, p), p)


def scale(a: Poly, c: int, p: int) -> Poly:
    c %= p
    if c == 0:
        return ()
    return tuple((x * c) % p for x in a)


def mul(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim(out, p)


def shift(a: Poly, k: int) -> Poly:
    """Multiply by x^k."""
    return (0,) * k + a if a else ()


def divmod_(a: Poly, b: Poly, p: int) -> Tuple[Poly, Poly]:
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if len(a) < len(b):
        return (), a
    r = list(a)
    inv = pow(b[-1], p - 2, p)
    db = len(b) - 1
    q = [0] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = r[k] % p
        if c == 0:
            continue
        c = (c * inv) % p
        q[k - db] = c
        for j, y in enumerate(b):
            r[k - db + j] -= c * y
    return trim(q, p), trim(r[:db], p)


def div(a: Poly, b: Poly, p: int) -> Poly:
    q, r = divmod_(a, b, p)
    if r:
        raise ValueError("inexact polynomial division")
    return q


def mod(a: Poly, b: Poly, p: int) -> Poly:
    return divmod_(a, b, p)[1]


def divides(a: Poly, b: Poly, p: int) -> bool:
    """True iff a | b (0 divides only 0)."""
    if not a:
        return not b
    return not mod(b, a, p)


def monic(a: Poly, p: int) -> Tuple[int, Poly]:
    """Split ``a`` into (leading coefficient, monic part); (0, ()) for zero."""
    if not a:
        return 0, ()
    lc = a[-1]
    return lc, scale(a, pow(lc, p - 2, p), p)


def gcd(a: Poly, b: Poly, p: int) -> Poly:
    while b:
        a, b = b, mod(a, b, p)
    return monic(a, p)[1]


def xgcd(a: Poly, b: Poly, p: int) -> Tuple[Poly, Poly, Poly]:
    """Return (g, s, t) with g = s*a + t*b monic (or g = 0 when a = b = 0)."""
    r0, r1 = a, b
    s0, s1 = ONE, ()
    t0, t1 = (), ONE
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
        t0, t1 = t1, sub(t0, mul(q, t1, p), p)
    if not r0:
        return (), (), ()
    lc = r0[-1]
    inv = pow(lc, p - 2, p)
    return scale(r0, inv, p), scale(s0, inv, p), scale(t0, inv, p)


def lcm(a: Poly, b: Poly, p: int) -> Poly:
    if not a or not b:
        return ()
    return monic(div(mul(a, b, p), gcd(a, b, p), p), p)[1]


def inverse_mod(a: Poly, m: Poly, p: int) -> Poly:
    g, s, _ = xgcd(a, m, p)
    if g != ONE:
        raise ZeroDivisionError("polynomial not invertible modulo m")
    return mod(s, m, p)


def powmod(a: Poly, e: int, m: Poly, p: int) -> Poly:
    result = mod(ONE, m, p)
    base = mod(a, m, p)
    while e > 0:
        if e & 1:
            result = mod(mul(result, base, p), m, p)
        e >>= 1
        if e:
            base = mod(mul(base, base, p), m, p)
    return result


def power(a: Poly, e: int, p: int) -> Poly:
    result: Poly = ONE
    for _ in range(e):
        result = mul(result, a, p)
    return result


def evaluate(a: Poly, x: int, p: int) -> int:
    acc = 0
    for c in reversed(a):
        acc = (acc * x + c) % p
    return acc


def derivative(a: Poly, p: int) -> Poly:
    return trim([i * c for i, c in enumerate(a)][1:], p)


def valuation(a: Poly, f: Poly, p: int) -> int:
    """Largest v with f^v | a; a must be nonzero and f of positive degree."""
    v = 0
    while True:
        q, r = divmod_(a, f, p)
        if r:
            return v
        a = q
        v += 1


def from_index(n: int, p: int) -> Poly:
    """The n-th polynomial in the canonical enumeration (base-p digits of n)."""
    digits = []
    while n:
        n, r = divmod(n, p)
        digits.append(r)
    return tuple(digits)


def to_str(a: Poly, var: str = "x") -> str:
    if not a:
        return "0"
    terms = []
    for k in range(len(a) - 1, -1, -1):
        c = a[k]
        if not c:
            continue
        if k == 0:
            terms.append(str(c))
        else:
            mono = var if k == 1 else f"{var}^{k}"
            terms.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(terms)


# -- factorization ---------------------------------------------------------

def _pth_root(a: Poly, p: int) -> Poly:
    # over F_p, c^p = c, so the p-th root of sum c_i x^{ip} is sum c_i x^i
    return tuple(a[i] for i in range(0, len(a), p))


def squarefree_decomposition(f: Poly, p: int) -> List[Tuple[Poly, int]]:
    """Monic f = prod g_i^{e_i} with each g_i squarefree and pairwise coprime."""
    out: List[Tuple[Poly, int]] = []
    if deg(f) < 1:
        return out
    df = derivative(f, p)
    if not df:
        return [(g, e * p) for g, e in squarefree_decomposition(_pth_root(f, p), p)]
    c = gcd(f, df, p)
    w = div(f, c, p)
    i = 1
    while w != ONE:
        y = gcd(w, c, p)
        z = div(w, y, p)
        if z != ONE:
            out.append((z, i))
        i += 1
        w = y
        c = div(c, y, p)
    if c != ONE:
        out.extend((g, e * p) for g, e in squarefree_decomposition(_pth_root(c, p), p))
    return out


def _distinct_degree(f: Poly, p: int) -> List[Tuple[Poly, int]]:
    out = []
    h = X
    d = 0
    while deg(f) >= 2 * (d + 1):
        d += 1
        h = powmod(h, p, f, p)
        g = gcd(f, sub(h, X, p), p)
        if g != ONE:
            out.append((g, d))
            f = div(f, g, p)
            h = mod(h, f, p)
    if deg(f) > 0:
        out.append((f, deg(f)))
    return out


def _roots(f: Poly, p: int) -> List[int]:
    return [a for a in range(p) if evaluate(f, a, p) == 0]


def _equal_degree(f: Poly, d: int, p: int, rng: random.Random) -> List[Poly]:
    n = deg(f)
    if n == d:
        return [f]
    if d == 1 and p <= 251 and n <= 2:
        return [(-a % p, 1) for a in _roots(f, p)]
    while True:
        a = trim([rng.randrange(p) for _ in range(n)], p)
        if deg(a) < 1:
            continue
        if p == 2:
            # trace map a + a^2 + ... + a^{2^{d-1}}
            t = a
            s = a
            for _ in range(d - 1):
                s = mod(mul(s, s, p), f, p)
                t = add(t, s, p)
            b = gcd(f, t, p)
        else:
            e = (p ** d - 1) // 2
            b = gcd(f, sub(powmod(a, e, f, p), ONE, p), p)
        if 0 < deg(b) < n:
            return _equal_degree(b, d, p, rng) + _equal_degree(div(f, b, p), d, p, rng)


def factor(f: Poly, p: int, seed: int = 0) -> List[Tuple[Poly, int]]:
    """Factor a nonzero polynomial into monic irreducibles with multiplicities.

    Output is sorted by coefficient tuple; the leading coefficient of ``f`` is
    dropped (it is the unit that completes the product).
    """
    if not f:
        raise ValueError("cannot factor the zero polynomial")
    _, g = monic(f, p)
    rng = random.Random(seed)
    counts: dict = {}
    for part, e in squarefree_decomposition(g, p):
        if deg(part) <= 2:
            roots = _roots(part, p)
            if roots:
                pieces = [(-a % p, 1) for a in roots]
                if len(pieces) == 1 and deg(part) == 2:
                    pieces.append(div(part, pieces[0], p))
            else:
                pieces = [part]
        else:
            pieces = []
            for block, d in _distinct_degree(part, p):
                pieces.extend(_equal_degree(block, d, p, rng))
        for q in pieces:
            counts[q] = counts.get(q, 0) + e
    return sorted(counts.items())


def is_irreducible(f: Poly, p: int) -> bool:
    if deg(f) < 1:
        return False
    if deg(f) == 1:
        return True
    g = monic(f, p)[1]
    h = X
    for _ in range(deg(g) // 2):
        h = powmod(h, p, g, p)
        if gcd(g, sub(h, X, p), p) != ONE:
            return False
    return True
