"""Dense univariate polynomials over F_p as low-to-high coefficient lists.

The zero polynomial is ``[]``.  All helpers return trimmed lists.
"""

from __future__ import annotations


def trim(a: list[int]) -> list[int]:
    while a and a[-1] == 0:
        a.pop()
    return a


def norm(a, p: int) -> list[int]:
    return trim([c % p for c in a])


def deg(a: list[int]) -> int:
    return len(a) - 1


def add(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) + (b[i] if i < len(b) else 0)) % p for i in range(n)])


def sub(a, b, p):
    n = max(len(a), len(b))
    return trim([((a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0)) % p for i in range(n)])


def mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return trim([c % p for c in out])


def scale(a, c, p):
    return trim([x * c % p for x in a])


def inv_mod_p(a: int, p: int) -> int:
    return pow(a % p, p - 2, p)


def divmod_(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    inv = inv_mod_p(b[-1], p)
    q = [0] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        s = len(a) - len(b)
        q[s] = c
        for i, y in enumerate(b):
            a[s + i] = (a[s + i] - c * y) % p
        trim(a)
    return trim(q), a


def rem(a, b, p):
    return divmod_(a, b, p)[1]


def exact_div(a, b, p):
    q, r = divmod_(a, b, p)
    assert not r, "inexact polynomial division"
    return q


def monic(a, p):
    return scale(a, inv_mod_p(a[-1], p), p) if a else []


def gcd(a, b, p):
    a, b = norm(a, p), norm(b, p)
    while b:
        a, b = b, rem(a, b, p)
    return monic(a, p)


def xgcd(a, b, p):
    """(g, s) with g = gcd(a, b) monic and s*a = g mod b."""
    r0, r1 = norm(a, p), norm(b, p)
    s0, s1 = [1], []
    while r1:
        q, r = divmod_(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, p), p)
    if not r0:
        return [], []
    inv = inv_mod_p(r0[-1], p)
    return scale(r0, inv, p), scale(s0, inv, p)


def derivative(a, p):
    return trim([i * c % p for i, c in enumerate(a)][1:])


def squarefree_part(a, p):
    """Product of the distinct monic irreducible factors of ``a``."""
    a = monic(norm(a, p), p)
    if deg(a) <= 0:
        return a
    da = derivative(a, p)
    if not da:
        # a(y) = b(y^p) = b(y)^p over F_p
        return squarefree_part(a[::p], p)
    g = gcd(a, da, p)
    # factors of multiplicity prime to p, each once
    core = exact_div(a, g, p)
    w = g
    while True:
        h = gcd(w, core, p)
        if deg(h) <= 0:
            break
        w = exact_div(w, h, p)
    # w is now a p-th power
    return monic(mul(core, squarefree_part(w, p), p), p) if deg(w) > 0 else core


def det_bareiss(matrix: list[list[list[int]]], p: int) -> list[int]:
    """Determinant of a square matrix with entries in F_p[y] (fraction free)."""
    n = len(matrix)
    if n == 0:
        return [1]
    m = [[norm(e, p) for e in row] for row in matrix]
    sign = 1
    prev = [1]
    for k in range(n - 1):
        piv = next((i for i in range(k, n) if m[i][k]), None)
        if piv is None:
            return []
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = sub(mul(m[i][j], m[k][k], p), mul(m[i][k], m[k][j], p), p)
                m[i][j] = exact_div(num, prev, p)
            m[i][k] = []
        prev = m[k][k]
    return scale(m[n - 1][n - 1], sign % p, p)
