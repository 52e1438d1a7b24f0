"""Dense univariate polynomials over a finite field.

Polynomials are lists of raw field elements, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).  The field argument ``F`` only
needs ``zero``, ``one``, ``add``, ``sub``, ``neg``, ``mul``, ``inv``.
"""

from __future__ import annotations


def trim(F, a):
    a = list(a)
    while a and a[-1] == F.zero:
        a.pop()
    return a


def deg(a) -> int:
    return len(a) - 1


def add(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    for i, c in enumerate(b):
        out[i] = F.add(out[i], c)
    return trim(F, out)


def sub(F, a, b):
    return add(F, a, [F.neg(c) for c in b])


def scale(F, a, c):
    if c == F.zero:
        return []
    return trim(F, [F.mul(c, x) for x in a])


def mul(F, a, b):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x == F.zero:
            continue
        for j, y in enumerate(b):
            if y != F.zero:
                out[i + j] = F.add(out[i + j], F.mul(x, y))
    return trim(F, out)


def divmod_(F, a, b):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lead_inv = F.inv(b[-1])
    if len(a) <= db:
        return [], trim(F, a)
    quo = [F.zero] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c == F.zero:
            continue
        c = F.mul(c, lead_inv)
        quo[i - db] = c
        for j, y in enumerate(b):
            a[i - db + j] = F.sub(a[i - db + j], F.mul(c, y))
    return trim(F, quo), trim(F, a[:db])


def mod(F, a, b):
    return divmod_(F, a, b)[1]


def monic(F, a):
    if not a:
        return []
    return scale(F, a, F.inv(a[-1]))


def gcd(F, a, b):
    a, b = trim(F, a), trim(F, b)
    while b:
        a, b = b, mod(F, a, b)
    return monic(F, a)


def egcd(F, a, b):
    """Return ``(g, s, t)`` with ``s*a + t*b = g`` and ``g`` monic."""
    r0, r1 = trim(F, a), trim(F, b)
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(F, r0, r1)
        r0, r1 = r1, r
        s0, s1 = s1, sub(F, s0, mul(F, q, s1))
        t0, t1 = t1, sub(F, t0, mul(F, q, t1))
    if not r0:
        return [], [], []
    lc = F.inv(r0[-1])
    return scale(F, r0, lc), scale(F, s0, lc), scale(F, t0, lc)


def inv_mod(F, a, m):
    """Inverse of ``a`` modulo ``m``; raises ``ValueError`` if not coprime."""
    g, s, _ = egcd(F, a, m)
    if g != [F.one]:
        raise ValueError("polynomial is not invertible modulo the given modulus")
    return mod(F, s, m)


def powmod(F, a, e: int, m):
    result = [F.one]
    base = mod(F, a, m)
    while e:
        if e & 1:
            result = mod(F, mul(F, result, base), m)
        e >>= 1
        if e:
            base = mod(F, mul(F, base, base), m)
    return result


def evaluate(F, a, x):
    acc = F.zero
    for c in reversed(a):
        acc = F.add(F.mul(acc, x), c)
    return acc


def power(F, a, e: int):
    result = [F.one]
    while e:
        if e & 1:
            result = mul(F, result, a)
        e >>= 1
        if e:
            a = mul(F, a, a)
    return result
