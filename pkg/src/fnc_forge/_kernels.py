"""Dense polynomial kernels over a field object.

Polynomials are plain lists of packed field integers, lowest degree first,
with no trailing zeros ([] is the zero polynomial).  Every function takes
the field ``F`` as first argument and only uses its scalar/array operations,
so the same code runs over prime fields, extension fields and the
root-search extensions.

``UniPoly`` wraps these; the field constructor uses them directly for the
irreducibility tests, which is why they live below both.
"""

from __future__ import annotations

import numpy as np

from .errors import DivisionByZero

KARATSUBA_CUTOFF = 64
_NUMPY_CUTOFF = 256


def norm(a):
    n = len(a)
    while n and not a[n - 1]:
        n -= 1
    return list(a[:n])


def padd(F, a, b):
    if len(a) < len(b):
        a, b = b, a
    out = list(a)
    add = F.add
    for i, c in enumerate(b):
        if c:
            out[i] = add(out[i], c)
    return norm(out)


def pneg(F, a):
    neg = F.neg
    return [neg(c) for c in a]


def psub(F, a, b):
    out = list(a) + [0] * (len(b) - len(a))
    sub = F.sub
    for i, c in enumerate(b):
        if c:
            out[i] = sub(out[i], c)
    return norm(out)


def pscale(F, a, c):
    if not c:
        return []
    mul = F.mul
    return norm([mul(x, c) for x in a])


def pshift(a, k):
    return [0] * k + list(a) if a else []


def pmul(F, a, b):
    a = norm(a)
    b = norm(b)
    if not a or not b:
        return []
    if len(a) >= KARATSUBA_CUTOFF and len(b) >= KARATSUBA_CUTOFF:
        return _karatsuba(F, a, b)
    return pmul_school(F, a, b)


def pmul_school(F, a, b):
    a = norm(a)
    b = norm(b)
    if not a or not b:
        return []
    na, nb = len(a), len(b)
    if F.prime_like:
        p = F.p
        if na * nb <= _NUMPY_CUTOFF:
            out = [0] * (na + nb - 1)
            for i, x in enumerate(a):
                if x:
                    for j, y in enumerate(b):
                        out[i + j] += x * y
            return norm([c % p for c in out])
        r = np.convolve(np.asarray(a, dtype=np.int64), np.asarray(b, dtype=np.int64))
        return norm((r % p).tolist())
    if na * nb <= _NUMPY_CUTOFF:
        log = F._log
        exp2 = F._exp2
        lb = [log[y] for y in b]
        out = [0] * (na + nb - 1)
        if F.char2:
            for i, x in enumerate(a):
                if x:
                    lx = log[x]
                    for j, ly in enumerate(lb):
                        if ly >= 0:
                            out[i + j] ^= exp2[lx + ly]
        else:
            add = F.add
            for i, x in enumerate(a):
                if x:
                    lx = log[x]
                    for j, ly in enumerate(lb):
                        if ly >= 0:
                            out[i + j] = add(out[i + j], exp2[lx + ly])
        return norm(out)
    return _pmul_numpy(F, a, b)


def _pmul_numpy(F, a, b):
    A = np.asarray(a, dtype=np.int64)
    B = np.asarray(b, dtype=np.int64)
    la = F._np_log[A]
    lb = F._np_log[B]
    idx = la[:, None] + lb[None, :]
    mask = (la[:, None] >= 0) & (lb[None, :] >= 0)
    prod = np.where(mask, F._np_exp2[np.where(mask, idx, 0)], 0).ravel()
    pos = (np.arange(len(a))[:, None] + np.arange(len(b))[None, :]).ravel()
    n_out = len(a) + len(b) - 1
    if F.char2:
        out = np.zeros(n_out, dtype=np.int64)
        np.bitwise_xor.at(out, pos, prod)
        return norm(out.tolist())
    p = F.p
    pw = F._np_pw
    digits = (prod[:, None] // pw) % p
    acc = np.zeros((n_out, len(pw)), dtype=np.int64)
    np.add.at(acc, pos, digits)
    return norm(((acc % p) @ pw).tolist())


def _karatsuba(F, a, b):
    if len(a) < KARATSUBA_CUTOFF or len(b) < KARATSUBA_CUTOFF:
        return pmul_school(F, a, b)
    h = max(len(a), len(b)) // 2
    a0, a1 = norm(a[:h]), norm(a[h:])
    b0, b1 = norm(b[:h]), norm(b[h:])
    z0 = pmul(F, a0, b0)
    z2 = pmul(F, a1, b1)
    z1 = pmul(F, padd(F, a0, a1), padd(F, b0, b1))
    z1 = psub(F, psub(F, z1, z0), z2)
    return padd(F, padd(F, z0, pshift(z1, h)), pshift(z2, 2 * h))


def pdivmod(F, a, b):
    b = norm(b)
    if not b:
        raise DivisionByZero("polynomial division by zero")
    a = norm(a)
    db = len(b) - 1
    if len(a) - 1 < db:
        return [], a
    nq = len(a) - db
    q = [0] * nq
    if F.prime_like:
        p = F.p
        inv = pow(b[-1], p - 2, p)
        for i in range(nq - 1, -1, -1):
            c = a[i + db] % p
            if c:
                c = c * inv % p
                q[i] = c
                for j in range(db):
                    if b[j]:
                        a[i + j] -= c * b[j]
            a[i + db] = 0
        return norm(q), norm([c % p for c in a[:db]])
    log = F._log
    exp2 = F._exp2
    m = F.mult_order
    lb = [log[y] for y in b]
    linv = (m - lb[-1]) % m
    char2 = F.char2
    sub = F.sub
    for i in range(nq - 1, -1, -1):
        c = a[i + db]
        if c:
            lc = (log[c] + linv) % m
            q[i] = exp2[lc]
            for j in range(db):
                ly = lb[j]
                if ly >= 0:
                    t = exp2[lc + ly]
                    if char2:
                        a[i + j] ^= t
                    else:
                        a[i + j] = sub(a[i + j], t)
            a[i + db] = 0
    return norm(q), norm(a[:db])


def pmod(F, a, b):
    return pdivmod(F, a, b)[1]


def pmonic(F, a):
    a = norm(a)
    if not a or a[-1] == 1:
        return a
    return pscale(F, a, F.inv(a[-1]))


def pgcd(F, a, b):
    a = norm(a)
    b = norm(b)
    while b:
        a, b = b, pmod(F, a, b)
    return pmonic(F, a)


def pderiv(F, a):
    p = F.p
    mul = F.mul
    return norm([mul(a[i], i % p) if i % p else 0 for i in range(1, len(a))])


def peval(F, a, x):
    acc = 0
    add, mul = F.add, F.mul
    for c in reversed(a):
        acc = add(mul(acc, x), c)
    return acc


def peval_arr(F, a, X):
    """Evaluate ``a`` at every entry of the integer array ``X``."""
    X = np.asarray(X, dtype=np.int64)
    if not a:
        return np.zeros_like(X)
    acc = np.full(X.shape, a[-1], dtype=np.int64)
    for c in reversed(a[:-1]):
        acc = F.add_arr(F.mul_arr(acc, X), c)
    return acc


def pfrob(F, a, e=1):
    """Return a**(p**e) using that the p-power map is additive."""
    if not a:
        return []
    step = F.p**e
    out = [0] * ((len(a) - 1) * step + 1)
    pw = F.pow
    for i, c in enumerate(a):
        if c:
            out[i * step] = pw(c, step)
    return out


def ppow(F, a, e):
    if e < 0:
        raise ValueError("negative exponent")
    result = [1]
    cur = norm(a)
    p = F.p
    while e:
        e, d = divmod(e, p)
        if d:
            term = [1]
            for _ in range(d):
                term = pmul(F, term, cur)
            result = pmul(F, result, term)
        if e:
            cur = pfrob(F, cur)
    return result


def ppowmod(F, a, e, mod):
    result = [1]
    base = pmod(F, a, mod)
    while e:
        if e & 1:
            result = pmod(F, pmul(F, result, base), mod)
        e >>= 1
        if e:
            base = pmod(F, pmul(F, base, base), mod)
    return pmod(F, result, mod)


def pcompose(F, T, f):
    T = norm(T)
    if not T:
        return []
    out = [T[-1]]
    for c in reversed(T[:-1]):
        out = pmul(F, out, f)
        if c:
            out = padd(F, out, [c])
    return norm(out)


def x_pow_mod(F, e, mod):
    """x**e mod ``mod``; fast for e a power of p."""
    return ppowmod(F, [0, 1], e, mod)


def is_irreducible(F, f):
    """Irreducibility of ``f`` over ``F``: exhaustive root scan, then Ben-Or."""
    f = norm(f)
    d = len(f) - 1
    if d < 1:
        return False
    if d == 1:
        return True
    vals = peval_arr(F, f, np.arange(F.order, dtype=np.int64))
    if not np.all(vals):
        return False
    if d <= 3:
        return True
    h = [0, 1]
    for _ in range(1, d // 2 + 1):
        h = ppowmod(F, h, F.order, f)
        g = pgcd(F, f, psub(F, h, [0, 1]))
        if len(g) > 1:
            return False
    return True
