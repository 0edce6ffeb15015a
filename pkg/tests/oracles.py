"""Deliberately naive reference implementations used only by the tests.

Nothing here touches the log tables or the kernels in the package: elements
of prime-based extensions are coordinate vectors over F_p multiplied by hand
and reduced by the modulus.
"""

import itertools


def vec_mul(p, modulus, a, b):
    """Product of coordinate vectors a, b modulo a monic modulus over F_p."""
    k = len(modulus) - 1
    prod = [0] * (2 * k - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            prod[i + j] = (prod[i + j] + x * y) % p
    for d in range(len(prod) - 1, k - 1, -1):
        c = prod[d]
        if c:
            for t in range(k + 1):
                prod[d - k + t] = (prod[d - k + t] - c * modulus[t]) % p
    return prod[:k]


def to_vec(a, p, k):
    return [(a // p**i) % p for i in range(k)]


def from_vec(v, p):
    return sum(c * p**i for i, c in enumerate(v))


def poly_mod_p(a, m, p):
    """Remainder of integer coefficient lists a mod monic m over F_p."""
    a = [c % p for c in a]
    dm = len(m) - 1
    for d in range(len(a) - 1, dm - 1, -1):
        c = a[d]
        if c:
            for t in range(dm + 1):
                a[d - dm + t] = (a[d - dm + t] - c * m[t]) % p
    a = a[:dm]
    while a and not a[-1]:
        a.pop()
    return a


def is_irreducible_trial(p, f):
    """Trial division by every monic polynomial of degree <= deg f / 2."""
    n = len(f) - 1
    for d in range(1, n // 2 + 1):
        for tail in itertools.product(range(p), repeat=d):
            g = list(tail) + [1]
            if not poly_mod_p(list(f), g, p):
                return False
    return True


def eval_naive(F, coeffs, a):
    acc = 0
    for i, c in enumerate(coeffs):
        t = c
        for _ in range(i):
            t = F.mul_reference(t, a)
        acc = F.add(acc, t)
    return acc


def g_adic_fnc(f, g):
    """Nonclassicality of f(x) = g(y) by a univariate route.

    Write (y^q - y) g'(y) in base g: it must be C(g) for some C with
    constant digits, and then (x^q - x) f'(x) must equal C(f).
    """
    from fnc_forge.poly import UniPoly, frobenius_poly

    F = f.field
    B = frobenius_poly(F) * g.derivative()
    digits = []
    while not B.is_zero():
        B, r = divmod(B, g)
        if not r.is_constant():
            return False
        digits.append(r.coeff(0))
    A = frobenius_poly(F) * f.derivative()
    acc = UniPoly.zero(F)
    for c in reversed(digits):
        acc = acc * f + UniPoly(F, [c])
    return acc == A
