"""Univariate rational polynomials (coefficient tuples, lowest degree first).

Only what the idempotent search needs: minimal polynomials of matrices and a
bounded factorization over Q (square-free part, rational roots, quadratic
factors of quartics).  Higher-degree irreducibility is reported as unknown.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, isqrt, lcm

from .ratlin import Matrix, kernel_basis


def trim(p) -> tuple:
    p = list(p)
    while p and p[-1] == 0:
        p.pop()
    return tuple(Fraction(c) for c in p)


def degree(p) -> int:
    return len(trim(p)) - 1


def monic(p) -> tuple:
    p = trim(p)
    lead = p[-1]
    return tuple(c / lead for c in p)


def mul(p, q) -> tuple:
    if not p or not q:
        return ()
    out = [Fraction(0)] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a:
            for j, b in enumerate(q):
                out[i + j] += a * b
    return trim(out)


def divmod_poly(p, q) -> tuple[tuple, tuple]:
    p, q = list(trim(p)), trim(q)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    dq = len(q) - 1
    if len(p) - 1 < dq:
        return (), trim(p)
    quot = [Fraction(0)] * (len(p) - dq)
    while len(p) - 1 >= dq and p:
        c = p[-1] / q[-1]
        s = len(p) - 1 - dq
        quot[s] = c
        for i, b in enumerate(q):
            p[s + i] -= c * b
        p = list(trim(p))
    return trim(quot), trim(p)


def gcd_poly(p, q) -> tuple:
    p, q = trim(p), trim(q)
    while q:
        p, q = q, divmod_poly(p, q)[1]
    return monic(p) if p else ()


def derivative(p) -> tuple:
    return trim([i * c for i, c in enumerate(p)][1:])


def evaluate(p, x):
    acc = Fraction(0)
    for c in reversed(trim(p)):
        acc = acc * x + c
    return acc


def eval_matrix(p, m: Matrix) -> Matrix:
    n = m.rows
    acc = Matrix(n, n)
    for c in reversed(trim(p)):
        acc = acc @ m + Matrix.identity(n).scale(c)
    return acc


def minimal_polynomial(m: Matrix) -> tuple:
    """Monic minimal polynomial via the first linear dependency among powers."""
    n = m.rows
    powers = [Matrix.identity(n).vec()]
    cur = Matrix.identity(n)
    for k in range(1, n + 1):
        cur = cur @ m
        powers.append(cur.vec())
        cols = Matrix.from_columns(powers, n * n)
        ker = kernel_basis(cols)
        if ker.cols:
            coeffs = ker.column(0)
            return monic(coeffs)
    raise AssertionError("Cayley-Hamilton violated")


# ----------------------------------------------------------------------
# factorization over Q


def _primitive_int(p) -> list[int]:
    p = trim(p)
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    ints = [int(c * den) for c in p]
    g = 0
    for c in ints:
        g = gcd(g, c)
    return [c // g for c in ints] if g > 1 else ints


_DIVISOR_CAP = 10**12


def _divisors(n: int) -> list[int] | None:
    n = abs(n)
    if n == 0:
        return None
    if n > _DIVISOR_CAP:
        return None
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
    return small + large[::-1]


def rational_roots(p) -> list[Fraction] | None:
    """All rational roots, or None when the coefficients are too large to scan."""
    ints = _primitive_int(p)
    roots = []
    while ints and ints[0] == 0:
        roots.append(Fraction(0))
        ints = ints[1:]
    if len(ints) <= 1:
        return roots
    ps = _divisors(ints[0])
    qs = _divisors(ints[-1])
    if ps is None or qs is None:
        return None
    cands = set()
    for a in ps:
        for b in qs:
            cands.add(Fraction(a, b))
            cands.add(Fraction(-a, b))
    for c in sorted(cands):
        if evaluate(ints, c) == 0:
            roots.append(c)
    return roots


def _quadratic_factor_of_quartic(p) -> tuple | None:
    """A monic rational quadratic factor of a root-free quartic, if any."""
    p = monic(p)
    # substitute x = y / L so the quartic becomes monic with integer coefficients
    den = 1
    for c in p:
        den = lcm(den, c.denominator)
    # q(y) = L^4 p(y/L) has coefficient c_k L^(4-k); choose L = den (sufficient)
    L = den
    q = [int(p[k] * L ** (4 - k)) for k in range(5)]
    d, c, b, a = q[0], q[1], q[2], q[3]
    divs = _divisors(d)
    if divs is None:
        return None
    # (y^2 + r y + s)(y^2 + t y + u) with s u = d, r + t = a, rt + s + u = b, ru + st = c
    for s0 in divs:
        for s in (s0, -s0):
            u = d // s
            if s != u:
                num = c - s * a
                den2 = u - s
                if num % den2:
                    continue
                r = num // den2
                t = a - r
                if r * t + s + u == b:
                    return _back_substitute((s, r), L)
            else:
                # r + t = a, r t = b - 2 s, r u + s t = s a = c needed
                if s * a != c:
                    continue
                disc = a * a - 4 * (b - 2 * s)
                if disc < 0:
                    continue
                rt = isqrt(disc)
                if rt * rt != disc or (a + rt) % 2:
                    continue
                r = (a + rt) // 2
                return _back_substitute((s, r), L)
    return ()


def _back_substitute(sr: tuple[int, int], L: int) -> tuple:
    s, r = sr
    # y^2 + r y + s with y = L x, divided by L^2
    return (Fraction(s, L * L), Fraction(r, L), Fraction(1))


def split_polynomial(p) -> tuple[tuple | None, bool]:
    """Find a nontrivial monic factor of p.

    Returns (factor, certain): factor is a proper divisor or None; ``certain``
    says whether "no factor" is a proof of irreducibility.
    """
    p = monic(p)
    n = len(p) - 1
    if n <= 1:
        return None, True
    g = gcd_poly(p, derivative(p))
    if degree(g) > 0:
        return g, True
    roots = rational_roots(p)
    if roots is None:
        return None, False
    if roots:
        return (-roots[0], Fraction(1)), True
    if n <= 3:
        return None, True
    if n == 4:
        f = _quadratic_factor_of_quartic(p)
        if f is None:
            return None, False
        if f:
            return f, True
        return None, True
    return None, False


def irreducible_factors(p) -> list[tuple] | None:
    """Distinct monic irreducible factors of p, or None when some piece could not be decided."""
    p = monic(p)
    if degree(p) <= 0:
        return []
    f, certain = split_polynomial(p)
    if f is None:
        return [p] if certain else None
    q, _ = divmod_poly(p, f)
    out = []
    for part in (f, q):
        sub = irreducible_factors(part)
        if sub is None:
            return None
        out.extend(g for g in sub if g not in out)
    return out
