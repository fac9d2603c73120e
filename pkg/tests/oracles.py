"""Independent brute-force oracles for the exact routes under test.

Everything here is plain Fraction arithmetic over math.factorial: no prime
factorization, no RadicalSum, no imports from the package. Values are carried
as (sign, square) pairs so irrational symbols stay exactly comparable.
"""
from fractions import Fraction
from math import factorial


def neg1(k: int) -> int:
    return -1 if k & 1 else 1


def tri_ok(ta: int, tb: int, tc: int) -> bool:
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


def _f(tx: int) -> int:
    # tx is a twice-value that must be even and nonnegative here
    assert tx % 2 == 0 and tx >= 0, tx
    return factorial(tx // 2)


def threejm_sq(tj1, tj2, tj3, tm1, tm2, tm3):
    """(sign, square) of a 3jm symbol, arguments in twice-units."""
    if tm1 + tm2 + tm3 != 0 or not tri_ok(tj1, tj2, tj3):
        return 0, Fraction(0)
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm3) > tj3:
        return 0, Fraction(0)
    if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or (tj3 + tm3) % 2:
        return 0, Fraction(0)
    kmin = max(0, -(tj3 - tj2 + tm1), -(tj3 - tj1 - tm2))
    kmax = min(tj1 + tj2 - tj3, tj1 - tm1, tj2 + tm2)
    s = Fraction(0)
    for tk in range(kmin, kmax + 1, 2):
        den = (_f(tk) * _f(tj1 + tj2 - tj3 - tk) * _f(tj1 - tm1 - tk)
               * _f(tj2 + tm2 - tk) * _f(tj3 - tj2 + tm1 + tk)
               * _f(tj3 - tj1 - tm2 + tk))
        s += Fraction(neg1(tk // 2), den)
    if s == 0:
        return 0, Fraction(0)
    delta = Fraction(_f(tj1 + tj2 - tj3) * _f(tj1 - tj2 + tj3) * _f(-tj1 + tj2 + tj3),
                     _f(tj1 + tj2 + tj3 + 2))
    mpart = (_f(tj1 + tm1) * _f(tj1 - tm1) * _f(tj2 + tm2) * _f(tj2 - tm2)
             * _f(tj3 + tm3) * _f(tj3 - tm3))
    sign = neg1((tj1 - tj2 - tm3) // 2) * (1 if s > 0 else -1)
    return sign, delta * mpart * s * s


def sixj_sq(ta, tb, tc, td, te, tf):
    """(sign, square) of a 6j symbol, arguments in twice-units."""
    for (x, y, z) in ((ta, tb, tc), (ta, te, tf), (td, tb, tf), (td, te, tc)):
        if not tri_ok(x, y, z):
            return 0, Fraction(0)

    def tri(x, y, z):
        return Fraction(_f(x + y - z) * _f(x - y + z) * _f(-x + y + z),
                        _f(x + y + z + 2))

    pref = tri(ta, tb, tc) * tri(ta, te, tf) * tri(td, tb, tf) * tri(td, te, tc)
    kmin = max(ta + tb + tc, ta + te + tf, td + tb + tf, td + te + tc)
    kmax = min(ta + tb + td + te, tb + tc + te + tf, ta + tc + td + tf)
    s = Fraction(0)
    for tk in range(kmin, kmax + 1, 2):
        den = (_f(tk - ta - tb - tc) * _f(tk - ta - te - tf)
               * _f(tk - td - tb - tf) * _f(tk - td - te - tc)
               * _f(ta + tb + td + te - tk) * _f(tb + tc + te + tf - tk)
               * _f(ta + tc + td + tf - tk))
        s += Fraction(neg1(tk // 2) * _f(tk + 2), den)
    if s == 0:
        return 0, Fraction(0)
    return (1 if s > 0 else -1), pref * s * s


def cg_sq(tj1, tm1, tj2, tm2, tj3, tm3):
    """(sign, square) of <j1 m1 j2 m2 | j3 m3> via the 3jm relation."""
    if tm1 + tm2 != tm3:
        return 0, Fraction(0)
    sign, sq = threejm_sq(tj1, tj2, tj3, tm1, tm2, -tm3)
    if sign == 0:
        return 0, Fraction(0)
    return sign * neg1((tj1 - tj2 + tm3) // 2), sq * (tj3 + 1)


def b_sq(n, n1, n2, m, l):
    """(sign, square) of the parabolic->spherical coefficient."""
    q = n1 - n2
    sign, sq = threejm_sq(n - 1, n - 1, 2 * l, m - q, m + q, -2 * m)
    return sign * neg1(n2 + (m - abs(m)) // 2 + l), sq * (2 * l + 1)


def beta_sq(n, l, m):
    num = (n * n - l * l) * (l * l - m * m)
    if num <= 0:
        return Fraction(0)
    return Fraction(num, 4 * l * l - 1)


def pbar_double(n, l, lp):
    """P-bar by the C^2 double sum, exact."""
    total = Fraction(0)
    for m in range(-(n - 1), n):
        upper = n - abs(m) - 1
        for n1 in range(upper + 1):
            q = 2 * n1 - upper
            _, a = threejm_sq(n - 1, n - 1, 2 * l, m - q, m + q, -2 * m)
            if a == 0:
                continue
            _, b = threejm_sq(n - 1, n - 1, 2 * lp, m - q, m + q, -2 * m)
            total += a * b
    return (2 * lp + 1) * total


def pair_value_sq(pairs):
    """(sign, square) of a product of (sign, square) factors."""
    sign = 1
    sq = Fraction(1)
    for s, q in pairs:
        if s == 0 or q == 0:
            return 0, Fraction(0)
        sign *= s
        sq *= q
    return sign, sq
