"""Exact Wigner 3jm and 6j symbols, Clebsch-Gordan conversion, Regge transform.

Evaluation uses the Racah single-sum formulas: the square-root prefactor is
assembled from prime-factored factorials (so radicands never need factoring)
and the alternating sum is accumulated as an exact Fraction. Every value has
the shape (rational) * sqrt(rational) and is returned as a one-term RadicalSum.

The memo caches key on symmetry-reduced arguments; cached entries are
immutable and recomputation is idempotent, so racing threads at worst repeat
work.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, ReggeInadmissibleError
from .halfint import HalfInt, twice
from .pfrational import PFRational, default_table
from .radical import RadicalSum, SqrtRational


def _neg1(k: int) -> int:
    """(-1)**k for any integer k, staying in int arithmetic."""
    return -1 if k & 1 else 1


def triangle_ok(a, b, c) -> bool:
    """Triangle rule |a-b| <= c <= a+b with integer perimeter."""
    ta, tb, tc = twice(a), twice(b), twice(c)
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


@dataclass(frozen=True)
class ThreeJmArgs:
    """Arguments of a 3jm symbol; j-valued entries with matching m parities."""

    j1: HalfInt
    j2: HalfInt
    j3: HalfInt
    m1: HalfInt
    m2: HalfInt
    m3: HalfInt

    def __post_init__(self):
        for name in ("j1", "j2", "j3", "m1", "m2", "m3"):
            object.__setattr__(self, name, HalfInt.from_value(getattr(self, name)))
        for j, m in ((self.j1, self.m1), (self.j2, self.m2), (self.j3, self.m3)):
            if j.twice < 0:
                raise DomainError(f"j = {j} must be nonnegative")
            if abs(m.twice) > j.twice:
                raise DomainError(f"|m| = {abs(m)} exceeds j = {j}")
            if (j.twice + m.twice) % 2:
                raise DomainError(f"m = {m} has wrong parity for j = {j}")

    def twices(self) -> tuple[int, int, int, int, int, int]:
        return (self.j1.twice, self.j2.twice, self.j3.twice,
                self.m1.twice, self.m2.twice, self.m3.twice)


@dataclass(frozen=True)
class SixJArgs:
    """The six entries of a 6j symbol in {j1 j2 j3; j4 j5 j6} layout."""

    j1: HalfInt
    j2: HalfInt
    j3: HalfInt
    j4: HalfInt
    j5: HalfInt
    j6: HalfInt

    def __post_init__(self):
        for name in ("j1", "j2", "j3", "j4", "j5", "j6"):
            j = HalfInt.from_value(getattr(self, name))
            object.__setattr__(self, name, j)
            if j.twice < 0:
                raise DomainError(f"j = {j} must be nonnegative")

    def twices(self) -> tuple[int, int, int, int, int, int]:
        return (self.j1.twice, self.j2.twice, self.j3.twice,
                self.j4.twice, self.j5.twice, self.j6.twice)


# -- 3jm ---------------------------------------------------------------

_CACHE_3JM: dict[tuple[int, ...], RadicalSum] = {}
_CACHE_6J: dict[tuple[int, ...], RadicalSum] = {}


def clear_caches() -> None:
    _CACHE_3JM.clear()
    _CACHE_6J.clear()


def _tri_ok_t(ta: int, tb: int, tc: int) -> bool:
    return abs(ta - tb) <= tc <= ta + tb and (ta + tb + tc) % 2 == 0


def _canonical_3jm(t: tuple[int, ...]) -> tuple[tuple[int, ...], int]:
    """Smallest column-permutation / m-negation image and the phase to undo it."""
    tj1, tj2, tj3, tm1, tm2, tm3 = t
    big_j = (tj1 + tj2 + tj3) // 2  # integer whenever the symbol is nonzero
    cols = ((tj1, tm1), (tj2, tm2), (tj3, tm3))
    best = None
    best_phase = 1
    for perm, parity in (((0, 1, 2), 0), ((1, 2, 0), 0), ((2, 0, 1), 0),
                         ((0, 2, 1), 1), ((1, 0, 2), 1), ((2, 1, 0), 1)):
        c = tuple(cols[i] for i in perm)
        for flip in (1, -1):
            cand = (c[0][0], c[1][0], c[2][0],
                    flip * c[0][1], flip * c[1][1], flip * c[2][1])
            exponent = (parity + (0 if flip == 1 else 1)) * big_j
            if best is None or cand < best:
                best = cand
                best_phase = _neg1(exponent)
    return best, best_phase


def _threejm_twice(tj1: int, tj2: int, tj3: int,
                   tm1: int, tm2: int, tm3: int) -> RadicalSum:
    """Lenient 3jm on twice-valued args: any selection-rule failure gives 0."""
    if tm1 + tm2 + tm3 != 0:
        return RadicalSum.zero()
    if not _tri_ok_t(tj1, tj2, tj3):
        return RadicalSum.zero()
    if abs(tm1) > tj1 or abs(tm2) > tj2 or abs(tm3) > tj3:
        return RadicalSum.zero()
    if (tj1 + tm1) % 2 or (tj2 + tm2) % 2 or (tj3 + tm3) % 2:
        return RadicalSum.zero()

    key = (tj1, tj2, tj3, tm1, tm2, tm3)
    canon, phase = _canonical_3jm(key)
    cached = _CACHE_3JM.get(canon)
    if cached is None:
        cached = _racah_3jm(*canon)
        _CACHE_3JM[canon] = cached
    return cached * phase if phase == -1 else cached


def _racah_3jm(tj1: int, tj2: int, tj3: int,
               tm1: int, tm2: int, tm3: int) -> RadicalSum:
    table = default_table()
    fi = table.factorial_int

    kmin = max(0, -(tj3 - tj2 + tm1), -(tj3 - tj1 - tm2))
    kmax = min(tj1 + tj2 - tj3, tj1 - tm1, tj2 + tm2)
    total = Fraction(0)
    for tk in range(kmin, kmax + 1, 2):
        den = (fi(tk // 2)
               * fi((tj1 + tj2 - tj3 - tk) // 2)
               * fi((tj1 - tm1 - tk) // 2)
               * fi((tj2 + tm2 - tk) // 2)
               * fi((tj3 - tj2 + tm1 + tk) // 2)
               * fi((tj3 - tj1 - tm2 + tk) // 2))
        total += Fraction(_neg1(tk // 2), den)
    if total == 0:
        return RadicalSum.zero()

    fp = table.factorial
    radicand = (fp((tj1 + tj2 - tj3) // 2)
                * fp((tj1 - tj2 + tj3) // 2)
                * fp((-tj1 + tj2 + tj3) // 2)
                / fp((tj1 + tj2 + tj3 + 2) // 2)
                * fp((tj1 + tm1) // 2) * fp((tj1 - tm1) // 2)
                * fp((tj2 + tm2) // 2) * fp((tj2 - tm2) // 2)
                * fp((tj3 + tm3) // 2) * fp((tj3 - tm3) // 2))
    phase = _neg1((tj1 - tj2 - tm3) // 2)
    root = SqrtRational(1, radicand).to_radical_sum()
    return root * (total * phase)


def wigner_3jm(*args) -> RadicalSum:
    """Exact 3jm symbol; accepts a ThreeJmArgs or six half-integer values."""
    if len(args) == 1 and isinstance(args[0], ThreeJmArgs):
        return _threejm_twice(*args[0].twices())
    if len(args) != 6:
        raise TypeError("wigner_3jm takes a ThreeJmArgs or six arguments")
    return _threejm_twice(*(twice(a) for a in args))


def clebsch_gordan(j1, m1, j2, m2, j3, m3) -> RadicalSum:
    """<j1 m1 j2 m2 | j3 m3> = (-1)^(j1-j2+m3) sqrt(2 j3 + 1) 3jm(.., -m3)."""
    tj1, tm1 = twice(j1), twice(m1)
    tj2, tm2 = twice(j2), twice(m2)
    tj3, tm3 = twice(j3), twice(m3)
    if tm1 + tm2 != tm3:
        return RadicalSum.zero()
    sym = _threejm_twice(tj1, tj2, tj3, tm1, tm2, -tm3)
    if sym.is_zero:
        return sym
    phase = _neg1((tj1 - tj2 + tm3) // 2)
    root = SqrtRational(1, PFRational.from_int(tj3 + 1)).to_radical_sum()
    return sym * root * phase


def wigner_6j(*args) -> RadicalSum:
    """Exact 6j symbol; accepts a SixJArgs or six half-integer values."""
    if len(args) == 1 and isinstance(args[0], SixJArgs):
        t = args[0].twices()
    elif len(args) == 6:
        t = tuple(twice(a) for a in args)
    else:
        raise TypeError("wigner_6j takes a SixJArgs or six arguments")
    return _sixj_twice(*t)


def _canonical_6j(t: tuple[int, ...]) -> tuple[int, ...]:
    """Smallest image under column permutations and pairwise row flips."""
    a, b, c, d, e, f = t
    cols = ((a, d), (b, e), (c, f))
    best = None
    for p in ((0, 1, 2), (0, 2, 1), (1, 0, 2), (1, 2, 0), (2, 0, 1), (2, 1, 0)):
        cp = [cols[i] for i in p]
        # flipping upper/lower in exactly two columns is a symmetry
        for flips in ((0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)):
            cand = []
            for (up, lo), fl in zip(cp, flips):
                cand.extend((lo, up) if fl else (up, lo))
            cand = (cand[0], cand[2], cand[4], cand[1], cand[3], cand[5])
            if best is None or cand < best:
                best = cand
    return best


def _sixj_twice(ta: int, tb: int, tc: int, td: int, te: int, tf: int) -> RadicalSum:
    for (x, y, z) in ((ta, tb, tc), (ta, te, tf), (td, tb, tf), (td, te, tc)):
        if not _tri_ok_t(x, y, z):
            return RadicalSum.zero()
    key = _canonical_6j((ta, tb, tc, td, te, tf))
    cached = _CACHE_6J.get(key)
    if cached is None:
        cached = _racah_6j(*key)
        _CACHE_6J[key] = cached
    return cached


def _racah_6j(ta: int, tb: int, tc: int, td: int, te: int, tf: int) -> RadicalSum:
    table = default_table()
    fi = table.factorial_int
    fp = table.factorial

    def tri_pf(x: int, y: int, z: int) -> PFRational:
        return (fp((x + y - z) // 2) * fp((x - y + z) // 2)
                * fp((-x + y + z) // 2) / fp((x + y + z + 2) // 2))

    radicand = (tri_pf(ta, tb, tc) * tri_pf(ta, te, tf)
                * tri_pf(td, tb, tf) * tri_pf(td, te, tc))
    kmin = max(ta + tb + tc, ta + te + tf, td + tb + tf, td + te + tc)
    kmax = min(ta + tb + td + te, tb + tc + te + tf, ta + tc + td + tf)
    total = Fraction(0)
    for tk in range(kmin, kmax + 1, 2):
        num = fi(tk // 2 + 1)
        den = (fi((tk - ta - tb - tc) // 2) * fi((tk - ta - te - tf) // 2)
               * fi((tk - td - tb - tf) // 2) * fi((tk - td - te - tc) // 2)
               * fi((ta + tb + td + te - tk) // 2)
               * fi((tb + tc + te + tf - tk) // 2)
               * fi((ta + tc + td + tf - tk) // 2))
        total += Fraction(_neg1(tk // 2) * num, den)
    if total == 0:
        return RadicalSum.zero()
    return SqrtRational(1, radicand).to_radical_sum() * total


def regge_transform(args: ThreeJmArgs) -> ThreeJmArgs:
    """The Regge symmetry map fixing column 1.

    (j1 j2 j3; m1 m2 m3) -> (j1, (j2+j3+m1)/2, (j2+j3-m1)/2;
                             j2-j3, (j3-j2+m1)/2 + m2, (j3-j2+m1)/2 + m3)
    The transformed symbol has the same exact value. Arguments whose image is
    not a valid symbol (negative j or broken parity) raise
    ReggeInadmissibleError.
    """
    tj1, tj2, tj3, tm1, tm2, tm3 = args.twices()
    if (tj2 + tj3 + tm1) % 2:
        raise ReggeInadmissibleError(
            "transform needs j2 + j3 + m1 to be an integer")
    tj2p = (tj2 + tj3 + tm1) // 2
    tj3p = (tj2 + tj3 - tm1) // 2
    shift = (tj3 - tj2 + tm1) // 2
    new = (tj1, tj2p, tj3p, tj2 - tj3, shift + tm2, shift + tm3)
    if tj2p < 0 or tj3p < 0:
        raise ReggeInadmissibleError(f"transform of {args} has negative j")
    try:
        return ThreeJmArgs(*(HalfInt(t) for t in new))
    except DomainError as exc:
        raise ReggeInadmissibleError(str(exc)) from exc
