"""Field-averaged angular-momentum transfer within an n-manifold.

The evolution operator e^(i chi A_z) is never exponentiated numerically:
within a manifold its matrix elements come spectrally from the exact basis
change and the integer A_z eigenvalues q. The time-averaged table P-bar is
fully rational; the oscillatory P at given chi is the module's only floating
output.
"""
from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import cos, sin

from .basis import b_matrix, q_values
from .errors import DomainError, InternalConsistencyError
from .radical import RadicalSum, render_exact
from .wigner import _sixj_twice, _threejm_twice

P_AGREEMENT_TOL = 1e-12


def c_coefficient(n: int, q: int, l: int, m: int) -> RadicalSum:
    """C(q l m) = 3jm((n-1)/2 (n-1)/2 l; (m-q)/2 (m+q)/2 -m).

    Out-of-range arguments fall under the 3jm selection rules and give zero.
    """
    return _threejm_twice(n - 1, n - 1, 2 * l, m - q, m + q, -2 * m)


@lru_cache(maxsize=None)
def _c_squared(n: int, q: int, l: int, m: int) -> Fraction:
    value = c_coefficient(n, q, l, m)
    if value.is_zero:
        return Fraction(0)
    (d, c), = value.terms()
    return c * c * d


def _pbar_double_sum(n: int, l: int, lp: int) -> Fraction:
    total = Fraction(0)
    for m in range(-(n - 1), n):
        for q in q_values(n, m):
            a = _c_squared(n, q, l, m)
            if a == 0:
                continue
            b = _c_squared(n, q, lp, m)
            if b != 0:
                total += a * b
    return (2 * lp + 1) * total


def p_bar_6j_terms(n: int, l: int, lp: int) -> dict[int, Fraction]:
    """Squared-6j contributions to P-bar by recoupling rank j.

    j runs over every triangle-admissible value, not only 0..l-l': the extra
    terms do not vanish (callers can inspect this directly).
    """
    tJ = n - 1
    out: dict[int, Fraction] = {}
    for tj in range(2 * abs(l - lp), 2 * min(l + lp, n - 1) + 1, 2):
        value = _sixj_twice(2 * l, 2 * lp, tj, tJ, tJ, tJ)
        if value.is_zero:
            out[tj // 2] = Fraction(0)
        else:
            (d, c), = value.terms()
            out[tj // 2] = c * c * d
    return out


def p_bar(n: int, l: int, lp: int) -> Fraction:
    """Time-averaged l -> l' transfer probability, exact.

    Computed by the C^2 double sum and by the squared-6j sum; the two must
    agree exactly (InternalConsistencyError otherwise).
    """
    if not (0 <= l <= n - 1 and 0 <= lp <= n - 1):
        raise DomainError(f"need 0 <= l, l' <= n-1, got l={l}, l'={lp}, n={n}")
    double = _pbar_double_sum(n, l, lp)
    sixj = (2 * lp + 1) * sum(p_bar_6j_terms(n, l, lp).values(), Fraction(0))
    if double != sixj:
        raise InternalConsistencyError(
            f"P-bar({l},{lp}) routes disagree at n={n}: "
            f"double-sum {double} vs 6j {sixj}")
    return double


def p_bar_closed(n: int, lp: int, l_init: int) -> Fraction:
    """The printed closed forms for initial l = 0 and l = 1, verbatim.

    l_init = 0: 1/n. l_init = 1: the printed expression, whose numerator term
    "-2(l+1)+1" is compared against the double-sum oracle by
    closed_form_report; agreement is not assumed.
    """
    if l_init == 0:
        return Fraction(1, n)
    if l_init == 1:
        if n < 2:
            raise DomainError("the initial-l=1 form needs n >= 2")
        l = lp
        return Fraction(n * n * (4 * l * (l + 1) - 1) - 2 * (l + 1) + 1,
                        n * (n * n - 1) * (2 * l - 1) * (2 * l + 3))
    raise DomainError(f"closed forms exist for l_init in (0, 1), got {l_init}")


def closed_form_report(n: int, l_init: int) -> list[dict]:
    """Printed closed form vs the exact double-sum oracle, per final l'.

    Each record preserves both values; a "mismatch" verdict documents the
    discrepancy rather than failing.
    """
    out = []
    for lp in range(n):
        printed = p_bar_closed(n, lp, l_init)
        oracle = p_bar(n, l_init, lp)
        rec = {
            "n": n, "l_init": l_init, "l_final": lp,
            "printed": str(printed), "oracle": str(oracle),
            "verdict": "exact-match" if printed == oracle else "mismatch",
        }
        if printed != oracle:
            rec["difference"] = str(printed - oracle)
        out.append(rec)
    return out


@lru_cache(maxsize=None)
def _b_float_block(n: int, m: int) -> tuple[tuple[float, ...], ...]:
    return tuple(tuple(x.to_float() for x in row) for row in b_matrix(n, m))


def _p_spectral(n: int, l: int, lp: int, chi: float) -> float:
    total = 0.0
    for m in range(-min(l, lp), min(l, lp) + 1):
        B = _b_float_block(n, m)
        am = abs(m)
        qs = list(q_values(n, m))
        re = im = 0.0
        for row, q in enumerate(qs):
            w = B[row][lp - am] * B[row][l - am]
            if w != 0.0:
                re += w * cos(chi * q)
                im += w * sin(chi * q)
        total += re * re + im * im
    return total / (2 * l + 1)


@lru_cache(maxsize=None)
def _c_float(n: int, q: int, l: int, m: int) -> float:
    return c_coefficient(n, q, l, m).to_float()


def _p_herrick(n: int, l: int, lp: int, chi: float) -> float:
    total = 0.0
    for m in range(-min(l, lp), min(l, lp) + 1):
        qs = list(q_values(n, m))
        cl = [_c_float(n, q, l, m) for q in qs]
        clp = [_c_float(n, q, lp, m) for q in qs]
        for i, q in enumerate(qs):
            for j, qp in enumerate(qs):
                w = cl[i] * cl[j] * clp[i] * clp[j]
                if w != 0.0:
                    total += w * cos(chi * (q - qp))
    return (2 * lp + 1) * total


def p_transition(n: int, l: int, lp: int, chi: float) -> float:
    """P(l, l'; chi): l -> l' transfer probability after accumulated phase chi.

    Evaluates the exact-coefficient spectral form and the quadruple-sum
    cosine form; they must agree to 1e-12 (InternalConsistencyError
    otherwise). The returned value is the spectral one.
    """
    if not (0 <= l <= n - 1 and 0 <= lp <= n - 1):
        raise DomainError(f"need 0 <= l, l' <= n-1, got l={l}, l'={lp}, n={n}")
    spectral = _p_spectral(n, l, lp, chi)
    quadruple = _p_herrick(n, l, lp, chi)
    if abs(spectral - quadruple) > P_AGREEMENT_TOL:
        raise InternalConsistencyError(
            f"P({l},{lp};chi={chi}) routes disagree at n={n}: "
            f"{spectral} vs {quadruple}")
    return spectral


def chi_from_time(n: int, t: float) -> float:
    """The accumulated phase chi = 3 n t / 2 of a constant field over time t."""
    return 1.5 * n * t


@dataclass(frozen=True)
class TransitionTable:
    """P or P-bar over one manifold: rows l, columns l'.

    kind "pbar" holds exact Fractions; kind "p" holds binary64 values at the
    stored chi. Every entry lies in [0, 1]; rows of "p" tables sum to 1 to
    within 1e-12 (exactly, for "pbar").
    """

    n: int
    kind: str
    entries: tuple[tuple, ...]
    chi: float | None = None

    def __post_init__(self):
        if self.kind not in ("pbar", "p"):
            raise DomainError(f"kind must be 'pbar' or 'p', got {self.kind!r}")
        slack = 0 if self.kind == "pbar" else 1e-12  # float rounding headroom
        for row in self.entries:
            for x in row:
                if not -slack <= x <= 1 + slack:
                    raise DomainError(f"entry {x} outside [0, 1]")

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["l"] + [f"lp{lp}" for lp in range(self.n)])
        for l, row in enumerate(self.entries):
            if self.kind == "pbar":
                writer.writerow([l] + [f"{x.numerator}/{x.denominator}" for x in row])
            else:
                writer.writerow([l] + [repr(x) for x in row])
        return buf.getvalue()

    def to_json(self) -> str:
        payload = {"n": self.n, "kind": self.kind}
        if self.kind == "pbar":
            payload["entries"] = [[render_exact(RadicalSum.from_rational(x))
                                   for x in row] for row in self.entries]
        else:
            payload["chi"] = self.chi
            payload["entries"] = [list(row) for row in self.entries]
        return json.dumps(payload, indent=2)


def pbar_table(n: int) -> TransitionTable:
    rows = tuple(tuple(p_bar(n, l, lp) for lp in range(n)) for l in range(n))
    return TransitionTable(n, "pbar", rows)


def p_table(n: int, chi: float) -> TransitionTable:
    rows = tuple(tuple(p_transition(n, l, lp, chi) for lp in range(n))
                 for l in range(n))
    return TransitionTable(n, "p", rows, chi=chi)
