"""Low-field diamagnetic operators on one n-manifold, in generator form.

H1 carries the overall scale gamma^2 n^2 / 16 and H2 the scale
(gamma^2/8)^2 n^6 / 48; matrices here are the dimensionless brace contents,
exact over the parabolic index. H2 is encoded monomial by monomial from its
published expression (see H2_AUDIT) so the transcription stays reviewable;
its symmetry is checked, and any failure is reported per monomial rather
than patched.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction

from .basis import ParabolicLabel, q_values, unit_parabolic
from .errors import DomainError
from .operators import OperatorExpression, word_apply
from .radical import RadicalSum, render_exact


@dataclass(frozen=True)
class DiamagneticParams:
    """gamma = cyclotron frequency / Rydberg constant; the manifold's n."""

    gamma: float
    n: int

    def __post_init__(self):
        if self.gamma < 0:
            raise DomainError("gamma must be >= 0")
        if self.n < 1:
            raise DomainError("n must be >= 1")

    def h1_scale(self) -> float:
        return self.gamma**2 * self.n**2 / 16

    def h2_scale(self) -> float:
        return (self.gamma**2 / 8) ** 2 * self.n**6 / 48


def h1_generator_expression(n: int) -> OperatorExpression:
    """3n^2 + 1 - 4 j1z^2 - 4 j2z^2 + 4 j1z j2z - 4 j1+ j2- - 4 j1- j2+."""
    return OperatorExpression.build(
        (3 * n * n + 1, ()),
        (-4, ("j1z", "j1z")), (-4, ("j2z", "j2z")), (4, ("j1z", "j2z")),
        (-4, ("j1plus", "j2minus")), (-4, ("j1minus", "j2plus")),
    )


def h1_invariant_expression(n: int) -> OperatorExpression:
    """n^2 + 3 + L_z^2 + 4 A^2 - 5 A_z^2 with A^2 = n^2 - 1 - L^2."""
    from .operators import l_squared_expression

    lz_sq = OperatorExpression.build(
        (1, ("j1z", "j1z")), (2, ("j1z", "j2z")), (1, ("j2z", "j2z")))
    az_sq = OperatorExpression.build(
        (1, ("j1z", "j1z")), (-2, ("j1z", "j2z")), (1, ("j2z", "j2z")))
    scalar = OperatorExpression.build((n * n + 3 + 4 * (n * n - 1), ()))
    return (scalar + lz_sq + l_squared_expression().scaled(-4)
            + az_sq.scaled(-5))


def _h2_monomials(n: int) -> list[tuple[str, list[tuple[Fraction, tuple[str, ...]]]]]:
    n2, n4 = n * n, n**4
    lad_pm = ("j1plus", "j2minus")
    lad_mp = ("j1minus", "j2plus")
    rows: list[tuple[str, list[tuple[Fraction, tuple[str, ...]]]]] = [
        ("-223 n^4 - 598 n^2 - 27",
         [(Fraction(-223 * n4 - 598 * n2 - 27), ())]),
        ("+192 (j1z^4 + j2z^4)",
         [(Fraction(192), ("j1z",) * 4), (Fraction(192), ("j2z",) * 4)]),
        ("+144 j1z^2 j2z^2",
         [(Fraction(144), ("j1z", "j1z", "j2z", "j2z"))]),
        ("-(176 n^2 + 752) j1z j2z",
         [(Fraction(-(176 * n2 + 752)), ("j1z", "j2z"))]),
        ("+(j1z^2 + j2z^2)(-32 j1z j2z + 284 n^2 + 372)",
         [(Fraction(-32), ("j1z", "j1z", "j1z", "j2z")),
          (Fraction(284 * n2 + 372), ("j1z", "j1z")),
          (Fraction(-32), ("j2z", "j2z", "j1z", "j2z")),
          (Fraction(284 * n2 + 372), ("j2z", "j2z"))]),
        ("+8 (j1+ j2- + j1- j2+)[53 n^2 + 153 + 20 (j1z^2 + j2z^2) - 12 j1z j2z]",
         [(Fraction(8 * (53 * n2 + 153)), lad_pm),
          (Fraction(160), lad_pm + ("j1z", "j1z")),
          (Fraction(160), lad_pm + ("j2z", "j2z")),
          (Fraction(-96), lad_pm + ("j1z", "j2z")),
          (Fraction(8 * (53 * n2 + 153)), lad_mp),
          (Fraction(160), lad_mp + ("j1z", "j1z")),
          (Fraction(160), lad_mp + ("j2z", "j2z")),
          (Fraction(-96), lad_mp + ("j1z", "j2z"))]),
        ("+208 (j1+ j2- - j1- j2+)(j1z - j2z)",
         [(Fraction(208), lad_pm + ("j1z",)), (Fraction(-208), lad_pm + ("j2z",)),
          (Fraction(-208), lad_mp + ("j1z",)), (Fraction(208), lad_mp + ("j2z",))]),
        ("+48 (j1+^2 j2-^2 + j1-^2 j2+^2)",
         [(Fraction(48), ("j1plus", "j1plus", "j2minus", "j2minus")),
          (Fraction(48), ("j1minus", "j1minus", "j2plus", "j2plus"))]),
    ]
    return rows


#: Printed-monomial -> generator-word audit table (words act rightmost first).
H2_AUDIT: tuple[str, ...] = tuple(label for label, _ in _h2_monomials(1))


def h2_expression(n: int) -> OperatorExpression:
    terms = []
    for _, words in _h2_monomials(n):
        terms.extend(words)
    return OperatorExpression.build(*terms)


Matrix = tuple[tuple[RadicalSum, ...], ...]


def _expression_matrix(expr: OperatorExpression, n: int, m: int) -> Matrix:
    """Columns are images of the parabolic basis states (m-preserving words)."""
    upper = n - abs(m) - 1
    dim = upper + 1
    cols: list[list[RadicalSum]] = []
    for n1 in range(dim):
        start = unit_parabolic(ParabolicLabel(n1, upper - n1, m))
        acc = [RadicalSum.zero()] * dim
        for coeff, word in expr.terms:
            res = word_apply(word, start)
            if res.is_zero:
                continue
            if res.m != m:
                raise DomainError("expression does not preserve m")
            for i, c in enumerate(res.coeffs):
                if not c.is_zero:
                    acc[i] = acc[i] + c * coeff
        cols.append(acc)
    return tuple(tuple(cols[j][i] for j in range(dim)) for i in range(dim))


@dataclass(frozen=True)
class OperatorMatrix:
    """An exact matrix over the parabolic index of one (n, m) block.

    Rows/columns are ordered by q increasing; scale_text names the symbolic
    prefactor the entries were stripped of.
    """

    n: int
    m: int
    scale_text: str
    entries: Matrix

    @property
    def dim(self) -> int:
        return len(self.entries)

    def qs(self) -> list[int]:
        return list(q_values(self.n, self.m))

    def is_symmetric(self) -> bool:
        d = self.dim
        return all(self.entries[i][j] == self.entries[j][i]
                   for i in range(d) for j in range(i + 1, d))

    def trace(self) -> RadicalSum:
        total = RadicalSum.zero()
        for i in range(self.dim):
            total = total + self.entries[i][i]
        return total

    def to_json(self) -> str:
        return json.dumps({
            "n": self.n, "m": self.m, "scale": self.scale_text,
            "q": self.qs(),
            "entries": [[render_exact(x) for x in row] for row in self.entries],
        }, indent=2)


def h1_matrix(n: int, m: int) -> OperatorMatrix:
    """The first-order operator over the (n, m) block (scale gamma^2 n^2/16).

    Assembled from the generator form and verified entry-for-entry against
    the invariant form; the two are one identity, so disagreement raises.
    """
    from .errors import InternalConsistencyError

    gen = _expression_matrix(h1_generator_expression(n), n, m)
    inv = _expression_matrix(h1_invariant_expression(n), n, m)
    if gen != inv:
        raise InternalConsistencyError(
            f"H1 generator and invariant forms disagree on (n={n}, m={m})")
    return OperatorMatrix(n, m, "gamma^2*n^2/16", gen)


def h2_matrix(n: int, m: int) -> OperatorMatrix:
    """The second-order operator over the (n, m) block (scale (gamma^2/8)^2 n^6/48)."""
    return OperatorMatrix(n, m, "(gamma^2/8)^2*n^6/48",
                          _expression_matrix(h2_expression(n), n, m))


def h2_symmetry_report(n: int, m: int) -> list[dict]:
    """Entries where the verbatim H2 encoding breaks symmetry, with the
    per-monomial contributions to both sides; empty when symmetric."""
    mat = h2_matrix(n, m)
    failures = []
    qs = mat.qs()
    for i in range(mat.dim):
        for j in range(i + 1, mat.dim):
            if mat.entries[i][j] == mat.entries[j][i]:
                continue
            contributions = []
            for label, words in _h2_monomials(n):
                part = _expression_matrix(OperatorExpression.build(*words), n, m)
                if part[i][j] != part[j][i]:
                    contributions.append({
                        "monomial": label,
                        "upper": render_exact(part[i][j]),
                        "lower": render_exact(part[j][i]),
                    })
            failures.append({
                "q_row": qs[i], "q_col": qs[j],
                "upper": render_exact(mat.entries[i][j]),
                "lower": render_exact(mat.entries[j][i]),
                "monomials": contributions,
            })
    return failures
