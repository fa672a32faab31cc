"""
Closed-form alternating sums from the reflection principle, on 2-Pascal and d-Pascal rows
"""
from typing import List, Literal

from pydantic import BaseModel, ConfigDict, Field

from .triangles import TriangleRow, binomial, d_pascal_row


class AltSumSpec(BaseModel):
    """
    Alternating sum over row `row` of the d-Pascal triangle.

    The i = 0 term sits at column base_col; with N = m + s + 2 the even terms sit
    at base_col +- jN, odd A terms at base_col + jN + s + 1 and odd B terms at
    base_col - jN - m - 1.
    """
    model_config = ConfigDict(frozen=True)

    d: int = Field(default=2, ge=2)
    row: int = Field(ge=0)
    base_col: int = 0
    m: int = Field(ge=0)
    s: int = Field(default=0, ge=0)

    @property
    def N(self) -> int:
        return self.m + self.s + 2


class AltSumTerm(BaseModel):
    label: str
    side: Literal["A", "B"]
    index: int
    column: int
    sign: int
    value: int


def catalan_formula(n: int) -> int:
    """C_n = C(2n, n) - C(2n, n-1)"""
    if n < 0:
        raise ValueError(f"catalan_formula(): n must be non-negative, got {n}")
    return binomial(2 * n, n) - binomial(2 * n, n - 1)


def _term_columns(base: int, m: int, s: int, i: int):
    # (A column, B column) of the i-th term, i >= 1
    N = m + s + 2
    j, odd = divmod(i, 2)
    if odd:
        return base + j * N + s + 1, base - j * N - m - 1
    return base + j * N, base - j * N


def altsum_terms(spec: AltSumSpec) -> List[AltSumTerm]:
    """Every term of the sum whose column lies inside the row, i = 0 listed once."""
    row = d_pascal_row(spec.d, spec.row)
    return _terms_for_row(row, spec.base_col, spec.m, spec.s)


def _terms_for_row(row: TriangleRow, base: int, m: int, s: int) -> List[AltSumTerm]:
    columns = row.columns()
    lo, hi = columns[0], columns[-1]
    terms: List[AltSumTerm] = []
    if lo <= base <= hi:
        terms.append(AltSumTerm(label="A0", side="A", index=0, column=base, sign=1, value=row.at(base)))
    i = 1
    while True:
        a_col, b_col = _term_columns(base, m, s, i)
        if a_col > hi and b_col < lo:
            break
        sign = -1 if i % 2 else 1
        if a_col <= hi and a_col >= lo:
            terms.append(AltSumTerm(label=f"A{i}", side="A", index=i, column=a_col, sign=sign, value=row.at(a_col)))
        if lo <= b_col <= hi:
            terms.append(AltSumTerm(label=f"B{i}", side="B", index=i, column=b_col, sign=sign, value=row.at(b_col)))
        i += 1
    return terms


def altsum_row(spec: AltSumSpec) -> int:
    return sum(t.sign * t.value for t in altsum_terms(spec))


def residue_sum(row: TriangleRow, residue: int, N: int) -> int:
    """Sum of the row entries whose column is congruent to residue mod N."""
    return sum(v for k, v in row.coeffs.items() if (k - residue) % N == 0)


def altsum_by_residues(spec: AltSumSpec) -> int:
    """The same alternating sum, regrouped as S_c - S_(c+s+1) over residue classes mod N."""
    row = d_pascal_row(spec.d, spec.row)
    return residue_sum(row, spec.base_col, spec.N) - residue_sum(row, spec.base_col + spec.s + 1, spec.N)


def bounded_terms(n: int, m: int, s: int) -> List[AltSumTerm]:
    """
    The |A_i| / |B_i| table for two-bounded paths to (n,n); column k stands for C(2n, n+k).
    """
    if min(n, m, s) < 0:
        raise ValueError(f"bounded_terms(): n, m, s must be non-negative, got ({n}, {m}, {s})")
    base = n
    terms = [AltSumTerm(label="A0", side="A", index=0, column=0, sign=1, value=binomial(2 * n, n))]
    i = 1
    while True:
        a_col, b_col = _term_columns(base, m, s, i)
        if a_col > 2 * n and b_col < 0:
            break
        sign = -1 if i % 2 else 1
        if a_col <= 2 * n:
            terms.append(AltSumTerm(label=f"A{i}", side="A", index=i, column=a_col - n, sign=sign, value=binomial(2 * n, a_col)))
        if b_col >= 0:
            terms.append(AltSumTerm(label=f"B{i}", side="B", index=i, column=b_col - n, sign=sign, value=binomial(2 * n, b_col)))
        i += 1
    return terms


def bounded_formula(n: int, m: int, s: int) -> int:
    """Number of paths to (n,n) inside -s <= y - x <= m, as a reflection alternating sum."""
    return sum(t.sign * t.value for t in bounded_terms(n, m, s))


def row_shifts(d: int, r: int) -> List[int]:
    """
    Column offsets delta with row_r[k] = sum over delta of row_(r-1)[k - delta].
    """
    if r < 1:
        raise ValueError(f"row_shifts(): row must be at least 1, got {r}")
    p_r = ((d - 1) * r) % 2
    p_prev = ((d - 1) * (r - 1)) % 2
    return [(d - 1 - 2 * j - p_r + p_prev) // 2 for j in range(d)]


def altsum_by_recurrence(spec: AltSumSpec) -> int:
    """Alternating sum of row r rebuilt from the sums of row r-1 at shifted base columns."""
    if spec.row == 0:
        return altsum_row(spec)
    return sum(
        altsum_row(spec.model_copy(update={"row": spec.row - 1, "base_col": spec.base_col - delta}))
        for delta in row_shifts(spec.d, spec.row)
    )
