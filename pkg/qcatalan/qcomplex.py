"""
Quantum exterior algebra complexes.

Generators x_1..x_M satisfy x_i^2 = 0 and x_i x_j = q x_j x_i for i > j. With q a
primitive N-th root of unity, sigma (left multiplication by x_1 + ... + x_M)
satisfies sigma^N = 0, and alternating powers sigma^(s+1), sigma^(m+1) with
N = m + s + 2 give finite complexes whose Euler characteristics are the bounded
path alternating sums.
"""
import itertools
from enum import Enum
from functools import lru_cache
from typing import Any, Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator
from sympy.polys.matrices import DomainMatrix

from .exactnum import CycloNumber, LaurentPoly, cyclotomic_field, field_coeffs, to_cyclo, to_field_element
from .triangles import binomial, q_binomial
from .utils.config import DEFAULT_MATRIX_BUDGET, DEFAULT_RANK_MAX_GENERATORS
from .utils.dependencies import require_rank_budget, require_within_budget

Subset = Tuple[int, ...]


class AlgebraSpec(BaseModel):
    model_config = ConfigDict(frozen=True)

    M: int = Field(ge=1)
    N: int = Field(ge=2)


class GradedPiece(BaseModel):
    """Degree-k part of the algebra, spanned by the k-subsets of {1..M} in lexicographic order."""
    model_config = ConfigDict(frozen=True)

    M: int
    k: int
    basis: List[Subset]

    @property
    def dim(self) -> int:
        return len(self.basis)


class ExponentFn(BaseModel):
    """f(i) = (A i^2 + B i) / 2, integer-valued exactly when A + B is even."""
    model_config = ConfigDict(frozen=True)

    label: str = "custom"
    A: int
    B: int

    @model_validator(mode="after")
    def _integer_valued(self):
        if (self.A + self.B) % 2:
            raise ValueError(f"exponent function ({self.A} i^2 + {self.B} i)/2 is not integer-valued")
        return self

    def __call__(self, i: int) -> int:
        return (self.A * i * i + self.B * i) // 2

    @classmethod
    def zero(cls) -> "ExponentFn":
        return cls(label="zero", A=0, B=0)

    @classmethod
    def one_plus(cls, N: int) -> "ExponentFn":
        """The 1+(N-1) family (N i^2 - (N-2) i)/2, with f(0) = 0 and f(1) = 1."""
        return cls(label=f"one_plus_{N - 1}", A=N, B=-(N - 2))


class FibonacciVariant(str, Enum):
    F = "F"
    Fprime = "Fprime"


@lru_cache(maxsize=None)
def basis_subsets(M: int, k: int) -> Tuple[Subset, ...]:
    if k < 0 or k > M:
        return ()
    return tuple(itertools.combinations(range(1, M + 1), k))


@lru_cache(maxsize=None)
def _subset_index(M: int, k: int) -> Dict[Subset, int]:
    return {S: pos for pos, S in enumerate(basis_subsets(M, k))}


def basis(M: int, k: int) -> GradedPiece:
    return GradedPiece(M=M, k=k, basis=list(basis_subsets(M, k)))


def left_multiply(i: int, S: Subset) -> Optional[Tuple[int, Subset]]:
    """
    x_i * x_S for the ordered monomial x_S, as (power of q, sorted subset),
    or None when i is already in S.
    """
    if i in S:
        return None
    passed = sum(1 for j in S if j < i)
    return passed, tuple(sorted(S + (i,)))


def sigma_exponents(M: int, k: int) -> Dict[Tuple[int, int], int]:
    """Entries of sigma from degree k to k+1 as (row, col) -> power of q, with q generic."""
    target = _subset_index(M, k + 1)
    entries: Dict[Tuple[int, int], int] = {}
    for col, S in enumerate(basis_subsets(M, k)):
        for i in range(1, M + 1):
            product = left_multiply(i, S)
            if product is not None:
                power, T = product
                entries[(target[T], col)] = power
    return entries


@lru_cache(maxsize=256)
def sigma_matrix(M: int, k: int, N: int) -> DomainMatrix:
    """Left multiplication by x_1 + ... + x_M from degree k to k+1, at q a primitive N-th root of unity."""
    shape = (binomial(M, k + 1), binomial(M, k))
    rows: Dict[int, Dict[int, Any]] = {}
    if 0 <= k < M:
        for (row, col), power in sigma_exponents(M, k).items():
            rows.setdefault(row, {})[col] = to_field_element(CycloNumber.q_power(N, power))
    return DomainMatrix(rows, shape, cyclotomic_field(N))


@lru_cache(maxsize=256)
def sigma_power(M: int, k: int, a: int, N: int) -> DomainMatrix:
    """sigma^a from degree k to degree k+a."""
    if a < 1:
        raise ValueError(f"sigma_power(): exponent must be positive, got {a}")
    result = sigma_matrix(M, k, N)
    for step in range(1, a):
        result = sigma_matrix(M, k + step, N).matmul(result)
    return result


def _max_piece_dim(M: int) -> int:
    return binomial(M, M // 2)


def check_nilpotent(M: int, N: int, matrix_budget: int = DEFAULT_MATRIX_BUDGET) -> bool:
    """True iff sigma^N vanishes from every starting degree."""
    require_within_budget("graded piece dimension", _max_piece_dim(M), matrix_budget)
    for k in range(0, M + 1):
        if k + N > M:
            # the target piece is zero
            continue
        if not sigma_power(M, k, N, N).is_zero_matrix:
            return False
    return True


def complex_degree(i: int, c: int, m: int, s: int) -> int:
    """deg(2j) = c + jN and deg(2j+1) = c + jN + s + 1 for every integer j."""
    N = m + s + 2
    j, odd = divmod(i, 2)
    return c + j * N + (s + 1 if odd else 0)


def complex_indices(M: int, c: int, m: int, s: int) -> List[int]:
    """The contiguous run of indices whose degree lies in [0, M]."""
    lo = 0
    while complex_degree(lo - 1, c, m, s) >= 0:
        lo -= 1
    hi = 0
    while complex_degree(hi + 1, c, m, s) <= M:
        hi += 1
    return list(range(lo, hi + 1))


class ChainComplex(BaseModel):
    """
    C_i is the graded piece of degree deg(i); the differential C_i -> C_(i+1) is
    sigma^(deg(i+1) - deg(i)), which is sigma^(s+1) for even i and sigma^(m+1) for odd i.
    Differentials are built on first use.
    """
    model_config = ConfigDict(frozen=True)

    spec: AlgebraSpec
    c: int
    m: int
    s: int
    indices: List[int]
    degrees: Dict[int, int]
    pieces: Dict[int, GradedPiece]

    @property
    def N(self) -> int:
        return self.spec.N

    @property
    def M(self) -> int:
        return self.spec.M

    def dim(self, i: int) -> int:
        piece = self.pieces.get(i)
        return piece.dim if piece is not None else 0

    def exponent(self, i: int) -> int:
        return self.degrees[i + 1] - self.degrees[i]

    def differential(self, i: int) -> Optional[DomainMatrix]:
        """Matrix of C_i -> C_(i+1), or None when either end is outside the complex."""
        if i not in self.degrees or i + 1 not in self.degrees:
            return None
        return sigma_power(self.M, self.degrees[i], self.exponent(i), self.N)

    def differentials(self) -> Dict[int, DomainMatrix]:
        return {i: self.differential(i) for i in self.indices[:-1]}


def build_complex(M: int, c: int, m: int, s: int, matrix_budget: int = DEFAULT_MATRIX_BUDGET) -> ChainComplex:
    if M < 1:
        raise ValueError(f"build_complex(): need at least one generator, got M={M}")
    if m < 0 or s < 0:
        raise ValueError(f"build_complex(): bounds must be non-negative, got m={m}, s={s}")
    if not 0 <= c <= M:
        raise ValueError(f"build_complex(): base degree c={c} outside [0, {M}]")
    require_within_budget("graded piece dimension", _max_piece_dim(M), matrix_budget)
    indices = complex_indices(M, c, m, s)
    degrees = {i: complex_degree(i, c, m, s) for i in indices}
    return ChainComplex(
        spec=AlgebraSpec(M=M, N=m + s + 2),
        c=c,
        m=m,
        s=s,
        indices=indices,
        degrees=degrees,
        pieces={i: basis(M, degrees[i]) for i in indices},
    )


def check_d_squared(cx: ChainComplex) -> bool:
    for i in cx.indices[:-2]:
        first, second = cx.differential(i), cx.differential(i + 1)
        if first is None or second is None:
            continue
        if not second.matmul(first).is_zero_matrix:
            return False
    return True


def euler_char(cx: ChainComplex) -> int:
    return sum((-1 if i % 2 else 1) * cx.dim(i) for i in cx.indices)


def differential_ranks(cx: ChainComplex, rank_limit: int = DEFAULT_RANK_MAX_GENERATORS) -> Dict[int, int]:
    """Rank of every differential d_i : C_i -> C_(i+1) over Q(zeta_N)."""
    require_rank_budget(cx.M, rank_limit)
    return {i: d.rank() for i, d in cx.differentials().items()}


def homology_ranks(cx: ChainComplex, rank_limit: int = DEFAULT_RANK_MAX_GENERATORS) -> List[Tuple[int, int]]:
    """(index, dim H_i) with dim H_i = dim C_i - rank d_i - rank d_(i-1)."""
    ranks = differential_ranks(cx, rank_limit)
    return [(i, cx.dim(i) - ranks.get(i, 0) - ranks.get(i - 1, 0)) for i in cx.indices]


def graded_qdim(M: int, k: int) -> LaurentPoly:
    """Sum over k-subsets i_1 < ... < i_k of q^(sum_j (i_j - j))."""
    terms: Dict[int, int] = {}
    for S in basis_subsets(M, k):
        weight = sum(i - j for j, i in enumerate(S, start=1))
        terms[weight] = terms.get(weight, 0) + 1
    return LaurentPoly(terms)


def modified_euler_char(M: int, c: int, m: int, s: int, f: ExponentFn) -> LaurentPoly:
    """
    chi_q = sum over complex indices i of (-1)^i q^f(i) qdim(C_i), as a Laurent polynomial in q.
    qdim of the degree-k piece is the Gaussian binomial [M, k]_q.
    """
    if not 0 <= c <= M:
        raise ValueError(f"modified_euler_char(): base degree c={c} outside [0, {M}]")
    total = LaurentPoly.zero()
    for i in complex_indices(M, c, m, s):
        term = q_binomial(M, complex_degree(i, c, m, s)).shift(f(i))
        total = total - term if i % 2 else total + term
    return total


def modified_euler_char_at_root(M: int, c: int, m: int, s: int, f: ExponentFn) -> CycloNumber:
    """chi_q reduced at q a primitive (m+s+2)-th root of unity."""
    return to_cyclo(modified_euler_char(M, c, m, s, f), m + s + 2)


@lru_cache(maxsize=None)
def q_fibonacci_family(n: int, e: int) -> LaurentPoly:
    """G_0 = 0, G_1 = 1, G_k = G_(k-1) + q^(k-e) G_(k-2)."""
    if n < 0:
        raise ValueError(f"q_fibonacci_family(): index must be non-negative, got {n}")
    prev, cur = LaurentPoly.zero(), LaurentPoly.one()
    if n == 0:
        return prev
    for k in range(2, n + 1):
        prev, cur = cur, cur + prev.shift(k - e)
    return cur


def q_fibonacci(n: int, variant: FibonacciVariant = FibonacciVariant.F) -> LaurentPoly:
    """F_n = F_(n-1) + q^(n-1) F_(n-2); F'_n = F'_(n-1) + q^(n-2) F'_(n-2); both start 0, 1."""
    variant = FibonacciVariant(variant)
    return q_fibonacci_family(n, 1 if variant == FibonacciVariant.F else 2)


def export_triplets(matrix: DomainMatrix) -> str:
    """
    Sparse triplet text: a `rows cols nnz` header, then one `row col c0 c1 ...`
    line per nonzero entry, the c's being the rational coordinates of the residue.
    """
    dok = {ij: value for ij, value in matrix.to_dok().items() if value}
    lines = [f"{matrix.shape[0]} {matrix.shape[1]} {len(dok)}"]
    for i, j in sorted(dok):
        coords = field_coeffs(dok[(i, j)], matrix.domain)
        lines.append(" ".join([str(i), str(j)] + [str(c) for c in coords]))
    return "\n".join(lines) + "\n"
