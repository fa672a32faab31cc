"""
Pascal, q-Pascal and d-Pascal (sl2 character power) triangles, and q-Catalan numbers
"""
import math
from functools import lru_cache
from typing import Dict, List

from pydantic import BaseModel, ConfigDict

from .exactnum import LaurentPoly


class TriangleRow(BaseModel):
    """
    Row r of the d-Pascal triangle.

    coeffs maps the centered column k to the coefficient of q^(2k + p) in
    (q^(1-d) + q^(3-d) + ... + q^(d-1))^r, where p = (d-1)r mod 2.
    """
    model_config = ConfigDict(frozen=True)

    d: int
    r: int
    coeffs: Dict[int, int]

    @property
    def parity(self) -> int:
        return ((self.d - 1) * self.r) % 2

    def exponent(self, k: int) -> int:
        return 2 * k + self.parity

    def column(self, exponent: int) -> int:
        return (exponent - self.parity) // 2

    def at(self, k: int) -> int:
        return self.coeffs.get(k, 0)

    def columns(self) -> List[int]:
        return sorted(self.coeffs)

    def entries(self) -> List[int]:
        return [self.coeffs[k] for k in self.columns()]

    def by_exponent(self) -> Dict[int, int]:
        return {self.exponent(k): v for k, v in sorted(self.coeffs.items())}

    def as_poly(self) -> LaurentPoly:
        return LaurentPoly(self.by_exponent())

    def row_sum(self) -> int:
        return sum(self.coeffs.values())


def binomial(n: int, k: int) -> int:
    """C(n, k), with 0 outside 0 <= k <= n."""
    if n < 0 or k < 0 or k > n:
        return 0
    return math.comb(n, k)


def sl2_character(d: int) -> LaurentPoly:
    """q^(1-d) + q^(3-d) + ... + q^(d-1)"""
    return LaurentPoly({d - 1 - 2 * j: 1 for j in range(d)})


@lru_cache(maxsize=None)
def _character_power(d: int, r: int) -> LaurentPoly:
    if r == 0:
        return LaurentPoly.one()
    return _character_power(d, r - 1) * sl2_character(d)


@lru_cache(maxsize=None)
def d_pascal_row(d: int, r: int) -> TriangleRow:
    if d < 2:
        raise ValueError(f"d_pascal_row(): arity must be at least 2, got {d}")
    if r < 0:
        raise ValueError(f"d_pascal_row(): row must be non-negative, got {r}")
    parity = ((d - 1) * r) % 2
    poly = _character_power(d, r)
    return TriangleRow(d=d, r=r, coeffs={(e - parity) // 2: c for e, c in poly.items()})


def trinomial_coeff(n: int, i: int, k: int) -> int:
    """The multinomial n! / (i! (i+k)! (n-2i-k)!), or 0 when a lower argument is negative."""
    rest = n - 2 * i - k
    if n < 0 or i < 0 or i + k < 0 or rest < 0:
        return 0
    return math.factorial(n) // (math.factorial(i) * math.factorial(i + k) * math.factorial(rest))


def q_integer(n: int) -> LaurentPoly:
    """(n)_q = 1 + q + ... + q^(n-1)"""
    return LaurentPoly({j: 1 for j in range(n)})


def q_factorial(n: int) -> LaurentPoly:
    result = LaurentPoly.one()
    for j in range(1, n + 1):
        result = result * q_integer(j)
    return result


@lru_cache(maxsize=None)
def q_binomial(n: int, k: int) -> LaurentPoly:
    """
    Gaussian binomial [n, k]_q with support starting at q^0, by the q-Pascal rule
    [n, k] = [n-1, k-1] + q^k [n-1, k].
    """
    if n < 0 or k < 0 or k > n:
        return LaurentPoly.zero()
    if k == 0 or k == n:
        return LaurentPoly.one()
    return q_binomial(n - 1, k - 1) + q_binomial(n - 1, k).shift(k)


def q_pascal_row(n: int) -> List[LaurentPoly]:
    return [q_binomial(n, k) for k in range(n + 1)]


def q_catalan(n: int) -> LaurentPoly:
    """C_q(n) = [2n, n]_q - q [2n, n+1]_q"""
    if n < 0:
        raise ValueError(f"q_catalan(): n must be non-negative, got {n}")
    return q_binomial(2 * n, n) - q_binomial(2 * n, n + 1).shift(1)
