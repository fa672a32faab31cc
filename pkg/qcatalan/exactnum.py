"""
Exact number systems: Laurent polynomials in q and the cyclotomic field Q[q]/Phi_N(q)
"""
import operator
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple, Union

import sympy
from sympy import QQ
from sympy.polys.domains import AlgebraicField

Rational = Union[int, Fraction]
TermSource = Union[Mapping[int, int], Iterable[Tuple[int, int]]]


class LaurentPoly:
    """
    Integer Laurent polynomial in q, stored sparsely as exponent -> coefficient.

    Instances are immutable. Zero coefficients are never stored, so two
    polynomials are equal exactly when their coefficient maps are equal.
    """
    __slots__ = ("_coeffs", "_hash")

    def __init__(self, coeffs: Optional[TermSource] = None):
        terms: Dict[int, int] = {}
        if coeffs is not None:
            items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
            for exp, c in items:
                if not isinstance(c, int) or not isinstance(exp, int):
                    raise TypeError(f"LaurentPoly terms must be integers, got ({exp!r}, {c!r})")
                total = terms.get(exp, 0) + c
                if total:
                    terms[exp] = total
                else:
                    terms.pop(exp, None)
        self._coeffs = terms
        self._hash = None

    @classmethod
    def _trusted(cls, terms: Dict[int, int]) -> "LaurentPoly":
        # terms must already be free of zero coefficients
        poly = cls.__new__(cls)
        poly._coeffs = terms
        poly._hash = None
        return poly

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls._trusted({})

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls._trusted({0: 1})

    @classmethod
    def monomial(cls, exp: int, coeff: int = 1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def from_list(cls, coeffs: Sequence[int], start: int = 0) -> "LaurentPoly":
        """Dense coefficient list, coeffs[i] being the coefficient of q^(start + i)."""
        return cls((start + i, c) for i, c in enumerate(coeffs))

    # Inspection

    def is_zero(self) -> bool:
        return not self._coeffs

    def __bool__(self) -> bool:
        return bool(self._coeffs)

    def coeff(self, exp: int) -> int:
        return self._coeffs.get(exp, 0)

    @property
    def coeffs(self) -> Dict[int, int]:
        return dict(self._coeffs)

    def items(self) -> List[Tuple[int, int]]:
        return sorted(self._coeffs.items())

    def exponents(self) -> List[int]:
        return sorted(self._coeffs)

    @property
    def min_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no exponents")
        return min(self._coeffs)

    @property
    def max_exp(self) -> int:
        if not self._coeffs:
            raise ValueError("the zero polynomial has no exponents")
        return max(self._coeffs)

    def leading_coeff(self) -> int:
        return self._coeffs[self.max_exp]

    def is_monomial(self) -> bool:
        return len(self._coeffs) == 1

    def l1_norm(self) -> int:
        return sum(abs(c) for c in self._coeffs.values())

    def eval_at_one(self) -> int:
        return sum(self._coeffs.values())

    def to_pairs(self) -> List[List[int]]:
        return [[e, c] for e, c in sorted(self._coeffs.items())]

    # Arithmetic

    @staticmethod
    def _coerce(other) -> Optional["LaurentPoly"]:
        if isinstance(other, LaurentPoly):
            return other
        if isinstance(other, int):
            return LaurentPoly._trusted({0: other} if other else {})
        return None

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms = dict(self._coeffs)
        for e, c in other._coeffs.items():
            total = terms.get(e, 0) + c
            if total:
                terms[e] = total
            else:
                terms.pop(e, None)
        return LaurentPoly._trusted(terms)

    __radd__ = __add__

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly._trusted({e: -c for e, c in self._coeffs.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other + (-self)

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        terms: Dict[int, int] = {}
        for e1, c1 in self._coeffs.items():
            for e2, c2 in other._coeffs.items():
                e = e1 + e2
                terms[e] = terms.get(e, 0) + c1 * c2
        return LaurentPoly._trusted({e: c for e, c in terms.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if self.is_monomial() and abs(self.leading_coeff()) == 1:
                (e, c), = self._coeffs.items()
                return LaurentPoly._trusted({e * n: c ** -n})
            raise ValueError("only the monomials +-q^e are units in Z[q, 1/q]")
        result = LaurentPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by q^k."""
        return LaurentPoly._trusted({e + k: c for e, c in self._coeffs.items()})

    def __divmod__(self, other: "LaurentPoly") -> Tuple["LaurentPoly", "LaurentPoly"]:
        """
        Long division in Z[q, 1/q] after moving both operands to exponent 0.

        Args:
            other: divisor whose leading coefficient is +1 or -1

        Returns:
            (quotient, remainder) with self == quotient * other + remainder
        """
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        lead = other.leading_coeff()
        if lead not in (1, -1):
            raise ValueError(f"divisor must have leading coefficient +-1, got {lead}")
        if self.is_zero():
            return LaurentPoly.zero(), LaurentPoly.zero()

        low_self, low_other = self.min_exp, other.min_exp
        divisor = other.shift(-low_other)
        top = divisor.max_exp
        remainder = dict(self.shift(-low_self)._coeffs)
        quotient: Dict[int, int] = {}
        while remainder and max(remainder) >= top:
            e = max(remainder)
            factor = remainder[e] * lead
            quotient[e - top] = factor
            for de, dc in divisor._coeffs.items():
                k = e - top + de
                total = remainder.get(k, 0) - factor * dc
                if total:
                    remainder[k] = total
                else:
                    remainder.pop(k, None)
        shift = low_self - low_other
        return (LaurentPoly._trusted(quotient).shift(shift),
                LaurentPoly._trusted(remainder).shift(low_self))

    def monomial_quotient(self, other: "LaurentPoly") -> Optional[Tuple[int, int]]:
        """(sign, a) with self == sign * q^a * other and sign = +-1, or None."""
        if self.is_zero() or other.is_zero() or len(self._coeffs) != len(other._coeffs):
            return None
        low, other_low = self.min_exp, other.min_exp
        top, other_top = self.coeff(low), other.coeff(other_low)
        if top not in (other_top, -other_top):
            return None
        sign = 1 if top == other_top else -1
        a = low - other_low
        if self != other.shift(a) * sign:
            return None
        return sign, a

    def divides(self, other: "LaurentPoly") -> bool:
        """True when other == self * g for some g in Z[q, 1/q]."""
        _, remainder = divmod(other, self)
        return remainder.is_zero()

    # Comparison and display

    def __eq__(self, other) -> bool:
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self._coeffs == other._coeffs

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._coeffs.items()))
        return self._hash

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_pairs()!r})"

    def __str__(self) -> str:
        if not self._coeffs:
            return "0"
        parts = []
        for e, c in sorted(self._coeffs.items()):
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if e == 0:
                body = f"{mag}"
            else:
                var = "q" if e == 1 else f"q^{e}"
                body = var if mag == 1 else f"{mag}{var}"
            parts.append((sign, body))
        first_sign, first_body = parts[0]
        text = ("-" if first_sign == "-" else "") + first_body
        for sign, body in parts[1:]:
            text += f" {sign} {body}"
        return text


_ARITH_OPS = {
    "add": operator.add,
    "sub": operator.sub,
    "mul": operator.mul,
}


def poly_arith(op: str, a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Apply add, sub or mul to two Laurent polynomials."""
    try:
        fn = _ARITH_OPS[op]
    except KeyError:
        raise ValueError(f"unknown polynomial operation '{op}', expected one of {sorted(_ARITH_OPS)}")
    return fn(a, b)


def eval_at_one(p: LaurentPoly) -> int:
    return p.eval_at_one()


def divisors(N: int) -> List[int]:
    """Divisors of N in ascending order, by trial division."""
    small, large = [], []
    d = 1
    while d * d <= N:
        if N % d == 0:
            small.append(d)
            if d * d != N:
                large.append(N // d)
        d += 1
    return small + large[::-1]


@lru_cache(maxsize=None)
def cyclotomic_polynomial(N: int) -> LaurentPoly:
    """
    Phi_N(q), computed as (q^N - 1) divided by Phi_d for every proper divisor d of N.
    """
    if N < 1:
        raise ValueError(f"cyclotomic_polynomial(): N must be positive, got {N}")
    result = LaurentPoly({N: 1, 0: -1})
    for d in divisors(N)[:-1]:
        result, remainder = divmod(result, cyclotomic_polynomial(d))
        if remainder:
            raise ArithmeticError(f"Phi_{d} does not divide q^{N} - 1 quotient")
    return result


def euler_phi(N: int) -> int:
    return cyclotomic_polynomial(N).max_exp


@lru_cache(maxsize=None)
def _modulus(N: int) -> Tuple[int, ...]:
    # dense coefficients of Phi_N, constant term first
    phi = cyclotomic_polynomial(N)
    return tuple(phi.coeff(i) for i in range(phi.max_exp + 1))


def _reduce(N: int, dense: List[Rational]) -> Tuple[Fraction, ...]:
    modulus = _modulus(N)
    deg = len(modulus) - 1
    work = list(dense)
    for i in range(len(work) - 1, deg - 1, -1):
        c = work[i]
        if c:
            base = i - deg
            for j in range(deg):
                if modulus[j]:
                    work[base + j] -= c * modulus[j]
    work = work[:deg] + [0] * (deg - len(work))
    return tuple(Fraction(c) for c in work)


@lru_cache(maxsize=None)
def _q_power_residue(N: int, e: int) -> Tuple[Fraction, ...]:
    # e is taken in [0, N)
    dense = [0] * (e + 1)
    dense[e] = 1
    return _reduce(N, dense)


class CycloNumber:
    """
    Element of Q[q]/Phi_N(q), where q is a primitive N-th root of unity.

    coeffs holds phi(N) rationals, the residue's coefficient of q^0 first.
    """
    __slots__ = ("N", "coeffs")

    def __init__(self, N: int, coeffs: Sequence[Rational] = ()):
        if N < 1:
            raise ValueError(f"CycloNumber needs N >= 1, got {N}")
        self.N = N
        self.coeffs = _reduce(N, [Fraction(c) for c in coeffs])

    @classmethod
    def _trusted(cls, N: int, coeffs: Tuple[Fraction, ...]) -> "CycloNumber":
        x = cls.__new__(cls)
        x.N = N
        x.coeffs = coeffs
        return x

    @classmethod
    def zero(cls, N: int) -> "CycloNumber":
        return cls._trusted(N, (Fraction(0),) * euler_phi(N))

    @classmethod
    def one(cls, N: int) -> "CycloNumber":
        return cls.from_rational(N, 1)

    @classmethod
    def from_rational(cls, N: int, value: Rational) -> "CycloNumber":
        coeffs = [Fraction(0)] * euler_phi(N)
        coeffs[0] = Fraction(value)
        return cls._trusted(N, tuple(coeffs))

    @classmethod
    def q_power(cls, N: int, e: int) -> "CycloNumber":
        """q^e for any integer e, using q^N = 1."""
        return cls._trusted(N, _q_power_residue(N, e % N))

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def _check(self, other: "CycloNumber"):
        if other.N != self.N:
            raise ValueError(f"cannot combine residues mod Phi_{self.N} and Phi_{other.N}")

    def _lift(self, other) -> Optional["CycloNumber"]:
        if isinstance(other, CycloNumber):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return CycloNumber.from_rational(self.N, other)
        return None

    def __add__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return CycloNumber._trusted(self.N, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    __radd__ = __add__

    def __neg__(self) -> "CycloNumber":
        return CycloNumber._trusted(self.N, tuple(-a for a in self.coeffs))

    def __sub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return CycloNumber._trusted(self.N, tuple(a - b for a, b in zip(self.coeffs, other.coeffs)))

    def __rsub__(self, other):
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CycloNumber._trusted(self.N, tuple(a * other for a in self.coeffs))
        other = self._lift(other)
        if other is None:
            return NotImplemented
        width = len(self.coeffs)
        product: List[Rational] = [0] * (2 * width - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        product[i + j] += a * b
        return CycloNumber._trusted(self.N, _reduce(self.N, product))

    __rmul__ = __mul__

    def inverse(self) -> "CycloNumber":
        return cyclo_inverse(self)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division of a cyclotomic number by zero")
            return self * (1 / Fraction(other))
        other = self._lift(other)
        if other is None:
            return NotImplemented
        return self * cyclo_inverse(other)

    def __pow__(self, n: int) -> "CycloNumber":
        base = self if n >= 0 else cyclo_inverse(self)
        n = abs(n)
        result = CycloNumber.one(self.N)
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = CycloNumber.from_rational(self.N, other)
        if not isinstance(other, CycloNumber):
            return NotImplemented
        return self.N == other.N and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.N, self.coeffs))

    def coeff_strings(self) -> List[str]:
        return [str(c) for c in self.coeffs]

    def __repr__(self) -> str:
        return f"CycloNumber({self.N}, [{', '.join(self.coeff_strings())}])"

    def __str__(self) -> str:
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                var = "" if i == 0 else ("q" if i == 1 else f"q^{i}")
                if not var:
                    terms.append(str(c))
                elif c == 1:
                    terms.append(var)
                elif c == -1:
                    terms.append(f"-{var}")
                else:
                    terms.append(f"{c}*{var}")
        return " + ".join(terms).replace("+ -", "- ") if terms else "0"


def to_cyclo(p: LaurentPoly, N: int) -> CycloNumber:
    """Reduce a Laurent polynomial at a primitive N-th root of unity."""
    acc: List[Fraction] = [Fraction(0)] * euler_phi(N)
    for e, c in p.items():
        for i, r in enumerate(_q_power_residue(N, e % N)):
            if r:
                acc[i] += c * r
    return CycloNumber._trusted(N, tuple(acc))


@lru_cache(maxsize=None)
def cyclotomic_field(N: int) -> AlgebraicField:
    """Q(zeta_N) as a sympy number field, generated by q = exp(2 pi i / N) with minimal polynomial Phi_N."""
    if N < 1:
        raise ValueError(f"cyclotomic_field(): N must be positive, got {N}")
    modulus = sympy.Poly(list(reversed(_modulus(N))), sympy.Symbol("q"), domain=QQ)
    return QQ.algebraic_field((modulus, sympy.exp(2 * sympy.pi * sympy.I / N)))


def to_field_element(x: CycloNumber):
    return cyclotomic_field(x.N).new([QQ(c.numerator, c.denominator) for c in reversed(x.coeffs)])


def field_coeffs(a, field: AlgebraicField) -> List[Fraction]:
    """Coordinates of a field element on 1, q, ..., q^(phi(N) - 1)."""
    dense = [Fraction(int(c.numerator), int(c.denominator)) for c in reversed(a.to_list())]
    return dense + [Fraction(0)] * (field.mod.degree() - len(dense))


# Dense polynomial helpers over Q, constant term first

def _trim(p: List[Fraction]) -> List[Fraction]:
    end = len(p)
    while end and p[end - 1] == 0:
        end -= 1
    return p[:end]


def _dense_sub(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    size = max(len(a), len(b))
    out = [(a[i] if i < len(a) else 0) - (b[i] if i < len(b) else 0) for i in range(size)]
    return _trim([Fraction(c) for c in out])


def _dense_mul(a: List[Fraction], b: List[Fraction]) -> List[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return _trim(out)


def _dense_divmod(a: List[Fraction], b: List[Fraction]) -> Tuple[List[Fraction], List[Fraction]]:
    rem = list(a)
    db = len(b) - 1
    if len(rem) - 1 < db:
        return [], _trim(rem)
    quot = [Fraction(0)] * (len(rem) - db)
    for i in range(len(rem) - 1, db - 1, -1):
        factor = rem[i] / b[db]
        quot[i - db] = factor
        if factor:
            for j in range(db + 1):
                rem[i - db + j] -= factor * b[j]
    return _trim(quot), _trim(rem[:db])


def cyclo_inverse(x: CycloNumber) -> CycloNumber:
    """
    Multiplicative inverse by the extended Euclidean algorithm against Phi_N.

    Raises:
        ZeroDivisionError: x is zero
    """
    if x.is_zero():
        raise ZeroDivisionError("cyclo_inverse(): zero has no inverse")
    # invariant: s_k * x == r_k modulo Phi_N
    r0 = [Fraction(c) for c in _modulus(x.N)]
    r1 = _trim(list(x.coeffs))
    s0: List[Fraction] = []
    s1: List[Fraction] = [Fraction(1)]
    while r1:
        quot, rem = _dense_divmod(r0, r1)
        r0, r1 = r1, rem
        s0, s1 = s1, _dense_sub(s0, _dense_mul(quot, s1))
    if len(r0) != 1:
        raise ArithmeticError(f"Phi_{x.N} shares a factor with {x!r}")
    g = r0[0]
    return CycloNumber(x.N, [c / g for c in s0])
