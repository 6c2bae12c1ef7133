"""
Exact truncated Laurent series over the integers.

A LaurentSeries stores the coefficients of q^valuation .. q^(order-1). Every
coefficient below ``order`` is known exactly; nothing is known at or above it.
Operations never claim more precision than their operands justify.
"""

from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from .qseries_errors import (
    InsufficientOrder,
    LeadingCoefficientNotUnit,
    ZeroSeries,
)

SCHOOLBOOK = 'schoolbook'
KRONECKER = 'kronecker'
AUTO = 'auto'
MULTIPLICATION_METHODS = (AUTO, SCHOOLBOOK, KRONECKER)

# Below this many nonzero terms in the sparser operand the schoolbook loop wins.
KRONECKER_MIN_TERMS = 48


class LaurentSeries:
    """Immutable truncated Laurent series with exact integer coefficients.

    The zero series has no coefficients and ``valuation == order``.
    """

    __slots__ = ('valuation', 'coeffs', 'order')

    def __init__(self, valuation: int, coeffs: Iterable[int], order: Optional[int] = None):
        coeffs = list(coeffs)
        if order is None:
            order = valuation + len(coeffs)
        length = order - valuation
        if length < 0:
            coeffs = []
        elif len(coeffs) > length:
            coeffs = coeffs[:length]
        elif len(coeffs) < length:
            coeffs.extend([0] * (length - len(coeffs)))

        start = 0
        while start < len(coeffs) and coeffs[start] == 0:
            start += 1
        if start == len(coeffs):
            object.__setattr__(self, 'valuation', order)
            object.__setattr__(self, 'coeffs', ())
        else:
            object.__setattr__(self, 'valuation', valuation + start)
            object.__setattr__(self, 'coeffs', tuple(coeffs[start:]))
        object.__setattr__(self, 'order', order)

    def __setattr__(self, name, value):
        raise AttributeError("LaurentSeries is immutable")

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def leading_coefficient(self) -> int:
        if not self.coeffs:
            raise ZeroSeries("The zero series has no leading coefficient")
        return self.coeffs[0]

    def coefficient(self, exponent: int) -> int:
        """Coefficient of q^exponent; fails for exponents that are not trusted."""
        if exponent >= self.order:
            raise InsufficientOrder(exponent + 1, self.order)
        if exponent < self.valuation:
            return 0
        return self.coeffs[exponent - self.valuation]

    def __getitem__(self, exponent: int) -> int:
        return self.coefficient(exponent)

    def coefficients(self, start: int = 0, stop: Optional[int] = None) -> List[int]:
        """Dense list of coefficients for exponents start .. stop-1."""
        if stop is None:
            stop = self.order
        if stop > self.order:
            raise InsufficientOrder(stop, self.order)
        return [self.coefficient(e) for e in range(start, stop)]

    def items(self) -> Iterator[Tuple[int, int]]:
        """(exponent, coefficient) pairs for the nonzero tracked terms."""
        for i, c in enumerate(self.coeffs):
            if c:
                yield self.valuation + i, c

    def __eq__(self, other):
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return (self.valuation, self.coeffs, self.order) == (other.valuation, other.coeffs, other.order)

    def __hash__(self):
        return hash((self.valuation, self.coeffs, self.order))

    def __repr__(self):
        return f"LaurentSeries(valuation={self.valuation}, coeffs={list(self.coeffs)}, order={self.order})"

    def __str__(self):
        terms = []
        for e, c in self.items():
            if e == 0:
                body = str(abs(c))
            else:
                power = 'q' if e == 1 else f"q^{e}"
                body = power if abs(c) == 1 else f"{abs(c)}*{power}"
            sign = '-' if c < 0 else '+'
            terms.append((sign, body))
        text = ''
        for i, (sign, body) in enumerate(terms):
            if i == 0:
                text = body if sign == '+' else f"-{body}"
            else:
                text += f" {sign} {body}"
        tail = f"O(q^{self.order})"
        return f"{text} + {tail}" if text else tail

    def __neg__(self):
        return negate(self)

    def __add__(self, other):
        if isinstance(other, int):
            other = constant(other, self.order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return add(self, other)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            other = constant(other, self.order)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return subtract(self, other)

    def __rsub__(self, other):
        if isinstance(other, int):
            return subtract(constant(other, self.order), self)
        return NotImplemented

    def __mul__(self, other):
        if isinstance(other, int):
            return scale(self, other)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, int):
            other = constant(other, self.order - self.valuation)
        if not isinstance(other, LaurentSeries):
            return NotImplemented
        return divide(self, other)

    def __rtruediv__(self, other):
        if isinstance(other, int):
            return divide(constant(other, self.order - self.valuation), self)
        return NotImplemented

    def __pow__(self, exponent):
        if not isinstance(exponent, int):
            return NotImplemented
        return power(self, exponent)


def zero(order: int) -> LaurentSeries:
    return LaurentSeries(order, (), order)


def constant(value: int, order: int) -> LaurentSeries:
    """The constant ``value`` trusted for all exponents below ``order``."""
    if order <= 0:
        return zero(order)
    return LaurentSeries(0, [value], order)


def one(order: int) -> LaurentSeries:
    return constant(1, order)


def monomial(exponent: int, coefficient: int, order: int) -> LaurentSeries:
    """coefficient * q^exponent, trusted below ``order``."""
    if exponent >= order:
        return zero(order)
    return LaurentSeries(exponent, [coefficient], order)


def from_coefficients(coeffs: Sequence[int], valuation: int = 0, order: Optional[int] = None) -> LaurentSeries:
    return LaurentSeries(valuation, coeffs, order)


def truncate(s: LaurentSeries, order: int) -> LaurentSeries:
    if order > s.order:
        raise InsufficientOrder(order, s.order)
    return LaurentSeries(s.valuation, s.coeffs, order)


def shift(s: LaurentSeries, exponent: int) -> LaurentSeries:
    """Multiply by q^exponent."""
    return LaurentSeries(s.valuation + exponent, s.coeffs, s.order + exponent)


def negate(s: LaurentSeries) -> LaurentSeries:
    return LaurentSeries(s.valuation, [-c for c in s.coeffs], s.order)


def scale(s: LaurentSeries, factor: int) -> LaurentSeries:
    return LaurentSeries(s.valuation, [factor * c for c in s.coeffs], s.order)


def _combine(s: LaurentSeries, t: LaurentSeries, sign: int) -> LaurentSeries:
    order = min(s.order, t.order)
    low = min(s.valuation, t.valuation, order)
    result = [0] * (order - low)
    for i, c in enumerate(s.coeffs):
        e = s.valuation + i
        if e >= order:
            break
        result[e - low] += c
    for i, c in enumerate(t.coeffs):
        e = t.valuation + i
        if e >= order:
            break
        result[e - low] += sign * c
    return LaurentSeries(low, result, order)


def add(s: LaurentSeries, t: LaurentSeries) -> LaurentSeries:
    return _combine(s, t, 1)


def subtract(s: LaurentSeries, t: LaurentSeries) -> LaurentSeries:
    return _combine(s, t, -1)


def product_order(s: LaurentSeries, t: LaurentSeries) -> int:
    return min(s.order + t.valuation, t.order + s.valuation)


def _schoolbook(a: Sequence[int], b: Sequence[int], length: int) -> List[int]:
    # outer loop over the sparser operand
    if sum(1 for x in a if x) > sum(1 for x in b if x):
        a, b = b, a
    result = [0] * length
    len_b = len(b)
    for i, x in enumerate(a):
        if not x or i >= length:
            continue
        stop = min(len_b, length - i)
        for j in range(stop):
            y = b[j]
            if y:
                result[i + j] += x * y
    return result


def _pack(coeffs: Sequence[int], bits: int) -> int:
    value = 0
    for c in reversed(coeffs):
        value = (value << bits) + c
    return value


def _unpack(value: int, bits: int, length: int) -> List[int]:
    mask = (1 << bits) - 1
    half = 1 << (bits - 1)
    result = []
    for _ in range(length):
        digit = value & mask
        if digit >= half:
            digit -= 1 << bits
        result.append(digit)
        value = (value - digit) >> bits
    return result


def _kronecker(a: Sequence[int], b: Sequence[int], length: int) -> List[int]:
    """Product by evaluating both polynomials at 2^bits and multiplying the integers."""
    a = a[:length]
    b = b[:length]
    if not a or not b:
        return [0] * length
    bound = max(abs(x) for x in a) * max(abs(x) for x in b) * min(len(a), len(b))
    bits = bound.bit_length() + 2
    return _unpack(_pack(a, bits) * _pack(b, bits), bits, length)


def mul(s: LaurentSeries, t: LaurentSeries, method: str = AUTO) -> LaurentSeries:
    """Cauchy product, trusted up to min(s.order + t.valuation, t.order + s.valuation)."""
    order = product_order(s, t)
    valuation = s.valuation + t.valuation
    if s.is_zero or t.is_zero or order <= valuation:
        return zero(order)
    length = order - valuation
    if method == AUTO:
        terms = min(sum(1 for x in s.coeffs if x), sum(1 for x in t.coeffs if x))
        dense = 4 * terms >= min(len(s.coeffs), len(t.coeffs), length)
        method = KRONECKER if terms >= KRONECKER_MIN_TERMS and dense else SCHOOLBOOK
    if method == SCHOOLBOOK:
        coeffs = _schoolbook(s.coeffs, t.coeffs, length)
    elif method == KRONECKER:
        coeffs = _kronecker(s.coeffs, t.coeffs, length)
    else:
        raise ValueError(f"Unknown multiplication method: {method}")
    return LaurentSeries(valuation, coeffs, order)


def _check_unit(t: LaurentSeries):
    if t.is_zero:
        raise ZeroSeries()
    if t.coeffs[0] not in (1, -1):
        raise LeadingCoefficientNotUnit(t.coeffs[0])


def divide(s: LaurentSeries, t: LaurentSeries) -> LaurentSeries:
    """Exact quotient s/t for t with unit leading coefficient.

    The inner loop only visits the nonzero terms of t, so dividing by an
    Euler product costs O(order * sqrt(order)).
    """
    _check_unit(t)
    unit = t.coeffs[0]
    valuation = s.valuation - t.valuation
    length = min(s.order - s.valuation, t.order - t.valuation)
    order = valuation + length
    if s.is_zero or length <= 0:
        return zero(order)
    nonzero = [(j, c) for j, c in enumerate(t.coeffs[:length]) if c and j]
    num = s.coeffs
    quotient = [0] * length
    for k in range(length):
        acc = num[k]
        for j, c in nonzero:
            if j > k:
                break
            acc -= c * quotient[k - j]
        quotient[k] = acc * unit
    return LaurentSeries(valuation, quotient, order)


def invert(s: LaurentSeries) -> LaurentSeries:
    """Multiplicative inverse; the result has valuation -s.valuation."""
    _check_unit(s)
    return divide(one(s.order - s.valuation), s)


def power(s: LaurentSeries, exponent: int, method: str = AUTO) -> LaurentSeries:
    if exponent < 0:
        return power(invert(s), -exponent, method)
    if exponent == 0:
        # 1 to the relative precision of s, so that power(s, 0) * s == s
        return one(s.order - s.valuation)
    base = s
    result = None
    while exponent:
        if exponent & 1:
            result = base if result is None else mul(result, base, method)
        exponent >>= 1
        if exponent:
            base = mul(base, base, method)
    return result


def substitute_qk(s: LaurentSeries, k: int) -> LaurentSeries:
    """s(q^k)."""
    if k < 1:
        raise ValueError(f"Substitution step must be positive, got {k}")
    if k == 1:
        return s
    order = k * s.order
    if s.is_zero:
        return zero(order)
    coeffs = [0] * (k * (len(s.coeffs) - 1) + 1)
    for i, c in enumerate(s.coeffs):
        coeffs[k * i] = c
    return LaurentSeries(k * s.valuation, coeffs, order)


def reduce_mod(s: LaurentSeries, modulus: int) -> LaurentSeries:
    """Least nonnegative residues of every coefficient."""
    if modulus < 2:
        raise ValueError(f"Modulus must be at least 2, got {modulus}")
    return LaurentSeries(s.valuation, [c % modulus for c in s.coeffs], s.order)


class Agreement:
    """Outcome of equal_up_to; falsy on disagreement and carries the witness."""

    __slots__ = ('equal', 'bound', 'exponent', 'lhs', 'rhs')

    def __init__(self, equal: bool, bound: int, exponent: Optional[int] = None,
                 lhs: Optional[int] = None, rhs: Optional[int] = None):
        self.equal = equal
        self.bound = bound
        self.exponent = exponent
        self.lhs = lhs
        self.rhs = rhs

    def __bool__(self):
        return self.equal

    def __repr__(self):
        if self.equal:
            return f"Agreement(equal=True, bound={self.bound})"
        return (f"Agreement(equal=False, exponent={self.exponent}, "
                f"lhs={self.lhs}, rhs={self.rhs})")


def equal_up_to(s: LaurentSeries, t: LaurentSeries, bound: int) -> Agreement:
    """Compare every coefficient with exponent below ``bound``."""
    if bound > s.order:
        raise InsufficientOrder(bound, s.order, 'left-hand side')
    if bound > t.order:
        raise InsufficientOrder(bound, t.order, 'right-hand side')
    start = min(s.valuation, t.valuation)
    for e in range(start, bound):
        a = s.coefficient(e)
        b = t.coefficient(e)
        if a != b:
            return Agreement(False, bound, e, a, b)
    return Agreement(True, bound)
