"""
Euler products f_m = (q^m; q^m)_inf and eta-quotients prod f_m^e_m.

Also holds the independent oracles used to check the fast path: the literal
product expansion and brute-force partition enumeration.
"""

from functools import lru_cache
from typing import Dict, Iterable, Iterator, List, Tuple

from .series_core import SCHOOLBOOK, LaurentSeries, divide, mul, one


class EtaQuotientSpec:
    """Multiset of (scale, exponent) pairs denoting prod f_scale^exponent.

    Duplicate scales are merged and zero exponents dropped, so two specs for
    the same product compare equal.
    """

    __slots__ = ('_factors',)

    def __init__(self, factors: Iterable[Tuple[int, int]] = ()):
        merged: Dict[int, int] = {}
        for scale, exponent in factors:
            if scale < 1:
                raise ValueError(f"Euler factor scale must be positive, got {scale}")
            merged[scale] = merged.get(scale, 0) + exponent
        self._factors = tuple(sorted((m, e) for m, e in merged.items() if e))

    @property
    def factors(self) -> Tuple[Tuple[int, int], ...]:
        return self._factors

    def __iter__(self):
        return iter(self._factors)

    def __len__(self):
        return len(self._factors)

    def __eq__(self, other):
        if not isinstance(other, EtaQuotientSpec):
            return NotImplemented
        return self._factors == other._factors

    def __hash__(self):
        return hash(self._factors)

    def __mul__(self, other: 'EtaQuotientSpec') -> 'EtaQuotientSpec':
        return EtaQuotientSpec(self._factors + other._factors)

    def __pow__(self, exponent: int) -> 'EtaQuotientSpec':
        return EtaQuotientSpec((m, e * exponent) for m, e in self._factors)

    def inverse(self) -> 'EtaQuotientSpec':
        return self ** -1

    def render(self) -> str:
        """Text in claim-file syntax, e.g. ``f3^6*f6^6/(f1^2*f2^2)``."""
        def term(m, e):
            return f"f{m}" if e == 1 else f"f{m}^{e}"

        top = [term(m, e) for m, e in self._factors if e > 0]
        bottom = [term(m, -e) for m, e in self._factors if e < 0]
        text = '*'.join(top) if top else '1'
        if len(bottom) == 1:
            text += f"/{bottom[0]}"
        elif bottom:
            text += f"/({'*'.join(bottom)})"
        return text

    def __repr__(self):
        return f"EtaQuotientSpec({list(self._factors)})"


def pentagonal_terms(limit: int) -> Iterator[Tuple[int, int]]:
    """(k(3k-1)/2, (-1)^k) for k = 0, 1, -1, 2, -2, ... with exponent below limit."""
    if limit <= 0:
        return
    yield 0, 1
    k = 1
    while True:
        sign = -1 if k & 1 else 1
        low = k * (3 * k - 1) // 2
        high = k * (3 * k + 1) // 2
        if low >= limit:
            return
        yield low, sign
        if high < limit:
            yield high, sign
        k += 1


@lru_cache(maxsize=256)
def euler_factor(m: int, order: int) -> LaurentSeries:
    """(q^m; q^m)_inf to the given order via the pentagonal number theorem."""
    if m < 1:
        raise ValueError(f"Euler factor scale must be positive, got {m}")
    if order < 1:
        raise ValueError(f"Order must be positive, got {order}")
    coeffs = [0] * order
    for exponent, sign in pentagonal_terms((order + m - 1) // m):
        coeffs[m * exponent] = sign
    return LaurentSeries(0, coeffs, order)


def eta_quotient(spec: EtaQuotientSpec, order: int) -> LaurentSeries:
    """prod f_m^e to the requested order.

    Every Euler factor has constant term 1, so each factor is applied by a
    sparse multiply or a sparse divide at the caller's order.
    """
    if order < 1:
        raise ValueError(f"Order must be positive, got {order}")
    result = one(order)
    for m, e in spec:
        factor = euler_factor(m, order)
        for _ in range(abs(e)):
            result = mul(result, factor, SCHOOLBOOK) if e > 0 else divide(result, factor)
    return result


def naive_euler_oracle(m: int, order: int) -> LaurentSeries:
    """Literal product of (1 - q^(mn)) for n = 1 .. ceil(order/m)."""
    if m < 1:
        raise ValueError(f"Euler factor scale must be positive, got {m}")
    poly = [0] * order
    if order:
        poly[0] = 1
    for n in range(1, (order + m - 1) // m + 1):
        step = m * n
        for i in range(order - 1, step - 1, -1):
            poly[i] -= poly[i - step]
    return LaurentSeries(0, poly, order)


# Combinatorial oracles. These count objects directly and share no code with
# the series algebra.

def enumerate_partitions(n: int, largest: int = None) -> Iterator[Tuple[int, ...]]:
    """Partitions of n as nonincreasing tuples."""
    if largest is None:
        largest = n
    if n == 0:
        yield ()
        return
    for part in range(min(n, largest), 0, -1):
        for rest in enumerate_partitions(n - part, part):
            yield (part,) + rest


def count_partitions(n: int) -> int:
    return sum(1 for _ in enumerate_partitions(n))


def conjugate(partition: Tuple[int, ...]) -> Tuple[int, ...]:
    if not partition:
        return ()
    return tuple(sum(1 for part in partition if part > j) for j in range(partition[0]))


def hook_lengths(partition: Tuple[int, ...]) -> List[int]:
    columns = conjugate(partition)
    hooks = []
    for i, row in enumerate(partition):
        for j in range(row):
            arm = row - j - 1
            leg = columns[j] - i - 1
            hooks.append(arm + leg + 1)
    return hooks


def is_t_core(partition: Tuple[int, ...], t: int) -> bool:
    return all(h % t for h in hook_lengths(partition))


def count_t_cores(n: int, t: int) -> int:
    return sum(1 for p in enumerate_partitions(n) if is_t_core(p, t))


def count_cubic_partitions(n: int) -> int:
    """Two-coloured partitions of n where the second colour only takes even parts."""
    total = 0
    for k in range(0, n + 1, 2):
        first = count_partitions(n - k)
        second = sum(1 for p in enumerate_partitions(k) if all(part % 2 == 0 for part in p))
        total += first * second
    return total
