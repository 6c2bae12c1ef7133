"""
Ramanujan's cubic continued fraction as a power series, and the Laurent
series a, b, c built from it for the powers-of-3 congruence family.

Only x(q) = q^(-1/3) c(q) is ever represented; the fractional power of q is
never needed.
"""

import time
from typing import Callable, List, Optional, Tuple

from .claim_report import FAIL, PASS, ClaimResult, Witness
from .congruence import builtin_series
from .dissection import huff
from .eta_engine import EtaQuotientSpec, eta_quotient
from .qseries_errors import RelationFailure
from .series_core import (
    LaurentSeries,
    add,
    constant,
    equal_up_to,
    invert,
    monomial,
    mul,
    power,
    scale,
    shift,
    substitute_qk,
    truncate,
)

CF_DEPTH_PADDING = 2
CF_DEPTH_CHECK = 3
# Extra precision for a, b, c; products of negative-valuation series lose
# up to this many exponents before the comparison bound.
LAURENT_PADDING = 9

A_SPEC = EtaQuotientSpec([(1, 1), (2, 1), (9, -1), (18, -1)])
C_SPEC = EtaQuotientSpec([(3, 4), (6, 4), (9, -4), (18, -4)])


class CubicCfSeries:
    def __init__(self, x: LaurentSeries, depth: int):
        self.x = x
        self.depth = depth

    @property
    def order(self) -> int:
        return self.x.order


class Thm39Triple:
    """a = q^-1 f1f2/(f9f18), b = q^-1/x(q^3), c = q^-3 f3^4f6^4/(f9^4f18^4).

    Each series is held past ``order`` so that relations between them can be
    compared on every exponent below ``order``.
    """

    def __init__(self, a: LaurentSeries, b: LaurentSeries, c: LaurentSeries, order: int):
        self.a = a
        self.b = b
        self.c = c
        self.order = order


def _at(series: LaurentSeries, order: int) -> LaurentSeries:
    return truncate(series, order) if series.order > order else series


class CubicContinuedFraction:
    def __init__(self, debug_callback: Optional[Callable[[str], None]] = None):
        self.debug_callback = debug_callback

    def debug(self, message):
        if self.debug_callback:
            self.debug_callback(message)

    def expand(self, order: int, depth: Optional[int] = None) -> CubicCfSeries:
        """x(q) = 1/(1 + (q+q^2)/(1 + (q^2+q^4)/(1 + ...))) to ``order``.

        Level j only moves exponents >= j, so cutting the fraction at
        depth order + 2 leaves every coefficient below ``order`` exact.
        """
        if order < 1:
            raise ValueError(f"Order must be positive, got {order}")
        if depth is None:
            depth = order + CF_DEPTH_PADDING
        self.debug(f"Expanding cubic continued fraction to order {order} at depth {depth}")
        tail = constant(1, order)
        for j in range(depth, 0, -1):
            numerator = add(monomial(j, 1, order), monomial(2 * j, 1, order))
            tail = add(constant(1, order), mul(numerator, invert(tail)))
        return CubicCfSeries(invert(tail), depth)

    def check_depth(self, order: int):
        """Agreement between depth D and D + 3 on every exponent below order."""
        shallow = self.expand(order)
        deep = self.expand(order, shallow.depth + CF_DEPTH_CHECK)
        return equal_up_to(shallow.x, deep.x, order)

    def x_of_q3(self, order: int) -> LaurentSeries:
        """x(q^3) trusted below ``order``."""
        cf = self.expand(max(1, (order + 2) // 3))
        return _at(substitute_qk(cf.x, 3), order)

    def lemma_identities(self, order: int) -> List[Tuple[str, LaurentSeries, LaurentSeries]]:
        x3 = self.x_of_q3(order)
        inv_x3 = invert(x3)
        x_form = add(add(inv_x3, monomial(1, -1, order)), scale(shift(x3, 2), -2))
        x3_cubed = power(x3, 3)
        x3_form = add(add(power(inv_x3, 3), monomial(3, -7, order)), scale(shift(x3_cubed, 6), -8))
        return [
            ("f1f2/(f9f18) = 1/x(q^3) - q - 2q^2 x(q^3)",
             eta_quotient(EtaQuotientSpec([(1, 1), (2, 1), (9, -1), (18, -1)]), order), x_form),
            ("f3^4f6^4/(f9^4f18^4) = 1/x(q^3)^3 - 7q^3 - 8q^6 x(q^3)^3",
             eta_quotient(C_SPEC, order), x3_form),
        ]

    def build_triple(self, order: int, validate: bool = True) -> Thm39Triple:
        working = order + LAURENT_PADDING
        self.debug(f"Building a, b, c to order {order} (working order {working})")
        a = shift(eta_quotient(A_SPEC, working + 1), -1)
        b = shift(invert(self.x_of_q3(working + 1)), -1)
        c = shift(eta_quotient(C_SPEC, working + 3), -3)
        triple = Thm39Triple(a, b, c, order)
        if validate:
            for label, lhs, rhs in self.relations(triple):
                agreement = equal_up_to(_at(lhs, order), _at(rhs, order), order)
                if not agreement:
                    raise RelationFailure(label, agreement)
        return triple

    def relations(self, triple: Thm39Triple) -> List[Tuple[str, LaurentSeries, LaurentSeries]]:
        """Structural relations between a, b and c; all must hold exactly."""
        a, b, c = triple.a, triple.b, triple.c
        inv_b = invert(b)
        b3 = power(b, 3)
        inv_b3 = invert(b3)
        a2 = mul(a, a)
        a3 = mul(a2, a)
        a4 = mul(a3, a)
        c2 = mul(c, c)
        one = constant(1, b.order - b.valuation)

        b_form = add(add(b, scale(one, -1)), scale(inv_b, -2))
        b3_form = add(add(b3, scale(one, -7)), scale(inv_b3, -8))
        cubic = add(add(a3, scale(a2, 3)), scale(a, 9))
        quartic = add(add(add(add(a4, scale(a3, 6)), scale(a2, 27)), scale(a, 54)), scale(one, 81))
        quartic_form = mul(quartic, invert(c2))
        return [
            ("a = b - 1 - 2/b", a, b_form),
            ("c = b^3 - 7 - 8/b^3", c, b3_form),
            ("c = a^3 + 3a^2 + 9a", c, cubic),
            ("1/a^2 = (a^4 + 6a^3 + 27a^2 + 54a + 81)/c^2", invert(a2), quartic_form),
        ]

    def series_identities(self, triple: Thm39Triple) -> List[Tuple[str, LaurentSeries, LaurentSeries]]:
        """CP3 and d written through a; the CP3(3n+1) identity obtained by huffing the first."""
        order = triple.order
        working = order + LAURENT_PADDING
        a2 = mul(triple.a, triple.a)
        cp3 = builtin_series('CP3', working + 1)
        dq = builtin_series('DQ', working)

        cp3_shifted = shift(cp3, -1)
        prefactor = shift(eta_quotient(EtaQuotientSpec([(3, 6), (6, 6), (9, -2), (18, -2)]), working + 3), -3)
        cp3_through_a = mul(prefactor, invert(a2))

        dq_through_a = mul(shift(eta_quotient(EtaQuotientSpec([(3, 2), (6, 2), (9, 2), (18, 2)]), working), 2), a2)

        huffed = huff(_at(cp3_shifted, order), 3)
        relabelled = substitute_qk(add(scale(dq, 2), scale(shift(cp3, 1), 27)), 3)
        return [
            ("sum CP3(n) q^(n-1) = f3^6f6^6/(q^3 f9^2f18^2) * 1/a^2", cp3_shifted, cp3_through_a),
            ("(f1f2f3f6)^2 = q^2 (f3f6f9f18)^2 a^2", dq, dq_through_a),
            ("H3 of sum CP3(n) q^(n-1) = 2 d(q^3) + 27 q^3 CP3(q^3)", huffed, relabelled),
        ]

    def h3_images(self, triple: Thm39Triple) -> List[Tuple[str, LaurentSeries, LaurentSeries]]:
        a, b, c = triple.a, triple.b, triple.c
        b3 = power(b, 3)
        inv_b3 = invert(b3)
        a2 = mul(a, a)
        a3 = mul(a2, a)
        a4 = mul(a3, a)
        inv_c = invert(c)
        one = constant(1, a.order - a.valuation)
        return [
            ("H3(1) = 1", huff(one, 3), one),
            ("H3(a) = -1", huff(a, 3), scale(one, -1)),
            ("H3(a^2) = -3", huff(a2, 3), scale(one, -3)),
            ("H3(a^3) = -8/b^3 + 11 + b^3", huff(a3, 3),
             add(add(scale(inv_b3, -8), scale(one, 11)), b3)),
            ("H3(a^4) = 32/b^3 + 1 - 4b^3", huff(a4, 3),
             add(add(scale(inv_b3, 32), one), scale(b3, -4))),
            ("H3(1/a^2) = 2/c + 27/c^2", huff(invert(a2), 3),
             add(scale(inv_c, 2), scale(mul(inv_c, inv_c), 27))),
        ]

    def _check(self, label: str, lhs: LaurentSeries, rhs: LaurentSeries, order: int) -> ClaimResult:
        started = time.perf_counter()
        agreement = equal_up_to(_at(lhs, order), _at(rhs, order), order)
        low = min(0, lhs.valuation, rhs.valuation)
        elapsed = time.perf_counter() - started
        if agreement:
            return ClaimResult(label, 'identity', PASS, checked=order - low, seconds=elapsed, order=order)
        self.debug(f"'{label}' differs at q^{agreement.exponent}")
        return ClaimResult(label, 'identity', FAIL, checked=order - low, seconds=elapsed, order=order,
                           witness=Witness(agreement.exponent, agreement.lhs, agreement.rhs))

    def verify_lemma(self, order: int) -> List[ClaimResult]:
        results = [self._check(label, lhs, rhs, order) for label, lhs, rhs in self.lemma_identities(order)]
        started = time.perf_counter()
        agreement = self.check_depth(order)
        results.append(ClaimResult(
            "cubic continued fraction depth stability", 'identity',
            PASS if agreement else FAIL, checked=order, order=order,
            seconds=time.perf_counter() - started,
            witness=None if agreement else Witness(agreement.exponent, agreement.lhs, agreement.rhs)))
        return results

    def verify_relations(self, order: int) -> List[ClaimResult]:
        triple = self.build_triple(order, validate=False)
        checks = self.relations(triple) + self.series_identities(triple)
        return [self._check(label, lhs, rhs, order) for label, lhs, rhs in checks]

    def verify_h3_images(self, order: int) -> List[ClaimResult]:
        triple = self.build_triple(order, validate=False)
        return [self._check(label, lhs, rhs, order) for label, lhs, rhs in self.h3_images(triple)]


def cubic_cf_series(order: int, depth: Optional[int] = None) -> CubicCfSeries:
    return CubicContinuedFraction().expand(order, depth)


def build_thm39_triple(order: int) -> Thm39Triple:
    return CubicContinuedFraction().build_triple(order)


def verify_h3_images(order: int) -> List[ClaimResult]:
    return CubicContinuedFraction().verify_h3_images(order)
