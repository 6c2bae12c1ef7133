"""
Arithmetic-progression extraction, the huffing operator and identity checks.
"""

import time
from typing import Callable, List, Optional, Sequence

from .claim_report import ERROR, FAIL, PASS, ClaimResult, Witness
from .qseries_errors import NegativeValuation, QSeriesError, ResidueOutOfRange
from .series_core import (
    LaurentSeries,
    add,
    equal_up_to,
    shift,
    substitute_qk,
    zero,
)


def _check_step(step: int):
    if step < 1:
        raise ValueError(f"Step must be positive, got {step}")


def slice_order(source_order: int, step: int, residue: int) -> int:
    """Number of trusted terms of sum a(step*n + residue) q^n."""
    return max(0, (source_order - residue + step - 1) // step)


class DissectionSlice:
    """The subsequence a(step*n + residue) of a power series, read as a series in q."""

    def __init__(self, source: LaurentSeries, step: int, residue: int):
        _check_step(step)
        if not 0 <= residue < step:
            raise ResidueOutOfRange(residue, step)
        if source.valuation < 0:
            raise NegativeValuation(source.valuation)
        self.source = source
        self.step = step
        self.residue = residue

    @property
    def order(self) -> int:
        return slice_order(self.source.order, self.step, self.residue)

    def materialize(self) -> LaurentSeries:
        order = self.order
        coeffs = [self.source.coefficient(self.step * n + self.residue) for n in range(order)]
        return LaurentSeries(0, coeffs, order)


def extract(s: LaurentSeries, step: int, residue: int) -> LaurentSeries:
    """sum_n a(step*n + residue) q^n."""
    return DissectionSlice(s, step, residue).materialize()


def huff(s: LaurentSeries, step: int) -> LaurentSeries:
    """Keep the terms whose exponent is divisible by step; q is not relabelled."""
    _check_step(step)
    if s.is_zero:
        return s
    coeffs = [c if (s.valuation + i) % step == 0 else 0 for i, c in enumerate(s.coeffs)]
    return LaurentSeries(s.valuation, coeffs, s.order)


def dissect(s: LaurentSeries, step: int) -> List[LaurentSeries]:
    return [extract(s, step, r) for r in range(step)]


def reconstruct(slices: Sequence[LaurentSeries], step: int) -> LaurentSeries:
    """sum_r q^r * slices[r](q^step)."""
    result: Optional[LaurentSeries] = None
    for r, part in enumerate(slices):
        term = shift(substitute_qk(part, step), r)
        result = term if result is None else add(result, term)
    return result if result is not None else zero(0)


def verify_reconstruction(s: LaurentSeries, step: int):
    rebuilt = reconstruct(dissect(s, step), step)
    return equal_up_to(s, rebuilt, s.order)


def verify_identity(lhs, rhs, order: int, label: str = '',
                    evaluator: Optional[Callable] = None,
                    debug_callback: Optional[Callable[[str], None]] = None) -> ClaimResult:
    """Evaluate both sides to ``order`` and compare every coefficient below it.

    Without an evaluator both sides must already be LaurentSeries.
    Evaluation errors become an ``error`` result rather than propagating.
    """
    if debug_callback:
        debug_callback(f"Verifying identity '{label}' at order {order}")
    started = time.perf_counter()
    try:
        left = evaluator(lhs, order) if evaluator else lhs
        right = evaluator(rhs, order) if evaluator else rhs
        agreement = equal_up_to(left, right, order)
    except QSeriesError as e:
        return ClaimResult(label, 'identity', ERROR, seconds=time.perf_counter() - started,
                           message=str(e), order=order)

    checked = max(0, order - min(0, left.valuation, right.valuation))
    elapsed = time.perf_counter() - started
    if agreement:
        return ClaimResult(label, 'identity', PASS, checked=checked, seconds=elapsed, order=order)
    if debug_callback:
        debug_callback(f"Identity '{label}' differs at q^{agreement.exponent}: "
                       f"{agreement.lhs} != {agreement.rhs}")
    witness = Witness(agreement.exponent, agreement.lhs, agreement.rhs)
    return ClaimResult(label, 'identity', FAIL, checked=checked, witness=witness,
                       seconds=elapsed, order=order)
