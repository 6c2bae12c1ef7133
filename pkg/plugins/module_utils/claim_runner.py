"""
Runs a parsed claim file, or one of the built-in congruence families, and
collects the outcome in a Report.
"""

import time
from concurrent.futures import ThreadPoolExecutor
from typing import Callable, Optional

from .claim_parser import (
    ClaimFile,
    CongruenceStatement,
    IdentityClaim,
    InternalStatement,
    NamedRef,
    SeriesEvaluator,
)
from .claim_report import ERROR, ClaimResult, Report
from .congruence import (
    DEFAULT_CONGRUENCE_ORDER,
    INTERNAL,
    MIN_WITNESSES,
    CongruenceClaim,
    CongruenceVerifier,
    SeriesCache,
)
from .cubic_cf import CubicContinuedFraction
from .dissection import verify_identity
from .qseries_errors import QSeriesError
from .series_core import AUTO

DEFAULT_IDENTITY_ORDER = 500
DEFAULT_LAURENT_ORDER = 100
FAMILIES = ('cor34', 'thm39')


class ClaimRunner:
    """Verifies claims one by one; a broken claim never stops the suite.

    An explicit ``order`` replaces both per-kind defaults.
    """

    def __init__(self, identity_order: int = DEFAULT_IDENTITY_ORDER,
                 congruence_order: int = DEFAULT_CONGRUENCE_ORDER,
                 min_witnesses: int = MIN_WITNESSES, multiplication: str = AUTO,
                 workers: int = 1, cache: Optional[SeriesCache] = None,
                 debug_callback: Optional[Callable[[str], None]] = None):
        self.identity_order = identity_order
        self.congruence_order = congruence_order
        self.min_witnesses = min_witnesses
        self.multiplication = multiplication
        self.workers = max(1, workers)
        self.cache = cache if cache is not None else SeriesCache()
        self.debug_callback = debug_callback

    def debug(self, message):
        if self.debug_callback:
            self.debug_callback(message)

    def verifier(self) -> CongruenceVerifier:
        return CongruenceVerifier(self.cache, self.min_witnesses, self.debug_callback)

    def run(self, claim_file: ClaimFile, order: Optional[int] = None) -> Report:
        identity_order = order or self.identity_order
        congruence_order = order or self.congruence_order
        evaluator = SeriesEvaluator(claim_file.definitions, self.cache, self.multiplication, self.debug_callback)
        claims = claim_file.claims
        self.debug(f"Running {len(claims)} claims with {self.workers} worker(s)")

        def check(claim):
            if isinstance(claim, IdentityClaim):
                return verify_identity(claim.lhs, claim.rhs, identity_order, claim.label,
                                       evaluator=evaluator, debug_callback=self.debug_callback)
            return self._run_congruence(claim, congruence_order, evaluator)

        if self.workers > 1 and len(claims) > 1:
            with ThreadPoolExecutor(max_workers=self.workers) as pool:
                results = list(pool.map(check, claims))
        else:
            results = [check(claim) for claim in claims]

        # without an explicit order the report carries the highest order any claim used
        report_order = order or max((result.order for result in results if result.order), default=identity_order)
        report = Report(report_order, results)
        self.debug(report.summary())
        return report

    def _run_congruence(self, statement, order: int, evaluator: SeriesEvaluator) -> ClaimResult:
        started = time.perf_counter()
        try:
            series = statement.name
            if statement.name in evaluator.definitions:
                series = evaluator.evaluate(NamedRef(statement.name), order)
            if isinstance(statement, InternalStatement):
                claim = CongruenceClaim(series, statement.step, statement.offset, statement.modulus,
                                        kind=INTERNAL, other_step=statement.other_step,
                                        other_offset=statement.other_offset, label=statement.label)
            elif isinstance(statement, CongruenceStatement):
                claim = CongruenceClaim(series, statement.step, statement.offset, statement.modulus,
                                        label=statement.label)
            else:
                raise TypeError(f"Not a congruence statement: {statement!r}")
            return self.verifier().verify(claim, order)
        except (QSeriesError, ValueError) as e:
            self.debug(f"Claim '{statement.label}' could not be evaluated: {e}")
            return ClaimResult(statement.label, statement.kind, ERROR, order=order,
                               seconds=time.perf_counter() - started, message=str(e))

    def run_family(self, family: str, kmax: int, order: Optional[int] = None) -> Report:
        """cor34: CP3(3^k n + 3^k - 2) == CP3(n-1) mod 2.
        thm39: CP3 modulo 2 * 3^(k-1) with the d(n) chain and the a, b, c relations.
        """
        if family not in FAMILIES:
            raise ValueError(f"Unknown family '{family}', expected one of {', '.join(FAMILIES)}")
        order = order or self.congruence_order
        self.debug(f"Running family {family} for k <= {kmax} at order {order}")
        verifier = self.verifier()
        if family == 'cor34':
            report = Report(order, verifier.verify_cor34(kmax, order))
        else:
            report = Report(order, verifier.verify_thm39_chain(kmax, order))
            cubic = CubicContinuedFraction(self.debug_callback)
            laurent_order = min(order, DEFAULT_LAURENT_ORDER)
            report.extend(cubic.verify_lemma(laurent_order))
            report.extend(cubic.verify_relations(laurent_order))
            report.extend(cubic.verify_h3_images(laurent_order))
        self.debug(report.summary())
        return report
