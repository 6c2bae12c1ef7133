"""
Built-in generating functions, bounded verification of partition
congruences, the powers-of-3 family for CP3 and a congruence scanner.
"""

import re
import threading
import time
from math import gcd
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Union

from .claim_report import ERROR, FAIL, PASS, ClaimResult, Witness
from .dissection import slice_order
from .eta_engine import EtaQuotientSpec, eta_quotient
from .qseries_errors import InsufficientOrder, NegativeValuation, ResidueOutOfRange, UnknownSeries
from .series_core import LaurentSeries, truncate

DEFAULT_CONGRUENCE_ORDER = 2000
MIN_WITNESSES = 10
SCAN_WITNESSES_PER_STEP = 20

VANISHING = 'vanishing'
INTERNAL = 'internal'

KNOWN = 'known'
VERIFIED_TO_ORDER = 'verified to order only'


class SeriesCatalogEntry:
    __slots__ = ('name', 'spec', 'description')

    def __init__(self, name: str, spec: EtaQuotientSpec, description: str):
        self.name = name
        self.spec = spec
        self.description = description

    def __repr__(self):
        return f"SeriesCatalogEntry({self.name!r}, {self.spec.render()})"


def _entry(name, factors, description):
    return name, SeriesCatalogEntry(name, EtaQuotientSpec(factors), description)


SERIES_CATALOG: Dict[str, SeriesCatalogEntry] = dict([
    _entry('P', [(1, -1)], "partitions p(n)"),
    _entry('A_CUBIC', [(1, -1), (2, -1)], "cubic partitions a(n)"),
    _entry('CORE3', [(3, 3), (1, -1)], "3-core partitions c_3(n)"),
    _entry('C3', [(3, 3), (6, 3), (1, -1), (2, -1)], "3-core cubic partitions C_3(n)"),
    _entry('CP3', [(3, 6), (6, 6), (1, -2), (2, -2)], "3-core cubic bipartitions CP_3(n)"),
    _entry('DQ', [(1, 2), (2, 2), (3, 2), (6, 2)], "d(n), coefficients of (f1f2f3f6)^2"),
])

_CORE_PATTERN = re.compile(r'^CORE(\d+)$')


def catalog_entry(name: str) -> SeriesCatalogEntry:
    """Catalog lookup; CORE<t> names the t-core series f_t^t/f1 for any t >= 2."""
    if name in SERIES_CATALOG:
        return SERIES_CATALOG[name]
    match = _CORE_PATTERN.match(name)
    if match and int(match.group(1)) >= 2:
        t = int(match.group(1))
        return SeriesCatalogEntry(name, EtaQuotientSpec([(t, t), (1, -1)]), f"{t}-core partitions c_{t}(n)")
    raise UnknownSeries(name)


def is_builtin(name: str) -> bool:
    try:
        catalog_entry(name)
    except UnknownSeries:
        return False
    return True


def builtin_series(name: str, order: int) -> LaurentSeries:
    return eta_quotient(catalog_entry(name).spec, order)


class SeriesCache:
    """Catalog expansions shared between claims.

    Keeps the highest order computed per name; lookups at a lower order are
    served by truncation.
    """

    def __init__(self, expand: Callable[[str, int], LaurentSeries] = builtin_series):
        self._expand = expand
        self._series: Dict[str, LaurentSeries] = {}
        self._lock = threading.Lock()

    def get(self, name: str, order: int) -> LaurentSeries:
        with self._lock:
            cached = self._series.get(name)
        if cached is None or cached.order < order:
            computed = self._expand(name, order)
            with self._lock:
                current = self._series.get(name)
                if current is None or current.order < computed.order:
                    self._series[name] = computed
            cached = computed
        return cached if cached.order == order else truncate(cached, order)

    def __contains__(self, name):
        with self._lock:
            return name in self._series

    def clear(self):
        with self._lock:
            self._series.clear()


class CongruenceClaim:
    """a(step*n + offset) == 0 mod modulus, or == a(other_step*n + other_offset) mod modulus."""

    def __init__(self, series: Union[str, LaurentSeries], step: int, offset: int, modulus: int,
                 kind: str = VANISHING, other_step: Optional[int] = None,
                 other_offset: Optional[int] = None, label: Optional[str] = None):
        if step < 1:
            raise ValueError(f"Step must be positive, got {step}")
        if modulus < 2:
            raise ValueError(f"Modulus must be at least 2, got {modulus}")
        if kind == VANISHING:
            if not 0 <= offset < step:
                raise ResidueOutOfRange(offset, step)
        elif kind == INTERNAL:
            if other_step is None or other_offset is None:
                raise ValueError("Internal congruence needs a second progression")
            if other_step < 1:
                raise ValueError(f"Step must be positive, got {other_step}")
            if offset < 0 or other_offset < -1:
                raise ValueError("Offsets must be nonnegative (the second may be -1)")
        else:
            raise ValueError(f"Unknown congruence kind: {kind}")
        self.series = series
        self.step = step
        self.offset = offset
        self.modulus = modulus
        self.kind = kind
        self.other_step = other_step
        self.other_offset = other_offset
        self.label = label or self.describe()

    @property
    def series_name(self) -> str:
        return self.series if isinstance(self.series, str) else 'series'

    def describe(self) -> str:
        name = self.series_name
        left = f"{name}({self.step}n+{self.offset})"
        if self.kind == VANISHING:
            return f"{left} == 0 mod {self.modulus}"
        sign = '-' if self.other_offset < 0 else '+'
        right = f"{name}({self.other_step}n{sign}{abs(self.other_offset)})"
        return f"{left} == {right} mod {self.modulus}"

    def key(self):
        return (self.step, self.offset, self.modulus)

    def __eq__(self, other):
        if not isinstance(other, CongruenceClaim):
            return NotImplemented
        return (self.series_name, self.kind, self.step, self.offset, self.modulus,
                self.other_step, self.other_offset) == \
            (other.series_name, other.kind, other.step, other.offset, other.modulus,
             other.other_step, other.other_offset)

    def __hash__(self):
        return hash((self.series_name, self.kind, self.step, self.offset, self.modulus))

    def __repr__(self):
        return f"CongruenceClaim({self.describe()!r})"


class ScanHit(CongruenceClaim):
    """Vanishing congruence found by the scanner, with its witness count and provenance."""

    def __init__(self, series, step, offset, modulus, checked: int, status: str):
        super().__init__(series, step, offset, modulus)
        self.checked = checked
        self.status = status

    def to_dict(self):
        return {
            'series': self.series_name,
            'step': self.step,
            'offset': self.offset,
            'modulus': self.modulus,
            'checked': self.checked,
            'status': self.status,
        }


def _vanishing(series, step, offset, modulus, label):
    return CongruenceClaim(series, step, offset, modulus, label=label)


KNOWN_CONGRUENCES: List[CongruenceClaim] = [
    _vanishing('CP3', 8, 3, 8, "CP3(8n+3) == 0 mod 8"),
    _vanishing('CP3', 8, 7, 16, "CP3(8n+7) == 0 mod 16"),
    _vanishing('CP3', 24, 7, 16, "CP3(24n+7) == 0 mod 16"),
    _vanishing('CP3', 24, 13, 4, "CP3(24n+13) == 0 mod 4"),
    _vanishing('CP3', 24, 19, 8, "CP3(24n+19) == 0 mod 8"),
    _vanishing('CP3', 24, 15, 16, "CP3(24n+15) == 0 mod 16"),
    _vanishing('CP3', 24, 21, 16, "CP3(24n+21) == 0 mod 16"),
    _vanishing('CP3', 24, 11, 48, "CP3(24n+11) == 0 mod 48"),
    _vanishing('CP3', 24, 23, 96, "CP3(24n+23) == 0 mod 96"),
    _vanishing('CP3', 2, 1, 2, "CP3(2n+1) == 0 mod 2"),
] + [
    _vanishing('CP3', 2 * 3 ** k, 3 ** k - 2, 2 * 3 ** (k - 1),
               f"CP3({2 * 3 ** k}n+{3 ** k - 2}) == 0 mod {2 * 3 ** (k - 1)}")
    for k in range(2, 5)
] + [
    _vanishing('C3', 24, 21, 4, "C3(24n+21) == 0 mod 4"),
    _vanishing('C3', 18, 14, 9, "C3(18n+14) == 0 mod 9"),
    _vanishing('P', 5, 4, 5, "p(5n+4) == 0 mod 5"),
    _vanishing('P', 7, 5, 7, "p(7n+5) == 0 mod 7"),
    _vanishing('P', 11, 6, 11, "p(11n+6) == 0 mod 11"),
]


def implied_by_known(series: str, step: int, offset: int, modulus: int,
                     known: Iterable[CongruenceClaim] = None) -> bool:
    """True if catalogued congruences a(A'n+B') == 0 mod M' with M | M' cover a(An+B).

    The progression An+B is split into classes modulo the lcm of the steps
    involved; every class must lie inside one catalogued progression.
    """
    covering = [
        claim for claim in (KNOWN_CONGRUENCES if known is None else known)
        if claim.kind == VANISHING and claim.series_name == series and claim.modulus % modulus == 0
    ]
    if not covering:
        return False
    period = step
    for claim in covering:
        period = period * claim.step // gcd(period, claim.step)
    for j in range(period // step):
        index = offset + step * j
        if not any(index % claim.step == claim.offset for claim in covering):
            return False
    return True


def closed_form_coefficient(k: int) -> int:
    """3^(k-1) (9^k - (-1)^k) / 5, the multiplier of d(n) in CP3(3^k n + 3^k - 2)."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    numerator = 9 ** k - (-1) ** k
    if numerator % 5:
        raise ArithmeticError(f"9^{k} - (-1)^{k} is not divisible by 5")
    return 3 ** (k - 1) * (numerator // 5)


def recursive_coefficient(k: int) -> int:
    """Same multiplier from alpha_1 = 2 and alpha_(k+1) = -3 alpha_k + 2 * 27^k."""
    if k < 1:
        raise ValueError(f"k must be positive, got {k}")
    alpha = 2
    for j in range(1, k):
        alpha = -3 * alpha + 2 * 27 ** j
    return alpha


class CongruenceVerifier:
    def __init__(self, cache: Optional[SeriesCache] = None, min_witnesses: int = MIN_WITNESSES,
                 debug_callback: Optional[Callable[[str], None]] = None):
        self.cache = cache if cache is not None else SeriesCache()
        self.min_witnesses = min_witnesses
        self.debug_callback = debug_callback

    def debug(self, message):
        if self.debug_callback:
            self.debug_callback(message)

    def resolve(self, series: Union[str, LaurentSeries], order: int) -> LaurentSeries:
        if isinstance(series, LaurentSeries):
            if series.order < order:
                raise InsufficientOrder(order, series.order)
            return series
        return self.cache.get(series, order)

    def _require_witnesses(self, count: int, step: int, offset: int, order: int, label: str):
        if count < self.min_witnesses:
            needed = step * (self.min_witnesses - 1) + offset + 1
            raise InsufficientOrder(needed, order, f"congruence '{label}'")

    def verify_congruence(self, claim: CongruenceClaim, order: int = DEFAULT_CONGRUENCE_ORDER) -> ClaimResult:
        self.debug(f"Verifying congruence '{claim.label}' at order {order}")
        started = time.perf_counter()
        count = slice_order(order, claim.step, claim.offset)
        self._require_witnesses(count, claim.step, claim.offset, order, claim.label)
        series = self.resolve(claim.series, order)
        if series.valuation < 0:
            raise NegativeValuation(series.valuation)

        for n in range(count):
            value = series.coefficient(claim.step * n + claim.offset)
            if value % claim.modulus:
                self.debug(f"'{claim.label}' fails at n={n}: {value} mod {claim.modulus} = {value % claim.modulus}")
                witness = Witness(n, value, 0, detail=f"residue {value % claim.modulus} mod {claim.modulus}")
                return ClaimResult(claim.label, 'congruence', FAIL, checked=n + 1, witness=witness,
                                   seconds=time.perf_counter() - started, order=order)
        return ClaimResult(claim.label, 'congruence', PASS, checked=count,
                           seconds=time.perf_counter() - started, order=order)

    def verify_internal(self, claim: CongruenceClaim, order: int = DEFAULT_CONGRUENCE_ORDER) -> ClaimResult:
        """a(An+B) == a(Cn+D) mod M on the common range; a(-1) is taken as 0."""
        self.debug(f"Verifying internal congruence '{claim.label}' at order {order}")
        started = time.perf_counter()
        count = min(slice_order(order, claim.step, claim.offset),
                    slice_order(order, claim.other_step, claim.other_offset))
        self._require_witnesses(count, max(claim.step, claim.other_step),
                                max(claim.offset, claim.other_offset), order, claim.label)
        series = self.resolve(claim.series, order)
        if series.valuation < 0:
            raise NegativeValuation(series.valuation)

        for n in range(count):
            left = series.coefficient(claim.step * n + claim.offset)
            right = series.coefficient(claim.other_step * n + claim.other_offset)
            if (left - right) % claim.modulus:
                self.debug(f"'{claim.label}' fails at n={n}: {left} vs {right} mod {claim.modulus}")
                return ClaimResult(claim.label, 'internal', FAIL, checked=n + 1,
                                   witness=Witness(n, left, right),
                                   seconds=time.perf_counter() - started, order=order)
        return ClaimResult(claim.label, 'internal', PASS, checked=count,
                           seconds=time.perf_counter() - started, order=order)

    def verify(self, claim: CongruenceClaim, order: int = DEFAULT_CONGRUENCE_ORDER) -> ClaimResult:
        if claim.kind == INTERNAL:
            return self.verify_internal(claim, order)
        return self.verify_congruence(claim, order)

    def _sequence_check(self, label: str, kind: str, count: int, order: int,
                        left: Callable[[int], int], right: Callable[[int], int],
                        modulus: Optional[int] = None) -> ClaimResult:
        """Compare left(n) with right(n) (exactly, or mod ``modulus``) for n < count."""
        started = time.perf_counter()
        if count < self.min_witnesses:
            return ClaimResult(label, kind, ERROR, order=order,
                               message=f"only {count} testable indices at order {order}")
        for n in range(count):
            lhs, rhs = left(n), right(n)
            differs = (lhs - rhs) % modulus if modulus else lhs != rhs
            if differs:
                self.debug(f"'{label}' fails at n={n}: {lhs} != {rhs}")
                return ClaimResult(label, kind, FAIL, checked=n + 1, witness=Witness(n, lhs, rhs),
                                   seconds=time.perf_counter() - started, order=order)
        return ClaimResult(label, kind, PASS, checked=count,
                           seconds=time.perf_counter() - started, order=order)

    def verify_thm39_chain(self, kmax: int, order: int = DEFAULT_CONGRUENCE_ORDER) -> List[ClaimResult]:
        """CP3 modulo powers of 3 through d(n), the coefficients of (f1f2f3f6)^2."""
        if kmax < 1:
            raise ValueError(f"kmax must be at least 1, got {kmax}")
        self.debug(f"Verifying the powers-of-3 family for k <= {kmax} at order {order}")
        cp3 = self.resolve('CP3', order)
        d = self.resolve('DQ', order)
        odd_part = eta_quotient(EtaQuotientSpec([(2, 2), (3, 8), (6, 2), (1, -4)]), slice_order(order, 2, 1))

        def cp(index):
            return cp3.coefficient(index)

        results = [
            self._sequence_check(
                "CP3(2n+1) = 2 [q^n] f2^2f3^8f6^2/f1^4", 'identity', slice_order(order, 2, 1), order,
                lambda n: cp(2 * n + 1), lambda n: 2 * odd_part.coefficient(n)),
            self._sequence_check(
                "CP3(3n+1) = 2d(n) + 27CP3(n-1)", 'identity', slice_order(order, 3, 1), order,
                lambda n: cp(3 * n + 1), lambda n: 2 * d.coefficient(n) + 27 * cp(n - 1)),
            self._sequence_check(
                "d(3n+2) = -3d(n)", 'identity', slice_order(order, 3, 2), order,
                lambda n: d.coefficient(3 * n + 2), lambda n: -3 * d.coefficient(n)),
            self._sequence_check(
                "CP3(9n+7) = 48d(n) + 729CP3(n-1)", 'identity', slice_order(order, 9, 7), order,
                lambda n: cp(9 * n + 7), lambda n: 48 * d.coefficient(n) + 729 * cp(n - 1)),
        ]

        for k in range(1, kmax + 1):
            power3 = 3 ** k
            step, offset = power3, power3 - 2
            alpha = closed_form_coefficient(k)
            if alpha != recursive_coefficient(k):
                results.append(ClaimResult(
                    f"closed-form multiplier for k={k}", 'identity', FAIL, checked=1, order=order,
                    witness=Witness(k, alpha, recursive_coefficient(k))))
            count = slice_order(order, step, offset)
            results.append(self._sequence_check(
                f"k={k}: CP3({step}n+{offset}) = {alpha}d(n) + {27 ** k}CP3(n-1)", 'identity', count, order,
                lambda n, s=step, o=offset: cp(s * n + o),
                lambda n, a=alpha, k=k: a * d.coefficient(n) + 27 ** k * cp(n - 1)))
            # mod 3^0 says nothing
            if k >= 2:
                results.append(self._sequence_check(
                    f"k={k}: CP3({step}n+{offset}) == 0 mod {3 ** (k - 1)}", 'congruence', count, order,
                    lambda n, s=step, o=offset: cp(s * n + o), lambda n: 0, modulus=3 ** (k - 1)))
            big_step = 2 * power3
            results.append(self._sequence_check(
                f"k={k}: CP3({big_step}n+{offset}) == 0 mod {2 * 3 ** (k - 1)}", 'congruence',
                slice_order(order, big_step, offset), order,
                lambda n, s=big_step, o=offset: cp(s * n + o), lambda n: 0, modulus=2 * 3 ** (k - 1)))
        return results

    def verify_cor34(self, kmax: int, order: int = DEFAULT_CONGRUENCE_ORDER) -> List[ClaimResult]:
        """CP3(3^k n + 3^k - 2) == CP3(n-1) mod 2 for k = 1 .. kmax."""
        if kmax < 1:
            raise ValueError(f"kmax must be at least 1, got {kmax}")
        results = []
        for k in range(1, kmax + 1):
            step = 3 ** k
            claim = CongruenceClaim('CP3', step, step - 2, 2, kind=INTERNAL, other_step=1, other_offset=-1,
                                    label=f"k={k}: CP3({step}n+{step - 2}) == CP3(n-1) mod 2")
            results.append(self.verify_internal(claim, order))
        return results

    def scan_congruences(self, series: Union[str, LaurentSeries], max_step: int, moduli: Sequence[int],
                         order: int = DEFAULT_CONGRUENCE_ORDER) -> List[ScanHit]:
        """Every a(An+B) == 0 mod M with A <= max_step and M from ``moduli`` that holds below ``order``.

        At each (A, B) only the moduli not dividing another hit are kept.
        """
        if max_step < 1:
            raise ValueError(f"max_step must be positive, got {max_step}")
        if any(m < 2 for m in moduli):
            raise ValueError("Moduli must be at least 2")
        needed = SCAN_WITNESSES_PER_STEP * max_step
        if order < needed:
            raise InsufficientOrder(needed, order, "scan")
        values = self.resolve(series, order)
        if values.valuation < 0:
            raise NegativeValuation(values.valuation)
        name = series if isinstance(series, str) else 'series'
        menu = sorted(set(moduli))
        self.debug(f"Scanning {name} for steps up to {max_step} with moduli {menu} at order {order}")

        hits = []
        for step in range(1, max_step + 1):
            for offset in range(step):
                count = slice_order(order, step, offset)
                terms = [values.coefficient(step * n + offset) for n in range(count)]
                holding = [m for m in menu if all(t % m == 0 for t in terms)]
                maximal = [m for m in holding if not any(o != m and o % m == 0 for o in holding)]
                for modulus in maximal:
                    status = KNOWN if implied_by_known(name, step, offset, modulus) else VERIFIED_TO_ORDER
                    hits.append(ScanHit(series, step, offset, modulus, count, status))
        hits.sort(key=lambda hit: hit.key())
        self.debug(f"Scan of {name} found {len(hits)} congruences")
        return hits


def verify_congruence(claim: CongruenceClaim, order: int = DEFAULT_CONGRUENCE_ORDER,
                      min_witnesses: int = MIN_WITNESSES) -> ClaimResult:
    return CongruenceVerifier(min_witnesses=min_witnesses).verify_congruence(claim, order)


def verify_internal(claim: CongruenceClaim, order: int = DEFAULT_CONGRUENCE_ORDER,
                    min_witnesses: int = MIN_WITNESSES) -> ClaimResult:
    return CongruenceVerifier(min_witnesses=min_witnesses).verify_internal(claim, order)


def verify_thm39_chain(kmax: int, order: int = DEFAULT_CONGRUENCE_ORDER) -> List[ClaimResult]:
    return CongruenceVerifier().verify_thm39_chain(kmax, order)


def verify_cor34(kmax: int, order: int = DEFAULT_CONGRUENCE_ORDER) -> List[ClaimResult]:
    return CongruenceVerifier().verify_cor34(kmax, order)


def scan_congruences(series, max_step: int, moduli: Sequence[int],
                     order: int = DEFAULT_CONGRUENCE_ORDER) -> List[ScanHit]:
    return CongruenceVerifier().scan_congruences(series, max_step, moduli, order)
