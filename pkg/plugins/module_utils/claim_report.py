"""
Verification results: one ClaimResult per claim, gathered into a Report.

Integers are serialized as decimal strings so that JSON consumers never
round them.
"""

from typing import Any, Dict, List, Optional

PASS = 'pass'
FAIL = 'fail'
ERROR = 'error'


def _decimal(value: Optional[int]) -> Optional[str]:
    return None if value is None else str(value)


class Witness:
    """First failing index with the two integers that disagree."""

    __slots__ = ('index', 'lhs', 'rhs', 'detail')

    def __init__(self, index: int, lhs: int, rhs: int, detail: Optional[str] = None):
        self.index = index
        self.lhs = lhs
        self.rhs = rhs
        self.detail = detail

    def to_dict(self) -> Dict[str, Any]:
        result = {
            'index': str(self.index),
            'lhs': str(self.lhs),
            'rhs': str(self.rhs),
        }
        if self.detail:
            result['detail'] = self.detail
        return result

    def __repr__(self):
        return f"Witness(index={self.index}, lhs={self.lhs}, rhs={self.rhs})"


class ClaimResult:
    def __init__(self, label: str, kind: str, status: str, checked: int = 0,
                 witness: Optional[Witness] = None, seconds: float = 0.0,
                 message: Optional[str] = None, order: Optional[int] = None):
        self.label = label
        self.kind = kind
        self.status = status
        self.checked = checked
        self.witness = witness
        self.seconds = seconds
        self.message = message
        self.order = order

    @property
    def passed(self) -> bool:
        return self.status == PASS

    def to_dict(self) -> Dict[str, Any]:
        return {
            'label': self.label,
            'kind': self.kind,
            'status': self.status,
            'checked': str(self.checked),
            'witness': self.witness.to_dict() if self.witness else None,
            'order': _decimal(self.order),
            'seconds': round(self.seconds, 6),
            'message': self.message,
        }

    def __repr__(self):
        return f"ClaimResult({self.label!r}, {self.kind}, {self.status}, checked={self.checked})"


class Report:
    """Suite outcome; passes iff every claim passes."""

    def __init__(self, order: Optional[int] = None, claims: Optional[List[ClaimResult]] = None):
        self.order = order
        self.claims = list(claims or [])

    def add(self, result: ClaimResult):
        self.claims.append(result)

    def extend(self, results):
        self.claims.extend(results)

    @property
    def passed(self) -> bool:
        return all(claim.passed for claim in self.claims)

    def totals(self) -> Dict[str, int]:
        totals = {PASS: 0, FAIL: 0, ERROR: 0}
        for claim in self.claims:
            totals[claim.status] += 1
        return totals

    def to_dict(self) -> Dict[str, Any]:
        return {
            'order': _decimal(self.order),
            'claims': [claim.to_dict() for claim in self.claims],
            'totals': self.totals(),
            'passed': self.passed,
        }

    def summary(self) -> str:
        totals = self.totals()
        return (f"{len(self.claims)} claims: {totals[PASS]} passed, "
                f"{totals[FAIL]} failed, {totals[ERROR]} errors")
