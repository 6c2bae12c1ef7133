#!/usr/bin/python

from .claim_runner import DEFAULT_IDENTITY_ORDER, ClaimRunner
from .congruence import DEFAULT_CONGRUENCE_ORDER, MIN_WITNESSES, SeriesCache
from .qseries_errors import QSeriesError
from .series_core import AUTO, MULTIPLICATION_METHODS

# Options shared by every qseries module
COMMON_ARGUMENT_SPEC = dict(
    order=dict(type='int', required=False),
    multiplication=dict(type='str', default=AUTO, choices=list(MULTIPLICATION_METHODS)),
    min_witnesses=dict(type='int', default=MIN_WITNESSES),
    fail_on_mismatch=dict(type='bool', default=True),
    debug=dict(type='bool', default=False),
)


def argument_spec(**options):
    spec = dict(COMMON_ARGUMENT_SPEC)
    spec.update(options)
    return spec


class QSeriesBaseModule:
    """
    Parameter handling, logging and failure reporting for the qseries modules
    """
    def __init__(self, module):
        self.module = module
        self.params = module.params
        self.debug_enabled = bool(self.params.get('debug'))
        self.cache = SeriesCache()

    def log(self, message):
        """
        Logging using ansible debug
        """
        if self.debug_enabled:
            self.module.debug(message)

    def param(self, name, default=None):
        value = self.params.get(name)
        return default if value is None else value

    def check_order(self, name, value):
        if value is not None and value < 1:
            self.module.fail_json(msg=f"{name} must be a positive integer, got {value}")
            return False
        return True

    def make_runner(self, workers=1):
        order = self.param('order')
        return ClaimRunner(
            identity_order=order or self.param('identity_order', DEFAULT_IDENTITY_ORDER),
            congruence_order=order or self.param('congruence_order', DEFAULT_CONGRUENCE_ORDER),
            min_witnesses=self.param('min_witnesses', MIN_WITNESSES),
            multiplication=self.param('multiplication', AUTO),
            workers=workers,
            cache=self.cache,
            debug_callback=self.log,
        )

    def finish_report(self, report, result):
        """Attach a report to the result; fail the task when claims fail unless told otherwise."""
        result['report'] = report.to_dict()
        result['passed'] = report.passed
        result['summary'] = report.summary()
        self.log(result['summary'])
        if not report.passed and self.param('fail_on_mismatch', True):
            failed = [claim.label for claim in report.claims if not claim.passed]
            self.module.fail_json(msg=f"{len(failed)} claim(s) did not pass: {', '.join(failed)}", **result)
        return result

    def run_module(self):
        raise NotImplementedError

    def run(self):
        """Run the module, turning library errors into a failed task."""
        try:
            return self.run_module()
        except QSeriesError as e:
            self.log(f"Library error: {e}")
            self.module.fail_json(msg=str(e))
        except (OSError, ValueError) as e:
            self.module.fail_json(msg=str(e))
        return dict(changed=False)
