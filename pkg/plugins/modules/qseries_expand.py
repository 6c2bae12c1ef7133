#!/usr/bin/python

from ansible.module_utils.basic import AnsibleModule

try:
    from ansible_collections.qseries.eta_verify.plugins.module_utils.claim_parser import ClaimParser, SeriesEvaluator
    from ansible_collections.qseries.eta_verify.plugins.module_utils.qseries_base import QSeriesBaseModule, argument_spec
    from ansible_collections.qseries.eta_verify.plugins.module_utils.series_core import reduce_mod
except ImportError:
    from plugins.module_utils.claim_parser import ClaimParser, SeriesEvaluator
    from plugins.module_utils.qseries_base import QSeriesBaseModule, argument_spec
    from plugins.module_utils.series_core import reduce_mod

DOCUMENTATION = '''
---
module: qseries_expand
short_description: Expand a series expression to a given order
description:
    - Evaluate an expression over eta factors, q-powers, catalog series and extract/huff/subst
    - Returns every coefficient below the order, optionally reduced modulo an integer
options:
    expression:
        description: Expression in claim-file syntax, e.g. f3^6*f6^6/(f1^2*f2^2)
        required: true
        type: str
    order:
        description: Exclusive exponent bound of the expansion
        required: true
        type: int
    modulus:
        description: Reduce coefficients to least nonnegative residues modulo this integer
        required: false
        type: int
    multiplication:
        description: Series multiplication strategy
        choices: [ auto, schoolbook, kronecker ]
        default: auto
        type: str
    debug:
        description: Log progress through the ansible debug channel
        type: bool
        default: false
'''

EXAMPLES = '''
# Coefficients of CP3 below q^10
- name: Expand CP3
  qseries_expand:
    expression: CP3
    order: 10

# Parity of the partition numbers
- name: Expand 1/f1 modulo 2
  qseries_expand:
    expression: 1/f1
    order: 50
    modulus: 2
'''

RETURN = '''
coefficients:
    description: "[exponent, coefficient] pairs; coefficients are decimal strings"
    type: list
    returned: always
valuation:
    description: Lowest exponent with a nonzero coefficient, or the order for the zero series
    type: int
    returned: always
text:
    description: The expansion as a truncated series
    type: str
    returned: always
'''


def coefficient_rows(series):
    """(exponent, coefficient) for every exponent from min(0, valuation) up to the order."""
    start = min(0, series.valuation)
    return [(exponent, series.coefficient(exponent)) for exponent in range(start, series.order)]


class QSeriesExpandModule(QSeriesBaseModule):
    def __init__(self, module):
        super().__init__(module)
        self.expression = module.params['expression']
        self.order = module.params['order']
        self.modulus = module.params.get('modulus')

    def expand(self):
        """Parse and evaluate the expression."""
        expr = ClaimParser(debug_callback=self.log).parse_expression(self.expression)
        evaluator = SeriesEvaluator(cache=self.cache, multiplication=self.param('multiplication', 'auto'),
                                    debug_callback=self.log)
        self.log(f"Expanding {self.expression} to order {self.order}")
        series = evaluator.evaluate(expr, self.order)
        if self.modulus is not None:
            series = reduce_mod(series, self.modulus)
        return series

    def run_module(self):
        """Run the module."""
        result = dict(changed=False)
        if not self.check_order('order', self.order):
            return result
        if self.modulus is not None and self.modulus < 2:
            self.module.fail_json(msg=f"modulus must be at least 2, got {self.modulus}")
            return result

        series = self.expand()
        result['coefficients'] = [[exponent, str(value)] for exponent, value in coefficient_rows(series)]
        result['valuation'] = series.valuation
        result['text'] = str(series)
        return result


def main():
    module = AnsibleModule(
        argument_spec=argument_spec(
            expression=dict(type='str', required=True),
            order=dict(type='int', required=True),
            modulus=dict(type='int', required=False),
        )
    )

    qseries_expand = QSeriesExpandModule(module)
    result = qseries_expand.run()

    module.exit_json(**result)


if __name__ == '__main__':
    main()
