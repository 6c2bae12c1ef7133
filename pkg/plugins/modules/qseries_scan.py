#!/usr/bin/python

from ansible.module_utils.basic import AnsibleModule

try:
    from ansible_collections.qseries.eta_verify.plugins.module_utils.congruence import MIN_WITNESSES, CongruenceVerifier
    from ansible_collections.qseries.eta_verify.plugins.module_utils.qseries_base import QSeriesBaseModule, argument_spec
except ImportError:
    from plugins.module_utils.congruence import MIN_WITNESSES, CongruenceVerifier
    from plugins.module_utils.qseries_base import QSeriesBaseModule, argument_spec

DOCUMENTATION = '''
---
module: qseries_scan
short_description: Search a catalog series for congruences a(An+B) == 0 mod M
description:
    - Tests every progression An+B with A up to max_step against each modulus
    - At each progression only the largest holding moduli are reported
    - Hits that follow from a catalogued congruence are marked known
options:
    series:
        description: Catalog series name (P, A_CUBIC, CORE3, CORE<t>, C3, CP3, DQ)
        required: true
        type: str
    max_step:
        description: Largest step A to scan
        required: true
        type: int
    moduli:
        description: Moduli to test
        required: true
        type: list
        elements: int
    order:
        description: Truncation order; at least 20 times max_step
        type: int
        default: 2000
    debug:
        description: Log progress through the ansible debug channel
        type: bool
        default: false
'''

EXAMPLES = '''
- name: Rediscover the CP3 congruences
  qseries_scan:
    series: CP3
    max_step: 24
    moduli: [4, 8, 16, 48, 96]
    order: 2000
'''

RETURN = '''
hits:
    description: Congruences holding below the order, sorted by step, offset and modulus
    type: list
    returned: always
new:
    description: Number of hits not implied by a catalogued congruence
    type: int
    returned: always
'''


class QSeriesScanModule(QSeriesBaseModule):
    def __init__(self, module):
        super().__init__(module)
        self.series = module.params['series']
        self.max_step = module.params['max_step']
        self.moduli = module.params['moduli']
        self.order = self.param('order', 2000)

    def run_module(self):
        """Run the module."""
        result = dict(changed=False)
        if not self.check_order('order', self.order):
            return result

        verifier = CongruenceVerifier(self.cache, self.param('min_witnesses', MIN_WITNESSES), self.log)
        hits = verifier.scan_congruences(self.series, self.max_step, self.moduli, self.order)
        result['hits'] = [hit.to_dict() for hit in hits]
        result['new'] = sum(1 for hit in hits if hit.status != 'known')
        self.log(f"{len(hits)} hits, {result['new']} not implied by known congruences")
        return result


def main():
    module = AnsibleModule(
        argument_spec=argument_spec(
            series=dict(type='str', required=True),
            max_step=dict(type='int', required=True),
            moduli=dict(type='list', elements='int', required=True),
            order=dict(type='int', default=2000),
        )
    )

    qseries_scan = QSeriesScanModule(module)
    result = qseries_scan.run()

    module.exit_json(**result)


if __name__ == '__main__':
    main()
