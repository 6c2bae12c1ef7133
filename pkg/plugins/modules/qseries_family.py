#!/usr/bin/python

from ansible.module_utils.basic import AnsibleModule

try:
    from ansible_collections.qseries.eta_verify.plugins.module_utils.claim_runner import FAMILIES
    from ansible_collections.qseries.eta_verify.plugins.module_utils.qseries_base import QSeriesBaseModule, argument_spec
except ImportError:
    from plugins.module_utils.claim_runner import FAMILIES
    from plugins.module_utils.qseries_base import QSeriesBaseModule, argument_spec

DOCUMENTATION = '''
---
module: qseries_family
short_description: Verify a parameterized congruence family for k = 1 .. kmax
description:
    - cor34 checks CP3(3^k n + 3^k - 2) == CP3(n-1) mod 2
    - thm39 checks CP3(2*3^k n + 3^k - 2) == 0 mod 2*3^(k-1) together with the d(n) recursions,
      the closed form and the relations between the Laurent series a, b and c
options:
    family:
        description: Family to verify
        required: true
        choices: [ cor34, thm39 ]
        type: str
    kmax:
        description: Largest k
        type: int
        default: 4
    order:
        description: Truncation order of CP3 and d
        type: int
        default: 2000
    fail_on_mismatch:
        description: Fail the task when a check does not pass
        type: bool
        default: true
    debug:
        description: Log progress through the ansible debug channel
        type: bool
        default: false
'''

EXAMPLES = '''
- name: Parity family
  qseries_family:
    family: cor34
    kmax: 4

- name: Powers of 3 family at a lower order
  qseries_family:
    family: thm39
    kmax: 3
    order: 1000
'''

RETURN = '''
passed:
    description: Whether every check passed
    type: bool
    returned: always
report:
    description: Per-check results in the verify report format
    type: dict
    returned: always
'''


class QSeriesFamilyModule(QSeriesBaseModule):
    def __init__(self, module):
        super().__init__(module)
        self.family = module.params['family']
        self.kmax = self.param('kmax', 4)
        self.order = self.param('order', 2000)

    def run_module(self):
        """Run the module."""
        result = dict(changed=False)
        if not self.check_order('order', self.order):
            return result
        if self.kmax < 1:
            self.module.fail_json(msg=f"kmax must be at least 1, got {self.kmax}")
            return result

        report = self.make_runner().run_family(self.family, self.kmax, self.order)
        return self.finish_report(report, result)


def main():
    module = AnsibleModule(
        argument_spec=argument_spec(
            family=dict(type='str', required=True, choices=list(FAMILIES)),
            kmax=dict(type='int', default=4),
            order=dict(type='int', default=2000),
        )
    )

    qseries_family = QSeriesFamilyModule(module)
    result = qseries_family.run()

    module.exit_json(**result)


if __name__ == '__main__':
    main()
