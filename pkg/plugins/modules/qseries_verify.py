#!/usr/bin/python

from ansible.module_utils.basic import AnsibleModule

try:
    from ansible_collections.qseries.eta_verify.plugins.module_utils.claim_parser import ClaimParser
    from ansible_collections.qseries.eta_verify.plugins.module_utils.qseries_base import QSeriesBaseModule, argument_spec
except ImportError:
    from plugins.module_utils.claim_parser import ClaimParser
    from plugins.module_utils.qseries_base import QSeriesBaseModule, argument_spec

DOCUMENTATION = '''
---
module: qseries_verify
short_description: Verify a claim file of q-series identities and congruences
description:
    - Parse a claim file and check every identity and congruence in it
    - Identities are compared coefficient by coefficient below the identity order
    - Congruences are checked on every index below the congruence order
options:
    path:
        description: Path to the claim file on the managed node
        required: false
        type: str
    content:
        description: Claim file text, used instead of path
        required: false
        type: str
    order:
        description: Truncation order for every claim, replacing identity_order and congruence_order
        required: false
        type: int
    identity_order:
        description: Truncation order for identity claims
        type: int
        default: 500
    congruence_order:
        description: Truncation order for congruence and internal claims
        type: int
        default: 2000
    min_witnesses:
        description: Fewest indices a congruence must be tested on
        type: int
        default: 10
    multiplication:
        description: Series multiplication strategy
        choices: [ auto, schoolbook, kronecker ]
        default: auto
        type: str
    workers:
        description: Number of threads evaluating claims; the report keeps file order
        type: int
        default: 1
    fail_on_mismatch:
        description: Fail the task when a claim does not pass
        type: bool
        default: true
    debug:
        description: Log progress through the ansible debug channel
        type: bool
        default: false
'''

EXAMPLES = '''
# Verify the shipped corpus
- name: Verify identities and congruences
  qseries_verify:
    path: corpus/cp3_claims.qid

# Quick check at a low order, reporting instead of failing
- name: Verify inline claims
  qseries_verify:
    content: |
      identity "CP3 odd part": extract(CP3, 2, 1) == 2*f2^2*f3^8*f6^2/f1^4
      congruence "mod 8": CP3[8*n+3] == 0 mod 8
    order: 200
    fail_on_mismatch: false
'''

RETURN = '''
passed:
    description: Whether every claim passed
    type: bool
    returned: always
summary:
    description: Claim totals as text
    type: str
    returned: always
report:
    description: Per-claim results with label, kind, status, checked count and first witness
    type: dict
    returned: always
'''


class QSeriesVerifyModule(QSeriesBaseModule):
    def __init__(self, module):
        super().__init__(module)
        self.path = module.params.get('path')
        self.content = module.params.get('content')
        self.workers = module.params.get('workers') or 1

    def read_claims(self):
        """Claim file text from content or path."""
        if self.content is not None:
            return self.content
        if not self.path:
            self.module.fail_json(msg="One of path or content is required")
            return ''
        self.log(f"Reading claims from {self.path}")
        with open(self.path, encoding='utf-8') as handle:
            return handle.read()

    def run_module(self):
        """Run the module."""
        result = dict(changed=False)
        for name in ('order', 'identity_order', 'congruence_order'):
            if not self.check_order(name, self.params.get(name)):
                return result

        claim_file = ClaimParser(debug_callback=self.log).parse(self.read_claims())
        runner = self.make_runner(self.workers)
        report = runner.run(claim_file, self.params.get('order'))
        return self.finish_report(report, result)


def main():
    module = AnsibleModule(
        argument_spec=argument_spec(
            path=dict(type='str', required=False),
            content=dict(type='str', required=False),
            identity_order=dict(type='int', default=500),
            congruence_order=dict(type='int', default=2000),
            workers=dict(type='int', default=1),
        ),
        mutually_exclusive=[('path', 'content')],
        required_one_of=[('path', 'content')],
    )

    qseries_verify = QSeriesVerifyModule(module)
    result = qseries_verify.run()

    module.exit_json(**result)


if __name__ == '__main__':
    main()
