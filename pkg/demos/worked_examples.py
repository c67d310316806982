"""Walk through the three small worked elections.

Run with ``python demos/worked_examples.py``.
"""

from partyapproval import rules
from partyapproval.apportionment import compose, dhondt, quota_method
from partyapproval.axioms import check_core_bruteforce, check_ejr
from partyapproval.instances import paper_example
from partyapproval.model import format_committee, format_portioning, pav_score
from partyapproval.portioning import conditional_utilitarian, majoritarian, nash, random_priority


def show(title, election, committee):
    print(f'  {title:<22} {format_committee(election, committee):<24} pav={pav_score(election, committee)}')


def first():
    e = paper_example('ex1').election
    print(f'ex1: n={e.n}, k={e.k}')
    shares = conditional_utilitarian(e)
    print('  shares', format_portioning(e, shares))
    w = dhondt(shares, e.k)
    show('cu + dhondt', e, w)
    v = check_ejr(e, w)
    # the cohesive group behind p3 deserves two seats and gets none
    print('  ejr', 'PASS' if v.passed else f'FAIL {v.witness}')
    show('maj + dhondt', e, compose(majoritarian, dhondt)(e))


def second():
    e = paper_example('ex2').election
    print(f'ex2: n={e.n}, k={e.k}')
    for name, method in (('random priority', random_priority), ('nash', nash)):
        shares = method(e)
        print(f'  {name:<16}', format_portioning(e, shares))
        for a in (dhondt, quota_method):
            show(f'  -> {a.__name__}', e, a(shares, e.k))


def third():
    e = paper_example('ex3').election
    print(f'ex3: n={e.n}, k={e.k}')
    w = compose(majoritarian, dhondt)(e)
    show('maj + dhondt', e, w)
    v = check_core_bruteforce(e, w)
    print('  core FAIL, deviation', v.witness['deviation'], 'coalition', v.witness['coalition'])
    for name, rule in (('pav', rules.pav_exact), ('lspav', rules.ls_pav)):
        w = rule(e)
        show(name, e, w)
        print('    core', 'PASS' if check_core_bruteforce(e, w).passed else 'FAIL')


if __name__ == '__main__':
    first()
    second()
    third()
