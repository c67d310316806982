'''Party-approval committee elections: portioning, apportionment, rules and axiom checks.'''

from .apportionment import compose, dhondt, quota_method
from .axioms import (
    AxiomVerdict, check_committee_monotonic, check_core_bruteforce, check_ejr, check_jr, check_pjr_mincut,
    check_pr,
)
from .catalogue import resolve_rule
from .instances import paper_example, random_election
from .model import (
    Ballot, CapacityError, Committee, ConvergenceError, DomainError, Election, ElectionError, Portioning,
    parse_election, pav_score, serialize_election,
)
from .portioning import conditional_utilitarian, majoritarian, nash, random_priority
from .rules import RULES, ls_pav, pav_exact, seq_pav, seq_phragmen

__all__ = [
    'Ballot', 'Election', 'Committee', 'Portioning', 'ElectionError', 'CapacityError', 'DomainError',
    'ConvergenceError', 'parse_election', 'serialize_election', 'pav_score',
    'conditional_utilitarian', 'majoritarian', 'random_priority', 'nash',
    'dhondt', 'quota_method', 'compose', 'resolve_rule', 'RULES', 'pav_exact', 'ls_pav', 'seq_pav',
    'seq_phragmen', 'AxiomVerdict', 'check_jr', 'check_pjr_mincut', 'check_ejr', 'check_core_bruteforce',
    'check_pr', 'check_committee_monotonic', 'paper_example', 'random_election',
]
