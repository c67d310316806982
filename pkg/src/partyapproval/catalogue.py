'''Rule lookup by name, including composed ``portioning+apportionment`` names.'''

from __future__ import annotations

from functools import partial

from . import portioning
from .apportionment import compose, dhondt, quota_method
from .model import ElectionError
from .rules import EXHAUSTIVE, RULES

PORTIONINGS = {
    'cu': portioning.conditional_utilitarian,
    'rp': portioning.random_priority,
    'nash': portioning.nash,
    'maj': portioning.majoritarian,
}
APPORTIONMENTS = {'dhondt': dhondt, 'quota': quota_method}

RULE_NAMES = tuple(RULES) + tuple(f'{p}+{a}' for p in PORTIONINGS for a in APPORTIONMENTS)


def resolve_rule(name: str, cap: int | None = None, threads: int = 1,
                 seed: int | None = None, trials: int | None = None):
    '''Election -> Committee callable for ``name``.

    ``cap`` and ``threads`` reach the exhaustive rules. Passing ``seed`` or
    ``trials`` switches random priority to sampling.
    '''
    if name in RULES:
        rule = RULES[name]
        if name in EXHAUSTIVE:
            kwargs = {'threads': threads}
            if cap is not None:
                kwargs['cap'] = cap
            rule = partial(rule, **kwargs)
        return rule
    p_name, sep, a_name = name.partition('+')
    if not sep or p_name not in PORTIONINGS or a_name not in APPORTIONMENTS:
        raise ElectionError(f'unknown rule {name!r}; choose from {", ".join(RULE_NAMES)}')
    method = PORTIONINGS[p_name]
    if p_name == 'rp' and (seed is not None or trials is not None):
        method = partial(method, mode='sampled', seed=seed, trials=trials or 10000)
        method.__name__ = 'rp'
    return compose(method, APPORTIONMENTS[a_name])


def resolve_portioning(name: str, seed: int | None = None, trials: int | None = None):
    if name not in PORTIONINGS:
        raise ElectionError(f'unknown portioning {name!r}; choose from {", ".join(PORTIONINGS)}')
    method = PORTIONINGS[name]
    if name == 'rp' and (seed is not None or trials is not None):
        return partial(method, mode='sampled', seed=seed, trials=trials or 10000)
    return method
