"""Shared fixtures: the worked example frameworks, seeded random generators,
and brute-force oracles implemented straight from the definitions (kept
independent of the library's bitmask search)."""

from __future__ import annotations

import random
from itertools import chain, combinations

import pytest

from argagree.core import ArgFramework, SemanticsKind


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # compile the jit kernels once so timed tests measure the search, not the jit
    af = ArgFramework("ab", [("a", "b")])
    from argagree.agreement import (AgreementScenario, DegreeKind,
                                    SimilarityKind, degree_of_agreement)
    from argagree.core import enumerate_extensions

    enumerate_extensions(af, SemanticsKind.STAGE)
    scn = AgreementScenario(af, {"a"}, (SemanticsKind.GROUNDED,))
    degree_of_agreement(scn, DegreeKind.MIN, SimilarityKind.HAMMING)


@pytest.fixture
def contested_af():
    """Five-argument framework with two self-attackers hitting the topic."""
    return ArgFramework("abcde", [("b", "e"), ("c", "e"), ("d", "a"), ("d", "d"),
                                  ("e", "b"), ("e", "c"), ("e", "e")])


@pytest.fixture
def mutual_pair_af():
    """One isolated argument expanded by a mutual pair attacking it."""
    return ArgFramework("abc", [("b", "a"), ("b", "c"), ("c", "a"), ("c", "b")])


def powerset(items):
    items = sorted(items)
    return [frozenset(c) for c in
            chain.from_iterable(combinations(items, r) for r in range(len(items) + 1))]


def oracle_extensions(af: ArgFramework, kind: SemanticsKind):
    """Literal-definition subset scan; only for small frameworks."""
    atts = af.attacks
    attackers = {a: {x for x, y in atts if y == a} for a in af.args}

    def cf(s):
        return not any(x in s and y in s for x, y in atts)

    def attacked_by(s):
        return {y for x, y in atts if x in s}

    def acc(a, s):
        return attackers[a] <= attacked_by(s)

    def adm(s):
        return cf(s) and all(acc(a, s) for a in s)

    def maximal(sets):
        return [s for s in sets if not any(s < t for t in sets)]

    subsets = powerset(af.args)
    kind = SemanticsKind(kind)
    if kind is SemanticsKind.NAIVE:
        result = maximal([s for s in subsets if cf(s)])
    elif kind is SemanticsKind.STAGE:
        cf_sets = [s for s in subsets if cf(s)]
        ranges = {s: s | attacked_by(s) for s in cf_sets}
        result = [s for s in cf_sets
                  if not any(ranges[s] < ranges[t] for t in cf_sets)]
    elif kind is SemanticsKind.COMPLETE:
        result = [s for s in subsets
                  if adm(s) and all(a in s for a in af.args if acc(a, s))]
    elif kind is SemanticsKind.PREFERRED:
        result = maximal([s for s in subsets if adm(s)])
    else:  # grounded: minimal complete
        complete = [s for s in subsets
                    if adm(s) and all(a in s for a in af.args if acc(a, s))]
        result = [s for s in complete if not any(t < s for t in complete)]
    return tuple(sorted(result, key=lambda e: (len(e), tuple(sorted(e)))))


def random_framework(rng: random.Random, max_args: int = 10, min_args: int = 1,
                     p_attack: float = 0.2, self_attacks: bool = True) -> ArgFramework:
    n = rng.randint(min_args, max_args)
    names = [f"x{i}" for i in range(n)]
    attacks = set()
    for a in names:
        for b in names:
            if a == b and not self_attacks:
                continue
            if rng.random() < p_attack:
                attacks.add((a, b))
    return ArgFramework(names, attacks)


def random_normal_expansion(rng: random.Random, af: ArgFramework,
                            max_new: int = 4, p_attack: float = 0.25) -> ArgFramework:
    k = rng.randint(1, max_new)
    new = [f"y{i}" for i in range(k)]
    args = sorted(af.args) + new
    attacks = set(af.attacks)
    for a in new:
        for b in args:
            if rng.random() < p_attack:
                attacks.add((a, b))
    for a in sorted(af.args):
        for b in new:
            if rng.random() < p_attack:
                attacks.add((a, b))
    return ArgFramework(args, attacks)
