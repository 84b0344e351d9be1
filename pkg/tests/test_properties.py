"""Seeded structural property suites covering the formal claims that are not
plain numeric examples: monotony guarantees, degree bounds, and the
value-based analogues."""

import random
from itertools import product

import pytest

from argagree.agreement import (AgreementScenario, DegreeKind, SimilarityKind,
                                all_degrees, degree_of_agreement)
from argagree.core import (ArgFramework, SemanticsKind, enumerate_extensions,
                           grounded_fixpoint)
from argagree.dynamics import (aas_expansion_failure, cm_condition,
                               delta_upper_bound, is_normal_expansion,
                               max_common_extension_core,
                               min_agreement_lower_bound)
from argagree.errors import GenerationError
from argagree.synth import GenConfig, gen_expansion, gen_initial_vaas
from argagree.values import subjective_framework, to_extension_profile

from conftest import random_framework, random_normal_expansion

H = SimilarityKind.HAMMING
NA = SemanticsKind.NAIVE
KINDS = (DegreeKind.MIN, DegreeKind.MEAN, DegreeKind.MEDIAN)


def test_grounded_fixpoint_agrees_with_enumeration_500_seeds():
    rng = random.Random(6021)
    for _ in range(500):
        af = random_framework(rng, max_args=12)
        assert enumerate_extensions(af, SemanticsKind.GROUNDED) == (grounded_fixpoint(af),)


def test_min_degree_lower_bound_500_random_scenarios():
    rng = random.Random(2024)
    for _ in range(500):
        af = random_framework(rng, max_args=10)
        topic = frozenset(a for a in af.args if rng.random() < 0.5)
        if not topic:
            topic = frozenset([sorted(af.args)[0]])
        agents = tuple(rng.choice(list(SemanticsKind))
                       for _ in range(rng.randint(1, 4)))
        scn = AgreementScenario(af, topic, agents)
        degree = degree_of_agreement(scn, DegreeKind.MIN, H)
        assert degree >= min_agreement_lower_bound(len(topic))


def _naive_pair(rng):
    af1 = random_framework(rng, max_args=8)
    af2 = random_normal_expansion(rng, af1, max_new=3)
    topic = frozenset(a for a in af1.args if rng.random() < 0.5)
    return af1, af2, topic


def test_full_agreement_survives_conditioned_expansion():
    """All-naive agents that can infer the whole topic and see no new attack
    on that inference keep every degree at 1 across the expansion."""
    rng = random.Random(40)
    qualifying = 0
    attempts = 0
    while qualifying < 300 and attempts < 20000:
        attempts += 1
        af1, af2, topic = _naive_pair(rng)
        if not topic:
            continue
        covering = [e for e in enumerate_extensions(af1, NA)
                    if topic <= e and cm_condition(af1, af2, e)]
        if not covering:
            continue
        qualifying += 1
        agents = (NA,) * rng.randint(1, 3)
        before = all_degrees(AgreementScenario(af1, topic, agents), H)
        after = all_degrees(AgreementScenario(af2, topic, agents), H)
        assert all(v == 1 for v in before.values())
        assert all(v == 1 for v in after.values())
    assert qualifying == 300


def test_min_delta_respects_upper_bound_on_conditioned_pairs():
    rng = random.Random(41)
    qualifying = 0
    attempts = 0
    while qualifying < 300 and attempts < 20000:
        attempts += 1
        af1, af2, topic = _naive_pair(rng)
        if not topic:
            continue
        if not all(cm_condition(af1, af2, e)
                   for e in enumerate_extensions(af1, NA)):
            continue
        agents = (NA,) * rng.randint(1, 3)
        scn1 = AgreementScenario(af1, topic, agents)
        scn2 = AgreementScenario(af2, topic, agents)
        d1 = degree_of_agreement(scn1, DegreeKind.MIN, H)
        d2 = degree_of_agreement(scn2, DegreeKind.MIN, H)
        if d1 < d2:
            continue
        qualifying += 1
        core = max_common_extension_core(af1, agents)
        assert d1 - d2 <= delta_upper_bound(len(topic), len(topic & core))
    assert qualifying == 300


# --- value-based analogues, driven by the synthetic generator ---------------


def _vaas_pairs(seed_base, count, n_args_max=5, n_new_max=3):
    pairs = []
    for seed in range(count):
        cfg = GenConfig(seed=seed_base + seed)
        try:
            base = gen_initial_vaas(cfg, 1 + seed % n_args_max, NA)
            expanded = gen_expansion(cfg, base, 1 + seed % n_new_max,
                                     expand_topic=False)
        except GenerationError:
            continue
        pairs.append((base, expanded))
    return pairs


def _subjective_pairs(base, expanded):
    for i in range(base.vaf.agent_count):
        yield (subjective_framework(base.vaf, i),
               subjective_framework(expanded.vaf, i))


def test_subjective_pairs_stay_normal_expansions_300_pairs():
    """New attackers of old sets can only be new arguments, agent by agent."""
    pairs = _vaas_pairs(7000, 300)
    assert len(pairs) == 300
    for base, expanded in pairs:
        old_args = base.vaf.af.args
        for sub1, sub2 in _subjective_pairs(base, expanded):
            assert is_normal_expansion(sub1, sub2)
            for x, y in sub2.attacks - sub1.attacks:
                if y in old_args:
                    assert x not in old_args


def test_value_based_full_agreement_preserved():
    """Agents whose subjective inference covers the topic unchallenged keep
    all six Hamming degrees at 1 (the value-based analogue of the AAS case)."""
    pairs = _vaas_pairs(8000, 300)
    qualifying = 0
    for base, expanded in pairs:
        if not all(
            any(base.topic <= e and cm_condition(sub1, sub2, e)
                for e in enumerate_extensions(sub1, NA))
            for sub1, sub2 in _subjective_pairs(base, expanded)
        ):
            continue
        qualifying += 1
        before = all_degrees(to_extension_profile(base), H)
        after = all_degrees(to_extension_profile(expanded), H)
        assert all(v == 1 for v in before.values())
        assert all(v == 1 for v in after.values())
    assert qualifying >= 30


def test_value_based_min_delta_respects_upper_bound():
    pairs = _vaas_pairs(9000, 300)
    qualifying = 0
    for base, expanded in pairs:
        if not all(
            all(cm_condition(sub1, sub2, e)
                for e in enumerate_extensions(sub1, NA))
            for sub1, sub2 in _subjective_pairs(base, expanded)
        ):
            continue
        prof1 = to_extension_profile(base)
        prof2 = to_extension_profile(expanded)
        d1 = degree_of_agreement(prof1, DegreeKind.MIN, H)
        d2 = degree_of_agreement(prof2, DegreeKind.MIN, H)
        if d1 < d2:
            continue
        qualifying += 1
        best_core = max(
            (frozenset.intersection(*combo)
             for combo in product(*prof1.agent_extensions)),
            key=len)
        bound = delta_upper_bound(len(expanded.topic),
                                  len(base.topic & best_core))
        assert d1 - d2 <= bound
    assert qualifying >= 30


def test_aas_expansion_diagnostics_never_wrong():
    """Whenever the checker approves, every conjunct really holds."""
    rng = random.Random(90)
    for _ in range(200):
        af1 = random_framework(rng, max_args=6)
        af2 = random_normal_expansion(rng, af1, max_new=2)
        t1 = frozenset(a for a in af1.args if rng.random() < 0.5)
        grow = frozenset(a for a in af2.args - af1.args if rng.random() < 0.5)
        agents = (SemanticsKind.PREFERRED,)
        scn1 = AgreementScenario(af1, t1, agents)
        scn2 = AgreementScenario(af2, t1 | grow, agents)
        reason = aas_expansion_failure(scn1, scn2)
        assert reason is None
