import random
from fractions import Fraction as F

import pytest

from argagree.agreement import (AgreementScenario, DegreeKind, ExtensionProfile,
                                SimilarityKind, agreement_delta,
                                degree_of_agreement, similarity)
from argagree.core import (ArgFramework, SemanticsKind, enumerate_extensions,
                           is_conflict_free)
from argagree.dynamics import (PrincipleKind, aas_expansion_failure,
                               check_principle, cm_condition,
                               conflict_free_supersets, delta_upper_bound,
                               enforce_principle, is_aas_normal_expansion,
                               is_expansion, is_normal_expansion,
                               is_strong_attacker, max_common_extension_core,
                               min_agreement_lower_bound, new_attacks_on,
                               srm_condition)
from argagree.errors import DomainError

from conftest import random_framework, random_normal_expansion

H = SimilarityKind.HAMMING
ST, PR, GR, NA = (SemanticsKind.STAGE, SemanticsKind.PREFERRED,
                  SemanticsKind.GROUNDED, SemanticsKind.NAIVE)
CM, SRM = PrincipleKind.WEAK_CAUTIOUS_MONOTONY, PrincipleKind.STRONG_RELAXED_MONOTONY

AF0 = ArgFramework("abc", [("a", "b"), ("b", "c")])
AF1 = ArgFramework("abcd", [("a", "b"), ("b", "a"), ("b", "c"), ("d", "a")])
AF2 = ArgFramework("abcd", [("a", "b"), ("b", "c"), ("d", "a")])
# mutual pair, then a self-attacker hooked under b
PAIR = ArgFramework("ab", [("a", "b"), ("b", "a")])
PAIR_X = ArgFramework("abc", [("a", "b"), ("b", "a"), ("b", "c"), ("c", "c")])
CYCLE = ArgFramework("abc", [("a", "b"), ("b", "c"), ("c", "a")])
CYCLE_X = ArgFramework("abcd", [("a", "b"), ("b", "c"), ("c", "a"), ("d", "b")])
FREE = ArgFramework("abc")
CONTESTED = ArgFramework("abcde", [("b", "e"), ("c", "e"), ("d", "a"), ("d", "d"),
                              ("e", "b"), ("e", "c"), ("e", "e")])


class TestExpansions:
    def test_expansion_holds(self):
        assert is_expansion(AF0, AF1)

    def test_expansion_is_strict(self):
        assert not is_expansion(AF0, AF0)

    def test_expansion_direction_matters(self):
        assert not is_expansion(AF1, AF0)

    def test_normal_expansion(self):
        assert is_normal_expansion(AF0, AF2)
        assert not is_normal_expansion(AF0, AF1)
        assert not is_normal_expansion(AF0, AF0)


class TestAasNormalExpansion:
    def scenario(self, af, topic, agents=(PR, GR)):
        return AgreementScenario(af, topic, agents)

    def test_new_topic_argument_ok(self):
        assert is_aas_normal_expansion(self.scenario(AF0, "ab"),
                                       self.scenario(AF2, "abd"))

    def test_old_argument_added_to_topic_fails(self):
        assert (aas_expansion_failure(self.scenario(AF0, "ab"),
                                      self.scenario(AF2, "abc"))
                == "topic-gains-old-argument")

    def test_changed_agents_fail(self):
        assert (aas_expansion_failure(self.scenario(AF0, "ab"),
                                      self.scenario(AF2, "ab", (PR, GR, ST)))
                == "agents-changed")

    def test_non_normal_framework_fails_first(self):
        assert (aas_expansion_failure(self.scenario(AF0, "ab"),
                                      self.scenario(AF1, "ab"))
                == "framework-not-normal-expansion")


class TestCmCondition:
    def test_no_new_attacker_on_extension(self):
        assert cm_condition(PAIR, PAIR_X, {"a"})

    def test_empty_extension_trivially_true(self):
        assert cm_condition(PAIR, PAIR_X, set())

    def test_new_attacker_breaks_condition(self):
        assert not cm_condition(AF0, AF2, {"a"})
        assert new_attacks_on(AF0, AF2, {"a"}) == {("d", "a")}

    def test_requires_normal_expansion(self):
        with pytest.raises(DomainError):
            cm_condition(AF0, AF1, {"a"})


class TestStrongAttackers:
    def test_cycle_strong_attacker(self):
        assert is_strong_attacker(CYCLE, CYCLE_X, "c", {"a"})

    def test_non_attacker_is_never_strong(self):
        assert not is_strong_attacker(CYCLE, CYCLE_X, "d", {"a"})

    def test_self_attacker_cannot_be_defended(self):
        assert not is_strong_attacker(FREE, CONTESTED, "d", {"a", "b", "c"})

    def test_matches_subset_search(self):
        from argagree.core import strongly_defends
        from conftest import powerset
        rng = random.Random(31)
        for _ in range(25):
            af1 = random_framework(rng, max_args=4)
            af2 = random_normal_expansion(rng, af1, max_new=2)
            s = frozenset(a for a in af1.args if rng.random() < 0.5)
            subsets = powerset(af2.args)
            for a in sorted(af2.args):
                direct = (any((a, x) in af2.attacks for x in s)
                          and any(is_conflict_free(af2, c) and strongly_defends(af2, c, a)
                                  for c in subsets))
                assert is_strong_attacker(af1, af2, a, s) == direct


class TestSrmCondition:
    def test_cycle_violation_under_stage(self):
        assert not srm_condition(CYCLE, CYCLE_X, {"a"}, ST)

    def test_isolated_addition_is_harmless(self):
        af2 = ArgFramework("abcd", [("a", "b"), ("b", "c")])
        af1 = ArgFramework("abc", [("a", "b"), ("b", "c")])
        for e in enumerate_extensions(af1, PR):
            assert srm_condition(af1, af2, e, PR)

    def test_fig1_expansion_keeps_condition(self):
        assert srm_condition(FREE, CONTESTED, {"a", "b", "c"}, PR)


class TestCheckPrinciple:
    def test_stage_violates_cm_on_pair_example(self):
        verdict = check_principle(PAIR, PAIR_X, ST, CM)
        assert not verdict.holds
        failing = [w for w in verdict.witnesses if w.condition and w.superset is None]
        assert [set(w.extension) for w in failing] == [{"a"}]

    def test_preferred_satisfies_cm_on_pair_example(self):
        assert check_principle(PAIR, PAIR_X, PR, CM).holds

    def test_naive_satisfies_both_principles(self):
        rng = random.Random(13)
        for _ in range(40):
            af1 = random_framework(rng, max_args=6)
            af2 = random_normal_expansion(rng, af1)
            for principle in PrincipleKind:
                assert check_principle(af1, af2, NA, principle).holds

    def test_cm_evidence_names_a_new_attack(self):
        verdict = check_principle(AF0, AF2, PR, CM)
        evid = [w.evidence for w in verdict.witnesses if not w.condition]
        assert ("d", "a") in evid

    def test_requires_normal_expansion(self):
        with pytest.raises(DomainError):
            check_principle(AF0, AF1, PR, CM)

    def test_verdict_consistent_with_witnesses(self):
        rng = random.Random(59)
        for _ in range(60):
            af1 = random_framework(rng, max_args=6)
            af2 = random_normal_expansion(rng, af1, max_new=3)
            sem = rng.choice(list(SemanticsKind))
            principle = rng.choice(list(PrincipleKind))
            verdict = check_principle(af1, af2, sem, principle)
            uncovered = [w for w in verdict.witnesses
                         if w.condition and w.superset is None]
            assert verdict.holds == (not uncovered)
            after = enumerate_extensions(af2, sem)
            for w in verdict.witnesses:
                if w.superset is not None:
                    assert w.condition and w.extension <= w.superset
                    assert w.superset in after
                if not w.condition:
                    assert w.evidence is not None


class TestEnforcement:
    def test_example_pair_recovers_full_topic(self):
        for sem in (PR, GR):
            enforced = enforce_principle(FREE, CONTESTED, {"a", "b", "c"}, sem, SRM)
            assert frozenset("abc") in enforced

    def test_enforced_scenario_deltas_vanish(self):
        before = AgreementScenario(FREE, "abc", (ST, PR, GR))
        profile = ExtensionProfile(
            CONTESTED, "abc",
            [enforce_principle(FREE, CONTESTED, "abc", sem, SRM) for sem in (ST, PR, GR)])
        for dkind in DegreeKind:
            assert agreement_delta(before, profile, dkind, H) == 0

    def test_compliant_pair_unchanged(self):
        assert (enforce_principle(PAIR, PAIR_X, "ab", PR, CM)
                == enumerate_extensions(PAIR_X, PR))

    def test_pair_example_stage_repair(self):
        enforced = enforce_principle(PAIR, PAIR_X, "ab", ST, CM)
        assert [set(e) for e in enforced] == [{"a"}, {"b"}]

    def test_output_always_compliant(self):
        rng = random.Random(41)
        for _ in range(30):
            af1 = random_framework(rng, max_args=5)
            af2 = random_normal_expansion(rng, af1, max_new=3)
            topic = frozenset(a for a in af2.args if rng.random() < 0.5)
            sem = rng.choice(list(SemanticsKind))
            principle = rng.choice(list(PrincipleKind))
            enforced = enforce_principle(af1, af2, topic, sem, principle)
            for e in enumerate_extensions(af1, sem):
                condition = (cm_condition(af1, af2, e)
                             if principle is CM else srm_condition(af1, af2, e, sem))
                if condition:
                    assert any(e <= x for x in enforced)

    def test_conflict_free_supersets(self):
        sups = conflict_free_supersets(PAIR_X, {"a"})
        assert sups == [frozenset("a")]
        assert conflict_free_supersets(FREE, set()) == [
            frozenset(), frozenset("a"), frozenset("ab"), frozenset("abc"),
            frozenset("ac"), frozenset("b"), frozenset("bc"), frozenset("c")]


class TestBounds:
    def test_lower_bound_values(self):
        assert min_agreement_lower_bound(3) == F(1, 3)
        assert min_agreement_lower_bound(1) == 0
        assert min_agreement_lower_bound(4) == F(1, 2)

    def test_lower_bound_rejects_empty_topic(self):
        with pytest.raises(DomainError):
            min_agreement_lower_bound(0)

    def test_delta_upper_bound_values(self):
        assert delta_upper_bound(3, 0) == F(2, 3)
        assert delta_upper_bound(4, 1) == F(1, 4)
        assert delta_upper_bound(4, 2) == 0

    def test_delta_upper_bound_clamps_at_zero(self):
        assert delta_upper_bound(3, 5) == 0


class TestMaxCommonExtensionCore:
    def test_single_agent_unique_extension(self):
        assert max_common_extension_core(FREE, (GR,)) == frozenset("abc")

    def test_grounded_empties_the_core(self):
        assert max_common_extension_core(CONTESTED, (ST, PR, GR)) == frozenset()

    def test_stage_preferred_pair(self):
        assert max_common_extension_core(CONTESTED, (ST, PR)) == frozenset("bc")
