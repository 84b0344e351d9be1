"""Expansion relations, relaxed-monotony principles, and their bounds.

A principle pairs a condition on (initial framework, expansion, extension)
with the requirement that conditioned extensions survive as subsets of some
extension of the expansion.  Two conditions are implemented: "no new argument
attacks the extension" (weak cautious monotony) and "no inferred strong
attacker of the extension exists" (strong relaxed monotony).
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from itertools import product
from typing import Iterable, Optional, Sequence, Union

from .agreement import (AgreementScenario, ExtensionProfile, SimilarityKind,
                        _best_similarity)
from .core import (ArgFramework, SemanticsKind, enumerate_extensions,
                   is_conflict_free, strongly_defends)
from .errors import DomainError, EnforcementInfeasibleError, ResourceLimitError

MAX_CORE_CHOICES = 1_000_000


class PrincipleKind(str, Enum):
    WEAK_CAUTIOUS_MONOTONY = "cm"
    STRONG_RELAXED_MONOTONY = "srm"


@dataclass(frozen=True)
class ExtensionWitness:
    """Evaluation record for one extension of the initial framework.

    ``evidence`` explains a false condition: the new attack pair for cm,
    the strong attacker for srm.  A true condition with ``superset`` None
    is a principle violation.
    """

    extension: frozenset[str]
    condition: bool
    superset: Optional[frozenset[str]]
    evidence: Union[tuple[str, str], str, None]


@dataclass(frozen=True)
class PrincipleVerdict:
    holds: bool
    witnesses: tuple[ExtensionWitness, ...]


def is_expansion(af1: ArgFramework, af2: ArgFramework) -> bool:
    """af2 strictly extends af1's arguments and attacks."""
    return af1 != af2 and af1.args <= af2.args and af1.attacks <= af2.attacks


def is_normal_expansion(af1: ArgFramework, af2: ArgFramework) -> bool:
    """Expansion that adds no attack between two pre-existing arguments."""
    if not is_expansion(af1, af2):
        return False
    return not any(x in af1.args and y in af1.args
                   for x, y in af2.attacks - af1.attacks)


def aas_expansion_failure(scn1: AgreementScenario,
                          scn2: AgreementScenario) -> Optional[str]:
    """Reason code of the first failing conjunct, or None if scn2 normally expands scn1."""
    if not is_normal_expansion(scn1.af, scn2.af):
        return "framework-not-normal-expansion"
    if not scn1.topic <= scn2.topic:
        return "topic-not-superset"
    if (scn2.topic - scn1.topic) & scn1.af.args:
        return "topic-gains-old-argument"
    if scn1.agents != scn2.agents:
        return "agents-changed"
    return None


def is_aas_normal_expansion(scn1: AgreementScenario, scn2: AgreementScenario) -> bool:
    return aas_expansion_failure(scn1, scn2) is None


def _require_normal(af1: ArgFramework, af2: ArgFramework) -> None:
    if not is_normal_expansion(af1, af2):
        raise DomainError("principles are only defined over normal expansions")


def new_attacks_on(af1: ArgFramework, af2: ArgFramework,
                   e: Iterable[str]) -> frozenset[tuple[str, str]]:
    """Attacks in af2 whose source is a new argument and whose target is in e."""
    e = frozenset(e)
    new_args = af2.args - af1.args
    return frozenset((x, y) for x, y in af2.attacks if x in new_args and y in e)


def cm_condition(af1: ArgFramework, af2: ArgFramework, e: Iterable[str]) -> bool:
    """True iff no new argument attacks a member of e."""
    _require_normal(af1, af2)
    e = frozenset(e)
    if not e <= af1.args:
        raise DomainError("extension must come from the initial framework")
    return not new_attacks_on(af1, af2, e)


@lru_cache(maxsize=65536)
def _strongly_defendable(af: ArgFramework, a: str, cap: int | None) -> bool:
    """Some conflict-free subset of af strongly defends a.  Strong defense is
    monotone in the defending set, so the existential over all conflict-free
    sets is decided over the maximal ones (the naive extensions)."""
    return any(strongly_defends(af, n, a)
               for n in enumerate_extensions(af, SemanticsKind.NAIVE, cap))


def is_strong_attacker(af1: ArgFramework, af2: ArgFramework, a: str,
                       s: Iterable[str], cap: int | None = None) -> bool:
    """a attacks s in af2 and some conflict-free subset of af2 strongly defends a."""
    if not is_expansion(af1, af2):
        raise DomainError("strong attackers are defined over expansions")
    s = frozenset(s)
    if not s <= af1.args:
        raise DomainError("attacked set must come from the initial framework")
    if a not in af2.args:
        raise DomainError(f"unknown argument: {a}")
    if not any((a, x) in af2.attacks for x in s):
        return False
    return _strongly_defendable(af2, a, cap)


def find_strong_attacker(af1: ArgFramework, af2: ArgFramework, e: Iterable[str],
                         sem: SemanticsKind, cap: int | None = None) -> Optional[str]:
    """First (by extension order, then name) inferred strong attacker of e in af2."""
    e = frozenset(e)
    seen: set[str] = set()
    for ext in enumerate_extensions(af2, sem, cap):
        for a in sorted(ext):
            if a in seen:
                continue
            seen.add(a)
            if is_strong_attacker(af1, af2, a, e, cap):
                return a
    return None


def srm_condition(af1: ArgFramework, af2: ArgFramework, e: Iterable[str],
                  sem: SemanticsKind, cap: int | None = None) -> bool:
    """True iff no extension of af2 under sem contains a strong attacker of e."""
    _require_normal(af1, af2)
    e = frozenset(e)
    if not e <= af1.args:
        raise DomainError("extension must come from the initial framework")
    return find_strong_attacker(af1, af2, e, sem, cap) is None


def check_principle(af1: ArgFramework, af2: ArgFramework, sem: SemanticsKind,
                    principle: PrincipleKind, cap: int | None = None) -> PrincipleVerdict:
    """Evaluate the principle instance on this concrete expansion pair."""
    _require_normal(af1, af2)
    sem = SemanticsKind(sem)
    principle = PrincipleKind(principle)
    after = enumerate_extensions(af2, sem, cap)
    witnesses = []
    holds = True
    for e in enumerate_extensions(af1, sem, cap):
        evidence: Union[tuple[str, str], str, None] = None
        if principle is PrincipleKind.WEAK_CAUTIOUS_MONOTONY:
            broken = new_attacks_on(af1, af2, e)
            condition = not broken
            if broken:
                evidence = min(broken)
        else:
            attacker = find_strong_attacker(af1, af2, e, sem, cap)
            condition = attacker is None
            evidence = attacker
        superset = None
        if condition:
            superset = next((x for x in after if e <= x), None)
            if superset is None:
                holds = False
        witnesses.append(ExtensionWitness(e, condition, superset, evidence))
    return PrincipleVerdict(holds, tuple(witnesses))


def conflict_free_supersets(af: ArgFramework, e: Iterable[str]) -> list[frozenset[str]]:
    """All conflict-free supersets of e within af (including e itself)."""
    e = frozenset(e)
    if not is_conflict_free(af, e):
        return []
    rest = sorted(af.args - e)
    found: list[frozenset[str]] = []

    def grow(current: frozenset[str], idx: int) -> None:
        found.append(current)
        for k in range(idx, len(rest)):
            cand = rest[k]
            widened = current | {cand}
            if (cand, cand) in af.attacks:
                continue
            if any((cand, x) in af.attacks or (x, cand) in af.attacks for x in current):
                continue
            grow(widened, k + 1)

    grow(e, 0)
    return found


def enforce_principle(af1: ArgFramework, af2: ArgFramework, topic2: Iterable[str],
                      sem: SemanticsKind, principle: PrincipleKind,
                      cap: int | None = None) -> tuple[frozenset[str], ...]:
    """Smallest satisfaction-maximizing extension of sem(af2) that covers every
    conditioned extension of sem(af1).

    Keeps the original extensions and adds, per uncovered extension, its
    conflict-free superset with the best Hamming satisfaction against the
    agent's own semantics (ties: larger topic overlap, then lexicographic).
    Adding extensions can only raise satisfaction, so degrees never drop.
    """
    _require_normal(af1, af2)
    topic2 = frozenset(topic2)
    if not topic2 <= af2.args:
        raise DomainError("topic contains arguments not in the expanded framework")
    sem = SemanticsKind(sem)
    principle = PrincipleKind(principle)
    after = enumerate_extensions(af2, sem, cap)
    result = list(after)
    for e in enumerate_extensions(af1, sem, cap):
        if principle is PrincipleKind.WEAK_CAUTIOUS_MONOTONY:
            condition = cm_condition(af1, af2, e)
        else:
            condition = srm_condition(af1, af2, e, sem, cap)
        if not condition or any(e <= x for x in result):
            continue
        candidates = conflict_free_supersets(af2, e)
        if not candidates:
            raise EnforcementInfeasibleError(
                f"no conflict-free superset of {sorted(e)} exists in the expansion"
            )
        best = min(
            candidates,
            key=lambda s: (-_best_similarity(after, s, topic2, SimilarityKind.HAMMING),
                           -len(s & topic2), tuple(sorted(s))),
        )
        result.append(best)
    unique = set(result)
    return tuple(sorted(unique, key=lambda s: (len(s), tuple(sorted(s)))))


def min_agreement_lower_bound(topic_size: int) -> Fraction:
    """Tight lower bound of the Hamming degree of minimal agreement."""
    if topic_size < 1:
        raise DomainError("topic must be nonempty")
    return Fraction(topic_size // 2, topic_size)


def delta_upper_bound(topic2_size: int, common_core_size: int) -> Fraction:
    """Tight upper bound of a non-increasing min-degree delta:
    1 - (floor(|T'|/2) + |T ∩ E∩|) / |T'|, clamped at 0."""
    if topic2_size < 1:
        raise DomainError("expanded topic must be nonempty")
    if common_core_size < 0:
        raise DomainError("core size must be nonnegative")
    bound = 1 - Fraction(topic2_size // 2 + common_core_size, topic2_size)
    return max(bound, Fraction(0))


def max_common_extension_core(af: ArgFramework, agents: Sequence[SemanticsKind],
                              cap: int | None = None) -> frozenset[str]:
    """Largest intersection over one extension choice per agent (ties: lexicographic)."""
    if not agents:
        raise DomainError("need at least one agent")
    ext_sets = [enumerate_extensions(af, SemanticsKind(a), cap) for a in agents]
    choices = 1
    for exts in ext_sets:
        choices *= len(exts)
    if choices > MAX_CORE_CHOICES:
        raise ResourceLimitError(
            f"{choices} extension combinations exceed the core-search cap "
            f"of {MAX_CORE_CHOICES}", cap=MAX_CORE_CHOICES)
    best: frozenset[str] | None = None
    for combo in product(*ext_sets):
        inter = frozenset.intersection(*combo)
        if (best is None or len(inter) > len(best)
                or (len(inter) == len(best) and tuple(sorted(inter)) < tuple(sorted(best)))):
            best = inter
    return best
