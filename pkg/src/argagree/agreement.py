"""Similarity measures, degrees of satisfaction, and degrees of agreement.

All results are exact rationals (fractions.Fraction).  The degrees of
minimal, mean, and median agreement maximize an aggregate of per-agent
satisfaction over every subset of the topic; the search runs on scaled
integers with a common denominator so the kernel stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Sequence, Union

import numpy as np

from . import _kernels
from .core import ArgFramework, SemanticsKind, enumerate_extensions
from .errors import DomainError, ResourceLimitError

DEFAULT_TOPIC_CAP = 20


class SimilarityKind(str, Enum):
    INTERSECTION = "intersection"
    COMPLEMENT = "complement"
    HAMMING = "hamming"


class DegreeKind(str, Enum):
    MIN = "min"
    MEAN = "mean"
    MEDIAN = "median"


_SIM_INDEX = {SimilarityKind.HAMMING: 0, SimilarityKind.INTERSECTION: 1, SimilarityKind.COMPLEMENT: 2}


def similarity(kind: SimilarityKind, e: Iterable[str], s: Iterable[str],
               t: Iterable[str]) -> Fraction:
    """Similarity of conclusion sets e and s restricted to topic t, in [0, 1]."""
    kind = SimilarityKind(kind)
    e, s, t = frozenset(e), frozenset(s), frozenset(t)
    if kind is SimilarityKind.HAMMING:
        if not t:
            return Fraction(1)
        return Fraction(len(t & e & s) + len((t - e) & (t - s)), len(t))
    if kind is SimilarityKind.INTERSECTION:
        den = len(t & (e | s))
        return Fraction(1) if den == 0 else Fraction(len(t & e & s), den)
    e_c, s_c = t - e, t - s
    den = len(t & (e_c | s_c))
    return Fraction(1) if den == 0 else Fraction(len(t & e_c & s_c), den)


def median(values: Sequence[Fraction]) -> Fraction:
    """Median of a nonempty sequence; even length takes the mean of the middle pair."""
    if not values:
        raise DomainError("median of an empty sequence is undefined")
    ordered = sorted(Fraction(v) for v in values)
    k = len(ordered)
    if k % 2:
        return ordered[k // 2]
    return (ordered[k // 2 - 1] + ordered[k // 2]) / 2


@dataclass(frozen=True)
class AgreementScenario:
    """Framework, topic, and one semantics per agent."""

    af: ArgFramework
    topic: frozenset[str]
    agents: tuple[SemanticsKind, ...]

    def __init__(self, af: ArgFramework, topic: Iterable[str],
                 agents: Iterable[SemanticsKind]):
        topic = frozenset(topic)
        agents = tuple(SemanticsKind(a) for a in agents)
        if not topic <= af.args:
            raise DomainError(f"topic contains arguments not in the framework: "
                              f"{sorted(topic - af.args)}")
        if not agents:
            raise DomainError("a scenario needs at least one agent")
        object.__setattr__(self, "af", af)
        object.__setattr__(self, "topic", topic)
        object.__setattr__(self, "agents", agents)


@dataclass(frozen=True)
class ExtensionProfile:
    """A scenario resolved to one explicit extension set per agent.

    This is what the degree machinery actually consumes; value-based
    scenarios and principle enforcement produce profiles directly.
    """

    af: ArgFramework
    topic: frozenset[str]
    agent_extensions: tuple[tuple[frozenset[str], ...], ...]

    def __init__(self, af: ArgFramework, topic: Iterable[str],
                 agent_extensions: Iterable[Iterable[Iterable[str]]]):
        topic = frozenset(topic)
        if not topic <= af.args:
            raise DomainError(f"topic contains arguments not in the framework: "
                              f"{sorted(topic - af.args)}")
        resolved = []
        for exts in agent_extensions:
            ext_set = tuple(sorted((frozenset(e) for e in exts),
                                   key=lambda e: (len(e), tuple(sorted(e)))))
            if not ext_set:
                raise DomainError("an agent produced an empty extension set")
            resolved.append(ext_set)
        if not resolved:
            raise DomainError("a profile needs at least one agent")
        object.__setattr__(self, "af", af)
        object.__setattr__(self, "topic", topic)
        object.__setattr__(self, "agent_extensions", tuple(resolved))


Scenario = Union[AgreementScenario, ExtensionProfile]


def resolve_profile(scenario: Scenario, cap: int | None = None) -> ExtensionProfile:
    if isinstance(scenario, ExtensionProfile):
        return scenario
    exts = tuple(enumerate_extensions(scenario.af, sem, cap) for sem in scenario.agents)
    return ExtensionProfile(scenario.af, scenario.topic, exts)


def _best_similarity(extensions: Sequence[frozenset[str]], s: frozenset[str],
                     topic: frozenset[str], kind: SimilarityKind) -> Fraction:
    if not extensions:
        raise DomainError("satisfaction over an empty extension set")
    return max(similarity(kind, e, s, topic) for e in extensions)


def satisfaction(af: ArgFramework, topic: Iterable[str], agent: SemanticsKind,
                 s: Iterable[str], kind: SimilarityKind,
                 cap: int | None = None) -> Fraction:
    """Best similarity between s and any extension the agent infers from af."""
    topic = frozenset(topic)
    if not topic <= af.args:
        raise DomainError("topic contains arguments not in the framework")
    exts = enumerate_extensions(af, agent, cap)
    return _best_similarity(exts, frozenset(s), topic, SimilarityKind(kind))


def two_agent_satisfaction(af: ArgFramework, topic: Iterable[str],
                           a1: SemanticsKind, a2: SemanticsKind,
                           kind: SimilarityKind, cap: int | None = None) -> Fraction:
    """Best similarity over one extension choice per agent; commutative."""
    topic = frozenset(topic)
    if not topic <= af.args:
        raise DomainError("topic contains arguments not in the framework")
    exts1 = enumerate_extensions(af, a1, cap)
    exts2 = enumerate_extensions(af, a2, cap)
    kind = SimilarityKind(kind)
    return max(similarity(kind, e1, e2, topic) for e1 in exts1 for e2 in exts2)


def pair_satisfaction(profile: ExtensionProfile, i: int, j: int,
                      kind: SimilarityKind) -> Fraction:
    """Two-agent satisfaction between agents i and j of a resolved profile."""
    n = len(profile.agent_extensions)
    if not (0 <= i < n and 0 <= j < n):
        raise DomainError(f"agent index out of range (have {n} agents)")
    kind = SimilarityKind(kind)
    return max(
        similarity(kind, e1, e2, profile.topic)
        for e1 in profile.agent_extensions[i]
        for e2 in profile.agent_extensions[j]
    )


@lru_cache(maxsize=512)
def _search_all(profile: ExtensionProfile, skind: SimilarityKind
                ) -> dict[DegreeKind, tuple[Fraction, frozenset[str]]]:
    order = sorted(profile.topic)
    t = len(order)
    n_agents = len(profile.agent_extensions)
    if t == 0:
        one = (Fraction(1), frozenset())
        return {k: one for k in DegreeKind}
    pos = {a: i for i, a in enumerate(order)}
    scale, lut = _kernels.similarity_lut(t)
    masks: list[int] = []
    offsets = [0]
    for exts in profile.agent_extensions:
        projected = sorted({sum(1 << pos[a] for a in e & profile.topic) for e in exts})
        masks.extend(projected)
        offsets.append(len(masks))
    vals, wits = _kernels.search_degrees(
        t, _SIM_INDEX[skind],
        lut, np.asarray(masks, dtype=np.int64), np.asarray(offsets, dtype=np.int64),
    )
    dens = {DegreeKind.MIN: scale, DegreeKind.MEAN: scale * n_agents,
            DegreeKind.MEDIAN: 2 * scale}
    out = {}
    for idx, kind in enumerate((DegreeKind.MIN, DegreeKind.MEAN, DegreeKind.MEDIAN)):
        wit = frozenset(order[i] for i in range(t) if (int(wits[idx]) >> i) & 1)
        out[kind] = (Fraction(int(vals[idx]), dens[kind]), wit)
    return out


def _checked_profile(scenario: Scenario, cap: int | None,
                     topic_cap: int | None) -> ExtensionProfile:
    profile = resolve_profile(scenario, cap)
    limit = DEFAULT_TOPIC_CAP if topic_cap is None else topic_cap
    limit = min(limit, _kernels.MAX_KERNEL_BITS)  # kernel masks are 30-bit
    if len(profile.topic) > limit:
        raise ResourceLimitError(
            f"topic has {len(profile.topic)} arguments, powerset-search cap is {limit}",
            cap=limit,
        )
    return profile


def degree_of_agreement(scenario: Scenario, dkind: DegreeKind, skind: SimilarityKind,
                        cap: int | None = None, topic_cap: int | None = None) -> Fraction:
    """Max over topic subsets of the min/mean/median of per-agent satisfaction."""
    profile = _checked_profile(scenario, cap, topic_cap)
    return _search_all(profile, SimilarityKind(skind))[DegreeKind(dkind)][0]


def agreement_witness(scenario: Scenario, dkind: DegreeKind, skind: SimilarityKind,
                      cap: int | None = None, topic_cap: int | None = None) -> frozenset[str]:
    """One maximizing topic subset (fewest members, then lexicographically first)."""
    profile = _checked_profile(scenario, cap, topic_cap)
    return _search_all(profile, SimilarityKind(skind))[DegreeKind(dkind)][1]


def all_degrees(scenario: Scenario, skind: SimilarityKind, cap: int | None = None,
                topic_cap: int | None = None) -> dict[DegreeKind, Fraction]:
    """All three degrees in one powerset sweep (they share the search)."""
    profile = _checked_profile(scenario, cap, topic_cap)
    found = _search_all(profile, SimilarityKind(skind))
    return {k: v[0] for k, v in found.items()}


def agreement_delta(scn1: Scenario, scn2: Scenario, dkind: DegreeKind,
                    skind: SimilarityKind, cap: int | None = None,
                    topic_cap: int | None = None) -> Fraction:
    """Absolute difference of the two scenarios' agreement degrees."""
    d1 = degree_of_agreement(scn1, dkind, skind, cap, topic_cap)
    d2 = degree_of_agreement(scn2, dkind, skind, cap, topic_cap)
    return abs(d1 - d2)
