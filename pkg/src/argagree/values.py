"""Value-based argumentation: subjective frameworks, value-based degrees,
value impact, and value-based expansions.

Each agent is a preference relation over values; filtering the shared attack
relation through an agent's preferences yields that agent's subjective
framework, and a single semantics applied per subjective framework plays the
role the per-agent semantics play in plain agreement scenarios.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional

from .agreement import (DegreeKind, ExtensionProfile, SimilarityKind,
                        degree_of_agreement, pair_satisfaction)
from .core import ArgFramework, SemanticsKind, check_identifier, enumerate_extensions
from .dynamics import is_expansion, is_normal_expansion
from .errors import DomainError, ValidationError

Pair = tuple[str, str]


def transitive_closure(pairs: Iterable[Pair]) -> frozenset[Pair]:
    closed = set(pairs)
    changed = True
    while changed:
        changed = False
        for x, y in list(closed):
            for u, v in list(closed):
                if y == u and (x, v) not in closed:
                    closed.add((x, v))
                    changed = True
    return frozenset(closed)


def _validate_preference(pref: frozenset[Pair], values: frozenset[str], agent: int) -> None:
    for u, w in pref:
        if u not in values or w not in values:
            raise ValidationError(
                f"agent {agent}: preference ({u},{w}) mentions an undeclared value",
                code="pref-unknown-value")
    for u, w in pref:
        if u == w:
            raise ValidationError(
                f"agent {agent}: preference relation is not irreflexive at {u}",
                code="pref-reflexive")
        if (w, u) in pref:
            raise ValidationError(
                f"agent {agent}: preference relation is not asymmetric at ({u},{w})",
                code="pref-symmetric")
    for x, y in pref:
        for u, v in pref:
            if y == u and (x, v) not in pref:
                raise ValidationError(
                    f"agent {agent}: preference relation is not transitive: "
                    f"({x},{y}) and ({u},{v}) without ({x},{v})",
                    code="pref-not-transitive")


@dataclass(frozen=True)
class ValueFramework:
    """Shared framework plus values, an argument-to-value map, and one
    preference relation per agent.  Attacks must have no self-loops and
    every preference relation must be transitive, irreflexive, and asymmetric."""

    af: ArgFramework
    values: frozenset[str]
    val: tuple[Pair, ...]
    prefs: tuple[frozenset[Pair], ...]

    def __init__(self, af: ArgFramework, values: Iterable[str],
                 val: Mapping[str, str] | Iterable[Pair],
                 prefs: Iterable[Iterable[Pair]]):
        for x, y in af.attacks:
            if x == y:
                raise ValidationError(
                    f"self-attack ({x},{x}) is not allowed in a value framework",
                    code="self-attack")
        values = frozenset(values)
        for v in values:
            check_identifier(v, "value")
        val_map = dict(val.items() if isinstance(val, Mapping) else val)
        if set(val_map) != af.args:
            missing = sorted(af.args - set(val_map))
            extra = sorted(set(val_map) - af.args)
            raise ValidationError(
                f"value map must cover exactly the arguments "
                f"(missing {missing}, extraneous {extra})", code="val-not-total")
        bad = sorted(v for v in val_map.values() if v not in values)
        if bad:
            raise ValidationError(f"value map uses undeclared values: {bad}",
                                  code="val-unknown-value")
        pref_tuple = tuple(frozenset((str(u), str(w)) for u, w in p) for p in prefs)
        if not pref_tuple:
            raise ValidationError("at least one agent (preference relation) is required",
                                  code="no-agents")
        for idx, p in enumerate(pref_tuple):
            _validate_preference(p, values, idx)
        object.__setattr__(self, "af", af)
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "val", tuple(sorted(val_map.items())))
        object.__setattr__(self, "prefs", pref_tuple)

    @property
    def val_map(self) -> dict[str, str]:
        return dict(self.val)

    @property
    def agent_count(self) -> int:
        return len(self.prefs)


@dataclass(frozen=True)
class ValueScenario:
    vaf: ValueFramework
    topic: frozenset[str]
    sem: SemanticsKind

    def __init__(self, vaf: ValueFramework, topic: Iterable[str], sem: SemanticsKind):
        topic = frozenset(topic)
        if not topic <= vaf.af.args:
            raise DomainError(f"topic contains arguments not in the framework: "
                              f"{sorted(topic - vaf.af.args)}")
        object.__setattr__(self, "vaf", vaf)
        object.__setattr__(self, "topic", topic)
        object.__setattr__(self, "sem", SemanticsKind(sem))


def subjective_framework(vaf: ValueFramework, agent_index: int) -> ArgFramework:
    """Drop every attack whose target's value the agent prefers over the source's."""
    if not 0 <= agent_index < len(vaf.prefs):
        raise DomainError(f"agent index {agent_index} out of range "
                          f"(have {len(vaf.prefs)} agents)")
    val = vaf.val_map
    pref = vaf.prefs[agent_index]
    kept = ((x, y) for x, y in vaf.af.attacks if (val[y], val[x]) not in pref)
    return ArgFramework(vaf.af.args, kept)


def to_extension_profile(vscn: ValueScenario, cap: int | None = None) -> ExtensionProfile:
    """Resolve the scenario to per-agent extension sets over the shared framework.

    The result plugs into every degree operation in place of an
    AgreementScenario."""
    exts = tuple(
        enumerate_extensions(subjective_framework(vscn.vaf, i), vscn.sem, cap)
        for i in range(vscn.vaf.agent_count)
    )
    return ExtensionProfile(vscn.vaf.af, vscn.topic, exts)


def value_degree(vscn: ValueScenario, dkind: DegreeKind, skind: SimilarityKind,
                 cap: int | None = None, topic_cap: int | None = None) -> Fraction:
    return degree_of_agreement(to_extension_profile(vscn, cap), dkind, skind,
                               cap, topic_cap)


def value_two_agent_satisfaction(vscn: ValueScenario, i: int, j: int,
                                 skind: SimilarityKind,
                                 cap: int | None = None) -> Fraction:
    return pair_satisfaction(to_extension_profile(vscn, cap), i, j, skind)


def strip_value(vaf: ValueFramework, v: str) -> ValueFramework:
    """Remove every preference pair mentioning v from every agent's relation."""
    if v not in vaf.values:
        raise DomainError(f"unknown value: {v}")
    stripped = tuple(
        frozenset(p for p in pref if v not in p) for pref in vaf.prefs
    )
    return ValueFramework(vaf.af, vaf.values, vaf.val_map, stripped)


def strip_scenario(vscn: ValueScenario, v: str) -> ValueScenario:
    return ValueScenario(strip_value(vscn.vaf, v), vscn.topic, vscn.sem)


def value_impact(vscn: ValueScenario, v: str, dkind: DegreeKind,
                 skind: SimilarityKind, cap: int | None = None,
                 topic_cap: int | None = None) -> Fraction:
    """Signed change of the degree when v is stripped from all agents:
    degree(original) - degree(stripped)."""
    original = value_degree(vscn, dkind, skind, cap, topic_cap)
    stripped = value_degree(strip_scenario(vscn, v), dkind, skind, cap, topic_cap)
    return original - stripped


def vaf_expansion_failure(v1: ValueFramework, v2: ValueFramework) -> Optional[str]:
    if not is_expansion(v1.af, v2.af):
        return "graph-not-expansion"
    if not v1.values <= v2.values:
        return "values-not-superset"
    m1, m2 = v1.val_map, v2.val_map
    if any(m1[a] != m2[a] for a in v1.af.args):
        return "value-map-changed"
    if len(v1.prefs) != len(v2.prefs):
        return "agent-count-changed"
    if any(not p1 <= p2 for p1, p2 in zip(v1.prefs, v2.prefs)):
        return "preferences-shrunk"
    return None


def is_vaf_expansion(v1: ValueFramework, v2: ValueFramework) -> bool:
    return vaf_expansion_failure(v1, v2) is None


def vaf_normal_expansion_failure(v1: ValueFramework, v2: ValueFramework) -> Optional[str]:
    reason = vaf_expansion_failure(v1, v2)
    if reason is not None:
        return reason
    if not is_normal_expansion(v1.af, v2.af):
        return "graph-not-normal-expansion"
    for p1, p2 in zip(v1.prefs, v2.prefs):
        for u, w in p2 - p1:
            if u in v1.values and w in v1.values:
                return "new-preference-on-old-values"
    return None


def is_vaf_normal_expansion(v1: ValueFramework, v2: ValueFramework) -> bool:
    return vaf_normal_expansion_failure(v1, v2) is None


def vaas_expansion_failure(s1: ValueScenario, s2: ValueScenario) -> Optional[str]:
    reason = vaf_normal_expansion_failure(s1.vaf, s2.vaf)
    if reason is not None:
        return reason
    if not s1.topic <= s2.topic:
        return "topic-not-superset"
    if (s2.topic - s1.topic) & s1.vaf.af.args:
        return "topic-gains-old-argument"
    if s1.sem != s2.sem:
        return "semantics-changed"
    return None


def is_vaas_normal_expansion(s1: ValueScenario, s2: ValueScenario) -> bool:
    return vaas_expansion_failure(s1, s2) is None


def value_agreement_delta(s1: ValueScenario, s2: ValueScenario, dkind: DegreeKind,
                          skind: SimilarityKind, cap: int | None = None,
                          topic_cap: int | None = None) -> Fraction:
    d1 = value_degree(s1, dkind, skind, cap, topic_cap)
    d2 = value_degree(s2, dkind, skind, cap, topic_cap)
    return abs(d1 - d2)
