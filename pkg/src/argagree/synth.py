"""Seeded generation of value-based scenarios and the two experiments:
agreement delta vs. expansion size, and value impact vs. framework size.

Everything is a pure function of the master seed.  Per-repetition sub-seeds
are derived by a fixed splitmix64 chain over (master seed, experiment tag,
size, repetition index), so repetitions are independent of iteration order.
"""

from __future__ import annotations

import hashlib
import random
from dataclasses import dataclass, replace
from fractions import Fraction
from typing import Iterable, TextIO

from .agreement import DegreeKind, SimilarityKind, all_degrees
from .core import ArgFramework, SemanticsKind
from .errors import DomainError, GenerationError
from .scenario_io import document_for_vaas, serialize_document
from .values import (ValueFramework, ValueScenario, is_vaas_normal_expansion,
                     strip_scenario, to_extension_profile, transitive_closure)

EXPERIMENT_CAP = 26  # initial size <= 10 plus up to 15 new arguments

CSV_HEADER = "experiment,size_param,degree_kind,topic_mode,normalized,reps,seed,mean_delta"

_MASK64 = (1 << 64) - 1
_SEM_INDEX = {k: i for i, k in enumerate(SemanticsKind)}


def _mix64(x: int) -> int:
    # splitmix64 finalizer
    x &= _MASK64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _MASK64
    return x ^ (x >> 31)


def derive_seed(master: int, tag: str, *parts: int) -> int:
    """Sub-seed rule: fold the tag (first 8 sha256 bytes) and each integer
    part into the master seed with a splitmix64 step per component."""
    x = _mix64(master & _MASK64)
    tag_bits = int.from_bytes(hashlib.sha256(tag.encode()).digest()[:8], "big")
    x = _mix64(x ^ tag_bits)
    for p in parts:
        x = _mix64(x ^ (p & _MASK64))
    return x


def _scenario_digest(vscn: ValueScenario) -> int:
    text = serialize_document(document_for_vaas(vscn))
    return int.from_bytes(hashlib.sha256(text.encode()).digest()[:8], "big")


@dataclass(frozen=True)
class GenConfig:
    seed: int
    agents: int = 3
    attack_prob: Fraction = Fraction(1, 2)
    max_targets: int = 3
    prefs_per_agent: int = 5
    topic_prob: Fraction = Fraction(1, 2)
    retry_limit: int = 50

    def __post_init__(self):
        if not 0 <= self.attack_prob <= 1 or not 0 <= self.topic_prob <= 1:
            raise DomainError("probabilities must lie in [0, 1]")
        if self.agents < 1 or self.max_targets < 1 or self.retry_limit < 1:
            raise DomainError("agents, max_targets, and retry_limit must be >= 1")
        if self.prefs_per_agent < 0:
            raise DomainError("prefs_per_agent must be >= 0")


@dataclass(frozen=True)
class ExperimentRecord:
    experiment: str
    size_param: int
    kind: DegreeKind
    raw_mean: Fraction
    normalized_mean: Fraction
    reps: int
    seed: int
    topic_mode: str


def _random_attacks(rng: random.Random, sources: list[str], pool: list[str],
                    cfg: GenConfig) -> set[tuple[str, str]]:
    """Up to max_targets attacks per source, each drawn with attack_prob;
    targets uniform over the pool minus the source (no self-attacks)."""
    attacks: set[tuple[str, str]] = set()
    for src in sources:
        for _ in range(cfg.max_targets):
            if rng.random() >= cfg.attack_prob:
                continue
            others = len(pool) - (1 if src in pool else 0)
            if others == 0:
                continue
            idx = rng.randrange(others)
            src_pos = pool.index(src) if src in pool else len(pool)
            if idx >= src_pos:
                idx += 1
            attacks.add((src, pool[idx]))
    return attacks


def _try_add_preference(rel: frozenset, cand: tuple[str, str],
                        allowed: frozenset,
                        frozen_pairs: frozenset | None = None,
                        old_values: frozenset | None = None):
    """Transitive closure of rel + cand if the closure stays irreflexive and
    asymmetric and every pair in it (including derived ones) still reverses
    some attack; during expansions it must also derive no fresh pair over old
    values only, which would break the normal-expansion property."""
    if cand in rel:
        return None
    closed = transitive_closure(rel | {cand})
    if not closed <= allowed:
        return None
    for u, w in closed:
        if u == w or (w, u) in closed:
            return None
    if old_values is not None:
        for u, w in closed - frozen_pairs:
            if u in old_values and w in old_values:
                return None
    return closed


def _generate_prefs(rng: random.Random, cfg: GenConfig, slots: int,
                    attack_list: list[tuple[str, str]], val: dict[str, str],
                    all_attacks: Iterable[tuple[str, str]],
                    start: Iterable[frozenset] | None = None,
                    old_values: frozenset | None = None) -> list[frozenset]:
    """Per agent, one acceptance-retried proposal per slot; each proposal
    reverses a random attack at the value level.  Exhausted slots are skipped."""
    prefs = []
    allowed = frozenset((val[y], val[x]) for x, y in all_attacks)
    basis = list(start) if start is not None else [frozenset()] * cfg.agents
    for base_rel in basis:
        rel = base_rel
        for _ in range(slots):
            if not attack_list:
                break
            for _ in range(cfg.retry_limit):
                x, y = attack_list[rng.randrange(len(attack_list))]
                closed = _try_add_preference(rel, (val[y], val[x]), allowed,
                                             base_rel, old_values)
                if closed is not None:
                    rel = closed
                    break
        prefs.append(rel)
    return prefs


def gen_initial_vaas(cfg: GenConfig, n_args: int, sem: SemanticsKind,
                     topic_pool: int | None = None) -> ValueScenario:
    """Fresh scenario: one distinct value per argument, random attacks,
    nonempty random topic, and attack-opposing transitive preferences.

    topic_pool restricts topic candidates to the first k arguments in
    creation order (the impact experiment's fixed-topic rule)."""
    if n_args < 1:
        raise DomainError("n_args must be >= 1")
    sem = SemanticsKind(sem)
    rng = random.Random(derive_seed(cfg.seed, "init", n_args, _SEM_INDEX[sem]))
    names = [f"a{i}" for i in range(n_args)]
    val = {f"a{i}": f"v{i}" for i in range(n_args)}
    attacks = _random_attacks(rng, names, names, cfg)

    pool = names if topic_pool is None else names[:topic_pool]
    topic: set[str] = set()
    for _ in range(cfg.retry_limit):
        topic = {a for a in pool if rng.random() < cfg.topic_prob}
        if topic:
            break
    else:
        raise GenerationError("could not draw a nonempty topic", seed=cfg.seed)

    prefs = _generate_prefs(rng, cfg, cfg.prefs_per_agent, sorted(attacks), val, attacks)
    vaf = ValueFramework(ArgFramework(names, attacks), set(val.values()), val, prefs)
    return ValueScenario(vaf, topic, sem)


def gen_expansion(cfg: GenConfig, base: ValueScenario, n_new: int,
                  expand_topic: bool) -> ValueScenario:
    """Strong expansion of base: new arguments attack old or new arguments but
    are never attacked by old ones; one fresh value per new argument; one
    preference proposal per new argument and agent, drawn from the new attacks
    so the result stays a normal expansion of base."""
    if n_new < 1:
        raise DomainError("n_new must be >= 1")
    rng = random.Random(derive_seed(cfg.seed, "expand", n_new, int(expand_topic),
                                    _scenario_digest(base)))
    vaf = base.vaf
    old_sorted = sorted(vaf.af.args)
    used_names = set(vaf.af.args)
    used_values = set(vaf.values)
    new_names: list[str] = []
    val = vaf.val_map
    idx = len(used_names)
    while len(new_names) < n_new:
        name, value = f"a{idx}", f"v{idx}"
        idx += 1
        if name in used_names or value in used_values:
            continue
        used_names.add(name)
        used_values.add(value)
        new_names.append(name)
        val[name] = value

    all_names = old_sorted + new_names
    new_attacks = _random_attacks(rng, new_names, all_names, cfg)
    attacks = set(vaf.af.attacks) | new_attacks

    prefs = _generate_prefs(rng, cfg, n_new, sorted(new_attacks), val, attacks,
                            start=vaf.prefs, old_values=vaf.values)

    topic = set(base.topic)
    if expand_topic:
        for name in new_names:
            if rng.random() < cfg.topic_prob:
                topic.add(name)

    expanded = ValueScenario(
        ValueFramework(ArgFramework(all_names, attacks),
                       set(val.values()), val, prefs),
        topic, base.sem)
    if not is_vaas_normal_expansion(base, expanded):
        raise GenerationError("generated expansion is not a normal expansion "
                              "of its base (generator bug)", seed=cfg.seed)
    return expanded


_KINDS = (DegreeKind.MIN, DegreeKind.MEAN, DegreeKind.MEDIAN)


def _hamming_degrees(vscn: ValueScenario) -> dict[DegreeKind, Fraction]:
    profile = to_extension_profile(vscn, cap=EXPERIMENT_CAP)
    return all_degrees(profile, SimilarityKind.HAMMING,
                       cap=EXPERIMENT_CAP, topic_cap=EXPERIMENT_CAP)


def _normalized(delta: Fraction, initial: Fraction) -> Fraction:
    return delta / max(initial, 1 - initial)


def run_delta_experiment(cfg: GenConfig, sem: SemanticsKind = SemanticsKind.PREFERRED,
                         max_expansion: int = 15, reps: int = 30,
                         expand_topic: bool = False) -> list[ExperimentRecord]:
    """Mean |degree change| per expansion size 1..max_expansion; each
    repetition draws a fresh initial scenario of 1..10 arguments."""
    sem = SemanticsKind(sem)
    if reps < 1 or max_expansion < 0:
        raise DomainError("reps must be >= 1 and max_expansion >= 0")
    topic_mode = "expanding" if expand_topic else "fixed"
    records = []
    for size in range(1, max_expansion + 1):
        raw = {k: Fraction(0) for k in _KINDS}
        norm = {k: Fraction(0) for k in _KINDS}
        for rep in range(reps):
            sub = derive_seed(cfg.seed, "delta", size, rep)
            rep_cfg = replace(cfg, seed=sub)
            n0 = 1 + random.Random(derive_seed(sub, "initial-size")).randrange(10)
            base = gen_initial_vaas(rep_cfg, n0, sem)
            expanded = gen_expansion(rep_cfg, base, size, expand_topic)
            before = _hamming_degrees(base)
            after = _hamming_degrees(expanded)
            for kind in _KINDS:
                delta = abs(before[kind] - after[kind])
                raw[kind] += delta
                norm[kind] += _normalized(delta, before[kind])
        for kind in _KINDS:
            records.append(ExperimentRecord("delta", size, kind, raw[kind] / reps,
                                            norm[kind] / reps, reps, cfg.seed,
                                            topic_mode))
    return records


def run_impact_experiment(cfg: GenConfig, sem: SemanticsKind = SemanticsKind.PREFERRED,
                          min_size: int = 5, max_size: int = 20, reps: int = 30,
                          proportional_topic: bool = False) -> list[ExperimentRecord]:
    """Mean |value impact| per framework size; the probed value is always
    carried by an attacked argument (scenarios without one are redrawn)."""
    sem = SemanticsKind(sem)
    if min_size < 1 or reps < 1:
        raise DomainError("min_size and reps must be >= 1")
    topic_mode = "proportional" if proportional_topic else "fixed"
    records = []
    for size in range(min_size, max_size + 1):
        raw = {k: Fraction(0) for k in _KINDS}
        norm = {k: Fraction(0) for k in _KINDS}
        for rep in range(reps):
            vscn = None
            for attempt in range(cfg.retry_limit):
                sub = derive_seed(cfg.seed, "impact", size, rep, attempt)
                rep_cfg = replace(cfg, seed=sub)
                vscn = gen_initial_vaas(rep_cfg, size, sem,
                                        topic_pool=None if proportional_topic else 5)
                val = vscn.vaf.val_map
                relevant = sorted({val[y] for _, y in vscn.vaf.af.attacks})
                if relevant:
                    break
            else:
                raise GenerationError(
                    f"no attacked argument in {cfg.retry_limit} draws "
                    f"(size {size}, rep {rep})", seed=cfg.seed)
            pick = random.Random(derive_seed(sub, "value-pick"))
            value = relevant[pick.randrange(len(relevant))]
            before = _hamming_degrees(vscn)
            after = _hamming_degrees(strip_scenario(vscn, value))
            for kind in _KINDS:
                impact = abs(before[kind] - after[kind])
                raw[kind] += impact
                norm[kind] += _normalized(impact, before[kind])
        for kind in _KINDS:
            records.append(ExperimentRecord("impact", size, kind, raw[kind] / reps,
                                            norm[kind] / reps, reps, cfg.seed,
                                            topic_mode))
    return records


def _fmt(x: Fraction) -> str:
    return f"{float(x):.12g}"


def format_csv(records: Iterable[ExperimentRecord]) -> str:
    lines = [CSV_HEADER]
    for rec in records:
        for normalized, mean in (("false", rec.raw_mean), ("true", rec.normalized_mean)):
            lines.append(f"{rec.experiment},{rec.size_param},{rec.kind.value},"
                         f"{rec.topic_mode},{normalized},{rec.reps},{rec.seed},"
                         f"{_fmt(mean)}")
    return "\n".join(lines) + "\n"


def write_csv(records: Iterable[ExperimentRecord], out: TextIO) -> None:
    out.write(format_csv(records))
