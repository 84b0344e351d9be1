"""Abstract argumentation frameworks and extension enumeration.

A framework is a finite directed attack graph over string-named arguments.
Five semantics are supported: complete, preferred, grounded, naive, stage.
Enumeration is a candidate-subset search over the powerset with
conflict-freeness pruning (see _kernels); outputs are deterministically
ordered by cardinality, then by the sorted member tuple.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Iterable

import numpy as np

from . import _kernels
from .errors import DomainError, ResourceLimitError, ValidationError

DEFAULT_ENUMERATION_CAP = 22

_ID_RE = re.compile(r"[A-Za-z0-9_]+\Z")


def check_identifier(name: str, what: str = "argument") -> str:
    if not isinstance(name, str) or not _ID_RE.match(name):
        raise ValidationError(
            f"invalid {what} identifier {name!r}: expected nonempty [a-zA-Z0-9_] token",
            code="bad-identifier",
        )
    return name


class SemanticsKind(str, Enum):
    COMPLETE = "complete"
    PREFERRED = "preferred"
    GROUNDED = "grounded"
    NAIVE = "naive"
    STAGE = "stage"


@dataclass(frozen=True)
class ArgFramework:
    """Attack graph (args, attacks); both are normalized to frozensets."""

    args: frozenset[str]
    attacks: frozenset[tuple[str, str]]

    def __init__(self, args: Iterable[str], attacks: Iterable[tuple[str, str]] = ()):
        arg_set = frozenset(args)
        attack_set = frozenset((str(x), str(y)) for x, y in attacks)
        for a in arg_set:
            check_identifier(a)
        for x, y in attack_set:
            if x not in arg_set or y not in arg_set:
                raise ValidationError(
                    f"attack ({x},{y}) mentions an undeclared argument",
                    code="unknown-argument",
                )
        object.__setattr__(self, "args", arg_set)
        object.__setattr__(self, "attacks", attack_set)

    def sorted_args(self) -> tuple[str, ...]:
        return _index(self)[0]

    def attackers_of(self, a: str) -> frozenset[str]:
        if a not in self.args:
            raise DomainError(f"unknown argument: {a}")
        return frozenset(x for x, y in self.attacks if y == a)

    def __repr__(self) -> str:  # compact and order-stable
        args = ",".join(sorted(self.args))
        atts = ",".join(f"({x},{y})" for x, y in sorted(self.attacks))
        return f"ArgFramework({{{args}}}, {{{atts}}})"


@lru_cache(maxsize=4096)
def _index(af: ArgFramework):
    """Sorted argument order, name->bit map, and per-bit target/attacker masks."""
    order = tuple(sorted(af.args))
    pos = {a: i for i, a in enumerate(order)}
    n = len(order)
    targets = np.zeros(n, dtype=np.int64)
    attackers = np.zeros(n, dtype=np.int64)
    for x, y in af.attacks:
        targets[pos[x]] |= np.int64(1) << pos[y]
        attackers[pos[y]] |= np.int64(1) << pos[x]
    return order, pos, targets, attackers


def _mask_of(af: ArgFramework, s: Iterable[str]) -> int:
    _, pos, _, _ = _index(af)
    m = 0
    for a in s:
        m |= 1 << pos[a]
    return m


def _set_of(af: ArgFramework, mask: int) -> frozenset[str]:
    order = _index(af)[0]
    return frozenset(order[i] for i in range(len(order)) if (mask >> i) & 1)


def _require_subset(af: ArgFramework, s: Iterable[str], what: str = "set") -> frozenset[str]:
    s = frozenset(s)
    extra = s - af.args
    if extra:
        raise DomainError(f"{what} contains arguments not in the framework: {sorted(extra)}")
    return s


def attacks_set(af: ArgFramework, s: Iterable[str]) -> frozenset[str]:
    """All arguments attacked by some member of s (the set S+)."""
    s = _require_subset(af, s)
    return frozenset(y for x, y in af.attacks if x in s)


def is_conflict_free(af: ArgFramework, s: Iterable[str]) -> bool:
    s = _require_subset(af, s)
    return not any(x in s and y in s for x, y in af.attacks)


def is_acceptable(af: ArgFramework, a: str, s: Iterable[str]) -> bool:
    """True iff every attacker of a is attacked by s."""
    if a not in af.args:
        raise DomainError(f"unknown argument: {a}")
    s = _require_subset(af, s)
    counter = attacks_set(af, s)
    return all(b in counter for b in af.attackers_of(a))


def is_admissible(af: ArgFramework, s: Iterable[str]) -> bool:
    s = _require_subset(af, s)
    return is_conflict_free(af, s) and all(is_acceptable(af, a, s) for a in s)


def strongly_defends(af: ArgFramework, s: Iterable[str], a: str) -> bool:
    """Recursive defense: every attacker of a is countered from s minus a,
    by an argument that is itself strongly defended by s minus a."""
    if a not in af.args:
        raise DomainError(f"unknown argument: {a}")
    s = _require_subset(af, s)
    attackers = {x: frozenset(u for u, v in af.attacks if v == x) for x in af.args}
    memo: dict[tuple[frozenset[str], str], bool] = {}

    def sd(current: frozenset[str], x: str) -> bool:
        key = (current, x)
        if key in memo:
            return memo[key]
        rest = current - {x}
        ok = all(
            any((c, b) in af.attacks and sd(rest, c) for c in rest)
            for b in attackers[x]
        )
        memo[key] = ok
        return ok

    return sd(s, a)


@lru_cache(maxsize=2048)
def _classified(af: ArgFramework):
    """(complete masks, naive masks) from the subset-search kernel."""
    order, _, targets, attackers = _index(af)
    comp, nai = _kernels.classify_subsets(len(order), targets, attackers)
    return tuple(int(m) for m in comp), tuple(int(m) for m in nai)


def _splus_mask(targets: np.ndarray, mask: int) -> int:
    out = 0
    m = mask
    while m:
        i = (m & -m).bit_length() - 1
        out |= int(targets[i])
        m &= m - 1
    return out


def _maximal_masks(masks: Iterable[int]) -> list[int]:
    ordered = sorted(masks, key=lambda m: (-bin(m).count("1"), m))
    kept: list[int] = []
    for m in ordered:
        if not any((m & k) == m for k in kept):
            kept.append(m)
    return kept


def _sort_extensions(af: ArgFramework, masks: Iterable[int]) -> tuple[frozenset[str], ...]:
    sets = [_set_of(af, m) for m in masks]
    return tuple(sorted(sets, key=lambda e: (len(e), tuple(sorted(e)))))


@lru_cache(maxsize=8192)
def _enumerated(af: ArgFramework, kind: SemanticsKind) -> tuple[frozenset[str], ...]:
    comp, nai = _classified(af)
    if kind is SemanticsKind.COMPLETE:
        return _sort_extensions(af, comp)
    if kind is SemanticsKind.PREFERRED:
        return _sort_extensions(af, _maximal_masks(comp))
    if kind is SemanticsKind.GROUNDED:
        minimal = [m for m in comp if not any(k != m and (k & m) == k for k in comp)]
        if len(minimal) != 1:
            raise AssertionError("grounded extension is not unique; enumeration bug")
        return _sort_extensions(af, minimal)
    if kind is SemanticsKind.NAIVE:
        return _sort_extensions(af, nai)
    if kind is SemanticsKind.STAGE:
        targets = _index(af)[2]
        ranges = {m: m | _splus_mask(targets, m) for m in nai}
        max_ranges = set(_maximal_masks(ranges.values()))
        return _sort_extensions(af, (m for m, r in ranges.items() if r in max_ranges))
    raise DomainError(f"unknown semantics: {kind}")


def enumerate_extensions(
    af: ArgFramework, kind: SemanticsKind, cap: int | None = None
) -> tuple[frozenset[str], ...]:
    """All extensions of the given semantics, ordered by (size, member tuple)."""
    cap = DEFAULT_ENUMERATION_CAP if cap is None else cap
    cap = min(cap, _kernels.MAX_KERNEL_BITS)  # kernel masks are 30-bit
    if len(af.args) > cap:
        raise ResourceLimitError(
            f"framework has {len(af.args)} arguments, enumeration cap is {cap}", cap=cap
        )
    return _enumerated(af, SemanticsKind(kind))


def grounded_fixpoint(af: ArgFramework) -> frozenset[str]:
    """Least fixpoint of S -> {a : every attacker of a is attacked by S}.

    Independent of the subset-search route behind enumerate_extensions;
    the two must agree on the grounded extension.
    """
    order, _, targets, attackers = _index(af)
    n = len(order)
    s = 0
    while True:
        splus = _splus_mask(targets, s)
        nxt = 0
        for i in range(n):
            if (int(attackers[i]) & ~splus) == 0:
                nxt |= 1 << i
        if nxt == s:
            return _set_of(af, s)
        s = nxt
