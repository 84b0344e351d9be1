"""Command-line surface.

Exit codes: 0 success, 1 domain or validation failure, 2 usage error.
Errors go to stderr as ``error[<code>]: message``.  Output is plain text by
default (never colored, so NO_COLOR needs no special handling) or JSON with
--format json; JSON payloads validate against schemas/cli_output.schema.json.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from .agreement import (AgreementScenario, DegreeKind, ExtensionProfile,
                        SimilarityKind, agreement_witness, all_degrees,
                        degree_of_agreement, pair_satisfaction, resolve_profile)
from .core import SemanticsKind, enumerate_extensions
from .dynamics import (PrincipleKind, aas_expansion_failure, check_principle,
                       enforce_principle, is_expansion, is_normal_expansion)
from .errors import ArgagreeError, DomainError
from .scenario_io import load_scenario
from .synth import GenConfig, run_delta_experiment, run_impact_experiment, write_csv
from .values import (to_extension_profile, vaas_expansion_failure,
                     value_impact, vaf_expansion_failure)

DEFAULT_SEED = 42

_SIM = {"h": SimilarityKind.HAMMING, "i": SimilarityKind.INTERSECTION,
        "c": SimilarityKind.COMPLEMENT}
_DEG = {"min": DegreeKind.MIN, "mean": DegreeKind.MEAN, "med": DegreeKind.MEDIAN}


def _fmt_set(s) -> str:
    return "{" + ",".join(sorted(s)) + "}"


def _fmt_frac(x: Fraction) -> str:
    return f"{x} ({float(x):.6f})"


def _degree_json(x: Fraction) -> dict:
    return {"fraction": str(x), "decimal": float(x)}


def _emit(args, payload: dict, text_lines: list[str]) -> None:
    if args.format == "json":
        print(json.dumps(payload))
    else:
        for line in text_lines:
            print(line)


def _profile_of(built, what: str) -> ExtensionProfile:
    if built.kind == "aas":
        return resolve_profile(built.aas)
    if built.kind == "vaas":
        return to_extension_profile(built.vaas)
    raise DomainError(f"{what} declares neither agent(...) nor semantics(...) facts")


def _agent_labels(built) -> list[str]:
    if built.kind == "aas":
        return [sem.value for sem in built.aas.agents]
    return [f"P{i}" for i in range(built.vaas.vaf.agent_count)]


def _cmd_solve(args) -> int:
    built = load_scenario(args.af)
    sem = SemanticsKind(args.semantics)
    exts = enumerate_extensions(built.af, sem)
    payload = {"command": "solve", "semantics": sem.value,
               "extensions": [sorted(e) for e in exts]}
    _emit(args, payload, [f"semantics: {sem.value}"] + [_fmt_set(e) for e in exts])
    return 0


def _cmd_degrees(args) -> int:
    built = load_scenario(args.scenario)
    profile = _profile_of(built, args.scenario)
    skind, dkind = _SIM[args.similarity], _DEG[args.kind]
    degree = degree_of_agreement(profile, dkind, skind)
    witness = agreement_witness(profile, dkind, skind)
    payload = {"command": "degrees", "kind": dkind.value, "similarity": skind.value,
               "degree": _degree_json(degree), "witness": sorted(witness)}
    _emit(args, payload,
          [f"degree: {_fmt_frac(degree)}", f"witness: {_fmt_set(witness)}"])
    return 0


def _cmd_sat(args) -> int:
    built = load_scenario(args.scenario)
    profile = _profile_of(built, args.scenario)
    skind = _SIM[args.similarity]
    labels = _agent_labels(built)
    n = len(labels)
    if args.matrix:
        entries = [{"i": i, "j": j,
                    "degree": _degree_json(pair_satisfaction(profile, i, j, skind))}
                   for i in range(n) for j in range(n)]
        lines = [f"sat-matrix similarity={args.similarity} agents={','.join(labels)}"]
        for i in range(n):
            row = [str(pair_satisfaction(profile, i, j, skind)) for j in range(n)]
            lines.append(" ".join(row))
        payload = {"command": "sat", "similarity": skind.value, "agents": labels,
                   "entries": entries}
        _emit(args, payload, lines)
        return 0
    if args.agents is None:
        raise DomainError("provide --agents I,J or --matrix")
    try:
        i, j = (int(x) for x in args.agents.split(","))
    except ValueError:
        raise DomainError("--agents expects two comma-separated indices") from None
    degree = pair_satisfaction(profile, i, j, skind)
    payload = {"command": "sat", "similarity": skind.value, "agents": labels,
               "entries": [{"i": i, "j": j, "degree": _degree_json(degree)}]}
    _emit(args, payload, [f"sat({i},{j}): {_fmt_frac(degree)}"])
    return 0


def _cmd_impact(args) -> int:
    built = load_scenario(args.scenario)
    if built.kind != "vaas":
        raise DomainError("value impact needs a value-based scenario file")
    skind = _SIM[args.similarity]
    impacts = {k: value_impact(built.vaas, args.value, k, skind) for k in DegreeKind}
    payload = {"command": "impact", "value": args.value, "similarity": skind.value,
               "impacts": {k.value: _degree_json(v) for k, v in impacts.items()}}
    _emit(args, payload,
          [f"impact({args.value}) {k.value}: {_fmt_frac(v)}" for k, v in impacts.items()])
    return 0


def _expansion_verdict(before, after, normal: bool):
    if before.kind != after.kind:
        raise DomainError("before and after files must be the same scenario kind")
    if before.kind == "aas":
        if normal:
            return aas_expansion_failure(before.aas, after.aas)
        return None if is_expansion(before.af, after.af) else "not-expansion"
    if before.kind == "vaas":
        if normal:
            return vaas_expansion_failure(before.vaas, after.vaas)
        return vaf_expansion_failure(before.vaas.vaf, after.vaas.vaf)
    if normal:
        if is_normal_expansion(before.af, after.af):
            return None
        if not is_expansion(before.af, after.af):
            return "not-expansion"
        return "new-attack-between-old-arguments"
    return None if is_expansion(before.af, after.af) else "not-expansion"


def _cmd_check_expansion(args) -> int:
    before = load_scenario(args.before)
    after = load_scenario(args.after)
    reason = _expansion_verdict(before, after, args.normal)
    holds = reason is None
    label = "normal-expansion" if args.normal else "expansion"
    payload = {"command": "check-expansion", "normal": bool(args.normal),
               "holds": holds, "reason": reason}
    lines = [f"{label}: {str(holds).lower()}"]
    if reason:
        lines.append(f"reason: {reason}")
    _emit(args, payload, lines)
    return 0


def _file_semantics(built, path: str) -> list[SemanticsKind]:
    if built.kind != "aas":
        raise DomainError(f"{path}: principle commands need agent(...) facts")
    seen: list[SemanticsKind] = []
    for sem in built.aas.agents:
        if sem not in seen:
            seen.append(sem)
    return seen


def _cmd_check_principle(args) -> int:
    before = load_scenario(args.before)
    after = load_scenario(args.after)
    principle = PrincipleKind(args.principle)
    sems = _file_semantics(before, args.before)
    verdicts = []
    lines = [f"principle: {principle.value}"]
    overall = True
    for sem in sems:
        verdict = check_principle(before.af, after.af, sem, principle)
        overall &= verdict.holds
        wits = []
        for w in verdict.witnesses:
            sup = _fmt_set(w.superset) if w.superset is not None else "none"
            lines.append(f"  {_fmt_set(w.extension)}: condition={str(w.condition).lower()}"
                         f" superset={sup}")
            wits.append({"extension": sorted(w.extension), "condition": w.condition,
                         "superset": sorted(w.superset) if w.superset is not None else None,
                         "evidence": list(w.evidence) if isinstance(w.evidence, tuple)
                         else w.evidence})
        lines.insert(len(lines) - len(verdict.witnesses),
                     f"[{sem.value}] holds: {str(verdict.holds).lower()}")
        verdicts.append({"semantics": sem.value, "holds": verdict.holds,
                         "witnesses": wits})
    payload = {"command": "check-principle", "principle": principle.value,
               "holds": overall, "verdicts": verdicts}
    _emit(args, payload, lines)
    return 0


def _cmd_enforce(args) -> int:
    before = load_scenario(args.before)
    after = load_scenario(args.after)
    if before.kind != "aas" or after.kind != "aas":
        raise DomainError("enforcement needs plain agreement-scenario files")
    if before.aas.agents != after.aas.agents:
        raise DomainError("before and after files must declare the same agents")
    principle = PrincipleKind(args.principle)
    enforced = [enforce_principle(before.af, after.af, after.topic, sem, principle)
                for sem in after.aas.agents]
    enforced_profile = ExtensionProfile(after.af, after.topic, enforced)
    agents_json, lines = [], [f"principle: {principle.value}"]
    for i, (sem, exts) in enumerate(zip(after.aas.agents, enforced)):
        agents_json.append({"index": i, "semantics": sem.value,
                            "extensions": [sorted(e) for e in exts]})
        lines.append(f"agent {i} ({sem.value}): " + " ".join(_fmt_set(e) for e in exts))
    deltas = {}
    for kind in DegreeKind:
        d0 = degree_of_agreement(before.aas, kind, SimilarityKind.HAMMING)
        d1 = degree_of_agreement(enforced_profile, kind, SimilarityKind.HAMMING)
        deltas[kind] = abs(d0 - d1)
        lines.append(f"delta {kind.value}: {_fmt_frac(deltas[kind])}")
    payload = {"command": "enforce", "principle": principle.value,
               "agents": agents_json,
               "deltas": {k.value: _degree_json(v) for k, v in deltas.items()}}
    _emit(args, payload, lines)
    return 0


def _cmd_experiment(args) -> int:
    cfg = GenConfig(seed=args.seed)
    sem = SemanticsKind(args.semantics)
    if args.which == "delta":
        records = run_delta_experiment(cfg, sem, max_expansion=args.max_expansion,
                                       reps=args.reps, expand_topic=args.expanding_topic)
    else:
        records = run_impact_experiment(cfg, sem, min_size=args.min_size,
                                        max_size=args.max_size, reps=args.reps,
                                        proportional_topic=args.proportional_topic)
    with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
        write_csv(records, fh)
    payload = {"command": "experiment", "experiment": args.which, "out": args.out,
               "rows": 2 * len(records), "seed": args.seed}
    _emit(args, payload, [f"csv: {args.out} rows: {2 * len(records)}"])
    return 0


def _parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="argagree",
        description="Agreement degrees and monotony principles for argumentation frameworks")
    sub = parser.add_subparsers(dest="cmd", required=True)

    def add_format(p):
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("solve", help="enumerate extensions of a framework")
    p.add_argument("--af", required=True)
    p.add_argument("--semantics", required=True,
                   choices=[k.value for k in SemanticsKind])
    add_format(p)
    p.set_defaults(run=_cmd_solve)

    p = sub.add_parser("degrees", help="degree of agreement and witness subset")
    p.add_argument("--scenario", required=True)
    p.add_argument("--similarity", required=True, choices=("h", "i", "c"))
    p.add_argument("--kind", required=True, choices=("min", "mean", "med"))
    add_format(p)
    p.set_defaults(run=_cmd_degrees)

    p = sub.add_parser("sat", help="pairwise degrees of satisfaction")
    p.add_argument("--scenario", required=True)
    p.add_argument("--similarity", required=True, choices=("h", "i", "c"))
    p.add_argument("--agents", help="pair of agent indices, e.g. 0,1")
    p.add_argument("--matrix", action="store_true", help="full satisfaction matrix")
    add_format(p)
    p.set_defaults(run=_cmd_sat)

    p = sub.add_parser("impact", help="signed value impacts on all three degrees")
    p.add_argument("--scenario", required=True)
    p.add_argument("--value", required=True)
    p.add_argument("--similarity", required=True, choices=("h", "i", "c"))
    add_format(p)
    p.set_defaults(run=_cmd_impact)

    p = sub.add_parser("check-expansion", help="expansion check with reason code")
    p.add_argument("--before", required=True)
    p.add_argument("--after", required=True)
    p.add_argument("--normal", action="store_true")
    add_format(p)
    p.set_defaults(run=_cmd_check_expansion)

    p = sub.add_parser("check-principle", help="relaxed-monotony verdict with witnesses")
    p.add_argument("--before", required=True)
    p.add_argument("--after", required=True)
    p.add_argument("--principle", required=True, choices=("cm", "srm"))
    add_format(p)
    p.set_defaults(run=_cmd_check_principle)

    p = sub.add_parser("enforce", help="principle-compliant extension sets and deltas")
    p.add_argument("--before", required=True)
    p.add_argument("--after", required=True)
    p.add_argument("--principle", required=True, choices=("cm", "srm"))
    add_format(p)
    p.set_defaults(run=_cmd_enforce)

    p = sub.add_parser("experiment", help="run a synthetic experiment, write CSV")
    p.add_argument("which", choices=("delta", "impact"))
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--reps", type=int, default=30)
    p.add_argument("--out", required=True)
    p.add_argument("--semantics", default=SemanticsKind.PREFERRED.value,
                   choices=[k.value for k in SemanticsKind])
    p.add_argument("--expanding-topic", action="store_true")
    p.add_argument("--proportional-topic", action="store_true")
    p.add_argument("--max-expansion", type=int, default=15)
    p.add_argument("--min-size", type=int, default=5)
    p.add_argument("--max-size", type=int, default=20)
    add_format(p)
    p.set_defaults(run=_cmd_experiment)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = _parser().parse_args(argv)
    try:
        return args.run(args)
    except ArgagreeError as exc:
        print(f"error[{exc.code}]: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error[io]: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
