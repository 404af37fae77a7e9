#!/usr/bin/env python3
"""
Unified command-line front end for teamcheck.

Team-semantics model checking, bisimulation, characteristic-formula
synthesis, closure verification, semantic games and the lower-bound
witness, behind one entry point.

Usage:
    python teamcheck.py check --model m.json --team-inline w,v --formula "[p <= ~p]"
    python teamcheck.py check --model m.json --team T --formula "nab p" --max-subteam
    python teamcheck.py bisim --model m.json --world w --other-world v -k 1
    python teamcheck.py hintikka --model m.json --world w -k 2
    python teamcheck.py synthesize --manifest samples.yaml
    python teamcheck.py closure --formula "[p <= ~p]" --property all
    python teamcheck.py game --model m.json --team T --formula "p | ~p" --out f.json
    python teamcheck.py witness -n 2 --out witness.json --audit "nab p1"
    python teamcheck.py props --formula "[p1,p2 <= q1,q2]"
    python teamcheck.py rewrite --formula "nab p" --to nedis

Exit codes: 0 holds / success, 1 fails, 2 usage or input error, 3 budget exceeded.

Requires: PyYAML, lark
"""

import argparse
import json
import logging
import os
import sys
import traceback

# Ensure teamlib is importable from the scripts/ directory
sys.path.insert(0, os.path.dirname(os.path.abspath(__file__)))

import yaml

from teamlib.bisimulation import k_bisimilar, team_k_bisimilar
from teamlib.characteristic import BotEncoding, CharDialect, HintikkaBuilder, synthesize
from teamlib.closure import ClosureChecker, ClosureProperty, Domain
from teamlib.config import CheckerConfig
from teamlib.errors import BudgetExceeded, ModelError, TeamLogicError
from teamlib.formulas import (
    Incl,
    dialect_of,
    modal_depth,
    nabla_to_nedis,
    nedis_to_nabla,
    node_count,
    occ_nabla,
    parse,
    parse_position,
    props_of,
)
from teamlib.game import audit_lower_bound, find_strategy, lower_bound_witness, strategy_to_dict
from teamlib.kripke import (
    model_to_dict,
    parse_inline_team,
    read_model_file,
    write_model_file,
)
from teamlib.semantics import evaluate, max_subteam, satisfying_teams

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_ERROR = 2
EXIT_BUDGET = 3

WITNESS_TEAM = "T"

logger = logging.getLogger("teamcheck")


# ── Shared helpers ─────────────────────────────────────────────────────


def load_settings(args):
    """Load teamcheck.yaml and fold the evaluation flags into an EvalConfig."""
    config = CheckerConfig.load(args.config)
    eval_config = config.eval_config(
        mode=args.mode,
        max_steps=args.max_steps,
        memo=False if args.no_memo else None,
    )
    if args.verbose and not args.json:
        config.summary()
    return config, eval_config


def parse_formula(config, text):
    """Parse a formula and warn about inclusion atoms wider than cli.arity_warning."""
    formula = parse(text)
    arity = max((node.arity for node in formula.walk() if isinstance(node, Incl)), default=0)
    if arity > config.cli["arity_warning"]:
        logger.warning("inclusion atom of arity %d: pattern tables grow as 2^%d", arity, arity)
    return formula, arity


def resolve_team(model, teams, name, inline, flag="--team"):
    if name is not None:
        if name not in teams:
            known = ", ".join(sorted(teams)) or "none"
            raise ModelError(f"no team named '{name}' in the model document (known: {known})")
        return teams[name]
    if inline is not None:
        return parse_inline_team(model, inline)
    raise ModelError(f"a team is required: pass {flag} NAME or {flag}-inline W1,W2")


def show_team(model, team):
    return "{" + ", ".join(model.sort(team)) + "}"


def emit(args, payload, lines):
    """Print either the JSON document or the human-readable lines."""
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True, ensure_ascii=False))
    else:
        for line in lines:
            print(line)


def rule(title):
    return [f"\n{'─' * 60}", f"  {title}", f"{'─' * 60}"]


# ── check ──────────────────────────────────────────────────────────────


def cmd_check(args):
    """Decide K, T ⊨ φ."""
    config, eval_config = load_settings(args)
    model, teams = read_model_file(args.model)
    formula, _ = parse_formula(config, args.formula)

    payload = {"formula": str(formula), "mode": eval_config.mode.value}
    lines = rule(f"Checking: {formula}")
    status = EXIT_OK

    if args.all_teams:
        found = satisfying_teams(model, formula, eval_config)
        payload["satisfying_teams"] = [model.sort(t) for t in found]
        lines.append(f"  {len(found)} satisfying team(s):")
        lines.extend(f"    {show_team(model, t)}" for t in found)

    if args.team is not None or args.team_inline is not None or not args.all_teams:
        team = resolve_team(model, teams, args.team, args.team_inline)
        verdict = evaluate(model, team, formula, eval_config)
        payload["team"] = model.sort(team)
        payload["verdict"] = "SAT" if verdict else "UNSAT"
        lines.append(f"  Team:   {show_team(model, team)}")
        if args.max_subteam:
            largest = max_subteam(model, team, formula, eval_config)
            payload["max_subteam"] = model.sort(largest)
            lines.append(f"  Largest satisfying subteam: {show_team(model, largest)}")
        lines.append(payload["verdict"])
        status = EXIT_OK if verdict else EXIT_FAIL

    emit(args, payload, lines)
    return status


# ── bisim / teambisim ──────────────────────────────────────────────────


def _other_model(args, model, teams):
    if args.other:
        return read_model_file(args.other)
    return model, teams


def cmd_bisim(args):
    """Decide K, w ⇄ₖ K', w'."""
    config, _ = load_settings(args)
    model, teams = read_model_file(args.model)
    other, _ = _other_model(args, model, teams)
    k = config.enumeration["max_k"] if args.k is None else args.k

    verdict = k_bisimilar(model, args.world, other, args.other_world, k)
    payload = {"k": k, "world": args.world, "other_world": args.other_world, "bisimilar": verdict}
    lines = [
        f"  {args.world} {'⇄' if verdict else '≠'}{k} {args.other_world}",
        "BISIMILAR" if verdict else "NOT BISIMILAR",
    ]
    emit(args, payload, lines)
    return EXIT_OK if verdict else EXIT_FAIL


def cmd_teambisim(args):
    """Decide K, T [⇄ₖ] K', T'."""
    config, _ = load_settings(args)
    model, teams = read_model_file(args.model)
    other, other_teams = _other_model(args, model, teams)
    k = config.enumeration["max_k"] if args.k is None else args.k

    team = resolve_team(model, teams, args.team, args.team_inline)
    other_team = resolve_team(
        other, other_teams, args.other_team, args.other_team_inline, flag="--other-team"
    )
    verdict = team_k_bisimilar(model, team, other, other_team, k)
    payload = {
        "k": k,
        "team": model.sort(team),
        "other_team": other.sort(other_team),
        "bisimilar": verdict,
    }
    lines = [
        f"  {show_team(model, team)} {'[⇄]' if verdict else '[≠]'}{k} {show_team(other, other_team)}",
        "BISIMILAR" if verdict else "NOT BISIMILAR",
    ]
    emit(args, payload, lines)
    return EXIT_OK if verdict else EXIT_FAIL


# ── hintikka / synthesize ──────────────────────────────────────────────


def cmd_hintikka(args):
    """Print χᵏ of a world, or a team's characteristic formula."""
    config, _ = load_settings(args)
    model, teams = read_model_file(args.model)
    k = config.enumeration["max_k"] if args.k is None else args.k
    builder = HintikkaBuilder(model, BotEncoding(args.bot_encoding))

    if args.world is not None:
        formula = builder.hintikka(args.world, k)
        subject = {"world": args.world}
    else:
        team = resolve_team(model, teams, args.team, args.team_inline)
        formula = builder.characteristic(team, k, CharDialect(args.dialect), args.minimize)
        subject = {"team": model.sort(team), "dialect": args.dialect}

    payload = dict(subject, k=k, formula=str(formula), nodes=node_count(formula))
    emit(args, payload, [str(formula)])
    return EXIT_OK


def load_manifest(path):
    """Read a synthesis manifest: k, dialect and (model file, team name) samples."""
    try:
        with open(path) as f:
            manifest = yaml.safe_load(f)
    except OSError as e:
        raise ModelError(f"cannot read manifest {path}: {e.strerror}")
    except yaml.YAMLError as e:
        raise ModelError(f"{path} is not valid YAML: {e}")

    if not isinstance(manifest, dict) or not isinstance(manifest.get("samples"), list):
        raise ModelError(f"{path} must be a mapping with a 'samples' list")

    base = os.path.dirname(os.path.abspath(path))
    pairs = []
    for index, sample in enumerate(manifest["samples"]):
        if not isinstance(sample, dict) or "model" not in sample or "team" not in sample:
            raise ModelError(f"sample {index} needs 'model' and 'team' fields")
        model, teams = read_model_file(os.path.join(base, sample["model"]))
        pairs.append((model, resolve_team(model, teams, sample["team"], None)))
    return manifest, pairs


def cmd_synthesize(args):
    """Disjoin characteristic formulas over the manifest's samples."""
    config, _ = load_settings(args)
    manifest, pairs = load_manifest(args.manifest)

    k = args.k if args.k is not None else manifest.get("k", config.enumeration["max_k"])
    dialect = CharDialect(args.dialect or manifest.get("dialect", CharDialect.MINC.value))
    formula = synthesize(
        pairs, k, dialect, BotEncoding(args.bot_encoding), minimize=args.minimize
    )

    if args.out:
        with open(args.out, "w") as f:
            f.write(f"{formula}\n")

    payload = {
        "k": k,
        "dialect": dialect.value,
        "samples": len(pairs),
        "formula": str(formula),
        "nodes": node_count(formula),
    }
    emit(args, payload, [str(formula)])
    return EXIT_OK


# ── closure ────────────────────────────────────────────────────────────

TEAM_LABELS = {
    ClosureProperty.DOWNWARD: ("T", "S"),
    ClosureProperty.UNION: ("T1", "T2"),
    ClosureProperty.EMPTY_TEAM: ("T",),
    ClosureProperty.BISIM_INVARIANCE: ("T", "T'"),
}


def counterexample_to_dict(counterexample):
    labels = TEAM_LABELS[counterexample.property]
    if len(counterexample.models) == 1:
        models = [model_to_dict(counterexample.models[0], dict(zip(labels, counterexample.teams)))]
    else:
        models = [
            model_to_dict(model, {label: team})
            for model, label, team in zip(counterexample.models, labels, counterexample.teams)
        ]
    return {"k": counterexample.k, "models": models}


def cmd_closure(args):
    """Check closure properties of φ over the bounded enumeration domain."""
    config, eval_config = load_settings(args)
    formula, _ = parse_formula(config, args.formula)
    enumeration = config.enumeration

    if args.props:
        props = tuple(p.strip() for p in args.props.split(",") if p.strip())
    else:
        props = tuple(sorted(props_of(formula))) or tuple(enumeration["props"])
    max_worlds = enumeration["max_worlds"] if args.max_worlds is None else args.max_worlds
    domain = Domain(max_worlds=max_worlds, props=props, max_k=enumeration["max_k"])

    checker = ClosureChecker(formula, domain, eval_config, parallel=args.parallel)
    if args.property == "all":
        reports = checker.run_all(args.k)
    else:
        reports = [checker.check(ClosureProperty(args.property), args.k)]

    payload = {
        "formula": str(formula),
        "max_worlds": max_worlds,
        "props": list(props),
        "reports": [
            {
                "property": r.property.value,
                "verdict": r.verdict,
                "instances": r.instances,
                "counterexample": counterexample_to_dict(r.counterexample)
                if r.counterexample
                else None,
            }
            for r in reports
        ],
    }

    lines = rule(f"Closure: {formula}  (≤{max_worlds} worlds over {', '.join(props)})")
    for report in reports:
        mark = "✓" if report.passed else "✗"
        lines.append(f"  {mark} {report.property.value:<10} {report.verdict}  ({report.instances} instances)")
        if report.counterexample:
            cx = report.counterexample
            lines.append(f"      counterexample: {cx.describe()}")
            for model in dict.fromkeys(cx.models):
                edges = ", ".join(f"{a}->{b}" for a, b in sorted(model.edges)) or "none"
                valuation = "; ".join(
                    f"{p}={show_team(model, model.valuation[p])}" for p in model.props
                )
                lines.append(f"      worlds {', '.join(model.worlds)}; edges {edges}; {valuation}")

    failed = [r for r in reports if not r.passed]
    lines.append(f"\n{'─' * 60}")
    lines.append(
        f"  Done with failures: {', '.join(r.property.value for r in failed)}"
        if failed
        else f"  Done. {len(reports)} propert{'y' if len(reports) == 1 else 'ies'} hold."
    )
    emit(args, payload, lines)
    return EXIT_FAIL if failed else EXIT_OK


# ── game ───────────────────────────────────────────────────────────────


def cmd_game(args):
    """Search a winning strategy for K, T ⊨ φ."""
    config, eval_config = load_settings(args)
    model, teams = read_model_file(args.model)
    team = resolve_team(model, teams, args.team, args.team_inline)
    formula, _ = parse_formula(config, args.formula)

    strategy = find_strategy(model, team, formula, eval_config)
    if strategy is None:
        emit(args, {"formula": str(formula), "strategy": None}, ["NO STRATEGY"])
        return EXIT_FAIL

    document = strategy_to_dict(strategy)
    if args.out:
        with open(args.out, "w") as f:
            json.dump(document, f, indent=2)
            f.write("\n")

    lines = rule(f"Strategy for {formula}")
    for path, members in document["assignment"].items():
        node = strategy.node(parse_position(path))
        lines.append(f"  {path or '(root)':<10} {{{', '.join(members)}}}   {node}")
    lines.append("STRATEGY")
    emit(args, {"formula": str(formula), "strategy": document}, lines)
    return EXIT_OK


# ── witness ────────────────────────────────────────────────────────────


def cmd_witness(args):
    """Build the lower-bound witness; optionally audit a formula on it."""
    _, eval_config = load_settings(args)
    model, team = lower_bound_witness(args.n, eval_config)

    if args.out:
        write_model_file(args.out, model, {WITNESS_TEAM: team})

    payload = {"n": args.n, "worlds": len(model.worlds), "team": model.sort(team)}
    lines = rule(f"Witness of arity {args.n}")
    lines.append(f"  Worlds: {len(model.worlds)} (identity relation)")
    lines.append(f"  Team:   {show_team(model, team)}")
    if args.out:
        lines.append(f"  ✓ Wrote {args.out} (team '{WITNESS_TEAM}')")
    status = EXIT_OK

    if args.audit:
        report = audit_lower_bound(parse(args.audit), args.n, eval_config)
        certificate = report.certificate
        payload["audit"] = {
            "formula": str(report.formula),
            "nabla_count": report.nabla_count,
            "bound": report.bound,
            "attempted": report.attempted,
            "removable": certificate.world if certificate else None,
        }
        lines.append(f"  Audit:  {report.formula}  (nab count {report.nabla_count}, bound {report.bound})")
        if certificate:
            lines.append(
                f"  ✓ {certificate.world} is removable for the formula but essential for the atom"
            )
        elif report.attempted:
            lines.append("  ✗ no removable world found")
        else:
            lines.append("  - nab count reaches the bound, no certificate attempted")
        status = EXIT_OK if certificate else EXIT_FAIL

    emit(args, payload, lines)
    return status


# ── props / rewrite ────────────────────────────────────────────────────


def cmd_props(args):
    """Report structural metrics of a formula."""
    config, _ = load_settings(args)
    formula, arity = parse_formula(config, args.formula)

    payload = {
        "formula": str(formula),
        "modal_depth": modal_depth(formula),
        "occ_nabla": occ_nabla(formula),
        "dialect": dialect_of(formula).value,
        "nodes": node_count(formula),
        "props": sorted(props_of(formula)),
        "max_inclusion_arity": arity,
    }
    lines = [
        f"  Formula:     {formula}",
        f"  Dialect:     {payload['dialect']}",
        f"  Modal depth: {payload['modal_depth']}",
        f"  nab count:   {payload['occ_nabla']}",
        f"  Nodes:       {payload['nodes']}",
        f"  Props:       {', '.join(payload['props']) or 'none'}",
    ]
    emit(args, payload, lines)
    return EXIT_OK


REWRITES = {"nedis": nabla_to_nedis, "nabla": nedis_to_nabla}


def cmd_rewrite(args):
    """Translate between nab and |! forms."""
    load_settings(args)
    formula = parse(args.formula)
    rewritten = REWRITES[args.to](formula)
    emit(args, {"formula": str(formula), "rewritten": str(rewritten), "to": args.to}, [str(rewritten)])
    return EXIT_OK


# ── Argument Parser ────────────────────────────────────────────────────


def build_parser():
    parser = argparse.ArgumentParser(
        prog="teamcheck",
        description="Team-semantics model checking for ML, MINC and ML(∇)",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
examples:
  %(prog)s check --model m.json --team-inline w,v --formula "[p <= ~p]"
  %(prog)s closure --formula "nab p" --property union --max-worlds 2
  %(prog)s witness -n 2 --out witness.json
  %(prog)s check --model witness.json --team T --formula "[p1,p2 <= q1,q2]"
  %(prog)s game --model m.json --team T --formula "p | ~p"
        """,
    )

    sub = parser.add_subparsers(dest="command")

    # ── check ──────────────────────────────────────────────
    check_p = sub.add_parser("check", help="Decide K, T |= formula")
    _add_model_args(check_p)
    _add_team_args(check_p)
    _add_formula_arg(check_p)
    check_p.add_argument("--max-subteam", action="store_true", help="Report the largest satisfying subteam")
    check_p.add_argument("--all-teams", action="store_true", help="List every satisfying team")
    _add_common_args(check_p)

    # ── bisim ──────────────────────────────────────────────
    bisim_p = sub.add_parser("bisim", help="k-bisimilarity of two pointed models")
    _add_model_args(bisim_p, other=True)
    bisim_p.add_argument("--world", required=True)
    bisim_p.add_argument("--other-world", required=True)
    bisim_p.add_argument("-k", type=int, help="Depth (default: enumeration.max_k)")
    _add_common_args(bisim_p)

    # ── teambisim ──────────────────────────────────────────
    tb_p = sub.add_parser("teambisim", help="Team k-bisimilarity")
    _add_model_args(tb_p, other=True)
    _add_team_args(tb_p)
    _add_team_args(tb_p, prefix="other-team")
    tb_p.add_argument("-k", type=int, help="Depth (default: enumeration.max_k)")
    _add_common_args(tb_p)

    # ── hintikka ───────────────────────────────────────────
    hin_p = sub.add_parser("hintikka", help="Hintikka or characteristic formula")
    _add_model_args(hin_p)
    hin_p.add_argument("--world", help="Print the Hintikka formula of this world")
    _add_team_args(hin_p)
    hin_p.add_argument("-k", type=int, help="Depth (default: enumeration.max_k)")
    _add_char_args(hin_p)
    _add_common_args(hin_p)

    # ── synthesize ─────────────────────────────────────────
    syn_p = sub.add_parser("synthesize", help="Synthesize a defining formula from samples")
    syn_p.add_argument("--manifest", required=True, help="YAML manifest of (model, team) samples")
    syn_p.add_argument("-k", type=int, help="Override the manifest's k")
    syn_p.add_argument("--out", help="Also write the formula to this file")
    _add_char_args(syn_p, dialect_default=None)
    _add_common_args(syn_p)

    # ── closure ────────────────────────────────────────────
    clo_p = sub.add_parser("closure", help="Check closure properties over small models")
    _add_formula_arg(clo_p)
    clo_p.add_argument(
        "--property",
        choices=[p.value for p in ClosureProperty] + ["all"],
        default="all",
    )
    clo_p.add_argument("--max-worlds", type=int, help="Default: enumeration.max_worlds")
    clo_p.add_argument("--props", help="Comma-separated propositions (default: the formula's)")
    clo_p.add_argument("-k", type=int, help="Bisimulation depth (default: modal depth; at most enumeration.max_k)")
    clo_p.add_argument("--parallel", action="store_true", help="Evaluate models in a process pool")
    _add_common_args(clo_p)

    # ── game ───────────────────────────────────────────────
    game_p = sub.add_parser("game", help="Find a winning semantic-game strategy")
    _add_model_args(game_p)
    _add_team_args(game_p)
    _add_formula_arg(game_p)
    game_p.add_argument("--out", help="Write the strategy document here")
    _add_common_args(game_p)

    # ── witness ────────────────────────────────────────────
    wit_p = sub.add_parser("witness", help="Build the lower-bound witness model")
    wit_p.add_argument("-n", type=int, required=True, help="Inclusion-atom arity")
    wit_p.add_argument("--out", help="Write the model (team 'T') here")
    wit_p.add_argument("--audit", metavar="FORMULA", help="Run the removal argument for FORMULA")
    _add_common_args(wit_p)

    # ── props ──────────────────────────────────────────────
    props_p = sub.add_parser("props", help="Structural metrics of a formula")
    _add_formula_arg(props_p)
    _add_common_args(props_p)

    # ── rewrite ────────────────────────────────────────────
    rw_p = sub.add_parser("rewrite", help="Translate between nab and |!")
    _add_formula_arg(rw_p)
    rw_p.add_argument("--to", choices=sorted(REWRITES), required=True)
    _add_common_args(rw_p)

    return parser


def _add_model_args(parser, other=False):
    parser.add_argument("--model", required=True, help="JSON model document")
    if other:
        parser.add_argument("--other", help="Second model document (default: --model)")


def _add_team_args(parser, prefix="team"):
    group = parser.add_mutually_exclusive_group()
    group.add_argument(f"--{prefix}", help="Team name from the model document")
    group.add_argument(f"--{prefix}-inline", help="Comma-separated world ids")


def _add_formula_arg(parser):
    parser.add_argument("--formula", required=True)


def _add_char_args(parser, dialect_default=CharDialect.MINC.value):
    parser.add_argument(
        "--dialect", choices=[d.value for d in CharDialect], default=dialect_default
    )
    parser.add_argument(
        "--bot-encoding",
        choices=[e.value for e in BotEncoding],
        default=BotEncoding.CONSTANT.value,
        help="Write top/bot as constants or as p | ~p and p & ~p",
    )
    parser.add_argument("--minimize", action="store_true", help="Drop trivial inclusion atoms")


def _add_common_args(parser):
    opts = parser.add_argument_group("options")
    opts.add_argument("--config", help="Path to teamcheck.yaml")
    opts.add_argument("--json", action="store_true", help="Machine-readable output")
    opts.add_argument("--verbose", "-v", action="store_true")
    opts.add_argument("--mode", choices=["reference", "optimized"])
    opts.add_argument("--max-steps", type=int, help="Evaluation budget")
    opts.add_argument("--no-memo", action="store_true", help="Disable memoisation")


# ── Main ───────────────────────────────────────────────────────────────


def main(argv=None):
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_ERROR if e.code else EXIT_OK

    dispatch = {
        "check": cmd_check,
        "bisim": cmd_bisim,
        "teambisim": cmd_teambisim,
        "hintikka": cmd_hintikka,
        "synthesize": cmd_synthesize,
        "closure": cmd_closure,
        "game": cmd_game,
        "witness": cmd_witness,
        "props": cmd_props,
        "rewrite": cmd_rewrite,
    }

    handler = dispatch.get(args.command)
    if not handler:
        parser.print_help()
        return EXIT_ERROR

    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="  %(levelname)s %(name)s: %(message)s",
        force=True,
    )

    try:
        return handler(args)
    except BudgetExceeded as e:
        print(f"Budget exceeded: {e}", file=sys.stderr)
        return EXIT_BUDGET
    except TeamLogicError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_ERROR


def run(argv=None):
    """main() plus the last-resort handler that writes a traceback log."""
    try:
        return main(argv)
    except KeyboardInterrupt:
        print("\nCancelled.")
        return EXIT_FAIL
    except Exception as e:
        log_path = "teamcheck_error.log"
        with open(log_path, "w") as f:
            traceback.print_exc(file=f)
        print(f"\nUnexpected error: {e}")
        print(f"Full traceback written to {log_path}")
        return EXIT_ERROR


if __name__ == "__main__":
    sys.exit(run())
