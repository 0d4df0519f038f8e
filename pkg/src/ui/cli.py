"""
Command line interface

Exit codes: 0 when every check passes, 1 on a verified-property failure,
2 on usage or input errors.
"""
import argparse
import json
import logging
import os
import sys
import traceback
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence

from src.core.axioms import AXIOMS, verify_axiom
from src.core.battery import BatteryConfig, battery_document, verify_all
from src.core.data_parser import DataParser
from src.core.errors import NCLogicError
from src.core.formula import Signature, desugar, free_vars, render
from src.core.formula_parser import parse
from src.core.interpretability import (
    hat_embed, is_hereditarily_classical, verify_check_iso, verify_hat_iso, verify_hclw_equals_vcheck,
    verify_w_relativized_to_hcl,
)
from src.core.logger import RunLogger, setup_logging
from src.core.proofs import check_proof, soundness_harness
from src.core.report import CheckReport, SuiteReport
from src.core.semantics import CONNECTIVES, consequence_bounded, evaluate, truth_table
from src.core.tarski import ModelClass, classify_consequence, from_tf, roundtrip_report, tarski_value, to_tf
from src.core.universe import (
    acla_construct, bang_ext, enumerate_level, incomplete_witness, inconsistent_witness, is_classical,
    is_complete, is_consistent, make, omega_name, omega_set, parse_ncset, quest_ext, rank, render_ncset,
    sort_sets,
)
from src.plugins.export_manager import ExportManager
from src.utils.config_manager import ConfigManager

logger = logging.getLogger(__name__)

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_SIGNATURE = Signature({"p": 0, "q": 0, "r": 0, "R": 1, "S": 2})


@dataclass
class Outcome:
    """What a subcommand produced: a JSON document, its text form and a pass flag"""
    document: Dict[str, Any]
    text: Optional[str] = None
    passed: bool = True
    reports: List[CheckReport] = field(default_factory=list)


def _suite_outcome(suite: SuiteReport) -> Outcome:
    return Outcome(suite.to_dict(), passed=suite.passed, reports=list(suite.checks))


def _check_outcome(report: CheckReport) -> Outcome:
    return Outcome(report.to_dict(), passed=report.passed, reports=[report])


def _signature(args) -> Signature:
    return DataParser.load_signature(args.sig) if getattr(args, "sig", None) else DEFAULT_SIGNATURE


def _budget(config: ConfigManager) -> int:
    return int(config.get("enumeration.max_models", 2_000_000))


# ---------------------------------------------------------------------------
# Formulas and models
# ---------------------------------------------------------------------------

def cmd_parse(args, config) -> Outcome:
    phi = parse(args.formula, _signature(args))
    shown = desugar(phi) if args.desugar else phi
    text = render(shown)
    return Outcome({"formula": text, "free_vars": sorted(free_vars(phi))}, text + "\n")


def cmd_eval(args, config) -> Outcome:
    model = DataParser.load_model(args.model)
    sig = DataParser.signature_of_model(model)
    phi = parse(args.formula, sig)
    env = DataParser.parse_assignment(args.assign, model.domain)
    value = evaluate(model, phi, env)
    return Outcome({"formula": render(phi), "value": value.name, "designated": value.designated},
                   value.name + "\n")


def cmd_table(args, config) -> Outcome:
    table = truth_table(args.connective)
    return Outcome(table.to_dict(), table.render() + "\n")


def cmd_consequence(args, config) -> Outcome:
    sig = _signature(args)
    premises = [parse(h, sig) for h in args.hyp or []]
    conclusion = parse(args.formula, sig)
    verdict = consequence_bounded(premises, conclusion, args.max_size, sig, _budget(config))
    document = dict(verdict.to_dict(), premises=[render(p) for p in premises], conclusion=render(conclusion))
    return Outcome(document, f"{verdict.status} (models checked: {verdict.models_checked})\n", verdict.holds)


def cmd_check_proof(args, config) -> Outcome:
    proof = DataParser.load_proof(args.file, _signature(args))
    verdict = check_proof(proof)
    if verdict.accepted:
        text = f"accepted: {verdict.conclusion}\n"
    else:
        text = f"rejected at line {verdict.bad_line}: {verdict.reason}\n"
    return Outcome(verdict.to_dict(), text, verdict.accepted)


def cmd_soundness(args, config) -> Outcome:
    trials = args.trials or config.get("harness.trials", 1000)
    model_size = args.model_size or config.get("harness.model_size", 4)
    return _suite_outcome(soundness_harness(trials, model_size, args.seed, args.jobs))


# ---------------------------------------------------------------------------
# Universe
# ---------------------------------------------------------------------------

def cmd_universe_level(args, config) -> Outcome:
    sets = enumerate_level(args.n, config.get("enumeration.max_level", 3))
    if args.count:
        return Outcome({"level": args.n, "count": len(sets)}, f"{len(sets)}\n")
    literals = [render_ncset(x) for x in sets]
    return Outcome({"level": args.n, "count": len(sets), "sets": literals}, "\n".join(literals) + "\n")


def cmd_universe_inspect(args, config) -> Outcome:
    x = parse_ncset(args.literal)
    levels = [n for n in range(4) if x in set(enumerate_level(n))]
    info = {
        "set": render_ncset(x),
        "rank": rank(x),
        "bang": render_ncset(bang_ext(x)),
        "quest": render_ncset(quest_ext(x)),
        "classical": is_classical(x),
        "consistent": is_consistent(x),
        "complete": is_complete(x),
        "hereditarily_classical": is_hereditarily_classical(x),
        "first_level": levels[0] if levels else None,
        "omega": omega_name(x),
    }
    if rank(x) < 3:
        info["hat"] = render_ncset(hat_embed(x))
    text = "\n".join(f"{k}: {v}" for k, v in info.items()) + "\n"
    return Outcome(info, text)


def cmd_universe_axiom(args, config) -> Outcome:
    return _check_outcome(verify_axiom(args.name, args.level))


def cmd_universe_acla(args, config) -> Outcome:
    u, v = parse_ncset(args.u), parse_ncset(args.v)
    witness_b = None if args.no_inconsistent else inconsistent_witness()
    witness_n = None if args.no_incomplete else incomplete_witness()
    x = acla_construct(u, v, witness_b, witness_n)
    report = CheckReport("acla", params={"u": render_ncset(u), "v": render_ncset(v)},
                         extra={"set": render_ncset(x)})
    report.expect(bang_ext(x) is u, item="bang extension")
    report.expect(quest_ext(x) is v, item="quest extension")
    report.expect(x is make(u.pos, v.pos), item="direct pair")
    return Outcome(report.to_dict(), f"{render_ncset(x)}\n", report.passed, [report])


def cmd_universe_omega(args, config) -> Outcome:
    members = sort_sets(omega_set().pos)
    rows = [{"name": omega_name(m), "set": render_ncset(m)} for m in members]
    text = "\n".join(f"{r['name']}: {r['set']}" for r in rows) + "\n"
    return Outcome({"count": len(rows), "members": rows}, text)


# ---------------------------------------------------------------------------
# Interpretability
# ---------------------------------------------------------------------------

def cmd_embed(args, config) -> Outcome:
    if args.kind == "check":
        return _check_outcome(verify_check_iso(args.rank or config.get("enumeration.max_hf_rank", 4)))
    level = args.level or (config.get("enumeration.max_hat_level", 2) if args.kind == "hat" else 3)
    if args.kind == "hcl":
        return _check_outcome(verify_hclw_equals_vcheck(level))
    suite = SuiteReport("hat", params={"level": level})
    suite.add(verify_hat_iso(level))
    suite.add(verify_w_relativized_to_hcl(level))
    return _suite_outcome(suite)


# ---------------------------------------------------------------------------
# Tarski
# ---------------------------------------------------------------------------

def cmd_tarski_value(args, config) -> Outcome:
    model = DataParser.load_tarski_model(args.model)
    phi = parse(args.formula, DataParser.signature_of_model(model))
    env = DataParser.parse_assignment(args.assign, model.domain)
    value = tarski_value(model, phi, env)
    return Outcome({"formula": render(phi), "value": value.name}, value.name + "\n")


def cmd_tarski_to_tf(args, config) -> Outcome:
    document = to_tf(DataParser.load_tarski_model(args.model)).to_dict()
    return Outcome(document, ExportManager.to_json(document))


def cmd_tarski_from_tf(args, config) -> Outcome:
    document = from_tf(DataParser.load_model(args.model)).to_dict()
    return Outcome(document, ExportManager.to_json(document))


def cmd_tarski_classify(args, config) -> Outcome:
    sig = _signature(args)
    premises = [parse(h, sig) for h in args.hyp or []]
    conclusion = parse(args.formula, sig)
    classes = list(ModelClass) if args.cls == "all" else [ModelClass.from_name(args.cls)]
    verdicts = {c.value: classify_consequence(premises, conclusion, c, args.max_size, sig, _budget(config))
                for c in classes}
    document = {
        "premises": [render(p) for p in premises],
        "conclusion": render(conclusion),
        "max_size": args.max_size,
        "verdicts": {name: v.to_dict() for name, v in verdicts.items()},
    }
    text = "\n".join(f"{name}: {v.status}" for name, v in verdicts.items()) + "\n"
    return Outcome(document, text, all(v.holds for v in verdicts.values()))


def cmd_tarski_roundtrip(args, config) -> Outcome:
    max_formulas = args.formulas or config.get("battery.roundtrip_formulas", 24)
    return _suite_outcome(roundtrip_report(args.max_size, args.depth, max_formulas, args.jobs,
                                           _budget(config)))


# ---------------------------------------------------------------------------
# verify-all
# ---------------------------------------------------------------------------

def cmd_verify_all(args, config) -> Outcome:
    budget = args.budget or _budget(config)
    if args.quick:
        cfg = BatteryConfig.quick_run(args.seed, args.jobs, budget)
    else:
        cfg = BatteryConfig(
            seed=args.seed, jobs=args.jobs, budget=budget,
            trials=config.get("harness.trials", 1000),
            model_size=config.get("harness.model_size", 4),
            first_order_samples=config.get("harness.first_order_samples", 500),
            universe_level=config.get("enumeration.max_level", 3),
            acla_samples=config.get("battery.acla_samples", 100),
            omega_formulas=config.get("battery.omega_formulas", 50),
            max_failures=config.get("battery.max_failures", 20),
            max_hf_rank=config.get("enumeration.max_hf_rank", 4),
            hat_level=config.get("enumeration.max_hat_level", 2),
            roundtrip_formulas=config.get("battery.roundtrip_formulas", 24),
            separation_size=config.get("enumeration.max_tarski_size", 3),
        )
    suites = verify_all(cfg)
    document = battery_document(cfg, suites)
    reports = [report for suite in suites for report in suite.checks]
    return Outcome(document, passed=document["passed"], reports=reports)


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _common(parser: argparse.ArgumentParser):
    parser.add_argument("--format", choices=("text", "json"), default=None, help="report format")
    parser.add_argument("--output", metavar="PATH", help="also write the report (.json, .txt or .csv)")
    parser.add_argument("--record", action="store_true", help="store the run in the run database")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging and tracebacks")


def _seeded(parser: argparse.ArgumentParser, config: ConfigManager):
    parser.add_argument("--seed", type=int, default=config.get("harness.seed", 0))
    parser.add_argument("--jobs", type=int, default=config.get("harness.jobs", 1))


def build_parser(config: ConfigManager) -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="nclogic", description="Four-valued logic and set-universe verifier")
    sub = parser.add_subparsers(dest="command", required=True)

    def command(name: str, handler: Callable, parent=sub, **kw) -> argparse.ArgumentParser:
        p = parent.add_parser(name, **kw)
        _common(p)
        p.set_defaults(handler=handler)
        return p

    p = command("parse", cmd_parse, help="parse and print a formula")
    p.add_argument("formula")
    p.add_argument("--sig", metavar="FILE")
    p.add_argument("--desugar", action="store_true")

    p = command("eval", cmd_eval, help="value of a formula in a T/F-model")
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--assign", nargs="*", metavar="x=a")

    p = command("table", cmd_table, help="truth table of a connective")
    p.add_argument("connective", help=", ".join(CONNECTIVES))

    p = command("consequence", cmd_consequence, help="bounded countermodel search")
    p.add_argument("formula")
    p.add_argument("--hyp", action="append", metavar="F")
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--sig", metavar="FILE")

    p = command("check-proof", cmd_check_proof, help="check a proof document")
    p.add_argument("file")
    p.add_argument("--sig", metavar="FILE")

    p = command("soundness", cmd_soundness, help="random soundness harness")
    p.add_argument("--trials", type=int)
    p.add_argument("--model-size", type=int)
    _seeded(p, config)

    universe = sub.add_parser("universe", help="explore the finite set universe")
    usub = universe.add_subparsers(dest="action", required=True)
    p = command("level", cmd_universe_level, usub)
    p.add_argument("n", type=int)
    p.add_argument("--count", action="store_true")
    p = command("inspect", cmd_universe_inspect, usub)
    p.add_argument("literal")
    p = command("axiom", cmd_universe_axiom, usub)
    p.add_argument("name", help=", ".join(AXIOMS))
    p.add_argument("--level", type=int, default=config.get("enumeration.max_level", 3))
    p = command("acla", cmd_universe_acla, usub)
    p.add_argument("u")
    p.add_argument("v")
    p.add_argument("--no-inconsistent", action="store_true", help="build without the inconsistent witness")
    p.add_argument("--no-incomplete", action="store_true", help="build without the incomplete witness")
    command("omega", cmd_universe_omega, usub)

    p = command("embed", cmd_embed, help="interpretability checks")
    p.add_argument("kind", choices=("check", "hat", "hcl"))
    p.add_argument("--rank", type=int)
    p.add_argument("--level", type=int)

    tarski = sub.add_parser("tarski", help="four-valued Tarski semantics")
    tsub = tarski.add_subparsers(dest="action", required=True)
    p = command("value", cmd_tarski_value, tsub)
    p.add_argument("model")
    p.add_argument("formula")
    p.add_argument("--assign", nargs="*", metavar="x=a")
    p = command("to-tf", cmd_tarski_to_tf, tsub)
    p.add_argument("model")
    p = command("from-tf", cmd_tarski_from_tf, tsub)
    p.add_argument("model")
    p = command("classify", cmd_tarski_classify, tsub)
    p.add_argument("formula")
    p.add_argument("--class", dest="cls", default="all", help="full, consistent-only, complete-only, classical or all")
    p.add_argument("--hyp", action="append", metavar="F")
    p.add_argument("--max-size", type=int, default=config.get("enumeration.max_tarski_size", 3))
    p.add_argument("--sig", metavar="FILE")
    p = command("roundtrip", cmd_tarski_roundtrip, tsub)
    p.add_argument("--max-size", type=int, default=2)
    p.add_argument("--depth", type=int, default=3)
    p.add_argument("--formulas", type=int, help="number of sentences swept against every model")
    p.add_argument("--jobs", type=int, default=config.get("harness.jobs", 1))

    p = command("verify-all", cmd_verify_all, help="run every battery")
    p.add_argument("--budget", type=int)
    p.add_argument("--quick", action="store_true", help="narrowed bounds for a smoke run")
    _seeded(p, config)

    return parser


def _emit(outcome: Outcome, args, config: ConfigManager):
    fmt = args.format or config.get("output.format", "text")
    indent = config.get("output.indent", 2)
    if fmt == "json":
        sys.stdout.write(ExportManager.to_json(outcome.document, indent))
    else:
        sys.stdout.write(outcome.text if outcome.text is not None else ExportManager.to_text(outcome.document))
    if args.output:
        ExportManager.export(outcome.document, args.output, indent)


def _record(outcome: Outcome, args, config: ConfigManager):
    db_path = os.path.join(config.get("logging.log_dir", "logs"),
                           config.get("logging.db_name", "verification_runs.db"))
    store = RunLogger(db_path)
    options = {k: v for k, v in vars(args).items() if k != "handler"}
    run_id = store.start_run(args.command, getattr(args, "seed", None), options)
    for report in outcome.reports:
        store.log_check(run_id, report)
    store.end_run(run_id, "pass" if outcome.passed else "fail")
    logger.info(f"recorded run {run_id} in {db_path}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    try:
        config = ConfigManager()
    except NCLogicError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE

    args = build_parser(config).parse_args(argv)
    setup_logging("DEBUG" if args.verbose else config.get("logging.log_level", "WARNING"))

    try:
        outcome = args.handler(args, config)
        _emit(outcome, args, config)
        if args.record or config.get("logging.record_runs", False):
            _record(outcome, args, config)
    except (NCLogicError, OSError, json.JSONDecodeError) as e:
        if args.verbose:
            traceback.print_exc()
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_PASS if outcome.passed else EXIT_FAIL
