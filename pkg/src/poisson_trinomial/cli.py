"""Command-line entry point: JSON in, JSON or CSV out.

Exit codes: 0 success, 1 internal error, 2 bad input, 3 a verify suite
recorded invariant failures.
"""

import argparse
import csv
import io
import json
import logging
import sys
from fractions import Fraction

from . import distribution as dist
from . import matchup
from . import parity
from . import verify
from .errors import TrinomialError, ValidationError

log = logging.getLogger("poisson_trinomial")

EXIT_OK, EXIT_INTERNAL, EXIT_INPUT, EXIT_FAILURES = 0, 1, 2, 3


def _reject_constant(name):
    raise ValidationError(f"non-finite JSON constant {name}")


def load_json(path):
    """Read JSON from a path or ``-``; decimals are kept exact as Fractions."""
    try:
        if path == "-":
            text = sys.stdin.read()
        else:
            with open(path, encoding="utf-8") as fh:
                text = fh.read()
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}") from exc
    try:
        return json.loads(text, parse_float=Fraction, parse_constant=_reject_constant)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"{path}: malformed JSON ({exc})") from exc


def _emit(payload):
    sys.stdout.write(json.dumps(payload, indent=2) + "\n")


def _emit_csv(header, rows):
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(["" if x is None else (repr(x) if isinstance(x, float) else x) for x in row])
    sys.stdout.write(buf.getvalue())


def _load_model(path):
    data = load_json(path)
    if not isinstance(data, dict):
        raise ValidationError("model JSON must be an object with a 'trials' field")
    return dist.model_from_json(data)


def _load_pmf(path):
    """Accept either a model file or a PMF file produced by ``pmf``."""
    data = load_json(path)
    if isinstance(data, dict) and "probs" in data:
        return dist.HalfLatticePMF.from_json(data)
    if isinstance(data, dict):
        return dist.pmf(dist.model_from_json(data))
    raise ValidationError("expected a model or PMF JSON object")


def cmd_pmf(args):
    _emit(dist.pmf(_load_model(args.model)).to_json())


def cmd_summary(args):
    model = _load_model(args.model)
    if args.csv:
        decomp = parity.split_parity(dist.pmf(model))
        _emit_csv(["index", "p_k", "q_k"], parity.coefficient_csv_rows(decomp))
        return
    _emit(parity.structure_report(model).to_json())


def cmd_decompose(args):
    decomp = parity.split_parity(_load_pmf(args.input))
    if args.csv:
        _emit_csv(["index", "p_k", "q_k"], parity.coefficient_csv_rows(decomp))
        return
    _emit(decomp.to_json())


def cmd_factor(args):
    decomp = parity.split_parity(_load_pmf(args.input))
    out = {}
    for name, coeffs, norm in (("even", decomp.p_coeffs, decomp.p_norm),
                               ("odd", decomp.q_coeffs, decomp.q_norm)):
        out[name] = parity.factor_poisson_binomial(coeffs).to_json() if norm > 0 else None
    _emit(out)


def cmd_optimize(args):
    data = load_json(args.instance)
    if not isinstance(data, dict):
        raise ValidationError("instance JSON must be an object")
    if args.k is not None:
        data = {**data, "k": args.k}
    instance = matchup.instance_from_json(data)
    if args.csv:
        if instance.n > 6:
            raise ValidationError("the per-ordering CSV table is limited to n <= 6")
        rows = [("-".join(map(str, s)), v) for s, v in matchup.tail_table(instance)]
        _emit_csv(["ordering", "tail"], rows)
        return
    decision = matchup.optimize_by_theorem(instance)
    out = {"mu": decision.mu, "k": decision.k, "decision": decision.kind,
           "decision_detail": decision.to_json(), "best_orderings": [], "tail": None}
    if args.strategy == "none":
        target = {matchup.STRONG_VS_STRONG: matchup.identity(instance.n),
                  matchup.STRONG_VS_WEAK: matchup.reversal(instance.n)}.get(decision.kind)
        if target is not None:
            out["best_orderings"] = [list(target)]
            out["tail"] = matchup.tail_probability(instance, target)
    else:
        start = None
        if args.start:
            start = tuple(int(x) for x in args.start.replace(",", " ").split())
        strategy = "exhaustive" if args.strategy == "exhaustive" else "inversion_local_search"
        result = matchup.optimize_search(instance, strategy, start=start)
        out["search"] = result.to_json()
        out["best_orderings"] = [list(s) for s in result.best_orderings]
        out["tail"] = result.tail
    _emit(out)


_MATCHUP_FAMILY = {"no-tie": "no-tie", "tie-heavy": "ties"}


def cmd_verify(args):
    reports = {}
    if args.suite in ("structure", "all"):
        cfg = verify.GeneratorConfig(seed=args.seed, count=args.count,
                                     n_min=args.n_min or 1, n_max=args.n_max or 10, family=args.family)
        reports["structure"] = verify.run_structure_suite(cfg, oracle_n_max=args.oracle_n_max)
    if args.suite in ("matchup", "all"):
        n_max = min(args.n_max or 6, verify.oracle.MAX_ORDERING_N)
        n_min = min(args.n_min or 2, n_max)
        cfg = verify.MatchupConfig(seed=args.seed, count=args.count, n_min=n_min, n_max=n_max,
                                   family=_MATCHUP_FAMILY.get(args.family, "general"))
        reports["matchup"] = verify.run_matchup_suite(cfg)
    payload = {name: r.to_json() for name, r in reports.items()}
    text = json.dumps(payload, sort_keys=True, indent=1) + "\n"
    if args.json_out:
        with open(args.json_out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    for name, r in reports.items():
        print(f"{name}: {r.cases_run} cases, {sum(r.checks_run.values())} checks, "
              f"{len(r.failures)} failures", file=sys.stderr)
    return EXIT_OK if all(r.ok for r in reports.values()) else EXIT_FAILURES


def build_parser():
    parser = argparse.ArgumentParser(prog="poisson-trinomial",
                                     description="Poisson trinomial distribution toolkit.")
    parser.add_argument("-v", "--verbose", action="store_true", help="log diagnostics to stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("pmf", help="exact PMF on the half-integer lattice")
    p.add_argument("model", help="model JSON path or '-'")
    p.set_defaults(func=cmd_pmf)

    p = sub.add_parser("summary", help="moments, conditional parts, modes and gaps")
    p.add_argument("model")
    p.add_argument("--csv", action="store_true", help="emit the p/q coefficient table instead")
    p.set_defaults(func=cmd_summary)

    p = sub.add_parser("decompose", help="split into even and odd coefficient sequences")
    p.add_argument("input", help="model or PMF JSON")
    p.add_argument("--csv", action="store_true")
    p.set_defaults(func=cmd_decompose)

    p = sub.add_parser("factor", help="Poisson binomial factorization of both parity parts")
    p.add_argument("input", help="model or PMF JSON")
    p.set_defaults(func=cmd_factor)

    p = sub.add_parser("optimize", help="lineup decision and ordering search")
    p.add_argument("instance", help="instance JSON path or '-'")
    p.add_argument("--strategy", choices=("none", "exhaustive", "local"), default="none")
    p.add_argument("--k", help="override the threshold (half-integer grid)")
    p.add_argument("--start", help="start ordering for local search, e.g. '3,1,2'")
    p.add_argument("--csv", action="store_true", help="per-ordering tail table (n <= 6)")
    p.set_defaults(func=cmd_optimize)

    p = sub.add_parser("verify", help="seeded invariant suites")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--family", choices=verify.FAMILIES, default="general")
    p.add_argument("--suite", choices=("structure", "matchup", "all"), default="all")
    p.add_argument("--oracle-n-max", type=int, default=10,
                   help="largest n checked against exact enumeration")
    p.add_argument("--json-out")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s", stream=sys.stderr)
    try:
        code = args.func(args)
    except TrinomialError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except Exception as exc:  # noqa: BLE001 - last-resort diagnostics
        log.debug("internal error", exc_info=True)
        print(f"internal error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    return EXIT_OK if code is None else code


if __name__ == "__main__":
    sys.exit(main())
