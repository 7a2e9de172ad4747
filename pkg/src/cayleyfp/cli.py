"""``cayleyfp`` command line.

Exit status: 0 on success, 1 when a computation refuses its input (bad
parameters, caps, composite moduli), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .bounds import BoundParams, bound_report
from .cayley import independence_number, is_independent
from .errors import CayleyFPError
from .fingerprint import fingerprint_pipeline
from .freiman import check_dimension_vs_doubling, freiman_dimension_oracle
from .gap import Gap, gap_contains, gap_elements, log_count_gaps, normalize_pow2
from .harness import ExperimentConfig, read_config_file, run_experiment
from .zn import ZnSet, sample_p_random


class UsageError(Exception):
    pass


def _residues(text: str) -> list[int]:
    text = text.strip()
    if not text:
        return []
    try:
        return [int(x) for x in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _fmt(A: ZnSet) -> str:
    return ",".join(map(str, A))


def _set_from(args, attr: str = "set") -> ZnSet:
    members = getattr(args, attr)
    if members is not None:
        return ZnSet.from_iterable(args.n, members)
    if args.p is None:
        raise UsageError(f"give --{attr.replace('_', '-')} or --p")
    return sample_p_random(args.n, args.p, args.seed)


def cmd_sample(args) -> None:
    S = sample_p_random(args.n, args.p, args.seed)
    print(f"size={len(S)}")
    if not args.count_only:
        print(f"set={_fmt(S)}")


def cmd_alpha(args) -> None:
    S = _set_from(args)
    res = independence_number(S, time_budget=args.time_budget, node_budget=args.node_budget)
    print(f"alpha={res.alpha}")
    print(f"witness={_fmt(res.witness)}")
    print(f"exact={str(res.exact).lower()}")
    print(f"nodes={res.node_count}")


def cmd_independent(args) -> None:
    S = ZnSet.from_iterable(args.n, args.set)
    A = ZnSet.from_iterable(args.n, args.candidate)
    print(f"independent={str(is_independent(A, S)).lower()}")


def cmd_dimension(args) -> None:
    A = ZnSet.from_iterable(args.n, args.set)
    K, d, holds = check_dimension_vs_doubling(A)
    print(f"dimension={d}")
    print(f"doubling={K}")
    print(f"dimension_below_2K={str(holds).lower()}")
    if args.oracle:
        print(f"oracle={freiman_dimension_oracle(A)}")


def cmd_fingerprint(args) -> None:
    A = ZnSet.from_iterable(args.n, args.set)
    rep = fingerprint_pipeline(A, args.a, args.C, args.xi)
    for problem in rep.structure_violations():
        print(f"warning: {problem}", file=sys.stderr)
    print(json.dumps({"schema": 1, **rep.to_dict()}, indent=2))


def cmd_gap(args) -> None:
    if args.count is not None:
        if args.n is None or args.log_budget is None:
            raise UsageError("--count needs --n and --log-budget")
        print(f"log_count={log_count_gaps(args.n, args.count, args.log_budget)!r}")
        return
    if args.gap is None:
        raise UsageError("give --gap or --count")
    P = Gap.from_text(args.gap)
    if args.normalize:
        P = normalize_pow2(P)
        print(f"gap={P.to_text()}")
    print(f"size={P.size}")
    if args.contains is not None:
        A = ZnSet.from_iterable(P.n, args.contains)
        print(f"contains={str(gap_contains(P, A)).lower()}")
    else:
        print(f"elements={_fmt(gap_elements(P))}")


def cmd_bounds(args) -> None:
    params = BoundParams(
        args.n,
        args.p,
        args.delta,
        alpha_slack=args.alpha_slack,
        eps_exponent=args.eps_exponent,
        fingerprint_constant=args.fingerprint_constant,
        k_coefficient=args.k_coefficient,
    )
    which = ("x1", "x2", "x3") if args.what == "all" else (args.what,)
    rep = bound_report(params, which)
    if args.table:
        print(rep.format_table())
        return
    print(f"k={rep.k!r}")
    for name, s in rep.sums.items():
        prefix = "" if len(which) == 1 else f"{name}."
        print(f"{prefix}log_sum={s.log_sum!r}")
        print(f"{prefix}vanishing={str(s.vanishing).lower()}")
    for note in rep.notes:
        print(f"note: {note}", file=sys.stderr)


EXPERIMENT_FLAGS = {
    "n": int,
    "p": float,
    "trials": int,
    "master_seed": lambda s: int(s, 0),
    "time_budget": float,
    "node_budget": int,
    "mode": str,
    "out": str,
    "threads": int,
    "set_size": int,
    "a": float,
    "delta": float,
}


def cmd_experiment(args) -> None:
    values = {}
    if args.config is not None:
        if not Path(args.config).is_file():
            raise UsageError(f"config file not found: {args.config}")
        values = read_config_file(args.config)
    overrides = {key: getattr(args, key) for key in EXPERIMENT_FLAGS}
    overrides["fixed_set"] = tuple(args.set) if args.set is not None else None
    overrides["timing"] = True if args.timing else None
    config = ExperimentConfig.from_mapping(values, overrides)
    result = run_experiment(config, stream=None if config.out else sys.stdout)
    if config.out:
        print(json.dumps(result.summary, indent=2, default=str))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cayleyfp", description="Random Cayley sum graphs on Z_n.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("sample", help="draw a p-random subset of Z_n")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--count-only", action="store_true")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("alpha", help="exact independence number of the Cayley sum graph")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", type=_residues, help="S as comma-separated residues")
    p.add_argument("--p", type=float, help="sample S instead of giving it")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--time-budget", type=float)
    p.add_argument("--node-budget", type=int)
    p.set_defaults(func=cmd_alpha)

    p = sub.add_parser("independent", help="check a candidate independent set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", type=_residues, required=True)
    p.add_argument("--candidate", type=_residues, required=True)
    p.set_defaults(func=cmd_independent)

    p = sub.add_parser("dimension", help="Freiman dimension and doubling of a set")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", type=_residues, required=True)
    p.add_argument("--oracle", action="store_true", help="also run the model-search oracle")
    p.set_defaults(func=cmd_dimension)

    p = sub.add_parser("fingerprint", help="run the fingerprint pipeline, print a JSON report")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--set", type=_residues, required=True)
    p.add_argument("--a", type=float, default=0.1, help="slack parameter")
    p.add_argument("--C", type=int, default=1)
    p.add_argument("--xi", type=float, default=1.0)
    p.set_defaults(func=cmd_fingerprint)

    p = sub.add_parser("gap", help="generalised arithmetic progressions")
    p.add_argument("--gap", help="n;v0;v1,...,vd;N1,...,Nd")
    p.add_argument("--normalize", action="store_true", help="round radii up to powers of two")
    p.add_argument("--contains", type=_residues)
    p.add_argument("--count", type=int, metavar="D", help="log-count of normalised D-GAPs")
    p.add_argument("--n", type=int)
    p.add_argument("--log-budget", type=float, help="natural log of the size budget")
    p.set_defaults(func=cmd_gap)

    p = sub.add_parser("bounds", help="log-space union bounds")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--delta", type=float, required=True)
    p.add_argument("--what", choices=("x1", "x2", "x3", "all"), default="all")
    p.add_argument("--alpha-slack", type=float, default=0.05)
    p.add_argument("--eps-exponent", type=float, default=0.0)
    p.add_argument("--fingerprint-constant", type=float, default=1.0)
    p.add_argument("--k-coefficient", type=float)
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_bounds)

    p = sub.add_parser("experiment", help="seeded Monte-Carlo trials; CSV on stdout or --out")
    p.add_argument("--config", help="key=value file; flags override it")
    for key, kind in EXPERIMENT_FLAGS.items():
        p.add_argument("--" + key.replace("_", "-"), dest=key, type=kind)
    p.add_argument("--set", type=_residues, help="replay a fixed S in every trial")
    p.add_argument("--timing", action="store_true", help="fill the micros column")
    p.set_defaults(func=cmd_experiment)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"cayleyfp: error: {exc}", file=sys.stderr)
        return 2
    except CayleyFPError as exc:
        print(f"cayleyfp: {exc}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
