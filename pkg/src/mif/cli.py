"""Command line harness.

  mif run      --alg hidden --adv echo --n 10000 --r 100 --delta 0.01 --seed 1
  mif estimate --alg classical --adv static:1,2,3,4,5 --n 10 --r 5 --delta 0.1 --trials 100000
  mif space    --alg zero --adv uniform --n 100 --r 10 --trials 1000
  mif verify   --alg pigeonhole --max-n 6 --max-r 5
  mif avoid    --t 5 --a 3 --b 1
  mif params   --alg batch --n 1000000 --r 1000 --delta 0.05

All randomness derives from --seed.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys

from .adversaries import parse_adversary
from .algorithms import ALGORITHMS, algorithm_params
from .avoid import avoid_min_messages
from .core import Instance, ParameterError, check_transcript
from .harness import EXHAUSTIVE_LIMIT, estimate_error, exhaustive_verify, play, space_profile
from .rand import derive_trial_seed

SCHEMA_VERSION = 1

ESTIMATE_COLUMNS = ["alg", "adv", "n", "r", "delta", "trials", "failures", "point", "ci_low", "ci_high"]
SPACE_COLUMNS = ["alg", "model", "max_state_bits", "mean_state_bits", "oracle_random_bits", "seed_bits"]
AVOID_COLUMNS = ["t", "a", "b", "min_messages", "lower_bound_a_plus_1"]


def _instance_args(p, trials=False):
    p.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    p.add_argument("--adv", required=True, help="echo | uniform | static:<e1,e2,...>")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.1)
    p.add_argument("--seed", type=int, default=0)
    if trials:
        p.add_argument("--trials", type=int, required=True)
        p.add_argument("--parallel", type=int, default=1)
        p.add_argument("--no-header", action="store_true")


def build_parser():
    parser = argparse.ArgumentParser(prog="mif", description="Missing-item-finding experiments")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("run", help="play one game and print its transcript as JSON")
    _instance_args(p)
    p.add_argument("--dump-transcript", metavar="PATH")

    p = sub.add_parser("estimate", help="Monte Carlo error rate as a CSV row")
    _instance_args(p, trials=True)
    p.add_argument("--judgment", choices=["whole", "final"], default="whole")

    p = sub.add_parser("space", help="encoded state size profile as a CSV row")
    _instance_args(p, trials=True)

    p = sub.add_parser("verify", help="exhaustively check every stream for small n, r")
    p.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    p.add_argument("--max-n", type=int, required=True)
    p.add_argument("--max-r", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("avoid", help="minimum deterministic AVOID(t,a,b) message count")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--a", type=int, required=True)
    p.add_argument("--b", type=int, required=True)
    p.add_argument("--no-header", action="store_true")

    p = sub.add_parser("params", help="derived algorithm parameters as JSON")
    p.add_argument("--alg", required=True, choices=sorted(ALGORITHMS))
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", type=int, required=True)
    p.add_argument("--delta", type=float, default=0.1)
    return parser


def _write_csv(out, columns, row, header=True):
    w = csv.writer(out, lineterminator="\n")
    if header:
        w.writerow(columns)
    w.writerow([row[c] for c in columns])


def cmd_run(args, out):
    instance = Instance(args.n, args.r, args.delta)
    trial_seed = derive_trial_seed(args.seed, 0)
    alg = ALGORITHMS[args.alg](instance, derive_trial_seed(trial_seed, 0))
    adv = parse_adversary(args.adv)(instance, derive_trial_seed(trial_seed, 1))
    tr = play(alg, adv, instance)
    report = check_transcript(instance, tr)
    doc = {
        "schema_version": SCHEMA_VERSION,
        "alg": args.alg,
        "adv": args.adv,
        "n": args.n,
        "r": args.r,
        "delta": args.delta,
        "seed": args.seed,
        **tr.to_dict(),
        "failed": report.failed,
        "final_failed": report.final_failure,
    }
    text = json.dumps(doc)
    if args.dump_transcript:
        with open(args.dump_transcript, "w") as f:
            f.write(text + "\n")
    out.write(text + "\n")
    return 0


def cmd_estimate(args, out):
    instance = Instance(args.n, args.r, args.delta)
    est = estimate_error(ALGORITHMS[args.alg], parse_adversary(args.adv), instance,
                         args.trials, args.seed, judgment=args.judgment, parallel=args.parallel)
    row = dict(alg=args.alg, adv=args.adv, n=args.n, r=args.r, delta=args.delta,
               trials=est.trials, failures=est.failures, point=est.point,
               ci_low=est.ci_low, ci_high=est.ci_high)
    _write_csv(out, ESTIMATE_COLUMNS, row, not args.no_header)
    return 0


def cmd_space(args, out):
    instance = Instance(args.n, args.r, args.delta)
    rep = space_profile(ALGORITHMS[args.alg], parse_adversary(args.adv), instance,
                        args.trials, args.seed, parallel=args.parallel)
    row = dict(alg=args.alg, model=rep.model, max_state_bits=rep.max_state_bits,
               mean_state_bits=rep.mean_state_bits, oracle_random_bits=rep.oracle_random_bits,
               seed_bits=rep.seed_bits)
    _write_csv(out, SPACE_COLUMNS, row, not args.no_header)
    return 0


def cmd_verify(args, out):
    any_fail = False
    for n in range(2, args.max_n + 1):
        for r in range(1, min(args.max_r, n - 1) + 1):
            if n ** r > EXHAUSTIVE_LIMIT:
                out.write(f"{n},{r},skipped\n")
                continue
            res = exhaustive_verify(ALGORITHMS[args.alg], n, r, seed=args.seed, delta=args.delta)
            if res.passed:
                out.write(f"{n},{r},pass\n")
            else:
                any_fail = True
                stream = " ".join(map(str, res.counterexample))
                out.write(f"{n},{r},fail,{stream}\n")
    return 1 if any_fail else 0


def cmd_avoid(args, out):
    m = avoid_min_messages(args.t, args.a, args.b)
    row = dict(t=args.t, a=args.a, b=args.b, min_messages=m, lower_bound_a_plus_1=args.a + 1)
    _write_csv(out, AVOID_COLUMNS, row, not args.no_header)
    return 0


def cmd_params(args, out):
    instance = Instance(args.n, args.r, args.delta)
    doc = {"schema_version": SCHEMA_VERSION, "alg": args.alg,
           **algorithm_params(args.alg, instance)}
    out.write(json.dumps(doc) + "\n")
    return 0


COMMANDS = {
    "run": cmd_run,
    "estimate": cmd_estimate,
    "space": cmd_space,
    "verify": cmd_verify,
    "avoid": cmd_avoid,
    "params": cmd_params,
}


def main(argv=None, out=None):
    args = build_parser().parse_args(argv)
    out = sys.stdout if out is None else out
    try:
        return COMMANDS[args.command](args, out)
    except (ParameterError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
