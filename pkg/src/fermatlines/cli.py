"""Command-line front end: run lemma verifications and emit reports.

Usage pattern: `verify <lemma-id|all> [--n N] [--d D] [--m M] [--seed S]...
[--trials K] [--jobs J] [--json PATH] [--config PATH]`.  One JSON line is
written per (lemma, seed) pair plus a trailing summary object; stdout gets
an aligned human table.  Exit code 0 when everything passes, 1 on any FAIL,
2 when the worst outcome is INFEASIBLE or INDETERMINATE, 64 on usage
errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

from .rng import Rng
from .verifiers import (FAIL, INDETERMINATE, INFEASIBLE, PASS, LemmaReport,
                        verify_generic_systems, verify_incidence,
                        verify_kernel_generic, verify_kernel_special,
                        verify_point_ideal, verify_secant, verify_tangency,
                        verify_w_basis, verify_xi_generic, verify_xi_special)

REGISTRY = ("w-basis", "kernel-generic", "kernel-special", "point-ideal",
            "xi-special", "xi-generic", "systems", "secant", "incidence",
            "tangency")

EXIT_OK = 0
EXIT_FAIL = 1
EXIT_SOFT = 2
EXIT_USAGE = 64


def registry():
    """Fixed, ordered lemma identifiers."""
    return REGISTRY


@dataclass
class RunConfig:
    n: int = 2
    d: int | None = None          # defaults to 2n+2
    m: int | None = None          # defaults to d // 2
    seeds: list = field(default_factory=lambda: [0])
    lemmas: list = field(default_factory=lambda: list(REGISTRY))
    trials: int = 5
    jobs: int = 1
    output_path: str | None = None

    def resolve(self):
        d = self.d if self.d is not None else 2 * self.n + 2
        m = self.m if self.m is not None else d // 2
        if self.n < 1:
            raise ValueError("--n must be >= 1")
        if d < 4:
            raise ValueError("--d must be >= 4")
        if not 0 < m < d:
            raise ValueError("--m must satisfy 0 < m < d")
        if self.trials < 1:
            raise ValueError("--trials must be >= 1")
        if self.jobs < 1:
            raise ValueError("--jobs must be >= 1")
        for lemma in self.lemmas:
            if lemma not in REGISTRY:
                raise ValueError("unknown lemma id %r" % lemma)
        if not self.seeds:
            raise ValueError("need at least one seed")
        return d, m


def run_lemma(lemma: str, n: int, d: int, m: int, seed: int,
              trials: int = 5) -> LemmaReport:
    """Dispatch one (lemma, seed) pair to its verifier."""
    rng = Rng(seed).split(lemma)
    if lemma == "w-basis":
        return verify_w_basis(n, d, rng, trials)
    if lemma == "kernel-generic":
        return verify_kernel_generic(n, d, rng, trials)
    if lemma == "kernel-special":
        return verify_kernel_special(n, d, rng, trials)
    if lemma == "point-ideal":
        return verify_point_ideal(n, d, rng, trials=trials)
    if lemma == "xi-special":
        return verify_xi_special(n, d, rng, trials)
    if lemma == "xi-generic":
        return verify_xi_generic(n, d, rng, trials)
    if lemma == "systems":
        return verify_generic_systems(rng, draws=trials, singular_draws=trials,
                                      n=n, d=d)
    if lemma == "secant":
        return verify_secant(n, d, rng, trials)
    if lemma == "incidence":
        return verify_incidence(n, d, m, seed=seed)
    if lemma == "tangency":
        return verify_tangency(n, d, m, rng, trials)
    raise ValueError("unknown lemma id %r" % lemma)


def _dims_str(dims: dict) -> str:
    return ",".join("%s=%s" % (k, v) for k, v in dims.items())


def run(config: RunConfig, out=None) -> int:
    """Execute the configured runs, write reports, return the exit code."""
    out = out if out is not None else sys.stdout
    d, m = config.resolve()
    items = [(lemma, seed) for lemma in config.lemmas for seed in config.seeds]

    def work(item):
        lemma, seed = item
        return run_lemma(lemma, config.n, d, m, seed, config.trials)

    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            reports = list(pool.map(work, items))
    else:
        reports = [work(item) for item in items]

    header = ("lemma", "n", "d", "seed", "verdict", "dims", "ms")
    table = [header]
    for rep in reports:
        table.append((rep.lemma, str(rep.n), str(rep.d), str(rep.seed),
                      rep.verdict, _dims_str(rep.dims), str(rep.elapsed_ms)))
    widths = [max(len(row[i]) for row in table) for i in range(len(header))]
    for row in table:
        out.write("  ".join(cell.ljust(w) for cell, w in zip(row, widths)).rstrip() + "\n")

    counts = {PASS: 0, FAIL: 0, INDETERMINATE: 0, INFEASIBLE: 0}
    for rep in reports:
        counts[rep.verdict] = counts.get(rep.verdict, 0) + 1
    out.write("summary: %d runs, %d pass, %d fail, %d indeterminate, %d infeasible\n"
              % (len(reports), counts[PASS], counts[FAIL],
                 counts[INDETERMINATE], counts[INFEASIBLE]))

    if config.output_path:
        with open(config.output_path, "w", encoding="utf-8") as fh:
            for rep in reports:
                fh.write(rep.to_json() + "\n")
            fh.write(json.dumps({"summary": {
                "runs": len(reports),
                "pass": counts[PASS],
                "fail": counts[FAIL],
                "indeterminate": counts[INDETERMINATE],
                "infeasible": counts[INFEASIBLE],
            }}) + "\n")

    if counts[FAIL]:
        return EXIT_FAIL
    if counts[INDETERMINATE] or counts[INFEASIBLE]:
        return EXIT_SOFT
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        sys.stderr.write("error: %s\n" % message)
        sys.exit(EXIT_USAGE)


def _build_parser() -> _Parser:
    parser = _Parser(prog="verify",
                     description="Run exact verifications of the family lemmas.")
    parser.add_argument("lemma", choices=("all",) + REGISTRY,
                        help="lemma id, or 'all' for the whole registry")
    parser.add_argument("--n", type=int, default=None, help="fiber dimension (default 2)")
    parser.add_argument("--d", type=int, default=None, help="degree (default 2n+2)")
    parser.add_argument("--m", type=int, default=None,
                        help="multiplicity for incidence/tangency (default d//2)")
    parser.add_argument("--seed", type=int, action="append", default=None,
                        help="seed, repeatable (default 0)")
    parser.add_argument("--trials", type=int, default=None,
                        help="samples per genericity claim (default 5)")
    parser.add_argument("--jobs", type=int, default=None,
                        help="concurrent (lemma, seed) runs (default 1)")
    parser.add_argument("--json", dest="json_path", default=None,
                        help="write JSON Lines reports to this path")
    parser.add_argument("--config", default=None,
                        help="JSON config file; explicit flags override it")
    return parser


def _load_config(path: str) -> dict:
    with open(path, encoding="utf-8") as fh:
        obj = json.load(fh)
    if not isinstance(obj, dict):
        raise ValueError("config must be a JSON object")
    return obj


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    file_cfg = {}
    if args.config:
        try:
            file_cfg = _load_config(args.config)
        except (OSError, ValueError) as exc:
            sys.stderr.write("error: cannot read config: %s\n" % exc)
            return EXIT_USAGE

    def pick(flag, key, fallback):
        if flag is not None:
            return flag
        return file_cfg.get(key, fallback)

    if args.lemma == "all":
        lemmas = list(file_cfg.get("lemmas", REGISTRY))
    else:
        lemmas = [args.lemma]
    config = RunConfig(
        n=pick(args.n, "n", 2),
        d=pick(args.d, "d", None),
        m=pick(args.m, "m", None),
        seeds=list(pick(args.seed, "seeds", [0])),
        lemmas=lemmas,
        trials=pick(args.trials, "trials", 5),
        jobs=pick(args.jobs, "jobs", 1),
        output_path=pick(args.json_path, "json", None),
    )
    try:
        config.resolve()
    except ValueError as exc:
        sys.stderr.write("error: %s\n" % exc)
        return EXIT_USAGE
    return run(config)


if __name__ == "__main__":
    sys.exit(main())
