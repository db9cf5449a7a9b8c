import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, Iterable

from jordan_wh import sampling
from jordan_wh.codec import boundary_from_json, boundary_to_json, element_from_json, element_to_json, read_json
from jordan_wh.config import RunConfig, load_run_config
from jordan_wh.errors import JordanError
from jordan_wh.harness import exit_status, run_suite, sample_rng, write_reports
from jordan_wh.spectral import EPS_GROUP, spectral_decompose
from jordan_wh.summary import report_frame, suite_summary
from jordan_wh.wiener_hopf import CompactifiedPoint, act, act_direct, cayley, embed, represent

SAMPLERS = {
    "element": sampling.sample_element,
    "cone": sampling.sample_cone,
    "interior": sampling.sample_interior,
    "cone-boundary": sampling.sample_cone_boundary,
    "outside": sampling.sample_outside,
    "boundary": sampling.sample_boundary,
    "X": sampling.sample_X,
}


def _emit(records: Iterable[dict[str, Any]], out: str | None) -> None:
    text = "".join(json.dumps(record) + "\n" for record in records)
    if out:
        path = Path(out)
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def run_verify(cfg: RunConfig) -> int:
    reports = run_suite(cfg)
    if cfg.out:
        path = Path(cfg.out)
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8") as stream:
            write_reports(reports, stream)
    else:
        write_reports(reports, sys.stdout)
    table = suite_summary(report_frame(reports))
    print(table.to_string(index=False), file=sys.stderr)
    return exit_status(reports)


def run_spectral(cfg: RunConfig, input_path: str) -> int:
    x = element_from_json(read_json(input_path))
    decomposition = spectral_decompose(x)
    _emit(
        [
            {
                "eigenvalues": list(decomposition.eigenvalues),
                "idempotents": [element_to_json(c) for c in decomposition.idempotents],
            }
        ],
        cfg.out,
    )
    return 0


def run_act(cfg: RunConfig, point_path: str, by_path: str, method: str) -> int:
    u = CompactifiedPoint(element_from_json(read_json(point_path))).validate()
    a = element_from_json(read_json(by_path), u.algebra)
    moved = act_direct(u, a) if method == "direct" else act(u, a)
    _emit([element_to_json(moved.u)], cfg.out)
    return 0


def run_compactify(cfg: RunConfig, source: str, input_path: str) -> int:
    payload = read_json(input_path)
    if source == "x":
        u = cayley(element_from_json(payload))
    elif source == "u":
        u = CompactifiedPoint(element_from_json(payload)).validate()
    else:
        u = embed(boundary_from_json(payload))
    p = represent(u)
    # only points with e = 0 come from the cone itself
    x = element_to_json(p.x) if p.e.norm() <= EPS_GROUP else None
    _emit([{"x": x, "u": element_to_json(u.u), "boundary": boundary_to_json(p)}], cfg.out)
    return 0


def run_sample(cfg: RunConfig, kind: str, count: int) -> int:
    sampler = SAMPLERS[kind]
    alg = cfg.descriptor
    records = []
    for index in range(count):
        drawn = sampler(alg, sample_rng(cfg.seed, f"sample.{kind}", index))
        if kind == "boundary":
            records.append(boundary_to_json(drawn))
        elif kind == "X":
            records.append(element_to_json(drawn.u))
        else:
            records.append(element_to_json(drawn))
    _emit(records, cfg.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--algebra", help="descriptor such as rn:3, sym:4, spin:4, sum(sym:2,spin:3)")
    common.add_argument("--seed", help="64-bit unsigned master seed")
    common.add_argument("--samples", help="samples per check")
    common.add_argument("--tol", action="append", metavar="CHECK=VALUE", help="tolerance override")
    common.add_argument("--suite", action="append", help="suite id to run (repeatable)")
    common.add_argument("--out", help="write output here instead of stdout")
    common.add_argument("--jobs", help="worker processes for verify")
    common.add_argument("--config", help="key=value config file")
    common.add_argument("--log-level", help="DEBUG, INFO, WARNING or ERROR")

    parser = argparse.ArgumentParser(description="Jordan algebra Wiener-Hopf compactification toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("verify", parents=[common], help="run property suites")
    sub.add_parser("axb", parents=[common], help="run the ax+b suite")

    spectral = sub.add_parser("spectral", parents=[common], help="spectral decomposition of an element")
    spectral.add_argument("--input", required=True, help="element JSON file")

    act_cmd = sub.add_parser("act", parents=[common], help="compute u + a on the compactification")
    act_cmd.add_argument("--point", required=True, help="element JSON file holding u")
    act_cmd.add_argument("--by", required=True, help="element JSON file holding a")
    act_cmd.add_argument("--method", choices=["representation", "direct"], default="representation")

    compactify = sub.add_parser("compactify", parents=[common], help="convert between x, u and (e, x)")
    compactify.add_argument("--from", dest="source", choices=["x", "u", "boundary"], required=True)
    compactify.add_argument("--input", required=True, help="element or boundary point JSON file")

    sample = sub.add_parser("sample", parents=[common], help="emit seeded samples as JSON lines")
    sample.add_argument("--kind", choices=sorted(SAMPLERS), default="X")
    sample.add_argument("--count", type=int, default=10)
    return parser


def _overrides(args: argparse.Namespace) -> dict[str, str | None]:
    return {
        "algebra": args.algebra,
        "seed": args.seed,
        "samples": args.samples,
        "tol": ",".join(args.tol) if args.tol else None,
        "suites": "axb" if args.command == "axb" else (",".join(args.suite) if args.suite else None),
        "out": args.out,
        "jobs": args.jobs,
        "log_level": args.log_level,
    }


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        cfg = load_run_config(_overrides(args), args.config)
        logging.basicConfig(
            level=cfg.log_level,
            format="%(asctime)s %(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        if args.command in ("verify", "axb"):
            return run_verify(cfg)
        if args.command == "spectral":
            return run_spectral(cfg, args.input)
        if args.command == "act":
            return run_act(cfg, args.point, args.by, args.method)
        if args.command == "compactify":
            return run_compactify(cfg, args.source, args.input)
        return run_sample(cfg, args.kind, args.count)
    except (JordanError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
