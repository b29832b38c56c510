import argparse
import json
import os
import sys
from typing import List, Optional

import jsonlines
from tqdm import tqdm

from ..core.errors import AbdkitError, PreconditionError
from ..core.instance_io import load_instance, save_instance
from ..core.oracle import check_explanation
from ..core.types import Param, Variant
from ..reductions import gen_indset_eq, gen_vertexcover_le, parse_edges, write_wsat
from ..utils.config import get_settings
from ..utils.logging_utils import init_logger, set_log_level
from .engines import solve, verify, wsat_reduction_for
from .verdicts import classify

logger = init_logger(__name__)

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DISAGREEMENT = 3


def _emit(obj):
    print(json.dumps(obj, sort_keys=True))


def _load(args):
    inst = load_instance(args.input)
    if getattr(args, "size", None) is not None:
        inst = inst.replace(size=args.size)
    return inst


def run_classify(args) -> int:
    inst = _load(args)
    verdict = classify(inst.language, args.variant, args.param)
    _emit({"verdict": verdict.label, "citation": verdict.source, "coclone": verdict.coclone})
    return EXIT_OK


def run_solve(args) -> int:
    inst = _load(args)
    limit = get_settings(oracle_limit=args.oracle_limit).oracle_limit
    result = solve(inst, args.variant, engine=args.engine, param=args.param, oracle_limit=limit)
    _emit(result.to_dict())
    return EXIT_OK


def run_reduce(args) -> int:
    inst = _load(args)
    reduce = wsat_reduction_for(inst)
    if reduce is None:
        raise PreconditionError("no weighted-SAT reduction covers this language")
    image = reduce(inst)
    with open(args.output, "w") as f:
        f.write(write_wsat(image))
    _emit(
        {
            "reduction": reduce.__name__,
            "k": image.k,
            "variables": len(image.variables),
            "clauses": len(image.clauses),
            "note": image.note,
        }
    )
    return EXIT_OK


def run_generate(args) -> int:
    if args.edges_file:
        with open(args.edges_file) as f:
            graph = parse_edges(f.read())
    else:
        graph = parse_edges(args.edges or "")
    generate = gen_indset_eq if args.problem == "indset" else gen_vertexcover_le
    inst = generate(graph, args.k)
    save_instance(inst, args.output)
    _emit({"problem": args.problem, "size": inst.size, "hypotheses": inst.H, "manifestations": inst.M})
    return EXIT_OK


def _instance_files(path: str) -> List[str]:
    if os.path.isdir(path):
        return sorted(os.path.join(path, f) for f in os.listdir(path) if f.endswith(".abd"))
    return [path]


def run_verify(args) -> int:
    limit = get_settings(oracle_limit=args.oracle_limit).oracle_limit
    files = _instance_files(args.input)
    records = []
    for path in tqdm(files, desc="Verifying", disable=len(files) < 2):
        inst = load_instance(path)
        if args.size is not None:
            inst = inst.replace(size=args.size)
        record = {"path": path, **verify(inst, args.variant, oracle_limit=limit).to_dict()}
        if args.explanation is not None:
            record["explanation_check"] = check_explanation(inst, args.explanation, Variant.parse(args.variant))
        records.append(record)
    if args.output_path:
        with jsonlines.open(args.output_path, mode="w") as writer:
            writer.write_all(records)
    disagreements = [r["path"] for r in records if not r["agree"]]
    summary = {"instances": len(records), "disagreements": disagreements}
    if len(records) == 1:
        summary.update(records[0])
    summary["status"] = "all engines agree" if not disagreements else "disagreement"
    _emit(summary)
    return EXIT_DISAGREEMENT if disagreements else EXIT_OK


def _names(text: str) -> List[str]:
    return [t for t in text.replace(",", " ").split() if t]


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="abdkit", description="Parameterised propositional abduction toolkit")
    parser.add_argument("--log_level", type=str, default="WARNING", help="Level of the abdkit logger")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_args(p, variant_required=True):
        p.add_argument("-i", "--input", type=str, required=True, help="Instance file (.abd)")
        p.add_argument(
            "--variant", type=str, choices=[x.value for x in Variant], required=variant_required, default="plain"
        )
        p.add_argument("--size", type=int, default=None, help="Override the size bound s of the instance")

    p = sub.add_parser("classify", help="Complexity verdict for the instance language")
    instance_args(p)
    p.add_argument("--param", type=str, choices=[x.value for x in Param], default="H")
    p.set_defaults(func=run_classify)

    p = sub.add_parser("solve", help="Decide the instance and print a witness")
    instance_args(p)
    p.add_argument("--engine", type=str, default="auto", help="auto, oracle or a solver name")
    p.add_argument("--param", type=str, choices=[x.value for x in Param], default="H")
    p.add_argument("--oracle_limit", type=int, default=None, help="Cap on 2^|H| * 2^|V| brute-force work")
    p.set_defaults(func=run_solve)

    p = sub.add_parser("reduce", help="Reduce an Exact instance to weighted SAT")
    instance_args(p, variant_required=False)
    p.add_argument("--target", type=str, choices=["wsat"], default="wsat")
    p.add_argument("-o", "--output", type=str, required=True)
    p.set_defaults(func=run_reduce)

    p = sub.add_parser("generate", help="Abduction instance from a graph problem")
    p.add_argument("problem", choices=["indset", "vcover"])
    p.add_argument("--edges", type=str, default=None, help="Edge list such as a-b,b-c")
    p.add_argument("--edges_file", type=str, default=None, help="Whitespace edge-list file")
    p.add_argument("-k", type=int, required=True)
    p.add_argument("-o", "--output", type=str, required=True)
    p.set_defaults(func=run_generate)

    p = sub.add_parser("verify", help="Cross-check every applicable engine against the oracle")
    instance_args(p)
    p.add_argument("--explanation", type=_names, default=None, help="Candidate explanation to check, a,b,c")
    p.add_argument("--oracle_limit", type=int, default=None)
    p.add_argument("--output_path", type=str, default=None, help="jsonlines report path")
    p.set_defaults(func=run_verify)
    return parser


def main(argv: Optional[List[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    set_log_level(args.log_level)
    try:
        return args.func(args)
    except (AbdkitError, ValueError, OSError) as e:
        logger.debug("command failed", exc_info=True)
        print(f"abdkit: error: {e}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
