"""Command-line interface.

Exit codes: 0 success, 2 usage or bad input, 3 resource guard,
4 internal-consistency failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io as _io
import json
import logging
import os
import sys
import time
from pathlib import Path

from . import __version__
from .bits import members
from .cache import get_census, resolve_cache_dir
from .constructions import bipartite_parity_fort, lift_zfs, product_fort
from .errors import ConsistencyError, FortlibError, ResourceLimitError
from .forcing import closure
from .forts import DEFAULT_BUDGET, enumerate_forts_of_size
from .graph import build_hypercube, cartesian_product
from .io import dumps, format_edge_list, graph_to_dict, load_graph, parse_vertex_set
from .search import PARAMETERS, compute_parameters, enumerate_minimum_zfs, min_zero_forcing_number, pt_spectrum
from .symmetry import canonical_form, classify_orbits
from .verify import verify_paper

EXIT_OK, EXIT_USAGE, EXIT_RESOURCE, EXIT_CONSISTENCY = 0, 2, 3, 4

log = logging.getLogger("fortlib")


class UsageError(Exception):
    pass


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("-o", "--output", help="write JSON here instead of stdout")
    common.add_argument("--cache-dir", help="census cache directory (FORTLIB_CACHE overrides)")
    common.add_argument("--jobs", type=_positive_int, default=os.cpu_count() or 1,
                        help="worker processes for subset scans")
    common.add_argument("--budget", type=_positive_int, default=DEFAULT_BUDGET,
                        help="candidate-set cap for exhaustive scans")
    common.add_argument("--seed", type=int, default=0, help="seed for randomized checks")
    common.add_argument("--manifest", help="write a run manifest JSON to this path")
    common.add_argument("-v", "--verbose", action="store_true")

    parser = argparse.ArgumentParser(prog="fortlib", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"fortlib {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", help="generate a graph file")
    gen_sub = gen.add_subparsers(dest="kind", required=True)
    p = gen_sub.add_parser("hypercube", parents=[common])
    p.add_argument("d", type=int)
    p.add_argument("--format", choices=["json", "edgelist"], default="json")
    p = gen_sub.add_parser("product", parents=[common])
    p.add_argument("left")
    p.add_argument("right")
    p.add_argument("--format", choices=["json", "edgelist"], default="json")
    p = gen_sub.add_parser("edgelist", parents=[common], help="convert an edge list to JSON")
    p.add_argument("file")
    p.add_argument("--format", choices=["json", "edgelist"], default="json")

    p = sub.add_parser("forts", parents=[common], help="minimal-fort census or forts of one size")
    p.add_argument("graph")
    mode = p.add_mutually_exclusive_group(required=True)
    mode.add_argument("--minimal", action="store_true", help="full minimal-fort census (n <= 16)")
    mode.add_argument("--size", type=_positive_int, help="all forts with exactly this many vertices")
    p.add_argument("--csv", action="store_true", help="print the size histogram as CSV")

    zf = sub.add_parser("zf", help="zero forcing sets")
    zf_sub = zf.add_subparsers(dest="zf_command", required=True)
    for name in ("number", "enumerate", "pt"):
        q = zf_sub.add_parser(name, parents=[common])
        q.add_argument("graph")
    q = zf_sub.add_parser("trace", parents=[common], help="closure trace of one set")
    q.add_argument("graph")
    q.add_argument("set", help="vertex indices or labels, comma separated or JSON list")

    p = sub.add_parser("params", parents=[common], help="graph parameters")
    p.add_argument("graph")
    p.add_argument("--all", action="store_true")
    for name in PARAMETERS:
        p.add_argument(f"--{name.replace('_', '-')}", dest=f"param_{name}", action="store_true")

    con = sub.add_parser("construct", help="product fort constructions")
    con_sub = con.add_subparsers(dest="construction", required=True)
    for name in ("product", "parity"):
        q = con_sub.add_parser(name, parents=[common])
        q.add_argument("--left", required=True, help="graph file G")
        q.add_argument("--left-set", required=True, help="fort F of G")
        q.add_argument("--right", required=True, help="graph file H")
        q.add_argument("--right-set", required=True, help="fort F' of H")
        if name == "parity":
            q.add_argument("--require-minimal", action="store_true")
            q.add_argument("--swap-parts", action="store_true")
    q = con_sub.add_parser("lift", parents=[common], help="copy a minimum ZFS of Q_d into Q_(d+1)")
    q.add_argument("d", type=int)
    q.add_argument("set")

    sym = sub.add_parser("sym", help="hypercube symmetry")
    sym_sub = sym.add_subparsers(dest="sym_command", required=True)
    q = sym_sub.add_parser("canon", parents=[common])
    q.add_argument("d", type=int)
    q.add_argument("set")
    q = sym_sub.add_parser("classify", parents=[common])
    q.add_argument("d", type=int)
    q.add_argument("sets", help="JSON file: list of vertex lists, or a census")

    p = sub.add_parser("verify-paper", parents=[common], help="reproduce the published claims")
    p.add_argument("--max-dim", type=int, default=4)
    p.add_argument("--timings", action="store_true", help="include per-claim seconds")
    return parser


def _cmd_gen(args) -> tuple[object, int]:
    if args.kind == "hypercube":
        g = build_hypercube(args.d)
    elif args.kind == "product":
        g = cartesian_product(load_graph(args.left), load_graph(args.right))
    else:
        g = load_graph(args.file)
    if args.format == "edgelist":
        return format_edge_list(g), EXIT_OK
    return graph_to_dict(g), EXIT_OK


def _histogram_csv(by_size: dict) -> str:
    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["size", "count"])
    for k, v in sorted(by_size.items(), key=lambda kv: int(kv[0])):
        writer.writerow([k, v])
    return buf.getvalue()


def _cmd_forts(args) -> tuple[object, int]:
    g = load_graph(args.graph)
    if args.minimal:
        census = get_census(g, resolve_cache_dir(args.cache_dir), args.jobs)
        if args.csv:
            return _histogram_csv(census.by_size), EXIT_OK
        return census.to_dict(), EXIT_OK
    forts = enumerate_forts_of_size(g, args.size, args.budget)
    out = {"graph_id": g.graph_id, "size": args.size, "count": len(forts),
           "forts": [members(f) for f in forts]}
    if args.csv:
        return _histogram_csv({args.size: len(forts)}), EXIT_OK
    return out, EXIT_OK


def _census_if_small(g, args):
    if g.n <= 16:
        return get_census(g, resolve_cache_dir(args.cache_dir), args.jobs)
    return None


def _cmd_zf(args) -> tuple[object, int]:
    g = load_graph(args.graph)
    if args.zf_command == "trace":
        return closure(g, parse_vertex_set(g, args.set)).to_dict(), EXIT_OK
    census = _census_if_small(g, args)
    z, witness = min_zero_forcing_number(g, census, args.budget)
    if args.zf_command == "number":
        return {"graph_id": g.graph_id, "Z": z, "witness": members(witness)}, EXIT_OK
    if args.zf_command == "enumerate":
        sets = enumerate_minimum_zfs(g, z, args.budget)
        return {"graph_id": g.graph_id, "Z": z, "count": len(sets),
                "sets": [members(s) for s in sets]}, EXIT_OK
    spec = pt_spectrum(g, z, census, args.budget)
    return {"graph_id": g.graph_id, "Z": z, **spec.to_dict()}, EXIT_OK


def _cmd_params(args) -> tuple[object, int]:
    g = load_graph(args.graph)
    chosen = [name for name in PARAMETERS if args.all or getattr(args, f"param_{name}")]
    if not chosen:
        raise UsageError("select at least one parameter, or --all")
    needs_census = set(chosen) & {"Z", "zstar", "ft", "pt"}
    census = get_census(g, resolve_cache_dir(args.cache_dir), args.jobs) if needs_census else None
    return compute_parameters(g, chosen, census, args.budget).to_dict(), EXIT_OK


def _cmd_construct(args) -> tuple[object, int]:
    if args.construction == "lift":
        small = build_hypercube(args.d)
        lifted = lift_zfs(parse_vertex_set(small, args.set), args.d)
        big = build_hypercube(args.d + 1)
        return {
            "result": members(lifted),
            "result_labels": [big.labels[v] for v in members(lifted)],
            "propagation_time": closure(big, lifted).propagation_time,
        }, EXIT_OK
    g, h = load_graph(args.left), load_graph(args.right)
    f, f2 = parse_vertex_set(g, args.left_set), parse_vertex_set(h, args.right_set)
    if args.construction == "product":
        result = product_fort(g, f, h, f2)
    else:
        result = bipartite_parity_fort(g, f, h, f2, args.require_minimal, args.swap_parts)
    return result.to_dict(), EXIT_OK


def _read_sets(path: str) -> list[list[int]]:
    data = json.loads(Path(path).read_text())
    if isinstance(data, dict):
        data = data.get("minimal_forts", data.get("forts", data.get("sets")))
    if not isinstance(data, list):
        raise UsageError(f"{path}: expected a list of vertex lists")
    return data


def _cmd_sym(args) -> tuple[object, int]:
    g = build_hypercube(args.d)
    if args.sym_command == "canon":
        cf = canonical_form(args.d, parse_vertex_set(g, args.set))
        return cf.to_dict(), EXIT_OK
    sets = [g.set_from(s) for s in _read_sets(args.sets)]
    return [c.to_dict() for c in classify_orbits(args.d, sets)], EXIT_OK


def _cmd_verify(args) -> tuple[object, int]:
    results = verify_paper(args.max_dim, args.budget, args.seed)
    for r in results:
        print(f"[{'PASS' if r.passed else 'FAIL'}] {r.claim}", file=sys.stderr)
    ok = all(r.passed for r in results)
    report = {"passed": ok, "max_dim": args.max_dim,
              "claims": [r.to_dict(args.timings) for r in results]}
    return report, EXIT_OK if ok else EXIT_CONSISTENCY


HANDLERS = {
    "gen": _cmd_gen,
    "forts": _cmd_forts,
    "zf": _cmd_zf,
    "params": _cmd_params,
    "construct": _cmd_construct,
    "sym": _cmd_sym,
    "verify-paper": _cmd_verify,
}


def _emit(payload, output) -> str:
    text = payload if isinstance(payload, str) else dumps(payload)
    if output:
        Path(output).write_text(text)
    else:
        sys.stdout.write(text)
    return text


def _input_hashes(args) -> dict[str, str]:
    out = {}
    for key in ("graph", "left", "right", "file", "sets"):
        path = getattr(args, key, None)
        if path and Path(path).is_file():
            out[path] = hashlib.sha256(Path(path).read_bytes()).hexdigest()
    return out


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s: %(message)s")
    start = time.perf_counter()
    try:
        payload, code = HANDLERS[args.command](args)
    except UsageError as exc:
        parser.error(str(exc))
    except ResourceLimitError as exc:
        print(f"fortlib: resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE
    except ConsistencyError as exc:
        print(f"fortlib: internal consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
    except (FortlibError, ValueError, OSError) as exc:
        print(f"fortlib: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = _emit(payload, args.output)
    if args.manifest:
        manifest = {
            "command": ["fortlib", *argv],
            "inputs": _input_hashes(args),
            "version": __version__,
            "elapsed_seconds": round(time.perf_counter() - start, 3),
            "result_sha256": hashlib.sha256(text.encode()).hexdigest(),
        }
        Path(args.manifest).write_text(dumps(manifest))
    return code


if __name__ == "__main__":
    sys.exit(main())
