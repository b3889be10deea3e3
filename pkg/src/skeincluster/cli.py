"""Command-line verifier: replay the identity suites and explore seeds.

    skeincluster verify all                 run every scenario
    skeincluster verify cij --n 4           one scenario at a fixed size
    skeincluster verify flip dij --json out.json
    skeincluster surface show --surface P4 --n 3
    skeincluster seed mutate --surface P3 --n 3 --seq "v21,v21"

Exit status is 0 exactly when every requested check passed.
"""

from __future__ import annotations

import argparse
import json
import sys
from concurrent.futures import ProcessPoolExecutor

from .mutation import QuantumSeed
from .scenarios import SCENARIOS, run_scenario
from .surface import NAMED_SURFACES, SurfaceBundle, named_spec
from .torus import element_to_jsonable
from .trace import PolygonLabels, parse_vertex_label


def _parse_args(argv):
    parser = argparse.ArgumentParser(
        prog="skeincluster", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    sub = parser.add_subparsers(dest="command", required=True)

    ver = sub.add_parser("verify", help="run verification scenarios")
    ver.add_argument(
        "scenarios",
        nargs="+",
        help="scenario names, or 'all' (known: %s)" % ", ".join(sorted(SCENARIOS)),
    )
    ver.add_argument("--n", type=int, help="restrict to a single size")
    ver.add_argument("--surface", choices=NAMED_SURFACES, help="restrict surface")
    ver.add_argument("--json", metavar="PATH", help="write the reports as JSON")
    ver.add_argument("--seed", type=int, default=20240811, help="RNG seed")
    ver.add_argument(
        "--max-n", type=int, default=None,
        help="cap the size sweep of expensive scenarios (dij caps at 4)",
    )
    ver.add_argument("--jobs", type=int, default=1, help="parallel workers")
    ver.add_argument("-v", "--verbose", action="store_true", help="per-check lines")

    surf = sub.add_parser("surface", help="inspect a built-in surface")
    surf.add_argument("action", choices=["show"])
    surf.add_argument("--surface", default="P3", choices=NAMED_SURFACES)
    surf.add_argument("--n", type=int, default=3)

    seed = sub.add_parser("seed", help="explore seed mutation")
    seed.add_argument("action", choices=["mutate"])
    seed.add_argument("--surface", default="P3", choices=NAMED_SURFACES)
    seed.add_argument("--n", type=int, default=3)
    seed.add_argument(
        "--seq", default="", help='mutation labels, e.g. "v21,v31" or "vbar12"'
    )
    seed.add_argument("--json", metavar="PATH", help="write the seed dump as JSON")

    return parser.parse_args(argv)


def _worker(item):
    name, params = item
    return run_scenario(name, params)


def cmd_verify(args):
    names = list(SCENARIOS) if "all" in args.scenarios else args.scenarios
    for name in names:
        if name not in SCENARIOS:
            print("unknown scenario: %s" % name, file=sys.stderr)
            return 2
    params = {"seed": args.seed}
    if args.n:
        params["n"] = args.n
    if args.surface:
        params["surface"] = args.surface
    if args.max_n:
        params["max_n"] = args.max_n
    work = [(name, params) for name in names]
    if args.jobs > 1 and len(work) > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_worker, work))
    else:
        reports = [_worker(item) for item in work]
    reports.sort(key=lambda r: r["scenario"])
    all_ok = True
    for rep in reports:
        flag = "PASS" if rep["status"] == "pass" else "FAIL"
        all_ok &= rep["status"] == "pass"
        print(
            "[%s] %-18s %3d/%3d checks  (%.2fs)  %s"
            % (
                flag,
                rep["scenario"],
                rep["total"] - rep["failed"],
                rep["total"],
                rep["elapsed"],
                rep["certifies"].split("\n")[0],
            )
        )
        if args.verbose or rep["status"] != "pass":
            for check in rep["checks"]:
                if args.verbose or not check["pass"]:
                    mark = "ok " if check["pass"] else "FAIL"
                    print("    %s %s" % (mark, check["name"]))
                    if not check["pass"] and check.get("witness"):
                        print("         witness: %s" % (check["witness"],))
    if args.json:
        with open(args.json, "w") as fh:
            json.dump(reports, fh, indent=2, sort_keys=True)
        print("wrote %s" % args.json)
    return 0 if all_ok else 1


def cmd_surface(args):
    bundle = SurfaceBundle(named_spec(args.surface, args.n))
    info = {
        "surface": args.surface,
        "n": args.n,
        "vertices": len(bundle.ids),
        "interior": len(bundle.interior_vertices),
        "ids": ["f%d:%d,%d,%d" % (v[0], *v[1]) for v in bundle.ids],
        "Q_doubled": bundle.Q2.tolist(),
        "H": bundle.H.tolist(),
        "K": bundle.K.tolist(),
        "P": bundle.P.tolist(),
        "Pi": bundle.Pi.tolist(),
    }
    print(json.dumps(info, indent=2))
    return 0


def cmd_seed(args):
    bundle = SurfaceBundle(named_spec(args.surface, args.n))
    labels = PolygonLabels(
        bundle, face=0, bar_face=1 if bundle.spec.num_faces > 1 else 0
    )
    seed = QuantumSeed.initial(bundle)
    sequence = [s for s in args.seq.split(",") if s.strip()]
    for text in sequence:
        idx = labels.resolve(parse_vertex_label(text))
        if idx is None:
            print("label %s denotes the unit, cannot mutate" % text, file=sys.stderr)
            return 2
        seed = seed.mutate(idx)
    dump = {
        "surface": args.surface,
        "n": args.n,
        "sequence": sequence,
        "Q": seed.q2.tolist(),
        "Pi": seed.pi.tolist(),
        "vars": {
            "f%d:%d,%d,%d" % (v[0], *v[1]): element_to_jsonable(seed.vars[i])
            for i, v in enumerate(bundle.ids)
        },
    }
    text = json.dumps(dump, indent=2, sort_keys=True)
    if args.json:
        with open(args.json, "w") as fh:
            fh.write(text)
        print("wrote %s" % args.json)
    else:
        print(text)
    return 0


def main(argv=None):
    args = _parse_args(argv if argv is not None else sys.argv[1:])
    if args.command == "verify":
        return cmd_verify(args)
    if args.command == "surface":
        return cmd_surface(args)
    if args.command == "seed":
        return cmd_seed(args)
    return 2


if __name__ == "__main__":
    sys.exit(main())
