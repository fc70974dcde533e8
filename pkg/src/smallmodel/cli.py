"""Command-line entry point: every verification as a subcommand.

Reports are JSON with a digest of the inputs, a status in {verified,
counterexample, inconclusive, error} and per-check details. Exit codes:
0 verified, 1 counterexample, 2 inconclusive, 3 bad input.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import acceptance, cupforms, diagonal, flags, smallness, surfaces
from .complexes import ComplexError, SimplicialComplex, homology
from .cupforms import FormError
from .flags import FlagError
from .smallness import CertificateError, INCONCLUSIVE, VERIFIED, VIOLATION
from .surfaces import SurfaceError

EXIT = {VERIFIED: 0, VIOLATION: 1, INCONCLUSIVE: 2, "error": 3}


def _digest(obj) -> str:
    blob = json.dumps(obj, sort_keys=True, default=str).encode()
    return hashlib.sha256(blob).hexdigest()[:16]


def _report(command, inputs, status, details, seed, t0):
    return {
        "command": command,
        "inputs-digest": _digest(inputs),
        "status": status,
        "details": details,
        "seed": seed,
        "runtime_ms": int((time.perf_counter() - t0) * 1000),
    }


def _emit(report, as_json):
    if as_json:
        print(json.dumps(report, indent=2, sort_keys=True, default=str))
        return
    print(f"{report['command']}: {report['status']}")
    _human(report["details"], indent="  ")


def _human(obj, indent=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            if isinstance(v, (dict, list)):
                print(f"{indent}{k}:")
                _human(v, indent + "  ")
            else:
                print(f"{indent}{k}: {v}")
    elif isinstance(obj, list):
        for item in obj:
            if isinstance(item, (dict, list)):
                _human(item, indent)
                print()
            else:
                print(f"{indent}- {item}")
    else:
        print(f"{indent}{obj}")


def _load(path):
    with open(path) as fh:
        return json.load(fh)


# -- subcommand implementations: each returns (status, details) -------------


def cmd_homology(args, data):
    K = SimplicialComplex.from_json(data)
    ring = "Z" if args.ring == "Z" else int(args.ring)
    h = homology(K, ring, reduced=not args.unreduced)
    return VERIFIED, {"f_vector": list(K.f_vector()), "homology": h.to_json()}


def cmd_diagonal(args, data):
    K = SimplicialComplex.from_json(data)
    checks = [
        diagonal.check_retraction(K),
        diagonal.decomposition_check(K),
        diagonal.long_exact_consistency(K),
    ]
    ok = all(c.passed for c in checks)
    return (VERIFIED if ok else VIOLATION,
            {"flag": K.is_flag(), "checks": [c.to_json() for c in checks]})


def cmd_check_small(args, data):
    X = smallness.OrbitComplex.from_json(data)
    rep = smallness.check_small(X)
    return rep.status, rep.to_json()


def cmd_certificate(args, data):
    X = smallness.OrbitComplex.from_json(data)
    cert = smallness.vanishing_certificate(X)
    return cert.status, cert.to_json()


def cmd_sc_obstruction(args, data):
    from .complexes import HomologyTable

    entries = tuple(
        (int(e["degree"]), int(e["rank"]), tuple(int(t) for t in e.get("torsion", [])))
        for e in data["boundary_homology"]
    )
    prob = smallness.HomologySupportProblem(
        int(data["n"]), int(data["q"]), HomologyTable(False, "Z", entries)
    )
    res = smallness.simply_connected_obstruction(prob)
    if data.get("chi_zero") is not None and res["verdict"] != smallness.OBSTRUCTED:
        res = smallness.parity_obstruction(int(data["n"]), int(data["q"]),
                                           bool(data["chi_zero"]))
    return VERIFIED, res


def cmd_lemma_upper(args, data):
    res = acceptance.criterion_forced_zeros(max_m=args.m)
    return (VERIFIED if res.passed else VIOLATION, res.to_json())


def cmd_orbit_codim(args, data):
    if data is not None:
        e = flags.RationalFlag.from_json(data["e"])
        f = flags.RationalFlag.from_json(data["f"])
        codim = flags.orbit_codim(e, f)
        ok = codim >= f.length
        return (VERIFIED if ok else VIOLATION,
                {"codim": codim, "length_f": f.length, "ok": ok})
    res = acceptance.criterion_orbit_codim(max_m=args.m, random_per_m=args.random,
                                           seed=args.seed)
    return (VERIFIED if res.passed else VIOLATION, res.to_json())


def cmd_slm_check(args, data):
    if data is not None:
        e = flags.RationalFlag.from_json(data["e"])
        f = flags.RationalFlag.from_json(data["f"])
        rep = flags.slm_inequality(e, f)
        ok = rep.codim_ok and rep.inequality_ok and rep.chain_ok
        return (VERIFIED if ok else VIOLATION, rep.to_json())
    res = acceptance.criterion_slm_pipeline(max_m=args.m, random_per_m=args.random,
                                            seed=args.seed)
    return (VERIFIED if res.passed else VIOLATION, res.to_json())


def cmd_building(args, data):
    K = flags.finite_building(args.m, args.q)
    h = homology(K, "Z", reduced=True)
    expected = args.q ** (args.m * (args.m - 1) // 2)
    ok = h.nonzero_degrees() == [args.m - 2] and h.rank(args.m - 2) == expected
    return (VERIFIED if ok else VIOLATION,
            {"vertices": len(K.vertices), "facets": len(K.facets),
             "homology": h.to_json(), "expected_rank": expected,
             "complete_flags": flags.complete_flag_count(args.m, args.q)})


def cmd_harer(args, data):
    d = surfaces.harer_dim(surfaces.SurfaceType(args.g, args.r, args.s))
    return VERIFIED, {"g": args.g, "r": args.r, "s": args.s, "dim": d}


def cmd_multicurves(args, data):
    types = surfaces.enumerate_multicurves(args.g, args.k)
    return VERIFIED, {
        "g": args.g, "k": args.k, "count": len(types),
        "types": [
            {**t.to_json(), "stab_hdim": surfaces.multicurve_stab_hdim(t)}
            for t in types
        ],
    }


def cmd_lemma_sweep(args, data):
    rep = surfaces.lemma_smallstabilizers_sweep(args.g)
    return (VERIFIED if rep["passed"] else VIOLATION, rep)


def cmd_cc_certificate(args, data):
    cert = surfaces.curve_complex_certificate(args.g)
    rep = smallness.check_small(cert)
    return rep.status, {"certificate": cert.to_json(), "check": rep.to_json()}


def cmd_rank_one(args, data):
    if data is not None:
        R = cupforms.RankOneRing(int(data["k"]), int(data["m"]), data["top_value"])
    else:
        R = cupforms.RankOneRing(args.k, args.m, args.top)
    return VERIFIED, cupforms.rank_one_obstruction(R)


def cmd_b2_criterion(args, data):
    if data is None:
        data = json.loads(args.form)
    T = cupforms.TripleForm.from_json(data)
    verdict = cupforms.compression_criterion_b2(T)
    return VERIFIED, verdict.to_json()


def cmd_suite(args, data):
    results = acceptance.run_all(seed=args.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    ok = all(r.passed for r in results)
    return (VERIFIED if ok else VIOLATION,
            {"criteria": [r.to_json() for r in results]})


def build_parser():
    p = argparse.ArgumentParser(
        prog="smallmodel",
        description="stabilizer-dimension and cup-product verification toolkit",
    )
    p.add_argument("--json", action="store_true", help="machine-readable report")
    p.add_argument("--seed", type=int, default=0, help="seed for randomized sweeps")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, needs_in=False, **kwargs):
        sp = sub.add_parser(name, **kwargs)
        sp.set_defaults(fn=fn, needs_in=needs_in)
        sp.add_argument("--in", dest="infile", help="JSON input file")
        return sp

    sp = add("homology", cmd_homology, needs_in=True,
             help="homology of a simplicial complex")
    sp.add_argument("--ring", default="Z", help="'Z' or a prime")
    sp.add_argument("--unreduced", action="store_true")

    add("diagonal", cmd_diagonal, needs_in=True,
        help="diagonal retraction / decomposition / consistency checks")
    add("check-small", cmd_check_small, needs_in=True,
        help="stabilizer-dimension inequalities on an orbit certificate")
    add("certificate", cmd_certificate, needs_in=True,
        help="page-one vanishing certificate from an orbit certificate")
    add("sc-obstruction", cmd_sc_obstruction, needs_in=True,
        help="homology-support obstruction for simply connected fillings")

    sp = add("lemma-upper", cmd_lemma_upper, help="forced-zero sweep")
    sp.add_argument("--m", type=int, default=6)
    sp.add_argument("--exhaustive", action="store_true",
                    help="accepted for compatibility; the sweep is always exhaustive")

    sp = add("orbit-codim", cmd_orbit_codim, help="orbit codimension bound")
    sp.add_argument("--m", type=int, default=5)
    sp.add_argument("--random", type=int, default=1000)

    sp = add("slm-check", cmd_slm_check, help="codimension-chain inequality")
    sp.add_argument("--m", type=int, default=5)
    sp.add_argument("--random", type=int, default=500)

    sp = add("building", cmd_building, help="finite building homology")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--q", type=int, required=True)

    sp = add("harer", cmd_harer, help="virtual homological dimension")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--r", type=int, required=True)
    sp.add_argument("--s", type=int, required=True)

    sp = add("multicurves", cmd_multicurves, help="multicurve types on a surface")
    sp.add_argument("--g", type=int, required=True)
    sp.add_argument("--k", type=int, required=True)

    sp = add("lemma-sweep", cmd_lemma_sweep, help="multicurve stabilizer sweep")
    sp.add_argument("--g", type=int, required=True)

    sp = add("cc-certificate", cmd_cc_certificate,
             help="orbit certificate for curve systems")
    sp.add_argument("--g", type=int, required=True)

    sp = add("rank-one", cmd_rank_one, help="one-generator cup obstruction")
    sp.add_argument("--k", type=int, default=2)
    sp.add_argument("--m", type=int, default=3)
    sp.add_argument("--top", default="1")

    sp = add("b2-criterion", cmd_b2_criterion, help="two-generator surjection criterion")
    sp.add_argument("--form", help="TripleForm JSON string")

    add("suite", cmd_suite, help="run the full verification battery")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    t0 = time.perf_counter()
    data = None
    inputs = {"argv": [a for a in (argv if argv is not None else sys.argv[1:])]}
    try:
        if args.infile:
            data = _load(args.infile)
            inputs["data"] = data
        elif getattr(args, "needs_in", False):
            raise ValueError(f"{args.command} requires --in")
        status, details = args.fn(args, data)
    except (ComplexError, FlagError, SurfaceError, CertificateError, FormError,
            ValueError, KeyError, OSError, json.JSONDecodeError) as exc:
        report = _report(args.command, inputs, "error",
                         {"error": f"{type(exc).__name__}: {exc}"}, args.seed, t0)
        _emit(report, args.json)
        return 3
    report = _report(args.command, inputs, status, details, args.seed, t0)
    _emit(report, args.json)
    return EXIT.get(status, 3)


if __name__ == "__main__":
    sys.exit(main())
