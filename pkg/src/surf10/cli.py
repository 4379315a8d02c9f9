"""Command line front end.

Exit codes: 0 success, 1 certification failed, 2 retry budget exhausted,
3 numerology input outside the tables, 4 link draw not a complete
intersection, 64 usage error, 65 unparseable input file.
"""

import argparse
import json
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_BUDGET = 2
EXIT_TABLE = 3
EXIT_LINK = 4
EXIT_USAGE = 64
EXIT_PARSE = 65

SMOOTHNESS_MODES = {"fast": "probabilistic", "exact": "exact"}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


def _twist_range(text):
    try:
        a, b = text.split("..")
        a, b = int(a), int(b)
    except ValueError:
        raise argparse.ArgumentTypeError("range must look like a..b") from None
    if a > b:
        raise argparse.ArgumentTypeError("empty range")
    return a, b


@dataclass
class RunConfig:
    prime: int = 31991
    seed: int = 0
    retries: int = 5
    smoothness: str = "probabilistic"
    out: str = "."
    twists: tuple = (-1, 7)

    def validate(self):
        # products of two residues must stay exact in float64 matrix products
        if not _is_prime(self.prime) or not 2 < self.prime < 2 ** 26:
            raise UsageError(f"--prime must be an odd prime below 2^26, got {self.prime}")
        if self.retries < 1:
            raise UsageError("--retries must be at least 1")
        return self


def _config(args):
    return RunConfig(prime=args.prime, seed=args.seed, retries=getattr(args, "retries", 5),
                     smoothness=SMOOTHNESS_MODES[getattr(args, "smoothness", "fast")],
                     out=getattr(args, "out", "."),
                     twists=getattr(args, "range", (-1, 7))).validate()


def _common(p):
    p.add_argument("--prime", type=int, default=31991)
    p.add_argument("--seed", type=int, default=0)


def build_parser():
    ap = _Parser(prog="surf10", description="Degree 10 surfaces in P^4: construction and certification")
    sub = ap.add_subparsers(dest="cmd", parser_class=_Parser)

    c = sub.add_parser("construct", help="construct and certify a family")
    c.add_argument("family", nargs="?")
    c.add_argument("--all", action="store_true")
    _common(c)
    c.add_argument("--retries", type=int, default=5)
    c.add_argument("--smoothness", choices=sorted(SMOOTHNESS_MODES), default="fast")
    c.add_argument("--range", type=_twist_range, default=(-1, 7))
    c.add_argument("--out", default=".")

    v = sub.add_parser("certify", help="certify an ideal file against a family")
    v.add_argument("file")
    v.add_argument("--family", required=True)
    _common(v)
    v.add_argument("--smoothness", choices=sorted(SMOOTHNESS_MODES), default="fast")
    v.add_argument("--range", type=_twist_range, default=(-1, 7))
    v.add_argument("--out", default=None)

    n = sub.add_parser("numerology", help="secant counts and classification tables")
    n.add_argument("--pi", type=int)
    n.add_argument("--chi", type=int)
    n.add_argument("--table", action="store_true")
    n.add_argument("--json", action="store_true")

    l = sub.add_parser("link", help="link an ideal through a random complete intersection")
    l.add_argument("file")
    l.add_argument("m", type=int)
    l.add_argument("n", type=int)
    _common(l)
    l.add_argument("--retries", type=int, default=5)
    l.add_argument("--out", default=None)
    return ap


# --- construct -----------------------------------------------------------------------


def _write_construction(c, rep, cfg):
    from .groebner import write_ideal
    from .modres import format_betti
    os.makedirs(cfg.out, exist_ok=True)
    base = os.path.join(cfg.out, c.family)
    write_ideal(c.ideal, base + ".ideal")
    for name, J in c.stages.items():
        if name != "S":
            write_ideal(J, f"{base}.{name}.ideal")
    d = rep.to_dict(timings=False)
    d["route"] = c.route
    d["attempt_seed"] = c.seed
    d["monad"] = c.descriptor or None
    d["attempts"] = c.attempts
    with open(base + ".report.json", "w") as fh:
        json.dump(d, fh, indent=2)
        fh.write("\n")
    with open(base + ".timings.json", "w") as fh:
        json.dump({"construction": c.timings, "certification": rep.timings}, fh, indent=2)
        fh.write("\n")
    if rep.betti:
        with open(base + ".betti.txt", "w") as fh:
            fh.write(format_betti(rep.betti) + "\n")


def _construct_one(family, cfg):
    """Returns (exit code, text)."""
    from .constructions import ConstructionError, build_family, certify
    try:
        c = build_family(family, cfg.seed, cfg.prime, cfg.retries, cfg.smoothness)
    except ConstructionError as exc:
        os.makedirs(cfg.out, exist_ok=True)
        with open(os.path.join(cfg.out, f"{family}.report.json"), "w") as fh:
            json.dump({"family": family, "prime": cfg.prime, "seed": cfg.seed, "passed": False,
                       "error": str(exc), "attempts": exc.diagnostics}, fh, indent=2)
            fh.write("\n")
        lines = [f"family {family}: {exc}"]
        for d in exc.diagnostics:
            lines.append(f"  attempt {d['attempt']} seed {d['seed']} {d['route']}: "
                         f"failed at {d['stage']} {d['detail']}".rstrip())
        return EXIT_BUDGET, "\n".join(lines)
    rep = certify(c.ideal, family, seed=c.seed, smoothness=cfg.smoothness,
                  verdict=c.smoothness, twists=cfg.twists)
    _write_construction(c, rep, cfg)
    text = f"route {c.route}, seed {c.seed}\n" + rep.to_text()
    return (EXIT_OK if rep.passed else EXIT_FAILED), text


def _construct_worker(args):
    family, cfg = args
    return family, _construct_one(family, cfg)


def cmd_construct(args):
    from .constructions import FAMILY_IDS
    cfg = _config(args)
    if args.all:
        fams = list(FAMILY_IDS)
    else:
        if not args.family or args.family.upper() not in FAMILY_IDS:
            raise UsageError(f"family must be one of {''.join(FAMILY_IDS)}")
        fams = [args.family.upper()]
    if len(fams) == 1:
        code, text = _construct_one(fams[0], cfg)
        print(text)
        return code
    workers = max(1, min(len(fams), os.cpu_count() or 1))
    codes = []
    with ProcessPoolExecutor(max_workers=workers) as ex:
        for family, (code, text) in ex.map(_construct_worker, [(f, cfg) for f in fams]):
            print(text)
            print()
            codes.append(code)
    return max(codes)


# --- certify -------------------------------------------------------------------------


def _read(path):
    from .groebner import read_ideal
    from .ring import ParseError
    try:
        return read_ideal(path)
    except (OSError, ParseError, ValueError) as exc:
        raise _ParseFailure(str(exc)) from None


class _ParseFailure(Exception):
    pass


def cmd_certify(args):
    from .constructions import FAMILY_IDS, certify
    cfg = _config(args)
    fam = args.family.upper()
    if fam not in FAMILY_IDS:
        raise UsageError(f"family must be one of {''.join(FAMILY_IDS)}")
    I = _read(args.file)
    try:
        rep = certify(I, fam, seed=cfg.seed, smoothness=cfg.smoothness, twists=cfg.twists)
    except Exception as exc:       # math failures are reported, not raised
        print(f"certification of {args.file} as {fam} could not complete: {exc}")
        return EXIT_FAILED
    print(rep.to_text())
    if rep.betti is not None and not rep.checks.get("betti", True):
        print(_betti_diff(rep.betti, fam))
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(rep.to_json() + "\n")
    return EXIT_OK if rep.passed else EXIT_FAILED


def _betti_diff(tab, fam):
    from .numerology import BETTI
    want = BETTI[fam]
    keys = sorted(set(tab) | set(want))
    lines = ["Betti differences (i, j): computed vs expected"]
    for k in keys:
        if tab.get(k, 0) != want.get(k, 0):
            lines.append(f"  {k}: {tab.get(k, 0)} vs {want.get(k, 0)}")
    return "\n".join(lines)


# --- numerology ----------------------------------------------------------------------


def cmd_numerology(args):
    from . import numerology as nu
    if args.table:
        rows = []
        for f in nu.FAMILIES.values():
            s5, s6 = nu.lebarz_counts(f.pi, f.chi)
            rows.append({"family": f.family, "pi": f.pi, "chi": f.chi, "N6": f.N6, "N5": f.N5,
                         "K2": f.K2, "type": f.birational_type, "minus_one_lines": f.minus_one_lines,
                         "sharp5": s5, "sharp6": s6, "hilbert_scheme_dim": f.hilbert_scheme_dim})
        if args.json:
            print(json.dumps(rows, indent=2))
        else:
            print(f"{'S':<2}{'pi':>4}{'chi':>4}{'N6':>4}{'N5':>4}{'K2':>5}  {'type':<13}"
                  f"{'(-1)':>5}{'#5':>4}{'#6':>4}{'dim':>5}")
            for r in rows:
                print(f"{r['family']:<2}{r['pi']:>4}{r['chi']:>4}{r['N6']:>4}{r['N5']:>4}"
                      f"{r['K2']:>5}  {r['type']:<13}{r['minus_one_lines']:>5}{r['sharp5']:>4}"
                      f"{r['sharp6']:>4}{r['hilbert_scheme_dim']:>5}")
        return EXIT_OK
    if args.pi is None:
        raise UsageError("numerology needs --pi (and --chi) or --table")
    try:
        fams = nu.classify_d10(args.pi)
    except nu.NumerologyError as exc:
        print(str(exc))
        return EXIT_TABLE
    out = {"pi": args.pi}
    if args.chi is not None:
        try:
            s5, s6 = nu.lebarz_counts(args.pi, args.chi)
        except nu.NumerologyError as exc:
            print(str(exc))
            return EXIT_TABLE
        HK = nu.hk_from_genus(10, args.pi)
        out.update({"chi": args.chi, "sharp5": s5, "sharp6": s6,
                    "K2": nu.double_point_K2(10, HK, args.chi)})
        fams = [f for f in fams if getattr(f, "chi", None) == args.chi]
    out["families"] = [f if isinstance(f, str) else
                       {"family": f.family, "N6": f.N6, "N5": f.N5, "type": f.birational_type}
                       for f in fams]
    if args.json:
        print(json.dumps(out, indent=2))
    else:
        if "sharp5" in out:
            print(f"pi={args.pi} chi={args.chi}: #5={out['sharp5']} #6={out['sharp6']} K^2={out['K2']}")
        for f in out["families"]:
            print(f"  {f}" if isinstance(f, str) else
                  f"  {f['family']}: N6={f['N6']} N5={f['N5']} {f['type']}")
    return EXIT_OK


# --- link ----------------------------------------------------------------------------


def cmd_link(args):
    from .constructions import LinkError, link_with_ci
    from .groebner import write_ideal
    from .idealops import is_unit
    from .modres import hilbert
    cfg = _config(args)
    I = _read(args.file)
    try:
        r = link_with_ci(I, args.m, args.n, cfg.seed, cfg.retries)
    except LinkError as exc:
        print(str(exc))
        return EXIT_LINK
    out = args.out or os.path.splitext(args.file)[0] + f".link{args.m}{args.n}.ideal"
    write_ideal(r.residual, out)
    if is_unit(r.residual):
        print(f"residual is empty (unit ideal); written to {out}")
        return EXIT_OK
    h = hilbert(r.residual)
    if h.dimension == 2:
        d, pi, chi = h.surface_invariants()
        print(f"residual (d, pi, chi) = ({d}, {pi}, {chi}); written to {out}")
    else:
        print(f"residual of dimension {h.dimension}, degree {h.degree}; written to {out}")
    return EXIT_OK


COMMANDS = {"construct": cmd_construct, "certify": cmd_certify,
            "numerology": cmd_numerology, "link": cmd_link}


def main(argv=None):
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
        if not args.cmd:
            raise UsageError("missing command")
        return COMMANDS[args.cmd](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        ap.print_usage(sys.stderr)
        return EXIT_USAGE
    except _ParseFailure as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
