"""Command-line front end: pick parameters, run a suite, write a report.

Exit status is 0 when every case passes, 1 when a check fails (the report
is still written) and 2 for configuration errors and violated hypotheses.
"""

import argparse
import csv
import io
import json
import os
import sys
import tempfile
from dataclasses import asdict, dataclass
from fractions import Fraction

from . import __version__
from .analytic import IntBlockMatrix, find_order_n2_witness, is_hodge_morphism, orbit_sample
from .analytic import ribet_torsion_verify
from .elliptic import PRESETS, Curve, preset_curve
from .endomorphism import parse_endo
from .errors import ConfigError, HypothesisViolated, IncompatibleGenerator, RibetorError
from .genjac import check_order_hypotheses
from . import suites
from .suites import Case, DEFAULT_SEED, REFERENCE_CURVES, jsonable

MODES = (
    "verify-ribet-algebraic",
    "verify-ribet-analytic",
    "pairing-table",
    "search-order-n2",
    "orbit-sample",
    "selftest",
)
CSV_MODES = ("pairing-table", "orbit-sample")
DEFAULT_CURVE = (151, 6, 2)
DEFAULT_ENDO = {None: "pi", "j0": "omega", "j1728": "i"}
DEFAULT_NS = {
    "verify-ribet-algebraic": (3, 5, 7, 9),
    "verify-ribet-analytic": (3, 5),
    "pairing-table": (3, 5, 7),
    "search-order-n2": (3, 5, 7),
    "orbit-sample": (5,),
    "selftest": (),
}
DEFAULT_FZ = (1, 0, 0, 0)

CSV_HELP = """\
CSV columns:
  pairing-table: n,k,a,b,c,d,value,order,agree
      value = e_n(aP + bQ, cP + dQ) as space-separated coefficients over F_{p^k}
  orbit-sample: k,fiber_num,fiber_den,base_num,base_den[,fiber_re,fiber_im,base_re,base_im]
      multi-entry columns are space-separated; complex columns appear when
      f is a morphism at tau = i
"""


@dataclass(frozen=True)
class RunConfig:
    mode: str
    p: int
    a4: int
    a6: int
    preset: str
    endo: str
    n: tuple
    d: int
    fz: tuple
    seed: int
    tol_action: float
    out: str
    format: str

    def to_json(self):
        data = asdict(self)
        data.pop("out")
        data["n"] = list(self.n)
        data["fz"] = list(self.fz) if self.fz is not None else None
        return data


def build_parser():
    ap = argparse.ArgumentParser(
        prog="ribetor",
        description="Verify Ribet sections on elliptic curves and on the lattice model.",
        epilog=CSV_HELP,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--mode", choices=MODES, default="selftest")
    ap.add_argument("--p", type=int, help="base prime")
    ap.add_argument("--a4", type=int, help="coefficient of x")
    ap.add_argument("--a6", type=int, help="constant coefficient")
    ap.add_argument("--preset", choices=sorted(PRESETS), help="CM family")
    ap.add_argument("--endo", help='endomorphism "m+k*pi", "m+k*omega" or "m+k*i"')
    ap.add_argument("--n", help='torsion orders, e.g. "3,5,7"')
    ap.add_argument("--d", type=int, help="dimension for the analytic model")
    ap.add_argument("--fz", help="entries of f_Z, row-major, comma separated")
    ap.add_argument("--seed", default=str(DEFAULT_SEED), help="64-bit seed (RIBETOR_SEED overrides)")
    ap.add_argument("--tol-action", type=float, default=suites.ACTION_TOL)
    ap.add_argument("--out", help="report path (stdout when omitted)")
    ap.add_argument("--format", choices=("json", "csv"), default="json")
    return ap


def _int_list(text, name):
    try:
        return tuple(int(v) for v in text.split(",") if v.strip())
    except ValueError:
        raise ConfigError(f"--{name} must be a comma-separated list of integers") from None


def make_config(args, environ=None):
    environ = os.environ if environ is None else environ
    seed_text = environ.get("RIBETOR_SEED", args.seed)
    try:
        seed = int(str(seed_text), 0)
    except ValueError:
        raise ConfigError(f"seed {seed_text!r} is not an integer") from None
    if not 0 <= seed < 2**64:
        raise ConfigError("seed must fit in 64 bits")

    if args.preset:
        preset = PRESETS[args.preset]
        p = args.p if args.p is not None else preset["p"]
        a4 = args.a4 if args.a4 is not None else preset["a4"]
        a6 = args.a6 if args.a6 is not None else preset["a6"]
        if (args.preset == "j0" and a4 != 0) or (args.preset == "j1728" and a6 != 0):
            raise ConfigError(f"preset {args.preset} fixes the other coefficient to 0")
    else:
        p = args.p if args.p is not None else DEFAULT_CURVE[0]
        a4 = args.a4 if args.a4 is not None else DEFAULT_CURVE[1]
        a6 = args.a6 if args.a6 is not None else DEFAULT_CURVE[2]
    endo = args.endo or DEFAULT_ENDO[args.preset]

    ns = _int_list(args.n, "n") if args.n else DEFAULT_NS[args.mode]
    if any(n < 1 for n in ns):
        raise ConfigError("--n entries must be positive")

    fz = _int_list(args.fz, "fz") if args.fz else None
    d = args.d
    if fz is not None:
        size = int(round(len(fz) ** 0.5))
        if size * size != len(fz) or size % 2:
            raise ConfigError("--fz needs (2d)^2 entries")
        if d is not None and d != size // 2:
            raise ConfigError(f"--fz has {len(fz)} entries but --d is {d}")
        d = size // 2
    if d is not None and d < 1:
        raise ConfigError("--d must be positive")
    if args.tol_action <= 0:
        raise ConfigError("--tol-action must be positive")
    if args.format == "csv" and args.mode not in CSV_MODES:
        raise ConfigError(f"csv output is only available for {', '.join(CSV_MODES)}")
    return RunConfig(args.mode, p, a4, a6, args.preset, endo, ns, d, fz, seed,
                     args.tol_action, args.out, args.format)


def _curve(cfg):
    try:
        if cfg.preset:
            coeff = cfg.a6 if cfg.preset == "j0" else cfg.a4
            return preset_curve(cfg.preset, cfg.p, coeff)
        return Curve(cfg.p, cfg.a4, cfg.a6)
    except RibetorError as exc:
        raise ConfigError(f"bad curve: {exc}") from None
    except ValueError as exc:
        raise ConfigError(f"bad curve: {exc}") from None


def _phi(cfg, E):
    try:
        return parse_endo(cfg.endo, E)
    except IncompatibleGenerator as exc:
        raise ConfigError(str(exc)) from None


# -- modes ---------------------------------------------------------------------------

def _algebraic(cfg):
    E = _curve(cfg)
    _phi(cfg, E)
    cases = suites.ribet_identity_cases(E, cfg.endo, cfg.n, cfg.seed)
    cases += suites.biextension_cases(E, cfg.seed)
    cases += suites.normal_form_cases(E, cfg.seed)
    return cases, None


def _search(cfg):
    E = _curve(cfg)
    phi = _phi(cfg, E)
    for n in cfg.n:
        check_order_hypotheses(phi, n, E.p)
    return suites.order_n2_cases(E, cfg.endo, cfg.n, cfg.seed), None


def _pairing(cfg):
    E = _curve(cfg)
    phi = _phi(cfg, E)
    kinds = sorted({"pi", phi.gen.kind})
    cases = suites.pairing_cases(E, cfg.n, cfg.seed, kinds=kinds)
    cases += suites.reciprocity_cases(E, cfg.seed)
    rows = suites.pairing_table_rows(E, cfg.n, cfg.seed)
    for i, row in enumerate(rows):
        cases.append(Case(f"table/{i:04d}", "pairing-table-row",
                          {k: row[k] for k in ("n", "k", "a", "b", "c", "d")},
                          {"value": row["value"], "order": row["order"]}, row["agree"]))
    csv_rows = [
        [r["n"], r["k"], r["a"], r["b"], r["c"], r["d"],
         " ".join(map(str, r["value"].coeffs)), r["order"], int(r["agree"])]
        for r in rows
    ]
    header = ["n", "k", "a", "b", "c", "d", "value", "order", "agree"]
    return cases, (header, csv_rows)


def _f_matrix(cfg):
    vals = cfg.fz if cfg.fz is not None else DEFAULT_FZ
    return IntBlockMatrix.from_flat(vals, int(round(len(vals) ** 0.5)) // 2)


def _analytic(cfg):
    ds = (cfg.d,) if cfg.d else (1, 2)
    cases = suites.action_law_cases(cfg.seed, ds, tol=cfg.tol_action)
    cases += suites.equivariance_cases(cfg.seed, ds, tol=cfg.tol_action)
    cases += suites.duality_cases(cfg.seed)
    cases += suites.stabilizer_cases(cfg.seed)
    cases += suites.torsion_lattice_cases()
    if cfg.fz is not None:
        cases += suites.f_cases(_f_matrix(cfg), cfg.n)
    return cases, None


def _orbit(cfg):
    import numpy as np

    f = _f_matrix(cfg)
    n = cfg.n[0]
    x = find_order_n2_witness(f, n) if n ** (2 * f.d) <= 10**5 else None
    x = x or tuple([Fraction(1, n)] + [Fraction(0)] * (2 * f.d - 1))
    rep = ribet_torsion_verify(f, x, n)
    tau = np.eye(f.d) * 1j
    with_c = is_hodge_morphism(f, tau)[0]
    recs = orbit_sample(f, x, n * n, tau if with_c else None)
    cases = []
    header = ["k", "fiber_num", "fiber_den", "base_num", "base_den"]
    if with_c:
        header += ["fiber_re", "fiber_im", "base_re", "base_im"]
    rows = []
    for rec in recs:
        cases.append(Case(f"orbit/{rec['k']:04d}", "orbit-point", {"k": rec["k"]},
                          {"fiber": rec["fiber"], "base": rec["base"]}, True))
        row = [rec["k"], rec["fiber"].numerator, rec["fiber"].denominator,
               " ".join(str(c.numerator) for c in rec["base"]),
               " ".join(str(c.denominator) for c in rec["base"])]
        if with_c:
            fc, bc = rec["fiber_c"], rec["base_c"]
            row += [repr(fc.real), repr(fc.imag), " ".join(repr(c.real) for c in bc),
                    " ".join(repr(c.imag) for c in bc)]
        rows.append(row)
    closes = recs[rep.order - 1]["fiber"] == 0 and not any(recs[rep.order - 1]["base"]) \
        if rep.order <= len(recs) else False
    cases.append(Case("orbit/summary", "orbit-order", {"f": f.entries, "x": x, "n": n},
                      {"order": rep.order, "closes": closes}, rep.divides_n2 and closes))
    return cases, (header, rows)


def _selftest(cfg):
    cases = []
    for label, (p, a4, a6), endo in REFERENCE_CURVES:
        E = Curve(p, a4, a6)
        ns = (3, 5) if label != "ordinary" else (5,)
        cases += suites.ribet_identity_cases(E, endo, ns, cfg.seed, points=4, label=label)
        cases += suites.order_n2_cases(E, endo, (3, 5), cfg.seed, label=label)
        cases += suites.pairing_cases(E, (5,), cfg.seed, triples=20, samples=3,
                                      adjoint_range=1, label=label)
        cases += suites.reciprocity_cases(E, cfg.seed, pairs=10, label=label)
        cases += suites.biextension_cases(E, cfg.seed, triples=20, twists=5, label=label)
        cases += suites.normal_form_cases(E, cfg.seed, count=5, label=label)
    cases += suites.action_law_cases(cfg.seed, (1, 2), count=100, tol=cfg.tol_action)
    cases += suites.equivariance_cases(cfg.seed, (1, 2), count=50, tol=cfg.tol_action)
    cases += suites.duality_cases(cfg.seed, bound=1, random_d2=10)
    cases += suites.stabilizer_cases(cfg.seed, bound_f=1, bound_x=1, sampled_d2=10)
    cases += suites.torsion_lattice_cases(bound=1, max_n=4)
    return cases, None


RUNNERS = {
    "verify-ribet-algebraic": _algebraic,
    "verify-ribet-analytic": _analytic,
    "pairing-table": _pairing,
    "search-order-n2": _search,
    "orbit-sample": _orbit,
    "selftest": _selftest,
}


def run(cfg):
    """Execute the configured suite; returns (report, csv table or None)."""
    cases, table = RUNNERS[cfg.mode](cfg)
    records = sorted((c.to_json() for c in cases), key=lambda c: c["id"])
    ids = [c["id"] for c in records]
    if len(set(ids)) != len(ids):
        raise AssertionError("case ids must be unique")
    passed = sum(c["pass"] for c in records)
    report = {
        "config": jsonable(cfg.to_json()),
        "cases": records,
        "summary": {"total": len(records), "passed": passed, "failed": len(records) - passed},
        "version": __version__,
    }
    return report, table


def render(report, table, fmt):
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(table[0])
        w.writerows(table[1])
        return buf.getvalue()
    return json.dumps(report, indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def write_atomic(path, text):
    """Write through a temporary file in the target directory, then rename."""
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".ribetor-", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        cfg = make_config(args)
        report, table = run(cfg)
    except HypothesisViolated as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    text = render(report, table, cfg.format)
    if cfg.out:
        write_atomic(cfg.out, text)
    else:
        sys.stdout.write(text)
    summary = report["summary"]
    print(f"{cfg.mode}: {summary['passed']}/{summary['total']} passed", file=sys.stderr)
    return 0 if summary["failed"] == 0 else 1


__all__ = ["RunConfig", "build_parser", "make_config", "run", "render", "write_atomic", "main"]
