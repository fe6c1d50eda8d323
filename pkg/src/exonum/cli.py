"""Command-line front end emitting CSV/JSON datasets.

Examples::

    exonum seq --name s --from 0 --to 20
    exonum decomp 3dec 42
    exonum decomp bdec --table
    exonum fluct phi --grid 1024 --depth 20
    exonum conjecture trib --nmax 16

Settings come from (lowest priority first) built-in defaults, a
``key=value`` config file (``--config`` or ``EXONUM_CONFIG``), ``EXONUM_*``
environment variables and command-line flags. Data goes to stdout (or
``--out``); diagnostics go to stderr. Exit codes: 0 success, 2 domain or
usage error, 3 capacity exceeded, 4 precision failure.
"""

import argparse
import csv
import io
import json
import os
import sys
from dataclasses import dataclass, fields, replace
from fractions import Fraction

import mpmath

from exonum import conjecture_lab as lab
from exonum import fluctuation as fl
from exonum.decomposition import b_dec, three_dec
from exonum.errors import CapacityError, DomainError, ExonumError, PrecisionError
from exonum.numeration import base_k, system_by_name, to_mpf
from exonum.subword import s, s_F, s_generalized
from exonum.summatory import A, A_F, delange_suite

EXIT_OK, EXIT_DOMAIN, EXIT_CAPACITY, EXIT_PRECISION = 0, 2, 3, 4
JSON_SAFE_INT = 2**53


@dataclass(frozen=True)
class RunConfig:
    precision_bits: int = 128
    grid: int = 1024
    depth: int = None  # per-command default when unset
    format: str = "csv"
    out: str = None
    oracle_cap: int = 22
    residual_threshold: float = 1.2

    def validate(self):
        for name in ("precision_bits", "grid", "oracle_cap"):
            if getattr(self, name) <= 0:
                raise DomainError("%s must be positive" % name)
        if self.depth is not None and self.depth <= 0:
            raise DomainError("depth must be positive")
        if self.residual_threshold <= 0:
            raise DomainError("residual_threshold must be positive")
        if self.format not in ("csv", "json"):
            raise DomainError("format must be csv or json, got %r" % self.format)
        if self.precision_bits < 53:
            raise DomainError("precision_bits below 53 is not supported")
        return self


_CASTS = {
    "precision_bits": int,
    "grid": int,
    "depth": int,
    "format": str,
    "out": str,
    "oracle_cap": int,
    "residual_threshold": float,
}


def _coerce(key, raw):
    try:
        return _CASTS[key](raw)
    except ValueError:
        raise DomainError("bad value %r for %s" % (raw, key)) from None


def read_config_file(path):
    """Parse ``key=value`` lines; ``#`` starts a comment, dashes in keys are allowed."""
    out = {}
    with open(path) as fh:
        for lineno, line in enumerate(fh, 1):
            line = line.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise DomainError("%s:%d: expected key=value" % (path, lineno))
            key, value = (x.strip() for x in line.split("=", 1))
            key = key.replace("-", "_")
            if key not in _CASTS:
                raise DomainError("%s:%d: unknown key %r" % (path, lineno, key))
            out[key] = _coerce(key, value)
    return out


def load_config(args, environ=None):
    environ = os.environ if environ is None else environ
    values = {}
    path = getattr(args, "config", None) or environ.get("EXONUM_CONFIG")
    if path:
        values.update(read_config_file(path))
    for f in fields(RunConfig):
        env = environ.get("EXONUM_" + f.name.upper())
        if env is not None:
            values[f.name] = _coerce(f.name, env)
    for f in fields(RunConfig):
        if hasattr(args, f.name):
            values[f.name] = getattr(args, f.name)
    return replace(RunConfig(), **values).validate()


# ---------------------------------------------------------------------------
# output


def _fmt_real(x):
    return mpmath.nstr(to_mpf(x), 12)


def _cell(x):
    if isinstance(x, (int, str)):
        return str(x)
    return _fmt_real(x)


def _json_value(x):
    if isinstance(x, bool) or x is None or isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x) if abs(x) > JSON_SAFE_INT else x
    if isinstance(x, dict):
        return {k: _json_value(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_json_value(v) for v in x]
    if isinstance(x, Fraction) and x.denominator == 1:
        return _json_value(int(x))
    return float(_fmt_real(x))


class Table:
    """Header plus rows, rendered as CSV or as a JSON list of records."""

    def __init__(self, header, rows):
        self.header = list(header)
        self.rows = list(rows)

    def render(self, fmt):
        if fmt == "json":
            records = [dict(zip(self.header, (_json_value(v) for v in row))) for row in self.rows]
            return json.dumps(records, indent=1) + "\n"
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(self.header)
        for row in self.rows:
            writer.writerow([_cell(v) for v in row])
        return buf.getvalue()


def _emit(text, cfg):
    if cfg.out:
        with open(cfg.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _note(msg):
    print(msg, file=sys.stderr)


# ---------------------------------------------------------------------------
# commands


def cmd_seq(args, cfg):
    lo, hi = args.start, args.stop
    if lo < 0 or hi < lo:
        raise DomainError("need 0 <= from <= to")
    name = args.name
    if name == "s":
        fn = lambda n: s(n, args.method or "recurrence")
    elif name == "sF":
        fn = lambda n: s_F(n, args.method or "recurrence")
    elif name == "s2digitsum":
        fn = lambda n: bin(n).count("1")
    else:
        system = base_k(args.k) if args.k else system_by_name(args.system or "base3")
        method = args.method or "oracle"
        if method == "recurrence":
            raise DomainError("sk has no recurrence; use oracle or automaton")
        fn = lambda n: s_generalized(system, n, method, cap=cfg.oracle_cap)
    return Table(["n", "value"], [(n, fn(n)) for n in range(lo, hi + 1)])


def _expansion_text(dec):
    terms = []
    for i, a in enumerate(dec.coeffs):
        if a == 0:
            continue
        power = dec.scale - i
        base = "3^%d" % power if dec.basis == "3" else "B(%d)" % power
        terms.append("%+d*%s" % (a, base))
    return "".join(terms).lstrip("+")


def cmd_decomp(args, cfg):
    fn, value, first = (three_dec, A, 2) if args.kind == "3dec" else (b_dec, A_F, 3)
    if args.table:
        lo, hi = args.range or (first, 20)
        rows = []
        for n in range(lo, hi + 1):
            d = fn(n)
            rows.append((n, " ".join(str(a) for a in d.coeffs), value(n), _expansion_text(d)))
        return Table(["n", "coeffs", "value", "expansion"], rows)
    if args.range:
        ns = range(args.range[0], args.range[1] + 1)
    elif args.n is not None:
        ns = [args.n]
    else:
        raise DomainError("give n, --range or --table")
    decs = [fn(n).to_json() | {"value": value(n)} for n in ns]
    payload = decs[0] if args.n is not None and not args.range else decs
    return json.dumps(_json_value(payload), indent=1) + "\n"


def _sample_table(samples, first="alpha", extra=None):
    header = [first, "value"] + ([extra] if extra else [])
    rows = []
    for p in samples:
        row = [p.alpha, p.value]
        if extra:
            row.append(p.residual)
        rows.append(row)
    return Table(header, rows)


def cmd_fluct(args, cfg):
    prec, grid, which = cfg.precision_bits, cfg.grid, args.which
    if which == "phi":
        depth = cfg.depth or 20
        return _sample_table(fl.sample_phi(grid, depth, prec), extra="tail_bound")
    if which == "psi":
        if args.range:
            return _sample_table(fl.sample_psi_range(args.range[0], args.range[1], prec))
        depth = cfg.depth or 22
        return _sample_table(fl.sample_psi_step(depth, grid, prec))
    if which == "phin":
        return _sample_table(fl.sample_phi_step(_need_n(args), grid, prec))
    if which == "psin":
        return _sample_table(fl.sample_psi_step(_need_n(args), grid, prec))
    if which == "H":
        depth = cfg.depth or 40
        return _sample_table(fl.sample_H(grid, args.periods, depth, prec), first="x")
    if which == "Hk":
        k = args.k or 3
        lo, hi = args.range or (k**5, k**6)
        samples = lab.sample_Hk(k, lo, hi, args.method or "oracle", cfg.oracle_cap, prec)
        return _sample_table(samples, first="frac_log")
    if which in ("GT", "GQ"):
        samples, c_fit, theta = lab.sample_GT_GQ(which, args.nmax or 14, args.method or "automaton", cfg.oracle_cap, prec)
        _note("%s: root %s, scale %s" % (which, _fmt_real(theta), _fmt_real(c_fit)))
        return _sample_table(samples, first="relpos")
    if which == "delangeG":
        lo, hi = args.range or (2**10, 2**12)
        rows = []
        with mpmath.workprec(prec):
            for N in range(max(lo, 1), hi):
                rows.append((mpmath.log(N, 2), delange_suite(N, prec)[1]))
        return Table(["log2N", "value"], rows)
    if which == "residual":
        lo, hi = args.range or (10, 24)
        maxima = fl.residual_block_maxima(lo, hi, prec)
        rows = []
        for n, m in maxima.items():
            ratio = maxima[n - 4] / m if n - 4 in maxima else None
            rows.append((n, m, "" if ratio is None else ratio))
            if ratio is not None and ratio < cfg.residual_threshold:
                _note("block %d: decay ratio %s below threshold %s" % (n, _fmt_real(ratio), cfg.residual_threshold))
        return Table(["n", "block_max", "ratio_4"], rows)
    raise DomainError("unknown dataset %r" % which)


def _need_n(args):
    if args.n is None:
        raise DomainError("--n is required for step approximants")
    return args.n


def cmd_conjecture(args, cfg):
    method = args.method or "automaton"
    if args.name == "basek":
        report = lab.check_base_k_scaling(args.k or 3, 200 if args.nmax is None else args.nmax, args.method or "oracle", cfg.oracle_cap)
    elif args.name == "trib":
        report = lab.tribonacci_V(16 if args.nmax is None else args.nmax, method, cfg.oracle_cap)[2]
    else:
        report = lab.quadribonacci_fit(20 if args.nmax is None else args.nmax, method, cfg.oracle_cap)[1]
    return json.dumps(_json_value(report), indent=1) + "\n"


# ---------------------------------------------------------------------------
# parser


def _common():
    p = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    p.add_argument("--precision-bits", dest="precision_bits", type=int)
    p.add_argument("--grid", type=int)
    p.add_argument("--depth", type=int)
    p.add_argument("--format", choices=("csv", "json"))
    p.add_argument("--out")
    p.add_argument("--oracle-cap", dest="oracle_cap", type=int)
    p.add_argument("--residual-threshold", dest="residual_threshold", type=float)
    p.add_argument("--config")
    return p


def build_parser():
    common = _common()
    parser = argparse.ArgumentParser(prog="exonum", description=__doc__.split("\n")[0], parents=[common])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("seq", parents=[common], help="dump a sequence as n,value")
    p.add_argument("--name", required=True, choices=("s", "sF", "sk", "s2digitsum"))
    p.add_argument("--from", dest="start", type=int, default=0)
    p.add_argument("--to", dest="stop", type=int, default=20)
    p.add_argument("--method", choices=("recurrence", "oracle", "automaton"))
    p.add_argument("--system", help="numeration system for sk (base3, tribonacci, ...)")
    p.add_argument("--k", type=int, help="integer base for sk")
    p.set_defaults(func=cmd_seq)

    p = sub.add_parser("decomp", parents=[common], help="3- or B-decompositions")
    p.add_argument("kind", choices=("3dec", "bdec"))
    p.add_argument("n", type=int, nargs="?")
    p.add_argument("--range", nargs=2, type=int, metavar=("LO", "HI"))
    p.add_argument("--table", action="store_true")
    p.set_defaults(func=cmd_decomp)

    p = sub.add_parser("fluct", parents=[common], help="fluctuation-function datasets")
    p.add_argument("which", choices=("phi", "psi", "H", "Hk", "GT", "GQ", "phin", "psin", "delangeG", "residual"))
    p.add_argument("--n", type=int, help="depth of a step approximant")
    p.add_argument("--k", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--periods", type=int, default=1)
    p.add_argument("--range", nargs=2, type=int, metavar=("LO", "HI"))
    p.add_argument("--method", choices=("oracle", "automaton"))
    p.set_defaults(func=cmd_fluct)

    p = sub.add_parser("conjecture", parents=[common], help="experiment reports (JSON)")
    p.add_argument("name", choices=("basek", "trib", "quad"))
    p.add_argument("--k", type=int)
    p.add_argument("--nmax", type=int)
    p.add_argument("--method", choices=("oracle", "automaton"))
    p.set_defaults(func=cmd_conjecture)
    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args)
        with mpmath.workprec(cfg.precision_bits):
            result = args.func(args, cfg)
        text = result.render(cfg.format) if isinstance(result, Table) else result
        _emit(text, cfg)
    except CapacityError as exc:
        _note("capacity exceeded: %s" % exc)
        return EXIT_CAPACITY
    except PrecisionError as exc:
        _note("precision failure: %s" % exc)
        return EXIT_PRECISION
    except (ExonumError, ValueError, OSError) as exc:
        _note("error: %s" % exc)
        return EXIT_DOMAIN
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
