"""Command-line front end, JSON state documents and the S + C scanner.

State documents are JSON objects holding exactly one of

    {"matrix": [[[re, im], ...4 entries], ...4 rows]}      basis |00>, |01>, |10>, |11>
    {"pauli": {"s": [..3], "t": [..3], "C": [[..3], ..3 rows]}}

plus an optional "label". Exit codes: 0 success, 1 invalid or (under
--strict) non-positive state, 2 parse error, 3 LSD non-convergence, 4 I/O error.
"""

import argparse
from concurrent.futures import ProcessPoolExecutor
import csv
from dataclasses import dataclass
import io
import json
import math
import os
import sys
import warnings

import numpy as np

from .classify import auxiliary_ab, canonicalize, class_of
from .criteria import is_positive, is_separable
from .entangle import ConvergenceWarning, concurrence, optimal_lsd
from .errors import InvalidInputError, InvalidStateError, NoRealRootsError, PauliscopeError
from .invariants import global_invariants, local_invariants, positivity_inequalities, quartic_roots
from .statecore import DEFAULT_TOL, MEASURES, PauliRep, from_matrix, random_state, to_matrix

EXIT_OK, EXIT_INVALID, EXIT_PARSE, EXIT_NOCONV, EXIT_IO = 0, 1, 2, 3, 4

CSV_HEADER = ("index", "seed", "class", "sign", "S", "C", "sum", "separable", "m1", "m2", "m3")


class ParseError(PauliscopeError):
    """The input document does not follow the state schema."""


class _Exit(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


# ---------------------------------------------------------------- documents

def _real(x, where):
    if isinstance(x, bool) or not isinstance(x, (int, float)):
        raise ParseError(f"{where}: expected a number, got {json.dumps(x)}")
    return float(x)


def _reals(x, n, where):
    if not isinstance(x, list) or len(x) != n:
        raise ParseError(f"{where}: expected a list of {n} numbers")
    return [_real(v, f"{where}[{i}]") for i, v in enumerate(x)]


def _parse_matrix(doc):
    if not isinstance(doc, list) or len(doc) != 4:
        raise ParseError("matrix: expected 4 rows")
    m = np.zeros((4, 4), dtype=complex)
    for i, row in enumerate(doc):
        if not isinstance(row, list) or len(row) != 4:
            raise ParseError(f"matrix[{i}]: expected 4 entries")
        for j, entry in enumerate(row):
            re, im = _reals(entry, 2, f"matrix[{i}][{j}]")
            m[i, j] = complex(re, im)
    return m


def _parse_pauli(doc):
    if not isinstance(doc, dict):
        raise ParseError("pauli: expected an object with keys s, t, C")
    missing = [k for k in ("s", "t", "C") if k not in doc]
    if missing:
        raise ParseError(f"pauli: missing field(s) {', '.join(missing)}")
    extra = sorted(set(doc) - {"s", "t", "C"})
    if extra:
        raise ParseError(f"pauli: unknown field(s) {', '.join(extra)}")
    c = doc["C"]
    if not isinstance(c, list) or len(c) != 3:
        raise ParseError("pauli.C: expected 3 rows")
    rows = [_reals(r, 3, f"pauli.C[{i}]") for i, r in enumerate(c)]
    return PauliRep(_reals(doc["s"], 3, "pauli.s"), _reals(doc["t"], 3, "pauli.t"), rows)


def parse_document(text, fmt="auto"):
    """Parse a state document into ``(kind, payload, label)`` without validating the state."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise ParseError("line 1: top level must be a JSON object")
    present = [k for k in ("matrix", "pauli") if k in doc]
    if len(present) != 1:
        raise ParseError("document must hold exactly one of 'matrix' or 'pauli'")
    kind = present[0]
    if fmt not in ("auto", kind):
        raise ParseError(f"--format {fmt} given but the document holds '{kind}'")
    extra = sorted(set(doc) - {"matrix", "pauli", "label"})
    if extra:
        raise ParseError(f"unknown top-level field(s) {', '.join(extra)}")
    label = doc.get("label")
    if label is not None and not isinstance(label, str):
        raise ParseError("label: expected a string")
    payload = _parse_matrix(doc["matrix"]) if kind == "matrix" else _parse_pauli(doc["pauli"])
    return kind, payload, label


def parse_state(text, fmt="auto", tol=DEFAULT_TOL):
    """Validated :class:`PauliRep` from a document; matrices go through ``from_matrix``.

    Raises :class:`ParseError` on schema problems and
    :class:`~pauliscope.errors.InvalidInputError` for non-Hermitian or
    wrong-trace matrices.
    """
    kind, payload, _ = parse_document(text, fmt)
    return from_matrix(payload, tol) if kind == "matrix" else payload


def state_document(p, kind="pauli", label=None):
    if kind == "pauli":
        doc = {"pauli": {"s": p.s.tolist(), "t": p.t.tolist(), "C": p.c.tolist()}}
    else:
        m = to_matrix(p)
        doc = {"matrix": [[[float(v.real), float(v.imag)] for v in row] for row in m]}
    if label is not None:
        doc["label"] = label
    return doc


# ---------------------------------------------------------------- scanning

@dataclass(frozen=True)
class ScanRow:
    index: int
    seed: int
    cls: str
    sign: str
    s_value: float
    c_value: float
    sum: float
    separable: bool
    positive_margins: tuple

    def violates(self, tol=2e-3):
        return self.sum > 1.0 + tol

    def to_dict(self):
        return {"index": self.index, "seed": self.seed, "class": self.cls, "sign": self.sign,
                "S": self.s_value, "C": self.c_value, "sum": self.sum, "separable": self.separable,
                "positive_margins": list(self.positive_margins)}


def sample_seed(master, index):
    """Per-sample seed derived from (master seed, index) only."""
    return int(np.random.SeedSequence([master, index]).generate_state(1)[0])


def scan_row(index, master_seed, restarts=16, measure="hilbert-schmidt", tol=DEFAULT_TOL):
    seed = sample_seed(master_seed, index)
    p = random_state(seed, measure)
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        lsd = optimal_lsd(p, restarts=restarts, seed=seed, tol=tol)
    conc = concurrence(p, tol).value
    label = class_of(p, tol)
    margins = positivity_inequalities(global_invariants(p))
    return ScanRow(index, seed, label.label, label.sign_symbol, lsd.lam, conc, lsd.lam + conc,
                   bool(is_separable(p, tol).satisfied), tuple(float(x) for x in margins))


def _scan_star(args):
    return scan_row(*args)


def run_scan(samples, seed, restarts=16, jobs=1, measure="hilbert-schmidt", tol=DEFAULT_TOL):
    """Rows for ``samples`` random states, ordered by index whatever ``jobs`` is."""
    tasks = [(i, seed, restarts, measure, tol) for i in range(samples)]
    if jobs <= 1 or samples <= 1:
        return [_scan_star(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        rows = list(pool.map(_scan_star, tasks, chunksize=max(1, samples // (4 * jobs))))
    return sorted(rows, key=lambda r: r.index)


def _g17(x):
    return "%.17g" % x


def format_scan(rows, fmt="csv"):
    if fmt == "json":
        return json.dumps([r.to_dict() for r in rows], indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        w.writerow([r.index, r.seed, r.cls, r.sign, _g17(r.s_value), _g17(r.c_value), _g17(r.sum),
                    "true" if r.separable else "false", *(_g17(m) for m in r.positive_margins)])
    return buf.getvalue()


def emit_scan(rows, path, fmt="csv"):
    """Write rows to ``path`` (stdout for None or '-'). I/O failures raise OSError."""
    text = format_scan(rows, fmt)
    if path in (None, "-"):
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)


# ---------------------------------------------------------------- commands

def _default_tol():
    env = os.environ.get("PAULISCOPE_TOL")
    if env is None:
        return DEFAULT_TOL
    try:
        val = float(env)
    except ValueError:
        raise _Exit(EXIT_PARSE, f"PAULISCOPE_TOL is not a number: {env!r}") from None
    if not (math.isfinite(val) and val > 0):
        raise _Exit(EXIT_PARSE, f"PAULISCOPE_TOL must be positive, got {env!r}")
    return val


def _read_input(path):
    try:
        if path in (None, "-"):
            return sys.stdin.read()
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot read input: {exc}") from None


def _load(args):
    text = _read_input(args.input)
    try:
        kind, payload, label = parse_document(text, args.format)
        p = from_matrix(payload, args.tol) if kind == "matrix" else payload
    except ParseError as exc:
        raise _Exit(EXIT_PARSE, f"parse error: {exc}") from None
    except InvalidInputError as exc:
        raise _Exit(EXIT_INVALID, f"invalid state: {exc}") from None
    return kind, p, label


def _min_eig(p):
    return float(np.linalg.eigvalsh(to_matrix(p))[0])


def _positivity_gate(p, args):
    """None when p is positive; otherwise an advisory report (or exit 1 under --strict)."""
    w = _min_eig(p)
    if w >= -args.tol:
        return None
    msg = f"not a positive state (min eigenvalue {w:.6g})"
    if args.strict:
        raise _Exit(EXIT_INVALID, msg)
    return {"positive": False, "min_eigenvalue": w, "advisory": msg}


def _cmd_classify(args, p, label):
    adv = _positivity_gate(p, args)
    if adv is not None:
        return adv
    desc, frames = canonicalize(p, args.tol)
    out = desc.to_dict()
    out["frames"] = {"e": frames.e.tolist(), "n": frames.n.tolist()}
    return out


def _cmd_invariants(args, p, label):
    g = global_invariants(p)
    a, b = auxiliary_ab(p)
    try:
        roots = quartic_roots(g).tolist()
    except NoRealRootsError:
        roots = None
    return {"A2": g.a2, "A1": g.a1, "A0": g.a0, "local": vars(local_invariants(p)),
            "a": a, "b": b, "roots": roots}


def _cmd_check(args, p, label):
    pos = is_positive(p, args.tol)
    if not pos.satisfied and args.strict:
        raise _Exit(EXIT_INVALID, f"not a positive state (min eigenvalue {pos.min_eigenvalue:.6g})")
    sep = is_separable(p, args.tol) if pos.satisfied else None
    return {"positive": pos.satisfied, "separable": None if sep is None else sep.satisfied,
            "positivity": pos.to_dict(), "separability": None if sep is None else sep.to_dict()}


def _cmd_concurrence(args, p, label):
    adv = _positivity_gate(p, args)
    return adv if adv is not None else concurrence(p, args.tol).to_dict()


def _cmd_lsd(args, p, label):
    adv = _positivity_gate(p, args)
    if adv is not None:
        return adv
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", ConvergenceWarning)
        res = optimal_lsd(p, restarts=args.restarts, seed=args.seed, tol=args.tol)
    if not res.converged:
        raise _Exit(EXIT_NOCONV, f"LSD search did not converge in any restart (best S = {res.lam:.6g})")
    return res.to_dict()


def _cmd_convert(args, kind, p, label):
    target = args.to or ("matrix" if kind == "pauli" else "pauli")
    return state_document(p, target, label)


def _write(text, path):
    try:
        if path in (None, "-"):
            sys.stdout.write(text)
        else:
            with open(path, "w", encoding="utf-8", newline="") as fh:
                fh.write(text)
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write output: {exc}") from None


def _flat(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flat(v, f"{prefix}{k}." if not isinstance(v, (int, float, str, bool, type(None)))
                             else f"{prefix}{k}")
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flat(v, f"{prefix}{i}." if isinstance(v, (list, dict)) else f"{prefix}{i}")
    else:
        yield prefix.rstrip("."), obj


def _render(report, emit):
    if emit == "json":
        return json.dumps(report, indent=1) + "\n"
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(("key", "value"))
    for k, v in _flat(report):
        w.writerow((k, _g17(v) if isinstance(v, float) else json.dumps(v) if v is None or isinstance(v, bool) else v))
    return buf.getvalue()


def _cmd_scan(args):
    if args.samples < 0:
        raise _Exit(EXIT_PARSE, "--samples must be non-negative")
    rows = run_scan(args.samples, args.seed, args.restarts, args.jobs, args.measure, args.tol)
    bad = [r for r in rows if r.violates()]
    for r in bad:
        print(f"violation: index={r.index} seed={r.seed} S={_g17(r.s_value)} C={_g17(r.c_value)} "
              f"sum={_g17(r.sum)}", file=sys.stderr)
    try:
        emit_scan(rows, args.out, "json" if args.emit == "json" else "csv")
    except OSError as exc:
        raise _Exit(EXIT_IO, f"cannot write output: {exc}") from None
    print(f"violations: {len(bad)}", file=sys.stderr)


_COMMANDS = {
    "classify": _cmd_classify,
    "invariants": _cmd_invariants,
    "check": _cmd_check,
    "concurrence": _cmd_concurrence,
    "lsd": _cmd_lsd,
}


def build_parser():
    parser = argparse.ArgumentParser(prog="pauliscope", description="Two-qubit state analysis.")
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "classify": "family descriptor (class, sign, c, s, t)",
        "invariants": "global and local invariants, a and b",
        "check": "positivity and separability reports",
        "concurrence": "concurrence and its r-values",
        "lsd": "optimal Lewenstein-Sanpera decomposition",
        "scan": "S + C scan over random states",
        "convert": "re-serialize between pauli and matrix forms",
    }
    for name, text in helps.items():
        sp = sub.add_parser(name, help=text)
        sp.add_argument("--input", default="-", help="state document path, '-' for stdin")
        sp.add_argument("--format", choices=("auto", "pauli", "matrix"), default="auto")
        sp.add_argument("--tol", type=float, default=None,
                        help="absolute tolerance (default 1e-9 or $PAULISCOPE_TOL)")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--samples", type=int, default=100)
        sp.add_argument("--restarts", type=int, default=16)
        sp.add_argument("--jobs", type=int, default=1)
        sp.add_argument("--out", default=None, help="output path (stdout if omitted)")
        sp.add_argument("--emit", choices=("json", "csv"), default=None,
                        help="output format (json for reports, csv for scans by default)")
        sp.add_argument("--strict", action="store_true", help="exit 1 on non-positive states")
        if name == "scan":
            sp.add_argument("--measure", choices=MEASURES, default="hilbert-schmidt")
        if name == "convert":
            sp.add_argument("--to", choices=("pauli", "matrix"), default=None,
                            help="target form (default: the other one)")
    return parser


def run(argv=None):
    """Run the CLI and return the exit code."""
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_PARSE
    try:
        if args.tol is None:
            args.tol = _default_tol()
        elif not (math.isfinite(args.tol) and args.tol > 0):
            raise _Exit(EXIT_PARSE, "--tol must be a positive number")
        if args.command == "scan":
            _cmd_scan(args)
            return EXIT_OK
        kind, p, label = _load(args)
        if args.command == "convert":
            report = _cmd_convert(args, kind, p, label)
        else:
            report = _COMMANDS[args.command](args, p, label)
            if label is not None:
                report = {"label": label, **report}
        _write(_render(report, args.emit or "json"), args.out)
        return EXIT_OK
    except _Exit as exc:
        print(f"pauliscope: {exc}", file=sys.stderr)
        return exc.code
    except InvalidStateError as exc:
        print(f"pauliscope: {exc}", file=sys.stderr)
        return EXIT_INVALID


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
