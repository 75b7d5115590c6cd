"""Command line front end.

Problem files are line oriented (``#`` starts a comment)::

    ring: x, y ; t
    equations: x^2 + y^2 - t*x*y
    function: x
    samples: t = 0, 1
    mode: both
    seed: 0
    field: q
    options: binomial = a ; nmax = 12 ; truncation = 24

Exit status: 0 when a result was computed (a FAILS verdict included),
2 for INDETERMINATE or resource exhaustion, 1 for input errors.
"""

from __future__ import annotations

import argparse
import itertools
import json
import re
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction

from . import __version__
from .brmult import DEFAULT_NMAX, e_mM_polar_formula
from .depend import DEFAULT_BUDGET, DEFAULT_TRUNCATION, curve_criterion, default_paths
from .errors import EquisingError, ParseError, PreconditionError, ResourceLimitExceeded
from .family import (
    FAILS,
    HOLDS,
    INDETERMINATE,
    ParameterPoint,
    check_af,
    check_milnor_formulations,
    check_wf,
    invariant_record,
    semicontinuity_check,
    specialize,
    support_equality,
)
from .fields import QQ, parse_field
from .germ import FamilyGerm, jacobian_module
from .poly import Ring
from .sb import ideal

SCHEMA_VERSION = "1"
KEYS = ("ring", "equations", "function", "samples", "mode", "seed", "field", "options")
MODES = ("generic", "samples", "both")
BINOMIALS = ("a-1", "a")
_IDENT = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")


@dataclass
class ProblemFile:
    xvars: tuple
    params: tuple
    equations: list
    function: str
    samples: dict = field(default_factory=dict)
    mode: str = "both"
    seed: int = 0
    field: str = "q"
    binomial: str = "a-1"
    nmax: int = DEFAULT_NMAX
    truncation: int = DEFAULT_TRUNCATION
    germ: FamilyGerm | None = None

    def canonical(self) -> str:
        ring = ", ".join(self.xvars)
        if self.params:
            ring += " ; " + ", ".join(self.params)
        lines = [f"ring: {ring}"]
        g = self.germ
        if g.equations:
            lines.append("equations: " + ", ".join(str(e) for e in g.equations))
        lines.append(f"function: {g.function}")
        for p in self.params:
            if p in self.samples:
                lines.append(f"samples: {p} = " + ", ".join(str(v) for v in self.samples[p]))
        lines.append(f"mode: {self.mode}")
        lines.append(f"seed: {self.seed}")
        lines.append(f"field: {self.field}")
        lines.append(f"options: binomial = {self.binomial} ; nmax = {self.nmax} ; truncation = {self.truncation}")
        return "\n".join(lines) + "\n"

    def __eq__(self, other):
        return isinstance(other, ProblemFile) and self.canonical() == other.canonical()

    def points(self) -> tuple[list, list]:
        """Parameter points for the run, and notices."""
        notes = []
        pts = []
        if not self.params:
            return [ParameterPoint.at({})], notes
        origin = ParameterPoint.at({p: 0 for p in self.params})
        if self.mode in ("samples", "both"):
            lists = [self.samples.get(p, [Fraction(0)]) for p in self.params]
            for combo in itertools.product(*lists):
                pt = ParameterPoint.at(dict(zip(self.params, combo)))
                if pt not in pts:
                    pts.append(pt)
        if origin not in pts:
            pts.insert(0, origin)
            if self.mode != "generic":
                notes.append("y = 0 added to the sample points")
        if self.mode in ("generic", "both"):
            if self.field == "q":
                pts.append(ParameterPoint.generic())
            else:
                notes.append("generic point skipped: needs field q")
        return pts, notes


def _split_top(text: str, sep: str):
    """Split on ``sep`` and report each piece's offset."""
    out, start = [], 0
    for i, ch in enumerate(text):
        if ch == sep:
            out.append((text[start:i], start))
            start = i + 1
    out.append((text[start:], start))
    return out


def _parse_expr(text: str, offset: int, line: int, ring: Ring):
    stripped = text.lstrip()
    lead = len(text) - len(stripped)
    try:
        return ring.parse(stripped.rstrip())
    except ParseError as exc:
        raise ParseError(exc.message, (exc.pos or 0) + offset + lead, line) from None


def _idents(text: str, line: int, offset: int) -> tuple:
    out = []
    for piece, off in _split_top(text, ","):
        name = piece.strip()
        if not _IDENT.match(name):
            raise ParseError(f"bad identifier {name!r}", offset + off, line)
        if name in out:
            raise ParseError(f"duplicate identifier {name!r}", offset + off, line)
        out.append(name)
    return tuple(out)


def parse_problem(data: bytes | str) -> ProblemFile:
    text = data.decode("utf-8") if isinstance(data, bytes) else data
    entries: dict = {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        if ":" not in content:
            raise ParseError("expected 'key: value'", len(content) - len(content.lstrip()), lineno)
        key, _, value = content.partition(":")
        key = key.strip()
        if key not in KEYS:
            raise ParseError(f"unknown key {key!r}", content.index(key), lineno)
        offset = content.index(":") + 1
        if key == "samples":
            entries.setdefault("samples", []).append((value, offset, lineno))
        elif key in entries:
            raise ParseError(f"duplicate key {key!r}", content.index(key), lineno)
        else:
            entries[key] = (value, offset, lineno)

    if "ring" not in entries:
        raise ParseError("missing 'ring:' line", None, 1)
    value, off, ln = entries["ring"]
    xs_text, _, ps_text = value.partition(";")
    xvars = _idents(xs_text, ln, off)
    params = _idents(ps_text, ln, off + len(xs_text) + 1) if ps_text.strip() else ()
    if set(xvars) & set(params):
        raise ParseError("a name is both a variable and a parameter", off, ln)

    prob = ProblemFile(xvars, params, [], "")
    if "field" in entries:
        value, off, ln = entries["field"]
        try:
            parse_field(value.strip())
        except (ValueError, EquisingError) as exc:
            raise ParseError(f"bad field: {exc}", off, ln) from None
        prob.field = value.strip()
    ring = Ring(xvars + params, parse_field(prob.field))

    if "function" not in entries:
        raise ParseError("missing 'function:' line", None, len(text.splitlines()) or 1)
    value, off, ln = entries["function"]
    fn = _parse_expr(value, off, ln, ring)
    eqs = []
    if "equations" in entries:
        value, off, ln = entries["equations"]
        for piece, poff in _split_top(value, ","):
            eqs.append(_parse_expr(piece, off + poff, ln, ring))

    for value, off, ln in entries.get("samples", []):
        name, eq, vals = value.partition("=")
        name = name.strip()
        if not eq or name not in params:
            raise ParseError(f"samples must read '<parameter> = values', got {value.strip()!r}", off, ln)
        if name in prob.samples:
            raise ParseError(f"duplicate samples for {name!r}", off, ln)
        out = []
        for piece, poff in _split_top(vals, ","):
            try:
                out.append(Fraction(piece.strip()))
            except (ValueError, ZeroDivisionError):
                raise ParseError(f"bad rational {piece.strip()!r}", off + len(name) + 2 + poff, ln) from None
        prob.samples[name] = out

    if "mode" in entries:
        value, off, ln = entries["mode"]
        if value.strip() not in MODES:
            raise ParseError(f"mode must be one of {', '.join(MODES)}", off, ln)
        prob.mode = value.strip()
    if "seed" in entries:
        value, off, ln = entries["seed"]
        if not value.strip().isdigit():
            raise ParseError("seed must be an unsigned integer", off, ln)
        prob.seed = int(value)
    if "options" in entries:
        value, off, ln = entries["options"]
        for piece, poff in _split_top(value, ";"):
            k, eq, v = piece.partition("=")
            k, v = k.strip(), v.strip()
            if not eq:
                raise ParseError(f"option must read 'name = value', got {piece.strip()!r}", off + poff, ln)
            if k == "binomial":
                if v not in BINOMIALS:
                    raise ParseError("binomial must be a-1 or a", off + poff, ln)
                prob.binomial = v
            elif k in ("nmax", "truncation"):
                if not v.isdigit() or int(v) < 1:
                    raise ParseError(f"{k} must be a positive integer", off + poff, ln)
                setattr(prob, k, int(v))
            else:
                raise ParseError(f"unknown option {k!r}", off + poff, ln)

    try:
        prob.germ = FamilyGerm(xvars, params, eqs, fn, ring)
    except PreconditionError as exc:
        raise ParseError(str(exc), None, entries["function"][2]) from None
    prob.equations = [str(e) for e in eqs]
    prob.function = str(fn)
    return prob


# ---------------------------------------------------------------------------
# running


def _records(prob, points, with_e_mM=True, with_polar=True):
    import random

    rng = random.Random(prob.seed)
    return [invariant_record(prob.germ, p, rng.randrange(2**32), prob.nmax, with_e_mM=with_e_mM,
                             with_polar=with_polar) for p in points]


def _depend(prob) -> dict:
    g = prob.germ
    jm = jacobian_module(g)
    M = jm.module()
    paths, notes = default_paths(g.ring, g.equations, DEFAULT_BUDGET, prob.seed, prob.truncation)
    out = {"paths": str(len(paths)), "notices": notes, "columns": []}
    for j, gj in enumerate(jm.extra_columns):
        rep = curve_criterion(gj, M, paths)
        out["columns"].append({
            "g": g.params[j],
            "verdict": rep.verdict,
            "order": None if rep.order is None else str(rep.order),
            "witness": None if rep.witness is None else {k: str(v) for k, v in rep.witness.items()},
        })
    return out


def _polar_formula(prob, records) -> dict:
    out = {}
    for r in records:
        if r.mu_X is None:
            continue
        fib = specialize(prob.germ, r.at)
        out[r.at.label()] = {
            conv: str(e_mM_polar_formula(fib, conv, sequences=(r.mu_X, r.mu_Z))) for conv in BINOMIALS
        }
        out[r.at.label()]["selected"] = prob.binomial
    return out


def run(name: str, prob: ProblemFile, timing: bool = False) -> tuple[dict, int]:
    points, notes = prob.points()
    t0 = time.perf_counter()
    report = {
        "tool": "equising",
        "version": __version__,
        "schema": SCHEMA_VERSION,
        "command": name,
        "seed": str(prob.seed),
        "input": prob.canonical(),
        "points": [p.label() for p in points],
        "diagnostics": list(notes),
    }
    status = 0
    if name == "milnor":
        recs = _records(prob, points, with_e_mM=False, with_polar=False)
        report["records"] = [_subset(r, ("at", "mu_X", "mu_Z", "flags", "errors")) for r in recs]
        if any(r.mu_X is None for r in recs):
            status = 2
    elif name == "polar":
        recs = _records(prob, points, with_e_mM=False)
        report["records"] = [_subset(r, ("at", "mu_X", "mu_Z", "polar", "flags", "errors")) for r in recs]
        if any(r.polar is None for r in recs):
            status = 2
    elif name == "br":
        recs = _records(prob, points)
        report["records"] = [_subset(r, ("at", "e_M", "e_mM", "e_prime", "mu_X", "mu_Z", "consistent", "flags",
                                         "errors")) for r in recs]
        report["polar_formula"] = _polar_formula(prob, recs)
        if any(r.e_M is None or r.e_mM is None for r in recs):
            status = 2
    elif name == "depend":
        report["depend"] = _depend(prob)
    elif name in ("check-af", "check-wf", "report"):
        with_e_mM = name != "check-af"
        recs = _records(prob, points, with_e_mM=with_e_mM)
        report["records"] = [r.to_json() for r in recs]
        verdicts = []
        if name in ("check-af", "report"):
            verdicts.append(check_af(prob.germ, points, prob.seed, records=recs))
        if name in ("check-wf", "report"):
            verdicts.append(check_wf(prob.germ, points, prob.seed, records=recs))
        report["verdicts"] = [v.to_json() for v in verdicts]
        if name == "report":
            a2, w2 = check_milnor_formulations(prob.germ, points, prob.seed, records=recs)
            report["milnor_formulations"] = [a2.to_json(), w2.to_json()]
            agree = a2.outcome == verdicts[0].outcome and w2.outcome == verdicts[1].outcome
            report["diagnostics"].append("milnor formulations agree" if agree else
                                         "INTERNAL INCONSISTENCY: milnor formulations disagree")
            report["semicontinuity"] = semicontinuity_check(recs)
            report["polar_formula"] = _polar_formula(prob, recs)
            try:
                report["supports"] = _stringify(support_equality(prob.germ))
            except EquisingError as exc:
                report["supports"] = {"error": str(exc)}
            report["depend"] = _depend(prob)
        if any(v.outcome == INDETERMINATE for v in verdicts):
            status = 2
    else:
        raise ValueError(f"unknown subcommand {name!r}")
    if timing:
        report["timing_seconds"] = f"{time.perf_counter() - t0:.3f}"
    return report, status


def _stringify(obj):
    if isinstance(obj, dict):
        return {k: _stringify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_stringify(v) for v in obj]
    if isinstance(obj, bool) or obj is None or isinstance(obj, str):
        return obj
    return str(obj)


def _subset(rec, keys):
    j = rec.to_json()
    return {k: j[k] for k in keys}


def _human(report: dict) -> str:
    lines = [f"equising {report['version']}  {report['command']}  seed {report['seed']}"]
    for r in report.get("records", []):
        parts = [f"[{r['at']}]"]
        for k in ("mu_X", "mu_Z", "e_M", "e_mM", "e_prime", "polar"):
            if k in r and r[k] is not None:
                v = r[k]
                parts.append(f"{k}=" + ("(" + ", ".join(v) + ")" if isinstance(v, list) else v))
        for k, msg in r.get("errors", {}).items():
            parts.append(f"error[{k}]: {msg}")
        lines.append("  ".join(parts))
    for v in report.get("verdicts", []) + report.get("milnor_formulations", []):
        lines.append(f"{v['condition']}: {v['outcome']} ({v['clause']})")
    if "polar_formula" in report:
        for at, vals in report["polar_formula"].items():
            lines.append(f"[{at}] polar formula: C(a-1,i) -> {vals['a-1']}, C(a,i) -> {vals['a']}")
    if "depend" in report:
        for c in report["depend"]["columns"]:
            lines.append(f"g_{c['g']}: {c['verdict']}" + (f" {c['witness']}" if c["witness"] else ""))
    for d in report.get("diagnostics", []):
        lines.append(f"note: {d}")
    return "\n".join(lines) + "\n"


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(prog="equising", description=__doc__.split("\n\n")[0])
    ap.add_argument("command", choices=["milnor", "br", "polar", "depend", "check-af", "check-wf", "report"])
    ap.add_argument("problem", help="problem file ('-' for stdin)")
    ap.add_argument("--json", action="store_true", help="write the JSON report to stdout")
    ap.add_argument("--seed", type=int)
    ap.add_argument("--mode", choices=MODES)
    ap.add_argument("--field")
    ap.add_argument("--nmax", type=int)
    ap.add_argument("--truncation", type=int)
    ap.add_argument("--binomial", choices=BINOMIALS)
    ap.add_argument("--timing", action="store_true", help="add wall time (breaks byte stability)")
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return 1 if exc.code else 0
    try:
        data = sys.stdin.buffer.read() if args.problem == "-" else open(args.problem, "rb").read()
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        prob = parse_problem(data)
        if args.field is not None and args.field != prob.field:
            text = prob.canonical().replace(f"field: {prob.field}\n", f"field: {args.field}\n")
            prob = parse_problem(text)
        for k in ("seed", "mode", "nmax", "truncation", "binomial"):
            v = getattr(args, k)
            if v is not None:
                if k in ("nmax", "truncation") and v < 1 or k == "seed" and v < 0:
                    raise ParseError(f"--{k} must be positive")
                setattr(prob, k, v)
    except (ParseError, UnicodeDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return 1
    try:
        report, status = run(args.command, prob, args.timing)
    except ResourceLimitExceeded as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return 2
    except EquisingError as exc:
        print(f"indeterminate: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    if args.json:
        sys.stdout.write(json.dumps(report, indent=2, sort_keys=True, ensure_ascii=True) + "\n")
    else:
        sys.stdout.write(_human(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
