"""Families of germs: specialisation, invariant records and the A_f / W_f
decisions.

A_f is decided by constancy of ``e(M_y)``, W_f by constancy of ``e(m_y M_y)``.
Both are cross-checked against the Milnor-number formulations (constancy of
``mu(X_y), mu(Z_y)`` resp. of the whole sectional sequences), which must give
the same answers.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .brmult import (
    DEFAULT_NMAX,
    ModuleContext,
    br_multiplicity_minors,
    e_mM_direct,
    polar_multiplicity,
)
from .errors import EquisingError, NotICIS, NotIsolated, PreconditionError, ResourceLimitExceeded
from .fields import QQ, FunctionField, RationalField
from .germ import (
    FamilyGerm,
    IcisGerm,
    jacobian_module,
    jacobian_rows,
    maximal_minors,
    minors_ideal,
    random_rational,
    sectional_sequence,
)
from .poly import LOCAL, Poly, Ring
from .sb import INFINITE, ModuleVector, global_colength, ideal, radical_membership, standard_basis

AF, WF = "AF", "WF"
HOLDS, FAILS, INDETERMINATE = "HOLDS", "FAILS", "INDETERMINATE"


@dataclass(frozen=True)
class ParameterPoint:
    """Rational parameter values, or ``values=None`` for the generic point."""

    values: tuple | None

    @classmethod
    def generic(cls) -> "ParameterPoint":
        return cls(None)

    @classmethod
    def at(cls, mapping: dict) -> "ParameterPoint":
        return cls(tuple(sorted((k, Fraction(v)) for k, v in mapping.items())))

    @property
    def is_generic(self) -> bool:
        return self.values is None

    @property
    def is_origin(self) -> bool:
        return self.values is not None and all(v == 0 for _, v in self.values)

    def label(self) -> str:
        if self.values is None:
            return "generic"
        if not self.values:
            return "origin"
        return ",".join(f"{k}={v}" for k, v in self.values)

    def mapping(self) -> dict:
        return dict(self.values or ())


def origin(g: FamilyGerm) -> ParameterPoint:
    return ParameterPoint.at({p: 0 for p in g.params})


def family_with_field(g: FamilyGerm, F) -> FamilyGerm:
    """The same family with coefficients reduced into ``F``."""
    S = g.ring.with_field(F)
    return FamilyGerm(g.xvars, g.params, [e.change_ring(S) for e in g.equations], g.function.change_ring(S), S)


def specialize(g: FamilyGerm, at: ParameterPoint) -> IcisGerm:
    F = g.ring.field
    if at.is_generic:
        if not g.params:
            K = F
        elif isinstance(F, RationalField):
            K = FunctionField(g.params)
        else:
            raise PreconditionError("generic parameters need rational coefficients")
        S = Ring(g.xvars, K)
        binds = {p: K.gen(p) for p in g.params}
    else:
        S = Ring(g.xvars, F)
        vals = at.mapping()
        missing = set(g.params) - set(vals)
        if missing:
            raise PreconditionError(f"no value for parameters {sorted(missing)}")
        binds = {p: vals[p] for p in g.params}
    eqs = [e.substitute(binds, S) for e in g.equations]
    for e, orig in zip(eqs, g.equations):
        if e.is_zero():
            raise PreconditionError(f"equation {orig} vanishes identically at {at.label()}")
    return IcisGerm(S, eqs, g.function.substitute(binds, S))


# ---------------------------------------------------------------------------
# records


@dataclass
class InvariantRecord:
    at: ParameterPoint
    mu_X: list | None = None
    mu_Z: list | None = None
    e_M: int | None = None
    e_mM: int | None = None
    e_prime: int | float | None = None
    polar: list | None = None
    flags: dict = field(default_factory=dict)
    errors: dict = field(default_factory=dict)

    @property
    def consistent(self) -> bool:
        if self.e_M is None or self.mu_X is None:
            return False
        return self.e_M == self.mu_X[0] + self.mu_Z[0]

    def to_json(self) -> dict:
        def s(v):
            if v is None:
                return None
            if isinstance(v, list):
                return [s(x) for x in v]
            if v == INFINITE:
                return "infinite"
            return str(v)

        return {
            "at": self.at.label(),
            "mu_X": s(self.mu_X),
            "mu_Z": s(self.mu_Z),
            "e_M": s(self.e_M),
            "e_mM": s(self.e_mM),
            "e_prime": s(self.e_prime),
            "polar": s(self.polar),
            "consistent": self.consistent,
            "flags": {k: self.flags[k] for k in sorted(self.flags)},
            "errors": {k: self.errors[k] for k in sorted(self.errors)},
        }


_RECOVERABLE = (EquisingError, ZeroDivisionError)


def _e_mM_generic_sampled(g: FamilyGerm, seed: int, nmax: int, draws: int = 2):
    """``e(m_y M_y)`` at a generic ``y`` by random rational specialisation:
    independent draws must agree."""
    rng = random.Random(seed)
    vals = []
    for _ in range(draws + 2):
        pt = ParameterPoint.at({p: random_rational(rng, 50, nonzero=True) for p in g.params})
        fib = specialize(g, pt)
        v = e_mM_direct(jacobian_module(fib), ModuleContext.for_germ(fib), nmax, modular=True)
        vals.append(v)
        if len(vals) >= draws and len(set(vals[-draws:])) == 1:
            return v
    raise ResourceLimitExceeded(f"generic e(mM) draws disagree: {vals}")


def invariant_record(g: FamilyGerm, at: ParameterPoint, seed: int = 0, nmax: int = DEFAULT_NMAX,
                     with_e_mM: bool = True, with_polar: bool = True, generic_e_mM: str = "sampled",
                     modular: bool = True) -> InvariantRecord:
    """All invariants of the fibre at ``at``; failures are recorded per field."""
    rec = InvariantRecord(at)
    try:
        fib = specialize(g, at)
    except PreconditionError as exc:
        rec.errors["fibre"] = str(exc)
        rec.flags["reduced"] = False
        return rec
    rng = random.Random(seed)
    jm = jacobian_module(fib)
    ctx = ModuleContext.for_germ(fib)
    crit = list(fib.equations) + minors_ideal(jm).generators

    try:
        xs, zs = sectional_sequence(fib, rng.randrange(2**32))
        rec.mu_X, rec.mu_Z = xs, zs
        rec.flags["icis"] = True
        rec.flags["z_isolated"] = True
    except NotIsolated as exc:
        rec.flags["z_isolated"] = False
        rec.errors["mu"] = f"NOT_ISOLATED: {exc}"
    except NotICIS as exc:
        rec.flags["icis"] = False
        rec.errors["mu"] = f"NOT_ICIS: {exc}"
    except _RECOVERABLE as exc:
        rec.errors["mu"] = f"{type(exc).__name__}: {exc}"

    try:
        e = br_multiplicity_minors(jm, ctx)
        if e == INFINITE:
            rec.flags["z_isolated"] = False
            rec.errors["e_M"] = "NOT_ISOLATED: minors ideal has infinite colength"
        else:
            rec.e_M = e
    except _RECOVERABLE as exc:
        rec.errors["e_M"] = f"{type(exc).__name__}: {exc}"

    try:
        rec.e_prime = global_colength(ideal(crit, fib.ring))
    except _RECOVERABLE as exc:
        rec.errors["e_prime"] = f"{type(exc).__name__}: {exc}"

    if with_polar and rec.flags.get("z_isolated"):
        try:
            rec.polar = [polar_multiplicity(fib, i, rng.randrange(2**32)) for i in range(fib.d + 1)]
        except _RECOVERABLE as exc:
            rec.errors["polar"] = f"{type(exc).__name__}: {exc}"

    if with_e_mM and rec.e_M is not None:
        try:
            if at.is_generic and g.params and generic_e_mM == "sampled":
                rec.e_mM = _e_mM_generic_sampled(g, rng.randrange(2**32), nmax)
                rec.flags["e_mM_method"] = "hilbert, random rational specialisation"
            else:
                rec.e_mM = e_mM_direct(jm, ctx, nmax, modular=modular)
                rec.flags["e_mM_method"] = "hilbert" + (", two primes" if modular and at.values is not None
                                                        and isinstance(g.ring.field, RationalField) else "")
        except _RECOVERABLE as exc:
            rec.errors["e_mM"] = f"{type(exc).__name__}: {exc}"
    return rec


# ---------------------------------------------------------------------------
# verdicts


@dataclass
class Verdict:
    condition: str
    outcome: str
    clause: str
    evidence: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"condition": self.condition, "outcome": self.outcome, "clause": self.clause,
                "evidence": self.evidence}


def _check_points(g: FamilyGerm, points: Sequence[ParameterPoint]) -> None:
    if not any(p.is_origin for p in points) and g.params:
        raise PreconditionError("the sample points must include y = 0")
    if len(points) < 2 and g.params:
        raise PreconditionError("need y = 0 and at least one other point")


def _table(records, key):
    return {r.at.label(): (None if getattr(r, key) is None else str(getattr(r, key))) for r in records}


def _hypothesis_failure(records, need: str) -> str | None:
    for r in records:
        if "fibre" in r.errors:
            return f"{r.at.label()}: {r.errors['fibre']}"
        if r.flags.get("icis") is False:
            return f"{r.at.label()}: {r.errors.get('mu')}"
    for r in records:
        for k in ("mu", need):
            msg = r.errors.get(k, "")
            if msg and not msg.startswith("NOT_ISOLATED"):
                return f"{r.at.label()}: {k}: {msg}"
    return None


def _non_isolated(records) -> str | None:
    for r in records:
        if r.flags.get("z_isolated") is False:
            return r.at.label()
    return None


def records_for(g: FamilyGerm, points: Sequence[ParameterPoint], seed: int = 0, **kw) -> list[InvariantRecord]:
    rng = random.Random(seed)
    return [invariant_record(g, p, rng.randrange(2**32), **kw) for p in points]


def check_af(g: FamilyGerm, points: Sequence[ParameterPoint], seed: int = 0,
             records: list | None = None, **kw) -> Verdict:
    """A_f holds iff ``Z_y`` stays isolated and ``e(M_y)`` is constant."""
    _check_points(g, points)
    records = records if records is not None else records_for(g, points, seed, **kw)
    ev = {"e_M": _table(records, "e_M"), "e_prime": _table(records, "e_prime")}
    mass = {}
    for r in records:
        if r.e_M is not None and r.e_prime is not None and r.e_prime != INFINITE:
            mass[r.at.label()] = str(r.e_prime - r.e_M)
    ev["off_origin_critical_mass"] = mass
    bad = _hypothesis_failure(records, "e_M")
    if bad:
        return Verdict(AF, INDETERMINATE, "hypothesis", {**ev, "reason": bad})
    iso = _non_isolated(records)
    if iso:
        return Verdict(AF, FAILS, "isolation", {**ev, "not_isolated_at": iso})
    vals = {r.e_M for r in records}
    if len(vals) == 1:
        return Verdict(AF, HOLDS, "e(M_y) constant", ev)
    return Verdict(AF, FAILS, "e(M_y) not constant", ev)


def check_wf(g: FamilyGerm, points: Sequence[ParameterPoint], seed: int = 0,
             records: list | None = None, **kw) -> Verdict:
    """W_f holds iff ``Z_y`` stays isolated and ``e(m_y M_y)`` is constant."""
    _check_points(g, points)
    records = records if records is not None else records_for(g, points, seed, **kw)
    ev = {"e_mM": _table(records, "e_mM"), "e_M": _table(records, "e_M")}
    af = check_af(g, points, seed, records)
    ev["af_outcome"] = af.outcome
    bad = _hypothesis_failure(records, "e_mM")
    if bad:
        return Verdict(WF, INDETERMINATE, "hypothesis", {**ev, "reason": bad})
    iso = _non_isolated(records)
    if iso:
        return Verdict(WF, FAILS, "isolation", {**ev, "not_isolated_at": iso})
    if any(r.e_mM is None for r in records):
        return Verdict(WF, INDETERMINATE, "resources", {**ev, "reason": "e(mM) unavailable"})
    vals = {r.e_mM for r in records}
    if len(vals) == 1:
        out = Verdict(WF, HOLDS, "e(m_y M_y) constant", ev)
        # constancy of e(mM) forces constancy of e(M)
        ev["implies_af_consistent"] = af.outcome == HOLDS
    else:
        out = Verdict(WF, FAILS, "e(m_y M_y) not constant", ev)
    return out


def check_milnor_formulations(g: FamilyGerm, points: Sequence[ParameterPoint], seed: int = 0,
                              records: list | None = None, **kw) -> tuple[Verdict, Verdict]:
    """Constancy of ``(mu(X_y), mu(Z_y))`` and of the full sectional sequences."""
    _check_points(g, points)
    records = records if records is not None else records_for(g, points, seed, **kw)
    pair = {r.at.label(): None if r.mu_X is None else [str(r.mu_X[0]), str(r.mu_Z[0])] for r in records}
    seqs = {r.at.label(): None if r.mu_X is None else {"X": [str(v) for v in r.mu_X], "Z": [str(v) for v in r.mu_Z]}
            for r in records}
    bad = _hypothesis_failure(records, "mu")
    iso = _non_isolated(records)
    out = []
    for cond, clause, table, key in (
        (AF, "Milnor numbers mu(X_y), mu(Z_y)", pair, lambda r: (r.mu_X[0], r.mu_Z[0])),
        (WF, "sectional sequences mu_i(X_y), mu_i(Z_y)", seqs, lambda r: (tuple(r.mu_X), tuple(r.mu_Z))),
    ):
        ev = {"values": table}
        if bad:
            out.append(Verdict(cond, INDETERMINATE, "hypothesis", {**ev, "reason": bad}))
        elif iso:
            out.append(Verdict(cond, FAILS, "isolation", {**ev, "not_isolated_at": iso}))
        elif len({key(r) for r in records}) == 1:
            out.append(Verdict(cond, HOLDS, clause + " constant", ev))
        else:
            out.append(Verdict(cond, FAILS, clause + " not constant", ev))
    return out[0], out[1]


def semicontinuity_check(records: Sequence[InvariantRecord]) -> dict:
    """``mu_i(X_y) + mu_i(Z_y)`` and ``e(M_y)`` may only drop away from 0."""
    base = next((r for r in records if r.at.is_origin), None)
    violations = []
    if base is None:
        return {"ok": False, "violations": ["no record at y = 0"]}
    for r in records:
        if r is base:
            continue
        if r.mu_X is not None and base.mu_X is not None:
            for i, (a, b, c, d) in enumerate(zip(r.mu_X, r.mu_Z, base.mu_X, base.mu_Z)):
                if a + b > c + d:
                    violations.append(f"FAULT: mu_{i} sum {a + b} at {r.at.label()} exceeds {c + d} at 0")
        if r.e_M is not None and base.e_M is not None and r.e_M > base.e_M:
            violations.append(f"FAULT: e(M) {r.e_M} at {r.at.label()} exceeds {base.e_M} at 0")
    return {"ok": not violations, "violations": violations}


# ---------------------------------------------------------------------------
# supports


def _locally_radical(h: Poly, gens: list[Poly], ring: Ring, max_power: int = 6) -> str:
    """Does ``h`` vanish on ``V(gens)`` near 0?

    "yes" when ``h`` is in the radical globally, or some power ``h^s`` lies in
    the ideal of the local ring; "no" otherwise (no power up to ``max_power``).
    """
    I = ideal(gens, ring)
    if radical_membership(h, I):
        return "yes"
    sb = standard_basis(I, LOCAL)
    p = h
    for _ in range(max_power):
        if sb.contains(ModuleVector([p])):
            return "yes"
        p = p * h
    return "no"


def support_equality(g: FamilyGerm, max_power: int = 6) -> dict:
    """Compare ``Sigma_Y(f)``, ``Sigma(f)`` and ``Y`` as sets near 0."""
    polys = list(g.equations) + [g.function]
    sy = list(g.equations) + maximal_minors(jacobian_rows(polys, g.xvars))
    s = list(g.equations) + maximal_minors(jacobian_rows(polys, g.xvars + g.params))
    ring = g.ring
    in_y = {x: _locally_radical(ring.var(x), sy, ring, max_power) for x in g.xvars}
    sigma_y_in_y = all(v == "yes" for v in in_y.values())
    zero_x = {x: 0 for x in g.xvars}
    y_in_sigma_y = all(q.substitute(zero_x).is_zero() for q in sy)
    # Sigma(f) is inside Sigma_Y(f) since its ideal is larger; test the converse
    back = all(_locally_radical(q, sy, ring, max_power) == "yes" for q in s if not q.is_zero())
    return {
        "sigma_Y_in_Y": sigma_y_in_y,
        "Y_in_sigma_Y": y_in_sigma_y,
        "sigma_Y_equals_Y": sigma_y_in_y and y_in_sigma_y,
        "x_vanishing_on_sigma_Y": in_y,
        "sigma_equals_sigma_Y": back,
        "method": f"global Rabinowitsch test, then local powers up to {max_power}",
    }
