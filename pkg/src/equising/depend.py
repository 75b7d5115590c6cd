"""Integral dependence on a module via the curve criterion.

Everything happens over the truncated power-series ring ``K[[u]] / u^(N+1)``.
Truncated series are plain lists of ``N + 1`` field elements.  Dependence is
only ever refuted (a path whose pullback of ``g`` is not in the pullback of
the module) or confirmed up to a stated order on the sampled paths.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InvalidPath
from .poly import Poly, Ring
from .sb import ModuleVector, Submodule

DEFAULT_TRUNCATION = 24
DEFAULT_MARGIN = 4
DEFAULT_BUDGET = 3


# ---------------------------------------------------------------------------
# truncated series


def s_zero(F, N):
    return [F.zero] * (N + 1)


def s_val(a) -> int | None:
    for i, c in enumerate(a):
        if c:
            return i
    return None


def s_add(F, a, b):
    return [F.add(x, y) for x, y in zip(a, b)]


def s_sub(F, a, b):
    return [F.sub(x, y) for x, y in zip(a, b)]


def s_scale(F, a, c):
    return [F.mul(x, c) for x in a]


def s_mul(F, a, b):
    N = len(a) - 1
    out = [F.zero] * (N + 1)
    va, vb = s_val(a), s_val(b)
    if va is None or vb is None:
        return out
    for i in range(va, N + 1 - vb):
        ai = a[i]
        if not ai:
            continue
        for j in range(vb, N + 1 - i):
            if b[j]:
                out[i + j] = F.add(out[i + j], F.mul(ai, b[j]))
    return out


def s_inv(F, a, prec: int):
    """Inverse of a unit series, to ``prec`` coefficients."""
    inv0 = F.inv(a[0])
    out = [F.zero] * prec
    out[0] = inv0
    for n in range(1, prec):
        acc = F.zero
        for i in range(1, min(n, len(a) - 1) + 1):
            if a[i]:
                acc = F.add(acc, F.mul(a[i], out[n - i]))
        out[n] = F.neg(F.mul(acc, inv0))
    return out


def _pad(F, a, N):
    return (list(a) + [F.zero] * (N + 1))[: N + 1]


# ---------------------------------------------------------------------------
# paths


@dataclass
class TestPath:
    """A map germ ``u -> (phi_1(u), ..., phi_n(u))`` with ``phi(0) = 0``."""

    __test__ = False  # not a pytest class

    components: tuple
    N: int
    label: str = ""
    constant: bool = False

    def __post_init__(self):
        self.components = tuple(tuple(c) for c in self.components)
        for c in self.components:
            if len(c) != self.N + 1:
                raise InvalidPath(f"path component of length {len(c)}, expected {self.N + 1}")
            if c[0]:
                raise InvalidPath("path must pass through the origin")
        if not self.constant and all(s_val(c) is None for c in self.components):
            raise InvalidPath("path is identically zero")

    @classmethod
    def monomial(cls, ring: Ring, spec: Sequence, N: int = DEFAULT_TRUNCATION, label: str = "") -> "TestPath":
        """``spec[i] = (coefficient, exponent)`` or ``None`` for a zero coordinate."""
        F = ring.field
        comps = []
        for s in spec:
            c = [F.zero] * (N + 1)
            if s is not None:
                coeff, e = s
                if e <= N:
                    c[e] = F.convert(coeff)
            comps.append(c)
        if not label:
            label = "(" + ", ".join("0" if s is None else _mono_label(s) for s in spec) + ")"
        return cls(comps, N, label)

    def retruncate(self, N: int, field_) -> "TestPath":
        return TestPath([_pad(field_, c, N) for c in self.components], N, self.label, self.constant)


def _mono_label(s) -> str:
    c, e = s
    c = Fraction(c)
    head = "" if c == 1 else "-" if c == -1 else f"{c}*"
    return f"{head}u" + (f"^{e}" if e != 1 else "")


def pullback(v: Poly | ModuleVector, path: TestPath) -> list:
    """``phi^* v`` truncated at ``u^(N+1)``: one series per component."""
    comps = [v] if isinstance(v, Poly) else list(v)
    ring = comps[0].ring
    if ring.nvars != len(path.components):
        raise InvalidPath(f"path has {len(path.components)} coordinates, ring has {ring.nvars} variables")
    F, N = ring.field, path.N
    powers = [{1: list(c)} for c in path.components]

    def power(i, k):
        cache = powers[i]
        if k not in cache:
            h = k // 2
            cache[k] = s_mul(F, power(i, h), power(i, k - h))
        return cache[k]

    out = []
    for p in comps:
        acc = s_zero(F, N)
        for e, c in p.terms.items():
            if not any(e):
                acc[0] = F.add(acc[0], c)
                continue
            # skip terms whose order already exceeds the truncation
            low = sum(k * (s_val(path.components[i]) if s_val(path.components[i]) is not None else N + 1)
                      for i, k in enumerate(e) if k)
            if low > N:
                continue
            t = None
            for i, k in enumerate(e):
                if k:
                    t = power(i, k) if t is None else s_mul(F, t, power(i, k))
            acc = s_add(F, acc, s_scale(F, t, c))
        out.append(acc)
    return out


def verify_path(path: TestPath, equations: Sequence[Poly]) -> None:
    for eq in equations:
        if any(s_val(s) is not None for s in pullback(eq, path)):
            raise InvalidPath(f"path {path.label} does not lie on V({eq}) to order {path.N}")


# ---------------------------------------------------------------------------
# membership over K[[u]]


@dataclass
class Membership:
    status: str  # MEMBER_TO_ORDER | WITNESS | INCONCLUSIVE
    order: int | None = None
    gap: int | None = None
    component: int | None = None
    note: str = ""


def membership_over_series(g: Sequence, gens: Sequence[Sequence], N: int, field_,
                           margin: int = DEFAULT_MARGIN) -> Membership:
    """Is the vector ``g`` in the ``K[[u]]``-span of ``gens`` (all mod ``u^(N+1)``)?

    Column reduction with the pivot at the globally minimal valuation; since
    every other entry then has valuation at least the pivot's, no precision is
    lost.  A component of ``g`` whose valuation is below the pivot's can never
    be cleared: that is a witness with gap ``pivot - val``.
    """
    F = field_
    prec = N + 1
    gv = [list(c) for c in g]
    cols = [[list(c) for c in v] for v in gens]
    rank = len(gv)
    used = set()
    while True:
        best = None
        for ci, col in enumerate(cols):
            for c in range(rank):
                if c in used:
                    continue
                v = s_val(col[c])
                if v is not None and (best is None or v < best[0]):
                    best = (v, ci, c)
        if best is None:
            break
        v, ci, c = best
        piv = cols.pop(ci)
        used.add(c)
        unit_inv = s_inv(F, piv[c][v:], prec - v)

        def quotient(entry):
            q = s_mul(F, _pad(F, entry[v:], prec - 1 - v), unit_inv)
            return _pad(F, q, N)

        vg = s_val(gv[c])
        if vg is not None and vg < v:
            return Membership("WITNESS", gap=v - vg, component=c)
        if vg is not None:
            q = quotient(gv[c])
            gv = [s_sub(F, a, s_mul(F, q, b)) for a, b in zip(gv, piv)]
        for k, col in enumerate(cols):
            if s_val(col[c]) is not None:
                q = quotient(col[c])
                cols[k] = [s_sub(F, a, s_mul(F, q, b)) for a, b in zip(col, piv)]
    for c in range(rank):
        vg = s_val(gv[c])
        if vg is not None:
            return Membership("INCONCLUSIVE", component=c,
                              note=f"generators vanish to order {N} in component {c}, g has order {vg}")
    order = N - margin
    if order <= 0:
        return Membership("INCONCLUSIVE", note="truncation does not exceed the safety margin")
    return Membership("MEMBER_TO_ORDER", order=order)


# ---------------------------------------------------------------------------
# curve criterion


@dataclass
class DependenceReport:
    verdict: str  # DEPENDENT_TO_ORDER | WITNESS | INCONCLUSIVE
    order: int | None = None
    witness: dict | None = None
    per_path: list = field(default_factory=list)
    notices: list = field(default_factory=list)


def curve_criterion(g: ModuleVector | Poly, m: Submodule, paths: Sequence[TestPath],
                    margin: int = DEFAULT_MARGIN) -> DependenceReport:
    """Refute integral dependence of ``g`` on ``m`` along test curves."""
    if isinstance(g, Poly):
        g = ModuleVector([g])
    F = m.ring.field
    report = DependenceReport("INCONCLUSIVE")
    orders = []
    for path in paths:
        verify_path(path, m.equations)
        pg = pullback(g, path)
        pm = [pullback(v, path) for v in m.generators]
        res = membership_over_series(pg, pm, path.N, F, margin)
        report.per_path.append({
            "path": path.label,
            "status": res.status,
            "order": res.order,
            "gap": res.gap,
            "g_valuations": [s_val(s) for s in pg],
        })
        if res.status == "WITNESS" and report.witness is None:
            report.witness = {"path": path.label, "gap": res.gap, "component": res.component}
        elif res.status == "MEMBER_TO_ORDER":
            orders.append(res.order)
    if report.witness is not None:
        report.verdict = "WITNESS"
    elif orders:
        report.verdict = "DEPENDENT_TO_ORDER"
        report.order = min(orders)
    if not paths:
        report.notices.append("no test paths supplied")
    return report


# ---------------------------------------------------------------------------
# path sampling


def _hensel_lift(F, path_comps, eq: Poly, N: int, max_iter: int = 12):
    """Newton-lift a single equation to vanish mod ``u^(N+1)`` by correcting one
    coordinate; ``None`` when no coordinate admits a lift."""
    ring = eq.ring
    for j in range(ring.nvars):
        comps = [list(c) for c in path_comps]
        dj = eq.derivative(j)
        ok = False
        for _ in range(max_iter):
            tp = TestPath(comps, N, constant=True)
            val_f = s_val(pullback(eq, tp)[0])
            if val_f is None:
                ok = True
                break
            d = pullback(dj, tp)[0]
            vd = s_val(d)
            if vd is None or val_f <= 2 * vd:
                break
            fser = pullback(eq, tp)[0]
            q = s_mul(F, _pad(F, fser[vd:], N), s_inv(F, d[vd:], N + 1))
            comps[j] = s_sub(F, comps[j], q)
        if ok:
            return comps
    return None


def default_paths(ring: Ring, equations: Sequence[Poly] = (), budget: int = DEFAULT_BUDGET,
                  seed: int = 0, N: int = DEFAULT_TRUNCATION, height: int = 5):
    """Monomial test paths with exponents ``<= budget``.

    Each exponent pattern is used with unit coefficients and once with random
    small rational coefficients.  With equations, sign patterns are tried and
    single-equation germs are Newton-lifted; paths that still miss ``X`` are
    dropped.  Returns ``(paths, notices)``.
    """
    notices = []
    if budget <= 0:
        return [], ["path budget 0: no paths"]
    rng = random.Random(seed)
    F = ring.field
    n = ring.nvars
    paths, seen = [], set()
    dropped = 0
    for exps in itertools.product(range(budget + 1), repeat=n):
        if not any(exps):
            continue
        coeff_sets = [tuple(1 for _ in range(n))]
        coeff_sets.append(tuple(Fraction(rng.choice([-1, 1]) * rng.randint(1, height), rng.randint(1, height))
                                for _ in range(n)))
        if equations:
            coeff_sets += list(itertools.product((1, -1), repeat=n))[1:]
        for coeffs in coeff_sets:
            spec = [None if e == 0 else (c, e) for c, e in zip(coeffs, exps)]
            path = TestPath.monomial(ring, spec, N)
            if path.components in seen:
                continue
            try:
                verify_path(path, equations)
            except InvalidPath:
                if len(equations) == 1:
                    lifted = _hensel_lift(F, path.components, equations[0], N)
                    if lifted is not None:
                        try:
                            path = TestPath(lifted, N, path.label + " lifted")
                            verify_path(path, equations)
                        except InvalidPath:
                            dropped += 1
                            continue
                    else:
                        dropped += 1
                        continue
                else:
                    dropped += 1
                    continue
            if path.components in seen:
                continue
            seen.add(path.components)
            paths.append(path)
    if dropped:
        notices.append(f"{dropped} candidate paths not on X to order {N} were skipped")
    return paths, notices
