"""ICIS germs with a function: Jacobian modules, Milnor numbers and sections.

A family is given by equations ``f_1..f_k`` and a function ``f`` in the
variables ``x_1..x_a`` (the germ directions) and ``y_1..y_b`` (the parameter
space ``Y = {x = 0}``).  Fibres are :class:`IcisGerm` objects over the
x-variables only.

Randomised operations take an explicit seed.  Generic choices are certified
by requiring two independent draws to agree.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import GenericityFailure, NotICIS, NotIsolated, PreconditionError
from .poly import Poly, Ring
from .sb import INFINITE, ModuleVector, Submodule, colength, ideal

DEFAULT_HEIGHT = 100
DEFAULT_RETRIES = 6


@dataclass
class FamilyGerm:
    """The data ``(X, Y, f)``: equations and function in ``x`` and ``y``."""

    xvars: tuple
    params: tuple
    equations: list
    function: Poly
    ring: Ring = None

    def __post_init__(self):
        self.xvars = tuple(self.xvars)
        self.params = tuple(self.params)
        if self.ring is None:
            self.ring = self.function.ring
        if self.ring.names != self.xvars + self.params:
            raise PreconditionError("ring variables must be the x-variables followed by the parameters")
        self.equations = list(self.equations)
        if self.k >= self.a:
            raise PreconditionError(f"need k < a (got k={self.k}, a={self.a})")
        zero_x = {v: 0 for v in self.xvars}
        for name, p in [("equation", e) for e in self.equations] + [("function", self.function)]:
            if not p.substitute(zero_x).is_zero():
                raise PreconditionError(f"{name} {p} does not vanish on Y = {{x = 0}}")

    @property
    def a(self) -> int:
        return len(self.xvars)

    @property
    def b(self) -> int:
        return len(self.params)

    @property
    def k(self) -> int:
        return len(self.equations)


@dataclass
class IcisGerm:
    """A fibre: equations and optional function in the x-variables only."""

    ring: Ring
    equations: list = field(default_factory=list)
    function: Poly | None = None

    @property
    def a(self) -> int:
        return self.ring.nvars

    @property
    def k(self) -> int:
        return len(self.equations)

    @property
    def d(self) -> int:
        return self.a - self.k

    def with_function_as_equation(self) -> "IcisGerm":
        return IcisGerm(self.ring, self.equations + [self.function])


@dataclass
class JacobianModule:
    """Matrix ``[df_i/dx_j ; df/dx_j]``, its columns, and the parameter columns."""

    matrix: list
    columns: list
    extra_columns: list
    equations: list
    ring: Ring

    @property
    def rank(self) -> int:
        return len(self.matrix)

    def module(self) -> Submodule:
        return Submodule(list(self.columns), self.rank, self.ring, list(self.equations))


@dataclass
class MinorsIdeal:
    generators: list
    equations: list
    ring: Ring

    def as_ideal(self) -> Submodule:
        return ideal(self.generators, self.ring, self.equations)


# ---------------------------------------------------------------------------
# matrices


def determinant(rows: Sequence[Sequence[Poly]]) -> Poly:
    """Laplace expansion along the first row (matrices here are tiny)."""
    n = len(rows)
    if n == 1:
        return rows[0][0]
    if n == 2:
        return rows[0][0] * rows[1][1] - rows[0][1] * rows[1][0]
    total = None
    for j, entry in enumerate(rows[0]):
        if entry.is_zero():
            continue
        sub = [r[:j] + r[j + 1 :] for r in rows[1:]]
        term = entry * determinant(sub)
        if j % 2:
            term = -term
        total = term if total is None else total + term
    return total if total is not None else rows[0][0].ring.zero


def maximal_minors(rows: Sequence[Sequence[Poly]]) -> list[Poly]:
    """All nonzero maximal minors of a ``p x q`` matrix with ``p <= q``."""
    p, q = len(rows), len(rows[0])
    if p > q:
        raise PreconditionError(f"{p}x{q} matrix has no maximal minors of size {p}")
    out = []
    for cols in itertools.combinations(range(q), p):
        m = determinant([[r[c] for c in cols] for r in rows])
        if not m.is_zero():
            out.append(m)
    return out


def jacobian_rows(polys: Sequence[Poly], variables: Sequence) -> list[list[Poly]]:
    return [[p.derivative(v) for v in variables] for p in polys]


def jacobian_module(g: FamilyGerm | IcisGerm) -> JacobianModule:
    if isinstance(g, FamilyGerm):
        xs, ys, ring = g.xvars, g.params, g.ring
    else:
        xs, ys, ring = g.ring.names, (), g.ring
        if g.function is None:
            raise PreconditionError("the Jacobian module needs a function")
    polys = list(g.equations) + [g.function]
    matrix = jacobian_rows(polys, xs)
    cols = [ModuleVector([row[j] for row in matrix], ring) for j in range(len(xs))]
    extra = [ModuleVector([p.derivative(y) for p in polys], ring) for y in ys]
    return JacobianModule(matrix, cols, extra, list(g.equations), ring)


def minors_ideal(jm: JacobianModule) -> MinorsIdeal:
    return MinorsIdeal(maximal_minors(jm.matrix), list(jm.equations), jm.ring)


# ---------------------------------------------------------------------------
# randomness


def random_rational(rng: random.Random, height: int = DEFAULT_HEIGHT, nonzero: bool = False) -> Fraction:
    while True:
        v = Fraction(rng.randint(-height, height), rng.randint(1, height))
        if v or not nonzero:
            return v


def random_linear_form(ring: Ring, rng: random.Random, height: int = DEFAULT_HEIGHT) -> Poly:
    return ring.linear_form([random_rational(rng, height) for _ in range(ring.nvars)])


def random_invertible(n: int, rng: random.Random, height: int = DEFAULT_HEIGHT) -> list[list[Fraction]]:
    """A random rational ``n x n`` matrix with nonzero determinant."""
    while True:
        m = [[random_rational(rng, height) for _ in range(n)] for _ in range(n)]
        if _fraction_det(m):
            return m


def _fraction_det(m) -> Fraction:
    m = [list(map(Fraction, r)) for r in m]
    n, det = len(m), Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c]), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            t = m[r][c] / m[c][c]
            if t:
                m[r] = [a - t * b for a, b in zip(m[r], m[c])]
    return det


def _local_colength(polys: Sequence[Poly], ring: Ring):
    polys = [p for p in polys if not p.is_zero()]
    if not polys:
        return INFINITE if ring.nvars else 1
    return colength(ideal(polys, ring))


# ---------------------------------------------------------------------------
# Milnor numbers


def _lg_recursion(eqs: Sequence[Poly], ring: Ring) -> int | None:
    """Le-Greuel recursion on ``eqs`` as given; ``None`` if some step is not isolated."""
    mu = 0
    for j in range(1, len(eqs) + 1):
        c = _local_colength(list(eqs[: j - 1]) + maximal_minors(jacobian_rows(eqs[:j], ring.names)), ring)
        if c == INFINITE or c - mu < 0:
            return None
        mu = c - mu
    return mu


def milnor_icis(g: IcisGerm, seed: int = 0, retries: int = DEFAULT_RETRIES, height: int = DEFAULT_HEIGHT) -> int:
    """Milnor number of the complete intersection ``V(equations)``.

    The equations are first recombined by a random invertible constant matrix
    so that every intermediate complete intersection is isolated.
    """
    k = g.k
    if k == 0:
        return 0
    rng = random.Random(seed)
    for _ in range(retries):
        C = random_invertible(k, rng, height)
        gs = []
        for row in C:
            p = g.ring.zero
            for c, f in zip(row, g.equations):
                if c:
                    p = p + f * c
            gs.append(p)
        mu = _lg_recursion(gs, g.ring)
        if mu is not None:
            return mu
    raise NotICIS(f"no isolated recombination of {[str(e) for e in g.equations]} after {retries} tries")


def milnor_pair(g: IcisGerm, seed: int = 0, retries: int = DEFAULT_RETRIES) -> tuple[int, int]:
    """``(mu(X), mu(Z))`` with ``Z = X ∩ f^{-1}(0)``.

    ``mu(X) + mu(Z)`` is the colength of the equations plus the maximal minors
    of the full Jacobian matrix.  For 0-dimensional ``Z`` this gives
    ``dim O_Z - 1``.
    """
    if g.function is None:
        raise PreconditionError("milnor_pair needs a function")
    total = _local_colength(list(g.equations) + minors_ideal(jacobian_module(g)).generators, g.ring)
    if total == INFINITE:
        raise NotIsolated("the critical locus of f on X is not isolated at 0")
    mu_x = milnor_icis(g, seed, retries)
    mu_z = total - mu_x
    if mu_z < 0:
        raise NotICIS(f"negative mu(Z) = {mu_z}")
    return mu_x, mu_z


def _multiplicity_once(eqs: Sequence[Poly], ring: Ring, d: int, rng: random.Random, height: int):
    return _local_colength(list(eqs) + [random_linear_form(ring, rng, height) for _ in range(d)], ring)


def _agreeing(draw, retries: int, what: str):
    """Run ``draw()`` until two consecutive finite values agree."""
    prev = None
    for _ in range(retries):
        v = draw()
        if v is not None and v == prev:
            return v
        prev = v
    raise GenericityFailure(f"{what}: no two agreeing random draws in {retries} tries")


def _mult(eqs, ring, d, seed, retries, height) -> int:
    rng = random.Random(seed)

    def draw():
        c = _multiplicity_once(eqs, ring, d, rng, height)
        return None if c == INFINITE else c

    return _agreeing(draw, retries, "multiplicity")


def multiplicity_at_origin(g: IcisGerm, seed: int = 0, retries: int = DEFAULT_RETRIES,
                           height: int = DEFAULT_HEIGHT) -> int:
    """Multiplicity of ``V(equations)`` at 0 via ``d`` generic linear forms."""
    return _mult(g.equations, g.ring, g.d, seed, retries, height)


def slice_germ(g: IcisGerm, B, i: int) -> IcisGerm:
    """Substitute ``x = B x'`` and set the last ``i`` coordinates of ``x'`` to 0."""
    a = g.a
    S = Ring(g.ring.names[: a - i], g.ring.field)
    images = {}
    for j, name in enumerate(g.ring.names):
        images[name] = S.linear_form([B[j][l] for l in range(a - i)])
    sub = [e.substitute(images, S) for e in g.equations]
    fn = g.function.substitute(images, S) if g.function is not None else None
    return IcisGerm(S, sub, fn)


def sectional_milnor(g: IcisGerm, i: int, seed: int = 0, retries: int = DEFAULT_RETRIES,
                     height: int = DEFAULT_HEIGHT) -> tuple[int, int]:
    """``(mu_i(X), mu_i(Z))``: Milnor numbers of sections by a general
    codimension-``i`` linear space.

    Top indices follow the conventions ``mu_d(X) = m(X) - 1``,
    ``mu_{d-1}(Z) = m(Z) - 1`` and ``mu_d(Z) = 1`` with ``d = a - k``.
    """
    d = g.d
    if not 0 <= i <= d:
        raise PreconditionError(f"section codimension {i} outside 0..{d}")
    if g.function is None:
        raise PreconditionError("sectional Milnor numbers need a function")
    if i == 0:
        return milnor_pair(g, seed, retries)
    rng = random.Random(seed)
    if i == d:
        mx = multiplicity_at_origin(g, rng.randrange(2**32), retries, height)
        return mx - 1, 1
    if i == d - 1:
        mz = multiplicity_at_origin(g.with_function_as_equation(), rng.randrange(2**32), retries, height)
        mu_z_top = mz - 1
    else:
        mu_z_top = None
    failures = []

    def draw():
        B = random_invertible(g.a, rng, height)
        try:
            mx, mz = milnor_pair(slice_germ(g, B, i), rng.randrange(2**32), retries)
        except (NotIsolated, NotICIS) as exc:
            failures.append(exc)
            return None
        return mx, (mu_z_top if mu_z_top is not None else mz)

    try:
        return _agreeing(draw, retries, f"section of codimension {i}")
    except GenericityFailure:
        if len(failures) == retries:
            raise NotIsolated(f"every codimension-{i} slice was non-isolated: {failures[-1]}") from None
        raise


def sectional_sequence(g: IcisGerm, seed: int = 0, retries: int = DEFAULT_RETRIES) -> tuple[list, list]:
    """``([mu_0(X)..mu_d(X)], [mu_0(Z)..mu_d(Z)])``."""
    rng = random.Random(seed)
    xs, zs = [], []
    for i in range(g.d + 1):
        mx, mz = sectional_milnor(g, i, rng.randrange(2**32), retries)
        xs.append(mx)
        zs.append(mz)
    return xs, zs
