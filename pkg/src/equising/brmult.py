"""Buchsbaum-Rim multiplicities, polar multiplicities and the polar formula.

Two routes to ``e(M)``:

* Hilbert route (ground truth): colengths ``c_n`` of the degree-``n`` part of
  the Rees algebra of ``M`` inside ``Sym_n(E)``; ``e`` is the eventually
  constant ``D``-th finite difference, ``D = d + r - 1``.
* Minors route: when ``M`` has exactly ``D`` generators, ``e(M)`` is the
  colength of its maximal minors.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from math import comb
from typing import Sequence

from .errors import NoStabilization, NotIsolated, PreconditionError
from .fields import DEFAULT_PRIME, QQ, SECOND_PRIME, GF, RationalField
from .germ import (
    DEFAULT_HEIGHT,
    DEFAULT_RETRIES,
    IcisGerm,
    JacobianModule,
    _agreeing,
    _local_colength,
    jacobian_rows,
    maximal_minors,
    multiplicity_at_origin,
    random_linear_form,
    sectional_sequence,
)
from .poly import LOCAL, Poly, Ring
from .sb import INFINITE, ModuleVector, Submodule, colength, colength_from_basis, standard_basis

DEFAULT_NMAX = 12


@dataclass(frozen=True)
class ModuleContext:
    d: int
    r: int
    equations: tuple = ()

    def __post_init__(self):
        if self.d < 0 or self.r < 1:
            raise PreconditionError(f"bad module context d={self.d}, r={self.r}")

    @property
    def D(self) -> int:
        return self.d + self.r - 1

    @classmethod
    def for_germ(cls, g: IcisGerm) -> "ModuleContext":
        return cls(g.d, g.k + 1, tuple(g.equations))


@dataclass
class GradedColengthSequence:
    values: list = field(default_factory=list)
    differences: list = field(default_factory=list)
    stable_from: int | None = None
    multiplicity: int | None = None


# ---------------------------------------------------------------------------
# Rees algebra pieces


def _sym_basis(r: int, n: int) -> dict:
    """Index of each degree-``n`` monomial in ``e_1..e_r``."""
    out = {}
    for c in itertools.combinations_with_replacement(range(r), n):
        e = [0] * r
        for i in c:
            e[i] += 1
        out[tuple(e)] = len(out)
    return out


def _sym_times(elem: dict, vec: ModuleVector) -> dict:
    """Product in the symmetric algebra: ``{e-monomial: poly} * sum v_c e_c``."""
    out: dict = {}
    for mono, p in elem.items():
        for c, vc in enumerate(vec):
            if vc.is_zero():
                continue
            m2 = mono[:c] + (mono[c] + 1,) + mono[c + 1 :]
            q = p * vc
            if m2 in out:
                s = out[m2] + q
                if s.is_zero():
                    del out[m2]
                else:
                    out[m2] = s
            else:
                out[m2] = q
    return out


def _freeze(elem: dict):
    return tuple(sorted((m, tuple(sorted(p.terms.items()))) for m, p in elem.items()))


def rees_generators(m: Submodule, n: int, previous: list | None = None) -> list[dict]:
    """Generators of ``O[M]_n``: all ``n``-fold products of generators of ``M``.

    ``previous`` (the degree ``n-1`` list) is reused when given.  Exact
    duplicates are removed.
    """
    r = m.rank
    if previous is None:
        prev = [{(0,) * r: m.ring.one}]
        start = 0
    else:
        prev, start = previous, n - 1
    for _ in range(start, n):
        seen, nxt = set(), []
        for a in prev:
            for g in m.generators:
                b = _sym_times(a, g)
                if not b:
                    continue
                key = _freeze(b)
                if key not in seen:
                    seen.add(key)
                    nxt.append(b)
        prev = nxt
    return prev


def _as_submodule(elems: list[dict], m: Submodule, n: int) -> Submodule:
    basis = _sym_basis(m.rank, n)
    rank = len(basis)
    zero = m.ring.zero
    vecs = []
    for el in elems:
        comps = [zero] * rank
        for mono, p in el.items():
            comps[basis[mono]] = p
        vecs.append(ModuleVector(comps, m.ring))
    return Submodule(vecs, rank, m.ring, list(m.equations))


def graded_colength(m: Submodule, ctx: ModuleContext | None, n: int, _gens: list | None = None):
    """``dim O[E]_n / O[M]_n`` with the ring equations folded in."""
    gens = _gens if _gens is not None else rees_generators(m, n)
    return colength(_as_submodule(gens, m, n))


def _graded_piece(m: Submodule, n: int, gens: list, bound: int | None):
    """Colength of the degree ``n`` piece and its corner degree.

    ``bound`` must satisfy ``m^bound E_n`` inside ``O[M]_n``: if
    ``m^a E_(n-1)`` and ``m^b E_1`` lie in the pieces of degree ``n-1`` and 1,
    then ``m^(a+b) E_n`` lies in their product.  Working modulo that power from
    the start keeps tails (and rational coefficients) short.
    """
    sb = standard_basis(_as_submodule(gens, m, n), LOCAL, degree_bound=bound)
    return colength_from_basis(sb), sb.hc_degree


def _differences(values: list, D: int) -> list:
    d = list(values)
    for _ in range(D):
        d = [b - a for a, b in zip(d, d[1:])]
    return d


def _hilbert_once(m: Submodule, ctx: ModuleContext, nmax: int, repeats: int = 3) -> GradedColengthSequence:
    D = ctx.D
    seq = GradedColengthSequence()
    gens = None
    hc1 = hc = None
    for n in range(1, nmax + 1):
        gens = rees_generators(m, n, gens)
        c, hc = _graded_piece(m, n, gens, None if hc is None or hc1 is None else hc + hc1)
        if n == 1:
            hc1 = hc
        if c == INFINITE:
            raise NotIsolated(f"O[M]_{n} has infinite colength in Sym_{n}(E)")
        seq.values.append(c)
        if D == 0:
            # colength itself is the multiplicity
            seq.differences = list(seq.values)
        else:
            seq.differences = _differences(seq.values, D)
        tail = seq.differences[-repeats:]
        if len(tail) == repeats and len(set(tail)) == 1:
            seq.stable_from = n - repeats + 1
            seq.multiplicity = tail[0]
            return seq
    raise NoStabilization(
        f"{D}-th differences not constant for {repeats} steps up to n={nmax}",
        table={"values": seq.values, "differences": seq.differences},
    )


def _reduce_mod_p(m: Submodule, p: int) -> Submodule | None:
    """Image of ``m`` over GF(p); ``None`` if a denominator vanishes mod p."""
    F = GF(p)
    S = m.ring.with_field(F)

    def conv(poly):
        for c in poly.terms.values():
            if QQ.to_fraction(c).denominator % p == 0:
                raise ZeroDivisionError
        return poly.change_ring(S)

    try:
        gens = [ModuleVector([conv(c) for c in g], S) for g in m.generators]
        eqs = [conv(e) for e in m.equations]
    except ZeroDivisionError:
        return None
    return Submodule(gens, m.rank, S, eqs)


def br_multiplicity_hilbert(m: Submodule, ctx: ModuleContext, nmax: int = DEFAULT_NMAX,
                            modular: bool = False, primes: Sequence[int] = (DEFAULT_PRIME, SECOND_PRIME),
                            return_sequence: bool = False):
    """``e(M)`` by the Hilbert route.

    With ``modular=True`` and rational coefficients the sequence is computed
    over each of ``primes`` instead of over QQ and the results must agree
    (disagreement falls back to the exact computation).
    """
    if modular and isinstance(m.ring.field, RationalField):
        seqs = []
        for p in primes:
            mp = _reduce_mod_p(m, p)
            if mp is None:
                break
            seqs.append(_hilbert_once(mp, ctx, nmax))
        else:
            if len({s.multiplicity for s in seqs}) == 1:
                return (seqs[0].multiplicity, seqs[0]) if return_sequence else seqs[0].multiplicity
    seq = _hilbert_once(m, ctx, nmax)
    return (seq.multiplicity, seq) if return_sequence else seq.multiplicity


def br_multiplicity_minors(m: Submodule | JacobianModule, ctx: ModuleContext):
    """``e(M)`` as the colength of the maximal minors of a ``D``-generator ``M``."""
    if isinstance(m, JacobianModule):
        m = m.module()
    if len(m.generators) != ctx.D:
        raise PreconditionError(
            f"minors route needs exactly d + r - 1 = {ctx.D} generators, got {len(m.generators)}"
        )
    rows = [[g[c] for g in m.generators] for c in range(m.rank)]
    minors = maximal_minors(rows)
    return _local_colength(list(m.equations) + minors, m.ring)


def ideal_times_module(ideal_gens: Sequence[Poly], m: Submodule) -> Submodule:
    seen, gens = set(), []
    for p in ideal_gens:
        for g in m.generators:
            v = g * p
            if not v.is_zero() and v not in seen:
                seen.add(v)
                gens.append(v)
    return Submodule(gens, m.rank, m.ring, list(m.equations))


def maximal_ideal_times(m: Submodule) -> Submodule:
    return ideal_times_module(list(m.ring.gens), m)


def e_mM_direct(jm: JacobianModule, ctx: ModuleContext, nmax: int = DEFAULT_NMAX, modular: bool = False):
    """``e(m M)`` by the Hilbert route on the product module."""
    return br_multiplicity_hilbert(maximal_ideal_times(jm.module()), ctx, nmax, modular=modular)


# ---------------------------------------------------------------------------
# polar varieties


def polar_ideal(g: IcisGerm, forms: Sequence[Poly]) -> list[Poly]:
    """Equations plus maximal minors of ``Jac(f_1..f_k, f, l_1..l_i)``."""
    rows = jacobian_rows(list(g.equations) + [g.function] + list(forms), g.ring.names)
    return list(g.equations) + maximal_minors(rows)


def polar_multiplicity(g: IcisGerm, i: int, seed: int = 0, retries: int = DEFAULT_RETRIES,
                       height: int = DEFAULT_HEIGHT) -> int:
    """Multiplicity of the polar variety of dimension ``i`` at 0, cut by its
    own pole ``P_i``."""
    d = g.d
    if not 0 <= i <= d:
        raise PreconditionError(f"polar index {i} outside 0..{d}")
    if i == d:
        return multiplicity_at_origin(g, seed, retries, height)
    rng = random.Random(seed)

    def draw():
        forms = [random_linear_form(g.ring, rng, height) for _ in range(i)]
        c = _local_colength(polar_ideal(g, forms) + forms, g.ring)
        return None if c == INFINITE else c

    return _agreeing(draw, retries, f"polar multiplicity m(P^{i})")


def e_mM_polar_formula(g: IcisGerm, upper: str | int = "a-1", seed: int = 0,
                       sequences: tuple | None = None) -> int:
    """``sum_i C(upper, i) (mu_i(X) + mu_i(Z))`` for ``i = 0..a-k``.

    ``upper`` is ``"a-1"`` or ``"a"`` (or the integer itself).
    """
    if upper == "a-1":
        top = g.a - 1
    elif upper == "a":
        top = g.a
    elif isinstance(upper, int):
        top = upper
    else:
        raise ValueError(f"binomial convention must be 'a-1' or 'a', not {upper!r}")
    xs, zs = sequences if sequences is not None else sectional_sequence(g, seed)
    return sum(comb(top, i) * (x + z) for i, (x, z) in enumerate(zip(xs, zs)))
