"""Standard bases of submodules of free modules.

Local (anti-graded revlex) orders use Mora's normal form with ecart; global
(graded revlex) orders use ordinary division, i.e. Buchberger's algorithm.
Both share one engine.  Quotients by ring equations ``f_1..f_k`` are realised
by adding ``f_i * e_c`` for every component ``c``.

For submodules of finite colength the local engine switches to truncated
arithmetic as soon as the leading module contains every monomial of some
degree ``N`` in every component: then ``m^N E`` lies in the module and all
terms of degree ``>= N`` can be dropped.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from . import kernel
from .errors import ResourceLimitExceeded, RingMismatch
from .poly import GREVLEX, LOCAL, Poly, Ring, TermOrder
from .staircase import count_standard, divides, minimalize
from .staircase import is_zero_dimensional as _monomial_zero_dim

INFINITE = math.inf


@dataclass(frozen=True)
class Limits:
    max_pairs: int = 500_000
    max_basis: int = 50_000
    max_terms: int = 5_000_000
    exponent_bits: int = 14


DEFAULT_LIMITS = Limits()
_limits = DEFAULT_LIMITS


def set_limits(limits: Limits) -> Limits:
    """Install process-wide limits; returns the previous ones."""
    global _limits
    old, _limits = _limits, limits
    return old


def get_limits() -> Limits:
    return _limits


# ---------------------------------------------------------------------------
# module elements


class ModuleVector:
    """Element of a free module ``R^r``: a tuple of polynomials."""

    __slots__ = ("ring", "components")

    def __init__(self, components: Sequence[Poly], ring: Ring | None = None):
        comps = tuple(components)
        if not comps:
            raise ValueError("a module vector needs rank >= 1")
        ring = ring or comps[0].ring
        for c in comps:
            if c.ring != ring:
                raise RingMismatch("components live in different rings")
        self.ring = ring
        self.components = comps

    @classmethod
    def unit(cls, ring: Ring, rank: int, c: int) -> "ModuleVector":
        return cls([ring.one if i == c else ring.zero for i in range(rank)], ring)

    @classmethod
    def zero(cls, ring: Ring, rank: int) -> "ModuleVector":
        return cls([ring.zero] * rank, ring)

    @property
    def rank(self) -> int:
        return len(self.components)

    def __getitem__(self, i):
        return self.components[i]

    def __iter__(self):
        return iter(self.components)

    def __len__(self):
        return len(self.components)

    def is_zero(self) -> bool:
        return not any(self.components)

    def __bool__(self):
        return not self.is_zero()

    def _check(self, other):
        if not isinstance(other, ModuleVector) or other.rank != self.rank:
            raise RingMismatch("rank mismatch")

    def __add__(self, other):
        self._check(other)
        return ModuleVector([a + b for a, b in zip(self, other)], self.ring)

    def __sub__(self, other):
        self._check(other)
        return ModuleVector([a - b for a, b in zip(self, other)], self.ring)

    def __neg__(self):
        return ModuleVector([-a for a in self], self.ring)

    def __mul__(self, c):
        return ModuleVector([a * c for a in self], self.ring)

    __rmul__ = __mul__

    def __eq__(self, other):
        return isinstance(other, ModuleVector) and self.components == other.components

    def __hash__(self):
        return hash(self.components)

    def __repr__(self):
        return "(" + ", ".join(str(c) for c in self) + ")"

    def map(self, fn) -> "ModuleVector":
        comps = [fn(c) for c in self]
        return ModuleVector(comps, comps[0].ring)


@dataclass
class Submodule:
    """Submodule of ``R^rank`` over ``R / (equations)``."""

    generators: list
    rank: int
    ring: Ring
    equations: list = field(default_factory=list)

    def __post_init__(self):
        gens = []
        for g in self.generators:
            if isinstance(g, Poly):
                g = ModuleVector([g])
            if g.rank != self.rank:
                raise RingMismatch(f"generator of rank {g.rank} in a rank-{self.rank} module")
            if g.ring != self.ring:
                raise RingMismatch("generator in a different ring")
            gens.append(g)
        self.generators = gens
        for e in self.equations:
            if e.ring != self.ring:
                raise RingMismatch("ring equation in a different ring")

    def all_generators(self) -> list:
        """Generators together with ``equation * e_c`` for every component."""
        out = list(self.generators)
        for eq in self.equations:
            if eq:
                for c in range(self.rank):
                    out.append(ModuleVector([eq if i == c else self.ring.zero for i in range(self.rank)], self.ring))
        return out


def ideal(polys: Iterable[Poly], ring: Ring | None = None, equations: Iterable[Poly] = ()) -> Submodule:
    polys = list(polys)
    ring = ring or (polys[0].ring if polys else None)
    if ring is None:
        raise ValueError("empty ideal needs an explicit ring")
    return Submodule([ModuleVector([p]) for p in polys], 1, ring, list(equations))


# ---------------------------------------------------------------------------
# term encoding


class Encoder:
    """Integer keys for terms ``x^e * e_c`` under a term order.

    ``key = mono(e) * R + (R - 1 - c)`` where ``mono`` is a linear functional,
    so keys add under monomial multiplication and compare like terms
    (term-over-position, lower component index wins ties).
    """

    def __init__(self, nvars: int, rank: int, order: TermOrder, bits: int = 14):
        self.n = nvars
        self.R = rank
        self.local = order.is_local
        self.bits = bits
        self.B = 1 << bits
        self.mask = self.B - 1
        self.top = 1 << (bits * (nvars + 1))
        prio = order.priority if order.priority is not None else tuple(range(nvars))
        if sorted(prio) != list(range(nvars)):
            raise ValueError("priority must be a permutation of the variables")
        self.shift = [0] * nvars
        for pos, var in enumerate(prio):
            self.shift[var] = bits * (pos + 1)
        sign = -1 if self.local else 1
        self.weights = [sign * self.top - (1 << s) for s in self.shift]
        # packed exponents with a guard bit per field, for divisibility tests
        self.pw = bits + 1
        self.guard = sum(1 << (i * self.pw + bits) for i in range(nvars))
        self._cache: dict = {}

    def mono(self, exps) -> int:
        return sum(w * e for w, e in zip(self.weights, exps) if e)

    def term(self, exps, comp: int) -> int:
        return self.mono(exps) * self.R + (self.R - 1 - comp)

    def pack(self, exps) -> int:
        pw = self.pw
        return sum(e << (i * pw) for i, e in enumerate(exps) if e)

    def decode(self, key: int):
        """``(exps, comp, packed exps)`` of a term key."""
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        q, r = divmod(key, self.R)
        comp = self.R - 1 - r
        if self.local:
            s = (-q) & (self.top - 1)
        else:
            deg = -((-q) // self.top)
            s = deg * self.top - q
        exps = tuple((s >> sh) & self.mask for sh in self.shift)
        if len(self._cache) > 1_000_000:
            self._cache.clear()
        self._cache[key] = out = (exps, comp, self.pack(exps))
        return out

    def degree(self, key: int) -> int:
        q = key // self.R
        if self.local:
            return (-q) >> (self.bits * (self.n + 1))
        return -((-q) // self.top)

    def cut_for_degree(self, N: int) -> int:
        """Smallest key of degree < N (local order only)."""
        return (1 - N * self.top) * self.R

    def encode(self, vec: ModuleVector, field) -> dict:
        out = {}
        for c, comp in enumerate(vec.components):
            for e, v in comp.terms.items():
                out[self.term(e, c)] = v
        return out

    def decode_vector(self, d: dict, ring: Ring) -> ModuleVector:
        comps: list[dict] = [{} for _ in range(self.R)]
        for k, v in d.items():
            e, c, _ = self.decode(k)
            comps[c][e] = v
        return ModuleVector([Poly(ring, t) for t in comps], ring)


class _Elem:
    __slots__ = ("vec", "lead", "exps", "comp", "ecart", "pk", "alive", "idx")

    def __repr__(self):
        return f"_Elem(lead={self.exps}@{self.comp}, ecart={self.ecart}, n={len(self.vec)})"


# ---------------------------------------------------------------------------
# the engine


class _Engine:
    def __init__(self, ring: Ring, rank: int, order: TermOrder, limits: Limits | None = None,
                 highest_corner: bool = True, degree_bound: int | None = None):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.limits = limits or _limits
        self.enc = Encoder(ring.nvars, rank, order, self.limits.exponent_bits)
        self.field = ring.field
        self.p = ring.field.p
        self.local = order.is_local
        self.use_hc = highest_corner and self.local
        self.cut = None
        self.hc_degree = None
        self.elems: list[_Elem] = []
        self.by_comp: dict[int, list[_Elem]] = {}
        self.pairs: list = []
        self.seq = 0
        self.pairs_done = 0
        self.is_ideal = rank == 1
        self.maxdeg_allowed = (1 << self.limits.exponent_bits) - 2
        self._dcache: dict = {}
        # leads of elements emptied by truncation; still part of the leading module
        self.hc_leads: list = []
        if degree_bound is not None and self.local:
            # work modulo m^N E from the start, as if the corner were known
            self.hc_degree = degree_bound
            self.cut = self.enc.cut_for_degree(degree_bound)

    # -- element helpers -------------------------------------------------
    def ecart(self, d: dict) -> int:
        if not self.local:
            return 0
        dg = self.enc.degree
        return dg(min(d)) - dg(max(d))

    def make_elem(self, d: dict, monic: bool = True) -> _Elem:
        lead = max(d)
        lc = d[lead]
        if monic and lc != self.field.one:
            d = kernel.scaled(d, self.field.inv(lc), self.p)
        el = _Elem()
        el.vec = d
        el.lead = lead
        el.exps, el.comp, el.pk = self.enc.decode(lead)
        el.ecart = self.ecart(d)
        el.alive = True
        top = self.enc.degree(min(d) if self.local else lead)
        if top > self.maxdeg_allowed:
            raise ResourceLimitExceeded("exponent bound exceeded; raise Limits.exponent_bits")
        if len(d) > self.limits.max_terms:
            raise ResourceLimitExceeded(f"vector with {len(d)} terms exceeds max_terms")
        return el

    # -- Mora normal form ------------------------------------------------
    def _divisor(self, lt: int):
        """Basis element of least ecart whose lead divides term ``lt``."""
        hit = self._dcache.get(lt)
        if hit is not None:
            return hit or None
        _, comp, pk = self.enc.decode(lt)
        G = self.enc.guard
        pkg = pk | G
        best = None
        for g in self.by_comp.get(comp, ()):
            if (pkg - g.pk) & G == G:
                best = g
                break
        self._dcache[lt] = best or False
        return best

    def nf(self, h: dict, extra_ok: bool = True) -> dict:
        """Weak normal form of ``h`` (mutated and returned) against the basis."""
        p, cut = self.p, self.cut
        G = self.enc.guard
        local_T: dict[int, list] | None = None
        axpy = kernel.axpy
        find = self._divisor
        while h:
            lt = max(h)
            best = find(lt)
            if local_T is not None and (best is None or best.ecart):
                _, comp, pk = self.enc.decode(lt)
                pkg = pk | G
                for g in local_T.get(comp, ()):
                    if (pkg - g.pk) & G == G and (best is None or g.ecart < best.ecart):
                        best = g
                        if not g.ecart:
                            break
            if best is None:
                return h
            if self.local and extra_ok and best.ecart:
                eh = self.ecart(h)
                if best.ecart > eh:
                    if local_T is None:
                        local_T = {}
                    el = self.make_elem(dict(h))
                    local_T.setdefault(el.comp, []).append(el)
            axpy(h, best.vec, lt - best.lead, h[lt], p, cut)
        return h

    # -- pair handling ---------------------------------------------------
    def _lcm(self, a, b):
        return tuple(x if x > y else y for x, y in zip(a, b))

    def _push_pair(self, i: int, j: int, lcm_exps, lcm_pk: int) -> None:
        comp = self.elems[i].comp
        key = self.enc.term(lcm_exps, comp)
        self.seq += 1
        heapq.heappush(self.pairs, (sum(lcm_exps), self.seq, i, j, lcm_exps, key, lcm_pk))

    def _push_gen(self, d: dict) -> None:
        deg = self.enc.degree(max(d))
        self.seq += 1
        heapq.heappush(self.pairs, (deg, self.seq, -1, -1, None, d, 0))

    def _update(self, h: _Elem) -> None:
        """Gebauer--Moeller pair update for the new element ``h``."""
        G = self.enc.guard
        pack = self.enc.pack
        lcm = self._lcm
        C = []
        for g in self.by_comp.get(h.comp, ()):
            if g.alive and g is not h:
                L = lcm(g.exps, h.exps)
                C.append((g, L, pack(L)))
        D = []
        for idx, (g, L, Lp) in enumerate(C):
            coprime = self.is_ideal and all(not (a and b) for a, b in zip(g.exps, h.exps))
            if not coprime:
                Lg = Lp | G
                if any((Lg - L2p) & G == G for _, _, L2p in C[idx + 1 :]):
                    continue
                if any((Lg - L2p) & G == G for _, _, L2p, _ in D):
                    continue
            D.append((g, L, Lp, coprime))
        # chain criterion on the pending pairs
        hx, hp = h.exps, h.pk
        kept = []
        changed = False
        for item in self.pairs:
            i = item[2]
            if i >= 0 and ((item[6] | G) - hp) & G == G:
                gi, gj, L = self.elems[i], self.elems[item[3]], item[4]
                if gi.comp == h.comp and lcm(gi.exps, hx) != L and lcm(gj.exps, hx) != L:
                    changed = True
                    continue
            kept.append(item)
        if changed:
            heapq.heapify(kept)
            self.pairs = kept
        for g, L, Lp, coprime in D:
            if not coprime:
                self._push_pair(g.idx, h.idx, L, Lp)
        # redundant elements leave the pairing but stay usable for reduction
        for g in self.by_comp.get(h.comp, ()):
            if g.alive and g is not h and ((g.pk | G) - hp) & G == G:
                g.alive = False

    def _insert(self, d: dict) -> None:
        el = self.make_elem(d)
        el.idx = len(self.elems)
        self.elems.append(el)
        lst = self.by_comp.setdefault(el.comp, [])
        lst.append(el)
        lst.sort(key=lambda g: (g.ecart, g.idx))
        self._dcache.clear()
        self._update(el)
        if len(self.elems) > self.limits.max_basis:
            raise ResourceLimitExceeded(f"standard basis exceeds {self.limits.max_basis} elements")
        if self.use_hc:
            self._check_hc()

    def _check_hc(self) -> None:
        per_comp = {}
        for c in range(self.rank):
            leads = [g.exps for g in self.by_comp.get(c, ()) if g.alive]
            if not leads or not _monomial_zero_dim(leads, self.enc.n):
                return
            per_comp[c] = leads
        maxdeg = -1
        for leads in per_comp.values():
            cnt, md = count_standard(leads, self.enc.n)
            if cnt is None:
                return
            maxdeg = max(maxdeg, md)
        N = maxdeg + 1
        if self.hc_degree is not None and N >= self.hc_degree:
            return
        self.hc_degree = N
        self.cut = self.enc.cut_for_degree(N)
        cut = self.cut
        for c, lst in self.by_comp.items():
            keep = []
            for g in lst:
                kernel.truncate(g.vec, cut)
                if g.vec:
                    g.ecart = self.ecart(g.vec)
                    keep.append(g)
                else:
                    if g.alive:
                        self.hc_leads.append((g.comp, g.exps))
                    g.alive = False
            keep.sort(key=lambda g: (g.ecart, g.idx))
            self.by_comp[c] = keep
        self._dcache.clear()
        # pairs whose lcm has degree >= N produce nothing
        self.pairs = [it for it in self.pairs if it[0] < N]
        heapq.heapify(self.pairs)

    # -- main loop ---------------------------------------------------------
    def run(self, gens: list[dict]) -> None:
        for d in gens:
            if d:
                self._push_gen(d)
        lim = self.limits.max_pairs
        while self.pairs:
            deg, _, i, j, L, payload, _ = heapq.heappop(self.pairs)
            if self.hc_degree is not None and deg >= self.hc_degree:
                continue
            self.pairs_done += 1
            if self.pairs_done > lim:
                raise ResourceLimitExceeded(f"more than {lim} pairs processed")
            if i < 0:
                h = dict(payload)
                kernel.truncate(h, self.cut)
            else:
                gi, gj = self.elems[i], self.elems[j]
                if not gi.vec or not gj.vec:
                    continue
                h = kernel.shifted(gi.vec, payload - gi.lead, self.field.one, self.p, self.cut)
                kernel.axpy(h, gj.vec, payload - gj.lead, self.field.one, self.p, self.cut)
            h = self.nf(h)
            if h:
                self._insert(h)

    def basis(self) -> list[_Elem]:
        return [g for g in self.elems if g.alive and g.vec]

    def leading(self) -> dict[int, list]:
        out: dict[int, list] = {c: [] for c in range(self.rank)}
        for g in self.basis():
            out[g.comp].append(g.exps)
        for c, e in self.hc_leads:
            out[c].append(e)
        return {c: list(minimalize(v)) for c, v in out.items()}


# ---------------------------------------------------------------------------
# public API


@dataclass
class StandardBasis:
    """Result of :func:`standard_basis`.

    When ``hc_degree`` is set, the elements were computed modulo
    ``m^hc_degree * E`` (which is certified to lie in the module), and the
    leading module additionally contains every term of degree ``>= hc_degree``.
    """

    elements: list
    order: TermOrder
    leading: list
    rank: int
    ring: Ring
    hc_degree: int | None = None
    pairs_processed: int = 0
    truncated_leading: list = field(default_factory=list)
    _engine: _Engine | None = field(default=None, repr=False)

    def leading_by_component(self) -> dict[int, list]:
        out: dict[int, list] = {c: [] for c in range(self.rank)}
        for c, e in self.leading + self.truncated_leading:
            out[c].append(e)
        if self.hc_degree is not None:
            n = self.ring.nvars
            for c in out:
                out[c] = list(minimalize(out[c] + _of_degree(n, self.hc_degree)))
        return out

    def reduce(self, v: ModuleVector) -> ModuleVector:
        """Weak normal form of ``v`` against this basis."""
        eng = self._engine
        h = eng.enc.encode(v, eng.field)
        kernel.truncate(h, eng.cut)
        return eng.enc.decode_vector(eng.nf(h), self.ring)

    def contains(self, v: ModuleVector) -> bool:
        return self.reduce(v).is_zero()

    def s_vectors(self) -> list[ModuleVector]:
        eng = self._engine
        els = eng.basis()
        out = []
        for a in range(len(els)):
            for b in range(a + 1, len(els)):
                gi, gj = els[a], els[b]
                if gi.comp != gj.comp:
                    continue
                L = eng._lcm(gi.exps, gj.exps)
                key = eng.enc.term(L, gi.comp)
                h = kernel.shifted(gi.vec, key - gi.lead, eng.field.one, eng.p, eng.cut)
                kernel.axpy(h, gj.vec, key - gj.lead, eng.field.one, eng.p, eng.cut)
                out.append(eng.enc.decode_vector(h, self.ring))
        return out


def _of_degree(n: int, k: int) -> list:
    """All exponent vectors of total degree ``k`` in ``n`` variables."""
    if n == 0:
        return [()] if k == 0 else []
    if n == 1:
        return [(k,)]
    return [(i,) + rest for i in range(k, -1, -1) for rest in _of_degree(n - 1, k - i)]


def _run(m: Submodule, order: TermOrder, limits=None, highest_corner=True, degree_bound=None) -> _Engine:
    eng = _Engine(m.ring, m.rank, order, limits, highest_corner, degree_bound)
    gens = [eng.enc.encode(g, eng.field) for g in m.all_generators()]
    eng.run([g for g in gens if g])
    return eng


def standard_basis(m: Submodule, order: TermOrder = LOCAL, limits: Limits | None = None,
                   highest_corner: bool = True, degree_bound: int | None = None) -> StandardBasis:
    """Standard basis (local order) or Groebner basis (global order) of ``m``.

    Ring equations are folded in as ``f_i * e_c``.  Deterministic for a fixed
    generator order.  With ``degree_bound=N`` (local orders) the result is a
    standard basis of ``m + m^N E`` instead.
    """
    eng = _run(m, order, limits, highest_corner, degree_bound)
    els = eng.basis()
    return StandardBasis(
        elements=[eng.enc.decode_vector(g.vec, m.ring) for g in els],
        order=order,
        leading=[(g.comp, g.exps) for g in els],
        rank=m.rank,
        ring=m.ring,
        hc_degree=eng.hc_degree,
        pairs_processed=eng.pairs_done,
        truncated_leading=list(eng.hc_leads),
        _engine=eng,
    )


def normal_form(v: ModuleVector, basis: Sequence[ModuleVector], order: TermOrder = LOCAL) -> ModuleVector:
    """Weak normal form of ``v`` with respect to ``basis`` (Mora in local orders)."""
    return normal_form_with_unit(v, basis, order)[0]


def normal_form_with_unit(v: ModuleVector, basis: Sequence[ModuleVector], order: TermOrder = LOCAL):
    """Mora normal form with its transformation recorded.

    Returns ``(h, u, a)`` with ``u * v == sum(a[i] * basis[i]) + h``; ``u`` is a
    unit of the local ring (constant term nonzero).
    """
    ring, rank = v.ring, v.rank
    eng = _Engine(ring, rank, order, highest_corner=False)
    enc, f = eng.enc, eng.field

    def mono_poly(exps, c):
        return Poly(ring, {exps: c})

    # entries: (elem, None, i) for basis element i, or (elem, unit, cofactors)
    # for an intermediate remainder appended to the reduction set
    T = []
    for i, b in enumerate(basis):
        d = enc.encode(b, f)
        if d:
            T.append((eng.make_elem(d, monic=False), None, i))
    h = enc.encode(v, f)
    u = ring.one
    a = [ring.zero] * len(basis)
    while h:
        lt = max(h)
        exps, comp, _ = enc.decode(lt)
        best = None
        for entry in T:
            g = entry[0]
            if g.comp == comp and divides(g.exps, exps) and (best is None or g.ecart < best[0].ecart):
                best = entry
        if best is None:
            break
        g, gu, gdata = best
        if eng.local and g.ecart > eng.ecart(h):
            T.append((eng.make_elem(dict(h), monic=False), u, list(a)))
        c = f.div(h[lt], g.vec[g.lead])
        cm = mono_poly(tuple(x - y for x, y in zip(exps, g.exps)), c)
        kernel.axpy(h, g.vec, lt - g.lead, c, eng.p, None)
        if gu is None:
            a[gdata] = a[gdata] + cm
        else:
            u = u - cm * gu
            a = [ai - cm * gi for ai, gi in zip(a, gdata)]
    return enc.decode_vector(h, ring), u, a


def colength(m: Submodule, order: TermOrder = LOCAL, limits: Limits | None = None,
             degree_bound: int | None = None):
    """``dim_K E/M`` in the local ring at 0 (or the polynomial ring for a global
    order); :data:`INFINITE` when the quotient is infinite-dimensional.

    ``degree_bound=N`` is a hint: the basis is computed modulo ``m^N E``, which
    keeps coefficients small.  The answer is used only if every term of degree
    ``N - 1`` is a leading term; then ``m^(N-1) E`` lies in ``M + m^N E`` and so,
    by Nakayama, in ``M``.  Otherwise the full computation runs.
    """
    if degree_bound is not None and order.is_local:
        sb = standard_basis(m, order, limits, degree_bound=degree_bound)
        n = sb.ring.nvars
        total = 0
        for leads in sb.leading_by_component().values():
            cnt, top = count_standard(leads, n)
            if cnt is None or top >= degree_bound - 1:
                break
            total += cnt
        else:
            return total
    sb = standard_basis(m, order, limits)
    return colength_from_basis(sb)


def colength_from_basis(sb: StandardBasis):
    n = sb.ring.nvars
    total = 0
    for c, leads in sb.leading_by_component().items():
        cnt, _ = count_standard(leads, n)
        if cnt is None:
            return INFINITE
        total += cnt
    return total


def is_zero_dimensional(m: Submodule, order: TermOrder = LOCAL, limits: Limits | None = None) -> bool:
    return colength(m, order, limits) != INFINITE


def global_colength(m: Submodule, limits: Limits | None = None):
    """Colength over the polynomial ring (all points of the zero set counted)."""
    return colength(m, GREVLEX, limits)


def radical_membership(g: Poly, ideal_: Submodule, limits: Limits | None = None) -> bool:
    """Does ``g`` vanish on the zero set of the ideal?  (Rabinowitsch trick.)"""
    if ideal_.rank != 1:
        raise RingMismatch("radical membership needs an ideal")
    ring = ideal_.ring
    w = "_w"
    while w in ring.names:
        w += "_"
    big = Ring(ring.names + (w,), ring.field)
    gens = [v[0].change_ring(big) for v in ideal_.all_generators()]
    gens.append(big.one - big.var(w) * g.change_ring(big))
    sb = standard_basis(ideal(gens, big), GREVLEX, limits)
    return any(not any(e) for _, e in sb.leading)
