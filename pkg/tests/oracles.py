"""Independent oracles used to freeze expected values.

None of these routines touch the standard-basis engine: they work on plain
exponent dictionaries with Fraction (or mod-p) linear algebra, brute-force
enumeration and convex geometry.
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from math import factorial

import numpy as np


def monomials_below(nvars: int, D: int):
    """All exponent tuples of total degree < D."""
    out = []
    for d in range(D):
        for c in itertools.combinations_with_replacement(range(nvars), d):
            e = [0] * nvars
            for i in c:
                e[i] += 1
            out.append(tuple(e))
    return out


def _rank(rows, p=None):
    """Rank of a list of sparse rows {col: value} by Gaussian elimination."""
    pivots: dict = {}
    rank = 0
    for row in rows:
        row = dict(row)
        while row:
            col = min(row)
            if col in pivots:
                prow = pivots[col]
                c = row[col]
                for k, v in prow.items():
                    w = row.get(k, 0) - c * v
                    if p:
                        w %= p
                    if w:
                        row[k] = w
                    else:
                        row.pop(k, None)
            else:
                inv = (pow(row[col], -1, p) if p else 1 / Fraction(row[col]))
                pivots[col] = {k: (v * inv % p if p else v * inv) for k, v in row.items()}
                rank += 1
                break
    return rank


def macaulay_colength(gens, nvars: int, D: int, rank: int = 1, p: int | None = None) -> int:
    """dim of K[x]^rank / (M + m^D K[x]^rank) by truncated linear algebra.

    ``gens`` is a list of module elements, each a list (length ``rank``) of
    dicts ``{exponent tuple: coefficient}``.  Equals the local colength of M as
    soon as m^D E is contained in M.
    """
    monos = monomials_below(nvars, D)
    col = {(m, c): i for i, (m, c) in enumerate((m, c) for c in range(rank) for m in monos)}
    rows = []
    for g in gens:
        low = min((sum(e) for comp in g for e in comp), default=None)
        if low is None or low >= D:
            continue
        for m in monomials_below(nvars, D - low):
            row = {}
            for c, comp in enumerate(g):
                for e, v in comp.items():
                    e2 = tuple(a + b for a, b in zip(e, m))
                    if sum(e2) < D:
                        v = Fraction(v) if p is None else Fraction(v).numerator * pow(Fraction(v).denominator, -1, p) % p
                        row[col[(e2, c)]] = row.get(col[(e2, c)], 0) + v
            row = {k: v for k, v in row.items() if v}
            if row:
                rows.append(row)
    return len(col) - _rank(rows, p)


def poly_to_dicts(polys):
    """Engine polynomials -> list of rank-1 module elements for the oracle."""
    return [[{e: Fraction(str(c)) for e, c in f.terms.items()}] for f in polys]


def vectors_to_dicts(vectors):
    return [[{e: Fraction(str(c)) for e, c in comp.terms.items()} for comp in v] for v in vectors]


def box_staircase_count(gens, nvars: int, bound: int = 40):
    """Count monomials of each exponent < bound not divisible by any gen."""
    count = 0
    for e in itertools.product(range(bound), repeat=nvars):
        if not any(all(a <= b for a, b in zip(g, e)) for g in gens):
            count += 1
    return count


def _lower_hull_2d(points):
    pts = sorted(set(points))
    hull = []
    for pt in pts:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            if (x2 - x1) * (pt[1] - y1) - (y2 - y1) * (pt[0] - x1) <= 0:
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


def newton_area_2d(points) -> Fraction:
    """Area of the region of R^2_{>=0} under the Newton polygon (convenient)."""
    pts = [tuple(p) for p in points]
    ymin_on_axis = min(p[1] for p in pts if p[0] == 0)
    xmin_on_axis = min(p[0] for p in pts if p[1] == 0)
    hull = _lower_hull_2d(pts)
    # keep the chain between the two axis points
    chain = [p for p in hull if p[0] <= xmin_on_axis]
    chain = [(0, ymin_on_axis)] + [p for p in chain if p[0] > 0 and p[1] > 0] + [(xmin_on_axis, 0)]
    chain = _lower_hull_2d(chain)
    area = Fraction(0)
    for (x1, y1), (x2, y2) in zip(chain, chain[1:]):
        area += Fraction((x2 - x1) * (y1 + y2), 2)
    return area


def samuel_multiplicity_monomial_2d(gens) -> int:
    """e(I) = 2 * area under the Newton polygon, for m-primary monomial I."""
    a = 2 * newton_area_2d(gens)
    assert a.denominator == 1
    return int(a)


def _lower_volume_3d(points) -> Fraction:
    """Volume of R^3_{>=0} minus the Newton polyhedron of ``points``."""
    from scipy.spatial import ConvexHull

    pts = [tuple(map(int, p)) for p in points]
    big = 4 * max(max(p) for p in pts) + 10
    cloud = set(pts)
    for p in pts:
        for i in range(3):
            q = list(p)
            q[i] += big
            cloud.add(tuple(q))
    cloud = np.array(sorted(cloud), dtype=float)
    hull = ConvexHull(cloud)
    vol = Fraction(0)
    for simplex, eq in zip(hull.simplices, hull.equations):
        normal = eq[:3]
        if np.all(normal < -1e-9):
            v = [tuple(int(round(c)) for c in cloud[i]) for i in simplex]
            det = (
                v[0][0] * (v[1][1] * v[2][2] - v[1][2] * v[2][1])
                - v[0][1] * (v[1][0] * v[2][2] - v[1][2] * v[2][0])
                + v[0][2] * (v[1][0] * v[2][1] - v[1][1] * v[2][0])
            )
            vol += Fraction(abs(det), 6)
    return vol


def kouchnirenko_number(support, nvars: int) -> int:
    """Newton number of a convenient support in 2 or 3 variables."""
    support = [tuple(e) for e in support]
    if nvars == 2:
        v2 = newton_area_2d(support)
        v1 = min(e[0] for e in support if e[1] == 0) + min(e[1] for e in support if e[0] == 0)
        val = 2 * v2 - v1 + 1
    elif nvars == 3:
        v3 = _lower_volume_3d(support)
        v2 = Fraction(0)
        for i, j in ((0, 1), (0, 2), (1, 2)):
            k = 3 - i - j
            pts = [(e[i], e[j]) for e in support if e[k] == 0]
            v2 += newton_area_2d(pts)
        v1 = sum(min(e[i] for e in support if sum(e) == e[i]) for i in range(3))
        val = factorial(3) * v3 - factorial(2) * v2 + v1 - 1
    else:
        raise ValueError("only 2 or 3 variables")
    assert val.denominator == 1
    return int(val)


def univariate_root_orders(coeffs_by_degree: dict) -> dict:
    """Orders of vanishing of a univariate polynomial at 0 and total degree."""
    nz = [d for d, c in coeffs_by_degree.items() if c]
    return {"order_at_0": min(nz), "degree": max(nz)}
