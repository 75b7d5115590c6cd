"""Counting standard monomials of monomial ideals (staircases)."""

from __future__ import annotations

from functools import lru_cache


def divides(a, b) -> bool:
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens) -> tuple:
    """Minimal generators of the monomial ideal generated by ``gens``."""
    out = []
    for g in sorted(set(map(tuple, gens)), key=sum):
        if not any(divides(h, g) for h in out):
            out.append(g)
    return tuple(sorted(out))


def count_standard(gens, nvars: int) -> tuple[int | None, int]:
    """Return ``(count, maxdeg)`` of monomials outside the ideal.

    ``count`` is ``None`` when infinitely many monomials survive; ``maxdeg`` is
    the largest degree of a standard monomial (-1 when there are none).
    """
    return _count(minimalize(gens), nvars)


@lru_cache(maxsize=200_000)
def _count(gens: tuple, n: int) -> tuple[int | None, int]:
    if any(not any(g) for g in gens):
        return 0, -1
    if n == 0:
        return 1, 0
    pure = [g[-1] for g in gens if not any(g[:-1])]
    if not pure:
        return None, -1
    top = min(pure)
    total = 0
    maxdeg = -1
    # slice by the exponent j of the last variable; the projected ideal only
    # changes at the exponents that occur in the generators
    breaks = sorted({g[-1] for g in gens if g[-1] < top} | {0})
    for idx, j in enumerate(breaks):
        nxt = breaks[idx + 1] if idx + 1 < len(breaks) else top
        sub = minimalize(g[:-1] for g in gens if g[-1] <= j)
        c, d = _count(sub, n - 1)
        if c is None:
            return None, -1
        if c:
            total += c * (nxt - j)
            maxdeg = max(maxdeg, d + nxt - 1)
    return total, maxdeg


def is_zero_dimensional(gens, nvars: int) -> bool:
    """True iff every variable has a pure power among ``gens``."""
    seen = set()
    for g in gens:
        nz = [i for i, k in enumerate(g) if k]
        if not nz:
            return True
        if len(nz) == 1:
            seen.add(nz[0])
    return len(seen) == nvars
