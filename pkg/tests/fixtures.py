"""Shared germ and family fixtures.

Expected integers here were frozen from the oracles in ``oracles.py``
(staircase counts, Macaulay colengths, Newton areas, Kouchnirenko numbers)
before the engine was run on them.
"""

from equising.germ import FamilyGerm, IcisGerm
from equising.poly import Ring


def icis(names, eqs, f):
    R = Ring(tuple(names))
    return IcisGerm(R, [R.parse(e) for e in eqs], R.parse(f))


def family(xvars, params, eqs, f):
    R = Ring(tuple(xvars) + tuple(params))
    return FamilyGerm(tuple(xvars), tuple(params), [R.parse(e) for e in eqs], R.parse(f), R)


# name -> (germ, mu_X, mu_Z); mu pairs from staircase / Macaulay oracles
GERMS = {
    "A1 plane": (icis("xy", [], "x^2+y^2"), 0, 1),
    "A2 plane": (icis("xy", [], "x^2+y^3"), 0, 2),
    "A3 plane": (icis("xy", [], "x^2+y^4"), 0, 3),
    "D4 plane": (icis("xy", [], "x^3+y^3"), 0, 4),
    "E6 plane": (icis("xy", [], "x^3+y^4"), 0, 6),
    "D5 plane": (icis("xy", [], "x^2*y+y^4"), 0, 5),
    "A1 space": (icis("xyz", [], "x^2+y^2+z^2"), 0, 1),
    "node, f = x1": (icis(("x1", "x2"), ["x1^2+x2^2"], "x1"), 1, 1),
    "node, f = x+2y": (icis("xy", ["x*y"], "x+2*y"), 1, 1),
    "cusp, f = x": (icis("xy", ["x^2-y^3"], "x"), 2, 2),  # colength of (x, y^3) is 3
    "cone, f = xy": (icis("xyz", ["x^2+y^2+z^2"], "x*y"), 1, 5),
}

# the small-degree Briançon-Speder substitute and the original
BS_SUBSTITUTE = "z^3 + t*z*y^3 + y^4*x + x^9"
BS_ORIGINAL = "z^5 + t*z*y^6 + y^7*x + x^15"

# mu from the Kouchnirenko number of the support plus y^N (stable for
# N = 60, 100, 500); mu_1 from Macaulay colengths of the Jacobian ideal of two
# random plane sections x = a*y + b*z, mod 2147483647, at two degree bounds
BS_ORACLE = {
    "original": {"mu": {0: 364, 1: 364}, "mu1": {0: 28, 1: 26}},
    "substitute": {"mu": {0: 56, 1: 56}, "mu1": {0: 8, 1: 7}},
}

FAMILIES = {
    "quartic x^4 - t x^2": family("x", "t", [], "x^4 - t*x^2"),
    "unit (1+t) x^3": family("x", "t", [], "(1+t)*x^3"),
    "x^3 + y^3 + t xy": family("xy", "t", [], "x^3 + y^3 + t*x*y"),
    "node, constant": family(("x1", "x2"), "t", ["x1^2+x2^2"], "x1"),
    "A2, constant": family("xy", "t", [], "x^2 + y^3"),
    "A2 unit deformation": family("xy", "t", [], "x^2 + y^3 + t*x*y^2"),
}

# family -> (check_af outcome, check_wf outcome); e_M tables from the oracles
EXPECTED_VERDICTS = {
    "quartic x^4 - t x^2": ("FAILS", "FAILS"),
    "unit (1+t) x^3": ("HOLDS", "HOLDS"),
    "x^3 + y^3 + t xy": ("FAILS", "FAILS"),
    "node, constant": ("HOLDS", "HOLDS"),
    "A2, constant": ("HOLDS", "HOLDS"),
    "A2 unit deformation": ("HOLDS", "HOLDS"),
}
