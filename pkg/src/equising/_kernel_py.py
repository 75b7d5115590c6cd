"""Pure-Python hot loops for the standard-basis engine.

Vectors are dicts ``{term key: coefficient}``.  Term keys are integers that are
linear in the exponent vector, so multiplying by a monomial is adding a fixed
shift to every key and the leading term is ``max(vec)``.  ``p`` selects the
coefficient arithmetic: ``p > 0`` residues mod p, otherwise field objects with
native operators.  ``cut`` drops every resulting key below it (``None`` keeps
all terms).
"""


def axpy(h: dict, g: dict, shift: int, c, p, cut) -> None:
    """In place: ``h -= c * x^shift * g``."""
    get = h.get
    if p:
        for k, v in g.items():
            k += shift
            if cut is not None and k < cut:
                continue
            w = (get(k, 0) - c * v) % p
            if w:
                h[k] = w
            elif k in h:
                del h[k]
    else:
        for k, v in g.items():
            k += shift
            if cut is not None and k < cut:
                continue
            old = get(k)
            w = -(c * v) if old is None else old - c * v
            if w:
                h[k] = w
            else:
                del h[k]


def scaled(g: dict, c, p) -> dict:
    if p:
        return {k: v * c % p for k, v in g.items()}
    return {k: v * c for k, v in g.items()}


def shifted(g: dict, shift: int, c, p, cut) -> dict:
    if p:
        return {k + shift: v * c % p for k, v in g.items() if cut is None or k + shift >= cut}
    return {k + shift: v * c for k, v in g.items() if cut is None or k + shift >= cut}


def truncate(h: dict, cut) -> None:
    if cut is None:
        return
    for k in [k for k in h if k < cut]:
        del h[k]
