"""Pure-Python polynomial kernels.

A polynomial is a plain ``dict`` mapping a packed monomial key to a nonzero
exact coefficient (``int`` or ``Fraction``).  Each variable owns a fixed
``WIDTH``-bit field of the key, so multiplying monomials is integer addition.
The compiled twin in ``_ckernels.pyx`` must stay behaviourally identical.
"""

WIDTH = 8
MASK = (1 << WIDTH) - 1


def mul(a, b):
    if len(a) > len(b):
        a, b = b, a
    out = {}
    get = out.get
    items_b = list(b.items())
    for ka, ca in a.items():
        for kb, cb in items_b:
            k = ka + kb
            out[k] = get(k, 0) + ca * cb
    return {k: c for k, c in out.items() if c}


def add_into(acc, a, scale=1):
    """In-place ``acc += scale * a``; zero coefficients are removed."""
    get = acc.get
    for k, c in a.items():
        v = get(k, 0) + scale * c
        if v:
            acc[k] = v
        elif k in acc:
            del acc[k]
    return acc


def scale(a, c):
    if not c:
        return {}
    return {k: v * c for k, v in a.items()}


def partial(a, shift, order):
    out = {}
    step = 1 << shift
    for k, c in a.items():
        e = (k >> shift) & MASK
        if e < order:
            continue
        f = 1
        for j in range(e - order + 1, e + 1):
            f *= j
        nk = k - order * step
        out[nk] = out.get(nk, 0) + c * f
    return {k: c for k, c in out.items() if c}


def todd(a, shift, table):
    """Apply ``sum_k table[k] * (d/dv)^k`` along the variable at ``shift``.

    ``table`` must be long enough to cover the largest exponent of that
    variable in ``a``.
    """
    out = {}
    get = out.get
    step = 1 << shift
    for k, c in a.items():
        e = (k >> shift) & MASK
        falling = 1
        nk = k
        for j in range(e + 1):
            t = table[j]
            if t:
                out[nk] = get(nk, 0) + c * falling * t
            falling *= e - j
            nk -= step
    return {k: c for k, c in out.items() if c}


def drop_var(a, shift):
    """Substitute zero for the variable at ``shift``."""
    return {k: c for k, c in a.items() if not (k >> shift) & MASK}


def evaluate(a, values):
    """Evaluate at ``values[slot]``; raises ``LookupError`` with the slot of
    an unassigned variable."""
    total = 0
    for k, c in a.items():
        s = 0
        v = c
        while k:
            e = k & MASK
            if e:
                x = values[s] if s < len(values) else None
                if x is None:
                    raise LookupError(s)
                v = v * x ** e
            k >>= WIDTH
            s += 1
        total += v
    return total
