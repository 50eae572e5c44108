"""Independent brute-force routes used to cross-check the search."""

import numpy as np

from pp7.equiv import canonical, normalize
from pp7.poly import Polynomial


def septic_pp_mask(ctx, rows):
    """Bijectivity of x^7 + a6 x^6 + ... + a1 x for rows (a6, a5, ..., a1), at all q points."""
    q = ctx.q
    xs = np.arange(q)
    powers = np.array([[ctx._pow(int(x), i) for x in xs] for i in range(8)])  # (8, q)
    acc = np.broadcast_to(powers[7], (len(rows), q))
    for col, i in enumerate((6, 5, 4, 3, 2, 1)):
        acc = ctx.vec_add(acc, ctx.vec_mul(rows[:, col, None], powers[i][None, :]))
    s = np.sort(acc, axis=1)
    return ~np.any(s[:, 1:] == s[:, :-1], axis=1)


def brute_force_classes(ctx):
    """Canonical keys of every monic septic with zero constant term that permutes F_q."""
    q = ctx.q
    tail = np.array(np.meshgrid(*[np.arange(q)] * 5, indexing="ij")).reshape(5, -1).T
    keys = set()
    for a6 in range(q):
        rows = np.column_stack([np.full(len(tail), a6), tail])
        for row in rows[septic_pp_mask(ctx, rows)]:
            coeffs = [0, *(int(v) for v in reversed(row)), 1]
            keys.add(canonical(normalize(Polynomial(ctx, coeffs))).key)
    return keys
