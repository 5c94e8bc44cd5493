"""Dense nested-list tensor kernels over Scalar.

Conventions: a linear map between coordinate spaces is given by its list of
basis images (``images[j]`` is the image of basis vector ``j``); a
tensor-valued map ``V -> X (x) Y`` by a rank-3 array ``m[j][p][q]``.  Every
loop skips zero coefficients, which is what keeps the checkers usable on
sparse structure constants.
"""

from __future__ import annotations

from .exactnum import ZERO

# flake8: noqa: E741


def zeros1(n):
    return [ZERO] * n


def zeros2(n1, n2):
    return [[ZERO] * n2 for _ in range(n1)]


def zeros3(n1, n2, n3):
    return [[[ZERO] * n3 for _ in range(n2)] for _ in range(n1)]


def is_zero(t) -> bool:
    if isinstance(t, list) or isinstance(t, tuple):
        return all(is_zero(x) for x in t)
    return not t


def freeze(t):
    if isinstance(t, (list, tuple)):
        return tuple(freeze(x) for x in t)
    return t


def thaw(t):
    if isinstance(t, (list, tuple)):
        return [thaw(x) for x in t]
    return t


def add(s, t, c=1):
    """``s + c*t`` for equally shaped tensors (c an int or Scalar)."""
    if isinstance(s, (list, tuple)):
        return [add(a, b, c) for a, b in zip(s, t)]
    if not t:
        return s
    return s + t if c == 1 else s + c * t


def scale(c, t):
    if isinstance(t, (list, tuple)):
        return [scale(c, x) for x in t]
    return c * t if t else t


def combine(n1, n2, terms):
    """Sum of ``c * t`` over ``terms`` for rank-2 tensors of shape (n1, n2)."""
    out = zeros2(n1, n2)
    for c, t in terms:
        for p in range(n1):
            row, orow = t[p], out[p]
            for q in range(n2):
                v = row[q]
                if v:
                    orow[q] = orow[q] + (v if c == 1 else c * v)
    return out


def combine3(n1, n2, n3, terms):
    out = zeros3(n1, n2, n3)
    for c, t in terms:
        for p in range(n1):
            for q in range(n2):
                row, orow = t[p][q], out[p][q]
                for r in range(n3):
                    v = row[r]
                    if v:
                        orow[r] = orow[r] + (v if c == 1 else c * v)
    return out


# -- vectors ----------------------------------------------------------------

def lin(images, v, nout):
    """Apply a linear map (basis images) to coordinate vector ``v``."""
    out = [ZERO] * nout
    for j, cj in enumerate(v):
        if cj:
            img = images[j]
            for p in range(nout):
                x = img[p]
                if x:
                    out[p] = out[p] + cj * x
    return out


def bil(T, u, v, nout):
    """``T(u, v)`` for a bilinear map stored as ``T[i][j][k]``."""
    out = [ZERO] * nout
    for i, ui in enumerate(u):
        if not ui:
            continue
        Ti = T[i]
        for j, vj in enumerate(v):
            if not vj:
                continue
            c = ui * vj
            img = Ti[j]
            for k in range(nout):
                x = img[k]
                if x:
                    out[k] = out[k] + c * x
    return out


def bil_left(T, i, v, nout):
    """``T(e_i, v)``."""
    out = [ZERO] * nout
    Ti = T[i]
    for j, vj in enumerate(v):
        if vj:
            img = Ti[j]
            for k in range(nout):
                x = img[k]
                if x:
                    out[k] = out[k] + vj * x
    return out


def bil_right(T, u, j, nout):
    """``T(u, e_j)``."""
    out = [ZERO] * nout
    for i, ui in enumerate(u):
        if ui:
            img = T[i][j]
            for k in range(nout):
                x = img[k]
                if x:
                    out[k] = out[k] + ui * x
    return out


def outer(u, v):
    return [[a * b if a and b else ZERO for b in v] for a in u]


def outer3(u, t):
    """``u (x) t`` for a vector u and rank-2 tensor t."""
    return [[[a * x if a and x else ZERO for x in row] for row in t] for a in u]


def outer3r(t, v):
    """``t (x) v`` for a rank-2 tensor t and a vector v."""
    return [[[x * b if x and b else ZERO for b in v] for x in row] for row in t]


# -- rank-2 -----------------------------------------------------------------

def tau(t):
    n1 = len(t)
    n2 = len(t[0]) if n1 else 0
    return [[t[p][q] for p in range(n1)] for q in range(n2)]


def map_left(images, t, nout):
    """``(M (x) I) t``."""
    n2 = len(t[0]) if t else 0
    out = zeros2(nout, n2)
    for j, row in enumerate(t):
        img = images[j]
        for q in range(n2):
            c = row[q]
            if c:
                for p in range(nout):
                    x = img[p]
                    if x:
                        out[p][q] = out[p][q] + c * x
    return out


def map_right(images, t, nout):
    """``(I (x) M) t``."""
    out = zeros2(len(t), nout)
    for p, row in enumerate(t):
        orow = out[p]
        for j, c in enumerate(row):
            if c:
                img = images[j]
                for q in range(nout):
                    x = img[q]
                    if x:
                        orow[q] = orow[q] + c * x
    return out


def map_both(images, t, nout):
    """``(M (x) I + I (x) M) t`` for a square-space endomorphism-like M."""
    return add(map_left(images, t, nout), map_right(images, t, nout))


# -- rank-3 -----------------------------------------------------------------

def tau12(t):
    n1 = len(t)
    n2 = len(t[0]) if n1 else 0
    return [[t[p][q] for p in range(n1)] for q in range(n2)]


def comap_right(m, t, n2, n3):
    """``(I (x) Phi) t`` where ``Phi: Y -> X2 (x) X3`` and ``t in X1 (x) Y``."""
    out = zeros3(len(t), n2, n3)
    for p, row in enumerate(t):
        op = out[p]
        for j, c in enumerate(row):
            if not c:
                continue
            mj = m[j]
            for q in range(n2):
                mrow = mj[q]
                orow = op[q]
                for r in range(n3):
                    x = mrow[r]
                    if x:
                        orow[r] = orow[r] + c * x
    return out


def comap_left(m, t, n1, n2):
    """``(Phi (x) I) t`` where ``Phi: Y -> X1 (x) X2`` and ``t in Y (x) X3``."""
    n3 = len(t[0]) if t else 0
    out = zeros3(n1, n2, n3)
    for j, row in enumerate(t):
        mj = m[j]
        for s in range(n3):
            c = row[s]
            if not c:
                continue
            for p in range(n1):
                mrow = mj[p]
                for q in range(n2):
                    x = mrow[q]
                    if x:
                        out[p][q][s] = out[p][q][s] + c * x
    return out


def map3(images, t, slot, nout):
    """Apply a linear map to one slot (0, 1 or 2) of a rank-3 tensor."""
    n1, n2, n3 = len(t), len(t[0]), len(t[0][0])
    dims = [n1, n2, n3]
    dims[slot] = nout
    out = zeros3(*dims)
    for p in range(n1):
        for q in range(n2):
            for r in range(n3):
                c = t[p][q][r]
                if not c:
                    continue
                j = (p, q, r)[slot]
                img = images[j]
                for k in range(nout):
                    x = img[k]
                    if x:
                        idx = [p, q, r]
                        idx[slot] = k
                        a, b, d = idx
                        out[a][b][d] = out[a][b][d] + c * x
    return out


def nonzero_entries(t, prefix=()):
    """Sorted ``(index, value)`` pairs of the nonzero entries of a tensor."""
    if isinstance(t, (list, tuple)):
        out = []
        for i, x in enumerate(t):
            out.extend(nonzero_entries(x, prefix + (i,)))
        return out
    return [(prefix, t)] if t else []
