"""Reference kernels for F_p linear algebra (no compiled code).

Every function here has a twin in ``_ckernels.pyx`` with the same signature
and bit-identical results; ``hallforge._backend`` picks one at import.
"""
import numpy as np


def inverse_table(p):
    inv = [0] * p
    for a in range(1, p):
        inv[a] = pow(a, p - 2, p)
    return inv


def rref_inplace(a, p):
    """Reduce the int64 array ``a`` to reduced row echelon form mod p.

    Pivot choice: for each column left to right, the first row at or below
    the current pivot row holding a nonzero entry.  Returns the pivot columns.
    """
    rows, cols = a.shape
    m = a.tolist()
    pivots = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        piv = -1
        for i in range(r, rows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        if piv != r:
            m[piv], m[r] = m[r], m[piv]
        row = m[r]
        inv = pow(row[c], p - 2, p)
        if inv != 1:
            for j in range(c, cols):
                row[j] = row[j] * inv % p
        for i in range(rows):
            if i != r:
                f = m[i][c]
                if f:
                    other = m[i]
                    for j in range(c, cols):
                        other[j] = (other[j] - f * row[j]) % p
        pivots.append(c)
        r += 1
    if rows and cols:
        a[:, :] = m
    return pivots


def batch_rank(stack, p):
    """Ranks of every square or rectangular matrix in a (N, r, c) stack."""
    n, rows, cols = stack.shape
    out = np.zeros(n, dtype=np.int64)
    if n == 0 or rows == 0 or cols == 0:
        return out
    m = stack % p
    m = m.copy()
    inv = np.array(inverse_table(p), dtype=np.int64)
    row_ptr = np.zeros(n, dtype=np.int64)
    idx = np.arange(n)
    for c in range(cols):
        active = row_ptr < rows
        if not active.any():
            break
        # candidate pivot rows: first nonzero at or below row_ptr in column c
        col = m[:, :, c]
        below = np.arange(rows)[None, :] >= row_ptr[:, None]
        cand = (col != 0) & below & active[:, None]
        has = cand.any(axis=1)
        if not has.any():
            continue
        piv = np.argmax(cand, axis=1)
        sel = idx[has]
        pr = piv[has]
        rp = row_ptr[has]
        # swap pivot row into position
        top = m[sel, rp, :].copy()
        m[sel, rp, :] = m[sel, pr, :]
        m[sel, pr, :] = top
        prow = m[sel, rp, :]
        prow = prow * inv[prow[:, c]][:, None] % p
        m[sel, rp, :] = prow
        f = m[sel, :, c].copy()
        f[np.arange(len(sel)), rp] = 0
        m[sel] = (m[sel] - f[:, :, None] * prow[:, None, :]) % p
        row_ptr[has] += 1
    out[:] = row_ptr
    return out
