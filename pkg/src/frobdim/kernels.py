"""Hot inner loops, each with a numba and a pure-numpy implementation.

The public names (``best_permutation``, ``first_template_match``,
``associativity_defects``) resolve to the numba versions unless
``FROBDIM_DISABLE_NUMBA`` is set. Both variants are importable under the
``*_numba`` / ``*_numpy`` suffixes so tests and the benchmark can compare them.
"""

import numpy as np

from ._accel import USE_NUMBA, njit

# Bound on the (m, n*n) scratch array built by the numpy paths.
_CHUNK = 1 << 15


# --------------------------------------------------------------------------
# canonical form: lexicographically smallest relabelled adjacency matrix
# --------------------------------------------------------------------------


@njit(cache=True)
def best_permutation_numba(adj, perms):
    m, n = perms.shape
    best = 0
    for t in range(1, m):
        decided = False
        for i in range(n):
            pi = perms[t, i]
            bi = perms[best, i]
            for j in range(n):
                a = adj[pi, perms[t, j]]
                b = adj[bi, perms[best, j]]
                if a != b:
                    if a < b:
                        best = t
                    decided = True
                    break
            if decided:
                break
    return best


def best_permutation_numpy(adj, perms):
    m, n = perms.shape
    best_idx = -1
    best_row = None
    for start in range(0, m, _CHUNK):
        block = perms[start:start + _CHUNK]
        enc = adj[block[:, :, None], block[:, None, :]].reshape(len(block), n * n)
        order = np.lexsort(enc.T[::-1])
        cand = enc[order[0]]
        if best_row is None or _lex_less(cand, best_row):
            best_row = cand
            best_idx = start + int(order[0])
    return best_idx


def _lex_less(a, b):
    diff = np.nonzero(a != b)[0]
    return bool(diff.size) and a[diff[0]] < b[diff[0]]


# --------------------------------------------------------------------------
# template matching: first vertex map sending a template onto a quiver
# --------------------------------------------------------------------------


@njit(cache=True)
def first_template_match_numba(qadj, tdir, tund, perms):
    m, n = perms.shape
    for t in range(m):
        ok = True
        for i in range(n):
            pi = perms[t, i]
            for j in range(n):
                pj = perms[t, j]
                if tdir[i, j] and not qadj[pi, pj]:
                    ok = False
                    break
                if tund[i, j] and not (qadj[pi, pj] or qadj[pj, pi]):
                    ok = False
                    break
            if not ok:
                break
        if ok:
            return t
    return -1


def first_template_match_numpy(qadj, tdir, tund, perms):
    m, n = perms.shape
    sym = (qadj | qadj.T).astype(bool)
    tdir = tdir.astype(bool)
    tund = tund.astype(bool)
    for start in range(0, m, _CHUNK):
        block = perms[start:start + _CHUNK]
        rows = block[:, :, None]
        cols = block[:, None, :]
        directed_ok = ~(tdir[None] & ~qadj.astype(bool)[rows, cols])
        undirected_ok = ~(tund[None] & ~sym[rows, cols])
        ok = (directed_ok & undirected_ok).reshape(len(block), -1).all(axis=1)
        hits = np.nonzero(ok)[0]
        if hits.size:
            return start + int(hits[0])
    return -1


# --------------------------------------------------------------------------
# associativity of a single-term multiplication table
# --------------------------------------------------------------------------


@njit(cache=True)
def associativity_defects_numba(idx, coef):
    d = idx.shape[0]
    bad = 0
    for i in range(d):
        for j in range(d):
            ij = idx[i, j]
            for k in range(d):
                if ij < 0:
                    li, lc = -1, 0
                else:
                    li = idx[ij, k]
                    lc = coef[i, j] * coef[ij, k] if li >= 0 else 0
                jk = idx[j, k]
                if jk < 0:
                    ri, rc = -1, 0
                else:
                    ri = idx[i, jk]
                    rc = coef[j, k] * coef[i, jk] if ri >= 0 else 0
                if lc == 0:
                    li = -1
                if rc == 0:
                    ri = -1
                if li != ri or lc != rc:
                    bad += 1
    return bad


def associativity_defects_numpy(idx, coef):
    d = idx.shape[0]
    safe = np.where(idx < 0, 0, idx)
    # left[i, j, k] = (e_i e_j) e_k
    ij = safe[:, :, None]
    k = np.arange(d)[None, None, :]
    l_idx = np.where(idx[:, :, None] >= 0, idx[ij, k], -1)
    l_coef = np.where(l_idx >= 0, coef[:, :, None] * coef[ij, k], 0)
    # right[i, j, k] = e_i (e_j e_k)
    i = np.arange(d)[:, None, None]
    jk = safe[None, :, :]
    r_idx = np.where(idx[None, :, :] >= 0, idx[i, jk], -1)
    r_coef = np.where(r_idx >= 0, coef[None, :, :] * coef[i, jk], 0)
    l_idx = np.where(l_coef == 0, -1, l_idx)
    r_idx = np.where(r_coef == 0, -1, r_idx)
    return int(np.count_nonzero((l_idx != r_idx) | (l_coef != r_coef)))


if USE_NUMBA:
    best_permutation = best_permutation_numba
    first_template_match = first_template_match_numba
    associativity_defects = associativity_defects_numba
else:
    best_permutation = best_permutation_numpy
    first_template_match = first_template_match_numpy
    associativity_defects = associativity_defects_numpy
