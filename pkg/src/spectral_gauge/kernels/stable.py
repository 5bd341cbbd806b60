"""Bitset kernels for stable sets: enumeration, maximality, max-weight search.

Vertex sets are int64 masks (bit ``v`` set iff ``v`` is in the set), so these
kernels serve graphs up to 62 vertices; callers apply tighter guards.
"""

from __future__ import annotations

import numpy as np

from .. import _backend


def _enumerate_dfs(nbr):
    n = nbr.shape[0]
    cap = 1024
    out = np.empty(cap, dtype=np.int64)
    count = 0
    stack_mask = np.empty(n * n + 2, dtype=np.int64)
    stack_next = np.empty(n * n + 2, dtype=np.int64)
    top = 0
    stack_mask[0] = 0
    stack_next[0] = 0
    top = 1
    while top > 0:
        top -= 1
        mask = stack_mask[top]
        start = stack_next[top]
        if count == cap:
            grown = np.empty(2 * cap, dtype=np.int64)
            grown[:cap] = out
            out = grown
            cap *= 2
        out[count] = mask
        count += 1
        for v in range(start, n):
            if nbr[v] & mask == 0:
                stack_mask[top] = mask | (np.int64(1) << v)
                stack_next[top] = v + 1
                top += 1
    res = out[:count].copy()
    res.sort()
    return res


_enumerate_dfs_jit = _backend.njit(_enumerate_dfs)


def _enumerate_extend(nbr):
    masks = np.zeros(1, dtype=np.int64)
    for v, nv in enumerate(nbr):
        ok = masks[(masks & nv) == 0]
        masks = np.concatenate([masks, ok | (np.int64(1) << v)])
    return np.sort(masks)


def _maximal_loop(masks, nbr):
    n = nbr.shape[0]
    keep = np.zeros(masks.shape[0], dtype=np.bool_)
    for idx in range(masks.shape[0]):
        s = masks[idx]
        ok = True
        for v in range(n):
            if (s >> v) & 1 == 0 and nbr[v] & s == 0:
                ok = False
                break
        keep[idx] = ok
    return masks[keep]


_maximal_loop_jit = _backend.njit(_maximal_loop)


def _maximal_vectorized(masks, nbr):
    keep = np.ones(masks.shape[0], dtype=bool)
    for v, nv in enumerate(nbr):
        keep &= (((masks >> v) & 1) == 1) | ((masks & nv) != 0)
    return masks[keep]


def _branch_and_bound(nbr, w):
    # include/exclude on the lowest candidate; bound = weight + candidate total
    n = nbr.shape[0]
    cand0 = np.int64(0)
    for v in range(n):
        if w[v] > 0.0:
            cand0 |= np.int64(1) << v
    size = 2 * n + 4
    s_mask = np.zeros(size, dtype=np.int64)
    s_cand = np.zeros(size, dtype=np.int64)
    s_wt = np.zeros(size)
    s_cand[0] = cand0
    top = 1
    best = 0.0
    best_mask = np.int64(0)
    nodes = 0
    while top > 0:
        top -= 1
        mask = s_mask[top]
        cand = s_cand[top]
        wt = s_wt[top]
        nodes += 1
        if wt > best:
            best = wt
            best_mask = mask
        if cand == 0:
            continue
        bound = wt
        v = -1
        for u in range(n):
            if (cand >> u) & 1:
                bound += w[u]
                if v < 0:
                    v = u
        if bound <= best:
            continue
        bit = np.int64(1) << v
        s_mask[top] = mask
        s_cand[top] = cand & ~bit
        s_wt[top] = wt
        top += 1
        s_mask[top] = mask | bit
        s_cand[top] = cand & ~bit & ~nbr[v]
        s_wt[top] = wt + w[v]
        top += 1
    return best, best_mask, nodes


_branch_and_bound_jit = _backend.njit(_branch_and_bound)


def _prep(nbr):
    return np.ascontiguousarray(np.asarray(nbr, dtype=np.int64))


def stable_masks_numba(nbr):
    return _enumerate_dfs_jit(_prep(nbr))


def stable_masks_numpy(nbr):
    return _enumerate_extend(_prep(nbr))


def maximal_filter_numba(masks, nbr):
    return _maximal_loop_jit(np.asarray(masks, dtype=np.int64), _prep(nbr))


def maximal_filter_numpy(masks, nbr):
    return _maximal_vectorized(np.asarray(masks, dtype=np.int64), _prep(nbr))


def max_weight_stable_numba(nbr, w):
    best, mask, nodes = _branch_and_bound_jit(_prep(nbr), np.asarray(w, dtype=np.float64))
    return float(best), int(mask), int(nodes)


def max_weight_stable_numpy(nbr, w):
    # uncompiled branch and bound; the arithmetic is identical
    best, mask, nodes = _branch_and_bound(_prep(nbr), np.asarray(w, dtype=np.float64))
    return float(best), int(mask), int(nodes)


def stable_masks(nbr, maximal_only=False):
    """All stable sets as sorted int64 masks, optionally only the maximal ones."""
    if _backend.current() == "numba":
        masks = stable_masks_numba(nbr)
        return maximal_filter_numba(masks, nbr) if maximal_only else masks
    masks = stable_masks_numpy(nbr)
    return maximal_filter_numpy(masks, nbr) if maximal_only else masks


def max_weight_stable(nbr, w):
    """Return ``(weight, mask, nodes)`` for a maximum-weight stable set."""
    if _backend.current() == "numba":
        return max_weight_stable_numba(nbr, w)
    return max_weight_stable_numpy(nbr, w)
