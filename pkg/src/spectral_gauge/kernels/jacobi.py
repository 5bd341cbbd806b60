"""Cyclic Jacobi eigenvalue iteration for dense symmetric matrices."""

from __future__ import annotations

import math

import numpy as np

from .. import _backend


def _rotation(app, aqq, apq):
    theta = (aqq - app) / (2.0 * apq)
    if abs(theta) > 1e150:
        t = 0.5 / theta
    else:
        t = 1.0 / (abs(theta) + math.sqrt(theta * theta + 1.0))
        if theta < 0.0:
            t = -t
    c = 1.0 / math.sqrt(t * t + 1.0)
    return c, t * c


_rotation_jit = _backend.njit(_rotation)


def _jacobi_loop(m, tol, max_sweeps):
    # cyclic-by-row sweeps; the first three skip rotations below a threshold
    n = m.shape[0]
    a = m.copy()
    v = np.eye(n)
    fro = math.sqrt(np.sum(a * a))
    target = tol * fro
    off = 0.0
    for sweep in range(max_sweeps + 1):
        off = 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                off += a[p, q] * a[p, q]
        off = math.sqrt(2.0 * off)
        if off <= target:
            return a, v, sweep, off, True
        if sweep == max_sweeps:
            break
        thresh = 0.2 * off / (n * n) if sweep < 3 else 0.0
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= thresh or apq == 0.0:
                    continue
                c, s = _rotation_jit(a[p, p], a[q, q], apq)
                for k in range(n):
                    akp = a[k, p]
                    akq = a[k, q]
                    a[k, p] = c * akp - s * akq
                    a[k, q] = s * akp + c * akq
                for k in range(n):
                    apk = a[p, k]
                    aqk = a[q, k]
                    a[p, k] = c * apk - s * aqk
                    a[q, k] = s * apk + c * aqk
                a[p, q] = 0.0
                a[q, p] = 0.0
                for k in range(n):
                    vkp = v[k, p]
                    vkq = v[k, q]
                    v[k, p] = c * vkp - s * vkq
                    v[k, q] = s * vkp + c * vkq
    return a, v, max_sweeps, off, False


_jacobi_loop_jit = _backend.njit(_jacobi_loop)


def _round_robin(n):
    """Disjoint (p, q) pairings covering every pair once per n-1 (or n) rounds."""
    m = n + (n % 2)
    order = list(range(m))
    rounds = []
    for _ in range(m - 1):
        pairs = [(order[i], order[m - 1 - i]) for i in range(m // 2)]
        pairs = [(min(p, q), max(p, q)) for p, q in pairs if p < n and q < n]
        if pairs:
            arr = np.array(pairs, dtype=np.int64)
            rounds.append((arr[:, 0], arr[:, 1]))
        order = [order[0], order[-1]] + order[1:-1]
    return rounds


def _jacobi_parallel(m, tol, max_sweeps):
    n = m.shape[0]
    a = m.copy()
    v = np.eye(n)
    target = tol * math.sqrt(np.sum(a * a))
    rounds = _round_robin(n)
    iu = np.triu_indices(n, 1)
    off = 0.0
    for sweep in range(max_sweeps + 1):
        off = math.sqrt(2.0 * np.sum(a[iu] ** 2))
        if off <= target:
            return a, v, sweep, off, True
        if sweep == max_sweeps:
            break
        for P, Q in rounds:
            apq = a[P, Q]
            active = apq != 0.0
            if not active.any():
                continue
            P, Q, apq = P[active], Q[active], apq[active]
            theta = (a[Q, Q] - a[P, P]) / (2.0 * apq)
            big = np.abs(theta) > 1e150
            safe = np.where(big, 1.0, theta)
            t = np.where(big, 0.5 / np.where(big, theta, 1.0),
                         np.sign(safe) / (np.abs(safe) + np.sqrt(safe * safe + 1.0)))
            t = np.where((theta == 0.0) & ~big, 1.0, t)
            c = 1.0 / np.sqrt(t * t + 1.0)
            s = t * c
            ap, aq = a[:, P].copy(), a[:, Q].copy()
            a[:, P] = ap * c - aq * s
            a[:, Q] = ap * s + aq * c
            rp, rq = a[P, :].copy(), a[Q, :].copy()
            a[P, :] = c[:, None] * rp - s[:, None] * rq
            a[Q, :] = s[:, None] * rp + c[:, None] * rq
            a[P, Q] = 0.0
            a[Q, P] = 0.0
            vp, vq = v[:, P].copy(), v[:, Q].copy()
            v[:, P] = vp * c - vq * s
            v[:, Q] = vp * s + vq * c
    return a, v, max_sweeps, off, False


def _finish(a, v, sweeps, off, ok):
    values = np.diag(a).copy()
    order = np.argsort(values, kind="stable")
    return values[order], v[:, order], sweeps, off, ok


def jacobi_numba(m, tol=1e-12, max_sweeps=100):
    m = np.ascontiguousarray(m, dtype=np.float64)
    return _finish(*_jacobi_loop_jit(m, float(tol), int(max_sweeps)))


def jacobi_numpy(m, tol=1e-12, max_sweeps=100):
    m = np.ascontiguousarray(m, dtype=np.float64)
    return _finish(*_jacobi_parallel(m, float(tol), int(max_sweeps)))


def jacobi_eigh(m, tol=1e-12, max_sweeps=100):
    """Return ``(values ascending, vectors, sweeps, offdiag_norm, converged)``."""
    if _backend.current() == "numba":
        return jacobi_numba(m, tol, max_sweeps)
    return jacobi_numpy(m, tol, max_sweeps)
