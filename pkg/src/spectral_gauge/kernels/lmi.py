"""Sparse coefficient matrices of an affine LMI and its barrier derivatives.

For ``Z(v) = F0 + sum_k v_k F_k`` and ``R = Z^{-1}`` the log-det barrier has
gradient ``-<R, F_k>`` and Hessian ``tr(R F_k R F_l)``.  Each ``F_k`` is kept
as a list of explicit ``(row, col, val)`` entries (both triangles).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .. import _backend


@dataclass(frozen=True)
class SparseBasis:
    order: int
    rows: np.ndarray
    cols: np.ndarray
    vals: np.ndarray
    ptr: np.ndarray

    @classmethod
    def from_entries(cls, order, entries):
        """``entries[k]`` is a list of ``(i, j, val)``; symmetric partners are added."""
        rows, cols, vals, ptr = [], [], [], [0]
        for ent in entries:
            for i, j, a in ent:
                rows.append(i)
                cols.append(j)
                vals.append(a)
                if i != j:
                    rows.append(j)
                    cols.append(i)
                    vals.append(a)
            ptr.append(len(rows))
        return cls(order, np.array(rows, dtype=np.int64), np.array(cols, dtype=np.int64),
                   np.array(vals, dtype=np.float64), np.array(ptr, dtype=np.int64))

    @property
    def size(self):
        return len(self.ptr) - 1

    def owner(self):
        return np.repeat(np.arange(self.size), np.diff(self.ptr))

    def assemble(self, f0, v):
        z = np.array(f0, dtype=float)
        np.add.at(z, (self.rows, self.cols), self.vals * np.repeat(v, np.diff(self.ptr)))
        return z

    def inner(self, r):
        """``<R, F_k>`` for every k."""
        contrib = self.vals * r[self.rows, self.cols]
        return np.bincount(self.owner(), weights=contrib, minlength=self.size)

    def adjoint(self, y):
        """``sum_k y_k F_k`` as a dense matrix."""
        return self.assemble(np.zeros((self.order, self.order)), y)

    def hessian(self, r):
        if _backend.current() == "numba":
            return hessian_numba(self, r)
        return hessian_numpy(self, r)


def _hessian_loop(rows, cols, vals, ptr, r):
    m = ptr.shape[0] - 1
    h = np.zeros((m, m))
    for k in range(m):
        for l in range(k, m):
            s = 0.0
            for e in range(ptr[k], ptr[k + 1]):
                re = rows[e]
                ce = cols[e]
                ve = vals[e]
                for f in range(ptr[l], ptr[l + 1]):
                    s += ve * vals[f] * r[ce, rows[f]] * r[cols[f], re]
            h[k, l] = s
            h[l, k] = s
    return h


_hessian_loop_jit = _backend.njit(_hessian_loop)


def hessian_numba(basis: SparseBasis, r):
    return _hessian_loop_jit(basis.rows, basis.cols, basis.vals, basis.ptr,
                             np.ascontiguousarray(r, dtype=np.float64))


def hessian_numpy(basis: SparseBasis, r):
    rows, cols, vals = basis.rows, basis.cols, basis.vals
    t = np.outer(vals, vals) * r[np.ix_(cols, rows)] * r[np.ix_(rows, cols)]
    owner = basis.owner()
    m = basis.size
    tmp = np.zeros((m, t.shape[1]))
    np.add.at(tmp, owner, t)
    h = np.zeros((m, m))
    np.add.at(h.T, owner, tmp.T)
    return 0.5 * (h + h.T)
