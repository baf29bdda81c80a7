"""Vectorized helpers for batches of permutations.

A batch is a C-contiguous ndarray of shape (n, degree) whose rows are image
tuples.  dtype is uint8 for degree <= 255 and uint16 otherwise; all helpers
assume rows are valid permutations.
"""

from __future__ import annotations

import numpy as np

from .errors import OrderCapExceeded


def point_dtype(degree):
    return np.uint8 if degree <= 255 else np.uint16


def as_row(perm_images, degree):
    return np.asarray(perm_images, dtype=point_dtype(degree))


def compose_rows_with(batch, g):
    """Rows x -> x o g (apply g first)."""
    return np.ascontiguousarray(batch[:, g])


def compose_with_rows(g, batch):
    """Rows x -> g o x (apply x first)."""
    return np.ascontiguousarray(g[batch])


def compose_pairwise(a, b):
    """Rows a_j o b_j."""
    return np.take_along_axis(a, b, axis=1)


def invert_rows(batch):
    return np.ascontiguousarray(np.argsort(batch, axis=1).astype(batch.dtype))


def conjugate_rows_by(batch, s, batch_inv):
    """Rows w -> w o s o w^-1, given precomputed row inverses."""
    tmp = s[batch_inv]
    return np.take_along_axis(batch, tmp, axis=1)


def row_orders(batch, max_order=None):
    """Multiplicative order of each row."""
    n, d = batch.shape
    ident = np.arange(d, dtype=batch.dtype)
    orders = np.zeros(n, dtype=np.int64)
    power = batch.copy()
    alive = np.flatnonzero(orders == 0)
    k = 1
    cap = max_order if max_order is not None else 10 * d * d
    while alive.size:
        done = np.all(power[alive] == ident, axis=1)
        orders[alive[done]] = k
        alive = alive[~done]
        if not alive.size:
            break
        if k > cap:
            raise OrderCapExceeded(f"element order exceeds {cap}")
        power[alive] = np.take_along_axis(power[alive], batch[alive], axis=1)
        k += 1
    return orders


def row_keys(batch):
    """Hashable per-row keys (raw bytes)."""
    batch = np.ascontiguousarray(batch)
    return [r.tobytes() for r in batch]


def unique_rows_keep_order(batch):
    """Drop duplicate rows, keeping first occurrences in order."""
    seen = set()
    keep = []
    for i, key in enumerate(row_keys(batch)):
        if key not in seen:
            seen.add(key)
            keep.append(i)
    return batch[keep]


class ElementTable:
    """Element list of a finite permutation group plus O(1) membership."""

    def __init__(self, arr):
        self.arr = np.ascontiguousarray(arr)
        self.degree = arr.shape[1]
        self.index = {key: i for i, key in enumerate(row_keys(self.arr))}
        self._inv = None
        self._orders = None

    def __len__(self):
        return self.arr.shape[0]

    @property
    def inv(self):
        if self._inv is None:
            self._inv = invert_rows(self.arr)
        return self._inv

    @property
    def orders(self):
        if self._orders is None:
            self._orders = row_orders(self.arr)
        return self._orders

    def row_index(self, row):
        key = np.ascontiguousarray(row).tobytes()
        return self.index.get(key, -1)

    def lookup_rows(self, batch):
        """Indices of rows (must all be members)."""
        idx = self.index
        out = np.fromiter(
            (idx[k] for k in row_keys(batch)), dtype=np.int64, count=batch.shape[0]
        )
        return out

    def contains_rows(self, batch):
        idx = self.index
        return np.fromiter(
            (k in idx for k in row_keys(batch)), dtype=bool, count=batch.shape[0]
        )


def bfs_closure(gen_rows, cap, start_rows=None):
    """All products of the generators (the generated subgroup), as an array.

    Breadth-first over right multiplication; rows come out in discovery order
    starting from the identity.  Raises OrderCapExceeded past cap.
    """
    gen_rows = [np.asarray(g) for g in gen_rows]
    d = gen_rows[0].shape[0]
    dt = gen_rows[0].dtype
    if start_rows is None:
        start_rows = np.arange(d, dtype=dt)[None, :]
    found = {}
    rows = []
    for r in np.ascontiguousarray(start_rows):
        key = r.tobytes()
        if key not in found:
            found[key] = len(rows)
            rows.append(r)
    frontier = np.array(rows, dtype=dt)
    while frontier.shape[0]:
        new = []
        for g in gen_rows:
            prod = compose_rows_with(frontier, g)
            for r in prod:
                key = r.tobytes()
                if key not in found:
                    found[key] = len(rows)
                    rows.append(r)
                    new.append(r)
        if len(rows) > cap:
            raise OrderCapExceeded(f"closure exceeds cap {cap}")
        frontier = np.array(new, dtype=dt) if new else np.empty((0, d), dtype=dt)
    return np.ascontiguousarray(np.array(rows, dtype=dt))
