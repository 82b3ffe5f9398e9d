"""Compiled inner loop of the switching search (labels must be below 64)."""
import numpy as np
from numba import njit


_GOLDEN = np.uint64(0x9E3779B97F4A7C15)


def build_table(masks) -> np.ndarray:
    """Open-addressing hash set of nonzero uint64 masks (0 marks an empty slot)."""
    size = 8  # power of two, at most 2**24
    while size < 4 * max(len(masks), 1):
        size *= 2
    table = np.zeros(size, dtype=np.uint64)
    for m in masks:
        _insert(table, np.uint64(m))
    return table


@njit(cache=True)
def _slot(table, x):
    return np.int64((x * _GOLDEN) >> np.uint64(40)) & (len(table) - 1)


@njit(cache=True)
def _insert(table, x):
    i = _slot(table, x)
    mask = len(table) - 1
    while table[i] != 0 and table[i] != x:
        i = (i + 1) & mask
    table[i] = x


@njit(cache=True)
def _contains(table, x):
    i = _slot(table, x)
    mask = len(table) - 1
    while table[i] != 0:
        if table[i] == x:
            return True
        i = (i + 1) & mask
    return False


@njit(cache=True)
def scan_conflict(pre, pos_combos, v_combos, f, inc_ptr, inc_idx, masks1, img, conf, e2, stamp):
    """Scan the switches for one conflict; first strict improvement wins.

    ``pre`` lists the conflict's preimage ordered by image label.  u-sets are
    ``pre[pos_combos[a]]``; v-sets are rows of ``v_combos`` (all beta-subsets
    of 1..n in lexicographic order) that avoid the u-set and are not inside
    ``pre``.  Returns ``(a, b, examined)``, with ``a = -1`` when nothing improves.
    """
    one = np.uint64(1)
    beta = pos_combos.shape[1]
    us = np.empty(beta, dtype=np.int64)
    ubit = np.empty(beta, dtype=np.uint64)
    vbit = np.empty(beta, dtype=np.uint64)
    flip = np.empty(beta, dtype=np.uint64)
    pre_mask = np.uint64(0)
    for x in pre:
        pre_mask |= one << np.uint64(x)
    stamp[:] = -1
    tick = 0
    examined = 0
    for a in range(pos_combos.shape[0]):
        u_mask = np.uint64(0)
        for j in range(beta):
            us[j] = pre[pos_combos[a, j]]
            ubit[j] = one << np.uint64(us[j])
            u_mask |= ubit[j]
        for b in range(v_combos.shape[0]):
            v_mask = np.uint64(0)
            for j in range(beta):
                vbit[j] = one << np.uint64(v_combos[b, j])
                v_mask |= vbit[j]
            if v_mask & u_mask or (v_mask & pre_mask) == v_mask:
                continue
            examined += 1
            tick += 1
            for j in range(beta):
                flip[j] = (one << np.uint64(f[us[j]])) | (one << np.uint64(f[v_combos[b, j]]))
            d = 0
            for side in range(2):
                for j in range(beta):
                    w = us[j] if side == 0 else v_combos[b, j]
                    for p in range(inc_ptr[w], inc_ptr[w + 1]):
                        e = inc_idx[p]
                        if stamp[e] == tick:
                            continue
                        stamp[e] = tick
                        m = img[e]
                        em = masks1[e]
                        for i in range(beta):
                            if ((em & ubit[i]) != 0) != ((em & vbit[i]) != 0):
                                m ^= flip[i]
                        d += np.int64(_contains(e2, m)) - np.int64(conf[e])
            if d < 0:
                return a, b, examined
    return -1, -1, examined
