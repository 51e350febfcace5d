"""Enumeration kernels for the brute-force eta oracle.

A batch of flattened problems is described by

    radix_tab (a,)        number of Pin+ structures of each atom kind
    val_tab   (a, m)      eta numerators per atom kind and label
    restr_tab (a, m)      designated-loop bit per atom kind and label (-1: none)
    ids, signs (l,)       atom kind and orientation sign of every leaf
    leaf_start (p+1,)     problem q owns leaves leaf_start[q]:leaf_start[q+1]
    cons_a, cons_b (c,)   leaf pairs (problem-local) whose loop bits must agree
    cons_start (p+1,)     problem q owns constraints cons_start[q]:cons_start[q+1]
    offsets (p,)          constant numerator added to every sum of problem q

and the kernels return ``(counts, valid)``: a (p, 32) histogram of summed
numerators over compatible assignments and the (p,) number of such assignments.

The labelled variants additionally take

    hbits_tab, loop_tab (a,)  label width and loop-bit position of each atom kind
    drop (l,)                 1 when the leaf's loop bit is shared with an earlier leaf
    out_start (p+1,)          problem q owns out[out_start[q]:out_start[q+1]]

and write, for each compatible assignment, the summed numerator at the index
of its fused label: the leaf label bits in leaf order (structure index j of an
atom is the binary expansion of j, most significant bit first) with shared
loop bits left out.  They return ``(out, hits)``; ``hits`` counts how often
each label was produced, so a bijection shows up as all ones.

Set ``PINETA_DISABLE_NUMBA=1`` to force the numpy path.
"""

import os

import numpy as np

CHUNK = 1 << 16

DISABLED = os.environ.get("PINETA_DISABLE_NUMBA", "").strip().lower() not in ("", "0", "false", "no")

try:
    import numba
except ImportError:  # pragma: no cover
    numba = None


def _one_numpy(radix_tab, val_tab, restr_tab, ids, signs, cons_a, cons_b, offset):
    n = ids.shape[0]
    radices = radix_tab[ids]
    vals = (signs[:, None] * val_tab[ids]) % 32
    restr = restr_tab[ids]
    total = int(np.prod(radices, dtype=np.int64))
    strides = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * radices[i + 1]
    counts = np.zeros(32, dtype=np.int64)
    rows = np.arange(n)
    valid = 0
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        digits = (idx[:, None] // strides[None, :]) % radices[None, :]
        ok = np.ones(idx.shape[0], dtype=bool)
        if cons_a.shape[0]:
            bits = restr[rows[None, :], digits]
            ok &= np.all(bits[:, cons_a] == bits[:, cons_b], axis=1)
        sums = (vals[rows[None, :], digits].sum(axis=1) + offset) % 32
        counts += np.bincount(sums[ok], minlength=32)
        valid += int(ok.sum())
    return counts, valid


def enumerate_numpy(radix_tab, val_tab, restr_tab, ids, signs, leaf_start, cons_a, cons_b, cons_start, offsets):
    p = offsets.shape[0]
    counts = np.zeros((p, 32), dtype=np.int64)
    valid = np.zeros(p, dtype=np.int64)
    for q in range(p):
        lo, hi = leaf_start[q], leaf_start[q + 1]
        ca, cb = cons_start[q], cons_start[q + 1]
        counts[q], valid[q] = _one_numpy(radix_tab, val_tab, restr_tab, ids[lo:hi], signs[lo:hi],
                                         cons_a[ca:cb], cons_b[ca:cb], offsets[q])
    return counts, valid


def _enumerate_loops(radix_tab, val_tab, restr_tab, ids, signs, leaf_start, cons_a, cons_b, cons_start, offsets):
    p = offsets.shape[0]
    counts = np.zeros((p, 32), dtype=np.int64)
    valid = np.zeros(p, dtype=np.int64)
    digits = np.zeros(ids.shape[0], dtype=np.int64)
    for q in range(p):
        lo = leaf_start[q]
        n = leaf_start[q + 1] - lo
        total = 1
        for i in range(n):
            total *= radix_tab[ids[lo + i]]
            digits[lo + i] = 0
        for _ in range(total):
            ok = True
            for c in range(cons_start[q], cons_start[q + 1]):
                a = lo + cons_a[c]
                b = lo + cons_b[c]
                if restr_tab[ids[a], digits[a]] != restr_tab[ids[b], digits[b]]:
                    ok = False
                    break
            if ok:
                s = offsets[q]
                for i in range(lo, lo + n):
                    s += signs[i] * val_tab[ids[i], digits[i]]
                counts[q, s % 32] += 1
                valid[q] += 1
            i = lo + n - 1
            while i >= lo:
                digits[i] += 1
                if digits[i] < radix_tab[ids[i]]:
                    break
                digits[i] = 0
                i -= 1
    return counts, valid


def _label_one_numpy(radix_tab, val_tab, restr_tab, hbits_tab, loop_tab, ids, signs, drop,
                     cons_a, cons_b, offset, out, hits):
    n = ids.shape[0]
    radices = radix_tab[ids]
    total = int(np.prod(radices, dtype=np.int64))
    strides = np.ones(n, dtype=np.int64)
    for i in range(n - 2, -1, -1):
        strides[i] = strides[i + 1] * radices[i + 1]
    rows = np.arange(n)
    for start in range(0, total, CHUNK):
        idx = np.arange(start, min(start + CHUNK, total), dtype=np.int64)
        digits = (idx[:, None] // strides[None, :]) % radices[None, :]
        ok = np.ones(idx.shape[0], dtype=bool)
        if cons_a.shape[0]:
            bits = restr_tab[ids][rows[None, :], digits]
            ok &= np.all(bits[:, cons_a] == bits[:, cons_b], axis=1)
        digits = digits[ok]
        sums = (signs[None, :] * val_tab[ids][rows[None, :], digits]).sum(axis=1) + offset
        code = np.zeros(digits.shape[0], dtype=np.int64)
        for i in range(n):
            h = hbits_tab[ids[i]]
            for b in range(h):
                if drop[i] and b == loop_tab[ids[i]]:
                    continue
                code = code * 2 + ((digits[:, i] >> (h - 1 - b)) & 1)
        out[code] = sums % 32
        np.add.at(hits, code, 1)


def label_numpy(radix_tab, val_tab, restr_tab, hbits_tab, loop_tab, ids, signs, drop, leaf_start,
                cons_a, cons_b, cons_start, offsets, out_start):
    out = np.full(out_start[-1], -1, dtype=np.int64)
    hits = np.zeros(out_start[-1], dtype=np.int64)
    for q in range(offsets.shape[0]):
        lo, hi = leaf_start[q], leaf_start[q + 1]
        ca, cb = cons_start[q], cons_start[q + 1]
        oa, ob = out_start[q], out_start[q + 1]
        _label_one_numpy(radix_tab, val_tab, restr_tab, hbits_tab, loop_tab, ids[lo:hi], signs[lo:hi],
                         drop[lo:hi], cons_a[ca:cb], cons_b[ca:cb], offsets[q], out[oa:ob], hits[oa:ob])
    return out, hits


def _label_loops(radix_tab, val_tab, restr_tab, hbits_tab, loop_tab, ids, signs, drop, leaf_start,
                 cons_a, cons_b, cons_start, offsets, out_start):
    out = np.full(out_start[-1], -1, dtype=np.int64)
    hits = np.zeros(out_start[-1], dtype=np.int64)
    digits = np.zeros(ids.shape[0], dtype=np.int64)
    for q in range(offsets.shape[0]):
        lo = leaf_start[q]
        n = leaf_start[q + 1] - lo
        total = 1
        for i in range(n):
            total *= radix_tab[ids[lo + i]]
            digits[lo + i] = 0
        for _ in range(total):
            ok = True
            for c in range(cons_start[q], cons_start[q + 1]):
                a = lo + cons_a[c]
                b = lo + cons_b[c]
                if restr_tab[ids[a], digits[a]] != restr_tab[ids[b], digits[b]]:
                    ok = False
                    break
            if ok:
                s = offsets[q]
                code = 0
                for i in range(lo, lo + n):
                    k = ids[i]
                    s += signs[i] * val_tab[k, digits[i]]
                    h = hbits_tab[k]
                    for b in range(h):
                        if drop[i] and b == loop_tab[k]:
                            continue
                        code = code * 2 + ((digits[i] >> (h - 1 - b)) & 1)
                out[out_start[q] + code] = s % 32
                hits[out_start[q] + code] += 1
            i = lo + n - 1
            while i >= lo:
                digits[i] += 1
                if digits[i] < radix_tab[ids[i]]:
                    break
                digits[i] = 0
                i -= 1
    return out, hits


if numba is not None:
    enumerate_numba = numba.njit(cache=True, nogil=True)(_enumerate_loops)
    label_numba = numba.njit(cache=True, nogil=True)(_label_loops)
else:  # pragma: no cover
    enumerate_numba = None
    label_numba = None

HAVE_NUMBA = enumerate_numba is not None


def backend() -> str:
    return "numpy" if DISABLED or not HAVE_NUMBA else "numba"


def enumerate_counts(*arrays):
    if backend() == "numba":
        return enumerate_numba(*arrays)
    return enumerate_numpy(*arrays)


def label_values(*arrays):
    if backend() == "numba":
        return label_numba(*arrays)
    return label_numpy(*arrays)
