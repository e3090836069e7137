"""Pure-Python census kernel (reference implementation and fallback).

The census input describes the nontrivial paths of a path algebra: for path
``x``, ``src[x]`` and ``tgt[x]`` are vertex numbers and ``parent[x]`` is the
path with the last arrow removed (-1 for arrows).  Paths must be listed so
that parents come first.  ``bad_p``/``bad_q`` list the pairs of paths with a
common target where ``p`` is not a final segment of ``q``.

One call handles every total order whose lowest vertex is ``first``; orders
are visited in lexicographic order of their low-to-high chains, so the first
member met in a class is its smallest chain.
"""

from __future__ import annotations

from itertools import permutations


def fingerprint_bytes(n_paths: int) -> int:
    return (2 * n_paths + 7) // 8


def evaluate_order(rank, src, tgt, parent, bad_p, bad_q):
    """Return (fingerprint int, regular flag) for one rank assignment."""
    P = len(src)
    tailmax = [0] * P
    inner = [0] * P
    maxr = [0] * P
    fp = 0
    for x in range(P):
        rt = rank[tgt[x]]
        par = parent[x]
        if par < 0:
            inner[x] = -1
            tailmax[x] = rt
        else:
            inner[x] = tailmax[par]
            tailmax[x] = rt if rt > tailmax[par] else tailmax[par]
        rs = rank[src[x]]
        m = rs if rs > tailmax[x] else tailmax[x]
        maxr[x] = m
        if m == rs:
            fp |= 1 << (2 * x)
        if m == rt:
            fp |= 1 << (2 * x + 1)
    regular = True
    for b in range(len(bad_p)):
        p, q = bad_p[b], bad_q[b]
        rk = rank[tgt[p]]
        if maxr[p] == rk and rank[src[q]] > rk:
            regular = False
            break
    if regular:
        n = len(rank)
        top = [-1] * n
        for x in range(P):
            rs = rank[src[x]]
            if rs > top[tgt[x]]:
                top[tgt[x]] = rs
        cnt = [0] * n
        for x in range(P):
            rs, rt = rank[src[x]], rank[tgt[x]]
            if rs < rt and inner[x] <= rs and rt < top[src[x]]:
                cnt[src[x]] += 1
                if cnt[src[x]] > 1:
                    regular = False
                    break
    return fp, regular


def census_chunk(n, src, tgt, parent, bad_p, bad_q, first):
    """Classes met among orders whose lowest vertex is ``first``.

    Returns a list of (key bytes, count, chain, below masks, regular, agree)
    in order of first appearance.
    """
    nbytes = fingerprint_bytes(len(src))
    rest = [v for v in range(n) if v != first]
    classes: dict[bytes, list] = {}
    out = []
    rank = [0] * n
    for tail in permutations(rest):
        chain = (first,) + tail
        for pos, v in enumerate(chain):
            rank[v] = pos
        fp, reg = evaluate_order(rank, src, tgt, parent, bad_p, bad_q)
        key = fp.to_bytes(nbytes, "little")
        below = []
        for v in range(n):
            m = 0
            for u in chain[:rank[v]]:
                m |= 1 << u
            below.append(m)
        entry = classes.get(key)
        if entry is None:
            entry = [key, 1, chain, below, reg, True]
            classes[key] = entry
            out.append(entry)
        else:
            entry[1] += 1
            masks = entry[3]
            for v in range(n):
                masks[v] &= below[v]
            if entry[4] != reg:
                entry[5] = False
    return [tuple(e[:3]) + (tuple(e[3]), e[4], e[5]) for e in out]
