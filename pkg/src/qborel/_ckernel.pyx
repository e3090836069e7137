# distutils: language = c++
# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled census kernel; same contract as ``_pykernel.census_chunk``."""

from libc.stdint cimport uint64_t
from libcpp.algorithm cimport next_permutation
from libcpp.string cimport string
from libcpp.unordered_map cimport unordered_map
from libcpp.vector cimport vector


cdef void _run(int n, const vector[int]& src, const vector[int]& tgt,
               const vector[int]& parent, const vector[int]& bad_p,
               const vector[int]& bad_q, int first,
               vector[string]& keys, vector[long long]& counts,
               vector[int]& chains, vector[uint64_t]& masks,
               vector[int]& regular, vector[int]& agree) noexcept nogil:
    cdef int P = <int>src.size()
    cdef int B = <int>bad_p.size()
    cdef int nbytes = (2 * P + 7) // 8
    cdef vector[int] chain
    cdef vector[int] rank = vector[int](n)
    cdef vector[int] tailmax = vector[int](P)
    cdef vector[int] inner = vector[int](P)
    cdef vector[int] maxr = vector[int](P)
    cdef vector[int] top = vector[int](n)
    cdef vector[int] cnt = vector[int](n)
    cdef vector[uint64_t] below = vector[uint64_t](n)
    cdef unordered_map[string, int] index
    cdef string key
    cdef int v, x, b, pos, rs, rt, m, par, cid, p, q, rk
    cdef bint reg
    cdef int flag
    cdef uint64_t acc

    chain.push_back(first)
    for v in range(n):
        if v != first:
            chain.push_back(v)
    key.resize(nbytes)
    while True:
        for pos in range(n):
            rank[chain[pos]] = pos
        for b in range(nbytes):
            key[b] = 0
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
                key[(2 * x) >> 3] = <char>(<unsigned char>key[(2 * x) >> 3] | (1 << ((2 * x) & 7)))
            if m == rt:
                key[(2 * x + 1) >> 3] = <char>(<unsigned char>key[(2 * x + 1) >> 3] | (1 << ((2 * x + 1) & 7)))
        reg = True
        for b in range(B):
            p = bad_p[b]
            q = bad_q[b]
            rk = rank[tgt[p]]
            if maxr[p] == rk and rank[src[q]] > rk:
                reg = False
                break
        if reg:
            for v in range(n):
                top[v] = -1
                cnt[v] = 0
            for x in range(P):
                rs = rank[src[x]]
                if rs > top[tgt[x]]:
                    top[tgt[x]] = rs
            for x in range(P):
                rs = rank[src[x]]
                rt = rank[tgt[x]]
                if rs < rt and inner[x] <= rs and rt < top[src[x]]:
                    cnt[src[x]] += 1
                    if cnt[src[x]] > 1:
                        reg = False
                        break
        acc = 0
        for pos in range(n):
            below[chain[pos]] = acc
            acc |= (<uint64_t>1) << chain[pos]
        flag = 1 if reg else 0
        if index.count(key) == 0:
            cid = <int>keys.size()
            index[key] = cid
            keys.push_back(key)
            counts.push_back(1)
            for pos in range(n):
                chains.push_back(chain[pos])
            for v in range(n):
                masks.push_back(below[v])
            regular.push_back(flag)
            agree.push_back(1)
        else:
            cid = index[key]
            counts[cid] += 1
            for v in range(n):
                masks[cid * n + v] &= below[v]
            if regular[cid] != flag:
                agree[cid] = 0
        if not next_permutation(chain.begin() + 1, chain.end()):
            break


def census_chunk(int n, src, tgt, parent, bad_p, bad_q, int first):
    if n > 64:
        raise ValueError("at most 64 vertices")
    cdef vector[int] vsrc = src
    cdef vector[int] vtgt = tgt
    cdef vector[int] vpar = parent
    cdef vector[int] vbp = bad_p
    cdef vector[int] vbq = bad_q
    cdef vector[string] keys
    cdef vector[long long] counts
    cdef vector[int] chains
    cdef vector[uint64_t] masks
    cdef vector[int] regular
    cdef vector[int] agree
    with nogil:
        _run(n, vsrc, vtgt, vpar, vbp, vbq, first, keys, counts, chains, masks, regular, agree)
    out = []
    cdef size_t c
    cdef int v
    cdef bytes kb
    for c in range(keys.size()):
        kb = keys[c]
        chain = []
        below = []
        for v in range(n):
            chain.append(chains[c * n + v])
            below.append(masks[c * n + v])
        out.append((kb, counts[c], tuple(chain), tuple(below),
                    bool(regular[c]), bool(agree[c])))
    return out
