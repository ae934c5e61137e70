# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled kernels; same contract as ``_kernels_py``."""

from libc.stdlib cimport malloc, free


def enumerate_homs(table, inv, int ngens, relators, candidates, long long budget):
    if ngens == 0:
        ok = all(not w for w in relators)
        return ([()] if ok else []), 0, True

    cdef int order = len(inv)
    cdef int i, j, k, d, p, e, n_flat = 0, n_rel = 0, n_cand = 0
    cdef int *tab = <int *> malloc(order * order * sizeof(int))
    cdef int *iv = <int *> malloc(order * sizeof(int))
    for i in range(order):
        iv[i] = inv[i]
        row = table[i]
        for j in range(order):
            tab[i * order + j] = row[j]

    # group relators by the depth at which they become fully assigned
    by_depth = [[] for _ in range(ngens)]
    for word in relators:
        if word:
            by_depth[max(pos for pos, _ in word)].append(word)
    for lst in by_depth:
        for word in lst:
            n_rel += 1
            for pos, exp in word:
                n_flat += abs(exp)
    for c in candidates:
        n_cand += len(c)

    cdef int *flat_pos = <int *> malloc((n_flat + 1) * sizeof(int))
    cdef char *flat_neg = <char *> malloc((n_flat + 1) * sizeof(char))
    cdef int *rel_start = <int *> malloc((n_rel + 1) * sizeof(int))
    cdef int *depth_rel = <int *> malloc((ngens + 1) * sizeof(int))
    cdef int *cand = <int *> malloc((n_cand + 1) * sizeof(int))
    cdef int *cand_start = <int *> malloc((ngens + 1) * sizeof(int))
    cdef int *assign = <int *> malloc(ngens * sizeof(int))
    cdef int *choice = <int *> malloc(ngens * sizeof(int))

    cdef int f = 0, r = 0
    for d in range(ngens):
        depth_rel[d] = r
        for word in by_depth[d]:
            rel_start[r] = f
            r += 1
            for pos, exp in word:
                for k in range(abs(exp)):
                    flat_pos[f] = pos
                    flat_neg[f] = 1 if exp < 0 else 0
                    f += 1
    depth_rel[ngens] = r
    rel_start[r] = f
    k = 0
    for d in range(ngens):
        cand_start[d] = k
        for c in candidates[d]:
            cand[k] = c
            k += 1
    cand_start[ngens] = k

    out = []
    cdef long long nodes = 0
    cdef int depth = 0, x, v, good, q
    cdef bint complete = True
    for d in range(ngens):
        choice[d] = 0
    try:
        while depth >= 0:
            if cand_start[depth] + choice[depth] >= cand_start[depth + 1]:
                choice[depth] = 0
                depth -= 1
                if depth >= 0:
                    choice[depth] += 1
                continue
            nodes += 1
            if nodes > budget:
                complete = False
                break
            assign[depth] = cand[cand_start[depth] + choice[depth]]
            good = 1
            for q in range(depth_rel[depth], depth_rel[depth + 1]):
                x = 0
                for p in range(rel_start[q], rel_start[q + 1]):
                    v = assign[flat_pos[p]]
                    if flat_neg[p]:
                        v = iv[v]
                    x = tab[x * order + v]
                if x != 0:
                    good = 0
                    break
            if not good:
                choice[depth] += 1
            elif depth == ngens - 1:
                out.append(tuple([assign[i] for i in range(ngens)]))
                choice[depth] += 1
            else:
                depth += 1
    finally:
        free(tab); free(iv); free(flat_pos); free(flat_neg); free(rel_start)
        free(depth_rel); free(cand); free(cand_start); free(assign); free(choice)
    return out, nodes, complete


def eval_word(table, inv, assign, word):
    cdef int x = 0, v, e, k
    for pos, exp in word:
        v = assign[pos]
        e = exp
        if e < 0:
            v = inv[v]
            e = -e
        for k in range(e):
            x = table[x][v]
    return x
