"""Pure-Python kernels; the reference twin of ``_kernels.pyx``."""


def _prepare(ngens, relators):
    # relators checked at the depth of their last-assigned generator
    checks = [[] for _ in range(ngens)]
    for word in relators:
        if not word:
            continue
        flat = []
        for pos, exp in word:
            flat.extend([(pos, exp < 0)] * abs(exp))
        checks[max(p for p, _ in word)].append(flat)
    return checks


def enumerate_homs(table, inv, ngens, relators, candidates, budget):
    """All assignments ``gen -> element index`` killing every relator.

    ``candidates[g]`` lists the admissible element indices for generator
    ``g``.  Returns ``(solutions, nodes, complete)``; ``complete`` is False
    when more than ``budget`` partial assignments were visited.
    """
    if ngens == 0:
        ok = all(not w for w in relators)
        return ([()] if ok else []), 0, True
    checks = _prepare(ngens, relators)
    assign = [0] * ngens
    choice = [0] * ngens
    out = []
    nodes = 0
    depth = 0
    while depth >= 0:
        cands = candidates[depth]
        if choice[depth] >= len(cands):
            choice[depth] = 0
            depth -= 1
            if depth >= 0:
                choice[depth] += 1
            continue
        nodes += 1
        if nodes > budget:
            return out, nodes, False
        assign[depth] = cands[choice[depth]]
        good = True
        for flat in checks[depth]:
            x = 0
            for pos, neg in flat:
                v = assign[pos]
                x = table[x][inv[v] if neg else v]
            if x:
                good = False
                break
        if not good:
            choice[depth] += 1
        elif depth == ngens - 1:
            out.append(tuple(assign))
            choice[depth] += 1
        else:
            depth += 1
    return out, nodes, True


def eval_word(table, inv, assign, word):
    x = 0
    for pos, exp in word:
        v = assign[pos]
        if exp < 0:
            v, exp = inv[v], -exp
        for _ in range(exp):
            x = table[x][v]
    return x
