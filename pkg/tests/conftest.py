"""Shared fixtures and brute-force oracles used across the test suite."""
import itertools

from monoquiver.quiver_rep import Quiver
from monoquiver.zpn_core import module_elements

A2 = Quiver(2, ((0, 1),))
A3_LINEAR = Quiver(3, ((0, 1), (1, 2)))
A3_SINK = Quiver(3, ((0, 1), (2, 1)))
D4 = Quiver(4, ((0, 3), (1, 3), (2, 3)))


def valid_matrices(source, target, params):
    """All well-defined matrices between the split modules, entrywise."""
    p = params.p
    slots = []
    for b in target:
        for a in source:
            need = p ** max(0, b - a)
            slots.append([v for v in range(p ** b) if v % need == 0])
    r, c = len(target), len(source)
    for flat in itertools.product(*slots):
        yield tuple(tuple(flat[i * c + j] for j in range(c)) for i in range(r))


def raw_apply(entries, target, x, params):
    return tuple(sum(row[j] * x[j] for j in range(len(x))) % params.p ** b
                 for row, b in zip(entries, target))


def raw_compose(a_entries, a_target, b_entries, b_cols, params):
    """a o b entrywise, rows reduced mod the a-target orders."""
    rows = []
    for i, row in enumerate(a_entries):
        mod = params.p ** a_target[i]
        rows.append(tuple(
            sum(row[k] * b_entries[k][j] for k in range(len(b_entries))) % mod
            for j in range(b_cols)))
    return tuple(rows)


def brute_rep_homs(source, target):
    """Every morphism of representations, found by exhaustive search."""
    params = source.params
    quiver = source.quiver
    per_vertex = [list(valid_matrices(source.modules[v].parts,
                                      target.modules[v].parts, params))
                  for v in range(quiver.vertices)]
    out = []
    for combo in itertools.product(*per_vertex):
        ok = True
        for k, (s, t) in enumerate(quiver.arrows):
            cols = len(source.modules[s].parts)
            left = raw_compose(combo[t], target.modules[t].parts,
                               source.maps[k].entries, cols, params)
            right = raw_compose(target.maps[k].entries, target.modules[t].parts,
                                combo[s], cols, params)
            if left != right:
                ok = False
                break
        if ok:
            out.append(combo)
    return out


def rep_elements(rep):
    """All tuples of vertex module elements (tiny reps only)."""
    spaces = [list(module_elements(part.parts, rep.params))
              for part in rep.modules]
    return itertools.product(*spaces)
