"""Canonical labeling and automorphism orbits by partition refinement.

The search follows the usual individualization-refinement scheme: refine the
ordered partition to an equitable one, individualize each vertex of the first
non-singleton cell in turn, and recurse until the partition is discrete.  Each
leaf yields a labeling; the canonical one has the smallest upper-triangle code
(graph6 bit order).  Leaves with equal codes give automorphisms, which are used
to prune equivalent subtrees and to compute vertex orbits.

The work functions take raw adjacency rows so the generator can call them
without building ``Graph`` objects.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from distk.graph import Graph


@dataclass(frozen=True, order=True)
class CanonicalForm:
    certificate: bytes
    n: int

    def __str__(self) -> str:
        return self.certificate.decode("ascii")


def _refine(rows, lab, cellend, n, active):
    """Refine in place to the coarsest equitable partition finer than the input.

    ``cellend[s]`` is the end (exclusive) of the cell starting at position ``s``.
    ``active`` holds starts of cells still to be used as splitters.
    """
    cells = 0
    s = 0
    while s < n:
        cells += 1
        s = cellend[s]
    while active and cells < n:
        w = min(active)
        active.discard(w)
        ew = cellend[w]
        if ew - w == 1:
            wmask = 1 << lab[w]
        else:
            wmask = 0
            for i in range(w, ew):
                wmask |= 1 << lab[i]
        s = 0
        while s < n:
            e = cellend[s]
            if e - s == 1:
                s = e
                continue
            cell = lab[s:e]
            cnts = [(rows[v] & wmask).bit_count() for v in cell]
            lo = min(cnts)
            if lo == max(cnts):
                s = e
                continue
            order = sorted(range(e - s), key=cnts.__getitem__)
            lab[s:e] = [cell[i] for i in order]
            # boundaries between runs of equal count
            pieces = [s]
            prev = cnts[order[0]]
            for j in range(1, e - s):
                c = cnts[order[j]]
                if c != prev:
                    pieces.append(s + j)
                    prev = c
            pieces.append(e)
            cells += len(pieces) - 2
            was_active = s in active
            big = 0
            if not was_active:
                size = 0
                for j in range(len(pieces) - 1):
                    if pieces[j + 1] - pieces[j] > size:
                        size = pieces[j + 1] - pieces[j]
                        big = j
            for j in range(len(pieces) - 1):
                a = pieces[j]
                cellend[a] = pieces[j + 1]
                if was_active or j != big:
                    active.add(a)
            s = e


def equitable_partition(rows: Sequence[int], n: int) -> tuple[list[int], list[int]]:
    """Ordered coarsest equitable partition as ``(lab, cellend)``.

    The cells, as vertex sets in order, are an isomorphism invariant; degree
    classes come out in ascending order, so the last cell has maximum degree.
    """
    lab = list(range(n))
    cellend = [n] * n
    _refine(rows, lab, cellend, n, {0})
    return lab, cellend


def _code(rows, lab, n):
    code = 0
    for j in range(1, n):
        rj = rows[lab[j]]
        for i in range(j):
            code = code << 1 | (rj >> lab[i] & 1)
    return code


def _find(parent, x):
    while parent[x] != x:
        parent[x] = parent[parent[x]]
        x = parent[x]
    return x


def orbits_from_generators(n: int, gens: Sequence[Sequence[int]]) -> list[int]:
    """Orbit representative (smallest vertex) for every vertex."""
    parent = list(range(n))
    for g in gens:
        for v in range(n):
            a, b = _find(parent, v), _find(parent, g[v])
            if a != b:
                if a < b:
                    parent[b] = a
                else:
                    parent[a] = b
    return [_find(parent, v) for v in range(n)]


class _Search:
    __slots__ = ("rows", "n", "first_lab", "first_code", "first_path",
                 "best_lab", "best_code", "gens")

    def __init__(self, rows, n):
        self.rows = rows
        self.n = n
        self.first_lab = None
        self.first_code = None
        self.first_path = None
        self.best_lab = None
        self.best_code = None
        self.gens = []

    def _node(self, lab, cellend, path):
        n = self.n
        s = 0
        while s < n and cellend[s] - s == 1:
            s += 1
        if s == n:
            return self._leaf(lab, path)
        e = cellend[s]
        depth = len(path)
        explored = []
        ngens = 0
        orb = None
        for v in lab[s:e]:
            if explored and self.gens:
                # recompute orbits of the pointwise stabiliser only when new generators appeared
                if len(self.gens) != ngens:
                    ngens = len(self.gens)
                    fixing = [g for g in self.gens if all(g[p] == p for p in path)]
                    orb = orbits_from_generators(n, fixing) if fixing else None
                if orb is not None:
                    ov = orb[v]
                    if any(orb[u] == ov for u in explored):
                        continue
            clab = lab[:]
            ccell = cellend[:]
            i = clab.index(v, s, e)
            clab[i] = clab[s]
            clab[s] = v
            ccell[s] = s + 1
            ccell[s + 1] = e
            _refine(self.rows, clab, ccell, n, {s})
            path.append(v)
            back = self._node(clab, ccell, path)
            path.pop()
            if back is not None and back < depth:
                return back
            explored.append(v)
        return None

    def _leaf(self, lab, path):
        code = _code(self.rows, lab, self.n)
        if self.first_lab is None:
            self.first_lab = self.best_lab = lab
            self.first_code = self.best_code = code
            self.first_path = list(path)
            return None
        if code == self.first_code:
            self.gens.append(_leaf_map(self.first_lab, lab))
            common = 0
            for a, b in zip(path, self.first_path):
                if a != b:
                    break
                common += 1
            return common
        if code < self.best_code:
            self.best_code = code
            self.best_lab = lab
        elif code == self.best_code:
            self.gens.append(_leaf_map(self.best_lab, lab))
        return None


def _leaf_map(lab1, lab2):
    perm = [0] * len(lab1)
    for a, b in zip(lab1, lab2):
        perm[a] = b
    return perm


def canonical_labeling(rows: Sequence[int], n: int):
    """Return ``(lab, code, generators)``.

    ``lab[i]`` is the vertex placed at canonical position ``i``; ``code`` is the
    upper-triangle bit code of the relabeled graph; ``generators`` generate the
    automorphism group.
    """
    if n == 1:
        return [0], 0, []
    lab = list(range(n))
    cellend = [n] * n
    srch = _Search(rows, n)
    _refine(rows, lab, cellend, n, {0})
    srch._node(lab, cellend, [])
    return srch.best_lab, srch.best_code, srch.gens


def canonical_rows(rows: Sequence[int], n: int) -> tuple[int, ...]:
    lab, _, _ = canonical_labeling(rows, n)
    pos = [0] * n
    for i, v in enumerate(lab):
        pos[v] = i
    out = [0] * n
    for v in range(n):
        r = rows[v]
        m = 0
        while r:
            b = r & -r
            m |= 1 << pos[b.bit_length() - 1]
            r ^= b
        out[pos[v]] = m
    return tuple(out)


def automorphism_orbits(g: Graph) -> list[int]:
    _, _, gens = canonical_labeling(g.rows, g.n)
    return orbits_from_generators(g.n, gens)


def canonical_form(g: Graph) -> CanonicalForm:
    from distk.graph6 import emit_graph6

    canon = Graph(g.n, canonical_rows(g.rows, g.n))
    return CanonicalForm(emit_graph6(canon).encode("ascii"), g.n)


def is_isomorphic(g: Graph, h: Graph) -> bool:
    if g.n != h.n:
        return False
    if sum(r.bit_count() for r in g.rows) != sum(r.bit_count() for r in h.rows):
        return False
    return canonical_form(g) == canonical_form(h)
