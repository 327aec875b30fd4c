"""Isomorph-free graph generation and exact distance-k extremal search.

Graphs are generated one vertex at a time by canonical augmentation: a child
``C`` built from parent ``P`` by adding vertex ``v`` is kept only if ``v`` lies
in the automorphism orbit of ``C``'s canonical deletion vertex, and parents try
one neighbourhood per orbit of ``Aut(P)`` on vertex subsets.  Each isomorphism
class is then produced exactly once, with no global table.

The canonical deletion vertex is the vertex of maximum degree, ties broken in
turn by the sum of neighbour degrees, the number of triangles through it, the
latest cell of the ordered equitable partition, and finally the largest
canonical position.  The cheap invariants settle most children without a
canonical labeling.
"""

from __future__ import annotations

import enum
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Iterator, Sequence

from distk.canon import (
    CanonicalForm,
    canonical_form,
    canonical_labeling,
    equitable_partition,
    orbits_from_generators,
)
from distk.graph import (
    MAX_VERTICES,
    Graph,
    distance_k_rows,
    rows_bipartite,
    rows_clique_number,
    rows_connected,
    rows_triangle_free,
)
from distk.graph6 import Graph6Error, parse_graph6

INTERNAL_CAP = 10
WORKERS_ENV = "DISTK_WORKERS"


class SearchError(ValueError):
    pass


class SearchCapError(SearchError):
    pass


class InfeasibleProblem(SearchError):
    pass


class StreamParseError(SearchError):
    def __init__(self, line_no: int, message: str):
        super().__init__(f"line {line_no}: {message}")
        self.line_no = line_no


class DuplicateGraphError(SearchError):
    def __init__(self, line_no: int, first_line_no: int):
        super().__init__(f"line {line_no}: isomorphic to line {first_line_no}")
        self.line_no = line_no
        self.first_line_no = first_line_no


class ClassFilter(str, enum.Enum):
    ALL = "all"
    CONNECTED = "connected"
    TRIANGLE_FREE_NONBIPARTITE_DIRECT = "triangle-free-nonbipartite"


class Source(str, enum.Enum):
    INTERNAL_GENERATOR = "internal"
    EXTERNAL_GRAPH6_STREAM = "file"


# --------------------------------------------------------------------------
# canonical augmentation
# --------------------------------------------------------------------------


def _subset_reps(m: int, gens: list[list[int]], allowed: list[int] | None,
                 min_size: int = 0) -> list[int]:
    """One vertex subset (as bitmask) per orbit of the group on subsets of at
    least ``min_size`` vertices."""
    if allowed is None:
        allowed = range(1 << m)
    if min_size:
        allowed = [s for s in allowed if s.bit_count() >= min_size]
    if not gens:
        return list(allowed)
    tables = []
    for g in gens:
        img = [0] * (1 << m)
        for mask in range(1, 1 << m):
            low = mask & -mask
            img[mask] = img[mask ^ low] | 1 << g[low.bit_length() - 1]
        tables.append(img)
    seen = bytearray(1 << m)
    reps = []
    for mask in allowed:
        if seen[mask]:
            continue
        reps.append(mask)
        seen[mask] = 1
        stack = [mask]
        while stack:
            x = stack.pop()
            for img in tables:
                y = img[x]
                if not seen[y]:
                    seen[y] = 1
                    stack.append(y)
    return reps


def _independent_sets(rows: Sequence[int], m: int) -> list[int]:
    out = [0]
    for v in range(m):
        bit = 1 << v
        nb = rows[v]
        out += [s | bit for s in out if not s & nb]
    out.sort()
    return out


def _narrow(cand: list[int], key, new: int) -> list[int] | None:
    """Keep the candidates maximising ``key``; None once ``new`` drops out."""
    vals = {v: key(v) for v in cand}
    top = max(vals.values())
    if vals[new] != top:
        return None
    return [v for v in cand if vals[v] == top]


def _accepted(rows: list[int], n: int) -> tuple[bool, list[list[int]] | None]:
    """Whether the last vertex is the canonical deletion vertex, plus the
    automorphism generators when they were computed along the way."""
    new = n - 1
    degs = [r.bit_count() for r in rows]

    def nbr_degrees(v):
        s, r = 0, rows[v]
        while r:
            b = r & -r
            s += degs[b.bit_length() - 1]
            r ^= b
        return s

    def triangles(v):
        s, r = 0, rows[v]
        while r:
            b = r & -r
            s += (rows[b.bit_length() - 1] & rows[v]).bit_count()
            r ^= b
        return s

    cand: list[int] | None = list(range(n))
    for key in (degs.__getitem__, nbr_degrees, triangles):
        cand = _narrow(cand, key, new)
        if cand is None:
            return False, None
        if len(cand) == 1:
            return True, None
    # the latest cell of the equitable partition that meets the candidates
    lab, cellend = equitable_partition(rows, n)
    starts = []
    s = 0
    while s < n:
        starts.append(s)
        s = cellend[s]
    cell_of = {}
    for st in starts:
        for i in range(st, cellend[st]):
            cell_of[lab[i]] = st
    last = max(cell_of[v] for v in cand)
    if cell_of[new] != last:
        return False, None
    cand = [v for v in cand if cell_of[v] == last]
    if len(cand) == 1:
        return True, None
    lab, _, gens = canonical_labeling(rows, n)
    star = lab[max(lab.index(v) for v in cand)]
    if star == new:
        return True, gens
    if not gens:
        return False, None
    orb = orbits_from_generators(n, gens)
    return orb[star] == orb[new], gens


_Node = tuple[tuple[int, ...], "list[list[int]] | None"]


def _children(rows: tuple[int, ...], m: int, triangle_free: bool,
              gens: list[list[int]] | None = None) -> Iterator[_Node]:
    """Accepted children as ``(rows, generators or None if not yet known)``."""
    if gens is None:
        gens = canonical_labeling(rows, m)[2] if m > 1 else []
    allowed = _independent_sets(rows, m) if triangle_free else None
    bit = 1 << m
    top = max(r.bit_count() for r in rows)
    # smaller neighbourhoods lose to an old vertex of degree >= top
    for s in _subset_reps(m, gens, allowed, top):
        c = s.bit_count()
        child = [r | bit if s >> v & 1 else r for v, r in enumerate(rows)]
        child.append(s)
        # old degrees are at most top + 1, so the new vertex is the unique maximum
        if c >= top + 2:
            yield tuple(child), None
            continue
        ok, child_gens = _accepted(child, m + 1)
        if ok:
            yield tuple(child), child_gens


def _grow(rows, m, n, triangle_free, gens=None) -> Iterator[_Node]:
    if m == n:
        yield rows, gens
        return
    for child, child_gens in _children(rows, m, triangle_free, gens):
        yield from _grow(child, m + 1, n, triangle_free, child_gens)


def _split_level(n: int) -> int:
    return max(1, n - 2)


def _generate_rows(n: int, triangle_free: bool, shards: int = 1, shard: int = 0) -> Iterator[tuple[int, ...]]:
    """Raw adjacency rows of one graph per class; ``shard`` selects every
    ``shards``-th subtree below the split level."""
    root = (0,)
    level = _split_level(n)
    if shards == 1:
        for rows, _ in _grow(root, 1, n, triangle_free):
            yield rows
        return
    for idx, (prefix, gens) in enumerate(_grow(root, 1, level, triangle_free)):
        if idx % shards == shard:
            for rows, _ in _grow(prefix, level, n, triangle_free, gens):
                yield rows


def _keep(rows: Sequence[int], n: int, class_filter: ClassFilter) -> bool:
    if class_filter is ClassFilter.ALL:
        return True
    if class_filter is ClassFilter.CONNECTED:
        return rows_connected(rows, n)
    return rows_triangle_free(rows) and not rows_bipartite(rows, n)


def _check_cap(n: int, cap: int = INTERNAL_CAP) -> None:
    if n < 1:
        raise SearchError(f"n must be positive, got {n}")
    if n > cap:
        raise SearchCapError(f"n={n} exceeds the internal generation cap of {cap}")


def enumerate_graphs(n: int, class_filter: ClassFilter = ClassFilter.ALL, *,
                     cap: int = INTERNAL_CAP) -> Iterator[Graph]:
    """Yield exactly one graph per isomorphism class on ``n`` vertices passing the
    filter, in a fixed order."""
    _check_cap(n, cap)
    class_filter = ClassFilter(class_filter)
    tf = class_filter is ClassFilter.TRIANGLE_FREE_NONBIPARTITE_DIRECT
    for rows in _generate_rows(n, tf):
        if _keep(rows, n, class_filter):
            yield Graph.trusted(n, rows)


def ingest_graph6_stream(lines: Iterable[str], dedup_check: bool = False) -> Iterator[Graph]:
    """Parse graph6 lines in order, skipping blank lines.

    With ``dedup_check`` a graph isomorphic to an earlier line raises
    ``DuplicateGraphError``.
    """
    seen: dict[CanonicalForm, int] = {}
    for no, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            g = parse_graph6(line.strip())
        except Graph6Error as exc:
            raise StreamParseError(no, str(exc)) from exc
        if dedup_check:
            cf = canonical_form(g)
            if cf in seen:
                raise DuplicateGraphError(no, seen[cf])
            seen[cf] = no
        yield g


# --------------------------------------------------------------------------
# exact extremal search
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class SearchProblem:
    n: int
    k: int
    t: int = 2
    class_filter: ClassFilter = ClassFilter.ALL
    source: Source = Source.INTERNAL_GENERATOR
    path: str | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "class_filter", ClassFilter(self.class_filter))
        object.__setattr__(self, "source", Source(self.source))
        if self.k < 1:
            raise SearchError(f"k must be >= 1, got {self.k}")
        if self.t < 2:
            raise SearchError(f"t must be >= 2, got {self.t}")
        if self.n < 2:
            raise SearchError(f"n must be >= 2, got {self.n}")
        if self.source is Source.EXTERNAL_GRAPH6_STREAM:
            if self.path is None:
                raise SearchError("an external graph6 source needs a path")
            _check_cap(self.n, MAX_VERTICES)
        else:
            _check_cap(self.n)

    def describe(self) -> dict:
        return {
            "n": self.n,
            "k": self.k,
            "t": self.t,
            "class": self.class_filter.value,
            "source": self.source.value,
        }


@dataclass(frozen=True)
class SearchOutcome:
    problem: SearchProblem
    optimum: int
    extremal_certificates: tuple[CanonicalForm, ...]
    enumerated: int
    elapsed: float = field(default=0.0, compare=False)

    @property
    def witness_g6(self) -> tuple[str, ...]:
        return tuple(str(c) for c in self.extremal_certificates)

    def witnesses(self) -> list[Graph]:
        return [parse_graph6(s) for s in self.witness_g6]

    def to_json(self) -> dict:
        out = {"problem": self.problem.describe(), "optimum": self.optimum}
        fv = formula_value(self.problem)
        if fv is not None:
            out["formula_value"] = fv
        out.update(
            extremal_count=len(self.extremal_certificates),
            witnesses=list(self.witness_g6),
            enumerated=self.enumerated,
            elapsed_ms=round(self.elapsed * 1000, 3),
        )
        return out


def formula_value(p: SearchProblem) -> int | None:
    """The closed-form extremal value for this problem, if one is known."""
    from distk import constructions as c

    if p.t != 2 or p.n < 5:
        return None
    if p.k == 1 and p.class_filter is ClassFilter.TRIANGLE_FREE_NONBIPARTITE_DIRECT:
        return c.kp_nonbipartite_bound(p.n)
    if p.class_filter is not ClassFilter.ALL:
        return None
    if p.k == 2:
        return c.ex2_bound(p.n)
    if p.k == 3:
        return c.ex3_bound(p.n).value
    return None


@dataclass
class _Partial:
    """Per-shard result; merged with ``_merge``."""
    optimum: int = -1
    certificates: frozenset = frozenset()
    enumerated: int = 0


def _merge(a: _Partial, b: _Partial) -> _Partial:
    if a.optimum > b.optimum:
        best, certs = a.optimum, a.certificates
    elif b.optimum > a.optimum:
        best, certs = b.optimum, b.certificates
    else:
        best, certs = a.optimum, a.certificates | b.certificates
    return _Partial(best, certs, a.enumerated + b.enumerated)


def _scan(rows_iter: Iterable[tuple[int, ...]], n: int, class_filter: ClassFilter,
          objectives: Sequence[tuple[int, int]]) -> tuple[list[_Partial], int]:
    best = [-1] * len(objectives)
    wit: list[list[tuple[int, ...]]] = [[] for _ in objectives]
    count = 0
    pairs = n * (n - 1) // 2
    for rows in rows_iter:
        if not _keep(rows, n, class_filter):
            continue
        count += 1
        # for k >= 2, G_k only joins non-adjacent pairs
        nonedges = pairs - (sum(r.bit_count() for r in rows) >> 1)
        cache: dict[int, list[int]] = {}
        for i, (k, t) in enumerate(objectives):
            if k > 1 and nonedges < best[i]:
                continue
            gk = cache.get(k)
            if gk is None:
                gk = cache[k] = list(rows) if k == 1 else distance_k_rows(rows, n, k)
            m = sum(r.bit_count() for r in gk) >> 1
            if m < best[i]:
                continue
            ok = rows_triangle_free(gk) if t == 2 else rows_clique_number(gk, n) <= t
            if not ok:
                continue
            if m > best[i]:
                best[i] = m
                wit[i] = [rows]
            else:
                wit[i].append(rows)
    parts = []
    for i in range(len(objectives)):
        certs = frozenset(canonical_form(Graph(n, w)) for w in wit[i])
        parts.append(_Partial(best[i], certs, count))
    return parts, count


def _external_rows(path: str, n: int, shards: int, shard: int) -> Iterator[tuple[int, ...]]:
    with open(path) as fh:
        for idx, g in enumerate(ingest_graph6_stream(fh)):
            if g.n != n:
                raise SearchError(f"{path}: graph #{idx + 1} has {g.n} vertices, expected {n}")
            if idx % shards == shard:
                yield g.rows


def _run_shard(args) -> list[_Partial]:
    problems, shards, shard = args
    p0 = problems[0]
    tf = p0.class_filter is ClassFilter.TRIANGLE_FREE_NONBIPARTITE_DIRECT
    if p0.source is Source.EXTERNAL_GRAPH6_STREAM:
        rows_iter = _external_rows(p0.path, p0.n, shards, shard)
    else:
        rows_iter = _generate_rows(p0.n, tf, shards, shard)
    parts, _ = _scan(rows_iter, p0.n, p0.class_filter, [(p.k, p.t) for p in problems])
    return parts


def default_workers() -> int:
    env = os.environ.get(WORKERS_ENV)
    if env:
        return max(1, int(env))
    return os.cpu_count() or 1


def solve_batch(problems: Sequence[SearchProblem], shards: int = 1,
                workers: int | None = None) -> list[SearchOutcome]:
    """Solve several problems that share ``n``, class and source in one pass
    over the enumeration."""
    if not problems:
        return []
    p0 = problems[0]
    for p in problems[1:]:
        if (p.n, p.class_filter, p.source, p.path) != (p0.n, p0.class_filter, p0.source, p0.path):
            raise SearchError("batched problems must share n, class filter and source")
    if shards < 1:
        raise SearchError("shards must be >= 1")
    workers = default_workers() if workers is None else workers
    start = time.perf_counter()
    jobs = [(list(problems), shards, s) for s in range(shards)]
    if workers <= 1 or shards == 1:
        results = [_run_shard(j) for j in jobs]
    else:
        with ProcessPoolExecutor(max_workers=min(workers, shards)) as ex:
            results = list(ex.map(_run_shard, jobs))
    elapsed = time.perf_counter() - start
    outcomes = []
    for i, p in enumerate(problems):
        acc = _Partial()
        for parts in results:
            acc = _merge(acc, parts[i])
        if acc.enumerated == 0:
            raise InfeasibleProblem(f"no graphs in the class {p.class_filter.value} for n={p.n}")
        if acc.optimum < 0:
            raise InfeasibleProblem(f"no graph satisfies omega(G_{p.k}) <= {p.t} for n={p.n}")
        outcomes.append(SearchOutcome(p, acc.optimum, tuple(sorted(acc.certificates)),
                                      acc.enumerated, elapsed))
    return outcomes


def solve(p: SearchProblem, shards: int = 1, workers: int | None = None) -> SearchOutcome:
    return solve_batch([p], shards=shards, workers=workers)[0]


def solve_nonbipartite_triangle_free(n: int, shards: int = 1, workers: int | None = None) -> SearchOutcome:
    """Maximum edge count of a triangle-free, non-bipartite graph on ``n`` vertices.

    Here the constraint is on ``G`` itself, i.e. ``k = 1``.
    """
    if n < 5:
        raise SearchError("a triangle-free non-bipartite graph needs n >= 5")
    p = SearchProblem(n, 1, 2, ClassFilter.TRIANGLE_FREE_NONBIPARTITE_DIRECT)
    return solve(p, shards=shards, workers=workers)


@dataclass(frozen=True)
class CharacterizationReport:
    n: int
    optimum: int
    found: frozenset[CanonicalForm]
    predicted: frozenset[CanonicalForm]

    @property
    def missing(self) -> frozenset[CanonicalForm]:
        return self.predicted - self.found

    @property
    def extra(self) -> frozenset[CanonicalForm]:
        return self.found - self.predicted

    @property
    def equal(self) -> bool:
        return self.found == self.predicted


def characterize(n: int, outcome: SearchOutcome | None = None, shards: int = 1,
                 workers: int | None = None) -> CharacterizationReport:
    """Compare the searched ex_2(n, K_3) extremal graphs with the constructed family."""
    from distk.constructions import enumerate_g2_extremal_family

    if n < 5:
        raise SearchError("characterization needs n >= 5")
    _check_cap(n)
    if outcome is None:
        outcome = solve(SearchProblem(n, 2, 2), shards=shards, workers=workers)
    predicted = frozenset(canonical_form(g) for g in enumerate_g2_extremal_family(n))
    return CharacterizationReport(n, outcome.optimum, frozenset(outcome.extremal_certificates), predicted)


def write_witnesses(outcome: SearchOutcome, path: str | Path) -> None:
    Path(path).write_text("".join(s + "\n" for s in outcome.witness_g6))
