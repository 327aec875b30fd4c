"""Extremal constructions for distance-k Turán problems and their closed-form bounds.

Every builder is deterministic and documents its vertex order.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Union

from distk.canon import canonical_form
from distk.graph import Graph, complement


class ConstructionError(ValueError):
    pass


def _require(cond: bool, what: str) -> None:
    if not cond:
        raise ConstructionError(f"constraint violated: {what}")


@dataclass(frozen=True)
class Turan:
    """Complete ``r``-partite graph on ``n`` vertices with parts as equal as possible.
    Vertices are numbered part by part, larger parts first."""
    n: int
    r: int

    def validate(self) -> None:
        _require(1 <= self.r <= self.n, "1 <= r <= n")


@dataclass(frozen=True)
class G2Extremal:
    """Complement of a modified Turán graph ``T(n-1, 2)``.

    With bipartition ``(A, B)``, vertex ``a1`` of ``A`` loses its edges to
    ``B' ⊂ B`` and a new vertex ``a2`` is joined to ``a1`` and ``B'``.  Vertex
    order: ``A`` (``a1`` first), ``B'``, ``B''``, then ``a2``.
    """
    n: int
    size_a: int
    size_b_prime: int

    @property
    def size_b(self) -> int:
        return self.n - 1 - self.size_a

    def validate(self) -> None:
        _require(self.n >= 5, "n >= 5")
        _require(self.size_a >= 1, "sizeA >= 1")
        _require(abs(self.size_a - self.size_b) <= 1, "|sizeA - sizeB| <= 1 with sizeA + sizeB = n - 1")
        _require(1 <= self.size_b_prime <= self.size_b - 1, "1 <= sizeB' <= sizeB - 1")


@dataclass(frozen=True)
class DoubleBroom:
    """Path on ``k - 1`` vertices with ``a`` leaves on one end and ``b`` on the other.
    Vertex order: path, then the ``a`` leaves, then the ``b`` leaves."""
    n: int
    k: int
    a: int
    b: int

    def validate(self) -> None:
        _require(self.k >= 2, "k >= 2")
        _require(self.a >= 1 and self.b >= 1, "a >= 1 and b >= 1")
        _require(self.a + self.b + self.k - 1 == self.n, "a + b + (k - 1) = n")


@dataclass(frozen=True)
class TBroom:
    """t-broom for distance ``k``.

    Even ``k``: a center (vertex 0) joined to ``t`` paths on ``(k-2)/2`` vertices.
    Odd ``k``: a ``t``-clique (vertices ``0..t-1``), each clique vertex joined to a
    path on ``(k-3)/2`` vertices; for ``k = 3`` the paths are empty and leaves hang
    off the clique directly.  Then arm paths in arm order, then leaves arm by arm.
    """
    k: int
    t: int
    leaf_counts: tuple[int, ...]

    def validate(self) -> None:
        _require((self.k % 2 == 0 and self.k >= 4) or (self.k % 2 == 1 and self.k >= 3),
                 "even k >= 4 or odd k >= 3")
        _require(self.t >= 1, "t >= 1")
        _require(len(self.leaf_counts) == self.t, "leaf_counts has t entries")
        _require(all(c >= 1 for c in self.leaf_counts), "every leaf count >= 1")

    @property
    def n(self) -> int:
        if self.k % 2 == 0:
            core = 1 + self.t * (self.k - 2) // 2
        else:
            core = self.t + self.t * (self.k - 3) // 2
        return core + sum(self.leaf_counts)


@dataclass(frozen=True)
class Spider:
    """Star with ``legs`` leaves; the remaining ``n - 1 - legs`` vertices are
    attached to the star's leaves, ``attachment_counts[i]`` of them to leaf ``i``.
    Vertex order: center, star leaves, attached vertices leg by leg."""
    n: int
    legs: int
    attachment_counts: tuple[int, ...]

    def validate(self) -> None:
        _require(self.legs in (self.n // 2, (self.n + 1) // 2), "legs = floor(n/2) or floor((n+1)/2)")
        _require(self.legs >= 1, "legs >= 1")
        _require(len(self.attachment_counts) == self.legs, "attachment_counts has one entry per leg")
        _require(all(c >= 0 for c in self.attachment_counts), "attachment counts are nonnegative")
        _require(sum(self.attachment_counts) == self.n - 1 - self.legs,
                 "attachment counts sum to n - 1 - legs")

    @classmethod
    def round_robin(cls, n: int, legs: int | None = None) -> Spider:
        legs = n // 2 if legs is None else legs
        rest = n - 1 - legs
        counts = tuple(rest // legs + (1 if i < rest % legs else 0) for i in range(legs))
        return cls(n, legs, counts)


ConstructionSpec = Union[Turan, G2Extremal, DoubleBroom, TBroom, Spider]

_VARIANTS = {
    "turan": Turan,
    "g2-extremal": G2Extremal,
    "double-broom": DoubleBroom,
    "t-broom": TBroom,
    "spider": Spider,
}


def variant_name(spec: ConstructionSpec) -> str:
    for name, cls in _VARIANTS.items():
        if isinstance(spec, cls):
            return name
    raise ConstructionError(f"unknown construction {spec!r}")


def spec_to_json(spec: ConstructionSpec) -> str:
    d = {"variant": variant_name(spec)}
    for key, val in asdict(spec).items():
        d[key] = list(val) if isinstance(val, tuple) else val
    return json.dumps(d)


def spec_from_json(text: str | dict) -> ConstructionSpec:
    d = dict(json.loads(text) if isinstance(text, str) else text)
    try:
        cls = _VARIANTS[d.pop("variant")]
    except KeyError as exc:
        raise ConstructionError(f"unknown or missing variant: {exc}") from None
    for key in ("leaf_counts", "attachment_counts"):
        if key in d:
            d[key] = tuple(d[key])
    try:
        spec = cls(**d)
    except TypeError as exc:
        raise ConstructionError(str(exc)) from None
    for key, val in asdict(spec).items():
        vals = val if isinstance(val, tuple) else (val,)
        if not all(isinstance(x, int) and not isinstance(x, bool) for x in vals):
            raise ConstructionError(f"field {key} must be integer-valued")
    return spec


def g2_auxiliary(spec: G2Extremal) -> Graph:
    """The triangle-free non-bipartite graph whose complement ``build`` returns."""
    spec.validate()
    sa, sb, sbp = spec.size_a, spec.size_b, spec.size_b_prime
    a = list(range(sa))
    b = list(range(sa, sa + sb))
    b_prime = set(b[:sbp])
    a1, a2 = a[0], spec.n - 1
    edges = [(x, y) for x in a for y in b if not (x == a1 and y in b_prime)]
    edges.append((a2, a1))
    edges += [(a2, y) for y in sorted(b_prime)]
    return Graph.from_edges(spec.n, edges)


def build(spec: ConstructionSpec) -> Graph:
    spec.validate()
    if isinstance(spec, Turan):
        sizes = [spec.n // spec.r + (1 if i < spec.n % spec.r else 0) for i in range(spec.r)]
        part = [i for i, s in enumerate(sizes) for _ in range(s)]
        return Graph.from_edges(spec.n, [(u, v) for u in range(spec.n) for v in range(u)
                                         if part[u] != part[v]])
    if isinstance(spec, G2Extremal):
        return complement(g2_auxiliary(spec))
    if isinstance(spec, DoubleBroom):
        p = spec.k - 1
        edges = [(i, i + 1) for i in range(p - 1)]
        edges += [(0, p + i) for i in range(spec.a)]
        edges += [(p - 1, p + spec.a + i) for i in range(spec.b)]
        return Graph.from_edges(spec.n, edges)
    if isinstance(spec, TBroom):
        k, t = spec.k, spec.t
        edges = []
        if k % 2 == 0:
            hubs = [0] * t
            nxt = 1
            arm_len = (k - 2) // 2
        else:
            hubs = list(range(t))
            edges += [(u, v) for u in range(t) for v in range(u)]
            nxt = t
            arm_len = (k - 3) // 2
        ends = []
        for i in range(t):
            prev = hubs[i]
            for _ in range(arm_len):
                edges.append((prev, nxt))
                prev = nxt
                nxt += 1
            ends.append(prev)
        for i, c in enumerate(spec.leaf_counts):
            for _ in range(c):
                edges.append((ends[i], nxt))
                nxt += 1
        return Graph.from_edges(spec.n, edges)
    if isinstance(spec, Spider):
        edges = [(0, 1 + i) for i in range(spec.legs)]
        nxt = 1 + spec.legs
        for i, c in enumerate(spec.attachment_counts):
            for _ in range(c):
                edges.append((1 + i, nxt))
                nxt += 1
        return Graph.from_edges(spec.n, edges)
    raise ConstructionError(f"unknown construction {spec!r}")


# --------------------------------------------------------------------------
# closed-form bounds
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class Bound:
    value: int
    proven: bool


def ex2_bound(n: int) -> int:
    if n < 5:
        raise ConstructionError("ex2 formula holds for n >= 5")
    return (n - 1) ** 2 // 4 + 1


def ex3_bound(n: int) -> Bound:
    """``floor((n-2)^2 / 4)``; ``proven`` is False below n = 18, where it is only
    a lower bound from the constructions."""
    if n < 4:
        raise ConstructionError("ex3 formula needs n >= 4")
    return Bound((n - 2) ** 2 // 4, n >= 18)


def tu_bound(n: int, k: int) -> Fraction:
    if k < 3:
        raise ConstructionError("bound stated for k >= 3")
    if n < k + 1:
        raise ConstructionError("bound stated for n >= k + 1")
    return Fraction((n - k + 1) ** 2, 4)


def kp_nonbipartite_bound(n: int) -> int:
    if n < 5:
        raise ConstructionError("a triangle-free non-bipartite graph needs n >= 5")
    return (n - 1) ** 2 // 4 + 1


def g2_extremal_specs(n: int) -> list[G2Extremal]:
    if n < 5:
        raise ConstructionError("n >= 5")
    sizes = sorted({(n - 1) // 2, n // 2})
    return [G2Extremal(n, sa, bp) for sa in sizes for bp in range(1, n - 1 - sa)]


def enumerate_g2_extremal_family(n: int) -> list[Graph]:
    """One graph per isomorphism class over all valid parameters and both
    orientations of an unbalanced bipartition, ordered by certificate."""
    by_cert = {}
    for spec in g2_extremal_specs(n):
        g = build(spec)
        by_cert.setdefault(canonical_form(g), g)
    return [by_cert[c] for c in sorted(by_cert)]


def balanced_double_brooms(n: int, k: int = 3) -> list[DoubleBroom]:
    leaves = n - (k - 1)
    return [DoubleBroom(n, k, a, leaves - a) for a in sorted({leaves // 2, (leaves + 1) // 2}) if a >= 1 and leaves - a >= 1]


def spiders(n: int) -> list[Spider]:
    """Every spider accepted by ``Spider.validate`` for ``n``, all attachment distributions."""
    out = []
    for legs in sorted({n // 2, (n + 1) // 2}):
        if legs < 1:
            continue
        rest = n - 1 - legs
        if rest < 0:
            continue
        for counts in _compositions(rest, legs):
            out.append(Spider(n, legs, counts))
    return out


def _compositions(total: int, parts: int):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for tail in _compositions(total - first, parts - 1):
            yield (first,) + tail
