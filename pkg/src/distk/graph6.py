"""graph6 reading and writing (the format used by nauty's geng and friends)."""

from __future__ import annotations

from distk.graph import MAX_VERTICES, Graph


class Graph6Error(ValueError):
    pass


class Graph6HeaderError(Graph6Error):
    pass


class Graph6BodyError(Graph6Error):
    pass


class Graph6TrailingDataError(Graph6Error):
    pass


class Graph6CapError(Graph6Error):
    pass


_PREFIX = ">>graph6<<"


def _size_header(n: int) -> str:
    if n <= 62:
        return chr(63 + n)
    return "~" + "".join(chr(63 + (n >> s & 63)) for s in (12, 6, 0))


def emit_graph6(g: Graph) -> str:
    n = g.n
    bits = []
    rows = g.rows
    for j in range(1, n):
        rj = rows[j]
        for i in range(j):
            bits.append(rj >> i & 1)
    bits.extend([0] * (-len(bits) % 6))
    body = []
    for k in range(0, len(bits), 6):
        x = 0
        for b in bits[k:k + 6]:
            x = x << 1 | b
        body.append(chr(63 + x))
    return _size_header(n) + "".join(body)


def parse_graph6(text: str) -> Graph:
    s = text.rstrip("\r\n")
    if s.startswith(_PREFIX):
        s = s[len(_PREFIX):]
    if not s:
        raise Graph6HeaderError("empty graph6 line")
    for ch in s:
        if not 63 <= ord(ch) <= 126:
            raise Graph6BodyError(f"character {ch!r} outside the graph6 range")
    if s[0] != "~":
        n = ord(s[0]) - 63
        pos = 1
    else:
        if len(s) >= 2 and s[1] == "~":
            raise Graph6CapError("8-byte size header implies more than 64 vertices")
        if len(s) < 4:
            raise Graph6HeaderError("truncated 4-byte size header")
        n = 0
        for ch in s[1:4]:
            n = n << 6 | (ord(ch) - 63)
        if n <= 62:
            raise Graph6HeaderError(f"non-minimal size header for n={n}")
        pos = 4
    if n == 0:
        raise Graph6HeaderError("graphs with zero vertices are not supported")
    if n > MAX_VERTICES:
        raise Graph6CapError(f"n={n} exceeds the cap of {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = s[pos:]
    if len(body) < need:
        raise Graph6BodyError(f"expected {need} data bytes for n={n}, got {len(body)}")
    if len(body) > need:
        raise Graph6TrailingDataError(f"{len(body) - need} unexpected trailing bytes")
    x = 0
    for ch in body:
        x = x << 6 | (ord(ch) - 63)
    pad = need * 6 - nbits
    if x & ((1 << pad) - 1):
        raise Graph6TrailingDataError("nonzero padding bits")
    x >>= pad
    rows = [0] * n
    k = nbits - 1
    for j in range(1, n):
        for i in range(j):
            if x >> k & 1:
                rows[i] |= 1 << j
                rows[j] |= 1 << i
            k -= 1
    return Graph(n, tuple(rows))
