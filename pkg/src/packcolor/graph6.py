"""graph6 reader/writer (the nauty ``formats.txt`` encoding).

Only the undirected graph6 variant is handled. The optional ``>>graph6<<``
header is accepted on input and never written.
"""

from __future__ import annotations

from typing import IO, Iterable, Iterator

from .graph import Graph

HEADER = b">>graph6<<"
_MAX_N = 68719476735


class Graph6Error(ValueError):
    """Malformed graph6 data; ``offset`` is the byte position of the fault."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte offset {offset})")
        self.offset = offset


def _as_bytes(text) -> bytes:
    if isinstance(text, str):
        try:
            return text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error("non-ASCII character", exc.start) from None
    return bytes(text)


def _encode_n(n: int) -> bytes:
    if n < 0 or n > _MAX_N:
        raise ValueError(f"graph6 cannot encode n={n}")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126] + [((n >> s) & 63) + 63 for s in (12, 6, 0)])
    return bytes([126, 126] + [((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0)])


def _decode_n(data: bytes, base: int) -> tuple[int, int]:
    """Return ``(n, bytes consumed)``; ``base`` only shifts error offsets."""

    def six(i: int) -> int:
        if i >= len(data):
            raise Graph6Error("truncated length prefix", base + i)
        return data[i] - 63

    if not data:
        raise Graph6Error("empty graph6 string", base)
    if data[0] != 126:
        return six(0), 1
    if len(data) > 1 and data[1] == 126:
        n = 0
        for i in range(2, 8):
            n = (n << 6) | six(i)
        return n, 8
    n = 0
    for i in range(1, 4):
        n = (n << 6) | six(i)
    return n, 4


def parse_graph6(text, *, base_offset: int = 0) -> Graph:
    """Decode one graph6 line (trailing newline allowed)."""
    raw = _as_bytes(text)
    offset = 0
    if raw.startswith(HEADER):
        offset = len(HEADER)
    data = raw[offset:].rstrip(b"\r\n")
    base = base_offset + offset
    for i, b in enumerate(data):
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b!r} outside printable range 63..126", base + i)
    n, used = _decode_n(data, base)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[used:]
    if len(body) < nbytes:
        raise Graph6Error(f"expected {nbytes} edge bytes, found {len(body)}", base + len(data))
    if len(body) > nbytes:
        raise Graph6Error("trailing bytes after edge data", base + used + nbytes)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            byte = body[k // 6] - 63
            if byte & (1 << (5 - k % 6)):
                edges.append((i, j))
            k += 1
    if nbytes and k % 6:
        pad = (body[-1] - 63) & ((1 << (6 - k % 6)) - 1)
        if pad:
            raise Graph6Error("non-zero padding bits", base + used + nbytes - 1)
    return Graph.from_edges(n, edges)


def write_graph6(g: Graph) -> bytes:
    """Canonical graph6 encoding of ``g`` (no header, no newline)."""
    out = bytearray(_encode_n(g.n))
    acc = 0
    nb = 0
    for j in range(1, g.n):
        row = g.adj[j]
        for i in range(j):
            acc = (acc << 1) | (1 if i in row else 0)
            nb += 1
            if nb == 6:
                out.append(acc + 63)
                acc = nb = 0
    if nb:
        out.append((acc << (6 - nb)) + 63)
    return bytes(out)


def to_str(g: Graph) -> str:
    return write_graph6(g).decode("ascii")


def read_graph6_lines(stream: IO[bytes] | Iterable) -> Iterator[Graph]:
    """Yield graphs from a stream of graph6 lines; blank lines are skipped.

    Errors carry the absolute byte offset within the stream.
    """
    pos = 0
    for line in stream:
        raw = _as_bytes(line)
        stripped = raw.strip()
        lead = len(raw) - len(raw.lstrip())
        if stripped:
            yield parse_graph6(stripped, base_offset=pos + lead)
        pos += len(raw)
