"""Pattern-graph constructors and dense host generators.

Patterns: square grid, prism (even cycle x edge), ladder (path x edge),
quadrangulated cylinder and torus, honeycomb fragment, even cycle.  Hosts:
orthogonal-polarity graph of a projective plane (C4-free, ~n^{3/2} edges)
and seeded G(n,p).
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field

from .errors import InputError
from .graphs import Graph, build_graph

PATTERN_KINDS = ("grid", "prism", "prism_path", "cylinder", "torus",
                 "honeycomb", "even_cycle")


@dataclass(frozen=True)
class PatternSpec:
    """Tagged description of a target pattern."""

    kind: str
    params: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in PATTERN_KINDS:
            raise InputError(f"unknown pattern kind {self.kind!r}")
        p = self.params
        need = {"grid": ("t",), "prism": ("ell",), "prism_path": ("t",),
                "cylinder": ("k", "ell"), "torus": ("k", "ell"),
                "honeycomb": ("k", "ell"), "even_cycle": ("ell",)}[self.kind]
        for key in need:
            if key not in p or not isinstance(p[key], int):
                raise InputError(f"{self.kind} needs integer parameter {key!r}")
        k, ell, t = p.get("k"), p.get("ell"), p.get("t")
        if self.kind == "grid" and t < 1:
            raise InputError("grid needs t >= 1")
        if self.kind == "prism_path" and t < 1:
            raise InputError("prism_path needs t >= 1")
        if self.kind in ("prism", "even_cycle") and ell < 2:
            raise InputError(f"{self.kind} needs ell >= 2")
        if self.kind == "cylinder" and (k < 2 or ell < 2):
            raise InputError("cylinder needs k >= 2 and ell >= 2")
        if self.kind == "torus" and (k < 4 or k % 2 != 0 or ell < 2):
            raise InputError("torus needs even k >= 4 and ell >= 2")
        if self.kind == "honeycomb" and (k < 1 or k % 2 != 1
                                         or ell < 2 or ell % 2 != 0):
            raise InputError("honeycomb needs odd k >= 1 and even ell >= 2")

    def to_json(self) -> dict:
        return {"kind": self.kind, **self.params}

    @classmethod
    def from_json(cls, obj: dict) -> "PatternSpec":
        obj = dict(obj)
        kind = obj.pop("kind", None)
        if kind is None:
            raise InputError("pattern spec needs a 'kind'")
        return cls(kind, obj)


def _label(i: int, j: int) -> str:
    return f"{i},{j}"


def pattern(spec: PatternSpec) -> tuple[Graph, dict[str, int]]:
    """Build the pattern graph and its label map ``"i,j" -> vertex id``.

    For the honeycomb the merged vertices keep all their aliases in the map;
    the canonical labels are ``"k,1"`` (u) and ``"1,2"`` (v).
    """
    kind, p = spec.kind, spec.params
    if kind == "grid":
        t = p["t"]
        ids = {(i, j): (i - 1) * t + (j - 1) for i in range(1, t + 1)
               for j in range(1, t + 1)}
        edges = []
        for (i, j), a in ids.items():
            if j < t:
                edges.append((a, ids[(i, j + 1)]))
            if i < t:
                edges.append((a, ids[(i + 1, j)]))
        g = build_graph(t * t, edges)
        return g, {_label(i, j): a for (i, j), a in ids.items()}

    if kind == "even_cycle":
        ell = p["ell"]
        m = 2 * ell
        g = build_graph(m, [(j, (j + 1) % m) for j in range(m)])
        return g, {_label(1, j + 1): j for j in range(m)}

    if kind == "prism":
        ell = p["ell"]
        m = 2 * ell
        edges = []
        for r in (0, 1):
            base = r * m
            edges += [(base + j, base + (j + 1) % m) for j in range(m)]
        edges += [(j, m + j) for j in range(m)]
        g = build_graph(2 * m, edges)
        labels = {_label(1, j + 1): j for j in range(m)}
        labels.update({_label(2, j + 1): m + j for j in range(m)})
        return g, labels

    if kind == "prism_path":
        t = p["t"]
        edges = [(i, t + i) for i in range(t)]
        edges += [(i, i + 1) for i in range(t - 1)]
        edges += [(t + i, t + i + 1) for i in range(t - 1)]
        g = build_graph(2 * t, edges)
        labels = {_label(1, i + 1): i for i in range(t)}
        labels.update({_label(2, i + 1): t + i for i in range(t)})
        return g, labels

    if kind in ("cylinder", "torus"):
        k, ell = p["k"], p["ell"]
        ids = {(i, j): (i - 1) * ell + (j - 1) for i in range(1, k + 1)
               for j in range(1, ell + 1)}
        wrap_rows = kind == "torus"
        top = k if wrap_rows else k - 1

        def col(j):  # columns are cyclic in both quadrangulations
            return (j - 1) % ell + 1

        edges = []
        for i in range(1, top + 1):
            nxt = i % k + 1 if wrap_rows else i + 1
            for j in range(1, ell + 1):
                edges.append((ids[(i, j)], ids[(nxt, j)]))
                if i % 2 == 1:
                    edges.append((ids[(i, col(j + 1))], ids[(nxt, j)]))
                else:
                    edges.append((ids[(i, j)], ids[(nxt, col(j + 1))]))
        g = build_graph(k * ell, edges)
        return g, {_label(i, j): a for (i, j), a in ids.items()}

    if kind == "honeycomb":
        k, ell = p["k"], p["ell"]
        # identification classes: row-k odd columns -> u, row-1 even columns -> v
        def canon(i, j):
            if i == k and j % 2 == 1:
                return (k, 1)
            if i == 1 and j % 2 == 0:
                return (1, 2)
            return (i, j)

        classes: dict[tuple[int, int], int] = {}
        for i in range(1, k + 1):
            for j in range(1, ell + 1):
                classes.setdefault(canon(i, j), len(classes))
        edges = set()

        def add(a, b):
            ia, ib = classes[canon(*a)], classes[canon(*b)]
            if ia != ib:
                edges.add((min(ia, ib), max(ia, ib)))

        for i in range(1, k + 1):
            for j in range(1, ell):
                add((i, j), (i, j + 1))
        for i in range(1, k // 2 + 1):
            for j in range(1, ell + 1):
                if j % 2 == 1:
                    add((2 * i - 1, j), (2 * i, j))
                else:
                    add((2 * i, j), (2 * i + 1, j))
        g = build_graph(len(classes), sorted(edges))
        labels = {_label(i, j): classes[canon(i, j)]
                  for i in range(1, k + 1) for j in range(1, ell + 1)}
        return g, labels

    raise InputError(f"unknown pattern kind {kind!r}")  # pragma: no cover


# -- finite fields for the polarity construction -----------------------------

_IRREDUCIBLE = {
    4: (2, [1, 1, 1]),        # x^2 + x + 1 over GF(2)
    8: (2, [1, 1, 0, 1]),     # x^3 + x + 1
    9: (3, [1, 0, 1]),        # x^2 + 1 over GF(3)
    16: (2, [1, 1, 0, 0, 1]), # x^4 + x + 1
}


def _is_prime(q: int) -> bool:
    if q < 2:
        return False
    d = 2
    while d * d <= q:
        if q % d == 0:
            return False
        d += 1
    return True


class _GF:
    """Arithmetic tables for GF(q); elements are ints 0..q-1.

    Prime q uses plain modular arithmetic; the shipped irreducible table
    covers the prime powers up to 16 (elements encode polynomial
    coefficients as base-p digits).
    """

    def __init__(self, q: int):
        if _is_prime(q):
            self.q = q
            self.add = lambda a, b: (a + b) % q
            self.mul = lambda a, b: (a * b) % q
            return
        if q not in _IRREDUCIBLE:
            raise InputError(f"q={q} is not a prime or a supported prime power")
        p, poly = _IRREDUCIBLE[q]
        deg = len(poly) - 1
        self.q = q

        def digits(x):
            out = []
            for _ in range(deg):
                out.append(x % p)
                x //= p
            return out

        def undigits(ds):
            x = 0
            for d in reversed(ds):
                x = x * p + d
            return x

        add_t = [[0] * q for _ in range(q)]
        mul_t = [[0] * q for _ in range(q)]
        for a in range(q):
            da = digits(a)
            for b in range(q):
                db = digits(b)
                add_t[a][b] = undigits([(x + y) % p for x, y in zip(da, db)])
                prod = [0] * (2 * deg - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                for i in range(len(prod) - 1, deg - 1, -1):
                    c = prod[i]
                    if c:
                        prod[i] = 0
                        # subtract c * x^(i-deg) * poly
                        for j, pc in enumerate(poly):
                            prod[i - deg + j] = (prod[i - deg + j] - c * pc) % p
                mul_t[a][b] = undigits(prod[:deg])
        self.add = lambda a, b: add_t[a][b]
        self.mul = lambda a, b: mul_t[a][b]


def polarity_graph(q: int) -> Graph:
    """Orthogonal polarity graph of PG(2,q): x ~ y iff x.y = 0, x != y.

    q^2+q+1 vertices, q(q+1)^2/2 edges, every codegree <= 1 (C4-free).
    Vertex order: normalized homogeneous coordinates (first nonzero
    coordinate 1), lexicographic.
    """
    gf = _GF(q)
    points: list[tuple[int, int, int]] = []
    # first nonzero coordinate normalized to 1, lex order over (a, b, c)
    points.append((0, 0, 1))
    for c in range(q):
        points.append((0, 1, c))
    for b in range(q):
        for c in range(q):
            points.append((1, b, c))
    points.sort()
    assert len(points) == q * q + q + 1

    def dot(x, y):
        s = 0
        for a, b in zip(x, y):
            s = gf.add(s, gf.mul(a, b))
        return s

    edges = []
    for i in range(len(points)):
        for j in range(i + 1, len(points)):
            if dot(points[i], points[j]) == 0:
                edges.append((i, j))
    return build_graph(len(points), edges)


def random_graph(n: int, p: float, seed: int, bipartite: bool = False) -> Graph:
    """Seeded G(n,p); with ``bipartite`` only pairs across the fixed even
    split {0..ceil(n/2)-1} | {rest} are candidates."""
    if not (0.0 <= p <= 1.0):
        raise InputError("edge probability must lie in [0, 1]")
    if n < 0:
        raise InputError("vertex count must be non-negative")
    rng = random.Random(seed)
    edges = []
    if bipartite:
        half = (n + 1) // 2
        for a in range(half):
            for b in range(half, n):
                if rng.random() < p:
                    edges.append((a, b))
    else:
        for a in range(n):
            for b in range(a + 1, n):
                if rng.random() < p:
                    edges.append((a, b))
    return build_graph(n, edges)
