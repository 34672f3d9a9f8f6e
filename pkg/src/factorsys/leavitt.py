"""Leavitt path algebras of finite graphs.

Elements are combinations of monomials ``alpha beta*`` stored as keys
``(alpha, beta, w)`` where ``alpha`` and ``beta`` are tuples of edge indices
and ``w = r(alpha) = r(beta)`` (for empty paths, ``w`` is the vertex itself).

Normal form: for every vertex ``v`` that emits edges, the first emitted edge in
edge-list order is *special*.  A monomial is normal unless both ``alpha`` and
``beta`` end in the same special edge ``e``; such a tail is rewritten with
``e e* = v - sum_{f != e, s(f) = v} f f*``.  Products of normal monomials are
computed by cancelling ``beta* gamma`` (prefix comparison) and then
renormalizing at the junction.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import scalars
from .errors import InputError, NotABasis, SinkPresent, UnknownSymbol
from .graded import FrameSystem, GradedRing
from .groups import IntegerWindow
from .linalg import solve
from .matrix import RingMatrix
from .rings import BasisAlgebra, Elem


@dataclass(frozen=True)
class Graph:
    vertices: tuple
    edges: tuple  # (name, src, dst)

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise InputError("duplicate vertex names")
        names = [e[0] for e in self.edges]
        if len(set(names)) != len(names):
            raise InputError("duplicate edge names")
        vs = set(self.vertices)
        for name, s, d in self.edges:
            if s not in vs or d not in vs:
                raise InputError(f"edge {name} uses an unknown vertex")
            if name in vs:
                raise InputError(f"edge {name} shares a name with a vertex")

    @classmethod
    def from_json(cls, obj) -> "Graph":
        return cls(tuple(obj["vertices"]), tuple((e["name"], e["src"], e["dst"]) for e in obj["edges"]))

    def to_json(self) -> dict:
        return {"vertices": list(self.vertices),
                "edges": [{"name": n, "src": s, "dst": d} for n, s, d in self.edges]}

    @property
    def has_sinks(self) -> bool:
        emitters = {s for _, s, _ in self.edges}
        return any(v not in emitters for v in self.vertices)

    @property
    def is_finite(self) -> bool:
        return True


def rose(k: int) -> Graph:
    """One vertex ``v`` with ``k`` loops ``e1..ek``; ``rose(2)`` gives ``L(1,2)``."""
    return Graph(("v",), tuple((f"e{i}", "v", "v") for i in range(1, k + 1)))


def cycle_graph(n: int) -> Graph:
    """Vertices ``v0..v{n-1}`` and edges ``e{i}: v{i} -> v{i+1 mod n}``."""
    vs = tuple(f"v{i}" for i in range(n))
    return Graph(vs, tuple((f"e{i}", f"v{i}", f"v{(i + 1) % n}") for i in range(n)))


class LeavittPathAlgebra(BasisAlgebra):
    has_star = True

    def __init__(self, graph: Graph, field: str = "qi"):
        super().__init__()
        self.graph = graph
        self.field = field
        self.vertex_index = {v: i for i, v in enumerate(graph.vertices)}
        self.edge_index = {e[0]: i for i, e in enumerate(graph.edges)}
        self.src = tuple(self.vertex_index[e[1]] for e in graph.edges)
        self.rng_ = tuple(self.vertex_index[e[2]] for e in graph.edges)
        self.emits = tuple(tuple(i for i in range(len(graph.edges)) if self.src[i] == v)
                           for v in range(len(graph.vertices)))
        self.special = tuple(em[0] if em else None for em in self.emits)
        self.one_terms = {((), (), v): Fraction(1) for v in range(len(graph.vertices))}
        self.name = f"L({len(graph.vertices)},{len(graph.edges)})" if len(graph.vertices) == 1 else "L(E)"

    def __eq__(self, other):
        return isinstance(other, LeavittPathAlgebra) and other.graph == self.graph

    def __hash__(self):
        return hash(("lpa", self.graph))

    # monomials ---------------------------------------------------------------------
    def _left_vertex(self, k):
        return self.src[k[0][0]] if k[0] else k[2]

    def _right_vertex(self, k):
        return self.src[k[1][0]] if k[1] else k[2]

    def _normalize(self, a, b, w) -> dict:
        if a and b and a[-1] == b[-1]:
            e = a[-1]
            v = self.src[e]
            if self.special[v] == e:
                a2, b2 = a[:-1], b[:-1]
                out = dict(self._normalize(a2, b2, v))
                for f in self.emits[v]:
                    if f != e:
                        key = (a2 + (f,), b2 + (f,), self.rng_[f])
                        out[key] = out.get(key, 0) - 1
                        if not out[key]:
                            del out[key]
                return {k: Fraction(c) for k, c in out.items()}
        return {(a, b, w): Fraction(1)}

    def _key_product(self, k1, k2):
        a1, b1, w1 = k1
        a2, b2, w2 = k2
        if self._right_vertex(k1) != self._left_vertex(k2):
            return {}
        n1, n2 = len(b1), len(a2)
        if n1 <= n2:
            if a2[:n1] != b1:
                return {}
            rest = a2[n1:]
            if not rest:
                return self._normalize(a1, b2, w2)
            return {(a1 + rest, b2, w2): Fraction(1)}
        if b1[:n2] != a2:
            return {}
        return {(a1, b2 + b1[n2:], w1): Fraction(1)}

    def key_star(self, k):
        return {(k[1], k[0], k[2]): Fraction(1)}

    def key_degree(self, k) -> int:
        return len(k[0]) - len(k[1])

    def key_sort(self, k):
        return (len(k[0]) + len(k[1]), len(k[0]), k[0], k[1], k[2])

    def monomial(self, alpha=(), beta=(), vertex=None, coeff=1) -> Elem:
        """Normal form of ``alpha beta*`` (paths given as edge names or indices)."""
        a = tuple(self._edge(e) for e in alpha)
        b = tuple(self._edge(e) for e in beta)
        for p in (a, b):
            for x, y in zip(p, p[1:]):
                if self.rng_[x] != self.src[y]:
                    return self.zero()
        if a and b:
            if self.rng_[a[-1]] != self.rng_[b[-1]]:
                return self.zero()
            w = self.rng_[a[-1]]
        elif a or b:
            w = self.rng_[(a or b)[-1]]
        else:
            if vertex is None:
                if len(self.graph.vertices) != 1:
                    raise InputError("empty monomial needs a vertex")
                vertex = 0
            w = self.vertex_index[vertex] if isinstance(vertex, str) else vertex
        if vertex is not None and (a or b):
            v = self.vertex_index[vertex] if isinstance(vertex, str) else vertex
            if v != w:
                return self.zero()
        c = scalars.as_scalar(coeff)
        return Elem(self, {k: v * c for k, v in self._normalize(a, b, w).items()})

    def _edge(self, e) -> int:
        if isinstance(e, int):
            return e
        try:
            return self.edge_index[e]
        except KeyError:
            raise UnknownSymbol(f"unknown edge {e!r}") from None

    def vertex(self, v) -> Elem:
        return self.monomial(vertex=v)

    def edge(self, e) -> Elem:
        return self.monomial((e,))

    def ghost(self, e) -> Elem:
        return self.monomial((), (e,))

    def path(self, edges) -> Elem:
        return self.monomial(tuple(edges))

    def ghost_path(self, edges) -> Elem:
        """``p*`` for the real path ``p``."""
        return self.monomial((), tuple(edges))

    # generators and relations ---------------------------------------------------------
    def generators(self):
        out = {v: self.vertex(v) for v in self.graph.vertices}
        for name, _, _ in self.graph.edges:
            out[name] = self.edge(name)
            out[name + "*"] = self.ghost(name)
        return out

    def relations(self):
        one = Fraction(1)
        g = self.graph
        rels = []
        for v in g.vertices:
            for w in g.vertices:
                rels.append(([(one, (v, w))], [(one, (v,))] if v == w else []))
        for name, s, d in g.edges:
            rels.append(([(one, (s, name))], [(one, (name,))]))
            rels.append(([(one, (name, d))], [(one, (name,))]))
            rels.append(([(one, (d, name + "*"))], [(one, (name + "*",))]))
            rels.append(([(one, (name + "*", s))], [(one, (name + "*",))]))
            for other, _, _ in g.edges:
                rels.append(([(one, (name + "*", other))], [(one, (d,))] if other == name else []))
        for i, v in enumerate(g.vertices):
            if self.emits[i]:
                lhs = [(one, (g.edges[e][0], g.edges[e][0] + "*")) for e in self.emits[i]]
                rels.append((lhs, [(one, (v,))]))
        rels.append(([(one, (v,)) for v in g.vertices], [(one, ())]))
        return rels

    def key_words(self, k):
        a, b, w = k
        if not a and not b:
            return [(Fraction(1), (self.graph.vertices[w],))]
        names = [self.graph.edges[e][0] for e in a]
        names += [self.graph.edges[e][0] + "*" for e in reversed(b)]
        return [(Fraction(1), tuple(names))]

    def word(self, symbols) -> Elem:
        """Normal form of a product of generator symbols (``"e1"``, ``"e1*"``, ``"v"``)."""
        gens = self.generators()
        val = self.one()
        for s in symbols:
            if s not in gens:
                raise UnknownSymbol(f"unknown symbol {s!r}")
            val = val * gens[s]
        return val

    def parse(self, text: str) -> Elem:
        """Parse sums like ``"e1 e1* + 2 e2 e2* - 1/2 v"`` (juxtaposition multiplies)."""
        text = text.strip()
        if not text:
            return self.zero()
        out = []
        for sign, body in re.findall(r"([+-]?)\s*([^+-]+)", text):
            tokens = body.split()
            coeff = scalars.as_scalar(-1 if sign == "-" else 1)
            syms = []
            for t in tokens:
                try:
                    coeff = coeff * scalars.parse(t)
                except (ValueError, ZeroDivisionError):
                    syms.append(t)
            out.append(self.word(syms) * coeff)
        return self.sum(out)

    # grading ----------------------------------------------------------------------------
    def components(self, x) -> dict:
        out: dict = {}
        for k, c in x.terms.items():
            out.setdefault(self.key_degree(k), {})[k] = c
        return {d: Elem(self, t) for d, t in out.items()}

    def degree(self, x) -> Optional[int]:
        comps = self.components(x)
        if len(comps) > 1:
            raise InputError("element is not homogeneous")
        return next(iter(comps)) if comps else None

    def edge_count_weight(self, edge):
        e = self._edge(edge)
        return lambda k: k[0].count(e) - k[1].count(e)

    def degree_weight(self):
        return lambda k: len(k[0]) - len(k[1])

    # paths ------------------------------------------------------------------------------
    def paths(self, n: int) -> list:
        """All real paths of length ``n`` in lexicographic edge order (``n >= 1``)."""
        out = [(e,) for e in range(len(self.graph.edges))]
        for _ in range(n - 1):
            out = [p + (e,) for p in out for e in self.emits[self.rng_[p[-1]]]]
        return out

    def _reaches(self) -> list:
        nv = len(self.graph.vertices)
        reach = [set() for _ in range(nv)]
        for v in range(nv):
            stack = [self.rng_[e] for e in self.emits[v]]
            while stack:
                w = stack.pop()
                if w not in reach[v]:
                    reach[v].add(w)
                    stack.extend(self.rng_[e] for e in self.emits[w])
        return reach

    def on_cycle(self, v: int) -> bool:
        return v in self._reaches()[v]

    def require_no_sinks(self):
        if self.graph.has_sinks:
            raise SinkPresent("this construction needs a graph without sinks")

    # codec ------------------------------------------------------------------------------
    def format_key(self, k):
        a, b, w = k
        if not a and not b:
            return self.graph.vertices[w] if len(self.graph.vertices) > 1 else "1"
        parts = [self.graph.edges[e][0] for e in a] + [self.graph.edges[e][0] + "*" for e in reversed(b)]
        return " ".join(parts)

    def encode_key(self, k):
        a, b, w = k
        return {"real_path": [self.graph.edges[e][0] for e in a],
                "ghost_path": [self.graph.edges[e][0] for e in b],
                "vertex": self.graph.vertices[w]}

    def decode_key(self, obj):
        a = tuple(self._edge(e) for e in obj.get("real_path", []))
        b = tuple(self._edge(e) for e in obj.get("ghost_path", []))
        el = self.monomial(a, b, vertex=obj.get("vertex") if not a and not b else None)
        if len(el.terms) != 1 or next(iter(el.terms.values())) != 1:
            raise InputError(f"monomial {obj} is not in normal form")
        return next(iter(el.terms))

    def describe(self):
        return {"kind": "lpa", "graph": self.graph.to_json(), "field": self.field}

    # level spans ------------------------------------------------------------------------
    def level_span(self, n: int) -> list:
        """Monomials ``alpha beta*`` with ``|alpha| = |beta| = n`` (normal forms)."""
        if n == 0:
            return [self.vertex(v) for v in self.graph.vertices]
        ps = self.paths(n)
        return [self.monomial(a, b) for a in ps for b in ps if self.rng_[a[-1]] == self.rng_[b[-1]]]

    def level_of(self, x) -> int:
        """Smallest ``n`` with ``x`` in the span of level ``n`` (degree-0 input)."""
        lv = 0
        for a, b, _ in x.terms:
            if len(a) != len(b):
                raise InputError("element is not of degree 0")
            lv = max(lv, len(a))
        return lv

    def window(self, level: int) -> list:
        return self.level_span(level)


class GradedLpa(GradedRing):
    """A Leavitt path algebra viewed as a ``Z``-graded ring over a degree window."""

    def __init__(self, lpa: LeavittPathAlgebra, window: int):
        self.lpa = lpa
        self.group = IntegerWindow(window)
        self.R = lpa
        self.field = lpa.field
        self.has_star = True
        self.name = f"{lpa.name} (|deg| <= {window})"

    def __eq__(self, other):
        return isinstance(other, (GradedLpa, LeavittPathAlgebra)) and (
            other.lpa if isinstance(other, GradedLpa) else other) == self.lpa

    def __hash__(self):
        return hash(self.lpa)

    def zero(self):
        return self.lpa.zero()

    def one(self):
        return self.lpa.one()

    def scalar(self, c):
        return self.lpa.scalar(c)

    def sum(self, items):
        return self.lpa.sum(items)

    def star(self, x):
        return self.lpa.star(x)

    def coerce(self, x):
        return self.lpa.coerce(x)

    def generators(self):
        return self.lpa.generators()

    def relations(self):
        return self.lpa.relations()

    def words(self, x):
        return self.lpa.words(x)

    def encode(self, x):
        return self.lpa.encode(x)

    def decode(self, obj):
        return self.lpa.decode(obj)

    def components(self, s):
        return self.lpa.components(s)

    def embed(self, r):
        return r

    def principal_generators(self, level: int = 1) -> list:
        """Spanning monomials of the principal component up to ``level``."""
        out = []
        for n in range(level + 1):
            out.extend(self.lpa.level_span(n))
        return out

    def principal(self, s):
        for k in s.terms:
            if self.lpa.key_degree(k):
                raise InputError(f"{s} is not in the principal component")
        return s


# frames ---------------------------------------------------------------------------------

def frame_negative(lpa: LeavittPathAlgebra, n: int):
    """Frame pair for degree ``-n``: ghost paths over real paths of length ``n``."""
    lpa.require_no_sinks()
    if n < 1:
        raise InputError("frame_negative needs n >= 1")
    ps = lpa.paths(n)
    x = RingMatrix.column(lpa, [lpa.ghost_path(p) for p in ps])
    y = RingMatrix.column(lpa, [lpa.path(p) for p in ps])
    return x, y


def frame_power(lpa: LeavittPathAlgebra, n: int, edge="e1"):
    """Frame pair ``(e^n, (e*)^n)`` for degree ``n >= 0``; needs a single vertex."""
    if len(lpa.graph.vertices) != 1:
        raise InputError("power frames need a single-vertex graph")
    e = lpa._edge(edge)
    if n == 0:
        return RingMatrix.scalar_matrix(lpa, lpa.one()), RingMatrix.scalar_matrix(lpa, lpa.one())
    return (RingMatrix.scalar_matrix(lpa, lpa.path((e,) * n)),
            RingMatrix.scalar_matrix(lpa, lpa.ghost_path((e,) * n)))


def _first_path_ending_at(lpa: LeavittPathAlgebra, length: int, target: int):
    """Lexicographically first real path of the given length with range ``target``."""
    ne = len(lpa.graph.edges)
    # can[j][v]: a path of length j starting at v ends at target
    can = [{target}]
    for _ in range(length):
        prev = can[-1]
        can.append({v for v in range(len(lpa.graph.vertices)) if any(lpa.rng_[e] in prev for e in lpa.emits[v])})
    path = []
    remaining = length
    for e in range(ne):
        if lpa.rng_[e] in can[remaining - 1]:
            path.append(e)
            break
    else:
        return None
    remaining -= 1
    while remaining:
        v = lpa.rng_[path[-1]]
        e = next(f for f in lpa.emits[v] if lpa.rng_[f] in can[remaining - 1])
        path.append(e)
        remaining -= 1
    return tuple(path)


def _edge_parseval(lpa: LeavittPathAlgebra, e: int, n: int, on_cycle) -> list:
    """Column ``x`` of degree-``n`` elements with ``x^dagger x = e e*``."""
    re_ = lpa.rng_[e]
    if on_cycle[re_]:
        alpha = _first_path_ending_at(lpa, n + 1, re_)
        return [lpa.monomial(alpha, (e,))]
    out = []
    ghost = lpa.ghost(e)
    for f in lpa.emits[re_]:
        out.extend(s * ghost for s in _edge_parseval(lpa, f, n + 1, on_cycle))
    return out


def parseval_frame(lpa: LeavittPathAlgebra, n: int):
    """Column ``z`` of degree-``n`` elements with ``z^dagger z = 1``; returns ``(z, z*)``."""
    lpa.require_no_sinks()
    if n == 0:
        one = RingMatrix.scalar_matrix(lpa, lpa.one())
        return one, one
    if n < 0:
        return frame_negative(lpa, -n)
    reach = lpa._reaches()
    on_cycle = [v in reach[v] for v in range(len(lpa.graph.vertices))]
    entries = []
    for v in range(len(lpa.graph.vertices)):
        for f in lpa.emits[v]:
            entries.extend(_edge_parseval(lpa, f, n, on_cycle))
    z = RingMatrix.column(lpa, entries)
    return z, z.map(lpa.star)


def lpa_frames(lpa: LeavittPathAlgebra, window: int, positive: str = "power") -> FrameSystem:
    """Frame system over ``-window..window``.

    ``positive="power"`` uses ``x_n = e1^n`` (single-vertex graphs);
    ``positive="parseval"`` uses :func:`parseval_frame` in positive degrees.
    Negative degrees always use ghost-path columns.
    """
    S = GradedLpa(lpa, window)
    frames = {0: (RingMatrix.scalar_matrix(S, lpa.one()), RingMatrix.scalar_matrix(S, lpa.one()))}
    for n in range(1, window + 1):
        x, y = frame_negative(lpa, n)
        frames[-n] = (RingMatrix(S, x.entries), RingMatrix(S, y.entries))
        if positive == "power":
            x, y = frame_power(lpa, n)
        elif positive == "parseval":
            x, y = parseval_frame(lpa, n)
        else:
            raise InputError(f"unknown positive frame family {positive!r}")
        frames[n] = (RingMatrix(S, x.entries), RingMatrix(S, y.entries))
    return FrameSystem(S, frames)


def parseval_frames(lpa: LeavittPathAlgebra, window: int) -> FrameSystem:
    return lpa_frames(lpa, window, positive="parseval")


# invertible elements ----------------------------------------------------------------------

def _solve_right_multiple(lpa: LeavittPathAlgebra, u: Elem, target: Elem, span: list):
    """Find ``r`` in ``span`` with ``u r = target`` or return ``None``."""
    prods = [u * m for m in span]
    keys = sorted({k for p in prods for k in p.terms} | set(target.terms), key=lpa.key_sort)
    rows = [[p.terms.get(k, Fraction(0)) for p in prods] for k in keys]
    rhs = [target.terms.get(k, Fraction(0)) for k in keys]
    sol = solve(rows, rhs, len(span))
    if sol is None:
        return None
    return lpa.sum(m * c for m, c in zip(span, sol) if c)


def invertible_from_free_basis(lpa: LeavittPathAlgebra, g: int, u: Elem, max_level: int = 3) -> Elem:
    """Inverse ``v`` of a claimed free basis element ``u`` of the degree-``g`` component.

    Uses ``1 = sum_i x_i y_i`` with ``x_i`` the entries of the degree-``-g`` frame's
    ``y``-column (degree ``g``) and solves ``x_i = u r_i`` inside level windows of
    the principal component.  Both ``uv = 1`` and ``vu = 1`` are checked.
    """
    lpa.require_no_sinks()
    if lpa.degree(u) not in (g, None):
        raise NotABasis(f"{u} is not homogeneous of degree {g}")
    if g == 0:
        xs, ys = [lpa.one()], [lpa.one()]
    elif g > 0:
        xneg, yneg = frame_negative(lpa, g)
        xs, ys = yneg.column_entries(), xneg.column_entries()
    else:
        z, zs = parseval_frame(lpa, -g)
        xs, ys = zs.column_entries(), z.column_entries()
    rs = []
    for xi in xs:
        r = None
        for level in range(max_level + 1):
            r = _solve_right_multiple(lpa, u, xi, lpa.level_span(level))
            if r is not None:
                break
        if r is None:
            raise NotABasis(f"{xi} is not a right multiple of {u} within level {max_level}",
                            element=str(xi))
        rs.append(r)
    v = lpa.sum(r * y for r, y in zip(rs, ys))
    if u * v != lpa.one():
        raise NotABasis("u v != 1", product=str(u * v))
    if v * u != lpa.one():
        raise NotABasis("v u != 1", product=str(v * u))
    return v


def all_monomials(lpa: LeavittPathAlgebra, max_len: int) -> list:
    """Every nonzero ``alpha beta*`` with ``|alpha|, |beta| <= max_len`` as ``(alpha, beta, element)``."""
    paths = [()] + [p for n in range(1, max_len + 1) for p in lpa.paths(n)]
    out = []
    for a, b in itertools.product(paths, repeat=2):
        if not a and not b:
            out.extend(((), (), lpa.vertex(v)) for v in range(len(lpa.graph.vertices)))
            continue
        m = lpa.monomial(a, b)
        if m:
            out.append((a, b, m))
    return out
