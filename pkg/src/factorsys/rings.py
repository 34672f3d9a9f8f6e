"""Ring handles.

A ring handle owns its elements' arithmetic.  Most rings here are *basis
algebras*: every element is a finite linear combination of basis keys, and
the handle supplies the product of two keys as another such combination.
The element class :class:`Elem` is shared by all of them; concrete handles
only describe keys (Laurent exponents, matrix units, LPA path monomials...).

The generic contract used by the rest of the library is small:

* ``zero()``, ``one()``, ``scalar(c)``, ``sum(items)``
* ``star(x)`` when ``has_star`` is true
* ``generators()`` and ``relations()`` for homomorphism / derivation checks
* ``words(x)``: expansion of ``x`` into scalar multiples of generator words
* ``encode(x)`` / ``decode(obj)`` for JSON
"""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable

from . import scalars
from .errors import InputError, MissingInvolution, UnknownSymbol
from .scalars import Scalar, conj, is_scalar


class Ring:
    """Abstract ring handle."""

    name = "ring"
    field = "qi"
    has_star = False
    windowed = False

    def zero(self):
        raise NotImplementedError

    def one(self):
        raise NotImplementedError

    def scalar(self, c):
        return self.one() * c

    def sum(self, items: Iterable):
        acc = self.zero()
        for x in items:
            acc = acc + x
        return acc

    def star(self, x):
        raise MissingInvolution(f"{self.name} has no involution")

    def generators(self) -> dict:
        return {}

    def relations(self) -> list:
        return []

    def words(self, x) -> list:
        raise NotImplementedError

    def coerce(self, x):
        if is_scalar(x):
            return self.scalar(x)
        return x

    def eval_terms(self, terms) -> object:
        """Evaluate ``[(coeff, word), ...]`` inside this ring."""
        gens = self.generators()
        out = []
        for c, word in terms:
            val = self.scalar(c)
            for w in word:
                val = val * gens[w]
            out.append(val)
        return self.sum(out)


class Elem:
    """Element of a basis algebra: ``{key: nonzero scalar}``."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: "BasisAlgebra", terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # construction helpers -------------------------------------------------
    def _wrap(self, terms):
        return Elem(self.ring, terms)

    def _other_terms(self, other):
        if isinstance(other, Elem):
            if other.ring is not self.ring and other.ring != self.ring:
                raise InputError("elements of different rings")
            return other.terms
        if is_scalar(other):
            return {k: c * other for k, c in self.ring.one_terms.items()} if other else {}
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, other):
        ot = self._other_terms(other)
        if ot is None:
            return NotImplemented
        if not ot:
            return self
        if not self.terms:
            return self._wrap(dict(ot))
        out = dict(self.terms)
        for k, c in ot.items():
            v = out.get(k)
            if v is None:
                out[k] = c
            else:
                v = v + c
                if v:
                    out[k] = v
                else:
                    del out[k]
        return self._wrap(out)

    __radd__ = __add__

    def __neg__(self):
        return self._wrap({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        if is_scalar(other):
            return self + (-other)
        if isinstance(other, Elem):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if is_scalar(other):
            if not other:
                return self._wrap({})
            return self._wrap({k: c * other for k, c in self.terms.items()})
        if not isinstance(other, Elem):
            return NotImplemented
        ring = self.ring
        if other.ring is not ring and other.ring != ring:
            raise InputError("elements of different rings")
        prod = ring.key_product
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in other.terms.items():
                p = prod(k1, k2)
                if not p:
                    continue
                c12 = c1 * c2
                for k, c in p.items():
                    v = out.get(k)
                    v = c12 * c if v is None else v + c12 * c
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return self._wrap(out)

    def __rmul__(self, other):
        if is_scalar(other):
            return self * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative powers are not defined generically")
        acc = self.ring.one()
        for _ in range(n):
            acc = acc * self
        return acc

    # comparison -------------------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, Elem):
            return self.ring == other.ring and self.terms == other.terms
        if is_scalar(other):
            return self.terms == self._other_terms(other)
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        return self.ring.format(self)

    __str__ = __repr__

    @property
    def is_zero(self) -> bool:
        return not self.terms


class BasisAlgebra(Ring):
    """Ring whose elements are combinations of basis keys."""

    one_terms: dict = {}

    def __init__(self):
        self._product_cache: dict = {}

    def zero(self):
        return Elem(self, {})

    def one(self):
        return Elem(self, dict(self.one_terms))

    def scalar(self, c):
        c = scalars.as_scalar(c)
        if not c:
            return self.zero()
        return Elem(self, {k: v * c for k, v in self.one_terms.items()})

    def key(self, k, c=1):
        return Elem(self, {k: Fraction(c) if isinstance(c, int) else c})

    def sum(self, items):
        out: dict = {}
        for x in items:
            if is_scalar(x):
                x = self.scalar(x)
            for k, c in x.terms.items():
                v = out.get(k)
                v = c if v is None else v + c
                if v:
                    out[k] = v
                else:
                    out.pop(k, None)
        return Elem(self, out)

    def key_product(self, k1, k2) -> dict:
        cache = self._product_cache
        pair = (k1, k2)
        hit = cache.get(pair)
        if hit is None:
            hit = self._key_product(k1, k2)
            cache[pair] = hit
        return hit

    def _key_product(self, k1, k2) -> dict:
        raise NotImplementedError

    # involution --------------------------------------------------------------
    def key_star(self, k) -> dict:
        raise MissingInvolution(f"{self.name} has no involution")

    def star(self, x):
        if not self.has_star:
            raise MissingInvolution(f"{self.name} has no involution")
        return self.sum(Elem(self, {kk: conj(c) * cc for kk, cc in self.key_star(k).items()})
                        for k, c in x.terms.items())

    # words -------------------------------------------------------------------
    def key_words(self, k) -> list:
        """Expansion of a basis key into ``[(coeff, word)]``."""
        raise NotImplementedError

    def words(self, x) -> list:
        out = []
        for k, c in self.sorted_terms(x):
            for cc, w in self.key_words(k):
                out.append((c * cc, w))
        return out

    def map_terms(self, x, weight):
        """``sum c*weight(k)*k``; ``weight`` returns a scalar per key."""
        out = {}
        for k, c in x.terms.items():
            w = weight(k)
            if w:
                out[k] = c * w
        return Elem(self, out)

    # formatting and codecs -----------------------------------------------------
    def key_sort(self, k):
        return k

    def sorted_terms(self, x):
        return sorted(x.terms.items(), key=lambda kc: self.key_sort(kc[0]))

    def format_key(self, k) -> str:
        return str(k)

    def format(self, x) -> str:
        if not x.terms:
            return "0"
        out = ""
        for k, c in self.sorted_terms(x):
            mono = self.format_key(k)
            negative = not isinstance(c, scalars.QI) and c < 0
            mag = -c if negative else c
            if mono == "1":
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            if not out:
                out = ("-" if negative else "") + body
            else:
                out += (" - " if negative else " + ") + body
        return out

    def encode_key(self, k):
        raise NotImplementedError

    def decode_key(self, obj):
        raise NotImplementedError

    def encode(self, x) -> list:
        return [dict(self.encode_key(k), coeff=scalars.encode(c)) for k, c in self.sorted_terms(x)]

    def decode(self, obj):
        if is_scalar(obj) or isinstance(obj, str):
            return self.scalar(scalars.decode(obj))
        return self.sum(self.key(self.decode_key(t), scalars.decode(t["coeff"])) for t in obj)

    def coordinates(self, x) -> dict:
        return x.terms


class ScalarField(BasisAlgebra):
    """The ground field as a ring: rationals (``q``) or Gaussian rationals (``qi``)."""

    one_terms = {(): Fraction(1)}
    has_star = True

    def __init__(self, field: str = "q"):
        super().__init__()
        self.field = field
        self.name = "Q" if field == "q" else "Q(i)"

    def __eq__(self, other):
        return isinstance(other, ScalarField) and other.field == self.field

    def __hash__(self):
        return hash(("scalar", self.field))

    def _key_product(self, k1, k2):
        return {(): Fraction(1)}

    def key_star(self, k):
        return {(): Fraction(1)}

    def key_words(self, k):
        return [(Fraction(1), ())]

    def format_key(self, k):
        return "1"

    def encode_key(self, k):
        return {}

    def decode_key(self, obj):
        return ()

    def value(self, x) -> Scalar:
        return x.terms.get((), Fraction(0))

    def describe(self):
        return {"kind": "scalar", "field": self.field}


class LaurentRing(BasisAlgebra):
    """Commutative Laurent polynomials ``k[x1^{+-1}, ..., xm^{+-1}]``.

    ``star_signs`` optionally makes it a *-ring with ``x* = sign * x^{-1}``
    (sign ``+1`` is the unitary involution, ``-1`` the indefinite one).
    """

    def __init__(self, variables, field: str = "qi", star_signs=None):
        super().__init__()
        self.variables = tuple(variables)
        self.field = field
        self.nvars = len(self.variables)
        self.one_terms = {(0,) * self.nvars: Fraction(1)}
        self.star_signs = tuple(star_signs) if star_signs is not None else None
        self.has_star = self.star_signs is not None
        self.name = "k[" + ",".join(f"{v}^+-1" for v in self.variables) + "]"

    def __eq__(self, other):
        return (isinstance(other, LaurentRing) and other.variables == self.variables
                and other.star_signs == self.star_signs and other.field == self.field)

    def __hash__(self):
        return hash(("laurent", self.variables, self.star_signs))

    def _key_product(self, k1, k2):
        return {tuple(a + b for a, b in zip(k1, k2)): Fraction(1)}

    def key_star(self, k):
        sign = 1
        for s, a in zip(self.star_signs, k):
            if s < 0 and a % 2:
                sign = -sign
        return {tuple(-a for a in k): Fraction(sign)}

    def var(self, name: str, power: int = 1):
        idx = self.variables.index(name)
        k = [0] * self.nvars
        k[idx] = power
        return self.key(tuple(k))

    def monomial(self, exps, c=1):
        return self.key(tuple(exps), scalars.as_scalar(c))

    def generators(self):
        out = {}
        for v in self.variables:
            out[v] = self.var(v)
            out[v + "^-1"] = self.var(v, -1)
        return out

    def relations(self):
        one = Fraction(1)
        rels = []
        for v in self.variables:
            rels.append(([(one, (v, v + "^-1"))], [(one, ())]))
            rels.append(([(one, (v + "^-1", v))], [(one, ())]))
        for a, b in itertools.combinations(self.variables, 2):
            rels.append(([(one, (a, b))], [(one, (b, a))]))
        return rels

    def key_words(self, k):
        word = []
        for v, a in zip(self.variables, k):
            word.extend([v] * a if a > 0 else [v + "^-1"] * (-a))
        return [(Fraction(1), tuple(word))]

    def format_key(self, k):
        parts = []
        for v, a in zip(self.variables, k):
            if a == 1:
                parts.append(v)
            elif a:
                parts.append(f"{v}^{a}")
        return "*".join(parts) if parts else "1"

    def encode_key(self, k):
        return {"exponents": list(k)}

    def decode_key(self, obj):
        return tuple(obj["exponents"])

    def key_sort(self, k):
        return k

    def window(self, bound: int) -> list:
        """All monomials with every exponent in ``[-bound, bound]``."""
        return [self.key(e) for e in itertools.product(range(-bound, bound + 1), repeat=self.nvars)]

    def exponent_derivation_weight(self, name: str):
        idx = self.variables.index(name)
        return lambda k: k[idx]

    def describe(self):
        d = {"kind": "laurent", "variables": list(self.variables), "field": self.field}
        if self.star_signs is not None:
            d["star_signs"] = list(self.star_signs)
        return d


class DiagonalAlgebra(BasisAlgebra):
    """``k^m`` with orthogonal idempotents ``p0 .. p{m-1}`` (commutative)."""

    has_star = True

    def __init__(self, size: int, field: str = "q"):
        super().__init__()
        self.size = size
        self.field = field
        self.one_terms = {i: Fraction(1) for i in range(size)}
        self.name = f"k^{size}"

    def __eq__(self, other):
        return isinstance(other, DiagonalAlgebra) and other.size == self.size

    def __hash__(self):
        return hash(("diag", self.size))

    def _key_product(self, k1, k2):
        return {k1: Fraction(1)} if k1 == k2 else {}

    def key_star(self, k):
        return {k: Fraction(1)}

    def idempotent(self, i):
        return self.key(i)

    def vector(self, values):
        return self.sum(self.key(i, scalars.as_scalar(c)) for i, c in enumerate(values) if c)

    def generators(self):
        return {f"p{i}": self.key(i) for i in range(self.size)}

    def relations(self):
        one = Fraction(1)
        rels = []
        for i in range(self.size):
            for j in range(self.size):
                rhs = [(one, (f"p{i}",))] if i == j else []
                rels.append(([(one, (f"p{i}", f"p{j}"))], rhs))
        rels.append(([(one, (f"p{i}",)) for i in range(self.size)], [(one, ())]))
        return rels

    def key_words(self, k):
        return [(Fraction(1), (f"p{k}",))]

    def format_key(self, k):
        return f"p{k}"

    def encode_key(self, k):
        return {"index": k}

    def decode_key(self, obj):
        return int(obj["index"])

    def window(self, bound: int = 0) -> list:
        return [self.key(i) for i in range(self.size)]

    def describe(self):
        return {"kind": "diagonal", "size": self.size, "field": self.field}


class MatrixAlgebra(BasisAlgebra):
    """``M_m(k)`` spanned by matrix units ``E(i,j)``."""

    has_star = True

    def __init__(self, size: int, field: str = "q"):
        super().__init__()
        self.size = size
        self.field = field
        self.one_terms = {(i, i): Fraction(1) for i in range(size)}
        self.name = f"M_{size}(k)"

    def __eq__(self, other):
        return isinstance(other, MatrixAlgebra) and other.size == self.size

    def __hash__(self):
        return hash(("matalg", self.size))

    def _key_product(self, k1, k2):
        return {(k1[0], k2[1]): Fraction(1)} if k1[1] == k2[0] else {}

    def key_star(self, k):
        return {(k[1], k[0]): Fraction(1)}

    def unit(self, i, j):
        return self.key((i, j))

    def from_rows(self, rows):
        return self.sum(self.key((i, j), scalars.as_scalar(c))
                        for i, row in enumerate(rows) for j, c in enumerate(row) if c)

    def generators(self):
        return {f"E{i}{j}": self.key((i, j)) for i in range(self.size) for j in range(self.size)}

    def relations(self):
        one = Fraction(1)
        n = self.size
        rels = []
        for i, j, k, l in itertools.product(range(n), repeat=4):
            rhs = [(one, (f"E{i}{l}",))] if j == k else []
            rels.append(([(one, (f"E{i}{j}", f"E{k}{l}"))], rhs))
        rels.append(([(one, (f"E{i}{i}",)) for i in range(n)], [(one, ())]))
        return rels

    def key_words(self, k):
        return [(Fraction(1), (f"E{k[0]}{k[1]}",))]

    def format_key(self, k):
        return f"E{k[0]}{k[1]}"

    def encode_key(self, k):
        return {"row": k[0], "col": k[1]}

    def decode_key(self, obj):
        return (int(obj["row"]), int(obj["col"]))

    def window(self, bound: int = 0) -> list:
        return [self.key((i, j)) for i in range(self.size) for j in range(self.size)]

    def describe(self):
        return {"kind": "matrix", "size": self.size, "field": self.field}


def parse_word(ring: Ring, text: str):
    """Evaluate a ``*``-separated product of generator names and scalars."""
    gens = ring.generators()
    val = ring.one()
    for tok in text.split("*"):
        tok = tok.strip()
        if not tok:
            continue
        if tok in gens:
            val = val * gens[tok]
        else:
            try:
                val = val * scalars.parse(tok)
            except (ValueError, ZeroDivisionError):
                raise UnknownSymbol(f"unknown symbol {tok!r} for {ring.name}") from None
    return val
