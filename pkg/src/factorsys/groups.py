"""Group models: finite groups given by a table, and windows of the integers."""

from __future__ import annotations

import itertools
from typing import Hashable, Iterable

from .errors import InputError, OutOfWindow


class GroupModel:
    identity: Hashable

    def elements(self) -> list:
        raise NotImplementedError

    def mul(self, g, h):
        raise NotImplementedError

    def inv(self, g):
        raise NotImplementedError

    def contains(self, g) -> bool:
        return g in self._element_set

    def defined(self, g, h) -> bool:
        try:
            self.mul(g, h)
            return True
        except OutOfWindow:
            return False

    def pairs(self) -> list:
        """All ``(g, h)`` whose product lies in the model."""
        return [(g, h) for g in self.elements() for h in self.elements() if self.defined(g, h)]

    def triples(self) -> list:
        """All ``(g, h, k)`` for which ``gh``, ``hk`` and ``ghk`` lie in the model."""
        out = []
        for g, h, k in itertools.product(self.elements(), repeat=3):
            if self.defined(g, h) and self.defined(h, k):
                gh = self.mul(g, h)
                if self.defined(gh, k):
                    out.append((g, h, k))
        return out

    def tuples(self, p: int) -> list:
        """``p``-tuples all of whose consecutive partial products are defined."""
        out = []
        for t in itertools.product(self.elements(), repeat=p):
            if all(self._span_defined(t[i:j]) for i in range(p) for j in range(i + 1, p + 1)):
                out.append(t)
        return out

    def _span_defined(self, t) -> bool:
        acc = self.identity
        for g in t:
            if not self.defined(acc, g):
                return False
            acc = self.mul(acc, g)
        return True

    def product(self, items: Iterable):
        acc = self.identity
        for g in items:
            acc = self.mul(acc, g)
        return acc

    def key(self, *gs) -> str:
        return ",".join(str(g) for g in gs)

    def parse_element(self, text):
        raise NotImplementedError


class FiniteGroup(GroupModel):
    """A finite group from an explicit multiplication table."""

    def __init__(self, elements: list, table: dict, name: str = "G"):
        self._elements = list(elements)
        self._element_set = set(self._elements)
        self.table = dict(table)
        self.name = name
        self._validate()

    def _validate(self):
        els = self._elements
        for g in els:
            for h in els:
                if (g, h) not in self.table or self.table[(g, h)] not in self._element_set:
                    raise InputError(f"table incomplete at ({g}, {h})")
        ids = [e for e in els if all(self.table[(e, g)] == g == self.table[(g, e)] for g in els)]
        if len(ids) != 1:
            raise InputError("no two-sided identity")
        self.identity = ids[0]
        self._inverse = {}
        for g in els:
            invs = [h for h in els if self.table[(g, h)] == self.identity == self.table[(h, g)]]
            if len(invs) != 1:
                raise InputError(f"{g} has no inverse")
            self._inverse[g] = invs[0]
        for a, b, c in itertools.product(els, repeat=3):
            if self.table[(self.table[(a, b)], c)] != self.table[(a, self.table[(b, c)])]:
                raise InputError(f"table not associative at ({a}, {b}, {c})")

    def elements(self):
        return list(self._elements)

    def mul(self, g, h):
        return self.table[(g, h)]

    def inv(self, g):
        return self._inverse[g]

    def defined(self, g, h):
        return True

    def parse_element(self, text):
        for g in self._elements:
            if str(g) == str(text):
                return g
        raise InputError(f"unknown group element {text!r}")

    def describe(self):
        return {"kind": "finite", "name": self.name, "elements": [str(g) for g in self._elements],
                "table": [[str(self.table[(g, h)]) for h in self._elements] for g in self._elements]}

    def __eq__(self, other):
        return isinstance(other, FiniteGroup) and self._elements == other._elements and self.table == other.table

    def __hash__(self):
        return hash(tuple(self._elements))


def cyclic_group(n: int) -> FiniteGroup:
    els = list(range(n))
    return FiniteGroup(els, {(a, b): (a + b) % n for a in els for b in els}, name=f"Z/{n}")


class IntegerWindow(GroupModel):
    """The integers ``-N..N``; products leaving the window raise ``OutOfWindow``."""

    identity = 0

    def __init__(self, bound: int):
        if bound < 1:
            raise InputError("window bound must be at least 1")
        self.bound = bound
        self._element_set = set(range(-bound, bound + 1))

    def elements(self):
        return list(range(-self.bound, self.bound + 1))

    def mul(self, g, h):
        s = g + h
        if abs(s) > self.bound:
            raise OutOfWindow(f"{g} + {h} leaves the window [-{self.bound}, {self.bound}]")
        return s

    def defined(self, g, h):
        return abs(g + h) <= self.bound

    def inv(self, g):
        return -g

    def parse_element(self, text):
        return int(text)

    def describe(self):
        return {"kind": "integers", "window": self.bound}

    def __eq__(self, other):
        return isinstance(other, IntegerWindow) and other.bound == self.bound

    def __hash__(self):
        return hash(("Z", self.bound))


def group_from_json(obj) -> GroupModel:
    kind = obj.get("kind")
    if kind == "integers":
        return IntegerWindow(int(obj["window"]))
    if kind == "cyclic":
        return cyclic_group(int(obj["order"]))
    if kind == "finite":
        els = obj["elements"]
        table = {(g, h): obj["table"][i][j] for i, g in enumerate(els) for j, h in enumerate(els)}
        return FiniteGroup(els, table, name=obj.get("name", "G"))
    raise InputError(f"unknown group kind {kind!r}")
