"""Graded rings rebuilt from abstract factor systems.

An element is a finite map ``g -> u`` with ``u`` a canonical coefficient row
(``u = u alpha_g(1)``).  Products use only ``alpha`` and ``omega``:
``(u, g) * (v, h) = (u alpha_g(v) omega(g, h), gh)``.
"""

from __future__ import annotations

from .errors import InputError
from .facsys import FactorSystem, extract_factor_system, verify_axioms, view_product
from .graded import FrameSystem, GradedRing
from .matrix import RingMatrix


class RecElem:
    __slots__ = ("ring", "parts", "_hash")

    def __init__(self, ring: "ReconstructedRing", parts: dict):
        self.ring = ring
        self.parts = {g: u for g, u in parts.items() if not u.is_zero()}
        self._hash = None

    def _coerce(self, other):
        if isinstance(other, RecElem):
            return other
        return self.ring.coerce(other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.parts)
        for g, u in other.parts.items():
            out[g] = out[g] + u if g in out else u
        return RecElem(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        return RecElem(self.ring, {g: -u for g, u in self.parts.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        from .scalars import is_scalar
        if is_scalar(other):
            return RecElem(self.ring, {g: u * other for g, u in self.parts.items()})
        if not isinstance(other, RecElem):
            return NotImplemented
        fs = self.ring.fs
        out: dict = {}
        for g, u in self.parts.items():
            for h, v in other.parts.items():
                gh, w = view_product(fs, g, u, h, v)
                out[gh] = out[gh] + w if gh in out else w
        return RecElem(self.ring, out)

    def __rmul__(self, other):
        from .scalars import is_scalar
        if is_scalar(other):
            return self * other
        return NotImplemented

    def __eq__(self, other):
        if not isinstance(other, RecElem):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.parts == other.parts

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.parts.items()))
        return self._hash

    def __bool__(self):
        return bool(self.parts)

    def __repr__(self):
        if not self.parts:
            return "0"
        return " + ".join(f"{u} x_{g}" for g, u in sorted(self.parts.items(), key=lambda gu: str(gu[0])))


class ReconstructedRing(GradedRing):
    """The strongly graded ring determined by a verified factor system."""

    name = "reconstructed"

    def __init__(self, fs: FactorSystem):
        self.fs = fs
        self.group = fs.group
        self.R = fs.R
        self.field = fs.R.field
        self.has_star = False

    def element(self, g, u: RingMatrix) -> RecElem:
        if u.shape != (1, self.fs.n(g)):
            raise InputError(f"degree {g} needs a 1x{self.fs.n(g)} row")
        return RecElem(self, {g: u * self.fs.unit(g)})

    def zero(self):
        return RecElem(self, {})

    def one(self):
        return self.embed(self.R.one())

    def scalar(self, c):
        return self.embed(self.R.scalar(c))

    def coerce(self, x):
        if isinstance(x, RecElem):
            return x
        return self.scalar(x)

    def sum(self, items):
        acc = self.zero()
        for x in items:
            acc = acc + x
        return acc

    def components(self, s: RecElem) -> dict:
        return {g: RecElem(self, {g: u}) for g, u in s.parts.items()}

    def embed(self, r) -> RecElem:
        e = self.group.identity
        return RecElem(self, {e: RingMatrix.scalar_matrix(self.R, r)})

    def principal(self, s: RecElem):
        e = self.group.identity
        if any(g != e for g in s.parts):
            raise InputError(f"{s} is not in the principal component")
        return s.parts[e].scalar_value() if e in s.parts else self.R.zero()

    def generators(self) -> dict:
        return {name: self.embed(r) for name, r in self.R.generators().items()}

    def degree_unit(self, g, i: int = 0) -> RecElem:
        return self.element(g, RingMatrix.unit_row(self.R, self.fs.n(g), i))

    def canonical_frames(self) -> FrameSystem:
        """``x_g = (e_i alpha_g(1))_i`` and ``y_g`` from the blocks of ``omega~(g^-1, g)``."""
        fs, G = self.fs, self.group
        frames = {}
        for g in fs.degrees():
            gi = G.inv(g)
            if gi not in fs.sizes:
                continue
            ng, ni = fs.n(g), fs.n(gi)
            xs = [self.element(g, RingMatrix.unit_row(self.R, ng, i)) for i in range(ng)]
            wt = fs.omega_tilde(gi, g)
            ys = [self.element(gi, wt.block(0, i * ni, 1, ni)) for i in range(ng)]
            frames[g] = (RingMatrix.column(self, xs), RingMatrix.column(self, ys))
        return FrameSystem(self, frames)


def reconstruct_ring(fs: FactorSystem, samples=(), verified: bool = False):
    """Return ``(ring, canonical frames)``; unverified input is checked first."""
    if not verified:
        verify_axioms(fs, samples).raise_if_failed()
    S = ReconstructedRing(fs)
    return S, S.canonical_frames()


def round_trip(fs: FactorSystem, samples=()) -> dict:
    """Extract the factor system of a reconstruction and compare with ``fs``."""
    S, frames = reconstruct_ring(fs, samples)
    back = extract_factor_system(frames, generators=fs.generators)
    alpha_ok = all(back.alpha(g, r) == fs.alpha(g, r)
                   for g in fs.degrees() for r in list(fs.generators) + list(samples))
    omega_ok = all(back.omega(g, h) == fs.omega(g, h) for g, h in fs.pairs() if (g, h) in back.omega_map)
    return {"ring": S, "frames": frames, "extracted": back, "alpha": alpha_ok, "omega": omega_ok}


def associativity_report(S: ReconstructedRing, frames: FrameSystem):
    """``(ab)c = a(bc)`` on all triples of frame entries whose degrees stay in the model."""
    from .report import Report
    rep = Report("reconstructed associativity")
    G = S.group
    entries = [(g, s) for g in frames.degrees() for s in frames.x(g).column_entries()]
    for (g, a), (h, b), (k, c) in ((p, q, r) for p in entries for q in entries for r in entries):
        if not (G.defined(g, h) and G.defined(h, k) and G.defined(G.mul(g, h), k)):
            continue
        rep.add("associativity", (a * b) * c == a * (b * c), g=g, h=h, k=k)
    return rep
