"""Derivations, the lifting conditions and graded lifts.

A :class:`Derivation` is a linear map on a ring handle.  On basis algebras the
value on each basis key is cached, so repeated evaluation on large samples
stays cheap.  Matrices are differentiated entrywise via :meth:`Derivation.matrix`.

:class:`GradedDerivation` is the lift ``s = u x_g -> (delta(u) + u eta(g)) x_g``
built from a frame system, a derivation of the principal component and a
connection family ``eta``.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Optional

from .errors import (Cond1Violation, Cond2Violation, ConditionsNotVerified, GeneratorConditionFails,
                     InputError, MissingInvolution, NotGraded, OutOfWindow, StarCond1Violation,
                     StarCond2Violation, StarNotPreserved)
from .facsys import FactorSystem, hom_decompose, row_to_element
from .graded import FrameSystem
from .groups import IntegerWindow
from .matrix import RingMatrix, kron_right
from .report import Report
from .rings import Elem, Ring
from .scalars import is_scalar


class Derivation:
    """Additive map ``ring -> ring``; Leibniz is checked, not assumed."""

    def __init__(self, ring: Ring, fn: Optional[Callable] = None, key_fn: Optional[Callable] = None,
                 name: str = "derivation", descriptor: Optional[dict] = None):
        if fn is None and key_fn is None:
            raise InputError("a derivation needs a rule")
        self.ring = ring
        self._fn = fn
        self._key_fn = key_fn
        self._cache: dict = {}
        self.name = name
        self.descriptor = descriptor

    def __call__(self, x):
        if is_scalar(x):
            return self.ring.zero()
        if self._key_fn is not None and isinstance(x, Elem):
            base = x.ring
            parts = []
            for k, c in x.terms.items():
                v = self._cache.get(k)
                if v is None:
                    v = self._key_fn(k)
                    self._cache[k] = v
                if v:
                    parts.append(v * c)
            return base.sum(parts)
        return self._fn(x)

    def matrix(self, M: RingMatrix) -> RingMatrix:
        return M.map(self)

    # algebra of derivations ---------------------------------------------------------
    def __add__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.ring, lambda x: self(x) + other(x), name=f"({self.name} + {other.name})")

    def __sub__(self, other: "Derivation") -> "Derivation":
        return Derivation(self.ring, lambda x: self(x) - other(x), name=f"({self.name} - {other.name})")

    def scaled(self, c) -> "Derivation":
        return Derivation(self.ring, lambda x: self(x) * c, name=f"{c}*{self.name}")

    def left_multiplied(self, a) -> "Derivation":
        """``x -> a delta(x)`` (a derivation when ``a`` is central)."""
        return Derivation(self.ring, lambda x: a * self(x), name=f"{a}*{self.name}")

    def bracket(self, other: "Derivation") -> "Derivation":
        return Derivation(self.ring, lambda x: self(other(x)) - other(self(x)),
                          name=f"[{self.name}, {other.name}]")

    # constructors -------------------------------------------------------------------
    @classmethod
    def zero(cls, ring: Ring) -> "Derivation":
        return cls(ring, lambda x: ring.zero(), name="0", descriptor={"kind": "zero"})

    @classmethod
    def from_images(cls, ring: Ring, images: dict, name: str = "delta") -> "Derivation":
        """Leibniz extension of generator images (missing generators map to 0)."""
        gens = ring.generators()
        unknown = set(images) - set(gens)
        if unknown:
            raise InputError(f"images for unknown generators {sorted(unknown)}")
        imgs = {g: ring.coerce(images.get(g, ring.zero())) for g in gens}

        def on_word(word):
            acc = ring.zero()
            for i, w in enumerate(word):
                d = imgs[w]
                if not d:
                    continue
                term = ring.one()
                for a in word[:i]:
                    term = term * gens[a]
                term = term * d
                for a in word[i + 1:]:
                    term = term * gens[a]
                acc = acc + term
            return acc

        def key_fn(k):
            return ring.sum(on_word(w) * c for c, w in ring.key_words(k))

        def fn(x):
            return ring.sum(on_word(w) * c for c, w in ring.words(x))

        d = cls(ring, fn, key_fn if hasattr(ring, "key_words") else None, name=name,
                descriptor={"kind": "generator_images", "images": images})
        d.images = imgs
        return d

    @classmethod
    def from_weight(cls, ring, weight: Callable, name: str = "weight",
                    descriptor: Optional[dict] = None) -> "Derivation":
        """``k -> weight(k) k`` on basis keys (e.g. edge counts on a Leavitt path algebra)."""
        return cls(ring, key_fn=lambda k: ring.map_terms(ring.key(k), weight), name=name, descriptor=descriptor)

    @classmethod
    def inner(cls, ring: Ring, a) -> "Derivation":
        return cls(ring, lambda x: a * x - x * a, name=f"[{a}, -]", descriptor={"kind": "inner", "element": a})

    # checks ---------------------------------------------------------------------------
    def leibniz_report(self, pairs: Iterable) -> Report:
        rep = Report(f"Leibniz rule for {self.name}")
        for a, b in pairs:
            rep.add("leibniz", self(a * b) == self(a) * b + a * self(b), a=a, b=b)
        return rep

    def additivity_report(self, pairs: Iterable) -> Report:
        rep = Report(f"additivity of {self.name}")
        for a, b in pairs:
            rep.add("additive", self(a + b) == self(a) + self(b), a=a, b=b)
        return rep

    def relations_report(self) -> Report:
        """``delta(lhs) = delta(rhs)`` for every declared relation of the ring."""
        rep = Report(f"relations respected by {self.name}")
        ring = self.ring
        for lhs, rhs in ring.relations():
            a = self._terms_value(lhs)
            b = self._terms_value(rhs)
            rep.add("relations", a == b, relation=f"{lhs} = {rhs}")
        return rep

    def _terms_value(self, terms):
        ring = self.ring
        gens = ring.generators()
        imgs = getattr(self, "images", None)
        acc = ring.zero()
        for c, word in terms:
            for i, w in enumerate(word):
                d = imgs[w] if imgs is not None else self(gens[w])
                term = ring.one()
                for a in word[:i]:
                    term = term * gens[a]
                term = term * d
                for a in word[i + 1:]:
                    term = term * gens[a]
                acc = acc + term * c
        return acc

    def star_report(self, samples: Iterable) -> Report:
        ring = self.ring
        if not ring.has_star:
            raise MissingInvolution(f"{ring.name} has no involution")
        rep = Report(f"{self.name} is a *-derivation")
        for s in samples:
            rep.add("star", self(ring.star(s)) == ring.star(self(s)), s=s)
        return rep

    def __repr__(self):
        return f"Derivation({self.name})"


def edge_count_difference(lpa, edge: str = "e1") -> Derivation:
    """``alpha beta* -> (N(alpha) - N(beta)) alpha beta*`` for the edge count ``N``."""
    return Derivation.from_weight(lpa, lpa.edge_count_weight(edge), name=f"N[{edge}]",
                                  descriptor={"kind": "monomial_rule", "rule": "edge_count_difference", "edge": edge})


def degree_derivation(lpa) -> Derivation:
    return Derivation.from_weight(lpa, lpa.degree_weight(), name="deg",
                                  descriptor={"kind": "monomial_rule", "rule": "degree"})


def laurent_vector_field(R, var: str, coeff) -> Derivation:
    """``coeff * d/d var`` on a Laurent ring."""
    return Derivation.from_images(R, {var: coeff, var + "^-1": -(R.var(var, -2) * coeff)},
                                  name=f"({coeff}) d/d{var}")


# connection families ---------------------------------------------------------------------

class EtaFamily:
    """``g -> eta(g)`` with ``eta(e) = 0``, stored as ``eta(g) alpha_g(1)``."""

    def __init__(self, fs: FactorSystem, values: Optional[dict] = None):
        self.fs = fs
        R = fs.R
        self.values = {}
        for g in fs.degrees():
            m = (values or {}).get(g)
            if m is None:
                m = RingMatrix.zeros(R, fs.n(g), fs.n(g))
            if m.shape != (fs.n(g), fs.n(g)):
                raise InputError(f"eta({g}) must be {fs.n(g)}x{fs.n(g)}")
            self.values[g] = m * fs.unit(g)
        e = fs.group.identity
        if not self.values[e].is_zero():
            raise InputError("eta(e) must vanish")

    @classmethod
    def zero(cls, fs: FactorSystem) -> "EtaFamily":
        return cls(fs)

    def __call__(self, g) -> RingMatrix:
        try:
            return self.values[g]
        except KeyError:
            raise OutOfWindow(f"eta({g}) is not available") from None

    def shifted(self, xi: dict) -> "EtaFamily":
        """``eta(g) - xi(g) alpha_g(1)`` for central ``xi``."""
        return EtaFamily(self.fs, {g: self.values[g] - self.fs.unit(g).left_scale(xi[g]) for g in self.values})

    def __add__(self, other: "EtaFamily") -> "EtaFamily":
        return EtaFamily(self.fs, {g: self.values[g] + other.values[g] for g in self.values})

    def __eq__(self, other):
        return isinstance(other, EtaFamily) and self.values == other.values


def _lift_samples(fs: FactorSystem, samples) -> list:
    out = []
    for r in list(fs.generators) + list(samples):
        if r not in out:
            out.append(r)
    return out


def check_lift_conditions(fs: FactorSystem, delta: Derivation, eta: EtaFamily, samples: Iterable = ()) -> Report:
    """The two lifting conditions plus the idempotent identities they rely on."""
    rep = Report("lifting conditions")
    R, G = fs.R, fs.group
    rs = _lift_samples(fs, samples)
    dm = delta.matrix
    for g in fs.degrees():
        p = fs.unit(g)
        dp = dm(p)
        rep.add("idempotent", (p * dp * p).is_zero(), g=g)
        eg = eta(g)
        for r in rs:
            a = fs.alpha(g, r)
            lhs = dm(a) - fs.alpha(g, delta(r))
            rhs = eg * a - a * eg + a * dp
            rep.add("cond1", lhs == rhs, g=g, r=r)
    for g, h in fs.pairs():
        gh = G.mul(g, h)
        w = fs.omega(g, h)
        one_h = RingMatrix.identity(R, fs.n(h))
        p = fs.unit(g)
        rep.add("omega_absorption", (kron_right(p * dm(p), one_h) * w).is_zero(), side="left", g=g, h=h)
        rep.add("omega_absorption", (w * dm(fs.unit(gh)) * fs.unit(gh)).is_zero(), side="right", g=g, h=h)
        rep.add("cond2", defect_matrix(fs, delta, eta, g, h).is_zero(), g=g, h=h)
    return rep


def defect_matrix(fs: FactorSystem, delta: Derivation, eta: EtaFamily, g, h) -> RingMatrix:
    """Right side minus left side of the second lifting condition at ``(g, h)``."""
    R = fs.R
    gh = fs.group.mul(g, h)
    w = fs.omega(g, h)
    one_h = RingMatrix.identity(R, fs.n(h))
    return (kron_right(eta(g), one_h) * w + fs.alpha_matrix(g, eta(h)) * w
            + w * (delta.matrix(fs.unit(gh)) - eta(gh)) - delta.matrix(w))


def raise_lift_failures(rep: Report):
    for tag, exc in (("cond1", Cond1Violation), ("cond2", Cond2Violation),
                     ("star_cond1", StarCond1Violation), ("star_cond2", StarCond2Violation)):
        bad = rep.failures(tag)
        if bad:
            raise exc(f"{len(bad)} failures", **bad[0].detail)
    rep.raise_if_failed()


class GradedDerivation(Derivation):
    """``u x_g -> (delta(u) + u eta(g)) x_g`` on every degree of a frame system."""

    def __init__(self, frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta: EtaFamily,
                 name: str = "lift"):
        self.frames = frames
        self.fs = fs
        self.delta = delta
        self.eta = eta
        S = frames.S
        super().__init__(S, self._apply, key_fn=self._apply_key if _is_basis(S) else None, name=name)

    def _apply_key(self, k):
        lpa = self.frames.S.lpa if hasattr(self.frames.S, "lpa") else self.frames.S
        return self._apply(lpa.key(k))

    def row(self, g, u: RingMatrix) -> RingMatrix:
        return self.delta.matrix(u) + u * self.eta(g)

    def _apply(self, s):
        S = self.frames.S
        out = []
        for g, part in S.components(s).items():
            if g not in self.frames.frames:
                raise OutOfWindow(f"degree {g} is outside the frame window")
            u = hom_decompose(self.frames, g, part)
            out.append(row_to_element(self.frames, g, self.row(g, u)))
        return S.sum(out)


def _is_basis(S) -> bool:
    return hasattr(S, "lpa")


def build_lift(frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta: EtaFamily,
               samples: Iterable = (), verify: bool = True) -> GradedDerivation:
    """The lift of ``delta`` determined by ``eta``; refuses unless both conditions hold."""
    if verify:
        rep = check_lift_conditions(fs, delta, eta, samples)
        if not rep.ok:
            bad = rep.failures()[0]
            raise ConditionsNotVerified(f"{bad.tag} fails", **bad.detail)
    lift = GradedDerivation(frames, fs, delta, eta)
    if verify:
        well = well_definedness_report(lift)
        if not well.ok:
            raise ConditionsNotVerified("lift is not well defined", **well.failures()[0].detail)
    return lift


def well_definedness_report(lift: GradedDerivation) -> Report:
    """Rows ``u`` with ``u x_g = 0`` must be sent to zero."""
    rep = Report("well-definedness")
    fs, frames = lift.fs, lift.frames
    R = fs.R
    for g in fs.degrees():
        n = fs.n(g)
        comp = RingMatrix.identity(R, n) - fs.unit(g)
        for i in range(n):
            u = RingMatrix.unit_row(R, n, i) * comp
            rep.add("null_rows", row_to_element(frames, g, lift.row(g, u)) == frames.S.zero(), g=g, i=i)
    return rep


def eta_from_lift(frames: FrameSystem, fs: FactorSystem, lift: Derivation) -> EtaFamily:
    """``eta(g) = lift(x_g) y_g^t`` read off in every degree."""
    S = frames.S
    values = {}
    for g in fs.degrees():
        x, y = frames.x(g), frames.y(g)
        images = [lift(s) for s in x.column_entries()]
        for s in images:
            if not S.is_homogeneous_of(s, g):
                raise NotGraded(f"lift sends x_{g} outside degree {g}")
        values[g] = RingMatrix(fs.R, [[S.principal(a * b) for b in y.column_entries()] for a in images])
    return EtaFamily(fs, values)


def leibniz_pairs_report(D: Derivation, pairs: Iterable) -> Report:
    return D.leibniz_report(pairs)


# crossed products ------------------------------------------------------------------------

def crossed_lift_conditions(fs: FactorSystem, delta: Derivation, eta: dict, samples: Iterable = ()) -> Report:
    """Lifting conditions for ``n_g = 1``: ``eta`` maps ``g`` to an element of ``R``."""
    rep = Report("crossed-product lifting conditions")
    G, R = fs.group, fs.R
    if any(fs.n(g) != 1 for g in fs.degrees()):
        raise InputError("crossed-product conditions need n_g = 1")
    val = {g: eta.get(g, R.zero()) for g in fs.degrees()}
    rs = _lift_samples(fs, samples)
    for g in fs.degrees():
        for r in rs:
            a = fs.alpha(g, r).scalar_value()
            lhs = delta(a) - fs.alpha(g, delta(r)).scalar_value()
            rhs = val[g] * a - a * val[g]
            rep.add("cond1", lhs == rhs, g=g, r=r, lhs=lhs, rhs=rhs,
                    delta_of_alpha=delta(a), alpha_of_delta=fs.alpha(g, delta(r)).scalar_value())
    for g, h in fs.pairs():
        gh = G.mul(g, h)
        w = fs.omega(g, h).scalar_value()
        lhs = delta(w)
        rhs = val[g] * w + fs.alpha(g, val[h]).scalar_value() * w - w * val[gh]
        rep.add("cond2", lhs == rhs, g=g, h=h)
    return rep


def twisted_difference(fs: FactorSystem, delta: Derivation, g) -> Derivation:
    """``r -> alpha_{g^-1}(delta(alpha_g(r))) - delta(r)`` for a crossed product with
    ``omega(g^-1, g) = 1``, so that ``alpha_{g^-1} alpha_g`` is the identity."""
    G, R = fs.group, fs.R
    gi = G.inv(g)
    if fs.n(g) != 1 or fs.n(gi) != 1:
        raise InputError("the twisted difference needs n_g = 1")
    if fs.omega(gi, g) != RingMatrix.identity(R, 1):
        raise InputError(f"omega({gi}, {g}) is not 1")

    def apply(r):
        moved = delta(fs.alpha(g, r).scalar_value())
        return fs.alpha(gi, moved).scalar_value() - delta(r)

    return Derivation(R, apply, name=f"twist[{g}]")


def innerness_verdict(D: Derivation, samples: Iterable, witness=None) -> str:
    """``"inner"`` when ``witness`` satisfies ``D = [witness, -]`` on the samples,
    ``"witness rejected"`` when it does not, and ``"undetermined"`` without a witness."""
    if witness is None:
        return "undetermined"
    ring = D.ring
    a = ring.coerce(witness)
    if all(D(r) == a * r - r * a for r in samples):
        return "inner"
    return "witness rejected"


# covariant derivatives -------------------------------------------------------------------

def covariant_derivative(fs: FactorSystem, delta: Derivation, eta: EtaFamily, g,
                         samples: Iterable = ()) -> Callable:
    """Row form of ``nabla_g``: ``u -> delta(u) + u eta(g)``; cond1 at ``g`` is checked first."""
    rep = Report("cond1")
    dm = delta.matrix
    p = fs.unit(g)
    for r in _lift_samples(fs, samples):
        a = fs.alpha(g, r)
        rep.add("cond1", dm(a) - fs.alpha(g, delta(r)) == eta(g) * a - a * eta(g) + a * dm(p), g=g, r=r)
    raise_lift_failures(rep)
    eg = eta(g)
    return lambda u: (dm(u) + u * eg) * p


def connection_leibniz_report(fs: FactorSystem, delta: Derivation, eta: EtaFamily, g,
                              rows: Iterable, ring_samples: Iterable) -> Report:
    """``nabla(r s r') = delta(r) s r' + r nabla(s) r' + r s delta(r')`` in row form."""
    nabla = covariant_derivative(fs, delta, eta, g)
    rep = Report(f"two-sided Leibniz at degree {g}")
    p = fs.unit(g)
    rs = list(ring_samples)
    for u in rows:
        u = u * p
        for r, r2 in itertools.product(rs, repeat=2):
            a2 = fs.alpha(g, r2)
            lhs = nabla(u.left_scale(r) * a2)
            rhs = (u.left_scale(delta(r)) * a2 + nabla(u).left_scale(r) * a2
                   + u.left_scale(r) * fs.alpha(g, delta(r2)))
            rep.add("two_sided_leibniz", lhs == rhs * p, g=g, r=r, r2=r2)
    return rep


# integer gradings -------------------------------------------------------------------------

class IntegerConnections:
    """Connections ``nabla_k`` on every component of a ``Z``-window from ``nabla_1``.

    ``nabla_1(u x_1) = delta(u) x_1 + u eta1 x_1``; ``nabla_{-1}`` is the dual
    connection, and higher degrees are tensor powers computed by splitting
    with ``1 = y_{-1}^t x_{-1}`` (positive) or ``1 = y_1^t x_1`` (negative).
    """

    def __init__(self, frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta1: RingMatrix):
        if not isinstance(fs.group, IntegerWindow):
            raise InputError("integer connections need an integer window")
        self.frames = frames
        self.fs = fs
        self.delta = delta
        self.eta1 = eta1 * fs.unit(1)
        self.S = frames.S
        self._memo: dict = {}

    def _cached(self, k, s):
        key = (k, s)
        hit = self._memo.get(key)
        if hit is None:
            hit = self._compute(k, s)
            self._memo[key] = hit
        return hit

    def __call__(self, k: int, s):
        if abs(k) > self.fs.group.bound:
            raise OutOfWindow(f"degree {k} is outside the window")
        if _is_basis(self.S) and len(s.terms) > 1:
            lpa = self.S.lpa
            return lpa.sum(self._cached(k, lpa.key(kk, 1)) * c for kk, c in s.terms.items())
        return self._cached(k, s)

    def _compute(self, k, s):
        S, fr = self.S, self.frames
        if k == 0:
            return S.embed(self.delta(S.principal(s)))
        if k == 1:
            u = hom_decompose(fr, 1, s)
            return row_to_element(fr, 1, self.delta.matrix(u) + u * self.eta1)
        if k == -1:
            out = []
            for a, b in zip(fr.y(-1).column_entries(), fr.x(-1).column_entries()):
                ta = S.embed(self.delta(S.principal(s * a)))
                out.append((ta - s * self(1, a)) * b)
            return S.sum(out)
        if k > 1:
            out = []
            for a, b in zip(fr.y(-1).column_entries(), fr.x(-1).column_entries()):
                rest = b * s
                out.append(self(1, a) * rest + a * self(k - 1, rest))
            return S.sum(out)
        out = []
        for a, b in zip(fr.y(1).column_entries(), fr.x(1).column_entries()):
            rest = b * s
            out.append(self(-1, a) * rest + a * self(k + 1, rest))
        return S.sum(out)

    def eta(self) -> EtaFamily:
        fs, fr, S = self.fs, self.frames, self.S
        values = {}
        for k in fs.degrees():
            images = [self(k, s) for s in fr.x(k).column_entries()]
            values[k] = RingMatrix(fs.R, [[S.principal(a * b) for b in fr.y(k).column_entries()] for a in images])
        return EtaFamily(fs, values)

    def dual_pairing_report(self, coefficient_rows: Iterable, degree_one_samples: Iterable,
                            degree_minus_one_samples: Iterable = ()) -> Report:
        """``nu(nu^-1(f)) = f`` and ``nu^-1(nu(t)) = t`` for ``nu(t)(s) = t s``."""
        fr, S = self.frames, self.S
        xs, ys = fr.x(-1).column_entries(), fr.y(-1).column_entries()
        rep = Report("dual pairing")
        ones = list(degree_one_samples)
        for c in coefficient_rows:
            def f(s, c=c):
                return S.sum(S.embed(ci) * (b * s) for ci, b in zip(c.row_entries(), xs))
            t = S.sum(f(a) * b for a, b in zip(ys, xs))
            for s in ones:
                rep.add("nu_nu_inverse", t * s == f(s), s=s)
        for t in degree_minus_one_samples:
            back = S.sum((t * a) * b for a, b in zip(ys, xs))
            rep.add("nu_inverse_nu", back == t, t=t)
        return rep


def generator_condition(fs: FactorSystem, delta: Derivation, eta1: RingMatrix, samples: Iterable = ()) -> Report:
    """The degree-one lifting condition ``[delta, alpha_1](r) = [eta1, alpha_1(r)] + alpha_1(r) delta(alpha_1(1))``."""
    rep = Report("generator condition")
    dm = delta.matrix
    p = fs.unit(1)
    e1 = eta1 * p
    for r in _lift_samples(fs, samples):
        a = fs.alpha(1, r)
        rep.add("generator_condition", dm(a) - fs.alpha(1, delta(r)) == e1 * a - a * e1 + a * dm(p), r=r)
    return rep


def z_lift_from_generator(frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta1: RingMatrix,
                          samples: Iterable = ()):
    """Lift of ``delta`` over a ``Z``-window from degree-one data; returns ``(lift, eta, xi)``."""
    from .cohomology import coboundary_solve, defect_cochain, integer_beta

    samples = list(samples)
    cond = generator_condition(fs, delta, eta1, samples)
    if not cond.ok:
        raise GeneratorConditionFails("degree-one condition fails", **cond.failures()[0].detail)
    conns = IntegerConnections(frames, fs, delta, eta1)
    eta = conns.eta()
    delta_cochain = defect_cochain(frames, fs, delta, eta)
    xi = coboundary_solve(delta_cochain, integer_beta(frames), group=fs.group)
    shifted = eta.shifted(xi.values_with_identity(fs))
    lift = build_lift(frames, fs, delta, shifted, samples)
    return lift, shifted, xi


# involutions -------------------------------------------------------------------------------

def star_lift_conditions(fs: FactorSystem, delta: Derivation, eta: EtaFamily, samples: Iterable = ()) -> Report:
    """Symmetric forms of the lifting conditions for Parseval frames ``(z, z*)``."""
    rep = Report("*-lifting conditions")
    R, G = fs.R, fs.group
    dm = delta.matrix
    for g in fs.degrees():
        eg, egd = eta(g), eta(g).dagger()
        for r in _lift_samples(fs, samples):
            a = fs.alpha(g, r)
            rep.add("star_cond1", dm(a) == eg * a + fs.alpha(g, delta(r)) + a * egd, g=g, r=r)
    for g, h in fs.pairs():
        gh = G.mul(g, h)
        w = fs.omega(g, h)
        one_h = RingMatrix.identity(R, fs.n(h))
        rhs = kron_right(eta(g), one_h) * w + fs.alpha_matrix(g, eta(h)) * w + w * eta(gh).dagger()
        rep.add("star_cond2", dm(w) == rhs, g=g, h=h)
    return rep


def star_lift_check(frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta: EtaFamily,
                    samples: Iterable = (), homogeneous_samples: Iterable = ()) -> GradedDerivation:
    from .facsys import is_parseval_shaped
    from .errors import NotParseval
    if not is_parseval_shaped(frames):
        raise NotParseval("frames are not of the form (z, z*)")
    rep = star_lift_conditions(fs, delta, eta, samples)
    raise_lift_failures(rep)
    lift = build_lift(frames, fs, delta, eta, samples)
    S = frames.S
    for s in homogeneous_samples:
        if lift(S.star(s)) != S.star(lift(s)):
            raise StarNotPreserved("lift does not commute with *", s=s)
    return lift
