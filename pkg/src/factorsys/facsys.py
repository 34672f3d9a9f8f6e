"""Factor systems ``(n, alpha, omega)`` with the auxiliary ``omega~``.

Two interchangeable representations of ``alpha_g`` share one interface:

* frame closure ``alpha_g(r) = x_g r y_g^t`` (needs an ambient graded ring),
* a table of generator images extended homomorphically.

Rows ``u`` of ``M_{1,n_g}(R)`` describe degree-``g`` elements ``u x_g``;
:func:`view_product` multiplies two such rows using only ``alpha`` and
``omega``, which is how abstract systems are worked with before (or without)
reconstructing a ring.
"""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

from .errors import (DecompositionMismatch, IdentityMismatch,
                     NotParseval, OutOfWindow, WitnessRejected)
from .graded import FrameSystem, GradedRing
from .groups import GroupModel
from .matrix import RingMatrix, block_apply, kron_left, kron_right
from .report import Report
from .rings import Ring


class FrameAlpha:
    """``alpha_g(r) = x_g r y_g^t`` computed in the ambient graded ring."""

    kind = "frame"

    def __init__(self, frames: FrameSystem):
        self.frames = frames

    def __call__(self, g, r) -> RingMatrix:
        S = self.frames.S
        x, y = self.frames.x(g), self.frames.y(g)
        left = [s * S.embed(r) for s in x.column_entries()]
        ys = y.column_entries()
        return RingMatrix(S.R, [[S.principal(a * b) for b in ys] for a in left])


class TableAlpha:
    """``alpha_g`` given by images of ring generators (homomorphic extension).

    ``images[g][name]`` is an ``n_g x n_g`` matrix; ``units[g]`` is ``alpha_g(1)``.
    """

    kind = "table"

    def __init__(self, ring: Ring, images: dict, units: dict):
        self.ring = ring
        self.images = images
        self.units = units

    def __call__(self, g, r) -> RingMatrix:
        imgs = self.images[g]
        unit = self.units[g]
        acc = None
        for c, word in self.ring.words(r):
            if not word:
                term = unit * c
            else:
                term = imgs[word[0]]
                for w in word[1:]:
                    term = term * imgs[w]
                term = term * c
            acc = term if acc is None else acc + term
        if acc is None:
            return RingMatrix.zeros(self.ring, unit.rows, unit.cols)
        return acc


class FactorSystem:
    """Immutable factor-system data.

    ``alpha`` is either a :class:`FrameAlpha` or a :class:`TableAlpha`;
    ``omega`` and ``omega_tilde`` map pairs ``(g, h)`` to matrices over ``R``.
    ``generators`` lists elements of ``R`` on which ``r``-dependent identities
    are always checked.
    """

    def __init__(self, group: GroupModel, R: Ring, sizes: dict, alpha, omega: dict, omega_tilde: dict,
                 frames: Optional[FrameSystem] = None, generators: Optional[list] = None):
        self.group = group
        self.R = R
        self.sizes = dict(sizes)
        self.alpha_impl = alpha
        self.omega_map = dict(omega)
        self.omega_tilde_map = dict(omega_tilde)
        self.frames = frames
        self.generators = list(generators) if generators is not None else list(R.generators().values())
        self._alpha_cache: dict = {}
        self._unit_cache: dict = {}

    # evaluation -------------------------------------------------------------------
    def n(self, g) -> int:
        return self.sizes[g]

    def degrees(self) -> list:
        return [g for g in self.group.elements() if g in self.sizes]

    def alpha(self, g, r) -> RingMatrix:
        key = (g, r)
        hit = self._alpha_cache.get(key)
        if hit is None:
            hit = self.alpha_impl(g, r)
            self._alpha_cache[key] = hit
        return hit

    def unit(self, g) -> RingMatrix:
        """``alpha_g(1)``."""
        hit = self._unit_cache.get(g)
        if hit is None:
            hit = self.alpha(g, self.R.one())
            self._unit_cache[g] = hit
        return hit

    def alpha_matrix(self, g, M: RingMatrix) -> RingMatrix:
        """``alpha_g`` applied entrywise as blocks (A-major)."""
        return block_apply(M, lambda a: self.alpha(g, a), self.n(g), self.R)

    def omega(self, g, h) -> RingMatrix:
        try:
            return self.omega_map[(g, h)]
        except KeyError:
            raise OutOfWindow(f"omega({g},{h}) is not available") from None

    def omega_tilde(self, g, h) -> RingMatrix:
        try:
            return self.omega_tilde_map[(g, h)]
        except KeyError:
            raise OutOfWindow(f"omega~({g},{h}) is not available") from None

    def pairs(self) -> list:
        return [(g, h) for (g, h) in self.group.pairs() if (g, h) in self.omega_map]

    def triples(self) -> list:
        out = []
        for g, h, k in self.group.triples():
            gh, hk = self.group.mul(g, h), self.group.mul(h, k)
            if all(p in self.omega_map for p in ((g, h), (gh, k), (h, k), (g, hk))):
                out.append((g, h, k))
        return out

    def canonical_row(self, g, u: RingMatrix) -> RingMatrix:
        return u * self.unit(g)

    def with_frames(self) -> bool:
        return self.frames is not None


# extraction ------------------------------------------------------------------------

def extract_factor_system(frames: FrameSystem, generators: Optional[list] = None) -> FactorSystem:
    """Factor system of a frame system: ``alpha`` by frame closure, ``omega`` and ``omega~`` exactly."""
    S = frames.S
    G = frames.group
    sizes = {g: frames.size(g) for g in frames.degrees()}
    omega, omega_t = {}, {}
    for g, h in G.pairs():
        gh = G.mul(g, h)
        if g not in sizes or h not in sizes or gh not in sizes:
            continue
        xg, xh, xgh = frames.x(g), frames.x(h), frames.x(gh)
        omega[(g, h)] = S.principal_matrix(kron_right(xg, xh) * frames.y(gh).T)
        omega_t[(g, h)] = S.principal_matrix(xgh * kron_left(frames.y(h), frames.y(g)).T)
    if generators is None:
        generators = getattr(S, "principal_generators", lambda: None)()
    return FactorSystem(G, S.R, sizes, FrameAlpha(frames), omega, omega_t, frames=frames,
                        generators=generators)


# verification ----------------------------------------------------------------------

def _samples(fs: FactorSystem, samples: Iterable) -> list:
    out = []
    for r in list(fs.generators) + list(samples):
        if r not in out:
            out.append(r)
    return out


def verify_axioms(fs: FactorSystem, samples: Iterable = (), check_relations: bool = True,
                  multiplicative_pairs: int = 8) -> Report:
    """Normalizations, (paruni), (coaction), (cocycle) and, for tables, relations."""
    rep = Report("factor system axioms")
    G, R = fs.group, fs.R
    e = G.identity
    rs = _samples(fs, samples)
    rep.add("normalization", fs.n(e) == 1, what="n_e")
    if (e, e) in fs.omega_map:
        rep.add("normalization", fs.omega(e, e) == RingMatrix.identity(R, 1), what="omega(e,e)")
    for r in rs:
        rep.add("normalization", fs.alpha(e, r) == RingMatrix.scalar_matrix(R, r), what="alpha_e", r=r)
    for g in fs.degrees():
        p = fs.unit(g)
        rep.add("idempotent", p * p == p, g=g)
        if (g, e) in fs.omega_map:
            rep.add("normalization", fs.omega(g, e) == p, what="omega(g,e)", g=g)
        if (e, g) in fs.omega_map:
            rep.add("normalization", fs.omega(e, g) == p, what="omega(e,g)", g=g)
        for a, b in itertools.islice(zip(rs, rs[1:] + rs[:1]), multiplicative_pairs):
            rep.add("multiplicative", fs.alpha(g, a * b) == fs.alpha(g, a) * fs.alpha(g, b), g=g, a=a, b=b)
    if check_relations and isinstance(fs.alpha_impl, TableAlpha):
        for g in fs.degrees():
            for lhs, rhs in R.relations():
                ok = _eval_terms_alpha(fs, g, lhs) == _eval_terms_alpha(fs, g, rhs)
                rep.add("relations", ok, g=g, relation=f"{lhs} = {rhs}")
    for g, h in fs.pairs():
        gh = G.mul(g, h)
        w, wt = fs.omega(g, h), fs.omega_tilde(g, h)
        rep.add("paruni", wt * w == fs.unit(gh), side="omega~ omega", g=g, h=h)
        rep.add("paruni", w * wt == fs.alpha_matrix(g, fs.unit(h)), side="omega omega~", g=g, h=h)
        for r in rs:
            lhs = w * fs.alpha(gh, r)
            rhs = fs.alpha_matrix(g, fs.alpha(h, r)) * w
            rep.add("coaction", lhs == rhs, g=g, h=h, r=r)
    for g, h, k in fs.triples():
        gh, hk = G.mul(g, h), G.mul(h, k)
        lhs = kron_right(fs.omega(g, h), RingMatrix.identity(R, fs.n(k))) * fs.omega(gh, k)
        rhs = fs.alpha_matrix(g, fs.omega(h, k)) * fs.omega(g, hk)
        rep.add("cocycle", lhs == rhs, g=g, h=h, k=k)
    return rep


def _eval_terms_alpha(fs, g, terms):
    R = fs.R
    acc = RingMatrix.zeros(R, fs.n(g), fs.n(g))
    gens = R.generators()
    for c, word in terms:
        if not word:
            acc = acc + fs.unit(g) * c
            continue
        m = fs.alpha(g, gens[word[0]])
        for w in word[1:]:
            m = m * fs.alpha(g, gens[w])
        acc = acc + m * c
    return acc


# homogeneous views -------------------------------------------------------------------

def view_product(fs: FactorSystem, g, u: RingMatrix, h, v: RingMatrix):
    """``(u x_g)(v x_h) = u alpha_g(v) omega(g,h) x_gh`` on coefficient rows."""
    gh = fs.group.mul(g, h)
    return gh, u * fs.alpha_matrix(g, v) * fs.omega(g, h)


def hom_decompose(frames: FrameSystem, g, s) -> RingMatrix:
    """Row ``u`` with ``s = u x_g`` and ``u = u alpha_g(1)``; raises on mismatch."""
    S = frames.S
    x, y = frames.x(g), frames.y(g)
    if s and not S.is_homogeneous_of(s, g):
        raise DecompositionMismatch(f"{s} is not in the degree-{g} component", element=s, degree=g)
    u = RingMatrix.row(S.R, [S.principal(s * b) for b in y.column_entries()])
    back = S.sum(S.embed(a) * b for a, b in zip(u.row_entries(), x.column_entries()))
    if back != s:
        raise DecompositionMismatch(f"{s} is not in the degree-{g} component", element=s, degree=g)
    return u


def row_to_element(frames: FrameSystem, g, u: RingMatrix):
    S = frames.S
    return S.sum(S.embed(a) * b for a, b in zip(u.row_entries(), frames.x(g).column_entries()))


# conjugacy ------------------------------------------------------------------------------

def witness_from_frames(frames_a: FrameSystem, frames_b: FrameSystem) -> tuple:
    """``v_g = x'_g y_g^t`` and ``w_g = x_g y'_g^t`` for two frame systems of one ring."""
    S = frames_a.S
    v, w = {}, {}
    for g in frames_a.degrees():
        if g in frames_b.frames:
            v[g] = S.principal_matrix(frames_b.x(g) * frames_a.y(g).T)
            w[g] = S.principal_matrix(frames_a.x(g) * frames_b.y(g).T)
    return v, w


def identity_witness(fs: FactorSystem) -> tuple:
    return ({g: fs.unit(g) for g in fs.degrees()}, {g: fs.unit(g) for g in fs.degrees()})


def verify_conjugacy(fsA: FactorSystem, fsB: FactorSystem, v: dict, w: dict, samples: Iterable = ()) -> Report:
    """Check (v1)-(v3): ``fsB`` is the conjugate of ``fsA`` through ``(v, w)``."""
    rep = Report("conjugacy witness")
    R, G = fsA.R, fsA.group
    rs = _samples(fsA, samples)
    for g in fsA.degrees():
        if g not in v or g not in w:
            rep.add("v1", False, g=g, reason="missing witness")
            continue
        rep.add("v1", v[g] * w[g] == fsB.unit(g), side="v w = alpha'(1)", g=g)
        rep.add("v1", w[g] * v[g] == fsA.unit(g), side="w v = alpha(1)", g=g)
        for r in rs:
            rep.add("v2", fsB.alpha(g, r) * v[g] == v[g] * fsA.alpha(g, r), g=g, r=r)
    for g, h in fsA.pairs():
        if (g, h) not in fsB.omega_map:
            continue
        gh = G.mul(g, h)
        lhs = fsB.omega(g, h) * v[gh]
        rhs = kron_right(v[g], RingMatrix.identity(R, fsB.n(h))) * fsA.alpha_matrix(g, v[h]) * fsA.omega(g, h)
        rep.add("v3", lhs == rhs, g=g, h=h)
    return rep


def conjugate_system(fsA: FactorSystem, v: dict, w: dict, samples: Iterable = ()) -> FactorSystem:
    """Transform ``fsA`` by a witness; the result is re-verified."""
    R, G = fsA.R, fsA.group
    for g in fsA.degrees():
        if w[g] * v[g] != fsA.unit(g):
            raise WitnessRejected("v1", "w_g v_g != alpha_g(1)", g=g)
    sizes = {g: v[g].rows for g in fsA.degrees()}
    base = fsA.alpha

    class ConjugatedAlpha:
        kind = "conjugated"

        def __call__(self, g, r):
            return v[g] * base(g, r) * w[g]

    omega, omega_t = {}, {}
    for g, h in fsA.pairs():
        gh = G.mul(g, h)
        left = kron_right(v[g], RingMatrix.identity(R, sizes[h])) * fsA.alpha_matrix(g, v[h])
        omega[(g, h)] = left * fsA.omega(g, h) * w[gh]
        # omega~' = v_gh omega~ alpha_g(w_h) (w_g |> 1)
        right = fsA.alpha_matrix(g, w[h]) * kron_right(w[g], RingMatrix.identity(R, sizes[h]))
        omega_t[(g, h)] = v[gh] * fsA.omega_tilde(g, h) * right
    fsB = FactorSystem(G, R, sizes, ConjugatedAlpha(), omega, omega_t, generators=fsA.generators)
    verify_axioms(fsB, samples).raise_if_failed()
    verify_conjugacy(fsA, fsB, v, w, samples).raise_if_failed(WitnessRejected)
    return fsB


class GradedIsomorphism:
    """``phi_g(u x'_g) = u v_g x_g`` on coefficient rows, with inverse via ``w_g``."""

    def __init__(self, fsA: FactorSystem, fsB: FactorSystem, v: dict, w: dict, samples: Iterable = ()):
        rep = verify_conjugacy(fsA, fsB, v, w, samples)
        rep.raise_if_failed(WitnessRejected)
        self.fsA, self.fsB, self.v, self.w = fsA, fsB, v, w

    def __call__(self, g, u: RingMatrix) -> RingMatrix:
        return u * self.v[g] * self.fsA.unit(g)

    def inverse(self, g, u: RingMatrix) -> RingMatrix:
        return u * self.w[g] * self.fsB.unit(g)

    def check_multiplicative(self, samples: list) -> Report:
        """``phi(a) phi(b) = phi(ab)`` on ``(g, row)`` samples of the source system."""
        rep = Report("graded isomorphism")
        A, B = self.fsA, self.fsB
        for (g, a), (h, b) in itertools.product(samples, repeat=2):
            if (g, h) not in B.omega_map:
                continue
            gh, ab = view_product(B, g, B.canonical_row(g, a), h, B.canonical_row(h, b))
            _, lhs = view_product(A, g, self(g, a), h, self(h, b))
            rep.add("multiplicative", A.canonical_row(gh, lhs) == self(gh, ab), g=g, h=h)
        return rep


def graded_iso_from_witness(fsA, fsB, v, w, samples=()) -> GradedIsomorphism:
    return GradedIsomorphism(fsA, fsB, v, w, samples)


# involution and Parseval ----------------------------------------------------------------

def is_parseval_shaped(frames: FrameSystem) -> bool:
    S = frames.S
    if not S.has_star:
        return False
    return all(frames.y(g) == frames.x(g).map(S.star) for g in frames.degrees())


def involution_row(fs: FactorSystem, g, w: RingMatrix) -> RingMatrix:
    """``J_g(w^t)`` with ``(w^t z_g)* = J_g(w^t) z_{g^-1}``; verified before returning."""
    frames = fs.frames
    if frames is None or not is_parseval_shaped(frames):
        raise NotParseval("frames are not of the form (z, z*)")
    S, R = frames.S, fs.R
    ginv = fs.group.inv(g)
    zg, zi = frames.x(g), frames.x(ginv)
    zg_dag, zi_dag = zg.dagger(), zi.dagger()
    p = fs.unit(g)
    out = RingMatrix.zeros(R, 1, fs.n(ginv))
    w_star = w.map(R.star).T
    for i in range(fs.n(g)):
        v_row = p.block(i, 0, 1, fs.n(g))
        v_star = S.embed_matrix(v_row.map(R.star).T)
        u_row = S.principal_matrix(zg_dag * v_star * zi_dag)
        inner = (v_row * w_star).scalar_value()
        out = out + u_row * fs.alpha(ginv, inner)
    lhs = S.star(row_to_element(frames, g, w))
    rhs = row_to_element(frames, ginv, out)
    if lhs != rhs:
        raise IdentityMismatch("(w z_g)* != J_g(w) z_{g^-1}", g=g, w=w)
    return out


def parseval_value(S: GradedRing, z: RingMatrix):
    """``z^dagger z`` for a candidate column ``z``."""
    return (z.dagger() * z).scalar_value()


def parseval_factorization_check(frames: FrameSystem, g, r: RingMatrix) -> Report:
    """``r^dagger r = (y_g^t)^dagger y_g^t`` and then ``z = r x_g`` has ``z^dagger z = 1``."""
    S = frames.S
    rep = Report("parseval factorization")
    yt = frames.y(g).T
    target = S.principal_matrix(yt.dagger() * yt)
    rep.add("factorization", r.dagger() * r == target, g=g)
    z = S.embed_matrix(r) * frames.x(g)
    rep.add("parseval", parseval_value(S, z) == S.one(), g=g)
    return rep


def star_compatibility(fs: FactorSystem, samples: Iterable = ()) -> Report:
    """``alpha_g(r*) = alpha_g(r)^dagger`` and ``omega~ = omega^dagger``."""
    rep = Report("star compatibility")
    R = fs.R
    for g in fs.degrees():
        for r in _samples(fs, samples):
            rep.add("alpha_star", fs.alpha(g, R.star(r)) == fs.alpha(g, r).dagger(), g=g, r=r)
    for g, h in fs.pairs():
        rep.add("omega_tilde_star", fs.omega_tilde(g, h) == fs.omega(g, h).dagger(), g=g, h=h)
    return rep
