"""Ready-made rings and factor systems used by tests, the CLI and examples."""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Optional

from . import scalars
from .errors import NotGraded
from .facsys import FactorSystem, TableAlpha, extract_factor_system
from .graded import GradedRing
from .groups import GroupModel, IntegerWindow, cyclic_group
from .leavitt import LeavittPathAlgebra, lpa_frames, rose
from .matrix import RingMatrix
from .rings import DiagonalAlgebra, LaurentRing, Ring, ScalarField


def l12(field: str = "qi") -> LeavittPathAlgebra:
    """``L(1,2)``: one vertex, loops ``e1`` and ``e2``."""
    return LeavittPathAlgebra(rose(2), field)


def l12_system(window: int = 3, positive: str = "power", sample_level: int = 1):
    """Frames and extracted factor system of ``L(1,2)`` on ``-window..window``."""
    lpa = l12()
    frames = lpa_frames(lpa, window, positive=positive)
    fs = extract_factor_system(frames, generators=frames.S.principal_generators(sample_level))
    return lpa, frames, fs


def crossed_product(group: GroupModel, R: Ring, action: Callable, cocycle: Optional[Callable] = None,
                    cocycle_inverse: Optional[Callable] = None, generators=None) -> FactorSystem:
    """Crossed-product data with ``n_g = 1``.

    ``action(g)`` returns ``{generator name: image}``; ``cocycle(g, h)`` a unit of
    ``R`` (default ``1``) with inverse ``cocycle_inverse(g, h)``.
    """
    one = R.one()
    images, units, omega, omega_t = {}, {}, {}, {}
    for g in group.elements():
        images[g] = {name: RingMatrix.scalar_matrix(R, img) for name, img in action(g).items()}
        units[g] = RingMatrix.scalar_matrix(R, one)
    for g, h in group.pairs():
        w = cocycle(g, h) if cocycle else one
        wi = cocycle_inverse(g, h) if cocycle_inverse else one
        omega[(g, h)] = RingMatrix.scalar_matrix(R, w)
        omega_t[(g, h)] = RingMatrix.scalar_matrix(R, wi)
    sizes = {g: 1 for g in group.elements()}
    return FactorSystem(group, R, sizes, TableAlpha(R, images, units), omega, omega_t, generators=generators)


def trivial_system(order: int = 2, field: str = "q") -> FactorSystem:
    """Group ring of ``Z/order`` over the ground field."""
    R = ScalarField(field)
    return crossed_product(cyclic_group(order), R, lambda g: {}, generators=[R.one()])


def quantum_torus(q=2, window: int = 4, field: str = "q") -> FactorSystem:
    """``k[u^+-1]`` crossed by ``Z`` with ``alpha_n(u) = q^n u``."""
    R = LaurentRing(("u",), field)
    q = scalars.as_scalar(q)
    u, ui = R.var("u"), R.var("u", -1)

    def action(n):
        return {"u": u * (q ** n), "u^-1": ui * (q ** -n)}

    return crossed_product(IntegerWindow(window), R, action)


def heisenberg(window: int = 4, field: str = "q") -> FactorSystem:
    """``k[u^+-1, v^+-1]`` crossed by ``Z`` with ``alpha_n(u) = u v^n`` and ``alpha_n(v) = v``."""
    R = LaurentRing(("u", "v"), field)
    u, v = R.var("u"), R.var("v")

    def action(n):
        return {"u": u * R.var("v", n), "u^-1": R.var("u", -1) * R.var("v", -n),
                "v": v, "v^-1": R.var("v", -1)}

    return crossed_product(IntegerWindow(window), R, action)


def skew_cyclic(k: int = 3, field: str = "q") -> FactorSystem:
    """``k^k`` crossed by ``Z/k`` permuting the idempotents cyclically."""
    R = DiagonalAlgebra(k, field)

    def action(g):
        return {f"p{i}": R.idempotent((i + g) % k) for i in range(k)}

    return crossed_product(cyclic_group(k), R, action)


class GradedLaurent(GradedRing):
    """``k[t^+-1]`` graded by the exponent of ``t``, principal component ``k``."""

    def __init__(self, star_sign: int = 1, window: int = 3, field: str = "qi"):
        self.S = LaurentRing(("t",), field, star_signs=(star_sign,))
        self.group = IntegerWindow(window)
        self.R = ScalarField(field)
        self.field = field
        self.has_star = True
        self.name = f"k[t^+-1] with t* = {'' if star_sign > 0 else '-'}t^-1"

    def zero(self):
        return self.S.zero()

    def one(self):
        return self.S.one()

    def scalar(self, c):
        return self.S.scalar(c)

    def coerce(self, x):
        return self.S.coerce(x)

    def sum(self, items):
        return self.S.sum(items)

    def star(self, x):
        return self.S.star(x)

    def components(self, s):
        out = {}
        for k, c in s.terms.items():
            out.setdefault(k[0], {})[k] = c
        return {d: self.S.sum([self.S.key(k, c) for k, c in t.items()]) for d, t in out.items()}

    def embed(self, r):
        return self.S.scalar(self.R.value(r))

    def principal(self, s):
        comps = self.components(s)
        if any(d != 0 for d in comps):
            raise NotGraded(f"{s} is not of degree 0")
        return self.R.scalar(s.terms.get((0,), Fraction(0)))

    def t(self, power: int = 1):
        return self.S.var("t", power)


def parseval_candidate_value(S: GradedRing, degree, z: RingMatrix):
    """``z^dagger z`` for a column of degree-``degree`` elements."""
    for s in z.column_entries():
        if not S.is_homogeneous_of(s, degree):
            raise NotGraded(f"{s} is not of degree {degree}")
    return (z.dagger() * z).scalar_value()


def skew_laurent(window: int = 3, field: str = "q") -> FactorSystem:
    """``k[u^+-1]`` crossed by ``Z`` with ``alpha_n(u) = (-1)^n u``."""
    R = LaurentRing(("u",), field)
    u, ui = R.var("u"), R.var("u", -1)

    def action(n):
        sign = -1 if n % 2 else 1
        return {"u": u * sign, "u^-1": ui * sign}

    return crossed_product(IntegerWindow(window), R, action)


def skew_laurent_section(window: int = 3, field: str = "q"):
    """Canonical section over ``span{D, u^2 D, u^-2 D}`` (``D = u d/du``) on the
    reconstructed skew Laurent ring; these derivations commute with every ``alpha_n``."""
    from .atiyah import LieBasisSection
    from .lift import EtaFamily, build_lift, laurent_vector_field
    from .reconstruct import reconstruct_ring

    fs = skew_laurent(window, field)
    R = fs.R
    S, frames = reconstruct_ring(fs)
    derivations = [laurent_vector_field(R, "u", R.var("u", k)) for k in (1, 3, -1)]
    samples = [R.var("u", k) for k in range(-3, 4)]
    lifts = [build_lift(frames, fs, d, EtaFamily.zero(fs), samples) for d in derivations]
    structure = {(0, 1): {1: Fraction(2)}, (0, 2): {2: Fraction(-2)}, (1, 2): {0: Fraction(-4)}}
    return LieBasisSection(frames, fs, derivations, structure, lifts, samples)


def l12_sl2_section(window: int = 2):
    """``sl_2`` acting on ``L(1,2)`` through ``delta_A`` for the scalar matrices ``E, F, H``;
    each ``delta_A`` is its own lift."""
    from .atiyah import LieBasisSection
    from .l12 import delta_A_build, diag

    lpa, frames, fs = l12_system(window)
    zero, one = lpa.zero(), lpa.one()
    mats = [RingMatrix(lpa, [[zero, one], [zero, zero]]), RingMatrix(lpa, [[zero, zero], [one, zero]]),
            diag(lpa, 1, -1)]
    derivations = [delta_A_build(lpa, M) for M in mats]
    structure = {(0, 1): {2: Fraction(1)}, (2, 0): {0: Fraction(2)}, (2, 1): {1: Fraction(-2)}}
    samples = lpa.level_span(2)
    return LieBasisSection(frames, fs, derivations, structure, derivations, samples)
