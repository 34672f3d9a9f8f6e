"""Sections of the Atiyah sequence over a finite spanning set of derivations,
their curvature, its matrix form and the first Lecomte class."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .cohomology import crossed_hom_from_gauge, gauge_from_crossed_hom
from .errors import (BianchiViolation, BracketNotClosed, ConsistencyMismatch, InputError,
                     KernelNotCentralLine, NotGauge)
from .facsys import FactorSystem, hom_decompose, row_to_element
from .graded import FrameSystem
from .lift import Derivation
from .linalg import left_certificate, solve
from .matrix import RingMatrix
from .report import Report
from .scalars import as_scalar


def _combine(ring, derivations, coeffs: dict) -> Derivation:
    items = [(derivations[k], c) for k, c in coeffs.items() if c]

    def apply(x):
        return ring.sum(d(x) * c for d, c in items)

    return Derivation(ring, apply, name="combination")


class LieBasisSection:
    """Derivations ``delta_1..delta_d`` of ``R`` with structure constants and chosen lifts.

    ``structure[(i, j)]`` maps ``k`` to the coefficient of ``delta_k`` in
    ``[delta_i, delta_j]``; missing pairs mean the bracket is zero.
    """

    def __init__(self, frames: FrameSystem, fs: FactorSystem, derivations: list, structure: dict,
                 lifts: list, samples: Iterable = (), check: bool = True):
        if len(derivations) != len(lifts):
            raise InputError("one lift per derivation is needed")
        self.frames = frames
        self.fs = fs
        self.derivations = list(derivations)
        self.lifts = list(lifts)
        self.structure = {}
        d = len(derivations)
        for i, j in itertools.product(range(d), repeat=2):
            if (i, j) in structure:
                self.structure[(i, j)] = dict(structure[(i, j)])
            elif (j, i) in structure:
                self.structure[(i, j)] = {k: -c for k, c in structure[(j, i)].items()}
            else:
                self.structure[(i, j)] = {}
        self.samples = list(fs.generators) + [s for s in samples if s not in fs.generators]
        if check:
            self.verify()

    @property
    def dimension(self) -> int:
        return len(self.derivations)

    def verify(self):
        S = self.frames.S
        R = self.fs.R
        for i, j in itertools.combinations(range(self.dimension), 2):
            br = self.derivations[i].bracket(self.derivations[j])
            combo = _combine(R, self.derivations, self.structure[(i, j)])
            for r in self.samples:
                if br(r) != combo(r):
                    raise BracketNotClosed(f"[delta_{i}, delta_{j}] does not match the structure constants",
                                           r=r)
        for i, (d, lift) in enumerate(zip(self.derivations, self.lifts)):
            for r in self.samples:
                if lift(S.embed(r)) != S.embed(d(r)):
                    raise InputError(f"lift {i} does not restrict to its derivation", r=r)

    def sigma_of_bracket(self, i, j) -> Derivation:
        return _combine(self.frames.S, self.lifts, self.structure[(i, j)])

    def with_lifts(self, lifts: list) -> "LieBasisSection":
        return LieBasisSection(self.frames, self.fs, self.derivations, self.structure, lifts,
                               check=False)


@dataclass
class Curvature:
    derivation: Derivation
    crossed_hom: dict


def curvature_derivation(sec: LieBasisSection, i, j) -> Derivation:
    """``[sigma_i, sigma_j] - sigma([delta_i, delta_j])`` as a derivation of the ambient ring."""
    S = sec.frames.S
    a, b = sec.lifts[i], sec.lifts[j]
    combo = sec.sigma_of_bracket(i, j)
    return Derivation(S, lambda x: a(b(x)) - b(a(x)) - combo(x), name=f"F({i},{j})")


def atiyah_curvature(sec: LieBasisSection, i, j) -> Curvature:
    F = curvature_derivation(sec, i, j)
    try:
        eta = crossed_hom_from_gauge(sec.frames, sec.fs, F)
    except NotGauge as exc:
        raise NotGauge(f"curvature at ({i},{j}) is not a gauge derivation: {exc}") from None
    return Curvature(F, eta)


def curvature_table(sec: LieBasisSection) -> dict:
    return {(i, j): atiyah_curvature(sec, i, j).crossed_hom
            for i, j in itertools.product(range(sec.dimension), repeat=2)}


def _combo_values(table, coeffs: dict, j, degrees, zero):
    out = {}
    for g in degrees:
        out[g] = zero
        for k, c in coeffs.items():
            out[g] = out[g] + table[(k, j)][g] * c
    return out


def bianchi_check(sec: LieBasisSection) -> Report:
    """The Chevalley-Eilenberg cocycle identity for the curvature on all basis triples."""
    rep = Report("Bianchi identity")
    table = curvature_table(sec)
    R = sec.fs.R
    degrees = list(next(iter(table.values())).keys()) if table else []
    d = sec.dimension
    for a, b, c in itertools.combinations(range(d), 3):
        lhs = {g: R.zero() for g in degrees}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            vals = _combo_values(table, sec.structure[(x, y)], z, degrees, R.zero())
            for g in degrees:
                lhs[g] = lhs[g] + vals[g]
        rhs = {g: R.zero() for g in degrees}
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            gauge = gauge_from_crossed_hom(sec.frames, sec.fs, table[(y, z)])
            acted = Derivation(sec.frames.S, lambda s, L=sec.lifts[x], Gd=gauge: L(Gd(s)) - Gd(L(s)))
            vals = crossed_hom_from_gauge(sec.frames, sec.fs, acted)
            for g in degrees:
                rhs[g] = rhs[g] + vals[g]
        rep.add("bianchi", lhs == rhs, triple=(a, b, c))
    return rep


def require_bianchi(sec: LieBasisSection):
    rep = bianchi_check(sec)
    if not rep.ok:
        raise BianchiViolation("Bianchi identity fails", **rep.failures()[0].detail)
    return rep


# matrix form ------------------------------------------------------------------------------------

def connection_matrix(frames: FrameSystem, fs: FactorSystem, lift: Derivation, g) -> RingMatrix:
    S = frames.S
    return RingMatrix(fs.R, [[S.principal(lift(a) * b) for b in frames.y(g).column_entries()]
                             for a in frames.x(g).column_entries()]) * fs.unit(g)


def curvature_matrices(sec: LieBasisSection, i, j, g):
    """``(eta_i, eta_j, Omega)`` at degree ``g``; ``Omega`` is checked against the curvature."""
    fs, frames = sec.fs, sec.frames
    eta_i = connection_matrix(frames, fs, sec.lifts[i], g)
    eta_j = connection_matrix(frames, fs, sec.lifts[j], g)
    eta_br = connection_matrix(frames, fs, sec.sigma_of_bracket(i, j), g)
    di, dj = sec.derivations[i], sec.derivations[j]
    # rows act on the left, so the commutator term comes out reversed
    omega = di.matrix(eta_j) - dj.matrix(eta_i) + eta_j * eta_i - eta_i * eta_j - eta_br
    curv = atiyah_curvature(sec, i, j)
    R = fs.R
    for row in range(fs.n(g)):
        u = RingMatrix.unit_row(R, fs.n(g), row) * fs.unit(g)
        s = row_to_element(frames, g, u)
        via_omega = row_to_element(frames, g, u * omega)
        if curv.derivation(s) != via_omega:
            raise ConsistencyMismatch("curvature does not act through Omega", g=g, row=row)
        if g in curv.crossed_hom and via_omega != frames.S.embed(curv.crossed_hom[g]) * s:
            raise ConsistencyMismatch("Omega disagrees with the central curvature value", g=g, row=row)
    return eta_i, eta_j, omega


def grassmann_curvature_report(frames: FrameSystem, fs: FactorSystem, d1: Derivation, d2: Derivation,
                               g, rows: Iterable) -> Report:
    """Curvature of ``nabla(u x_g) = (delta(u) + u delta(alpha_g(1))) x_g`` versus
    ``u [d2(alpha_g(1)), d1(alpha_g(1))] x_g``.

    Rows act on the left, so the commutator comes out in the reversed order.
    """
    rep = Report(f"Grassmann curvature at degree {g}")
    p = fs.unit(g)
    br = d1.bracket(d2)

    def nabla(d, s):
        u = hom_decompose(frames, g, s)
        return row_to_element(frames, g, d.matrix(u) + u * d.matrix(p))

    expected_matrix = d2.matrix(p) * d1.matrix(p) - d1.matrix(p) * d2.matrix(p)
    for u in rows:
        s = row_to_element(frames, g, u)
        direct = nabla(d1, nabla(d2, s)) - nabla(d2, nabla(d1, s)) - nabla(br, s)
        formula = row_to_element(frames, g, (u * p) * expected_matrix)
        rep.add("grassmann", direct == formula, g=g, u=u)
    return rep


# change of section ---------------------------------------------------------------------------

def section_change(sec: LieBasisSection, psi: list) -> tuple:
    """``sigma' = sigma + psi`` for crossed homomorphisms ``psi``; returns ``(sigma', report)``."""
    frames, fs = sec.frames, sec.fs
    S = frames.S
    gauges = [gauge_from_crossed_hom(frames, fs, p) for p in psi]
    new_lifts = [Derivation(S, lambda x, L=L, Gd=Gd: L(x) + Gd(x), name="shifted")
                 for L, Gd in zip(sec.lifts, gauges)]
    new = sec.with_lifts(new_lifts)
    rep = Report("change of section")
    d = sec.dimension
    old = curvature_table(sec)
    new_table = curvature_table(new)

    def comm(A, B):
        return Derivation(S, lambda x: A(B(x)) - B(A(x)))

    for i, j in itertools.combinations(range(d), 2):
        d_psi = crossed_hom_from_gauge(frames, fs, Derivation(
            S, lambda x, i=i, j=j: comm(sec.lifts[i], gauges[j])(x) - comm(sec.lifts[j], gauges[i])(x)
            - _combine(S, gauges, sec.structure[(i, j)])(x)))
        sq = crossed_hom_from_gauge(frames, fs, comm(gauges[i], gauges[j]))
        for g in new_table[(i, j)]:
            rep.add("curvature_change", new_table[(i, j)][g] == old[(i, j)][g] + d_psi[g] + sq[g],
                    pair=(i, j), g=g)
    for k in range(d):
        for g in fs.degrees():
            a_psi = connection_matrix(frames, fs, gauges[k], g)
            rep.add("connection_change", connection_matrix(frames, fs, new_lifts[k], g)
                    == connection_matrix(frames, fs, sec.lifts[k], g) + a_psi, k=k, g=g)
    return new, rep


# Lecomte class at p = 1 ------------------------------------------------------------------------

@dataclass
class LecomteVerdict:
    values: dict
    split: bool
    primitive: Optional[list]
    certificate: Optional[list]

    def to_json(self) -> dict:
        from .scalars import encode
        return {"curvature": {f"{i},{j}": encode(v) for (i, j), v in sorted(self.values.items())},
                "class_vanishes": self.split,
                "primitive": [encode(c) for c in self.primitive] if self.primitive is not None else None,
                "certificate": [encode(c) for c in self.certificate] if self.certificate is not None else None}


def ce_class_p1(dimension: int, structure: dict, values: dict) -> LecomteVerdict:
    """Decide whether the scalar 2-cocycle ``values`` is ``d xi`` with
    ``(d xi)(i, j) = -xi([delta_i, delta_j])`` (trivial coefficients)."""
    pairs = list(itertools.combinations(range(dimension), 2))
    rows, rhs = [], []
    for i, j in pairs:
        coeffs = structure.get((i, j), {})
        rows.append([-as_scalar(coeffs.get(k, 0)) for k in range(dimension)])
        rhs.append(values.get((i, j), Fraction(0)))
    if not pairs:
        return LecomteVerdict(values, True, [Fraction(0)] * dimension, None)
    sol = solve(rows, rhs, dimension)
    if sol is None:
        return LecomteVerdict(values, False, None, left_certificate(rows, rhs, dimension))
    return LecomteVerdict(values, True, sol, None)


def scalar_line_values(sec: LieBasisSection, unit_degree=1) -> dict:
    """Scalar curvature values, identifying the kernel with its value at ``unit_degree``."""
    fs = sec.fs
    R = fs.R
    out = {}
    for i, j in itertools.combinations(range(sec.dimension), 2):
        eta = atiyah_curvature(sec, i, j).crossed_hom
        lam = eta.get(unit_degree, R.zero())
        lam_s = _as_field_scalar(R, lam)
        if lam_s is None:
            raise KernelNotCentralLine(f"curvature value {lam} is not a scalar")
        for g, v in eta.items():
            if not isinstance(g, int):
                raise KernelNotCentralLine("scalar line identification needs an integer grading")
            if v != R.scalar(lam_s * g):
                raise KernelNotCentralLine("curvature is not on the line n -> lambda n", g=g)
        out[(i, j)] = lam_s
    line = gauge_from_crossed_hom(sec.frames, fs, {g: R.scalar(g) for g in fs.degrees()})
    S = sec.frames.S
    for lift in sec.lifts:
        moved = crossed_hom_from_gauge(sec.frames, fs, Derivation(S, lambda s, L=lift: L(line(s)) - line(L(s))))
        if any(v != R.zero() for v in moved.values()):
            raise KernelNotCentralLine("the section does not act trivially on the kernel line")
    return out


def _as_field_scalar(R, x):
    one_terms = getattr(R, "one_terms", None)
    if one_terms is None:
        return None
    if not x:
        return Fraction(0)
    if set(x.terms) != set(one_terms):
        return None
    vals = {x.terms[k] / one_terms[k] for k in one_terms}
    return vals.pop() if len(vals) == 1 else None


def lecomte_class_p1(sec: LieBasisSection, shifts: Iterable = ()) -> LecomteVerdict:
    """First Lecomte class with ``f = id`` on a central scalar kernel; the verdict is
    recomputed for each supplied shift ``psi`` and must not change."""
    values = scalar_line_values(sec)
    verdict = ce_class_p1(sec.dimension, sec.structure, values)
    for psi in shifts:
        new, _ = section_change(sec, psi)
        other = ce_class_p1(sec.dimension, sec.structure, scalar_line_values(new))
        if other.split != verdict.split:
            raise ConsistencyMismatch("Lecomte verdict changed under a change of section")
    return verdict
