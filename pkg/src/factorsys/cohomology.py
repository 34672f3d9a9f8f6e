"""Twisted group cochains with values in the center, the multiplicative
curvature of a derivation, coboundary solving and gauge derivations."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Optional

from .errors import (ActionCheckFailed, CentralExtractionMismatch, CocycleViolation, InputError,
                     NoSolution, NotCentral, NotCrossedHom, NotGauge, OutOfWindow, WindowNotClosed)
from .facsys import FactorSystem, hom_decompose, row_to_element
from .graded import FrameSystem
from .groups import GroupModel, IntegerWindow
from .lift import (Derivation, EtaFamily, build_lift, check_lift_conditions, defect_matrix,
                   raise_lift_failures)
from .linalg import left_certificate, nullspace, solve
from .matrix import RingMatrix
from .report import Report
from .rings import Elem


# centers ----------------------------------------------------------------------------------

class CenterBasis:
    """Basis of a central subspace, with coordinates over the scalar field."""

    def __init__(self, ring, elements: list, window: list):
        self.ring = ring
        self.elements = list(elements)
        self.window = list(window)
        self._keys = sorted({k for z in self.elements for k in z.terms}, key=repr)

    @property
    def dimension(self) -> int:
        return len(self.elements)

    def coordinates(self, z) -> list:
        keys = sorted(set(self._keys) | set(z.terms), key=repr)
        rows = [[b.terms.get(k, Fraction(0)) for b in self.elements] for k in keys]
        rhs = [z.terms.get(k, Fraction(0)) for k in keys]
        sol = solve(rows, rhs, len(self.elements))
        if sol is None:
            raise NotCentral(f"{z} is not in the span of the center basis")
        return sol

    def element(self, coords) -> Elem:
        return self.ring.sum(b * c for b, c in zip(self.elements, coords) if c)

    def is_central(self, z) -> bool:
        return all(z * m == m * z for m in self.window)


def center_basis(ring, window: list) -> CenterBasis:
    """Centralizer of ``window`` inside its own span (exact kernel computation)."""
    span_keys = {k for m in window for k in m.terms}
    comms = []
    for w in window:
        row = []
        for m in window:
            c = w * m - m * w
            if any(k not in span_keys for k in c.terms):
                raise WindowNotClosed(f"[{w}, {m}] leaves the window span")
            row.append(c)
        comms.append(row)
    keys = sorted({k for row in comms for c in row for k in c.terms}, key=repr)
    # unknown coefficients a_j of z = sum a_j w_j; equations: sum_j a_j [w_j, m_i] = 0
    eqs = []
    for i in range(len(window)):
        for k in keys:
            eqs.append([comms[j][i].terms.get(k, Fraction(0)) for j in range(len(window))])
    basis = nullspace(eqs, len(window)) if eqs else [
        [Fraction(int(i == j)) for i in range(len(window))] for j in range(len(window))]
    elements = []
    for v in basis:
        z = ring.sum(w * c for w, c in zip(window, v) if c)
        if z and not _in_span(z, elements):
            elements.append(z)
    return CenterBasis(ring, elements, window)


def _in_span(z, elements) -> bool:
    if not elements:
        return not z
    keys = sorted({k for e in elements for k in e.terms} | set(z.terms), key=repr)
    rows = [[e.terms.get(k, Fraction(0)) for e in elements] for k in keys]
    return solve(rows, [z.terms.get(k, Fraction(0)) for k in keys], len(elements)) is not None


# the beta action ----------------------------------------------------------------------------

def beta_action(frames: FrameSystem, g, z, check: bool = True, centrality_samples: Iterable = ()):
    """``beta_g(z) = y_{g^-1}^t z x_{g^-1}``; checked against ``s z = beta_g(z) s``."""
    S = frames.S
    for m in centrality_samples:
        if z * m != m * z:
            raise NotCentral(f"{z} does not commute with {m}", element=z)
    gi = frames.group.inv(g)
    ze = S.embed(z)
    val = S.principal(S.sum(a * ze * b for a, b in zip(frames.y(gi).column_entries(),
                                                         frames.x(gi).column_entries())))
    if check:
        bz = S.embed(val)
        for s in frames.x(g).column_entries():
            if s * ze != bz * s:
                raise ActionCheckFailed(f"s z != beta_{g}(z) s", g=g, z=z, s=s)
    return val


def frame_beta(frames: FrameSystem, check: bool = False) -> Callable:
    cache: dict = {}

    def beta(g, z):
        key = (g, z)
        if key not in cache:
            cache[key] = beta_action(frames, g, z, check=check)
        return cache[key]

    return beta


integer_beta = frame_beta


def table_beta(fs: FactorSystem) -> Callable:
    """``beta_g = alpha_g`` on central elements of a crossed product (``n_g = 1``)."""
    return lambda g, z: fs.alpha(g, z).scalar_value()


# cochains ---------------------------------------------------------------------------------

@dataclass
class Cochain:
    degree: int
    values: dict
    ring: object = None

    def __call__(self, *gs):
        try:
            return self.values[tuple(gs)]
        except KeyError:
            raise OutOfWindow(f"cochain not defined at {gs}") from None

    def values_with_identity(self, fs: FactorSystem) -> dict:
        """Degree-one cochain as a map ``g -> value`` (zero where undefined)."""
        return {g: self.values.get((g,), fs.R.zero()) for g in fs.degrees()}

    def __sub__(self, other: "Cochain") -> "Cochain":
        keys = set(self.values) & set(other.values)
        return Cochain(self.degree, {k: self.values[k] - other.values[k] for k in keys}, self.ring)

    def __eq__(self, other):
        return isinstance(other, Cochain) and self.degree == other.degree and self.values == other.values

    def is_zero(self) -> bool:
        return all(not v for v in self.values.values())

    def encode(self, center: Optional[CenterBasis] = None) -> dict:
        out = {}
        for k, v in sorted(self.values.items(), key=lambda kv: [str(x) for x in kv[0]]):
            key = ",".join(str(x) for x in k)
            if center is not None:
                from .scalars import encode
                out[key] = [encode(c) for c in center.coordinates(v)]
            else:
                out[key] = self.ring.encode(v) if self.ring is not None else str(v)
        return {"degree": self.degree, "values": out}


def cochain_differential(group: GroupModel, beta: Callable, f: Cochain) -> Cochain:
    """Twisted differential of a ``p``-cochain; tuples needing undefined values are skipped."""
    p = f.degree
    out = {}
    for t in group.tuples(p + 1):
        try:
            acc = beta(t[0], f(*t[1:])) if p else beta(t[0], f())
            for j in range(1, p + 1):
                merged = t[:j - 1] + (group.mul(t[j - 1], t[j]),) + t[j + 1:]
                acc = acc + f(*merged) * (-1) ** j
            acc = acc + f(*t[:p]) * (-1) ** (p + 1)
        except OutOfWindow:
            continue
        out[t] = acc
    return Cochain(p + 1, out, f.ring)


def cocycle_check(delta: Cochain, beta: Callable, group: GroupModel) -> Report:
    rep = Report("2-cocycle identity")
    for g, h, k in group.triples():
        try:
            hk, gh = group.mul(h, k), group.mul(g, h)
            val = beta(g, delta(h, k)) + delta(g, hk) - delta(g, h) - delta(gh, k)
        except OutOfWindow:
            continue
        rep.add("cocycle", not val, g=g, h=h, k=k, value=val)
    return rep


# multiplicative curvature ---------------------------------------------------------------------

def defect_theta(fs: FactorSystem, delta: Derivation, eta: EtaFamily, g, h) -> RingMatrix:
    return defect_matrix(fs, delta, eta, g, h)


def defect_central(frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta: EtaFamily, g, h,
                   verify: bool = True):
    """Central element ``z`` with ``Delta(s_g, s_h) = z s_g s_h``."""
    S = frames.S
    gh = fs.group.mul(g, h)
    theta = defect_theta(fs, delta, eta, g, h)
    M = fs.omega_tilde(g, h) * theta
    ys, xs = frames.y(gh).column_entries(), frames.x(gh).column_entries()
    a = S.principal(S.sum(yi * S.embed(M[i, j]) * xj
                          for i, yi in enumerate(ys) for j, xj in enumerate(xs) if M[i, j]))
    z = beta_action(frames, gh, a, check=False)
    if verify:
        _verify_central_extraction(frames, fs, theta, z, g, h)
    return z


def _verify_central_extraction(frames, fs, theta, z, g, h):
    R = fs.R
    gh = fs.group.mul(g, h)
    p = fs.unit(gh)
    w = fs.omega(g, h)
    for r in fs.generators:
        if z * r != r * z:
            raise CentralExtractionMismatch(f"extracted {z} is not central", g=g, h=h, r=r)
    for i in range(fs.n(g)):
        u = RingMatrix.unit_row(R, fs.n(g), i) * fs.unit(g)
        for j in range(fs.n(h)):
            v = RingMatrix.unit_row(R, fs.n(h), j) * fs.unit(h)
            base = u * fs.alpha_matrix(g, v)
            if (base * theta) * p != (base * w).left_scale(z) * p:
                raise CentralExtractionMismatch("defect is not multiplication by the extracted element",
                                                g=g, h=h, i=i, j=j)


def defect_by_connections(frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta: EtaFamily,
                          g, s_g, h, s_h):
    """``nabla_g(s_g) s_h + s_g nabla_h(s_h) - nabla_gh(s_g s_h)`` on ring elements."""
    gh = fs.group.mul(g, h)

    def nabla(k, s):
        u = hom_decompose(frames, k, s)
        return row_to_element(frames, k, delta.matrix(u) + u * eta(k))

    return nabla(g, s_g) * s_h + s_g * nabla(h, s_h) - nabla(gh, s_g * s_h)


def defect_cochain(frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta: EtaFamily,
                   verify: bool = True) -> Cochain:
    values = {}
    for g, h in fs.pairs():
        values[(g, h)] = defect_central(frames, fs, delta, eta, g, h, verify=verify)
    return Cochain(2, values, fs.R)


# coboundaries -----------------------------------------------------------------------------------

@dataclass
class Obstruction:
    cocycle: Cochain
    system: dict
    certificate: Optional[list]

    def to_json(self, center: Optional[CenterBasis] = None) -> dict:
        from .scalars import encode
        return {"cocycle": self.cocycle.encode(center), "system": self.system,
                "certificate": [encode(c) for c in self.certificate] if self.certificate else None}


def coboundary_solve(delta: Cochain, beta: Callable, center: Optional[CenterBasis] = None,
                     group: Optional[GroupModel] = None) -> Cochain:
    """A 1-cochain ``xi`` with ``d xi = delta``; raises ``NoSolution`` with a certificate."""
    if group is None:
        group = _infer_group(delta)
    if isinstance(group, IntegerWindow):
        return _solve_integer(delta, beta, group)
    return _solve_finite(delta, beta, center, group)


def _infer_group(delta: Cochain):
    raise InputError("coboundary_solve needs the group model")


def _solve_integer(delta: Cochain, beta, group: IntegerWindow) -> Cochain:
    ring = delta.ring
    zero = ring.zero()
    N = group.bound
    xi = {0: zero, 1: zero}
    for n in range(1, N):
        xi[n + 1] = beta(n, xi[1]) + xi[n] - delta(n, 1)
    for n in range(0, -N, -1):
        xi[n - 1] = delta(n - 1, 1) + xi[n] - beta(n - 1, xi[1])
    sol = Cochain(1, {(g,): v for g, v in xi.items()}, ring)
    check = cochain_differential(group, beta, sol)
    for key, val in check.values.items():
        if key in delta.values and val != delta.values[key]:
            raise CocycleViolation("input is not a cocycle: recursive solution fails", pair=key)
    return sol


def _solve_finite(delta: Cochain, beta, center: CenterBasis, group: GroupModel) -> Cochain:
    if center is None:
        raise InputError("finite groups need a center basis")
    els = group.elements()
    d = center.dimension
    col = {g: i * d for i, g in enumerate(els)}
    bmat = {g: [center.coordinates(beta(g, b)) for b in center.elements] for g in els}
    rows, rhs, labels = [], [], []
    for g, h in group.pairs():
        gh = group.mul(g, h)
        target = center.coordinates(delta(g, h))
        for c in range(d):
            row = [Fraction(0)] * (d * len(els))
            for j in range(d):
                row[col[h] + j] += bmat[g][j][c]
            row[col[g] + c] += 1
            row[col[gh] + c] -= 1
            rows.append(row)
            rhs.append(target[c])
            labels.append(f"{g},{h}:{c}")
    sol = solve(rows, rhs, d * len(els))
    if sol is None:
        cert = left_certificate(rows, rhs, d * len(els))
        raise NoSolution("the cocycle is not a coboundary", obstruction=Obstruction(
            delta, {"equations": labels, "unknowns": [f"xi({g})[{j}]" for g in els for j in range(d)]}, cert))
    xi = {(g,): center.element(sol[col[g]:col[g] + d]) for g in els}
    return Cochain(1, xi, delta.ring)


def lift_via_cohomology(frames: FrameSystem, fs: FactorSystem, delta: Derivation, eta: EtaFamily,
                        beta: Optional[Callable] = None, center: Optional[CenterBasis] = None,
                        samples: Iterable = ()):
    """Shift ``eta`` by a trivialization of the multiplicative curvature and build the lift.

    Returns the lift, or an :class:`Obstruction` when the class does not vanish.
    """
    samples = list(samples)
    rep = check_lift_conditions(fs, delta, eta, samples)
    bad = rep.failures("cond1")
    if bad:
        raise_lift_failures(Report("cond1", bad))
    beta = beta or frame_beta(frames)
    cocycle = defect_cochain(frames, fs, delta, eta)
    try:
        xi = coboundary_solve(cocycle, beta, center, fs.group)
    except NoSolution as exc:
        return exc.witness["obstruction"]
    shifted = eta.shifted(xi.values_with_identity(fs))
    return build_lift(frames, fs, delta, shifted, samples)


# gauge derivations -------------------------------------------------------------------------------

def check_crossed_hom(group: GroupModel, beta: Callable, eta: dict) -> Report:
    rep = Report("crossed homomorphism")
    for g, h in group.pairs():
        gh = group.mul(g, h)
        if g in eta and h in eta and gh in eta:
            rep.add("crossed_law", eta[gh] == eta[g] + beta(g, eta[h]), g=g, h=h)
    return rep


def gauge_from_crossed_hom(frames: FrameSystem, fs: FactorSystem, eta: dict, beta: Optional[Callable] = None,
                           centrality_samples: Iterable = ()) -> Derivation:
    """``s_g -> eta(g) s_g``."""
    beta = beta or frame_beta(frames)
    rep = check_crossed_hom(fs.group, beta, eta)
    if not rep.ok:
        raise NotCrossedHom("crossed law fails", **rep.failures()[0].detail)
    for z in eta.values():
        for m in list(fs.generators) + list(centrality_samples):
            if z * m != m * z:
                raise NotCrossedHom(f"value {z} is not central")
    S = frames.S

    def apply(s):
        out = []
        for g, part in S.components(s).items():
            if g not in eta:
                raise OutOfWindow(f"degree {g} outside the crossed homomorphism's domain")
            out.append(S.embed(eta[g]) * part)
        return S.sum(out)

    D = Derivation(S, apply, name="gauge")
    D.crossed_hom = dict(eta)
    return D


def crossed_hom_from_gauge(frames: FrameSystem, fs: FactorSystem, D: Derivation) -> dict:
    """Central values ``eta(g) = sum_i D((y_{g^-1})_i) (x_{g^-1})_i`` of a gauge derivation."""
    S = frames.S
    for r in fs.generators:
        if D(S.embed(r)) != S.zero():
            raise NotGauge(f"derivation does not vanish on {r}")
    out = {}
    for g in fs.degrees():
        gi = fs.group.inv(g)
        if gi not in frames.frames:
            continue
        val = S.principal(S.sum(D(a) * b for a, b in zip(frames.y(gi).column_entries(),
                                                           frames.x(gi).column_entries())))
        ze = S.embed(val)
        for s in frames.x(g).column_entries():
            if D(s) != ze * s:
                raise NotGauge(f"derivation is not multiplication by a central element at {g}")
        out[g] = val
    return out


def gauge_correspondence(frames: FrameSystem, fs: FactorSystem, value, beta: Optional[Callable] = None):
    """Crossed homomorphism (a dict) to gauge derivation, or back."""
    if isinstance(value, dict):
        return gauge_from_crossed_hom(frames, fs, value, beta)
    return crossed_hom_from_gauge(frames, fs, value)


def crossed_hom_space(group: GroupModel, beta: Callable, center: CenterBasis) -> list:
    """Basis of all crossed homomorphisms of a finite group (exact kernel)."""
    els = group.elements()
    d = center.dimension
    col = {g: i * d for i, g in enumerate(els)}
    bmat = {g: [center.coordinates(beta(g, b)) for b in center.elements] for g in els}
    rows = []
    for g, h in group.pairs():
        gh = group.mul(g, h)
        for c in range(d):
            row = [Fraction(0)] * (d * len(els))
            for j in range(d):
                row[col[h] + j] += bmat[g][j][c]
            row[col[g] + c] += 1
            row[col[gh] + c] -= 1
            rows.append(row)
    basis = nullspace(rows, d * len(els))
    return [{g: center.element(v[col[g]:col[g] + d]) for g in els} for v in basis]


def integer_crossed_hom(group: IntegerWindow, beta: Callable, value_at_one, ring) -> dict:
    """The crossed homomorphism on a window determined by its value at ``1``."""
    eta = {0: ring.zero(), 1: value_at_one}
    for n in range(1, group.bound):
        eta[n + 1] = eta[n] + beta(n, value_at_one)
    for n in range(0, -group.bound, -1):
        # eta(n) = eta(n-1) + beta_{n-1}(eta(1))
        eta[n - 1] = eta[n] - beta(n - 1, value_at_one)
    return eta
