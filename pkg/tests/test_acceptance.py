"""Acceptance suite: one test per criterion, each printing a single PASS/FAIL line.

Every check is exact. Reference values come from closed forms or brute-force
recomputation, never from the routine under test.
"""

import itertools
import random
import time
from fractions import Fraction

from factorsys.atiyah import bianchi_check, curvature_table, grassmann_curvature_report, section_change
from factorsys.cohomology import (Cochain, center_basis, coboundary_solve, cochain_differential,
                                  cocycle_check, crossed_hom_space, defect_cochain, frame_beta,
                                  gauge_correspondence, integer_crossed_hom, table_beta)
from factorsys.errors import FactorSysError
from factorsys.facsys import hom_decompose, row_to_element, verify_axioms
from factorsys.l12 import (alpha1_commute_check, bracket_gr, delta_A_build, diag, is_diagonal_form,
                           matrix_unit_table_report)
from factorsys.leavitt import all_monomials, lpa_frames, parseval_frame
from factorsys.lift import (IntegerConnections, build_lift, check_lift_conditions, crossed_lift_conditions,
                            EtaFamily, edge_count_difference, laurent_vector_field, z_lift_from_generator)
from factorsys.matrix import RingMatrix
from factorsys.models import (GradedLaurent, heisenberg, l12, l12_sl2_section, l12_system,
                              parseval_candidate_value, quantum_torus, skew_cyclic, skew_laurent,
                              skew_laurent_section, trivial_system)
from factorsys.reconstruct import associativity_report, reconstruct_ring, round_trip
from factorsys.scalars import QI


SEED = 20261016


def _verdict(capsys, number, ok, summary):
    with capsys.disabled():
        print(f"\n{'PASS' if ok else 'FAIL'} criterion {number}: {summary}")
    assert ok, summary


def _rand_qi(rng, bound=4):
    return QI(Fraction(rng.randint(-bound, bound), rng.randint(1, 3)),
              Fraction(rng.randint(-bound, bound), rng.randint(1, 3)))


def _edge_count(path, edge=0):
    return sum(1 for e in path if e == edge)


def _expected_edge_rule(lpa, alpha, beta, m):
    """``(N1(alpha) - N1(beta)) alpha beta*`` computed from the path data."""
    return m * (_edge_count(alpha) - _edge_count(beta))


# 1 ---------------------------------------------------------------------------------------------


def test_criterion_1_frame_certification(capsys):
    start = time.perf_counter()
    lpa = l12("qi")
    frames = lpa_frames(lpa, 3)
    S = frames.S
    failures = []
    for n in frames.degrees():
        x, y = frames.x(n), frames.y(n)
        total = S.sum(b * a for a, b in zip(x.column_entries(), y.column_entries()))
        if total != S.one():
            failures.append(f"y^t x != 1 at {n}")
        if n > 0 and x.column_entries() != [lpa.monomial(("e1",) * n, ())]:
            failures.append(f"x_{n} is not the e1 power")
        if n < 0:
            # ghost-path columns: every path of length |n| appears once
            expected = sorted(repr(lpa.monomial((), p)) for p in lpa.paths(-n))
            if sorted(repr(s) for s in x.column_entries()) != expected:
                failures.append(f"x_{n} is not the ghost-path column")
    elapsed = time.perf_counter() - start
    ok = not failures and elapsed < 1.0
    _verdict(capsys, 1, ok, f"7 frames certified, {len(failures)} failures, {elapsed:.3f}s")


# 2 ---------------------------------------------------------------------------------------------


def test_criterion_2_factor_system_axioms(capsys):
    start = time.perf_counter()
    lpa, frames, fs = l12_system(3)
    rep = verify_axioms(fs)
    mismatches = 0
    closed_form = 0
    for n in range(0, 4):
        power, ghost = lpa.monomial(("e1",) * n, ()), lpa.monomial((), ("e1",) * n)
        for r in fs.generators:
            closed_form += 1
            if fs.alpha(n, r) != RingMatrix(lpa, [[power * r * ghost]]):
                mismatches += 1
        for m in range(0, 4 - n):
            closed_form += 1
            k = n + m
            expected = lpa.monomial(("e1",) * k, ("e1",) * k)
            if fs.omega(n, m) != RingMatrix(lpa, [[expected]]):
                mismatches += 1
    elapsed = time.perf_counter() - start
    ok = rep.ok and not mismatches and elapsed < 5.0
    _verdict(capsys, 2, ok, f"{len(rep.checks)} axiom checks ok={rep.ok}, {closed_form} closed-form values, "
                            f"{mismatches} mismatches, {elapsed:.2f}s")


# 3 ---------------------------------------------------------------------------------------------


def test_criterion_3_reconstruction_round_trip(capsys):
    start = time.perf_counter()
    lines = []
    ok = True
    for label, fs in (("Z/2 over Q", trivial_system(2, "q")), ("quantum torus q=2", quantum_torus(q=2, window=4))):
        result = round_trip(fs)
        assoc = associativity_report(result["ring"], result["frames"])
        ok = ok and result["alpha"] and result["omega"] and assoc.ok
        lines.append(f"{label}: alpha={result['alpha']} omega={result['omega']} assoc={len(assoc.checks)}")
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 5.0
    _verdict(capsys, 3, ok, "; ".join(lines) + f", {elapsed:.2f}s")


# 4 ---------------------------------------------------------------------------------------------


def test_criterion_4_parseval(capsys):
    lpa = l12("qi")
    good = []
    for n in range(0, 3):
        z, _ = parseval_frame(lpa, n)
        good.append((z.dagger() * z).scalar_value() == lpa.one())
    rng = random.Random(SEED)
    S = GradedLaurent(star_sign=-1)
    values = []
    for _ in range(5):
        size = rng.randint(1, 3)
        coeffs = [_rand_qi(rng) for _ in range(size)]
        if all(c.re == 0 and c.im == 0 for c in coeffs):
            coeffs[0] = QI(1, 0)
        z = RingMatrix(S, [[S.t() * c] for c in coeffs])
        value = parseval_candidate_value(S, 1, z)
        # brute force: (c t)^* (c t) = conj(c) (-t^-1) c t = -|c|^2
        expected = -sum(c.re ** 2 + c.im ** 2 for c in coeffs)
        values.append((value, expected))
    nonpositive = all(set(v.terms) <= {(0,)} and isinstance(v.terms.get((0,), Fraction(0)), Fraction)
                      and v.terms.get((0,), Fraction(0)) <= 0 and v == S.scalar(exp) for v, exp in values)
    ok = all(good) and nonpositive
    _verdict(capsys, 4, ok, f"z^dagger z = 1 for n=0..2: {good}; Laurent candidates "
                            f"{[str(v) for v, _ in values]} all nonpositive rationals: {nonpositive}")


# 5 ---------------------------------------------------------------------------------------------


def _criterion5_lift(lpa, frames, fs):
    N1 = edge_count_difference(lpa)
    samples = lpa.level_span(2)
    rep = check_lift_conditions(fs, N1, EtaFamily.zero(fs), samples)
    try:
        lift = build_lift(frames, fs, N1, EtaFamily.zero(fs), samples)
    except FactorSysError as exc:
        return rep, None, f"{type(exc).__name__}: {exc}"
    return rep, lift, None


def test_criterion_5_lifting(capsys, l12_window3):
    lpa, frames, fs = l12_window3
    rep, lift, error = _criterion5_lift(lpa, frames, fs)
    if lift is None:
        bad = rep.failures("cond1")
        witness = bad[0].detail if bad else {}
        _verdict(capsys, 5, False, f"eta = 0 rejected: {len(rep.failures())} failed conditions "
                                   f"(first cond1 witness at g={witness.get('g')}); {error}")
        return
    rng = random.Random(SEED)
    mons = all_monomials(lpa, 3)
    wrong = sum(1 for a, b, m in mons if lift(m) != _expected_edge_rule(lpa, a, b, m))
    homogeneous = [m for _, _, m in all_monomials(lpa, 2)]
    pairs = []
    while len(pairs) < 100:
        x, y = rng.choice(homogeneous), rng.choice(homogeneous)
        if abs(lpa.degree(x) + lpa.degree(y)) <= 3:
            pairs.append((x, y))
    leibniz = sum(1 for x, y in pairs if lift(x * y) != lift(x) * y + x * lift(y))
    ok = rep.ok and not wrong and not leibniz
    _verdict(capsys, 5, ok, f"{len(mons)} monomials, {wrong} rule mismatches, {leibniz} Leibniz failures")


# 6 ---------------------------------------------------------------------------------------------


def test_criterion_6_integer_generator(capsys, l12_window3):
    lpa, frames, fs = l12_window3
    N1 = edge_count_difference(lpa)
    zero_eta1 = RingMatrix.zeros(lpa, 1, 1)
    lift, _, _ = z_lift_from_generator(frames, fs, N1, zero_eta1, lpa.level_span(2))
    _, reference, error = _criterion5_lift(lpa, frames, fs)
    mons = [(a, b, m) for a, b, m in all_monomials(lpa, 3)]
    if reference is None:
        # the criterion 5 lift does not exist; compare with the rule it was meant to reproduce
        disagree = sum(1 for a, b, m in mons if lift(m) != _expected_edge_rule(lpa, a, b, m))
    else:
        disagree = sum(1 for _, _, m in mons if lift(m) != reference(m))
    conns = IntegerConnections(frames, fs, N1, zero_eta1)
    ones = [lpa.edge(e) * m for e in ("e1", "e2") for m in lpa.level_span(1)]
    minus = [m * lpa.ghost(e) for e in ("e1", "e2") for m in lpa.level_span(1)]
    rows = [RingMatrix.row(lpa, [a, b]) for a in lpa.level_span(1) for b in lpa.level_span(1)]
    dual = conns.dual_pairing_report(rows, ones, minus)
    ok = reference is not None and not disagree and dual.ok
    note = "" if reference is not None else f"; criterion 5 lift unavailable ({error.split(':')[0]})"
    _verdict(capsys, 6, ok, f"{disagree}/{len(mons)} monomials disagree with the edge-count rule, "
                            f"dual pairing {len(dual.checks)} checks ok={dual.ok}{note}")


# 7 ---------------------------------------------------------------------------------------------


def test_criterion_7_crossed_product_obstructions(capsys):
    fs = heisenberg(4)
    R = fs.R
    u, v = R.var("u"), R.var("v")
    v2_delta_u = laurent_vector_field(R, "u", u * v * v)
    delta_v = laurent_vector_field(R, "v", v)
    good = crossed_lift_conditions(fs, v2_delta_u, {})
    bad = crossed_lift_conditions(fs, delta_v, {})
    witness = [c.detail for c in bad.failures("cond1") if c.detail["g"] == "1" and c.detail["r"] == "u"]
    pair = (witness[0]["delta_of_alpha"], witness[0]["alpha_of_delta"]) if witness else None
    ok = good.ok and not bad.ok and pair == (str(u * v), "0")
    _verdict(capsys, 7, ok, f"v^2 delta_u passes ({len(good.checks)} checks): {good.ok}; delta_v cond1 "
                            f"witness at g=1, r=u: {pair}")


# 8 ---------------------------------------------------------------------------------------------


def test_criterion_8_cohomology(capsys, l12_window3):
    lpa, frames, fs = l12_window3
    rng = random.Random(SEED)
    N1 = edge_count_difference(lpa)
    beta = frame_beta(frames)
    _, eta, _ = z_lift_from_generator(frames, fs, N1, fs.unit(1), lpa.level_span(1))
    base = defect_cochain(frames, fs, N1, eta)
    computed = [base]
    shift_ok = 0
    for _ in range(10):
        xi = {n: lpa.scalar(_rand_qi(rng)) if n else lpa.zero() for n in fs.degrees()}
        moved = defect_cochain(frames, fs, N1, eta.shifted(xi))
        computed.append(moved)
        # hand coboundary beta_g(xi_h) - xi_gh + xi_g, with beta trivial on scalars
        dxi = {(g, h): xi[h] - xi[g + h] + xi[g] for g, h in fs.pairs()}
        shift_ok += all(moved(g, h) == base(g, h) - dxi[(g, h)] for g, h in fs.pairs())
    cocycles = all(cocycle_check(c, beta, fs.group).ok for c in computed)
    solved = 0
    for c in computed:
        sol = coboundary_solve(c, beta, group=fs.group)
        d = cochain_differential(fs.group, beta, sol)
        solved += all(d(*k) == c(*k) for k in d.values if k in c.values)
    small = trivial_system(2, "q")
    Rq, G = small.R, small.group
    delta = Cochain(2, {(g, h): Rq.scalar(int(g == 1 and h == 1)) for g, h in G.pairs()}, Rq)
    half = coboundary_solve(delta, table_beta(small), center_basis(Rq, [Rq.one()]), G)
    grid = [Fraction(p, q) for p in range(-4, 5) for q in range(1, 5)]
    brute = {(a, b) for a, b in itertools.product(grid, repeat=2)
             if all(Rq.scalar(b if h else a) - Rq.scalar(b if (g + h) % 2 else a) + Rq.scalar(b if g else a)
                    == delta(g, h) for g, h in G.pairs())}
    example = half(1) == Rq.scalar(Fraction(1, 2)) and brute == {(Fraction(0), Fraction(1, 2))}
    ok = cocycles and shift_ok == 10 and solved == len(computed) and example
    _verdict(capsys, 8, ok, f"{len(computed)} curvatures are cocycles: {cocycles}; shift law {shift_ok}/10; "
                            f"solved {solved}/{len(computed)}; Z/2 example xi(1) = {half(1)}, "
                            f"brute force {sorted(brute)}")


# 9 ---------------------------------------------------------------------------------------------


def test_criterion_9_gauge_and_atiyah(capsys, l12_window2):
    rng = random.Random(SEED)
    notes = []
    # gauge correspondence over Z
    fz = skew_laurent(3)
    _, frames_z = reconstruct_ring(fz)
    Rz, beta_z = fz.R, table_beta(fz)
    round_trips = 0
    for _ in range(10):
        value = Rz.sum(Rz.var("u", k) * rng.randint(-3, 3) for k in range(-2, 3))
        eta = integer_crossed_hom(fz.group, beta_z, value, Rz)
        D = gauge_correspondence(frames_z, fz, eta, beta_z)
        round_trips += gauge_correspondence(frames_z, fz, D) == eta
    # and over Z/3
    f3 = skew_cyclic(3)
    _, frames_3 = reconstruct_ring(f3)
    beta_3 = table_beta(f3)
    basis = crossed_hom_space(f3.group, beta_3, center_basis(f3.R, [f3.R.idempotent(i) for i in range(3)]))
    for _ in range(10):
        coeffs = [Fraction(rng.randint(-5, 5), rng.randint(1, 4)) for _ in basis]
        eta = {g: f3.R.sum(b[g] * c for b, c in zip(basis, coeffs)) for g in f3.degrees()}
        D = gauge_correspondence(frames_3, f3, eta, beta_3)
        round_trips += gauge_correspondence(frames_3, f3, D) == eta
    notes.append(f"gauge round trips {round_trips}/20")

    skew = skew_laurent_section(3)
    sl2 = l12_sl2_section(2)
    psi_z = [integer_crossed_hom(fz.group, beta_z, Rz.var("u", 2) * c, Rz) for c in (1, -2, 3)]
    lpa2 = sl2.fs.R
    psi_l = [{n: lpa2.scalar(c * n) for n in sl2.fs.degrees()} for c in (1, 2, -1)]
    sections = [skew, sl2, section_change(skew, psi_z)[0], section_change(sl2, psi_l)[0]]
    bianchi = [bianchi_check(s).ok for s in sections]
    flat = all(not v for vals in curvature_table(skew).values() for v in vals.values())
    notes.append(f"Bianchi {bianchi}; skew section flat: {flat}")

    # Grassmann: derivations commuting with alpha on the skew ring have alpha_g(1) = 1, so zero curvature
    d1, d2 = skew.derivations[0], skew.derivations[1]
    zero_curv = True
    for g in skew.fs.degrees():
        p = skew.fs.unit(g)
        rows = [RingMatrix.row(Rz, [Rz.var("u", k)]) for k in range(-2, 3)]
        rep = grassmann_curvature_report(skew.frames, skew.fs, d1, d2, g, rows)
        zero_curv = zero_curv and rep.ok and (d1.matrix(p) * d2.matrix(p) - d2.matrix(p) * d1.matrix(p)).is_zero()
    # general case on L(1,2): five random samples with nonzero curvature, recomputed directly
    lpa, frames, fs = l12_window2
    span = lpa.level_span(0) + lpa.level_span(1)

    def random_matrix():
        return RingMatrix(lpa, [[lpa.sum(m * rng.randint(-2, 2) for m in rng.sample(span, 2)) for _ in range(2)]
                                for _ in range(2)])

    general = attempts = 0
    samples = []
    while len(samples) < 5 and attempts < 200:
        attempts += 1
        dA, dB = delta_A_build(lpa, random_matrix()), delta_A_build(lpa, random_matrix())
        g = rng.choice([-2, -1, 1, 2])
        u = RingMatrix.row(lpa, [rng.choice(span) for _ in range(fs.n(g))])
        p = fs.unit(g)
        s = row_to_element(frames, g, u)

        def nabla(d, element):
            w = hom_decompose(frames, g, element)
            return row_to_element(frames, g, d.matrix(w) + w * d.matrix(p))

        direct = nabla(dA, nabla(dB, s)) - nabla(dB, nabla(dA, s)) - nabla(dA.bracket(dB), s)
        if not direct:
            continue
        samples.append(g)
        # rows act on the left, so the commutator of delta(p) appears reversed
        commutator = dB.matrix(p) * dA.matrix(p) - dA.matrix(p) * dB.matrix(p)
        rep = grassmann_curvature_report(frames, fs, dA, dB, g, [u])
        general += rep.ok and direct == row_to_element(frames, g, (u * p) * commutator)
    notes.append(f"Grassmann flat case: {zero_curv}; general case {general}/5 nonzero samples "
                 f"at degrees {samples}, equal to u [d2(p), d1(p)] in row form")
    ok = round_trips == 20 and all(bianchi) and flat and zero_curv and general == 5 == len(samples)
    _verdict(capsys, 9, ok, "; ".join(notes))


# 10 --------------------------------------------------------------------------------------------


def test_criterion_10_l12_bench(capsys, lpa):
    rng = random.Random(SEED)
    span = lpa.level_span(0) + lpa.level_span(1)
    agree = 0
    for _ in range(20):
        mats = [RingMatrix(lpa, [[lpa.sum(m * rng.randint(-2, 2) for m in rng.sample(span, 2)) for _ in range(2)]
                                 for _ in range(2)]) for _ in range(2)]
        out = bracket_gr(lpa, *mats, max_level=3, verify=False)
        d1, d2 = (delta_A_build(lpa, M) for M in mats)
        direct = d1.bracket(d2)
        formula = delta_A_build(lpa, out)
        agree += all(direct(s) == formula(s) for s in lpa.generators().values())
    zero, one = lpa.zero(), lpa.one()
    suite = [
        (diag(lpa, 1, 0), True),
        (diag(lpa, Fraction(-3, 2), lpa.parse("e1 e2*")), True),
        (diag(lpa, 0, lpa.parse("e1 e1* - e2 e2*")), True),
        (diag(lpa, QI(0, 1), lpa.parse("e2 e1 e1* e2*")), True),
        (RingMatrix(lpa, [[zero, one], [zero, zero]]), False),
        (RingMatrix(lpa, [[zero, zero], [lpa.parse("e1 e2*"), zero]]), False),
        (diag(lpa, lpa.parse("e1 e1*"), 0), False),
        (RingMatrix(lpa, [[one, lpa.parse("e2 e2*")], [one, one]]), False),
    ]
    samples = lpa.level_span(1) + lpa.level_span(2)
    accepted = [alpha1_commute_check(lpa, A, samples).ok for A, _ in suite]
    exact = accepted == [flag for _, flag in suite] and all(is_diagonal_form(lpa, A) == f for A, f in suite)
    table = matrix_unit_table_report(lpa, 2)
    ok = agree == 20 and exact and table.ok and len(table.checks) == 256
    _verdict(capsys, 10, ok, f"bracket agrees {agree}/20; alpha1 acceptance {accepted}; "
                             f"matrix units {len(table.checks)} checks ok={table.ok}")
