"""Extraction, axioms, conjugacy, graded isomorphisms and involution data."""

import pytest

from factorsys.errors import AxiomViolation, DecompositionMismatch, WitnessRejected
from factorsys.facsys import (FactorSystem, GradedIsomorphism, conjugate_system, extract_factor_system,
                              hom_decompose, identity_witness, involution_row, is_parseval_shaped,
                              parseval_factorization_check, row_to_element, star_compatibility,
                              verify_axioms, verify_conjugacy, view_product, witness_from_frames)
from factorsys.graded import FrameSystem
from factorsys.leavitt import parseval_frames
from factorsys.matrix import RingMatrix


def _power(lpa, word_edge, n):
    return lpa.path([word_edge] * n), lpa.ghost_path([word_edge] * n)


def test_extracted_values_match_closed_forms(l12_window3):
    lpa, frames, fs = l12_window3
    for n in range(4):
        en, en_star = _power(lpa, "e1", n)
        for r in lpa.level_span(2):
            assert fs.alpha(n, r).scalar_value() == en * r * en_star
        for m in range(4 - n):
            e_nm, e_nm_star = _power(lpa, "e1", n + m)
            assert fs.omega(n, m).scalar_value() == e_nm * e_nm_star


def test_axioms_hold_on_window(l12_window3):
    lpa, frames, fs = l12_window3
    rep = verify_axioms(fs, samples=lpa.level_span(2))
    assert rep.ok
    assert {"normalization", "paruni", "coaction", "cocycle"} <= set(rep.tags())


def test_perturbed_omega_fails_paruni(l12_window2):
    lpa, frames, fs = l12_window2
    omega = dict(fs.omega_map)
    omega[(1, 1)] = omega[(1, 1)] + RingMatrix.scalar_matrix(lpa, lpa.one())
    broken = FactorSystem(fs.group, fs.R, fs.sizes, fs.alpha_impl, omega, fs.omega_tilde_map,
                          generators=fs.generators)
    rep = verify_axioms(broken)
    assert not rep.passed("paruni")
    with pytest.raises(AxiomViolation):
        rep.raise_if_failed()


def test_view_product_matches_ring_product(l12_window2):
    lpa, frames, fs = l12_window2
    for g, h in [(1, 1), (1, -1), (-1, 1), (-1, -1), (2, -1)]:
        for u in lpa.level_span(1)[:2]:
            urow = fs.canonical_row(g, RingMatrix.unit_row(lpa, fs.n(g), 0).left_scale(u))
            vrow = fs.canonical_row(h, RingMatrix.unit_row(lpa, fs.n(h), fs.n(h) - 1).left_scale(u))
            gh, w = view_product(fs, g, urow, h, vrow)
            direct = row_to_element(frames, g, urow) * row_to_element(frames, h, vrow)
            assert row_to_element(frames, gh, w) == direct


def test_hom_decompose_rejects_wrong_degree(l12_window2):
    lpa, frames, fs = l12_window2
    assert hom_decompose(frames, 1, lpa.edge("e2")) == RingMatrix.row(lpa, [lpa.parse("e2 e1*")])
    with pytest.raises(DecompositionMismatch):
        hom_decompose(frames, 1, lpa.ghost("e1"))


def _swapped_frames(frames):
    swapped = dict(frames.frames)
    x, y = swapped[-1]
    swapped[-1] = tuple(RingMatrix(M.ring, list(reversed(M.entries))) for M in (x, y))
    return FrameSystem(frames.S, swapped)


def test_conjugacy_between_frame_choices(l12_window2):
    lpa, frames, fs = l12_window2
    other = _swapped_frames(frames)
    fs_b = extract_factor_system(other, generators=fs.generators)
    assert verify_axioms(fs_b).ok
    v, w = witness_from_frames(frames, other)
    assert verify_conjugacy(fs, fs_b, v, w).ok
    iso = GradedIsomorphism(fs, fs_b, v, w)
    samples = [(g, RingMatrix.unit_row(lpa, fs_b.n(g), 0) * fs_b.unit(g)) for g in (-1, 0, 1)]
    assert iso.check_multiplicative(samples).ok
    for g, u in samples:
        assert iso.inverse(g, iso(g, u)) == u


def test_identity_witness_and_conjugate_system(l12_window2):
    lpa, frames, fs = l12_window2
    v, w = identity_witness(fs)
    assert verify_conjugacy(fs, fs, v, w).ok
    other = _swapped_frames(frames)
    v2, w2 = witness_from_frames(frames, other)
    fs_b = conjugate_system(fs, v2, w2)
    for g in fs.degrees():
        for r in fs.generators:
            assert fs_b.alpha(g, r) == extract_factor_system(other, fs.generators).alpha(g, r)


def test_bad_witness_is_rejected(l12_window2):
    lpa, frames, fs = l12_window2
    v, w = identity_witness(fs)
    w = dict(w)
    w[1] = w[1] * 2
    with pytest.raises(WitnessRejected):
        conjugate_system(fs, v, w)


def test_parseval_frames_give_star_compatible_systems(lpa):
    frames = parseval_frames(lpa, 2)
    assert is_parseval_shaped(frames)
    fs = extract_factor_system(frames, generators=frames.S.principal_generators(1))
    assert verify_axioms(fs).ok
    assert star_compatibility(fs).ok
    for g in fs.degrees():
        for i in range(fs.n(g)):
            involution_row(fs, g, RingMatrix.unit_row(lpa, fs.n(g), i) * fs.unit(g))
        assert parseval_factorization_check(frames, g, fs.unit(g)).ok
