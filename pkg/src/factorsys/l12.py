"""The ``delta_A`` parametrization of graded derivations of ``L(1,2)``."""

from __future__ import annotations

import itertools
from typing import Iterable, Optional

from .errors import InputError, NotGraded, OutOfWindow
from .leavitt import LeavittPathAlgebra
from .lift import Derivation
from .matrix import RingMatrix
from .report import Report

EDGES = ("e1", "e2")


def _require_l12(lpa: LeavittPathAlgebra):
    names = [e[0] for e in lpa.graph.edges]
    if len(lpa.graph.vertices) != 1 or names != list(EDGES):
        raise InputError("the delta_A toolkit needs the one-vertex graph with loops e1, e2")


def check_delta_matrix(lpa: LeavittPathAlgebra, A: RingMatrix):
    _require_l12(lpa)
    if A.shape != (2, 2):
        raise InputError("A must be 2x2")
    for a in A.flat():
        for k in a.terms:
            if lpa.key_degree(k):
                raise NotGraded(f"entry {a} of A is not of degree 0")


def delta_A_build(lpa: LeavittPathAlgebra, A: RingMatrix) -> Derivation:
    """``e_j -> sum_i e_i A_ij`` and ``e_j* -> -sum_i A_ji e_i*``, extended by Leibniz."""
    check_delta_matrix(lpa, A)
    e = [lpa.edge(x) for x in EDGES]
    g = [lpa.ghost(x) for x in EDGES]
    images = {}
    for j, name in enumerate(EDGES):
        images[name] = lpa.sum(e[i] * A[i, j] for i in range(2))
        images[name + "*"] = -lpa.sum(A[j, i] * g[i] for i in range(2))
    D = Derivation.from_images(lpa, images, name="delta_A")
    D.descriptor = {"kind": "delta_A", "matrix": A}
    D.delta_matrix = A
    return D


def extract_A(lpa: LeavittPathAlgebra, D: Derivation) -> RingMatrix:
    """Recover ``A`` from a graded derivation via ``A_ij = e_i* D(e_j)``."""
    _require_l12(lpa)
    g = [lpa.ghost(x) for x in EDGES]
    return RingMatrix(lpa, [[g[i] * D(lpa.edge(EDGES[j])) for j in range(2)] for i in range(2)])


def generator_images_agree(lpa: LeavittPathAlgebra, D1: Derivation, D2: Derivation) -> bool:
    return all(D1(s) == D2(s) for name, s in lpa.generators().items())


def bracket_gr(lpa: LeavittPathAlgebra, A1: RingMatrix, A2: RingMatrix, max_level: Optional[int] = 2,
               verify: bool = True) -> RingMatrix:
    """``[A1, A2] + delta_{A1}(A2) - delta_{A2}(A1)``; raises when entries leave the level window."""
    d1, d2 = delta_A_build(lpa, A1), delta_A_build(lpa, A2)
    out = A1 * A2 - A2 * A1 + d1.matrix(A2) - d2.matrix(A1)
    if max_level is not None:
        for a in out.flat():
            if lpa.level_of(a) > max_level:
                raise OutOfWindow(f"bracket entry {a} leaves level {max_level}")
    if verify:
        direct = d1.bracket(d2)
        if not generator_images_agree(lpa, direct, delta_A_build(lpa, out)):
            raise AssertionError("bracket formula disagrees with the commutator on generators")
    return out


def alpha1(lpa: LeavittPathAlgebra, r):
    return lpa.edge("e1") * r * lpa.ghost("e1")


def alpha1_commute_check(lpa: LeavittPathAlgebra, A: RingMatrix, samples: Iterable) -> Report:
    """``delta_A(e1 r e1*) = e1 delta_A(r) e1*`` on the samples; failures carry the
    predicted obstruction ``e1 [a1, r] e1* + e2 c r e1* - e1 r b e2*``."""
    D = delta_A_build(lpa, A)
    a1, b, c = A[0, 0], A[0, 1], A[1, 0]
    e1, e2, g1, g2 = lpa.edge("e1"), lpa.edge("e2"), lpa.ghost("e1"), lpa.ghost("e2")
    rep = Report("delta_A commutes with alpha_1")
    for r in samples:
        diff = D(alpha1(lpa, r)) - alpha1(lpa, D(r))
        predicted = e1 * (a1 * r - r * a1) * g1 + e2 * c * r * g1 - e1 * r * b * g2
        rep.add("alpha1_commute", not diff, r=r, difference=diff, predicted=predicted,
                prediction_matches=diff == predicted)
    return rep


def is_diagonal_form(lpa: LeavittPathAlgebra, A: RingMatrix) -> bool:
    """``A = diag(lambda, a)`` with scalar ``lambda``."""
    a1 = A[0, 0]
    return not A[0, 1] and not A[1, 0] and a1 == lpa.scalar(_leading(lpa, a1))


def _leading(lpa, x):
    if not x:
        return 0
    one = lpa.one()
    k = next(iter(one.terms))
    return x.terms.get(k, 0) / one.terms[k]


def free_module_report(lpa: LeavittPathAlgebra, samples: Iterable) -> Report:
    """``x = e1 (e1* x) + e2 (e2* x)`` for degree-1 samples, with coefficients forced
    (any ``x = e1 r1 + e2 r2`` has ``r_i = e_i* x``)."""
    _require_l12(lpa)
    e = [lpa.edge(x) for x in EDGES]
    g = [lpa.ghost(x) for x in EDGES]
    rep = Report("free right module of rank two")
    for x in samples:
        if lpa.degree(x) != 1:
            raise NotGraded(f"{x} is not of degree 1")
        coeffs = [g[i] * x for i in range(2)]
        rep.add("decomposition", lpa.sum(e[i] * coeffs[i] for i in range(2)) == x, x=x)
        rep.add("coefficients_degree_zero", all(lpa.degree(cf) in (0, None) for cf in coeffs), x=x)
        # uniqueness: a relation e1 r1 + e2 r2 = 0 forces r_i = e_i*(e1 r1 + e2 r2) = 0
        for i, j in itertools.product(range(2), repeat=2):
            rep.add("dual_basis", g[i] * e[j] == (lpa.one() if i == j else lpa.zero()), pair=(i, j))
    return rep


def matrix_unit_table_report(lpa: LeavittPathAlgebra, level: int) -> Report:
    """``(alpha beta*)(gamma delta*) = [beta = gamma] alpha delta*`` for all level-``level`` monomials."""
    rep = Report(f"level {level} matrix units")
    paths = lpa.paths(level) if level else [()]
    for a, b, c, d in itertools.product(paths, repeat=4):
        lhs = lpa.monomial(a, b) * lpa.monomial(c, d)
        rhs = lpa.monomial(a, d) if b == c else lpa.zero()
        rep.add("matrix_units", lhs == rhs, alpha=a, beta=b, gamma=c, delta=d)
    return rep


def diag(lpa: LeavittPathAlgebra, a1, a2) -> RingMatrix:
    return RingMatrix(lpa, [[lpa.coerce(a1), lpa.zero()], [lpa.zero(), lpa.coerce(a2)]])
