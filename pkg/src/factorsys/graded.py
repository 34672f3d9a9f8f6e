"""Graded rings and module frame systems.

A :class:`GradedRing` is a ring handle ``S`` together with a group model, the
ring handle ``R`` of its principal component, and maps ``embed: R -> S`` and
``principal: S_e -> R``.  A :class:`FrameSystem` stores, per group element,
a column ``x_g`` of degree-``g`` elements and a column ``y_g`` of
degree-``g^-1`` elements with ``y_g^t x_g = 1``.
"""

from __future__ import annotations

from typing import Dict, Tuple

from .errors import AxiomViolation, InputError, NotGraded
from .groups import GroupModel
from .matrix import RingMatrix
from .rings import Ring


class GradedRing(Ring):
    group: GroupModel
    R: Ring

    def components(self, s) -> dict:
        """Homogeneous decomposition ``{g: s_g}`` (zero parts omitted)."""
        raise NotImplementedError

    def embed(self, r):
        raise NotImplementedError

    def principal(self, s):
        raise NotImplementedError

    def homogeneous_degree(self, s):
        comps = self.components(s)
        if len(comps) > 1:
            raise NotGraded(f"element {s} is not homogeneous", degrees=sorted(map(str, comps)))
        return next(iter(comps)) if comps else None

    def is_homogeneous_of(self, s, g) -> bool:
        comps = self.components(s)
        return not comps or (len(comps) == 1 and g in comps)

    def embed_matrix(self, M: RingMatrix) -> RingMatrix:
        return M.map(self.embed, self)

    def principal_matrix(self, M: RingMatrix) -> RingMatrix:
        return M.map(self.principal, self.R)


class FrameSystem:
    """Per-degree frame pairs ``(x_g, y_g)`` in a graded ring."""

    def __init__(self, S: GradedRing, frames: Dict[object, Tuple[RingMatrix, RingMatrix]], check: bool = True):
        self.S = S
        self.group = S.group
        self.frames = dict(frames)
        if check:
            self.validate()

    def x(self, g) -> RingMatrix:
        return self.frames[g][0]

    def y(self, g) -> RingMatrix:
        return self.frames[g][1]

    def size(self, g) -> int:
        return self.frames[g][0].rows

    def degrees(self) -> list:
        return [g for g in self.group.elements() if g in self.frames]

    def validate(self):
        S = self.S
        e = self.group.identity
        if e not in self.frames:
            raise InputError("frame system lacks the identity degree")
        xe, ye = self.frames[e]
        if xe.shape != (1, 1) or ye.shape != (1, 1) or xe.scalar_value() != S.one() or ye.scalar_value() != S.one():
            raise AxiomViolation("normalization", "frames must have n_e = 1 and x_e = y_e = 1")
        for g, (x, y) in self.frames.items():
            if x.cols != 1 or y.cols != 1 or x.rows != y.rows:
                raise InputError(f"frame at {g} must be two columns of equal length")
            ginv = self.group.inv(g)
            for s in x.column_entries():
                if not S.is_homogeneous_of(s, g):
                    raise NotGraded(f"x_{g} entry {s} is not of degree {g}")
            for s in y.column_entries():
                if not S.is_homogeneous_of(s, ginv):
                    raise NotGraded(f"y_{g} entry {s} is not of degree {ginv}")
            if (y.T * x).scalar_value() != S.one():
                raise AxiomViolation("frame", f"y^t x != 1 at degree {g}", degree=g)

    def check_report(self) -> list:
        """Per-degree ``(g, n_g, y^t x == 1)`` triples."""
        return [(g, self.size(g), (self.y(g).T * self.x(g)).scalar_value() == self.S.one())
                for g in self.degrees()]
