"""JSON codecs for graphs, frames, factor systems, derivations, connection families and cochains.

Scalars use the exact ``scalars.encode`` form; ring elements are lists of
basis terms; group elements are written as strings and parsed back by the
group model.
"""

from __future__ import annotations

import re

from .cohomology import Cochain
from .errors import InputError
from .facsys import FactorSystem, FrameAlpha, TableAlpha
from .graded import FrameSystem
from .groups import FiniteGroup, GroupModel, IntegerWindow, group_from_json
from .l12 import delta_A_build
from .leavitt import GradedLpa, Graph, LeavittPathAlgebra
from .lift import Derivation, EtaFamily, degree_derivation, edge_count_difference
from .matrix import decode_matrix, encode_matrix
from .rings import DiagonalAlgebra, LaurentRing, MatrixAlgebra, Ring, ScalarField


# rings and groups -------------------------------------------------------------------------------

def encode_ring(R: Ring) -> dict:
    return R.describe()


def decode_ring(obj: dict) -> Ring:
    kind = obj.get("kind")
    field = obj.get("field", "q")
    if kind == "scalar":
        return ScalarField(field)
    if kind == "laurent":
        return LaurentRing(obj["variables"], field, star_signs=obj.get("star_signs"))
    if kind == "diagonal":
        return DiagonalAlgebra(int(obj["size"]), field)
    if kind == "matrix":
        return MatrixAlgebra(int(obj["size"]), field)
    if kind == "lpa":
        return LeavittPathAlgebra(Graph.from_json(obj["graph"]), field)
    raise InputError(f"unknown ring kind {kind!r}")


def encode_group(G: GroupModel) -> dict:
    if isinstance(G, FiniteGroup):
        m = re.fullmatch(r"Z/(\d+)", G.name)
        if m and G.elements() == list(range(int(m.group(1)))):
            return {"kind": "cyclic", "order": int(m.group(1))}
    return G.describe()


def decode_group(obj: dict) -> GroupModel:
    return group_from_json(obj)


def _gkey(g) -> str:
    return str(g)


def _gparse(G: GroupModel, text):
    if isinstance(G, IntegerWindow):
        return int(text)
    for g in G.elements():
        if str(g) == str(text):
            return g
    raise InputError(f"unknown group element {text!r}")


def _pair_key(g, h) -> str:
    return f"{g},{h}"


def _pair_parse(G, text):
    a, b = text.split(",")
    return _gparse(G, a.strip()), _gparse(G, b.strip())


# graphs and frames ---------------------------------------------------------------------------------

def encode_graph(graph: Graph) -> dict:
    return graph.to_json()


def decode_graph(obj: dict) -> Graph:
    try:
        return Graph.from_json(obj)
    except (KeyError, TypeError) as exc:
        raise InputError(f"malformed graph: {exc}") from None


def encode_frames(frames: FrameSystem) -> dict:
    S = frames.S
    if not isinstance(S, GradedLpa):
        raise InputError("frame files are only written for Leavitt path algebras")
    return {"lpa": S.lpa.describe(), "window": S.group.bound,
            "frames": {_gkey(g): {"x": encode_matrix(frames.x(g)), "y": encode_matrix(frames.y(g))}
                       for g in frames.degrees()}}


def decode_frames(obj: dict) -> FrameSystem:
    lpa = decode_ring(obj["lpa"])
    S = GradedLpa(lpa, int(obj["window"]))
    frames = {int(g): (decode_matrix(S, v["x"]), decode_matrix(S, v["y"])) for g, v in obj["frames"].items()}
    return FrameSystem(S, frames)


# factor systems -------------------------------------------------------------------------------------

def encode_factor_system(fs: FactorSystem) -> dict:
    R = fs.R
    degrees = fs.degrees()
    if isinstance(fs.alpha_impl, TableAlpha):
        alpha = {"kind": "table",
                 "images": {_gkey(g): {name: encode_matrix(M) for name, M in fs.alpha_impl.images[g].items()}
                            for g in degrees}}
    else:
        # alpha_g(alpha_h(r)) leaves any finite stored span, so frame-derived systems keep their frames
        alpha = {"kind": "frame", "frames": encode_frames(fs.alpha_impl.frames)}
    alpha["units"] = {_gkey(g): encode_matrix(fs.unit(g)) for g in degrees}
    return {
        "group": encode_group(fs.group),
        "ring": encode_ring(R),
        "sizes": {_gkey(g): fs.n(g) for g in degrees},
        "alpha": alpha,
        "omega": {_pair_key(g, h): encode_matrix(M) for (g, h), M in fs.omega_map.items()},
        "omega_tilde": {_pair_key(g, h): encode_matrix(M) for (g, h), M in fs.omega_tilde_map.items()},
        "generators": [R.encode(r) for r in fs.generators],
    }


def decode_factor_system(obj: dict) -> FactorSystem:
    try:
        G = decode_group(obj["group"])
        R = decode_ring(obj["ring"])
        frames = None
        if obj["alpha"]["kind"] == "frame":
            frames = decode_frames(obj["alpha"]["frames"])
            R = frames.S.R
        sizes = {_gparse(G, g): int(n) for g, n in obj["sizes"].items()}
        a = obj["alpha"]
        units = {_gparse(G, g): decode_matrix(R, M) for g, M in a["units"].items()}
        if a["kind"] == "table":
            images = {_gparse(G, g): {name: decode_matrix(R, M) for name, M in imgs.items()}
                      for g, imgs in a["images"].items()}
            alpha = TableAlpha(R, images, units)
        elif a["kind"] == "frame":
            alpha = FrameAlpha(frames)
        else:
            raise InputError(f"unknown alpha kind {a['kind']!r}")
        omega = {_pair_parse(G, k): decode_matrix(R, M) for k, M in obj["omega"].items()}
        omega_t = {_pair_parse(G, k): decode_matrix(R, M) for k, M in obj["omega_tilde"].items()}
        gens = [R.decode(r) for r in obj.get("generators", [])] or None
    except (KeyError, TypeError, ValueError) as exc:
        raise InputError(f"malformed factor system: {exc}") from None
    return FactorSystem(G, R, sizes, alpha, omega, omega_t, frames=frames, generators=gens)


# derivations and connection families ------------------------------------------------------------

def encode_derivation(D: Derivation) -> dict:
    descriptor = D.descriptor
    if descriptor is None:
        raise InputError(f"derivation {D.name} has no serializable description")
    kind = descriptor["kind"]
    R = D.ring
    if kind in ("zero", "monomial_rule"):
        return dict(descriptor)
    if kind == "generator_images":
        return {"kind": kind, "images": {k: R.encode(R.coerce(v)) for k, v in descriptor["images"].items()}}
    if kind == "inner":
        return {"kind": kind, "element": R.encode(descriptor["element"])}
    if kind == "delta_A":
        return {"kind": kind, "matrix": encode_matrix(descriptor["matrix"])}
    raise InputError(f"cannot encode derivation kind {kind!r}")


def decode_derivation(R: Ring, obj: dict) -> Derivation:
    kind = obj.get("kind")
    if kind == "zero":
        return Derivation.zero(R)
    if kind == "monomial_rule":
        if not isinstance(R, LeavittPathAlgebra):
            raise InputError("monomial rules need a Leavitt path algebra")
        if obj["rule"] == "edge_count_difference":
            return edge_count_difference(R, obj.get("edge", "e1"))
        if obj["rule"] == "degree":
            return degree_derivation(R)
        raise InputError(f"unknown monomial rule {obj['rule']!r}")
    if kind == "generator_images":
        return Derivation.from_images(R, {k: R.decode(v) for k, v in obj["images"].items()})
    if kind == "inner":
        return Derivation.inner(R, R.decode(obj["element"]))
    if kind == "delta_A":
        return delta_A_build(R, decode_matrix(R, obj["matrix"]))
    raise InputError(f"unknown derivation kind {kind!r}")


def encode_eta(eta: EtaFamily) -> dict:
    return {_gkey(g): encode_matrix(M) for g, M in eta.values.items()}


def decode_eta(fs: FactorSystem, obj) -> EtaFamily:
    if obj in (None, "zero"):
        return EtaFamily.zero(fs)
    return EtaFamily(fs, {_gparse(fs.group, g): decode_matrix(fs.R, M) for g, M in obj.items()})


# cochains -------------------------------------------------------------------------------------------

def encode_cochain(c: Cochain) -> dict:
    return c.encode()


def decode_cochain(G: GroupModel, R: Ring, obj: dict) -> Cochain:
    degree = int(obj["degree"])
    values = {}
    for key, v in obj["values"].items():
        parts = tuple(_gparse(G, x.strip()) for x in key.split(",")) if key else ()
        if len(parts) != degree:
            raise InputError(f"cochain key {key!r} does not have {degree} entries")
        values[parts] = R.decode(v)
    return Cochain(degree, values, R)


def encode_crossed_hom(R: Ring, eta: dict) -> dict:
    return {_gkey(g): R.encode(v) for g, v in eta.items()}


def decode_crossed_hom(G: GroupModel, R: Ring, obj: dict) -> dict:
    return {_gparse(G, g): R.decode(v) for g, v in obj.items()}
