"""Rebuild a stored outcome's configuration and run its verifier again."""
from __future__ import annotations

from ..graph import is_planar_hamiltonian, polygon_graph
from ..io import polygon_from_json, polygon_to_json
from .outcome import LemmaOutcome
from .polychecks import (
    check_ab_lemma, check_abcx, check_depth, check_midpoint_sum, check_no_3_cycles, check_no_3_cycles_extended, check_one_chord,
    check_tri_tangent,
)
from .quadlemmas import HexConfig, QuadConfig, check_3pairs, check_quad
from .wedge import WEDGE_CASES, WedgeConfig, verify_wedge_lemma

__all__ = ["rerun", "check_planar"]


def check_planar(p, seed: int = 0) -> LemmaOutcome:
    ok, cert = is_planar_hamiltonian(polygon_graph(p))
    wit = {"polygon": polygon_to_json(p)}
    if not ok:
        wit["odd_cycle"] = [list(c) for c in cert.odd_cycle]
    return LemmaOutcome("planar", ok, wit, seed)


def rerun(o: LemmaOutcome) -> LemmaOutcome:
    w = o.witness
    lid = o.lemma_id
    if lid in WEDGE_CASES:
        return verify_wedge_lemma(WedgeConfig.from_json(w["config"]), o.seed)
    if lid == "L11":
        return check_quad(QuadConfig.from_json(w["config"]), o.seed)
    if lid == "L12":
        return check_3pairs(HexConfig.from_json(w["config"]), o.seed)
    p = polygon_from_json(w["polygon"])
    if lid == "planar":
        return check_planar(p, o.seed)
    if lid == "L1":
        return check_one_chord(p, seed=o.seed)
    if lid == "L2":
        if w.get("extended"):
            return check_no_3_cycles_extended(p, w["six"], o.seed)
        return check_no_3_cycles(p, w["six"], seed=o.seed)
    if lid == "L8":
        return check_tri_tangent(p, o.seed)
    if lid == "L9":
        return check_abcx(p, w["i"], w["x"], o.seed)
    if lid == "L10":
        return check_ab_lemma(p, w["a"], w["b"], w["c"], o.seed)
    if lid == "pentagon":
        return check_midpoint_sum(p, o.seed)
    if lid == "depth":
        return check_depth(p, o.seed)
    raise ValueError(f"cannot re-verify lemma {lid!r}")
