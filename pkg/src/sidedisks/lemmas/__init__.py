"""Executable checks for the lemmas behind the planarity theorem."""
from .campaign import CAMPAIGN_IDS, CampaignResult, run_campaign, tangent_polygon
from .ineq import check_proof_inequalities
from .outcome import LEMMA_IDS, LemmaOutcome, Rejected
from .polychecks import (
    abcx_configs, ab_configs, check_ab_lemma, check_abcx, check_no_3_cycles,
    check_no_3_cycles_extended, check_one_chord, check_tri_tangent, conflict_triangles,
    diag_midpoint_sum, diag_midpoint_sum_decimal, disk_depth_pentagon, find_tri_tangent_witness,
    six_subsets, tri_tangent_candidates, check_midpoint_sum, check_depth,
)
from .quadlemmas import HexConfig, QuadConfig, check_3pairs, check_quad, hex_config, quad_config
from .registry import check_planar, rerun
from .wedge import WEDGE_CASES, WedgeConfig, verify_wedge_lemma, wedge_config
