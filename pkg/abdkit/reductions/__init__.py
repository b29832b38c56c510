from .abd_to_wsat import reduce_essneg_eq_to_wsat, reduce_im_eq_to_wsat, reduce_is10_eq_to_wsat, reduce_iv2_eq_to_wsat
from .generators import check_graph, gen_indset_eq, gen_vertexcover_le, parse_edges
from .wsat import (
    WsatInstance,
    lift_witness,
    parse_wsat,
    trivially_false,
    trivially_true,
    wsat_bruteforce,
    write_wsat,
)

__all__ = [
    "reduce_essneg_eq_to_wsat",
    "reduce_im_eq_to_wsat",
    "reduce_is10_eq_to_wsat",
    "reduce_iv2_eq_to_wsat",
    "check_graph",
    "gen_indset_eq",
    "gen_vertexcover_le",
    "parse_edges",
    "WsatInstance",
    "lift_witness",
    "parse_wsat",
    "trivially_false",
    "trivially_true",
    "wsat_bruteforce",
    "write_wsat",
]
