"""Exact finite-scale constructions of coding continua for closed subsets of
[0,1], linear orders and integer sequences, with a path-component and cut
point analyzer to check them."""

from .geometry import (
    ClosedSet1D,
    Interval,
    PLHomeo1D,
    Point,
    complement_intervals,
    mk_closed_set,
    pl_compose,
    pl_eval,
    pl_image,
    pl_invert,
)
from .invariants import decide_h1, decide_r1, extract_M, extract_S, extract_T, mirror_set, r1_witness
from .encoder import LinearOrderSpec, encode_order, verify_encoding
from .complex import Cell, GeoComplex
from .coding import (
    build_fan,
    build_hat,
    build_I,
    build_J,
    build_tilde,
    extend_homeo_1d,
    extract_base_homeo,
    gen_dset,
    lift_hat_homeo,
    lift_tilde_homeo,
    radial_extend,
)
from .gadget import IntSeq, build_F, displacement_profile, fscale, rect, sigma_eval, sigma_verify
from .topology import classify_non_cut, path_components, puncture, raster_oracle

__version__ = "0.1.0"
