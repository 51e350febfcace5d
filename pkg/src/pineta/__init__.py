"""Symbolic engine for eta-invariants and exotic smooth structures on Pin+ 4-manifolds."""

from .classify import cp2_stabilize, homeo, limits_report, smooth_compare
from .cover import involution_report, orientation_cover
from .eta import Mod32, eta_from_fixed_points
from .expr import (
    atom,
    bar,
    card,
    circle_sum,
    conn_sum,
    csum,
    gluck_twist,
    normalize,
    render,
    twist,
)
from .invariants import (
    EtaSet,
    bordism_class,
    eta_profile,
    eta_set,
    h1_dim,
    pin_plus,
    spin_eta,
    structure_count,
)
from .oracle import brute_eta_set, check_laws
from .parser import parse
from .report import report
from .tables import reproduce

__version__ = "0.1.0"
