"""Exact computations for the emergent Grothendieck-Teichmueller and Kashiwara-Vergne Lie algebras."""

from .freealg import NCPoly, TracePoly
from .freelie import LiePoly, lie_bracket, substitute
from .gtops import eta_gr, mu_f_gr, r_map
from .edk import EdkElement, differential, emergent_defects
from .kv import TangentialDerivation, div, is_sder, krv_class, nu, nu_em
from .spaces import emergent_bracket, solve_graded, verify_main_theorem

__version__ = "0.1.0"

__all__ = [
    "NCPoly", "TracePoly", "LiePoly", "lie_bracket", "substitute", "eta_gr", "mu_f_gr",
    "r_map", "EdkElement", "differential", "emergent_defects", "TangentialDerivation",
    "div", "is_sder", "krv_class", "nu", "nu_em", "emergent_bracket", "solve_graded",
    "verify_main_theorem",
]
