"""Torsion in the homology of spaces of commuting elements in Lie groups,
read off from subcomplexes of the alcove of the extended Dynkin diagram."""
from .alcove import AlcoveComplex, Face, SubcomplexSpec, delta_p_k, euler_characteristic, full_alcove
from .errors import ComputationMismatch
from .homology import (
    ChainComplex,
    HomologyGroup,
    IntegerMatrix,
    integral_homology,
    invariant_factors,
    mod_p_betti,
    smith_normal_form,
    weighted_hocolim_complex,
)
from .kernels import CapExceeded
from .lie import LieType, catalog_facts, extended_diagram
from .morse import Matching, MorseCertificate, collapsibility_search, validate_matching
from .torsion import conjecture_scan, detect_via_delta, detect_via_hocolim, detection_report, top_homology
from .weyl_series import poincare_series

__version__ = "0.1.0"
