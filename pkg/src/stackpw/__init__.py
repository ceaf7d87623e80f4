"""Exact truncated series, finite-field point counts and plethystic identities
for surface-group representation stacks and quiver moduli."""

from .series import GradedSeries, TruncationPolicy, make_series, add, mul, invert_geometric, coeff
from .plethysm import pexp, plog, adams, SpectrumTuple, elem_to_power, power_to_elem, spectrum_cup
from .functors import (VirtualDimension, sym_series, tensor_series, free_lie_series, uea_series,
                       bcstar_series, pt_mod_glr_bm_vir_series, bm_vir_from_count)
from .polynomials import Poly, RationalFunctionQ
from .quiver import (Quiver, DimVector, euler_form, sym_euler, serre_exponent, triple_quiver,
                     preproj_vdim, count_rep_classes, kac_polynomial)
from .charvar import (GroupModel, CharacterDegreeData, build_group, brute_relation_count, class_count,
                      frobenius_count, stack_count_series, smooth_twisted_series)
from .filtrations import FiltrationTable
from .checks import (CheckSpec, CheckReport, check_genus0_euler, check_genus1_betti, check_echeck,
                     check_psws_genus01, check_ic_properties, extract_bps, extract_ic)

__version__ = "0.1.0"
