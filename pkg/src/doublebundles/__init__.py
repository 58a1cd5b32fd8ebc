"""Double vector spaces, the automorphism double Lie group Aut(R^[n]), its Lie
algebra, duality, frames, cocycle models of double bundles, double Lie
algebras from 2-cocycles and Lie-algebra-level connection checks.
"""

from .algebra import DvsDer, commutator_oracle, der_bracket, der_exp, exp_linear_part, exp_twist_part
from .aut import (AutGroup, DoubleLieGroup, DvsAut, ProductGroup, SemidirectGroup, aut_apply, aut_classify,
                  aut_compose, aut_factor, aut_inverse, aut_project, dlg_verify)
from .duality import dual_rep, f_dual, f_dual_inverse, mu_dual_I, pair
from .dvs import (BilinearMap, CoreSection, Dims, DvsElement, LinearSection, Splitting, decomposition_apply,
                  decomposition_transition, dvs_add, dvs_neg, dvs_scale, section_eval, splitting_translate,
                  zero_I, zero_II)
from .errors import (BaseMismatch, DimMismatch, DoubleBundleError, InputError, NoOverlap, NotACocycle,
                     NotASection, PreconditionFailed, Singular, ToleranceNotMet)
from .frames import Frame, frame_act, frame_eval, frame_to_aut, frame_transition

__version__ = "0.1.0"
