"""Yang-Baxter maps from one-vertex cube complexes covered by products of trees."""

from .census import enumerate_labeled, mass_formula_eval
from .complex import build_complex, check_cube_condition, check_vh, link
from .field import FieldSpec, build_field, kl_pair
from .fixtures import fixture
from .homology import abelianize, first_homology, smith_normal_form
from .presentation import Presentation, build_gamma, extend_with_commuting_factor, structure_presentation
from .ybmap import derive_R, iso_test, to_matrix, verify_qybe, verify_ybe

__version__ = "0.1.0"
