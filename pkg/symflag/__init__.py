__author__ = 'Bruno Ducraux'
__version__ = '0.3.0'

from .symflag_tool import SymflagTool
from .run_config import RunConfig
from .scalars import Backend
from .matrices import Mat
from .symplectic import GroupElement, SymplecticForm, standard_J, hermitian_J_h, verify_key_lemma, random_symplectic
from .flags import ThetaSet, ThetaFlag, UnipotentElement, are_antipodal, inversion, property_I_certificate
from .representations import build_rho, limit_point
from .witness import sl2c_witness, su_witness, non_maximality_check
