"""Tools for reducing 3-CNF formulas to simplicial complexes and testing their van Kampen obstruction."""

from .kphi_errors import *
from .kphi_config import *
from .kphi_complex import *
from .kphi_gf2 import *
from .kphi_cnf import *
from .kphi_gadgets import *
from .kphi_delprod import *
from .kphi_geometry import *
from .kphi_io import *
from .kphi_pandas import *
from .kphi_verify import *
