"""Numerics for holomorphic and raised modular forms of weight k on SL2(Z).

Submodules: numerics (special functions), qseries and hecke (eigenforms and
L-series), whittaker, geometry, forms (weight-k automorphic objects),
quadrature (integrals over the fundamental domain), io, experiments, cli.
"""

from .errors import *  # noqa: F401,F403
from .numerics import Precision
from .hecke import HeckeEigenform, eigenform, eigenforms
from .geometry import HPoint, GroupElement, reduce, cocycle_j
from .forms import CuspForm, RaisedCuspForm, Eisenstein, IncompleteEisenstein, MaassData, RaisedMaassForm
from .quadrature import integrate_fd, petersson

__version__ = "0.1.0"
