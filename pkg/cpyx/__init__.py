# -*- coding: utf-8 -*-

from . import utils, gl, lattice, cpoly, domain, minimax, nodes, extremal, inout, testing, cli

from .utils import *
from .gl import *
from .lattice import *
from .cpoly import *
from .domain import *
from .minimax import *
from .nodes import *
from .extremal import *
from .inout import *
from .testing import *

__doc__ = """

cpyx submodules:
 .utils
 .gl
 .lattice
 .cpoly
 .domain
 .minimax
 .nodes
 .extremal
 .inout
 .testing
 .cli
"""

__version__ = "1.0.0"

print(f"\n\033[32;1mcpyx version {__version__} imported.\033[0m")
