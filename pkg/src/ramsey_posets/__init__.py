"""Finite posets, lattices and their ordered expansions: embeddings, Π_n,
parameter words, arrow checks, amalgamation and ordering-property witnesses."""

__version__ = "0.1.0"

from .structures import (  # noqa: E402
    FiniteLattice,
    FinitePoset,
    InvalidStructure,
    LinearlyOrderedPoset,
    StructureMap,
    canonical_form,
    enumerate_embeddings,
    linear_extensions,
    validate,
)
from .powerset_pi import pi  # noqa: E402
from .param_words import ParamWord, factor, phi  # noqa: E402
from .arrows import Outcome, check_arrow, find_min_pi_arrow  # noqa: E402
from .ordering_property import op_witness_via_arrow, verify_op_witness  # noqa: E402
from .multiposets import Multiposet, Template, validate_multiposet  # noqa: E402
