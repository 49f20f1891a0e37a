"""q-analogues of multiple zeta values: brackets, double shuffle relations and realizations."""

from .brackets import BiIndex, BracketCombo, Partition, eval_bracket, verify_bracket_identity
from .exact_core import bernoulli, eulerian_poly
from .formal_space import FormalVec, in_span, relation_set
from .multiseries import MSeries
from .qseries import QSeries, eisenstein_gtilde
from .realizations import RealizationTable, realize, realize_bernoulli

__version__ = "0.1.0"

__all__ = [
    "BiIndex",
    "BracketCombo",
    "Partition",
    "eval_bracket",
    "verify_bracket_identity",
    "bernoulli",
    "eulerian_poly",
    "FormalVec",
    "in_span",
    "relation_set",
    "MSeries",
    "QSeries",
    "eisenstein_gtilde",
    "RealizationTable",
    "realize",
    "realize_bernoulli",
]
