"""Alexander polynomials of rational links from Conway notation.

Builds standard-form herringbone diagrams, computes the two-variable
Alexander polynomial both as a determinant and as a clock-state sum, and
checks the count of y-free terms against the monochromatic twist sites.
"""

from .alexander import alexander_polynomial, build_matrix, extract_delta, link_polynomial
from .analysis import VerificationReport, sweep, verify
from .bipoly import BiPoly, det, evaluate, normalize_unit, to_coeff_matrix
from .clocklattice import bottom_row_states, clocked_state, enumerate_lattice, state_sum
from .conway import ClosureKind, TwistSequence, enumerate_sequences, parse_conway, predict_components
from .diagram import LinkDiagram, build_diagram

__all__ = [
    "BiPoly",
    "ClosureKind",
    "LinkDiagram",
    "TwistSequence",
    "VerificationReport",
    "alexander_polynomial",
    "bottom_row_states",
    "build_diagram",
    "build_matrix",
    "clocked_state",
    "det",
    "enumerate_lattice",
    "enumerate_sequences",
    "evaluate",
    "extract_delta",
    "link_polynomial",
    "normalize_unit",
    "parse_conway",
    "predict_components",
    "state_sum",
    "sweep",
    "to_coeff_matrix",
    "verify",
]
