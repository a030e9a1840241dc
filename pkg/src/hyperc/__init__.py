"""hyperc: optimal hypercontractive constants for Z_3 and biased Bernoulli variables.

Subpackages
-----------
core    closed-form evaluation (norms, defects, equation systems, curve families)
solver  stable solvers for the characterizing systems
oracle  independent brute-force verification layer
exact   exact big-integer resultant machinery and algebraic certification
sweeps  deterministic data generation behind the CLI sweep command
cli     command-line front end (``hyperc ...``)
"""

from .core import (
    BiasParam,
    ExponentPair,
    PlanePoint,
    PolarPoint,
    UnitSquarePoint,
    cross_ratio,
    defect_polar,
    defect_segment,
    ell,
    F_polar,
    h_curve,
    h_lambda,
    H_curve,
    H_lambda_curve,
    Phi,
    Psi,
    blowup_b,
    blowup_B,
    residual_biased,
    residual_selfdual,
    residual_z3,
    sigma_pp_star,
    wolff_2q,
    z2_constant,
)
from .errors import (
    BracketError,
    CapacityError,
    CertificationError,
    DivisibilityError,
    HypercError,
    InputDomainError,
    SingularityError,
    SolverError,
    VerificationError,
)
from .solver import BiasedSolution, Z3Solution, intersect_H_curves, invert_H2, solve_biased, solve_z3, solve_z3_direct

__version__ = "0.1.0"
