"""Linear differential equations attached to rational functions on plane curves.

Exact rational arithmetic throughout: truncated power and Laurent series,
Newton lifting of a curve branch, the operators D_phi with their closed-form
solution bases, and the Bessel/Laguerre families that fall out of them.
"""

__version__ = "0.1.0"

from .curve import (
    HYPERBOLA,
    PROJECTIVE_LINE,
    BivariatePolynomial,
    CurveChart,
    expand_branch,
    load_chart,
    newton_steps,
    sharp_embed,
)
from .diffop import (
    DiffOperator,
    SeriesFunction,
    apply,
    degree,
    e_transform,
    lemma1_equal,
    module_action,
    rational_rank,
    solve,
    solve_ivp,
)
from .errors import *  # noqa: F401,F403
from .expr import parse_expr
from .numeric import EvalGrid, SampleTable, eval_function
from .series import (
    LaurentSeries,
    TruncatedSeries,
    add,
    invert,
    laurent_invert,
    laurent_mul,
    mul,
    order,
    shift,
    sqrt,
)
from .special import (
    bessel_series,
    fundamental_system,
    inv_sqrt_series,
    laguerre,
    verify_recurrence,
)
