"""Decision calculus over fuzzy temporal hypotheses.

Meiosis and hyperbole move hypotheses between "certain next moment" and
"sometime in the future" frames; on top of that sit hyperbolic discounting,
intertemporal judgments and an S-shaped value curve for lotteries.
"""

from .core_math import ChangeFactor, DomainError, gexp, glog, hyperbolic_change, meiotic_change
from .discounting import (
    DiscountParams,
    FitResult,
    annualized_rate,
    discount,
    fit_discount,
    params_from_arbitrage,
    subadditive_combine,
)
from .membership import MembershipParams, ParameterError, judge, mu
from .prospect import (
    Choice,
    Lottery,
    SCurveParams,
    disjunction_change,
    hyperbolic_loss_value,
    is_fair,
    judge_gain_lottery,
    judge_loss_lottery,
    meiotic_value,
    restore_change,
    risk_crossover,
    s_curve,
)
from .temporal import (
    Hypothesis,
    Mode,
    Quantifier,
    compare_hypotheses,
    hyperbole,
    meiosis,
    simulate_time_average,
)
from .time_preference import Decision, IntertemporalChoice, prefer_delayed, reversal_schedule

__version__ = "0.1.0"
