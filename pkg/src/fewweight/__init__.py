"""Few-weight p-ary linear codes from trace defining sets, with exact
character-sum evaluation and enumerator verification."""

from .char_sums import Constants, SumParams, constants
from .code_lab import (
    CodeParams,
    CompleteWeightEnumerator,
    PredictedEnumerator,
    VerificationReport,
    WeightDistribution,
    compute_cwe,
    defining_set,
    hamming_from_cwe,
    predict,
    predict_thm1,
    predict_thm2,
    predict_thm3,
    secret_sharing_check,
    verify,
)
from .cyclotomic import CycInt
from .errors import (
    BudgetExceeded,
    FewWeightError,
    InvalidParameters,
    UnsupportedRegime,
)
from .field_tower import FieldCtx, build_field

__version__ = "0.1.0"
