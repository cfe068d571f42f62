"""Simple linear regression of midterm seat change on presidential approval."""

from approval_seats.dataset import (
    ElectionDataset,
    ElectionRecord,
    Group,
    SummaryStats,
    filter_by_approval,
    parse_dataset,
    reference_dataset,
    render_csv,
    summarize,
)
from approval_seats.errors import (
    DataError,
    DegenerateModelError,
    DomainError,
    ExtrapolationWarning,
    InsufficientDataError,
)
from approval_seats.inference import (
    IntervalKind,
    ResponseInterval,
    SlopeTest,
    mean_response_interval,
    prediction_interval,
    seats_interval,
    slope_utility_test,
)
from approval_seats.regress import LinearFit, fit_ols, predict_point
from approval_seats.report import (
    AnalysisReport,
    compare_models,
    render_markdown,
    render_scatter_svg,
    reproduce_paper,
)
from approval_seats.specfun import ln_gamma, reg_inc_beta, t_cdf, t_quantile

__version__ = "0.1.0"
