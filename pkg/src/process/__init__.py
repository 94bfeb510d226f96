from .state import (
    INF,
    SATURATED,
    Strategy,
    CounterState,
    init_state,
    marked_assignment,
    step_cu,
    step_cm,
    get_step,
)
from .report import EDGE_COLUMNS, ErrorReport, Histogram, histogram
from .runner import run, execute, check_state, cm_counter_identity
from .audit import DualAuditRecord, dual_step_audit, audit_run, is_dual_complete
