from skeptic.audit.structures import TRACE_COLUMNS, AuditResult
from skeptic.audit.process import sweep, run_game, summarize

__all__ = ["TRACE_COLUMNS", "AuditResult", "sweep", "run_game", "summarize"]
