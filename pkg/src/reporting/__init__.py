from .report import Report, cached_search, certificate_payload, group_info, lift_payload, search_payload, series_payload, text_hash
from .reproduce import CHECKS, CheckResult, run_suite

__all__ = [
    "CHECKS",
    "CheckResult",
    "Report",
    "cached_search",
    "certificate_payload",
    "group_info",
    "lift_payload",
    "run_suite",
    "search_payload",
    "series_payload",
    "text_hash",
]
