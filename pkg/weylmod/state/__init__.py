from .cache import CACHE_FORMAT, MemoTable, load_cache, save_cache, write_json_atomic
from .report import REPORT_SCHEMA, finish_report, read_report, record_checks, start_report, update_report

__all__ = [
    "CACHE_FORMAT",
    "MemoTable",
    "load_cache",
    "save_cache",
    "write_json_atomic",
    "REPORT_SCHEMA",
    "read_report",
    "update_report",
    "start_report",
    "record_checks",
    "finish_report",
]
