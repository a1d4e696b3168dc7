"""
Result persistence: trace CSVs, JSON reports and spectra.
"""

from memory.report_writer import ReportWriter, load_trace_csv

__all__ = [
    'ReportWriter',
    'load_trace_csv',
]
