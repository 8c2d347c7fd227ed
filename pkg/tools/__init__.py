# tools package — file formats and report persistence

from tools.file_formats import (
    diagram_from_dict, diagram_to_dict, dump_diagram, dump_measure, dump_sequence, dumps,
    load_diagram, load_measure, load_sequence, measure_from_dict, read_json, sequence_from_dict,
    write_json,
)
from tools.report_storage import ReportStorage

__all__ = [
    'diagram_from_dict',
    'diagram_to_dict',
    'dump_diagram',
    'dump_measure',
    'dump_sequence',
    'dumps',
    'load_diagram',
    'load_measure',
    'load_sequence',
    'measure_from_dict',
    'read_json',
    'sequence_from_dict',
    'write_json',
    'ReportStorage',
]
