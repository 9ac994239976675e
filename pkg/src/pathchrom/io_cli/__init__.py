"""File formats, run configuration and the command line."""
from .config import RunConfig
from .formats import ReportWriter, emit_dimacs_cnf, emit_dot, parse_dimacs_cnf, roles_json, write_roles_json
from .graph6 import Graph6Error, emit_graph6, parse_graph6, read_graph6_file, write_graph6_file
