"""Command-line interface, expression parser, JSON reports and SVG rendering."""
from .main import build_parser, dumps, run
from .parser import ParseError, format_germ, parse_expression, parse_germ

__all__ = ["ParseError", "build_parser", "dumps", "format_germ", "parse_expression", "parse_germ", "run"]
