"""Type checker for coherence declarations of weak omega-groupoids."""

from ._core import ParseError, check, corpus, format, interp, meta, run

__all__ = ["ParseError", "check", "corpus", "format", "interp", "meta", "run"]
