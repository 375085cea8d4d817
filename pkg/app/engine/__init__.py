from app.engine.base import as_bytes
from app.engine.expected import VarStrategy, join, join_var, match_ffl
from app.engine.farthest import match_fft, smallest
from app.engine.labeled import match_labeled
from app.engine.plain import match_plain

__all__ = [
    "as_bytes", "VarStrategy", "join", "join_var", "match_ffl", "match_fft",
    "smallest", "match_labeled", "match_plain",
]
