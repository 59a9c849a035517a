"""Re-Pair grammar compression."""

try:
    from ._repair import *  # noqa: F401,F403
    from ._repair import GrammarError, SpaceBoundViolation
except ImportError:
    from _repair import *  # noqa: F401,F403
    from _repair import GrammarError, SpaceBoundViolation

__all__ = [
    "compress",
    "decompress",
    "grammar",
    "stats",
    "naive_grammar",
    "replay_ok",
    "space_bound_words",
    "GrammarError",
    "SpaceBoundViolation",
]
