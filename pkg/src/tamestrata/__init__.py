"""Exact arithmetic for tame towers of local fields.

Models tamely ramified towers over F = F_q((t)), decides minimality and
genericity of elements, constructs and verifies defining sequences of
strata, and translates between the two constructions' datum skeletons,
with a brute-force matrix oracle cross-checking every closed form.
"""

from . import corpus, ffq, minimal, oracle, strata, tame, translate, verifysuite
from .errors import TameStrataError

__all__ = [
    "TameStrataError", "corpus", "ffq", "minimal", "oracle", "strata",
    "tame", "translate", "verifysuite",
]

__version__ = "0.1.0"
