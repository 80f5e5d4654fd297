"""Exact toolkit for rank methods, their potency barriers and the objects around them.

Submodules: ``exact`` (Q, F_p, Q[eps], matrices), ``spaces`` (tensors,
forms, flattenings, Glynn and the symmetric embedding), ``grading``
(partitions, compositions, monomial counts), ``barriers`` (closed-form
bounds), ``methods`` (rank methods, potency, brute-force rank over F_p),
``series`` (power series and lifting), ``borderrank`` (degenerations),
``elusive`` (toy elusiveness checks) and ``cli``.
"""
from .errors import ValidationError

__version__ = "0.1.0"
__all__ = ["ValidationError", "__version__"]
