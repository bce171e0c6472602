"""chainlab: symbolic toolkit for generalized Riccati and Abel chains.

Builds chain equations by operator iteration, decides linearizability
of low-order members, applies the equivalence transformations of the
chain family, classifies coefficient functions into canonical classes,
and verifies explicit point symmetries - each claim checked by
independent symbolic and numeric zero tests.
"""

__version__ = "0.1.0"

from . import chain, expr, linearize, symmetry, transform  # noqa: F401
