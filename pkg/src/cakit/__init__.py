"""cakit: exact commutative-algebra toolkit.

Strength of homogeneous forms, Hasse derivations, Groebner-backed ideal
theory, minimal graded free resolutions and Betti tables, truncation and
specialization of parametric families, and desk-scale experiments.
"""

__version__ = "0.1.0"
