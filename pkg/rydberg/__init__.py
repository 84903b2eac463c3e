"""Rényi, Shannon and Tsallis entropies of hydrogenic bound states.

Exact quadrature values and Rydberg (large-n) asymptotics, with the sweep
harness that measures how fast the asymptotics converge.
"""

__version__ = "1.0.0"
