"""Exact q-expansion arithmetic for modular forms on the full modular group.

Submodules:

- ``exactnum``     rationals and quadratic number field elements
- ``qseries``      truncated Laurent series with sound precision tracking
- ``modforms``     Eisenstein series, delta, j, Miller basis, Hecke operators
- ``eigen``        Hecke eigenform decomposition and coefficient fields
- ``djbasis``      the canonical basis of weakly holomorphic forms
- ``asymptotics``  coefficient growth diagnostics (exponential sums, Bessel)
- ``quadform``     even unimodular lattices, representation counts, theta series
- ``ratioset``     projective coefficient ratio sets and proportionality tests
- ``cli``          the ``modform`` command line front end
"""

__version__ = "0.1.0"
