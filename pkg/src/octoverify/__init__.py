"""octoverify: exact-arithmetic verification of octonion / Clifford / isoparametric identities.

Everything runs over exact rationals (``fractions.Fraction``) by default.  The
few places where sqrt(2) enters (mirror points, second fundamental forms) track
the irrational factor symbolically as a half-integer power of two, so no check
ever relies on floating point unless a float tolerance mode is requested
explicitly.
"""

__version__ = "0.1.0"
