"""
Pfaffian Atlas
Exact computations for ideals cogenerated by a single Pfaffian: Pfaffian algebra,
tableau correspondences, Groebner bases, initial complexes and multiplicities.
"""

__version__ = "1.0.0"
