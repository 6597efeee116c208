"""Exact computations for generalized s-manifolds.

Flat tori with integral symmetry groups, finite coset spaces of
Γ-symmetric triples and Weyl-group orbits in a Cartan subalgebra: fixed-point
sets, polars, maximal antipodal sets and the Γ-family of quandles they carry.
"""

__version__ = "0.1.0"
