"""Numerical laboratory for boundary normal derivatives of Dirichlet spectral clusters.

Computes Dirichlet eigenpairs on planar domains (closed form on disks and
rectangles, P1 finite elements on polygons), assembles spectral clusters over
frequency windows, and measures the extremal boundary-flux ratios
``||d_nu u|| / (lambda ||u||)`` together with the identities that pin them
down exactly (Rellich multiplier identity, coefficient-space perturbation
bounds, boundary-layer energy estimates on the disk).
"""

__version__ = "0.1.0"
