"""Characteristic cycles of K-orbit closures on Grassmannians.

Exact rational computations of orbit posets, conormal geometry, and
characteristic cycles for the symmetric pairs GL(p)xGL(q), Sp(n), and
O(n) acting on Gr(k, n), together with independent verification routes
(microlocal fibers, transversal slices to matrix rank strata).
"""

__version__ = "0.1.0"
