"""Three-dimensional twisted fields over small finite fields.

Construction of the algebras, the split Albert bilinear map they extend to,
exact linear algebra over GF(q), and exhaustive censuses of the intersection
dimensions of the subspaces Av inside A^2.
"""

__version__ = "0.1.0"
