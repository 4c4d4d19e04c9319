"""kummerlab: exact-arithmetic verification toolkit for a special plane
configuration of twelve conics through nine points and the rank-19 K3
lattice model sitting above it.

Submodules:

* scalars: Q(w) arithmetic, sparse polynomials, rational functions
* linalg: exact matrix routines (rational, polynomial, integer)
* plane: the cuspidal sextic, its nine cusps, conics, quartics, pencils
* lattice: Smith normal form, discriminant groups, short vector search
* nsmodel: the rank-19 even lattice, curve classes, degree census
* elliptic: Hesse cubics, group law, the elliptic fibration data
* isometry: lattice self-maps, configuration maps, group closures
* models: the degree-6 space model, the double-plane branch data
* cli: the `kummerlab` verification driver
"""

__version__ = "0.1.0"
