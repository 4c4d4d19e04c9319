"""Integer lattices: Gram matrices, discriminant forms, vector enumeration.

Everything is exact. Integer matrices stay integer, rational work uses
Fraction, and no step ever rounds. The quadratic form on a discriminant
group is taken modulo 2Z, which is canonical only for even lattices; the
group records whether its source lattice is even and the form-comparison
helper refuses odd ones.
"""

import operator
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, isqrt, prod

from .linalg import (
    charpoly_int,
    identity_int,
    int_kernel,
    invert_field,
    invert_int,
    is_unimodular,
    mat_mul,
    mat_mul_int,
    mat_vec_int,
    snf,
    transpose,
)
from .scalars import MultiPoly, rational_sqrt


class LatticeError(Exception):
    """A lattice-theoretic claim failed or an input is outside the domain."""


def _as_int_matrix(rows):
    out = tuple(tuple(operator.index(x) for x in row) for row in rows)
    n = len(out)
    for row in out:
        if len(row) != n:
            raise LatticeError("matrix is not square")
    return out


def _as_fraction_vector(entries, n):
    out = tuple(Fraction(x) for x in entries)
    if len(out) != n:
        raise LatticeError(f"vector has length {len(out)}, expected {n}")
    return out


def _det_int_any(matrix):
    if not matrix:
        return 1
    from .linalg import det_int

    return det_int([list(r) for r in matrix])


@lru_cache(maxsize=None)
def _cached_det(gram):
    return _det_int_any(gram)


@lru_cache(maxsize=None)
def _cached_signature(gram):
    n = len(gram)
    a = [[Fraction(x) for x in row] for row in gram]
    pos = neg = 0
    k = 0
    while k < n:
        p = next((i for i in range(k, n) if a[i][i]), None)
        if p is None:
            off = None
            for i in range(k, n):
                for j in range(i + 1, n):
                    if a[i][j]:
                        off = (i, j)
                        break
                if off:
                    break
            if off is None:
                return (pos, neg, n - k)
            i, j = off
            # both diagonals vanish but a[i][j] does not; adding the j-th
            # row and column to the i-th makes a[i][i] = 2*a[i][j] != 0
            for t in range(n):
                a[i][t] += a[j][t]
            for t in range(n):
                a[t][i] += a[t][j]
            p = i
        if p != k:
            a[k], a[p] = a[p], a[k]
            for row in a:
                row[k], row[p] = row[p], row[k]
        d = a[k][k]
        if d > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            f = a[i][k] / d
            if f:
                for t in range(n):
                    a[i][t] -= f * a[k][t]
                for t in range(n):
                    a[t][i] -= f * a[t][k]
        k += 1
    return (pos, neg, 0)


@dataclass(frozen=True)
class IntLattice:
    """A finitely generated free Z-module with an integer bilinear form."""

    gram: tuple
    basis_label: str = ""

    def __post_init__(self):
        g = _as_int_matrix(self.gram)
        for i in range(len(g)):
            for j in range(i):
                if g[i][j] != g[j][i]:
                    raise LatticeError("gram matrix is not symmetric")
        object.__setattr__(self, "gram", g)

    @property
    def rank(self):
        return len(self.gram)

    def det(self):
        return _cached_det(self.gram)

    def nondegenerate(self):
        return self.det() != 0

    def is_even(self):
        return all(self.gram[i][i] % 2 == 0 for i in range(self.rank))

    def inner(self, v, w):
        if len(v) != self.rank or len(w) != self.rank:
            raise LatticeError("vector length does not match the rank")
        total = 0
        for i, vi in enumerate(v):
            if not vi:
                continue
            row = self.gram[i]
            total += vi * sum(row[j] * wj for j, wj in enumerate(w) if wj)
        return total

    def norm(self, v):
        return self.inner(v, v)

    def signature(self):
        """(positive, negative, zero) inertia indices, exactly."""
        return _cached_signature(self.gram)

    def is_negative_definite(self):
        return self.signature() == (0, self.rank, 0)

    def is_isometry(self, m):
        m = _as_int_matrix(m)
        if len(m) != self.rank:
            return False
        g = [list(r) for r in self.gram]
        mm = [list(r) for r in m]
        return mat_mul_int(mat_mul_int([list(r) for r in transpose(mm)], g), mm) == g


@dataclass(frozen=True)
class IsometryMatrix:
    """An integer matrix certified on construction to preserve the form."""

    m: tuple
    lattice: IntLattice

    def __post_init__(self):
        m = _as_int_matrix(self.m)
        object.__setattr__(self, "m", m)
        if not self.lattice.is_isometry(m):
            raise LatticeError("matrix does not preserve the bilinear form")

    def char_poly(self):
        return char_poly(self.m)


# ---------------------------------------------------------------------------
# Smith normal form and discriminant groups
# ---------------------------------------------------------------------------


def smith_normal_form(matrix):
    """(D, U, V) with U*M*V = D, D diagonal, d1 | d2 | ..., U, V unimodular.

    The factorization is re-verified before returning.
    """
    rows = [list(map(operator.index, row)) for row in matrix]
    if not rows:
        return (), (), ()
    if any(len(r) != len(rows[0]) for r in rows):
        raise LatticeError("ragged matrix")
    u, d, v = snf(rows)
    if not (is_unimodular(u) and is_unimodular(v)):
        raise LatticeError("transform matrices are not unimodular")
    if mat_mul_int(mat_mul_int(u, rows), v) != d:
        raise LatticeError("smith factorization failed verification")
    diag = [d[i][i] for i in range(min(len(d), len(d[0]) if d else 0))]
    for a, b in zip(diag, diag[1:]):
        if (a and b % a) or (a == 0 and b != 0):
            raise LatticeError("diagonal is not a divisibility chain")
    to_t = lambda m: tuple(tuple(r) for r in m)
    return to_t(d), to_t(u), to_t(v)


def invariant_factors(matrix):
    """The invariant factors > 1 of the cokernel Z^n / M Z^n."""
    d, _, _ = smith_normal_form(matrix)
    n = min(len(d), len(d[0]) if d else 0)
    return tuple(d[i][i] for i in range(n) if d[i][i] > 1)


@dataclass(frozen=True)
class DiscriminantGroup:
    """The finite group L^dual / L with its torsion forms.

    ``generator_lifts`` are rational vectors in the primal basis, one per
    invariant factor > 1, reduced into [0,1) componentwise.  ``bilinear``
    holds the pairwise values of the induced Q/Z-valued bilinear form on
    the generators (representatives in [0,1)); ``quadratic`` the Q/2Z
    values (representatives in [0,2)), canonical only when ``even``.
    """

    invariant_factors: tuple
    generator_lifts: tuple
    bilinear: tuple
    quadratic: tuple
    even: bool
    lattice: IntLattice
    _umatrix: tuple
    _diagonal: tuple

    def order(self):
        return prod(self.invariant_factors, start=1)

    def dual_contains(self, v):
        v = _as_fraction_vector(v, self.lattice.rank)
        return all(self.lattice.inner(v, e).denominator == 1
                   for e in _unit_vectors(self.lattice.rank))

    def class_coordinates(self, v):
        """Coordinates of the class of v with respect to the generators."""
        v = _as_fraction_vector(v, self.lattice.rank)
        image = [self.lattice.inner(v, e) for e in _unit_vectors(self.lattice.rank)]
        if any(x.denominator != 1 for x in image):
            raise LatticeError("vector is not in the dual lattice")
        y = [sum(self._umatrix[i][j] * int(image[j]) for j in range(len(image)))
             for i in range(len(self._umatrix))]
        return tuple(
            y[i] % d for i, d in enumerate(self._diagonal) if d > 1
        )

    def order_of(self, v):
        coords = self.class_coordinates(v)
        order = 1
        for c, d in zip(coords, self.invariant_factors):
            step = d // gcd(d, c)
            order = order * step // gcd(order, step)
        return order

    def subgroup_order(self, vectors):
        """Order of the subgroup generated by the classes of the vectors."""
        coords = [list(self.class_coordinates(v)) for v in vectors]
        k = len(self.invariant_factors)
        if not coords or k == 0:
            return 1
        columns = [list(c) for c in coords]
        rows = [[col[i] for col in columns] for i in range(k)]
        for i in range(k):
            extra = [0] * k
            extra[i] = self.invariant_factors[i]
            for j in range(k):
                rows[j].append(extra[j])
        d, _, _ = smith_normal_form(rows)
        coker = prod(
            d[i][i] for i in range(k)
        )
        if coker == 0:
            raise LatticeError("relation matrix lost full rank")
        return self.order() // coker

    def bilinear_value(self, v, w):
        """Value of the Q/Z bilinear form on two dual vectors, in [0,1)."""
        v = _as_fraction_vector(v, self.lattice.rank)
        w = _as_fraction_vector(w, self.lattice.rank)
        return Fraction(self.lattice.inner(v, w)) % 1

    def quadratic_value(self, v):
        """Value of the Q/2Z quadratic form on a dual vector, in [0,2)."""
        v = _as_fraction_vector(v, self.lattice.rank)
        return Fraction(self.lattice.inner(v, v)) % 2


def _unit_vectors(n):
    return tuple(
        tuple(Fraction(1) if j == i else Fraction(0) for j in range(n))
        for i in range(n)
    )


def discriminant_group(lat):
    """The discriminant group of a nondegenerate lattice, with its forms."""
    if not lat.nondegenerate():
        raise LatticeError("degenerate gram matrix has no discriminant group")
    n = lat.rank
    if n == 0:
        return DiscriminantGroup(
            invariant_factors=(),
            generator_lifts=(),
            bilinear=(),
            quadratic=(),
            even=True,
            lattice=lat,
            _umatrix=(),
            _diagonal=(),
        )
    g = [list(r) for r in lat.gram]
    d, u, _ = smith_normal_form(g)
    diag = tuple(d[i][i] for i in range(n))
    ginv = invert_field([[Fraction(x) for x in row] for row in g])
    uinv = invert_int([list(r) for r in u])
    k = mat_mul(ginv, uinv)
    gens = []
    for i in range(n):
        if diag[i] > 1:
            gens.append(tuple(Fraction(k[r][i]) % 1 for r in range(n)))
    gens = tuple(gens)
    bil = tuple(
        tuple(Fraction(lat.inner(a, b)) % 1 for b in gens) for a in gens
    )
    quad = tuple(Fraction(lat.inner(a, a)) % 2 for a in gens)
    group = DiscriminantGroup(
        invariant_factors=tuple(x for x in diag if x > 1),
        generator_lifts=gens,
        bilinear=bil,
        quadratic=quad,
        even=lat.is_even(),
        lattice=lat,
        _umatrix=u,
        _diagonal=diag,
    )
    if group.order() != abs(lat.det()):
        raise LatticeError("discriminant group order disagrees with the determinant")
    return group


def forms_negate_match(d1, d2, pairing):
    """True iff the supplied correspondence negates the torsion forms.

    ``pairing`` lists, for each generator of ``d1`` in order, the integer
    coordinates of its image with respect to the generators of ``d2``.
    The correspondence must respect orders; quadratic values must negate
    in Q/2Z and bilinear values in Q/Z.
    """
    if d1.invariant_factors != d2.invariant_factors:
        raise LatticeError("mismatched invariant factor lists")
    if not (d1.even and d2.even):
        raise LatticeError("quadratic form comparison needs even lattices")
    k = len(d1.invariant_factors)
    if len(pairing) != k:
        raise LatticeError(f"pairing must list {k} images")
    images = []
    for coords, n in zip(pairing, d1.invariant_factors):
        coords = [operator.index(c) for c in coords]
        if len(coords) != k:
            raise LatticeError("image coordinates have the wrong length")
        for c, dj in zip(coords, d2.invariant_factors):
            if (n * c) % dj:
                raise LatticeError("correspondence does not respect orders")
        lift = tuple(
            sum(
                (Fraction(c) * g[r] for c, g in zip(coords, d2.generator_lifts)),
                start=Fraction(0),
            )
            for r in range(d2.lattice.rank)
        )
        images.append(lift)
    for i in range(k):
        if (d1.quadratic[i] + d2.quadratic_value(images[i])) % 2:
            return False
        for j in range(i + 1, k):
            b2 = d2.bilinear_value(images[i], images[j])
            if (d1.bilinear[i][j] + b2) % 1:
                return False
    return True


# ---------------------------------------------------------------------------
# orthogonal complements
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SublatticeEmbedding:
    """A saturated sublattice with its basis in ambient coordinates."""

    lattice: IntLattice
    basis: tuple


def orthogonal_complement(lat, vectors, label=""):
    """The saturated orthogonal complement of a set of integer vectors."""
    vecs = [
        [operator.index(x) for x in v] for v in vectors
    ]
    for v in vecs:
        if len(v) != lat.rank:
            raise LatticeError("vector length does not match the rank")
    if not vecs:
        basis = [list(r) for r in identity_int(lat.rank)]
    else:
        g = [list(r) for r in lat.gram]
        rows = [mat_vec_int(g, v) for v in vecs]
        basis = int_kernel(rows)
    gram = [[lat.inner(a, b) for b in basis] for a in basis]
    return SublatticeEmbedding(
        lattice=IntLattice(tuple(tuple(r) for r in gram), label),
        basis=tuple(tuple(b) for b in basis),
    )


# ---------------------------------------------------------------------------
# vector enumeration in negative-definite lattices
# ---------------------------------------------------------------------------


@lru_cache(maxsize=None)
def _lll_transform(gram):
    """Unimodular column transform B with B^T*gram*B size-reduced (exact).

    ``gram`` must be positive definite. Classic LLL with delta = 3/4 over
    Fractions; the Gram matrix is updated incrementally, the
    Gram-Schmidt data recomputed per round (ranks here are small).
    """
    n = len(gram)
    m = [list(row) for row in gram]
    u = identity_int(n)

    def gso():
        mu = [[Fraction(0)] * n for _ in range(n)]
        nu = [Fraction(0)] * n
        for i in range(n):
            nu[i] = Fraction(m[i][i])
            for j in range(i):
                s = Fraction(m[i][j])
                for t in range(j):
                    s -= mu[i][t] * mu[j][t] * nu[t]
                mu[i][j] = s / nu[j]
                nu[i] -= mu[i][j] ** 2 * nu[j]
            if nu[i] <= 0:
                raise LatticeError("matrix is not positive definite")
        return mu, nu

    def reduce_col(i, j, r):
        for t in range(n):
            u[t][i] -= r * u[t][j]
        for t in range(n):
            m[i][t] -= r * m[j][t]
        for t in range(n):
            m[t][i] -= r * m[t][j]

    def swap_cols(i, j):
        for t in range(n):
            u[t][i], u[t][j] = u[t][j], u[t][i]
        m[i], m[j] = m[j], m[i]
        for row in m:
            row[i], row[j] = row[j], row[i]

    k = 1
    while k < n:
        mu, nu = gso()
        changed = False
        for j in range(k - 1, -1, -1):
            r = round(mu[k][j])
            if r:
                reduce_col(k, j, r)
                changed = True
        if changed:
            mu, nu = gso()
        if nu[k] >= (Fraction(3, 4) - mu[k][k - 1] ** 2) * nu[k - 1]:
            k += 1
        else:
            swap_cols(k, k - 1)
            k = max(k - 1, 1)
    return tuple(tuple(r) for r in u)


def _fp_decompose(a):
    """Quadratic-completion data: Q(y) = sum_i q[i][i]*(y_i + sum_{j>i} q[i][j]*y_j)^2."""
    n = len(a)
    q = [[Fraction(x) for x in row] for row in a]
    for i in range(n):
        for j in range(i):
            q[i][i] -= q[j][j] * q[j][i] * q[j][i]
        if q[i][i] <= 0:
            raise LatticeError("matrix is not positive definite")
        for k in range(i + 1, n):
            for j in range(i):
                q[i][k] -= q[j][j] * q[j][i] * q[j][k]
            q[i][k] /= q[i][i]
    return q


def enumerate_norm_vectors(lat, norm, offset=None):
    """All integer v with (v + offset)·(v + offset) = norm, canonically sorted.

    The lattice must be negative definite, which makes the solution set
    finite; completeness comes from exact Fincke-Pohst bounds on a
    size-reduced basis, so no solution can be lost to rounding.
    """
    n = lat.rank
    if not lat.is_negative_definite():
        raise LatticeError("enumeration needs a negative-definite lattice")
    norm = Fraction(norm)
    if norm > 0:
        return []
    off = (
        _as_fraction_vector(offset, n)
        if offset is not None
        else tuple(Fraction(0) for _ in range(n))
    )
    if n == 0:
        return [()] if norm == 0 else []
    pos = tuple(tuple(-x for x in row) for row in lat.gram)
    b = _lll_transform(pos)
    bt = [list(r) for r in transpose([list(r) for r in b])]
    a2 = mat_mul_int(mat_mul_int(bt, [list(r) for r in pos]), [list(r) for r in b])
    binv = invert_int([list(r) for r in b])
    s2 = tuple(
        sum(Fraction(binv[i][j]) * off[j] for j in range(n)) for i in range(n)
    )
    q = _fp_decompose(a2)
    t = Fraction(-norm)
    found = []

    # Scaled-integer state: the tree search stores ds * y_i, so the inner
    # loops run on plain integers; exact fractions appear only once per
    # accepted node.  Completeness still rests on the isqrt-covered ranges
    # and exact inequality tests, so nothing can be lost to rounding.
    ds = 1
    for value in s2:
        ds = ds * value.denominator // gcd(ds, value.denominator)
    shift = [int(value * ds) for value in s2]
    off_scaled = [int(value * ds) for value in off]
    row_den = []
    row_num = []
    for i in range(n):
        den = 1
        for j in range(i + 1, n):
            den = den * q[i][j].denominator // gcd(den, q[i][j].denominator)
        row_den.append(den)
        row_num.append([int(q[i][j] * den) for j in range(i + 1, n)])
    norm_scaled = norm * ds * ds
    if norm_scaled.denominator != 1:
        return []
    norm_scaled = int(norm_scaled)
    ys = [0] * n  # holds ds * y_i

    def descend(i, used):
        rd = row_den[i]
        row = row_num[i]
        wn = shift[i] * rd + sum(
            row[j - i - 1] * ys[j] for j in range(i + 1, n)
        )
        wd = rd * ds  # w = s2[i] + centre = wn / wd
        remaining = t - used
        qn, qd = q[i][i].numerator, q[i][i].denominator
        if i == 0:
            root = rational_sqrt(remaining / q[0][0])
            if root is None:
                return
            for val in {root, -root}:
                x = val - Fraction(wn, wd)
                if x.denominator == 1:
                    ys[0] = int(x) * ds + shift[0]
                    emit()
            return
        budget = remaining / q[i][i]
        radius = isqrt(budget.numerator // budget.denominator) + 1
        lo = (-wn) // wd - radius - 1
        lhs_scale = qn * remaining.denominator
        rhs_bound = remaining.numerator * qd * wd * wd
        for x in range(lo, lo + 2 * radius + 3):
            z = wd * x + wn
            if lhs_scale * z * z <= rhs_bound:
                ys[i] = x * ds + shift[i]
                descend(i - 1, used + Fraction(qn * z * z, qd * wd * wd))

    def emit():
        xs = [(ys[i] - shift[i]) // ds for i in range(n)]
        v = tuple(sum(b[r][i] * xs[i] for i in range(n)) for r in range(n))
        shifted = [value * ds + off_scaled[i] for i, value in enumerate(v)]
        total = 0
        for i, left in enumerate(shifted):
            if left:
                grow = lat.gram[i]
                total += left * sum(
                    grow[j] * shifted[j] for j in range(n) if shifted[j]
                )
        if total != norm_scaled:
            raise LatticeError("enumerated vector fails the exact norm check")
        found.append(v)

    descend(n - 1, Fraction(0))
    found.sort()
    return found


# ---------------------------------------------------------------------------
# characteristic polynomials
# ---------------------------------------------------------------------------


def char_poly(matrix):
    """Exact characteristic polynomial det(T*I - M) as a polynomial in T."""
    m = [list(map(operator.index, row)) for row in matrix]
    if any(len(r) != len(m) for r in m):
        raise LatticeError("matrix is not square")
    coeffs = charpoly_int(m)
    tvar = MultiPoly.var(("T",), "T")
    out = MultiPoly.zero(("T",))
    n = len(coeffs) - 1
    for i, c in enumerate(coeffs):
        if c:
            out = out + tvar ** (n - i) * c
    return out
