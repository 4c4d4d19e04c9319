"""Exact linear algebra helpers.

Three families of routines share this module:

* generic field routines (entries may be Fraction, EisensteinScalar, or
  FunctionElement: anything with +, -, *, /, bool, ==),
* integer matrix routines (Bareiss determinants, characteristic
  polynomials, Smith normal form, integer kernels),
* polynomial matrix routines (fraction-free echelon and nullspaces for
  MultiPoly entries).

Matrices are plain lists of row lists. Nothing here mutates its inputs.
"""

from __future__ import annotations

from fractions import Fraction

from .scalars import (
    FunctionElement,
    MultiPoly,
    poly_exact_div,
    poly_gcd,
)


# ---- generic field routines -------------------------------------------


def mat_mul(a, b):
    k = len(b)
    if any(len(row) != k for row in a):
        raise ValueError("shape mismatch in mat_mul")
    bt = [list(col) for col in zip(*b)]
    return [[_dot(row, col) for col in bt] for row in a]


def _dot(u, v):
    acc = u[0] * v[0]
    for i in range(1, len(u)):
        acc = acc + u[i] * v[i]
    return acc


def mat_vec(a, v):
    return [_dot(row, v) for row in a]


def transpose(a):
    return [list(col) for col in zip(*a)]


def rref(matrix):
    """Reduced row echelon form over a field. Returns (rows, pivot_cols)."""
    a = [list(row) for row in matrix]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if a[i][col]), None)
        if pivot is None:
            continue
        a[r], a[pivot] = a[pivot], a[r]
        inv_row = [x / a[r][col] for x in a[r]]
        a[r] = inv_row
        for i in range(m):
            if i != r and a[i][col]:
                f = a[i][col]
                a[i] = [x - f * y for x, y in zip(a[i], inv_row)]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return a, pivots


def rank(matrix):
    return len(rref(matrix)[1])


def nullspace(matrix, one):
    """Basis of the right kernel over a field; `one` is the field's 1."""
    zero = one - one
    a, pivots = rref(matrix)
    if not matrix:
        return []
    n = len(matrix[0])
    free = [j for j in range(n) if j not in pivots]
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for r, p in enumerate(pivots):
            v[p] = -a[r][f]
        basis.append(v)
    return basis


def solve_field(matrix, rhs):
    """One solution of A x = rhs over a field, or None if inconsistent."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    aug = [list(row) + [rhs[i]] for i, row in enumerate(matrix)]
    a, pivots = rref(aug)
    if n in pivots:
        return None
    one = None
    for row in a:
        for x in row:
            if x:
                one = x / x
                break
        if one is not None:
            break
    if one is None:
        one = Fraction(1)
    zero = one - one
    v = [zero] * n
    for r, p in enumerate(pivots):
        v[p] = a[r][n]
    return v


def invert_field(matrix):
    """Inverse of a square matrix over a field; raises on singular input."""
    n = len(matrix)
    if any(len(row) != n for row in matrix):
        raise ValueError("matrix is not square")
    sample = matrix[0][0]
    one = None
    for row in matrix:
        for x in row:
            if x:
                one = x / x
                break
        if one is not None:
            break
    if one is None:
        raise ValueError("singular matrix")
    zero = one - one
    aug = [list(row) + [one if i == j else zero for j in range(n)]
           for i, row in enumerate(matrix)]
    a, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("singular matrix")
    return [row[n:] for row in a[:n]]


def det_field(matrix):
    """Determinant over a field by Gaussian elimination."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    sample = None
    for row in a:
        for x in row:
            if x:
                sample = x
                break
        if sample is not None:
            break
    if sample is None:
        return matrix[0][0] if n else None
    one = sample / sample
    det = one
    for k in range(n):
        pivot = next((i for i in range(k, n) if a[i][k]), None)
        if pivot is None:
            return one - one
        if pivot != k:
            a[k], a[pivot] = a[pivot], a[k]
            det = -det
        det = det * a[k][k]
        inv = one / a[k][k]
        for i in range(k + 1, n):
            if a[i][k]:
                f = a[i][k] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[k])]
    return det


# ---- integer matrices ---------------------------------------------------


def identity_int(n):
    return [[1 if i == j else 0 for j in range(n)] for i in range(n)]


def mat_mul_int(a, b):
    k = len(b)
    bt = list(zip(*b))
    return [[sum(row[i] * col[i] for i in range(k)) for col in bt] for row in a]


def mat_vec_int(a, v):
    return [sum(r * x for r, x in zip(row, v)) for row in a]


def det_int(matrix):
    """Fraction-free Bareiss determinant for integer matrices."""
    n = len(matrix)
    a = [list(row) for row in matrix]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if a[i][k]), None)
            if swap is None:
                return 0
            a[k], a[swap] = a[swap], a[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


def charpoly_int(matrix):
    """Characteristic polynomial of an integer matrix, Faddeev-LeVerrier.

    Returns [1, c1, ..., cn] with det(T*I - A) = T^n + c1 T^(n-1) + ... + cn.
    All divisions are exact in Z.
    """
    n = len(matrix)
    coeffs = [1]
    m = [row[:] for row in matrix]
    for k in range(1, n + 1):
        tr = sum(m[i][i] for i in range(n))
        if tr % k:
            raise AssertionError("Faddeev-LeVerrier trace division failed")
        c = -(tr // k)
        coeffs.append(c)
        if k == n:
            break
        for i in range(n):
            m[i][i] += c
        m = mat_mul_int(matrix, m)
    return coeffs


def snf(matrix):
    """Smith normal form. Returns (U, D, V) with U @ A @ V = D.

    U and V are unimodular; D is diagonal with d1 | d2 | ... and
    nonnegative diagonal entries.
    """
    a = [list(row) for row in matrix]
    m = len(a)
    n = len(a[0]) if m else 0
    u = identity_int(m)
    v = identity_int(n)

    def row_op(i, j, q):  # row_i -= q * row_j
        a[i] = [x - q * y for x, y in zip(a[i], a[j])]
        u[i] = [x - q * y for x, y in zip(u[i], u[j])]

    def col_op(i, j, q):  # col_i -= q * col_j
        for row in a:
            row[i] -= q * row[j]
        for row in v:
            row[i] -= q * row[j]

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in a:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def row_combine(i, j, w, x, y, z):
        # (row_i, row_j) <- (w*row_i + x*row_j, y*row_i + z*row_j)
        a[i], a[j] = (
            [w * p + x * q for p, q in zip(a[i], a[j])],
            [y * p + z * q for p, q in zip(a[i], a[j])],
        )
        u[i], u[j] = (
            [w * p + x * q for p, q in zip(u[i], u[j])],
            [y * p + z * q for p, q in zip(u[i], u[j])],
        )

    def col_combine(i, j, w, x, y, z):
        # (col_i, col_j) <- (w*col_i + x*col_j, y*col_i + z*col_j)
        for row in a:
            row[i], row[j] = w * row[i] + x * row[j], y * row[i] + z * row[j]
        for row in v:
            row[i], row[j] = w * row[i] + x * row[j], y * row[i] + z * row[j]

    def egcd(p, q):
        # g = s*p + t*q with g > 0 and minimal-size Bezout coefficients
        old_r, r = p, q
        old_s, s = 1, 0
        old_t, tt = 0, 1
        while r:
            quo = old_r // r
            old_r, r = r, old_r - quo * r
            old_s, s = s, old_s - quo * s
            old_t, tt = tt, old_t - quo * tt
        if old_r < 0:
            old_r, old_s, old_t = -old_r, -old_s, -old_t
        return old_r, old_s, old_t

    t = 0
    while t < min(m, n):
        # pivot: smallest magnitude, ties broken by least fill-in weight
        best = None
        for i in range(t, m):
            for j in range(t, n):
                value = abs(a[i][j])
                if not value:
                    continue
                if best is not None and value > best[0]:
                    continue
                weight = max(
                    max((abs(x) for x in a[i][t:]), default=0),
                    max((abs(a[r][j]) for r in range(t, m)), default=0),
                )
                if best is None or (value, weight) < (best[0], best[1]):
                    best = (value, weight, i, j)
        if best is None:
            break
        _, _, bi, bj = best
        if bi != t:
            swap_rows(t, bi)
        if bj != t:
            swap_cols(t, bj)
        # Keep working the same pivot position until its row and column are
        # clear and the pivot divides the whole trailing submatrix.  Each
        # entry is zeroed in one shot by a unimodular 2x2 combine, so the
        # pivot walks down the divisor chain and the loop terminates.
        while True:
            dirty = True
            while dirty:
                dirty = False
                for i in range(t + 1, m):
                    x = a[i][t]
                    if not x:
                        continue
                    p = a[t][t]
                    if x % p == 0:
                        row_op(i, t, x // p)
                    else:
                        g, s, w = egcd(p, x)
                        row_combine(t, i, s, w, -(x // g), p // g)
                for j in range(t + 1, n):
                    x = a[t][j]
                    if not x:
                        continue
                    p = a[t][t]
                    if x % p == 0:
                        col_op(j, t, x // p)
                    else:
                        g, s, w = egcd(p, x)
                        col_combine(t, j, s, w, -(x // g), p // g)
                        dirty = True  # the combine refills column t
                if dirty or any(a[i][t] for i in range(t + 1, m)):
                    dirty = True
            offender = None
            for i in range(t + 1, m):
                for j in range(t + 1, n):
                    if a[i][j] % a[t][t]:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_op(t, offender, -1)  # pull the bad row in, then re-clear
        t += 1
    for i in range(min(m, n)):
        if a[i][i] < 0:
            a[i] = [-x for x in a[i]]
            u[i] = [-x for x in u[i]]
    return u, a, v


def int_kernel(matrix):
    """Basis of the integer right kernel {x in Z^n : A x = 0} (saturated)."""
    m = len(matrix)
    n = len(matrix[0]) if m else 0
    _, d, v = snf(matrix)
    r = sum(1 for i in range(min(m, n)) if d[i][i])
    return [[v[i][j] for i in range(n)] for j in range(r, n)]


def invert_int(matrix):
    """Exact inverse of an integer matrix, as Fraction entries."""
    return invert_field([[Fraction(x) for x in row] for row in matrix])


def is_unimodular(matrix):
    return det_int(matrix) in (1, -1)


# ---- polynomial matrices -------------------------------------------------


def poly_echelon(matrix):
    """Fraction-free row echelon form for MultiPoly entries.

    Returns (rows, pivot_cols). Bareiss two-step divisions keep entries
    polynomial throughout.
    """
    a = [list(row) for row in matrix]
    if not a:
        return a, []
    m, n = len(a), len(a[0])
    vars_ = a[0][0].vars
    prev = MultiPoly.one(vars_)
    pivots = []
    r = 0
    for col in range(n):
        pivot = next((i for i in range(r, m) if a[i][col]), None)
        if pivot is None:
            continue
        if pivot != r:
            a[r], a[pivot] = a[pivot], a[r]
        for i in range(r + 1, m):
            for j in range(col + 1, n):
                num = a[i][j] * a[r][col] - a[i][col] * a[r][j]
                a[i][j] = poly_exact_div(num, prev)
            a[i][col] = MultiPoly.zero(vars_)
        prev = a[r][col]
        pivots.append(col)
        r += 1
        if r == m:
            break
    return a, pivots


def poly_rank(matrix):
    return len(poly_echelon(matrix)[1])


def poly_nullspace(matrix):
    """Kernel basis for a MultiPoly matrix over the rational function field.

    Returns vectors with MultiPoly entries, content-reduced, scaled so the
    first nonzero entry is monic. Basis vectors are indexed by the free
    columns of the echelon form, one per free column.
    """
    if not matrix:
        return []
    ech, pivots = poly_echelon(matrix)
    n = len(matrix[0])
    vars_ = matrix[0][0].vars
    free = [j for j in range(n) if j not in pivots]
    one = FunctionElement(MultiPoly.one(vars_))
    zero = FunctionElement(MultiPoly.zero(vars_))
    basis = []
    for f in free:
        v = [zero] * n
        v[f] = one
        for r in range(len(pivots) - 1, -1, -1):
            p = pivots[r]
            acc = zero
            for j in range(p + 1, n):
                if ech[r][j] and v[j]:
                    acc = acc + FunctionElement(ech[r][j]) * v[j]
            v[p] = -acc / FunctionElement(ech[r][p])
        # clear denominators and strip content
        den = MultiPoly.one(vars_)
        for entry in v:
            g = poly_gcd(den, entry.den)
            den = poly_exact_div(den, g) * entry.den
        polys = [entry.num * poly_exact_div(den, entry.den) for entry in v]
        content = None
        for p_ in polys:
            if not p_:
                continue
            content = p_ if content is None else poly_gcd(content, p_)
            if content.degree() == 0:
                break
        if content is not None and content.degree() > 0:
            polys = [poly_exact_div(p_, content) if p_ else p_ for p_ in polys]
        lead = next((p_ for p_ in polys if p_), None)
        if lead is not None:
            inv = lead.leading_coefficient().inverse()
            polys = [p_ * inv for p_ in polys]
        basis.append(polys)
    return basis
