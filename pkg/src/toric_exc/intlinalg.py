"""Exact integer linear algebra on lists of Python ints.

Matrices are ``list[list[int]]`` (row major). Nothing here goes through
floating point; arbitrary precision is inherited from ``int``.
"""
from fractions import Fraction

__all__ = [
    "identity",
    "matmul",
    "matvec",
    "transpose",
    "det",
    "inverse",
    "unimodular_inverse",
    "smith_normal_form",
    "invariant_factors",
    "sparse_invariant_factors",
    "integer_nullvector",
]


def identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def transpose(A):
    return [list(col) for col in zip(*A)]


def matmul(A, B):
    Bt = transpose(B)
    return [[sum(x * y for x, y in zip(row, col)) for col in Bt] for row in A]


def matvec(A, v):
    return [sum(x * y for x, y in zip(row, v)) for row in A]


def det(A):
    """Determinant by fraction-free Bareiss elimination."""
    n = len(A)
    if n == 0:
        return 1
    M = [list(map(int, row)) for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            for i in range(k + 1, n):
                if M[i][k] != 0:
                    M[k], M[i] = M[i], M[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def inverse(A):
    """Exact inverse over the rationals; raises ``ValueError`` if singular."""
    n = len(A)
    M = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(A)]
    for c in range(n):
        piv = next((r for r in range(c, n) if M[r][c] != 0), None)
        if piv is None:
            raise ValueError("singular matrix")
        M[c], M[piv] = M[piv], M[c]
        p = M[c][c]
        M[c] = [x / p for x in M[c]]
        for r in range(n):
            if r != c and M[r][c] != 0:
                f = M[r][c]
                M[r] = [x - f * y for x, y in zip(M[r], M[c])]
    return [row[n:] for row in M]


def unimodular_inverse(A):
    """Integer inverse of a matrix with determinant +-1."""
    inv = inverse(A)
    out = []
    for row in inv:
        if any(x.denominator != 1 for x in row):
            raise ValueError("matrix is not unimodular")
        out.append([int(x) for x in row])
    return out


def _row_op(M, src, dst, q):
    # row[dst] -= q * row[src]
    if q:
        rs, rd = M[src], M[dst]
        for j in range(len(rd)):
            rd[j] -= q * rs[j]


def _col_op(M, src, dst, q):
    if q:
        for row in M:
            row[dst] -= q * row[src]


def smith_normal_form(A):
    """Smith normal form with transforms.

    Returns ``(D, U, V)`` with ``U @ A @ V == D``, ``U`` and ``V`` unimodular,
    ``D`` diagonal with nonnegative entries, each dividing the next.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [list(map(int, row)) for row in A]
    U = identity(m)
    V = identity(n)
    t = 0
    while t < min(m, n):
        entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n) if D[i][j]]
        if not entries:
            break
        _, pi, pj = min(entries)
        D[t], D[pi] = D[pi], D[t]
        U[t], U[pi] = U[pi], U[t]
        for row in D:
            row[t], row[pj] = row[pj], row[t]
        for row in V:
            row[t], row[pj] = row[pj], row[t]
        while True:
            piv = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // piv
                    _row_op(D, t, i, q)
                    _row_op(U, t, i, q)
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // piv
                    _col_op(D, t, j, q)
                    _col_op(V, t, j, q)
                    if D[t][j]:
                        dirty = True
            if not dirty:
                bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                            if D[i][j] % piv), None)
                if bad is None:
                    break
                # pull a non-divisible row into row t, then retry
                _row_op(D, bad[0], t, -1)
                _row_op(U, bad[0], t, -1)
                continue
            entries = [(abs(D[i][j]), i, j) for i in range(t, m) for j in range(t, n)
                       if D[i][j] and (i == t or j == t)]
            _, pi, pj = min(entries)
            if pi != t:
                D[t], D[pi] = D[pi], D[t]
                U[t], U[pi] = U[pi], U[t]
            if pj != t:
                for row in D:
                    row[t], row[pj] = row[pj], row[t]
                for row in V:
                    row[t], row[pj] = row[pj], row[t]
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return D, U, V


def invariant_factors(A):
    """Nonzero diagonal entries of the Smith normal form of a dense matrix."""
    if not A or not A[0]:
        return []
    D, _, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]))) if D[i][i]]


def sparse_invariant_factors(rows, ncols):
    """Invariant factors of a sparse integer matrix.

    ``rows`` is a list of ``{column: value}`` dicts. Unit pivots are
    eliminated first (each contributes a factor 1); whatever survives is
    handed to the dense Smith normal form.
    """
    rows = {i: dict(r) for i, r in enumerate(rows) if r}
    cols = {}
    for i, r in rows.items():
        for j in r:
            cols.setdefault(j, set()).add(i)
    units = 0
    while True:
        best = None
        for i, r in rows.items():
            for j, v in r.items():
                if v == 1 or v == -1:
                    cost = (len(r) - 1) * (len(cols[j]) - 1)
                    if best is None or cost < best[0]:
                        best = (cost, i, j)
                    break
            if best is not None and best[0] == 0:
                break
        if best is None:
            break
        _, pi, pj = best
        prow = rows.pop(pi)
        pv = prow[pj]
        for j in prow:
            cols[j].discard(pi)
        for i in list(cols[pj]):
            r = rows[i]
            q = r[pj] * pv  # pv is +-1, so r[pj]/pv == r[pj]*pv
            for j, v in prow.items():
                nv = r.get(j, 0) - q * v
                if nv:
                    if j not in r:
                        cols[j].add(i)
                    r[j] = nv
                elif j in r:
                    del r[j]
                    cols[j].discard(i)
            if not r:
                del rows[i]
        del cols[pj]
        units += 1
    factors = [1] * units
    if rows:
        used = sorted({j for r in rows.values() for j in r})
        pos = {j: k for k, j in enumerate(used)}
        dense = []
        for r in rows.values():
            row = [0] * len(used)
            for j, v in r.items():
                row[pos[j]] = v
            dense.append(row)
        factors.extend(invariant_factors(dense))
    return sorted(factors)


def integer_nullvector(A):
    """Primitive integer generator of the kernel of an ``(s-1) x s`` matrix of rank ``s-1``.

    Returns ``None`` when the rank is deficient. The generator is given by the
    signed maximal minors.
    """
    s = len(A[0]) if A else 1
    if len(A) != s - 1:
        raise ValueError("expected an (s-1) x s matrix")
    vec = []
    for j in range(s):
        minor = [row[:j] + row[j + 1:] for row in A]
        vec.append((-1) ** j * det(minor))
    g = 0
    for x in vec:
        g = _gcd(g, x)
    if g == 0:
        return None
    return [x // g for x in vec]


def _gcd(a, b):
    a, b = abs(a), abs(b)
    while b:
        a, b = b, a % b
    return a
