"""Exact linear algebra over finite fields, Q and Z."""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd

__all__ = [
    "ff_rref",
    "ff_nullspace",
    "ff_rank",
    "q_rref",
    "q_nullspace",
    "q_rank",
    "q_solve",
    "q_det",
    "int_kernel",
    "row_hnf",
    "smith_form",
    "smith_diagonal_oracle",
    "lattice_index",
]


# -- finite fields (codes with an explicit FiniteField) -----------------------------------


def ff_rref(K, rows):
    """Reduced row echelon form over K; returns (rows, pivot columns)."""
    M = [list(r) for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c]), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = K.inv(M[r][c])
        M[r] = [K.mul(inv, x) for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c]:
                f = M[i][c]
                M[i] = [K.sub(x, K.mul(f, y)) for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def ff_rank(K, rows) -> int:
    return len(ff_rref(K, rows)[1])


def ff_nullspace(K, rows, ncols=None):
    """Basis of {x : M x = 0} over K (columns of M indexed by x)."""
    if not rows:
        n = ncols or 0
        return [[1 if i == j else 0 for i in range(n)] for j in range(n)]
    R, piv = ff_rref(K, rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    basis = []
    for f in free:
        v = [0] * n
        v[f] = 1
        for i, pc in enumerate(piv):
            v[pc] = K.neg(R[i][f])
        basis.append(v)
    return basis


# -- rationals ---------------------------------------------------------------------------


def q_rref(rows):
    M = [[Fraction(x) for x in r] for r in rows]
    if not M:
        return M, []
    ncols = len(M[0])
    pivots = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        inv = 1 / M[r][c]
        M[r] = [x * inv for x in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def q_rank(rows) -> int:
    return len(q_rref(rows)[1]) if rows else 0


def q_nullspace(rows, ncols=None):
    if not rows:
        n = ncols or 0
        return [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    R, piv = q_rref(rows)
    n = len(rows[0])
    free = [c for c in range(n) if c not in piv]
    out = []
    for f in free:
        v = [Fraction(0)] * n
        v[f] = Fraction(1)
        for i, pc in enumerate(piv):
            v[pc] = -R[i][f]
        out.append(v)
    return out


def q_solve(A, b):
    """One solution x of A x = b over Q, or None if inconsistent."""
    n = len(A[0])
    aug = [list(r) + [bi] for r, bi in zip(A, b)]
    R, piv = q_rref(aug)
    if n in piv:
        return None
    x = [Fraction(0)] * n
    for i, pc in enumerate(piv):
        x[pc] = R[i][n]
    return x


def q_det(M) -> Fraction:
    M = [[Fraction(x) for x in r] for r in M]
    n = len(M)
    det = Fraction(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if M[i][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        for i in range(c + 1, n):
            if M[i][c] != 0:
                f = M[i][c] / M[c][c]
                M[i] = [x - f * y for x, y in zip(M[i], M[c])]
    return det


# -- integers ----------------------------------------------------------------------------


def int_kernel(rows, ncols=None):
    """Saturated Z-basis of {x in Z^n : M x = 0}.

    Column-reduces M with a unimodular transform U (M U = H); columns of U under
    the zero columns of H span the kernel, and unimodularity makes it saturated.
    """
    n = len(rows[0]) if rows else ncols
    M = [list(map(int, r)) for r in rows]
    m = len(M)
    # work on columns: cols[j] = (column j of M, column j of U)
    cols = [([M[i][j] for i in range(m)], [int(i == j) for i in range(n)]) for j in range(n)]
    r = 0
    for i in range(m):
        active = [j for j in range(r, n) if cols[j][0][i] != 0]
        while len(active) > 1:
            active.sort(key=lambda j: abs(cols[j][0][i]))
            p = active[0]
            a = cols[p][0][i]
            for j in active[1:]:
                f = cols[j][0][i] // a
                if f:
                    cj, uj = cols[j]
                    cp, up = cols[p]
                    cols[j] = ([x - f * y for x, y in zip(cj, cp)], [x - f * y for x, y in zip(uj, up)])
            active = [j for j in range(r, n) if cols[j][0][i] != 0]
        if active:
            j = active[0]
            cols[r], cols[j] = cols[j], cols[r]
            r += 1
    basis = [cols[j][1] for j in range(r, n)]
    return _lll_lite(basis)


def _lll_lite(basis):
    """Cheap size reduction so kernel vectors stay small (keeps the lattice)."""
    B = [list(v) for v in basis]
    changed = True
    while changed:
        changed = False
        for i in range(len(B)):
            for j in range(len(B)):
                if i == j:
                    continue
                nj = sum(x * x for x in B[j])
                if not nj:
                    continue
                dot = sum(x * y for x, y in zip(B[i], B[j]))
                f = round(Fraction(dot, nj))
                if f:
                    cand = [x - f * y for x, y in zip(B[i], B[j])]
                    if sum(x * x for x in cand) < sum(x * x for x in B[i]):
                        B[i] = cand
                        changed = True
    return B


def row_hnf(rows):
    """Hermite normal form of the Z-row-span: nonzero rows, pivots positive, above-pivot reduced."""
    M = [list(map(int, r)) for r in rows if any(r)]
    if not M:
        return []
    n = len(M[0])
    r = 0
    for c in range(n):
        while True:
            nz = [i for i in range(r, len(M)) if M[i][c] != 0]
            if not nz:
                break
            p = min(nz, key=lambda i: abs(M[i][c]))
            M[r], M[p] = M[p], M[r]
            done = True
            for i in range(r + 1, len(M)):
                if M[i][c]:
                    f = M[i][c] // M[r][c]
                    M[i] = [x - f * y for x, y in zip(M[i], M[r])]
                    if M[i][c]:
                        done = False
            if done:
                break
        if r < len(M) and M[r][c] != 0:
            if M[r][c] < 0:
                M[r] = [-x for x in M[r]]
            for i in range(r):
                f = M[i][c] // M[r][c]
                if f:
                    M[i] = [x - f * y for x, y in zip(M[i], M[r])]
            r += 1
            if r == len(M):
                break
    return [row for row in M[:r]]


def smith_form(rows):
    """Smith normal form diagonal (d_1 | d_2 | ...), nonzero invariants only."""
    M = [list(map(int, r)) for r in rows if any(r)]
    if not M:
        return []
    m, n = len(M), len(M[0])

    def move_min(t):
        cands = [(abs(M[i][j]), i, j) for i in range(t, m) for j in range(t, n) if M[i][j]]
        if not cands:
            return False
        _, i, j = min(cands)
        M[t], M[i] = M[i], M[t]
        for row in M:
            row[t], row[j] = row[j], row[t]
        return True

    diag = []
    for t in range(min(m, n)):
        if not move_min(t):
            break
        while True:
            a = M[t][t]
            for i in range(t + 1, m):
                f = M[i][t] // a
                if f:
                    M[i] = [x - f * y for x, y in zip(M[i], M[t])]
            for j in range(t + 1, n):
                f = M[t][j] // a
                if f:
                    for row in M:
                        row[j] -= f * row[t]
            left = any(M[i][t] for i in range(t + 1, m)) or any(M[t][j] for j in range(t + 1, n))
            if not left:
                bad = next((i for i in range(t + 1, m) for j in range(t + 1, n) if M[i][j] % a), None)
                if bad is None:
                    break
                M[t] = [x + y for x, y in zip(M[t], M[bad])]
            # smallest entry of row/column t becomes the new pivot
            cands = [(abs(M[i][t]), i, 0) for i in range(t, m) if M[i][t]]
            cands += [(abs(M[t][j]), j, 1) for j in range(t, n) if M[t][j]]
            _, k, kind = min(cands)
            if kind == 0:
                M[t], M[k] = M[k], M[t]
            else:
                for row in M:
                    row[t], row[k] = row[k], row[t]
        diag.append(abs(M[t][t]))
    return diag


def smith_diagonal_oracle(rows):
    """Invariant factors via determinantal divisors d_k = gcd of k-minors (small matrices only)."""
    M = [list(map(int, r)) for r in rows]
    m, n = len(M), len(M[0]) if M else 0
    dets = [1]
    for k in range(1, min(m, n) + 1):
        g = 0
        for rs in combinations(range(m), k):
            for cs in combinations(range(n), k):
                g = gcd(g, int(q_det([[M[i][j] for j in cs] for i in rs])))
                if g == 1:
                    break
            if g == 1:
                break
        if g == 0:
            break
        dets.append(g)
    return [dets[k] // dets[k - 1] for k in range(1, len(dets))]


def lattice_index(sub_rows, full_rows):
    """[L : S] for Z-lattices S <= L given by spanning rows; None if ranks differ."""
    L = row_hnf(full_rows)
    S = row_hnf(sub_rows)
    if len(S) != len(L):
        return None
    # coordinates of S in the basis L, then |det|
    coords = []
    LT = [list(col) for col in zip(*L)]
    for s in S:
        x = q_solve(LT, s)
        if x is None or any(v.denominator != 1 for v in x):
            raise ValueError("sublattice not contained in lattice")
        coords.append([int(v) for v in x])
    d = 1
    for v in smith_form(coords):
        d *= v
    return d
