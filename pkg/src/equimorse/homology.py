"""Independent homology oracle: Smith normal form and field ranks.

This module deliberately shares no linear algebra with the reduction
machinery; it reads boundary matrices through the public complex API and
computes everything from scratch.  Over the integers it produces Betti
numbers and torsion invariant factors from the Smith normal form; over the
rationals or a prime field it produces Betti numbers from field ranks.
"""

from fractions import Fraction

from .errors import EquimorseError, UnsupportedCoefficientsError
from .rings import INT, MOD, RAT


def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _int_mat_mul(A, B):
    if not A or not B:
        return [[] for _ in A]
    cols = len(B[0])
    return [
        [sum(A[i][k] * B[k][j] for k in range(len(B))) for j in range(cols)]
        for i in range(len(A))
    ]


def _bareiss_det(A):
    """Exact integer determinant (fraction-free elimination)."""
    n = len(A)
    if n == 0:
        return 1
    M = [row[:] for row in A]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((r for r in range(k + 1, n) if M[r][k]), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def smith_normal_form(A):
    """(D, row_ops, col_ops) with row_ops * A * col_ops = D, d1 | d2 | ...

    Pivoting picks the smallest nonzero absolute value with lexicographic
    tie-break.  The transform identity is re-checked exactly on every call,
    and the transforms' determinants are checked to be +-1 on matrices small
    enough for exact evaluation to stay cheap.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    for row in A:
        if len(row) != cols:
            raise EquimorseError("ragged matrix")
    M = [[int(v) for v in row] for row in A]
    R = _identity(rows)
    C = _identity(cols)

    def add_row(i, j, q):
        M[i] = [a + q * b for a, b in zip(M[i], M[j])]
        R[i] = [a + q * b for a, b in zip(R[i], R[j])]

    def add_col(i, j, q):
        for r in M:
            r[i] += q * r[j]
        for r in C:
            r[i] += q * r[j]

    t = 0
    while t < min(rows, cols):
        piv = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = abs(M[i][j])
                if v and (piv is None or v < piv[0]):
                    piv = (v, i, j)
        if piv is None:
            break
        _, pi, pj = piv
        if pi != t:
            M[t], M[pi] = M[pi], M[t]
            R[t], R[pi] = R[pi], R[t]
        if pj != t:
            for r in M:
                r[t], r[pj] = r[pj], r[t]
            for r in C:
                r[t], r[pj] = r[pj], r[t]
        dirty = False
        for i in range(t + 1, rows):
            if M[i][t]:
                add_row(i, t, -(M[i][t] // M[t][t]))
                if M[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if M[t][j]:
                add_col(j, t, -(M[t][j] // M[t][t]))
                if M[t][j]:
                    dirty = True
        if dirty:
            continue
        offender = None
        for i in range(t + 1, rows):
            if any(M[i][j] % M[t][t] for j in range(t + 1, cols)):
                offender = i
                break
        if offender is not None:
            add_row(t, offender, 1)
            continue
        if M[t][t] < 0:
            M[t] = [-v for v in M[t]]
            R[t] = [-v for v in R[t]]
        t += 1

    if _int_mat_mul(_int_mat_mul(R, [[int(v) for v in row] for row in A]), C) != M:
        raise EquimorseError("internal: SNF transform identity fails")
    if rows <= 12 and abs(_bareiss_det(R)) != 1:
        raise EquimorseError("internal: SNF row transform is not unimodular")
    if cols <= 12 and abs(_bareiss_det(C)) != 1:
        raise EquimorseError("internal: SNF column transform is not unimodular")
    return M, R, C


def snf_diagonal(A):
    """The invariant-factor diagonal of an integer matrix."""
    D, _, _ = smith_normal_form(A)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0))]


def _rational_rank(A):
    rows = [list(map(Fraction, row)) for row in A]
    rank = 0
    cols = len(A[0]) if A else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        lead = rows[rank][col]
        rows[rank] = [v / lead for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [a - f * b for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def _prime_rank(A, p):
    rows = [[int(v) % p for v in row] for row in A]
    rank = 0
    cols = len(A[0]) if A else 0
    for col in range(cols):
        piv = next((r for r in range(rank, len(rows)) if rows[r][col]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][col], -1, p)
        rows[rank] = [(v * inv) % p for v in rows[rank]]
        for r in range(len(rows)):
            if r != rank and rows[r][col]:
                f = rows[r][col]
                rows[r] = [(a - f * b) % p for a, b in zip(rows[r], rows[rank])]
        rank += 1
    return rank


def is_prime(m):
    if m < 2:
        return False
    d = 2
    while d * d <= m:
        if m % d == 0:
            return False
        d += 1
    return True


def boundary_matrix(C, n):
    """Dense degree-n boundary: rows = basis(n-1), columns = basis(n), raw values."""
    rows = C.basis(n - 1)
    cols = C.basis(n)
    idx = {b: i for i, b in enumerate(rows)}
    A = [[0] * len(cols) for _ in rows]
    for j, b in enumerate(cols):
        for a, coeff in C.boundary(b).terms.items():
            A[idx[a]][j] = coeff.value
    return A


class HomologyProfile:
    """Per-degree Betti numbers and torsion invariant factors."""

    __slots__ = ("ring_token", "data")

    def __init__(self, ring_token, data):
        for n, (betti, torsion) in data.items():
            if betti < 0:
                raise EquimorseError(f"negative Betti number in degree {n}")
            for a, b in zip(torsion, torsion[1:]):
                if b % a:
                    raise EquimorseError(
                        f"torsion {list(torsion)} violates the divisibility chain"
                    )
        self.ring_token = ring_token
        self.data = {n: (betti, tuple(tor)) for n, (betti, tor) in data.items()}

    def degrees(self):
        return sorted(self.data)

    def betti(self, n):
        return self.data.get(n, (0, ()))[0]

    def torsion(self, n):
        return self.data.get(n, (0, ()))[1]

    def __eq__(self, other):
        if not isinstance(other, HomologyProfile):
            return NotImplemented
        degrees = set(self.data) | set(other.data)
        return all(
            self.betti(n) == other.betti(n) and self.torsion(n) == other.torsion(n)
            for n in degrees
        )

    def __repr__(self):
        parts = []
        for n in self.degrees():
            betti, torsion = self.data[n]
            if betti or torsion:
                extra = f" + torsion{list(torsion)}" if torsion else ""
                parts.append(f"H_{n} = rank {betti}{extra}")
        return "HomologyProfile(" + ("; ".join(parts) or "trivial") + ")"

    def to_json(self):
        return {
            str(n): {"betti": b, "torsion": list(tor)}
            for n, (b, tor) in sorted(self.data.items())
        }


def homology(C):
    """Betti numbers (and torsion over the integers) of a valid complex.

    Over Z/m with m composite there is no field structure and no invariant
    factor theory implemented here; such requests are rejected.
    """
    ring = C.ring
    if ring.kind == MOD and not is_prime(ring.modulus):
        raise UnsupportedCoefficientsError(
            f"homology over Z/{ring.modulus} (composite modulus) is not supported"
        )
    mats = {
        n: boundary_matrix(C, n)
        for n in C.degrees()
        if n > C.d_min and C.rank(n) and C.rank(n - 1)
    }
    ranks = {}
    torsions = {}
    for n, A in mats.items():
        if ring.kind == INT:
            diag = snf_diagonal(A)
            nonzero = [abs(d) for d in diag if d]
            ranks[n] = len(nonzero)
            torsions[n - 1] = tuple(d for d in nonzero if d > 1)
        elif ring.kind == RAT:
            ranks[n] = _rational_rank(A)
        else:
            ranks[n] = _prime_rank(A, ring.modulus)
    data = {}
    for n in C.degrees():
        betti = C.rank(n) - ranks.get(n, 0) - ranks.get(n + 1, 0)
        data[n] = (betti, torsions.get(n, ()))
    return HomologyProfile(ring.token(), data)


def compare(C1, C2):
    """(equal, diff): degree-wise equality of the two homology profiles.

    diff is None on success, otherwise a dict naming the lowest disagreeing
    degree with both sides' Betti numbers and torsion.
    """
    if C1.ring != C2.ring:
        raise EquimorseError("cannot compare homology over different rings")
    p1, p2 = homology(C1), homology(C2)
    for n in sorted(set(p1.data) | set(p2.data)):
        if p1.betti(n) != p2.betti(n) or p1.torsion(n) != p2.torsion(n):
            return False, {
                "degree": n,
                "betti": (p1.betti(n), p2.betti(n)),
                "torsion": (list(p1.torsion(n)), list(p2.torsion(n))),
            }
    return True, None
