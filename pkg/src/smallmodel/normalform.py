"""Integer and mod-p matrix normal forms.

Sparse elimination over Z (Smith invariant factors) and over F_p (rank).
Matrices are given as lists of sparse columns, {row_index: coefficient}.
All arithmetic is exact; a configurable bit bound aborts loudly if
intermediate entries explode instead of silently producing garbage.
"""

from __future__ import annotations

from math import gcd

DEFAULT_BIT_BOUND = 4096


class PivotExplosion(RuntimeError):
    """An intermediate Smith-reduction entry exceeded the bit bound."""


def _round_div(a: int, v: int) -> int:
    # quotient minimizing |a - q*v|
    q, r = divmod(a, v)
    # divmod's remainder has the sign of v, so shrinking |r| always
    # means stepping q up by one, regardless of sign(v)
    if 2 * abs(r) > abs(v):
        q += 1
    return q


class _Sparse:
    """Mutable sparse integer matrix with row and column indexes."""

    def __init__(self, columns, bit_bound):
        self.cols = {}
        self.rows = {}
        self.bit_bound = bit_bound
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    self._set(i, j, v)

    def _set(self, i, j, v):
        if v:
            if abs(v).bit_length() > self.bit_bound:
                raise PivotExplosion(
                    f"entry at ({i},{j}) exceeds {self.bit_bound} bits"
                )
            self.rows.setdefault(i, {})[j] = v
            self.cols.setdefault(j, {})[i] = v
        else:
            row = self.rows.get(i)
            if row and j in row:
                del row[j]
                if not row:
                    del self.rows[i]
                del self.cols[j][i]
                if not self.cols[j]:
                    del self.cols[j]

    def get(self, i, j):
        return self.rows.get(i, {}).get(j, 0)

    def row_op(self, dst, src, q):
        # row[dst] -= q * row[src]
        for j, v in list(self.rows.get(src, {}).items()):
            self._set(dst, j, self.get(dst, j) - q * v)

    def col_op(self, dst, src, q):
        # col[dst] -= q * col[src]
        for i, v in list(self.cols.get(src, {}).items()):
            self._set(i, dst, self.get(i, dst) - q * v)

    def min_entry(self):
        best = None
        for i, row in self.rows.items():
            for j, v in row.items():
                a = abs(v)
                if a == 1:
                    return i, j, v
                if best is None or a < best[0]:
                    best = (a, i, j, v)
        if best is None:
            return None
        return best[1], best[2], best[3]

    def drop_cross(self, i, j):
        for jj in list(self.rows.get(i, {})):
            self._set(i, jj, 0)
        for ii in list(self.cols.get(j, {})):
            self._set(ii, j, 0)


def invariant_factors(columns, bit_bound: int = DEFAULT_BIT_BOUND) -> list[int]:
    """Nonzero Smith invariant factors (positive, divisibility-ordered).

    ``columns`` is a list of sparse columns {row: int}. The number of
    factors equals the rank of the matrix over Q.
    """
    mat = _Sparse(columns, bit_bound)
    factors = []
    while True:
        entry = mat.min_entry()
        if entry is None:
            break
        i0, j0, v = entry
        while True:
            # clear the pivot column with row operations
            changed = True
            while changed:
                changed = False
                for i in list(mat.cols.get(j0, {})):
                    if i == i0:
                        continue
                    q = _round_div(mat.get(i, j0), v)
                    if q:
                        mat.row_op(i, i0, q)
                        changed = True
                    if mat.get(i, j0):
                        # remainder became the smaller pivot
                        i0, v = i, mat.get(i, j0)
                        changed = True
                # clear the pivot row with column operations
                for j in list(mat.rows.get(i0, {})):
                    if j == j0:
                        continue
                    q = _round_div(mat.get(i0, j), v)
                    if q:
                        mat.col_op(j, j0, q)
                        changed = True
                    if mat.get(i0, j):
                        j0, v = j, mat.get(i0, j)
                        changed = True
            # pivot is isolated; enforce that it divides the rest
            offender = None
            for i, row in mat.rows.items():
                if i == i0:
                    continue
                for j, w in row.items():
                    if w % v:
                        offender = i
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            mat.row_op(i0, offender, -1)
        factors.append(abs(v))
        mat.drop_cross(i0, j0)
    # safety: normalize the divisibility chain
    factors.sort()
    for a in range(len(factors)):
        for b in range(a + 1, len(factors)):
            if factors[b] % factors[a]:
                g = gcd(factors[a], factors[b])
                factors[a], factors[b] = g, factors[a] * factors[b] // g
    return factors


def rank_mod_p(columns, p: int) -> int:
    """Rank over F_p of a sparse column matrix."""
    pivots = {}  # pivot row -> reduced column {row: value mod p}
    rank = 0
    for col in columns:
        work = {i: v % p for i, v in col.items() if v % p}
        while work:
            lead = max(work)
            if lead not in pivots:
                break
            factor = work[lead]
            for i, v in pivots[lead].items():
                work[i] = (work.get(i, 0) - factor * v) % p
            work = {i: v for i, v in work.items() if v}
        if work:
            prow = max(work)
            inv = pow(work[prow], p - 2, p)
            normal = {i: (v * inv) % p for i, v in work.items()}
            pivots[prow] = normal
            rank += 1
    return rank
