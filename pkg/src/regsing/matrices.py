"""Exact dense matrices over any of the coefficient rings in this package.

Entries just need field-style operators; the attached ring context supplies
zero/one/coerce.  Everything is immutable: operations return new matrices.
"""

from __future__ import annotations

from .poly import Poly


class Matrix:
    __slots__ = ("nrows", "ncols", "rows", "ring")

    def __init__(self, rows, ring):
        rows = [tuple(ring.coerce(e) for e in r) for r in rows]
        if not rows or not rows[0]:
            raise ValueError("matrices must be non-empty")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        self.rows = tuple(rows)
        self.nrows = len(rows)
        self.ncols = width
        self.ring = ring

    # -- constructors ----------------------------------------------------

    @classmethod
    def identity(cls, n, ring):
        z, o = ring.zero, ring.one
        return cls([[o if i == j else z for j in range(n)] for i in range(n)], ring)

    @classmethod
    def zeros(cls, n, m, ring):
        z = ring.zero
        return cls([[z] * m for _ in range(n)], ring)

    @classmethod
    def from_columns(cls, cols, ring):
        n = len(cols[0])
        return cls([[cols[j][i] for j in range(len(cols))] for i in range(n)], ring)

    @classmethod
    def diagonal(cls, entries, ring):
        z = ring.zero
        n = len(entries)
        return cls([[entries[i] if i == j else z for j in range(n)] for i in range(n)], ring)

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def column(self, j):
        return tuple(r[j] for r in self.rows)

    def columns(self):
        return [self.column(j) for j in range(self.ncols)]

    def is_square(self):
        return self.nrows == self.ncols

    @property
    def n(self):
        if not self.is_square():
            raise ValueError("not square")
        return self.nrows

    def map(self, fn, ring=None):
        return Matrix([[fn(e) for e in r] for r in self.rows], ring or self.ring)

    def transpose(self):
        return Matrix([[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)], self.ring)

    # -- arithmetic -----------------------------------------------------------

    def __add__(self, other):
        self._compat(other)
        return Matrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.ring,
        )

    def __sub__(self, other):
        self._compat(other)
        return Matrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self.rows, other.rows)],
            self.ring,
        )

    def __neg__(self):
        return self.map(lambda e: -e)

    def _compat(self, other):
        if not isinstance(other, Matrix) or other.nrows != self.nrows or other.ncols != self.ncols:
            raise ValueError("incompatible matrix shapes")

    def __mul__(self, other):
        if isinstance(other, Matrix):
            if self.ncols != other.nrows:
                raise ValueError("incompatible shapes for product")
            zero = self.ring.zero
            out = []
            for i in range(self.nrows):
                row = []
                for j in range(other.ncols):
                    acc = zero
                    for k in range(self.ncols):
                        a = self.rows[i][k]
                        if a:
                            b = other.rows[k][j]
                            if b:
                                acc = acc + a * b
                    row.append(acc)
                out.append(row)
            return Matrix(out, self.ring)
        c = self.ring.coerce(other)
        return self.map(lambda e: e * c)

    def __rmul__(self, other):
        c = self.ring.coerce(other)
        return self.map(lambda e: c * e)

    def matvec(self, v):
        zero = self.ring.zero
        out = []
        for i in range(self.nrows):
            acc = zero
            for k, x in enumerate(v):
                a = self.rows[i][k]
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def is_zero(self):
        return not any(any(r) for r in self.rows)

    def trace(self):
        acc = self.ring.zero
        for i in range(self.n):
            acc = acc + self.rows[i][i]
        return acc

    # -- elimination ----------------------------------------------------------

    def det(self):
        """Gaussian elimination with exact division (field entries)."""
        n = self.n
        rows = [list(r) for r in self.rows]
        one = self.ring.one
        det = one
        for col in range(n):
            piv = None
            for i in range(col, n):
                if rows[i][col]:
                    piv = i
                    break
            if piv is None:
                return self.ring.zero
            if piv != col:
                rows[col], rows[piv] = rows[piv], rows[col]
                det = -det
            p = rows[col][col]
            det = det * p
            pinv = one / p
            for i in range(col + 1, n):
                f = rows[i][col]
                if not f:
                    continue
                f = f * pinv
                for j in range(col, n):
                    rows[i][j] = rows[i][j] - f * rows[col][j]
        return det

    def inverse(self):
        n = self.n
        one = self.ring.one
        rows = [list(r) + list(Matrix.identity(n, self.ring).rows[i]) for i, r in enumerate(self.rows)]
        for col in range(n):
            piv = None
            for i in range(col, n):
                if rows[i][col]:
                    piv = i
                    break
            if piv is None:
                raise ZeroDivisionError("matrix is singular")
            rows[col], rows[piv] = rows[piv], rows[col]
            pinv = one / rows[col][col]
            rows[col] = [e * pinv for e in rows[col]]
            for i in range(n):
                if i == col:
                    continue
                f = rows[i][col]
                if not f:
                    continue
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[col])]
        return Matrix([r[n:] for r in rows], self.ring)

    def rref(self):
        """Reduced row echelon form and the list of pivot columns."""
        rows = [list(r) for r in self.rows]
        one = self.ring.one
        pivots = []
        r = 0
        for col in range(self.ncols):
            piv = None
            for i in range(r, self.nrows):
                if rows[i][col]:
                    piv = i
                    break
            if piv is None:
                continue
            rows[r], rows[piv] = rows[piv], rows[r]
            pinv = one / rows[r][col]
            rows[r] = [e * pinv for e in rows[r]]
            for i in range(self.nrows):
                if i != r and rows[i][col]:
                    f = rows[i][col]
                    rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
            pivots.append(col)
            r += 1
            if r == self.nrows:
                break
        return Matrix(rows, self.ring), pivots

    def rank(self):
        return len(self.rref()[1])

    def kernel_basis(self):
        """Columns spanning the right kernel."""
        R, pivots = self.rref()
        free = [j for j in range(self.ncols) if j not in pivots]
        basis = []
        zero, one = self.ring.zero, self.ring.one
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for r, p in enumerate(pivots):
                v[p] = -R.rows[r][f]
            basis.append(tuple(v))
        return basis

    def charpoly(self, var="x"):
        """Monic characteristic polynomial det(x*I - A) by Faddeev-LeVerrier."""
        n = self.n
        ring = self.ring
        one = ring.one
        cs = [one]
        M = Matrix.zeros(n, n, ring)
        I = Matrix.identity(n, ring)
        for k in range(1, n + 1):
            M = self * M + I * cs[-1]
            c = (self * M).trace() * (-(one / ring.coerce(k)))
            cs.append(c)
        coeffs = list(reversed(cs))
        return Poly(coeffs, ring, var)

    def __str__(self):
        return "[" + ",".join("[" + ",".join(str(e) for e in r) + "]" for r in self.rows) + "]"

    def __repr__(self):
        return f"Matrix({self})"
