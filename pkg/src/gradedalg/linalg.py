"""Exact scalars and dense linear algebra over Q and F_p, plus integer
Hermite/Smith normal forms.

Matrices are plain lists of rows.  Over Q entries are ``gmpy2.mpq``; over F_p
they are Python ints in ``range(p)``.  Elimination over F_p is vectorised with
numpy (int64 is safe for p < 2**31).
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import gmpy2
import numpy as np
from gmpy2 import mpq

Matrix = list  # list[list[scalar]]


class SingularMatrixError(ArithmeticError):
    def __init__(self, column: int):
        super().__init__(f"matrix is singular; column {column} depends on earlier columns")
        self.column = column


class Field:
    characteristic: int
    is_finite: bool

    def __call__(self, x):
        raise NotImplementedError

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)


class RationalField(Field):
    characteristic = 0
    is_finite = False

    def __call__(self, x):
        if isinstance(x, tuple):
            return mpq(int(x[0]), int(x[1]))
        if isinstance(x, Fraction):
            return mpq(x.numerator, x.denominator)
        if isinstance(x, str):
            return mpq(Fraction(x).numerator, Fraction(x).denominator)
        return mpq(x)

    def norm(self, x):
        return x

    def inv(self, x):
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return mpq(1) / x

    def pair(self, x) -> tuple[int, int]:
        x = mpq(x)
        return int(x.numerator), int(x.denominator)

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("Q")

    def __repr__(self):
        return "QQ"

    def to_json(self):
        return {"kind": "Q"}


class PrimeField(Field):
    is_finite = True

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = self.characteristic = p

    def __call__(self, x):
        p = self.p
        if isinstance(x, tuple):
            return (int(x[0]) * pow(int(x[1]), -1, p)) % p
        if isinstance(x, (Fraction, type(mpq(0)))):
            return (int(x.numerator) * pow(int(x.denominator), -1, p)) % p
        return int(x) % p

    def norm(self, x):
        return x % self.p

    def inv(self, x):
        x %= self.p
        if x == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def pair(self, x) -> tuple[int, int]:
        return int(x), 1

    def elements(self):
        return range(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("F", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def to_json(self):
        return {"kind": "Fp", "p": self.p}


QQ = RationalField()


def GF(p: int) -> PrimeField:
    return PrimeField(p)


def field_from_json(data) -> Field:
    if isinstance(data, str):
        if data == "Q":
            return QQ
        if data.startswith("F"):
            return GF(int(data[1:]))
        raise ValueError(f"unknown field {data!r}")
    if data.get("kind") == "Q":
        return QQ
    return GF(int(data["p"]))


# ---------------------------------------------------------------- elimination

def _rref_mod_p(rows, ncols: int, p: int):
    if not rows:
        return [], []
    m = np.array(rows, dtype=np.int64).reshape(len(rows), ncols) % p
    pivots = []
    r = 0
    nrows = m.shape[0]
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(m[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + nz[0]
        if k != r:
            m[[r, k]] = m[[k, r]]
        m[r] = (m[r] * pow(int(m[r, c]), -1, p)) % p
        col = m[:, c].copy()
        col[r] = 0
        nzr = np.nonzero(col)[0]
        if nzr.size:
            m[nzr] = (m[nzr] - np.outer(col[nzr], m[r])) % p
        pivots.append(c)
        r += 1
    return m[:r].tolist(), pivots


def _rref_generic(F: Field, rows, ncols: int):
    m = [[F(x) for x in r] for r in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        k = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if k is None:
            continue
        m[r], m[k] = m[k], m[r]
        inv = F.inv(m[r][c])
        row = [F.norm(x * inv) for x in m[r]]
        m[r] = row
        nzcols = [j for j in range(c, ncols) if row[j] != 0]
        for i in range(len(m)):
            if i != r:
                f = m[i][c]
                if f != 0:
                    mi = m[i]
                    for j in nzcols:
                        mi[j] = F.norm(mi[j] - f * row[j])
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rref(F: Field, rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form; returns ``(nonzero_rows, pivot_columns)``."""
    rows = list(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if isinstance(F, PrimeField) and F.p < 2**31:
        return _rref_mod_p(rows, ncols, F.p)
    return _rref_generic(F, rows, ncols)


def rank(F: Field, m: Matrix, ncols: int | None = None) -> int:
    return len(rref(F, m, ncols)[1])


def transpose(m: Matrix) -> Matrix:
    return [list(r) for r in zip(*m)]


def matmul(F: Field, a: Matrix, b: Matrix) -> Matrix:
    if isinstance(F, PrimeField) and F.p < 2**31 and a and b:
        # split to keep int64 products below overflow
        p = F.p
        A = np.array(a, dtype=object if p > 3_000_000 else np.int64)
        B = np.array(b, dtype=object if p > 3_000_000 else np.int64)
        return ((A @ B) % p).tolist()
    bt = transpose(b)
    return [[F.norm(sum((x * y for x, y in zip(row, col) if x != 0), F.zero)) for col in bt] for row in a]


def matvec(F: Field, a: Matrix, v: Sequence) -> list:
    return [F.norm(sum((x * y for x, y in zip(row, v) if x != 0), F.zero)) for row in a]


def identity(F: Field, n: int) -> Matrix:
    return [[F.one if i == j else F.zero for j in range(n)] for i in range(n)]


def kernel_basis(F: Field, m: Matrix, ncols: int | None = None) -> list[list]:
    """Basis of ``{v : m v = 0}``."""
    if ncols is None:
        ncols = len(m[0]) if m else 0
    red, piv = rref(F, m, ncols)
    free = [j for j in range(ncols) if j not in set(piv)]
    basis = []
    for fj in free:
        v = [F.zero] * ncols
        v[fj] = F.one
        for row, pc in zip(red, piv):
            v[pc] = F.norm(-row[fj])
        basis.append(v)
    return basis


def solve(F: Field, m: Matrix, b: Sequence):
    """One solution of ``m x = b`` or ``None`` when inconsistent."""
    ncols = len(m[0]) if m else 0
    aug = [list(row) + [bi] for row, bi in zip(m, b)]
    red, piv = rref(F, aug, ncols + 1)
    if ncols in piv:
        return None
    x = [F.zero] * ncols
    for row, pc in zip(red, piv):
        x[pc] = row[ncols]
    return x


def inverse(F: Field, m: Matrix) -> Matrix:
    n = len(m)
    aug = [list(row) + [F.one if i == j else F.zero for j in range(n)] for i, row in enumerate(m)]
    red, piv = rref(F, aug, 2 * n)
    for k in range(n):
        if k >= len(piv) or piv[k] != k:
            raise SingularMatrixError(k)
    return [row[n:] for row in red]


def det(F: Field, m: Matrix):
    n = len(m)
    a = [list(r) for r in m]
    d = F.one
    for c in range(n):
        k = next((i for i in range(c, n) if a[i][c] != 0), None)
        if k is None:
            return F.zero
        if k != c:
            a[c], a[k] = a[k], a[c]
            d = F.norm(-d)
        d = F.norm(d * a[c][c])
        inv = F.inv(a[c][c])
        for i in range(c + 1, n):
            f = F.norm(a[i][c] * inv)
            if f != 0:
                a[i] = [F.norm(x - f * y) for x, y in zip(a[i], a[c])]
    return d


class Subspace:
    """A subspace of F^n held in reduced row echelon form."""

    def __init__(self, F: Field, n: int, vectors: Iterable[Sequence] = ()):
        self.F = F
        self.n = n
        self.basis, self.pivots = rref(F, [list(v) for v in vectors], n)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def reduce(self, v: Sequence) -> list:
        F = self.F
        v = list(v)
        for row, pc in zip(self.basis, self.pivots):
            f = v[pc]
            if f != 0:
                v = [F.norm(a - f * b) for a, b in zip(v, row)]
        return v

    def __contains__(self, v) -> bool:
        return not any(x != 0 for x in self.reduce(v))

    contains = __contains__

    def coordinates(self, v: Sequence):
        """Coefficients of ``v`` on ``self.basis``; ``None`` if ``v`` is outside."""
        if v not in self:
            return None
        return [v[pc] for pc in self.pivots]

    def add(self, vectors: Iterable[Sequence]) -> "Subspace":
        return Subspace(self.F, self.n, list(self.basis) + [list(v) for v in vectors])

    def intersect(self, other: "Subspace") -> "Subspace":
        # solve sum a_i u_i = sum b_j w_j
        F = self.F
        if not self.basis or not other.basis:
            return Subspace(F, self.n)
        cols = [list(u) for u in self.basis] + [[F.norm(-x) for x in w] for w in other.basis]
        ker = kernel_basis(F, transpose(cols), len(cols))
        vecs = []
        for k in ker:
            v = [F.zero] * self.n
            for a, u in zip(k[: self.dim], self.basis):
                if a != 0:
                    v = [F.norm(x + a * y) for x, y in zip(v, u)]
            vecs.append(v)
        return Subspace(F, self.n, vecs)

    def restrict_to_coordinates(self, coords: Sequence[int]) -> "Subspace":
        """Intersection with the coordinate subspace spanned by ``coords``."""
        F = self.F
        keep = set(coords)
        gens = []
        for i in coords:
            e = [F.zero] * self.n
            e[i] = F.one
            gens.append(e)
        return self.intersect(Subspace(F, self.n, gens)) if keep else Subspace(F, self.n)

    def __eq__(self, other):
        return isinstance(other, Subspace) and self.n == other.n and self.basis == other.basis

    def issubspace(self, other: "Subspace") -> bool:
        return all(v in other for v in self.basis)

    def __repr__(self):
        return f"Subspace(dim={self.dim} in {self.F}^{self.n})"


# ------------------------------------------------------------ integer forms

def hermite_normal_form(rows: Sequence[Sequence[int]], ncols: int) -> list[list[int]]:
    """Row-style HNF: upper triangular, positive pivots, entries above a pivot
    reduced into ``[0, pivot)``.  Zero rows are dropped."""
    m = [list(map(int, r)) for r in rows if any(r)]
    out = []
    r = 0
    for c in range(ncols):
        # gcd-reduce column c among rows r..end
        while True:
            nz = [i for i in range(r, len(m)) if m[i][c] != 0]
            if not nz:
                break
            k = min(nz, key=lambda i: abs(m[i][c]))
            m[r], m[k] = m[k], m[r]
            if m[r][c] < 0:
                m[r] = [-x for x in m[r]]
            done = True
            for i in range(r + 1, len(m)):
                if m[i][c]:
                    q = m[i][c] // m[r][c]
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
                    if m[i][c]:
                        done = False
            if done:
                break
        if r < len(m) and m[r][c] != 0:
            for i in range(r):
                q = m[i][c] // m[r][c]
                if q:
                    m[i] = [a - q * b for a, b in zip(m[i], m[r])]
            r += 1
    out = [row for row in m[:r]]
    return out


def _imat_mul(a, b):
    bt = list(zip(*b))
    return [[sum(x * y for x, y in zip(row, col)) for col in bt] for row in a]


def smith_normal_form(m: Sequence[Sequence[int]], ncols: int | None = None):
    """Return ``(U, D, V)`` with ``U m V = D``, U and V unimodular and the
    diagonal of D a non-negative divisibility chain."""
    m = [list(map(int, r)) for r in m]
    nr = len(m)
    nc = ncols if ncols is not None else (len(m[0]) if m else 0)
    D = [row[:] for row in m]
    U = [[int(i == j) for j in range(nr)] for i in range(nr)]
    V = [[int(i == j) for j in range(nc)] for i in range(nc)]

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for row in D:
            row[i], row[j] = row[j], row[i]
        for row in V:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, q):  # row_dst -= q row_src
        D[dst] = [a - q * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a - q * b for a, b in zip(U[dst], U[src])]

    def add_col(src, dst, q):  # col_dst -= q col_src
        for row in D:
            row[dst] -= q * row[src]
        for row in V:
            row[dst] -= q * row[src]

    t = 0
    while t < min(nr, nc):
        entries = [(abs(D[i][j]), i, j) for i in range(t, nr) for j in range(t, nc) if D[i][j]]
        if not entries:
            break
        _, i, j = min(entries)
        swap_rows(t, i)
        swap_cols(t, j)
        while True:
            clean = True
            for i in range(t + 1, nr):
                if D[i][t]:
                    add_row(t, i, D[i][t] // D[t][t])
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, nc):
                if D[t][j]:
                    add_col(t, j, D[t][j] // D[t][t])
                    if D[t][j]:
                        clean = False
            if clean:
                # divisibility: fold in any entry not divisible by the pivot
                bad = next(((i, j) for i in range(t + 1, nr) for j in range(t + 1, nc)
                            if D[i][j] % D[t][t]), None)
                if bad is None:
                    break
                add_row(bad[0], t, -1)
                continue
            _, i, j = min((abs(D[i][j]), i, j) for i in range(t, nr) for j in range(t, nc)
                          if D[i][j] and (i == t or j == t))
            swap_rows(t, i)
            swap_cols(t, j)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            U[t] = [-x for x in U[t]]
        t += 1
    return U, D, V


def invariant_factors(m: Sequence[Sequence[int]], ncols: int | None = None) -> list[int]:
    _, D, _ = smith_normal_form(m, ncols)
    return [D[i][i] for i in range(min(len(D), len(D[0]) if D else 0)) if D[i][i]]


def int_det(m: Sequence[Sequence[int]]) -> int:
    return int(det(QQ, [[mpq(x) for x in r] for r in m])) if m else 1


def integer_solve(m: Sequence[Sequence[int]], b: Sequence[int]):
    """An integer solution of ``m x = b`` or ``None``."""
    nr = len(m)
    nc = len(m[0]) if m else 0
    U, D, V = smith_normal_form(m, nc)
    c = [sum(u * x for u, x in zip(row, b)) for row in U]
    y = [0] * nc
    for i in range(nr):
        d = D[i][i] if i < nc else 0
        if d == 0:
            if c[i] != 0:
                return None
        else:
            if c[i] % d:
                return None
            y[i] = c[i] // d
    return [sum(V[i][j] * y[j] for j in range(nc)) for i in range(nc)]
