"""Exact linear algebra over Q, or over a large prime field for fast re-checks.

Vectors are rows.  A Subspace stores the unique reduced row echelon basis of
its row span, so two subspaces are equal as sets exactly when their stored
bases compare equal.  Rational elimination is fraction-free (Bareiss) on
integer-scaled rows, with a final normalization pass to RREF; prime-field
elimination is ordinary Gauss-Jordan.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd


# -- scalar fields -------------------------------------------------------------

class RationalField:
    """The exact rationals; elements are fractions.Fraction."""

    zero = Fraction(0)
    one = Fraction(1)
    is_rational = True

    def of(self, x):
        if isinstance(x, Fraction):
            return x
        if isinstance(x, int):
            return Fraction(x)
        if isinstance(x, str):
            return Fraction(x)
        raise TypeError(f"cannot coerce {x!r} into Q")

    def __repr__(self):
        return "QQ"


QQ = RationalField()

_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def _is_probable_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in _MR_BASES:
        if p % q == 0:
            return p == q
    d, s = p - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, p)
        if x in (1, p - 1):
            continue
        for _ in range(s - 1):
            x = x * x % p
            if x == p - 1:
                break
        else:
            return False
    return True


class Mod:
    """Element of Z/p; arithmetic also accepts plain ints."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _lift(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other.v
        if isinstance(other, int):
            return other % self.p
        return NotImplemented

    def __add__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else Mod(self.v + w, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else Mod(self.v - w, self.p)

    def __rsub__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else Mod(w - self.v, self.p)

    def __mul__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else Mod(self.v * w, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        w = self._lift(other)
        if w is NotImplemented:
            return NotImplemented
        if w == 0:
            raise ZeroDivisionError("division by zero in prime field")
        return Mod(self.v * pow(w, self.p - 2, self.p), self.p)

    def __pow__(self, e: int):
        if not isinstance(e, int) or e < 0:
            return NotImplemented
        return Mod(pow(self.v, e, self.p), self.p)

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __bool__(self):
        return self.v != 0

    def __eq__(self, other):
        w = self._lift(other)
        return NotImplemented if w is NotImplemented else self.v == w

    def __hash__(self):
        return hash((self.v, self.p))

    def __repr__(self):
        return f"{self.v} (mod {self.p})"


class PrimeField:
    """Z/p for a configured prime p > 2^20 (verdicts over Z/p are probabilistic)."""

    is_rational = False

    def __init__(self, p: int):
        if p <= 1 << 20:
            raise ValueError(f"modulus must exceed 2^20, got {p}")
        if not _is_probable_prime(p):
            raise ValueError(f"modulus {p} is not prime")
        self.p = p
        self.zero = Mod(0, p)
        self.one = Mod(1, p)

    def of(self, x):
        if isinstance(x, Mod):
            if x.p != self.p:
                raise ValueError("mixed moduli")
            return x
        if isinstance(x, int):
            return Mod(x, self.p)
        if isinstance(x, Fraction):
            return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)
        if isinstance(x, str):
            return self.of(Fraction(x))
        raise TypeError(f"cannot coerce {x!r} into GF({self.p})")

    def __repr__(self):
        return f"GF({self.p})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))


def field_for_modulus(p) -> object:
    return QQ if p is None else PrimeField(p)


# -- matrices ------------------------------------------------------------------

class Matrix:
    """Dense rectangular matrix over a fixed field."""

    __slots__ = ("rows", "ncols", "field")

    def __init__(self, rows, ncols=None, field=QQ):
        rows = [list(r) for r in rows]
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        elif ncols is None:
            raise ValueError("empty matrix needs an explicit column count")
        self.rows = [[field.of(x) for x in r] for r in rows]
        self.ncols = ncols
        self.field = field

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def transpose(self) -> "Matrix":
        return Matrix(
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            ncols=self.nrows,
            field=self.field,
        )

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols} over {self.field})"


def mat_vec(m: Matrix, v) -> list:
    """m applied to the column vector v."""
    if len(v) != m.ncols:
        raise ValueError(f"vector length {len(v)} != {m.ncols} columns")
    out = []
    for row in m.rows:
        s = m.field.zero
        for a, b in zip(row, v):
            if a and b:
                s = s + a * b
        out.append(s)
    return out


def matmul(a: Matrix, b: Matrix) -> Matrix:
    if a.ncols != b.nrows:
        raise ValueError(f"shape mismatch {a.nrows}x{a.ncols} @ {b.nrows}x{b.ncols}")
    bt = b.transpose()
    rows = [[sum((x * y for x, y in zip(ra, rb) if x and y), a.field.zero) for rb in bt.rows]
            for ra in a.rows]
    return Matrix(rows, ncols=b.ncols, field=a.field)


def _int_rows(rows) -> list:
    """Scale each rational row to coprime integers."""
    out = []
    for row in rows:
        den = 1
        for x in row:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x.numerator) * (den // x.denominator) for x in row]
        g = 0
        for v in ints:
            g = gcd(g, v)
        if g > 1:
            ints = [v // g for v in ints]
        out.append(ints)
    return out


def _echelon_bareiss(m: list, ncols: int):
    """Fraction-free forward elimination; returns (rows, pivot columns)."""
    nrows = len(m)
    pivots = []
    r = 0
    prev = 1
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        pivot = m[r][c]
        for i in range(r + 1, nrows):
            mic = m[i][c]
            row_i = m[i]
            row_r = m[r]
            m[i] = [(pivot * row_i[j] - mic * row_r[j]) // prev for j in range(ncols)]
        pivots.append(c)
        prev = pivot
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def _rref_generic(rows, ncols, field):
    """Gauss-Jordan over an arbitrary field; returns (rref rows, pivots)."""
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        pr = next((i for i in range(r, nrows) if m[i][c]), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        inv = m[r][c]
        m[r] = [x / inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    return m[:r], pivots


def rref_with_pivots(m: Matrix):
    if not isinstance(m.field, RationalField):
        rows, pivots = _rref_generic(m.rows, m.ncols, m.field)
        out = Matrix([], ncols=m.ncols, field=m.field)
        out.rows = rows
        return out, pivots
    ech, pivots = _echelon_bareiss(_int_rows(m.rows), m.ncols)
    rows = [[Fraction(v) for v in row] for row in ech]
    for i in reversed(range(len(rows))):
        c = pivots[i]
        inv = rows[i][c]
        rows[i] = [x / inv for x in rows[i]]
        for k in range(i):
            f = rows[k][c]
            if f:
                rows[k] = [a - f * b for a, b in zip(rows[k], rows[i])]
    out = Matrix([], ncols=m.ncols, field=m.field)
    out.rows = rows
    return out, pivots


def rref(m: Matrix) -> Matrix:
    """Unique reduced row echelon form, zero rows dropped."""
    return rref_with_pivots(m)[0]


def rank(m: Matrix) -> int:
    return len(rref_with_pivots(m)[1])


def kernel(m: Matrix) -> Matrix:
    """RREF basis of the right kernel {v : m v = 0}."""
    red, pivots = rref_with_pivots(m)
    field = m.field
    free = [c for c in range(m.ncols) if c not in set(pivots)]
    vecs = []
    for f in free:
        v = [field.zero] * m.ncols
        v[f] = field.one
        for i, c in enumerate(pivots):
            v[c] = -red.rows[i][f]
        vecs.append(v)
    basis = Matrix(vecs, ncols=m.ncols, field=field)
    return rref(basis)


# -- subspaces ------------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace given by its RREF row basis inside a fixed ambient piece."""

    ambient_dim: int
    basis: tuple
    piece: object = None
    field: object = QQ

    @classmethod
    def from_rows(cls, ambient_dim: int, rows, piece=None, field=QQ) -> "Subspace":
        m = Matrix(rows, ncols=ambient_dim, field=field)
        red = rref(m)
        return cls(ambient_dim, tuple(tuple(r) for r in red.rows), piece, field)

    @classmethod
    def zero(cls, ambient_dim: int, piece=None, field=QQ) -> "Subspace":
        return cls(ambient_dim, (), piece, field)

    @classmethod
    def full(cls, ambient_dim: int, piece=None, field=QQ) -> "Subspace":
        rows = tuple(
            tuple(field.one if i == j else field.zero for j in range(ambient_dim))
            for i in range(ambient_dim)
        )
        return cls(ambient_dim, rows, piece, field)

    @property
    def dim(self) -> int:
        return len(self.basis)

    @property
    def codim(self) -> int:
        return self.ambient_dim - self.dim

    @property
    def is_zero(self) -> bool:
        return not self.basis

    @property
    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def _check_compatible(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise ValueError(
                f"ambient mismatch: dim {self.ambient_dim} vs {other.ambient_dim}"
            )
        if self.piece is not None and other.piece is not None and self.piece != other.piece:
            raise ValueError(f"graded piece mismatch: {self.piece} vs {other.piece}")

    def matrix(self) -> Matrix:
        m = Matrix([], ncols=self.ambient_dim, field=self.field)
        m.rows = [list(r) for r in self.basis]
        return m

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_rows(
            self.ambient_dim,
            list(self.basis) + list(other.basis),
            piece=self.piece or other.piece,
            field=self.field,
        )

    def constraints(self) -> Matrix:
        """Rows spanning the linear functionals that vanish on this subspace."""
        return kernel(self.matrix())

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        stacked = Matrix(
            list(self.constraints().rows) + list(other.constraints().rows),
            ncols=self.ambient_dim,
            field=self.field,
        )
        ker = kernel(stacked)
        return Subspace(
            self.ambient_dim,
            tuple(tuple(r) for r in ker.rows),
            self.piece or other.piece,
            self.field,
        )

    def reduce_vector(self, v) -> list:
        """Remainder of v after elimination against the RREF basis."""
        v = [self.field.of(x) for x in v]
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        for row in self.basis:
            c = next(i for i, x in enumerate(row) if x)
            f = v[c]
            if f:
                v = [a - f * b for a, b in zip(v, row)]
        return v

    def contains_vector(self, v) -> bool:
        return not any(self.reduce_vector(v))

    def contains(self, other) -> bool:
        if isinstance(other, Subspace):
            self._check_compatible(other)
            return all(self.contains_vector(r) for r in other.basis)
        return self.contains_vector(other)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        tag = f" @ {self.piece}" if self.piece is not None else ""
        return f"Subspace(dim {self.dim} of {self.ambient_dim}{tag})"


def image(m: Matrix, a: Subspace) -> Subspace:
    """Image of subspace `a` under the column-action map `m` (codomain x domain)."""
    if m.ncols != a.ambient_dim:
        raise ValueError("map domain does not match subspace ambient")
    rows = [mat_vec(m, list(r)) for r in a.basis]
    return Subspace.from_rows(m.nrows, rows, field=a.field)


def preimage(m: Matrix, w: Subspace) -> Subspace:
    """{x : m x lies in w}, as a subspace of the domain."""
    if m.nrows != w.ambient_dim:
        raise ValueError("map codomain does not match subspace ambient")
    cons = w.constraints()
    stacked = matmul(cons, m) if cons.nrows else Matrix([], ncols=m.ncols, field=m.field)
    ker = kernel(stacked) if stacked.nrows else None
    if ker is None:
        return Subspace.full(m.ncols, field=m.field)
    return Subspace(m.ncols, tuple(tuple(r) for r in ker.rows), None, m.field)
