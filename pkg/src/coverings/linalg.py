"""Exact linear algebra over the rationals and prime fields.

Matrices are stored sparsely (one ``dict`` per row) because nearly every
matrix that shows up in this package is a 0/1 pattern with a few extra
entries.  Public vectors are plain tuples; the ``*_sparse`` helpers work on
``{index: value}`` dicts and are what the heavier modules use internally.

Row reduction is incremental (:class:`Echelon`): rows are kept fully
reduced against each other, so the final basis is the unique reduced
row-echelon form once sorted by pivot.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


class Mod:
    """Element of the prime field GF(p), representative kept in ``[0, p)``."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _coerce(self, other):
        if isinstance(other, Mod):
            if other.p != self.p:
                raise ValueError(f"mixing GF({self.p}) and GF({other.p})")
            return other.v
        if isinstance(other, int):
            return other
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v + o, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v - o, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o - self.v, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(self.v * o, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        if o % self.p == 0:
            raise ZeroDivisionError("division by zero in GF(%d)" % self.p)
        return Mod(self.v * pow(o, -1, self.p), self.p)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return Mod(o, self.p) / self

    def __neg__(self):
        return Mod(-self.v, self.p)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return (self.v - o) % self.p == 0

    def __hash__(self):
        return hash(self.v)

    def __bool__(self):
        return self.v != 0

    def __int__(self):
        return self.v

    def __repr__(self):
        return str(self.v)


class Field:
    """The ground field: ``Field()`` is QQ, ``Field(p)`` is GF(p)."""

    __slots__ = ("p",)

    def __init__(self, p: int | None = None):
        if p is not None:
            if not isinstance(p, int) or not _is_prime(p) or p >= 2**31:
                raise ValueError(f"GF(p) needs a prime p < 2^31, got {p!r}")
        self.p = p

    @classmethod
    def rational(cls) -> "Field":
        return cls()

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def kind(self) -> str:
        return "rational" if self.p is None else "prime"

    @property
    def characteristic(self) -> int:
        return 0 if self.p is None else self.p

    @property
    def zero(self):
        return self(0)

    @property
    def one(self):
        return self(1)

    def __call__(self, x):
        """Coerce ``x`` (int, Fraction, Mod or ``"p/q"`` string) into the field."""
        if isinstance(x, str):
            x = Fraction(x.strip())
        if self.p is None:
            if isinstance(x, Mod):
                raise TypeError("cannot coerce a GF(p) element into QQ")
            if isinstance(x, bool):
                x = int(x)
            if isinstance(x, int):
                return x
            x = Fraction(x)
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, Mod):
            if x.p != self.p:
                raise ValueError(f"element of GF({x.p}) is not in GF({self.p})")
            return x
        if isinstance(x, Fraction):
            return Mod(x.numerator, self.p) / Mod(x.denominator, self.p)
        return Mod(int(x), self.p)

    def normalize(self, x):
        if self.p is None and isinstance(x, Fraction) and x.denominator == 1:
            return x.numerator
        return x

    def inv(self, x):
        if self.p is not None:
            return self(1) / x
        if x == 1 or x == -1:
            return x
        return self.normalize(Fraction(1) / x)

    def format(self, x) -> str:
        return str(int(x)) if self.p is not None else str(x)

    def to_json(self) -> str:
        return "QQ" if self.p is None else f"GF({self.p})"

    @classmethod
    def from_json(cls, s: str) -> "Field":
        s = s.strip()
        if s == "QQ":
            return cls()
        if s.startswith("GF(") and s.endswith(")"):
            return cls(int(s[3:-1]))
        raise ValueError(f"unknown field {s!r} (expected 'QQ' or 'GF(p)')")

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return self.to_json()


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


# -- sparse vectors ---------------------------------------------------------


def to_sparse(vec: Sequence) -> dict:
    return {i: x for i, x in enumerate(vec) if x}


def to_dense(field: Field, vec: dict, n: int) -> tuple:
    zero = field.zero
    out = [zero] * n
    for i, x in vec.items():
        out[i] = x
    return tuple(out)


def axpy(dst: dict, a, src: dict) -> None:
    """In place ``dst += a * src``; zero entries are dropped."""
    for k, v in src.items():
        w = dst.get(k)
        w = a * v if w is None else w + a * v
        if w:
            dst[k] = w
        else:
            dst.pop(k, None)


# -- matrices ---------------------------------------------------------------


class Matrix:
    """Immutable sparse matrix.  Linear maps act on column vectors."""

    __slots__ = ("field", "nrows", "ncols", "_rows", "_cols")

    def __init__(self, field: Field, rows: Iterable[Sequence], ncols: int | None = None):
        dense = [tuple(field(x) for x in r) for r in rows]
        if ncols is None:
            if not dense:
                raise ValueError("ncols is required for a matrix with no rows")
            ncols = len(dense[0])
        for r in dense:
            if len(r) != ncols:
                raise ValueError("ragged rows")
        self._init(field, len(dense), ncols, tuple(to_sparse(r) for r in dense))

    def _init(self, field, nrows, ncols, rows):
        self.field = field
        self.nrows = nrows
        self.ncols = ncols
        self._rows = rows
        self._cols = None

    @classmethod
    def from_sparse_rows(cls, field: Field, nrows: int, ncols: int, rows) -> "Matrix":
        m = cls.__new__(cls)
        rows = tuple({j: v for j, v in r.items() if v} for r in rows)
        assert len(rows) == nrows
        m._init(field, nrows, ncols, rows)
        return m

    @classmethod
    def from_sparse_columns(cls, field: Field, nrows: int, ncols: int, cols) -> "Matrix":
        rows = [{} for _ in range(nrows)]
        for j, col in enumerate(cols):
            for i, v in col.items():
                if v:
                    rows[i][j] = v
        m = cls.__new__(cls)
        m._init(field, nrows, ncols, tuple(rows))
        return m

    @classmethod
    def from_columns(cls, field: Field, nrows: int, cols: Sequence[Sequence]) -> "Matrix":
        return cls.from_sparse_columns(
            field, nrows, len(cols), [to_sparse([field(x) for x in c]) for c in cols]
        )

    @classmethod
    def zeros(cls, field: Field, nrows: int, ncols: int) -> "Matrix":
        return cls.from_sparse_rows(field, nrows, ncols, [{} for _ in range(nrows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one = field.one
        return cls.from_sparse_rows(field, n, n, [{i: one} for i in range(n)])

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, ij):
        i, j = ij
        return self._rows[i].get(j, self.field.zero)

    def sparse_row(self, i: int) -> dict:
        return self._rows[i]

    def sparse_columns(self) -> tuple:
        if self._cols is None:
            cols = [{} for _ in range(self.ncols)]
            for i, r in enumerate(self._rows):
                for j, v in r.items():
                    cols[j][i] = v
            self._cols = tuple(cols)
        return self._cols

    def row(self, i: int) -> tuple:
        return to_dense(self.field, self._rows[i], self.ncols)

    def column(self, j: int) -> tuple:
        return to_dense(self.field, self.sparse_columns()[j], self.nrows)

    def rows(self) -> list[tuple]:
        return [self.row(i) for i in range(self.nrows)]

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.ncols)]

    def nnz(self) -> int:
        return sum(len(r) for r in self._rows)

    def is_zero(self) -> bool:
        return not any(self._rows)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.ncols:
            raise ValueError(f"vector of length {len(vec)} for a {self.shape} matrix")
        zero = self.field.zero
        out = []
        for r in self._rows:
            s = zero
            for j, v in r.items():
                x = vec[j]
                if x:
                    s = s + v * x
            out.append(self.field.normalize(s))
        return tuple(out)

    def apply_sparse(self, vec: dict) -> dict:
        cols = self.sparse_columns()
        out: dict = {}
        for j, x in vec.items():
            axpy(out, x, cols[j])
        return out

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if not isinstance(other, Matrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        rows = []
        orows = other._rows
        for r in self._rows:
            acc: dict = {}
            for k, a in r.items():
                axpy(acc, a, orows[k])
            rows.append(acc)
        return Matrix.from_sparse_rows(self.field, self.nrows, other.ncols, rows)

    def _check_same_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same_shape(other)
        rows = []
        for a, b in zip(self._rows, other._rows):
            r = dict(a)
            axpy(r, self.field.one, b)
            rows.append(r)
        return Matrix.from_sparse_rows(self.field, self.nrows, self.ncols, rows)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + other.scale(-1)

    def __neg__(self) -> "Matrix":
        return self.scale(-1)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        rows = [{j: c * v for j, v in r.items()} for r in self._rows]
        return Matrix.from_sparse_rows(self.field, self.nrows, self.ncols, rows)

    @property
    def T(self) -> "Matrix":
        return Matrix.from_sparse_rows(
            self.field, self.ncols, self.nrows, [dict(c) for c in self.sparse_columns()]
        )

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix.from_sparse_rows(
            self.field, len(idx), self.ncols, [dict(self._rows[i]) for i in idx]
        )

    def rank(self) -> int:
        return rref(self)[1]

    def first_difference(self, other: "Matrix") -> tuple[int, int] | None:
        """(row, col) of the first entry where two same-shape matrices differ."""
        self._check_same_shape(other)
        for j, (a, b) in enumerate(zip(self.sparse_columns(), other.sparse_columns())):
            if a != b:
                i = min(k for k in set(a) | set(b) if a.get(k) != b.get(k))
                return (i, j)
        return None

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self._rows == other._rows

    def __hash__(self):
        return hash((self.shape, tuple(frozenset(r.items()) for r in self._rows)))

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in self.row(i)) for i in range(self.nrows))
        return f"Matrix({self.nrows}x{self.ncols}: [{body}])"


def hstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    nrows = blocks[0].nrows
    rows = [{} for _ in range(nrows)]
    off = 0
    for b in blocks:
        if b.nrows != nrows:
            raise ValueError("hstack: row count mismatch")
        for i in range(nrows):
            for j, v in b.sparse_row(i).items():
                rows[i][off + j] = v
        off += b.ncols
    return Matrix.from_sparse_rows(field, nrows, off, rows)


def vstack(blocks: Sequence[Matrix]) -> Matrix:
    field = blocks[0].field
    ncols = blocks[0].ncols
    rows = []
    for b in blocks:
        if b.ncols != ncols:
            raise ValueError("vstack: column count mismatch")
        rows.extend(dict(b.sparse_row(i)) for i in range(b.nrows))
    return Matrix.from_sparse_rows(field, len(rows), ncols, rows)


def block_diag(blocks: Sequence[Matrix], field: Field | None = None) -> Matrix:
    if field is None:
        field = blocks[0].field
    rows = []
    coff = 0
    ncols = sum(b.ncols for b in blocks)
    for b in blocks:
        for i in range(b.nrows):
            rows.append({coff + j: v for j, v in b.sparse_row(i).items()})
        coff += b.ncols
    return Matrix.from_sparse_rows(field, len(rows), ncols, rows)


# -- elimination ------------------------------------------------------------


class Echelon:
    """Incrementally maintained reduced row-echelon basis of a row space."""

    def __init__(self, field: Field, ncols: int):
        self.field = field
        self.ncols = ncols
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        v = {j: x for j, x in vec.items() if x}
        for p in [c for c in v if c in self.rows]:
            c = v.get(p)
            if c:
                axpy(v, -c, self.rows[p])
        return v

    def add(self, vec: dict) -> bool:
        """Insert a row; returns False when it was already in the span."""
        w = self.reduce(vec)
        if not w:
            return False
        p = min(w)
        inv = self.field.inv(w[p])
        w = {j: self.field.normalize(inv * x) for j, x in w.items()}
        for r in self.rows.values():
            c = r.get(p)
            if c:
                axpy(r, -c, w)
        self.rows[p] = w
        return True

    def pivots(self) -> list[int]:
        return sorted(self.rows)

    def matrix(self) -> Matrix:
        piv = self.pivots()
        return Matrix.from_sparse_rows(
            self.field,
            len(piv),
            self.ncols,
            [{j: self.field.normalize(x) for j, x in self.rows[p].items()} for p in piv],
        )


def rref(m: Matrix) -> tuple[Matrix, int]:
    """Reduced row-echelon form (zero rows kept at the bottom) and the rank."""
    ech = Echelon(m.field, m.ncols)
    for i in range(m.nrows):
        ech.add(m.sparse_row(i))
    top = ech.matrix()
    rows = [dict(top.sparse_row(i)) for i in range(top.nrows)]
    rows += [{} for _ in range(m.nrows - top.nrows)]
    return Matrix.from_sparse_rows(m.field, m.nrows, m.ncols, rows), ech.rank


class Subspace:
    """Subspace of ``field^ambient_dim`` held by its canonical RREF basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots")

    def __init__(self, field: Field, ambient_dim: int, basis: Matrix):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = basis
        self.pivots = tuple(min(basis.sparse_row(i)) for i in range(basis.nrows))

    @classmethod
    def from_echelon(cls, ech: Echelon) -> "Subspace":
        return cls(ech.field, ech.ncols, ech.matrix())

    @classmethod
    def span(cls, field: Field, ambient_dim: int, vectors: Iterable) -> "Subspace":
        """Span of dense (tuple) or sparse (dict) vectors."""
        ech = Echelon(field, ambient_dim)
        for v in vectors:
            if isinstance(v, dict):
                ech.add(v)
            else:
                if len(v) != ambient_dim:
                    raise ValueError(f"vector of length {len(v)} in ambient dim {ambient_dim}")
                ech.add(to_sparse([field(x) for x in v]))
        return cls.from_echelon(ech)

    @classmethod
    def zero(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.zeros(field, 0, n))

    @classmethod
    def full(cls, field: Field, n: int) -> "Subspace":
        return cls(field, n, Matrix.identity(field, n))

    @property
    def dim(self) -> int:
        return self.basis.nrows

    def vectors(self) -> list[tuple]:
        return self.basis.rows()

    def sparse_vectors(self) -> list[dict]:
        return [self.basis.sparse_row(i) for i in range(self.dim)]

    def echelon(self) -> Echelon:
        ech = Echelon(self.field, self.ambient_dim)
        for p, i in zip(self.pivots, range(self.dim)):
            ech.rows[p] = dict(self.basis.sparse_row(i))
        return ech

    def residue(self, vec) -> dict:
        v = vec if isinstance(vec, dict) else to_sparse(vec)
        for p, i in zip(self.pivots, range(self.dim)):
            c = v.get(p)
            if c:
                v = dict(v)
                axpy(v, -c, self.basis.sparse_row(i))
        return v

    def contains(self, vec) -> bool:
        return not self.residue(vec)

    def coordinates(self, vec) -> tuple:
        """Coefficients of ``vec`` in the RREF basis; ValueError if outside."""
        if self.residue(vec):
            raise ValueError("vector is not in the subspace")
        get = vec.get if isinstance(vec, dict) else (lambda j: vec[j])
        return tuple(self.field(get(p) or 0) for p in self.pivots)

    def is_subspace_of(self, other: "Subspace") -> bool:
        return all(other.contains(v) for v in self.sparse_vectors())

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient={self.ambient_dim})"


def kernel(m: Matrix) -> Subspace:
    """Null space ``{v : m v = 0}``."""
    r, rank = rref(m)
    pivots = [min(r.sparse_row(i)) for i in range(rank)]
    pivset = set(pivots)
    one = m.field.one
    vecs = []
    for f in range(m.ncols):
        if f in pivset:
            continue
        v = {f: one}
        for i, p in enumerate(pivots):
            c = r.sparse_row(i).get(f)
            if c:
                v[p] = -c
        vecs.append(v)
    return Subspace.span(m.field, m.ncols, vecs)


def image(m: Matrix) -> Subspace:
    """Column space of ``m``."""
    return Subspace.span(m.field, m.nrows, [c for c in m.sparse_columns() if c])


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """Some x with ``m x = b`` (free variables zero), or None if inconsistent."""
    if len(b) != m.nrows:
        raise ValueError(f"right-hand side of length {len(b)} for {m.nrows} rows")
    field = m.field
    n = m.ncols
    ech = Echelon(field, n + 1)
    for i in range(m.nrows):
        row = dict(m.sparse_row(i))
        bi = field(b[i])
        if bi:
            row[n] = bi
        ech.add(row)
    if n in ech.rows:
        return None
    x = [field.zero] * n
    for p, row in ech.rows.items():
        x[p] = field.normalize(row.get(n, field.zero))
    return tuple(x)


def solve_sparse(field: Field, ncols: int, equations: Iterable[tuple[dict, object]]) -> dict | None:
    """Sparse system solver; ``equations`` yields ``(coefficients, rhs)`` pairs."""
    ech = Echelon(field, ncols + 1)
    for coeffs, rhs in equations:
        row = dict(coeffs)
        if rhs:
            row[ncols] = rhs
        ech.add(row)
        if ncols in ech.rows:
            return None
    return {p: row[ncols] for p, row in ech.rows.items() if row.get(ncols)}


def _check_ambient(u: Subspace, v: Subspace):
    if u.ambient_dim != v.ambient_dim:
        raise ValueError(f"ambient dimension mismatch {u.ambient_dim} vs {v.ambient_dim}")


def subspace_sum(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    ech = u.echelon()
    for w in v.sparse_vectors():
        ech.add(w)
    return Subspace.from_echelon(ech)


def subspace_intersect(u: Subspace, v: Subspace) -> Subspace:
    _check_ambient(u, v)
    field = u.field
    if u.dim == 0 or v.dim == 0:
        return Subspace.zero(field, u.ambient_dim)
    # columns: u-basis then negated v-basis; kernel vectors (x, y) give sum x_i u_i
    stacked = hstack([u.basis.T, v.basis.T.scale(-1)])
    k = kernel(stacked)
    ub = u.basis
    vecs = []
    for coeffs in k.sparse_vectors():
        w: dict = {}
        for i, c in coeffs.items():
            if i < u.dim:
                axpy(w, c, ub.sparse_row(i))
        vecs.append(w)
    return Subspace.span(field, u.ambient_dim, vecs)


def contains(u: Subspace, vec) -> bool:
    return u.contains(vec)


class QuotientSpace:
    """``field^ambient_dim / killed`` with the non-pivot section.

    The quotient basis is the images of the standard basis vectors at the
    non-pivot coordinates of ``killed``, in index order.
    """

    __slots__ = ("field", "ambient_dim", "killed", "free", "_free_index", "project", "lift")

    def __init__(self, ambient_dim: int, killed: Subspace):
        if killed.ambient_dim != ambient_dim:
            raise ValueError("killed subspace lives in a different ambient space")
        field = killed.field
        self.field = field
        self.ambient_dim = ambient_dim
        self.killed = killed
        piv = set(killed.pivots)
        self.free = tuple(j for j in range(ambient_dim) if j not in piv)
        self._free_index = {j: a for a, j in enumerate(self.free)}
        one = field.one
        cols = []
        prow = {p: i for i, p in enumerate(killed.pivots)}
        for j in range(ambient_dim):
            if j in self._free_index:
                cols.append({self._free_index[j]: one})
            else:
                row = killed.basis.sparse_row(prow[j])
                cols.append({self._free_index[c]: -v for c, v in row.items() if c != j})
        self.project = Matrix.from_sparse_columns(field, len(self.free), ambient_dim, cols)
        self.lift = Matrix.from_sparse_columns(
            field, ambient_dim, len(self.free), [{j: one} for j in self.free]
        )

    @property
    def dim(self) -> int:
        return len(self.free)

    def project_vector(self, vec: Sequence) -> tuple:
        return self.project.apply(vec)

    def project_sparse(self, vec: dict) -> dict:
        return self.project.apply_sparse(vec)

    def lift_vector(self, vec: Sequence) -> tuple:
        return self.lift.apply(vec)

    def __repr__(self):
        return f"QuotientSpace({self.ambient_dim} / {self.killed.dim} -> {self.dim})"


def quotient(ambient_dim: int, killed: Subspace) -> QuotientSpace:
    return QuotientSpace(ambient_dim, killed)
