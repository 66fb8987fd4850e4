"""Deterministic exact linear algebra over Q and F_p.

Matrices act on column vectors: a Mat with shape (r, c) maps a length-c
vector to a length-r vector.  Subspaces are kept in reduced row-echelon
form, so two subspaces are equal iff their basis matrices are equal.
"""

from __future__ import annotations

from .errors import FieldMismatch, NotContained, ShapeError
from .fields import same_field


def vec_add(field, u, v):
    add = field.add
    return tuple(add(a, b) for a, b in zip(u, v))


def vec_sub(field, u, v):
    sub = field.sub
    return tuple(sub(a, b) for a, b in zip(u, v))


def vec_scale(field, c, u):
    mul = field.mul
    return tuple(mul(c, a) for a in u)


def vec_is_zero(field, u) -> bool:
    zero = field.zero
    return all(a == zero for a in u)


def vec_tensor(field, u, v):
    """Tensor of coordinate vectors, left factor major: index i*len(v)+j."""
    mul = field.mul
    out = []
    for a in u:
        for b in v:
            out.append(mul(a, b))
    return tuple(out)


def _rref_rows(field, rows, ncols, pivot_limit=None):
    """Row-reduce; returns (nonzero rows, pivot columns).

    Pivots are only searched in columns < pivot_limit, so the remaining
    columns act as an augmented right-hand side.
    """
    add, sub, mul = field.add, field.sub, field.mul
    inv, zero = field.inv, field.zero
    limit = ncols if pivot_limit is None else pivot_limit
    mat = [list(r) for r in rows]
    nrows = len(mat)
    pivots = []
    r = 0
    for c in range(limit):
        pr = None
        for i in range(r, nrows):
            if mat[i][c] != zero:
                pr = i
                break
        if pr is None:
            continue
        if pr != r:
            mat[r], mat[pr] = mat[pr], mat[r]
        head = mat[r][c]
        if head != field.one:
            f = inv(head)
            mat[r] = [mul(f, x) for x in mat[r]]
        row_r = mat[r]
        for i in range(nrows):
            if i != r:
                f = mat[i][c]
                if f != zero:
                    row_i = mat[i]
                    mat[i] = [sub(x, mul(f, y)) for x, y in zip(row_i, row_r)]
        pivots.append(c)
        r += 1
        if r == nrows:
            break
    if pivot_limit is None:
        return [tuple(row) for row in mat[:r]], tuple(pivots)
    # with a pivot limit, rows beyond r may carry nonzero augmented parts
    return [tuple(row) for row in mat], tuple(pivots)


class Mat:
    """Immutable dense matrix over one field."""

    __slots__ = ("field", "nrows", "ncols", "rows")

    def __init__(self, field, rows, ncols=None):
        rows = tuple(tuple(r) for r in rows)
        if rows:
            width = len(rows[0])
            for r in rows:
                if len(r) != width:
                    raise ShapeError("ragged rows")
            if ncols is not None and ncols != width:
                raise ShapeError(f"declared {ncols} columns, rows have {width}")
            ncols = width
        elif ncols is None:
            raise ShapeError("empty matrix needs an explicit column count")
        self.field = field
        self.rows = rows
        self.nrows = len(rows)
        self.ncols = ncols

    # --- construction -------------------------------------------------

    @classmethod
    def from_rows(cls, field, rows, ncols=None):
        coerce = field.coerce
        return cls(field, [[coerce(x) for x in r] for r in rows], ncols)

    @classmethod
    def from_cols(cls, field, cols, nrows=None):
        if cols:
            nrows = len(cols[0])
        elif nrows is None:
            raise ShapeError("empty matrix needs an explicit row count")
        return cls(field, [[col[i] for col in cols] for i in range(nrows)], len(cols))

    @classmethod
    def zeros(cls, field, nrows, ncols):
        z = field.zero
        return cls(field, [[z] * ncols for _ in range(nrows)], ncols)

    @classmethod
    def identity(cls, field, n):
        z, o = field.zero, field.one
        return cls(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    # --- basics -------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __hash__(self):
        return hash((self.field, self.ncols, self.rows))

    def __repr__(self):
        return f"Mat({self.field!r}, {self.nrows}x{self.ncols})"

    def col(self, j):
        return tuple(row[j] for row in self.rows)

    def cols(self):
        return [self.col(j) for j in range(self.ncols)]

    def transpose(self):
        return Mat(self.field, [self.col(j) for j in range(self.ncols)], self.nrows)

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(x == zero for row in self.rows for x in row)

    # --- arithmetic ---------------------------------------------------

    def _check_field(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def add(self, other):
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("matrix sum shape mismatch")
        return Mat(
            self.field,
            [vec_add(self.field, a, b) for a, b in zip(self.rows, other.rows)],
            self.ncols,
        )

    def sub(self, other):
        self._check_field(other)
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ShapeError("matrix difference shape mismatch")
        return Mat(
            self.field,
            [vec_sub(self.field, a, b) for a, b in zip(self.rows, other.rows)],
            self.ncols,
        )

    def scale(self, c):
        return Mat(self.field, [vec_scale(self.field, c, r) for r in self.rows], self.ncols)

    def mul(self, other):
        self._check_field(other)
        if self.ncols != other.nrows:
            raise ShapeError(f"cannot multiply {self.nrows}x{self.ncols} by {other.nrows}x{other.ncols}")
        field = self.field
        add, mul, zero = field.add, field.mul, field.zero
        ocols = other.ncols
        out = []
        for row in self.rows:
            acc = [zero] * ocols
            for k, a in enumerate(row):
                if a == zero:
                    continue
                orow = other.rows[k]
                acc = [add(x, mul(a, y)) for x, y in zip(acc, orow)]
            out.append(acc)
        return Mat(field, out, ocols)

    def apply(self, vector):
        """Matrix times column vector."""
        if len(vector) != self.ncols:
            raise ShapeError(f"vector of length {len(vector)} applied to {self.nrows}x{self.ncols}")
        field = self.field
        add, mul, zero = field.add, field.mul, field.zero
        out = []
        for row in self.rows:
            s = zero
            for a, x in zip(row, vector):
                if a != zero and x != zero:
                    s = add(s, mul(a, x))
            out.append(s)
        return tuple(out)

    # --- reductions ---------------------------------------------------

    def rref(self):
        """Unique reduced row-echelon form (zero rows dropped)."""
        rows, _ = _rref_rows(self.field, self.rows, self.ncols)
        return Mat(self.field, rows, self.ncols)

    def rank(self) -> int:
        _, pivots = _rref_rows(self.field, self.rows, self.ncols)
        return len(pivots)

    def kernel(self) -> "Subspace":
        """Solution space of self . x = 0 inside the domain."""
        rows, pivots = _rref_rows(self.field, self.rows, self.ncols)
        field = self.field
        zero, one, neg = field.zero, field.one, field.neg
        pivot_set = set(pivots)
        basis = []
        for f in range(self.ncols):
            if f in pivot_set:
                continue
            v = [zero] * self.ncols
            v[f] = one
            for i, p in enumerate(pivots):
                coeff = rows[i][f]
                if coeff != zero:
                    v[p] = neg(coeff)
            basis.append(v)
        return Subspace.from_vectors(field, self.ncols, basis)

    def column_space(self) -> "Subspace":
        return Subspace.from_vectors(self.field, self.nrows, self.cols())

    def solve(self, rhs):
        """One solution of self . x = rhs with free variables set to zero, or None."""
        sols = self.solve_many([rhs])
        return sols[0]

    def solve_many(self, rhss):
        """Solve self . x = rhs for several right-hand sides at once."""
        field = self.field
        zero = field.zero
        for rhs in rhss:
            if len(rhs) != self.nrows:
                raise ShapeError("right-hand side has wrong length")
        aug = [list(row) + [rhs[i] for rhs in rhss] for i, row in enumerate(self.rows)]
        rows, pivots = _rref_rows(field, aug, self.ncols + len(rhss), pivot_limit=self.ncols)
        rank = len(pivots)
        out = []
        for j in range(len(rhss)):
            c = self.ncols + j
            if any(rows[i][c] != zero for i in range(rank, len(rows))):
                out.append(None)
                continue
            x = [zero] * self.ncols
            for i, p in enumerate(pivots):
                x[p] = rows[i][c]
            out.append(tuple(x))
        return out

    def inverse(self):
        if self.nrows != self.ncols:
            raise ShapeError("only square matrices invert")
        n = self.nrows
        eye = Mat.identity(self.field, n)
        cols = self.solve_many([eye.col(j) for j in range(n)])
        if any(c is None for c in cols):
            raise ShapeError("matrix is singular")
        inv = Mat.from_cols(self.field, cols, n)
        # solve() with free variables zeroed yields the true inverse only
        # for full-rank input; a rank-deficient square matrix may still
        # "solve" every column, so confirm.
        if inv.mul(self) != eye:
            raise ShapeError("matrix is singular")
        return inv

    def is_invertible(self) -> bool:
        return self.nrows == self.ncols and self.rank() == self.nrows

    def tensor(self, other) -> "Mat":
        """Kronecker product on lexicographic tensor bases, left factor major."""
        self._check_field(other)
        field = self.field
        mul, zero = field.mul, field.zero
        out_rows = []
        for arow in self.rows:
            for brow in other.rows:
                out = []
                for a in arow:
                    if a == zero:
                        out.extend([zero] * len(brow))
                    else:
                        out.extend(mul(a, b) for b in brow)
                out_rows.append(out)
        return Mat(field, out_rows, self.ncols * other.ncols)


def tensor_map(f: Mat, g: Mat) -> Mat:
    return f.tensor(g)


class Subspace:
    """Subspace of k^ambient with canonical RREF basis rows."""

    __slots__ = ("field", "ambient", "basis", "pivots")

    def __init__(self, field, ambient, basis_rows, pivots):
        self.field = field
        self.ambient = ambient
        self.basis = tuple(tuple(r) for r in basis_rows)
        self.pivots = tuple(pivots)

    @classmethod
    def from_vectors(cls, field, ambient, vectors) -> "Subspace":
        for v in vectors:
            if len(v) != ambient:
                raise ShapeError("vector does not match ambient dimension")
        rows, pivots = _rref_rows(field, vectors, ambient)
        return cls(field, ambient, rows, pivots)

    @classmethod
    def zero(cls, field, ambient) -> "Subspace":
        return cls(field, ambient, (), ())

    @classmethod
    def full(cls, field, ambient) -> "Subspace":
        eye = Mat.identity(field, ambient)
        return cls(field, ambient, eye.rows, tuple(range(ambient)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.field == other.field
            and self.ambient == other.ambient
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.field, self.ambient, self.basis))

    def __repr__(self):
        return f"Subspace(dim {self.dim} of k^{self.ambient})"

    def _check_compatible(self, other):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")
        if self.ambient != other.ambient:
            raise ShapeError(f"ambient {self.ambient} vs {other.ambient}")

    # --- membership ---------------------------------------------------

    def reduce(self, vector):
        """Residue of vector after eliminating all basis pivots."""
        if len(vector) != self.ambient:
            raise ShapeError("vector does not match ambient dimension")
        field = self.field
        sub, mul, zero = field.sub, field.mul, field.zero
        v = list(vector)
        for row, p in zip(self.basis, self.pivots):
            c = v[p]
            if c != zero:
                v = [sub(x, mul(c, y)) for x, y in zip(v, row)]
        return tuple(v)

    def contains_vector(self, vector) -> bool:
        return vec_is_zero(self.field, self.reduce(vector))

    def coordinates(self, vector):
        """Coefficients of vector in the RREF basis, or None if outside."""
        coords = tuple(vector[p] for p in self.pivots)
        if not vec_is_zero(self.field, self.reduce(vector)):
            return None
        return coords

    def contains(self, other: "Subspace") -> bool:
        self._check_compatible(other)
        return all(self.contains_vector(row) for row in other.basis)

    # --- lattice operations --------------------------------------------

    def sum(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        return Subspace.from_vectors(self.field, self.ambient, list(self.basis) + list(other.basis))

    def intersect(self, other: "Subspace") -> "Subspace":
        self._check_compatible(other)
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.field, self.ambient)
        # x in both spans: x = c . A = d . B; kernel of columns [A^T | -B^T]
        field = self.field
        neg = field.neg
        cols = [list(row) for row in self.basis]
        cols += [[neg(x) for x in row] for row in other.basis]
        stacked = Mat.from_cols(field, cols, self.ambient)
        vectors = []
        for kv in stacked.kernel().basis:
            coeffs = kv[: self.dim]
            x = [field.zero] * self.ambient
            for c, row in zip(coeffs, self.basis):
                if c != field.zero:
                    x = [field.add(a, field.mul(c, b)) for a, b in zip(x, row)]
            vectors.append(x)
        return Subspace.from_vectors(field, self.ambient, vectors)

    def complement_in(self, sup: "Subspace") -> "Subspace":
        """Deterministic complement of self inside sup.

        Takes the RREF basis rows of sup whose pivot column is not a
        pivot column of self; these always span a complement.
        """
        self._check_compatible(sup)
        if not sup.contains(self):
            raise NotContained("complement_in: first subspace not inside second")
        mine = set(self.pivots)
        rows = [row for row, p in zip(sup.basis, sup.pivots) if p not in mine]
        pivots = [p for p in sup.pivots if p not in mine]
        return Subspace(self.field, self.ambient, rows, pivots)

    def quotient_matrix(self) -> Mat:
        """Matrix of the projection k^ambient -> k^(ambient-dim).

        Row j computes the residue coordinate at the j-th non-pivot
        column, i.e. the coordinates of reduce(v) on non-pivot slots.
        """
        field = self.field
        zero, neg = field.zero, field.neg
        pivot_set = set(self.pivots)
        free = [c for c in range(self.ambient) if c not in pivot_set]
        rows = []
        for c in free:
            row = [zero] * self.ambient
            row[c] = field.one
            for brow, p in zip(self.basis, self.pivots):
                if brow[c] != zero:
                    row[p] = neg(brow[c])
            rows.append(row)
        return Mat(field, rows, self.ambient)

    def matrix(self) -> Mat:
        return Mat(self.field, self.basis, self.ambient)


def subspace_algebra(a: Subspace, b: Subspace, kind: str):
    """Dispatch sum | intersect | contains | complement_in on two subspaces."""
    if kind == "sum":
        return a.sum(b)
    if kind == "intersect":
        return a.intersect(b)
    if kind == "contains":
        a._check_compatible(b)
        return a.contains(b)
    if kind == "complement_in":
        return a.complement_in(b)
    raise ShapeError(f"unknown subspace operation {kind!r}")


def rref(m: Mat) -> Mat:
    return m.rref()


def kernel(m: Mat) -> Subspace:
    return m.kernel()


def preimage(m: Mat, s: Subspace) -> Subspace:
    """{x : m.x in s} computed as the kernel of the composite with k^r -> k^r/s."""
    if s.ambient != m.nrows:
        raise ShapeError(f"subspace of k^{s.ambient} is not in the codomain k^{m.nrows}")
    same_field(m.field, s.field)
    reduced_cols = [s.reduce(m.col(j)) for j in range(m.ncols)]
    return Mat.from_cols(m.field, reduced_cols, m.nrows).kernel()


def image_of_subspace(m: Mat, s: Subspace) -> Subspace:
    if s.ambient != m.ncols:
        raise ShapeError("subspace does not live in the domain")
    return Subspace.from_vectors(m.field, m.nrows, [m.apply(v) for v in s.basis])
