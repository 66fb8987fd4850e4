"""Finite-dimensional coalgebras by structure constants.

The comultiplication of basis element i is stored sparsely as terms
(j, k, coeff) meaning a contribution coeff * b_j (x) b_k.  Tensor
coordinates are always lexicographic with the left factor major, so the
pair (j, k) sits at flat index j*dim + k.
"""

from __future__ import annotations

from .errors import (
    AdjqError,
    BaseMismatch,
    InputError,
    NotContained,
    NotGroupLike,
    NotPointed,
    ShapeError,
)
from .fields import same_field
from .linalg import Mat, Subspace, vec_is_zero
from .report import Report


def _clean_terms(field, terms):
    zero = field.zero
    acc = {}
    for j, k, coeff in terms:
        coeff = field.coerce(coeff)
        if coeff == zero:
            continue
        key = (j, k)
        acc[key] = field.add(acc.get(key, zero), coeff)
    return tuple((j, k, c) for (j, k), c in sorted(acc.items()) if c != zero)


class Coalgebra:
    """Based coalgebra with exact structure constants."""

    def __init__(self, field, labels, delta, counit, grading=None, grouplike_hint=None):
        labels = tuple(str(x) for x in labels)
        if not labels:
            raise InputError("a counital coalgebra is nonzero; empty basis rejected")
        if len(set(labels)) != len(labels):
            raise InputError("duplicate basis labels")
        self.field = field
        self.labels = labels
        n = len(labels)
        if len(delta) != n:
            raise InputError("comultiplication must list one column per basis element")
        for terms in delta:
            for j, k, _ in terms:
                if not (0 <= j < n and 0 <= k < n):
                    raise InputError("comultiplication term out of range")
        self.delta = tuple(_clean_terms(field, terms) for terms in delta)
        if len(counit) != n:
            raise InputError("counit must have one coordinate per basis element")
        self.counit = tuple(field.coerce(x) for x in counit)
        self.grading = None if grading is None else tuple(int(g) for g in grading)
        if self.grading is not None and len(self.grading) != n:
            raise InputError("grading must assign a degree to every basis element")
        self.grouplike_hint = (
            None
            if grouplike_hint is None
            else tuple(tuple(field.coerce(x) for x in v) for v in grouplike_hint)
        )
        self._cache = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        return (
            isinstance(other, Coalgebra)
            and self.field == other.field
            and self.labels == other.labels
            and self.delta == other.delta
            and self.counit == other.counit
        )

    def __hash__(self):
        return hash((self.field, self.labels, self.delta, self.counit))

    def __repr__(self):
        return f"Coalgebra(dim {self.dim} over {self.field!r})"

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown basis label {label!r}") from None

    # --- evaluation -----------------------------------------------------

    def delta_of_vector(self, vector):
        """Sparse comultiplication of a coordinate vector: dict (j,k) -> coeff."""
        field = self.field
        add, mul, zero = field.add, field.mul, field.zero
        acc = {}
        for i, x in enumerate(vector):
            if x == zero:
                continue
            for j, k, c in self.delta[i]:
                key = (j, k)
                acc[key] = add(acc.get(key, zero), mul(x, c))
        return {key: v for key, v in acc.items() if v != zero}

    def counit_of_vector(self, vector):
        field = self.field
        s = field.zero
        for e, x in zip(self.counit, vector):
            if e != field.zero and x != field.zero:
                s = field.add(s, field.mul(e, x))
        return s

    def delta_matrix(self) -> Mat:
        """Dense matrix of the comultiplication, shape (dim^2, dim)."""
        if "delta_matrix" not in self._cache:
            n = self.dim
            zero = self.field.zero
            cols = []
            for i in range(n):
                col = [zero] * (n * n)
                for j, k, c in self.delta[i]:
                    col[j * n + k] = c
                cols.append(col)
            self._cache["delta_matrix"] = Mat.from_cols(self.field, cols, n * n)
        return self._cache["delta_matrix"]

    def is_group_like(self, vector) -> bool:
        if self.counit_of_vector(vector) != self.field.one:
            return False
        field = self.field
        expected = {}
        for j, x in enumerate(vector):
            if x == field.zero:
                continue
            for k, y in enumerate(vector):
                if y != field.zero:
                    expected[(j, k)] = field.mul(x, y)
        return self.delta_of_vector(vector) == expected


def group_like_coalgebra(field, labels) -> Coalgebra:
    """The coalgebra kS: every basis element s has Delta(s)=s(x)s, eps(s)=1."""
    n = len(labels)
    one = field.one
    delta = [((i, i, one),) for i in range(n)]
    counit = [one] * n
    eye = Mat.identity(field, n)
    return Coalgebra(field, labels, delta, counit, grading=(0,) * n, grouplike_hint=eye.rows)


def verify_coalgebra(c: Coalgebra) -> Report:
    """Exact check of coassociativity and both counit identities."""
    field = c.field
    add, mul, zero = field.add, field.mul, field.zero
    failures = []
    n = c.dim
    for i in range(n):
        lhs, rhs = {}, {}
        for j, k, c1 in c.delta[i]:
            for a, b, c2 in c.delta[j]:
                key = (a, b, k)
                lhs[key] = add(lhs.get(key, zero), mul(c1, c2))
            for a, b, c2 in c.delta[k]:
                key = (j, a, b)
                rhs[key] = add(rhs.get(key, zero), mul(c1, c2))
        lhs = {key: v for key, v in lhs.items() if v != zero}
        rhs = {key: v for key, v in rhs.items() if v != zero}
        if lhs != rhs:
            failures.append(f"coassociativity fails on basis element {c.labels[i]!r}")
            break
    for i in range(n):
        left = [zero] * n
        right = [zero] * n
        for j, k, co in c.delta[i]:
            if c.counit[j] != zero:
                left[k] = add(left[k], mul(c.counit[j], co))
            if c.counit[k] != zero:
                right[j] = add(right[j], mul(c.counit[k], co))
        unit_vec = [zero] * n
        unit_vec[i] = field.one
        if left != unit_vec:
            failures.append(f"left counit identity fails on basis element {c.labels[i]!r}")
            break
        if right != unit_vec:
            failures.append(f"right counit identity fails on basis element {c.labels[i]!r}")
            break
    return Report(f"coalgebra axioms (dim {n})", failures)


class CoalgebraMap:
    """Linear map between coalgebras; matrix has shape (target.dim, source.dim)."""

    def __init__(self, source: Coalgebra, target: Coalgebra, matrix: Mat):
        same_field(source.field, target.field, matrix.field)
        if (matrix.nrows, matrix.ncols) != (target.dim, source.dim):
            raise ShapeError(
                f"map matrix is {matrix.nrows}x{matrix.ncols}, expected {target.dim}x{source.dim}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, c: Coalgebra) -> "CoalgebraMap":
        return cls(c, c, Mat.identity(c.field, c.dim))

    def __eq__(self, other):
        return (
            isinstance(other, CoalgebraMap)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"CoalgebraMap({self.source!r} -> {self.target!r})"

    def apply(self, vector):
        return self.matrix.apply(vector)

    def compose(self, other: "CoalgebraMap") -> "CoalgebraMap":
        """self after other."""
        if other.target != self.source:
            raise ShapeError("coalgebra maps not composable")
        return CoalgebraMap(other.source, self.target, self.matrix.mul(other.matrix))

    def is_injective(self) -> bool:
        return self.matrix.kernel().dim == 0

    def is_isomorphism(self) -> bool:
        return self.matrix.is_invertible()

    def inverse(self) -> "CoalgebraMap":
        return CoalgebraMap(self.target, self.source, self.matrix.inverse())


def verify_coalgebra_map(rho: CoalgebraMap) -> Report:
    """Exact check that Delta . rho = (rho (x) rho) . Delta and eps . rho = eps."""
    src, tgt, mat = rho.source, rho.target, rho.matrix
    field = src.field
    add, mul, zero = field.add, field.mul, field.zero
    failures = []
    for i in range(src.dim):
        image = mat.col(i)
        lhs = tgt.delta_of_vector(image)
        rhs = {}
        for j, k, co in src.delta[i]:
            left_col = mat.col(j)
            right_col = mat.col(k)
            for a, x in enumerate(left_col):
                if x == zero:
                    continue
                cx = mul(co, x)
                for b, y in enumerate(right_col):
                    if y != zero:
                        key = (a, b)
                        rhs[key] = add(rhs.get(key, zero), mul(cx, y))
        rhs = {key: v for key, v in rhs.items() if v != zero}
        if lhs != rhs:
            failures.append(f"comultiplication not respected on {src.labels[i]!r}")
            break
        if tgt.counit_of_vector(image) != src.counit[i]:
            failures.append(f"counit not respected on {src.labels[i]!r}")
            break
    return Report("coalgebra map axioms", failures)


# --- coradical machinery -------------------------------------------------


def _filtration_from(c: Coalgebra, c0: Subspace):
    """Ascending filtration from a candidate coradical; None if it fails to exhaust."""
    n = c.dim
    field = c.field
    zero = field.zero
    terms = [c0]
    while terms[-1].dim < n:
        prev = terms[-1]
        pi_left = c0.quotient_matrix()
        pi_right = prev.quotient_matrix()
        ql, qr = pi_left.nrows, pi_right.nrows
        cols = []
        for i in range(n):
            col = [zero] * (ql * qr)
            for j, k, co in c.delta[i]:
                lcol = pi_left.col(j)
                rcol = pi_right.col(k)
                for a, x in enumerate(lcol):
                    if x == zero:
                        continue
                    cx = field.mul(co, x)
                    for b, y in enumerate(rcol):
                        if y != zero:
                            idx = a * qr + b
                            col[idx] = field.add(col[idx], field.mul(cx, y))
            cols.append(col)
        nxt = Mat.from_cols(field, cols, ql * qr).kernel()
        if nxt.dim == prev.dim:
            if nxt != prev:
                raise AdjqError("filtration step produced a non-monotone space (bug)")
            return None
        if not nxt.contains(prev):
            raise AdjqError("filtration step lost earlier terms (bug)")
        terms.append(nxt)
    return terms


def _sorted_group_likes(c, vectors):
    zero = c.field.zero

    def key(v):
        first = next(i for i, x in enumerate(v) if x != zero)
        return (first, v)

    return sorted(vectors, key=key)


def _group_likes_generic(c: Coalgebra):
    """Coradical via the dual algebra, split by simultaneous eigen-refinement."""
    from .algebra import dual_algebra, radical, split_commutative_idempotents

    field = c.field
    n = c.dim
    a = dual_algebra(c)
    jac = radical(a)
    if jac.space.dim == 0:
        c0 = Subspace.full(field, n)
    else:
        c0 = Mat(field, jac.space.basis, n).kernel()
    m = c0.dim
    if m == 0:
        raise AdjqError("coradical computed as zero (bug or invalid coalgebra)")
    basis = c0.basis
    pivots = c0.pivots
    # structure constants of the dual algebra of the subcoalgebra C0
    mult = [[() for _ in range(m)] for _ in range(m)]
    unit = []
    for t in range(m):
        dv = c.delta_of_vector(basis[t])
        coeffs = {}
        for ai in range(m):
            for bi in range(m):
                co = dv.get((pivots[ai], pivots[bi]), field.zero)
                if co != field.zero:
                    coeffs[(ai, bi)] = co
        # certify Delta(C0) <= C0 (x) C0 by reconstructing the sparse value
        recon = {}
        for (ai, bi), co in coeffs.items():
            for j, x in enumerate(basis[ai]):
                if x == field.zero:
                    continue
                for k, y in enumerate(basis[bi]):
                    if y != field.zero:
                        key = (j, k)
                        val = field.add(recon.get(key, field.zero), field.mul(co, field.mul(x, y)))
                        if val == field.zero:
                            recon.pop(key, None)
                        else:
                            recon[key] = val
        if recon != dv:
            raise AdjqError("coradical candidate is not a subcoalgebra (bug)")
        for (ai, bi), co in coeffs.items():
            mult[ai][bi] = mult[ai][bi] + ((t, co),)
        unit.append(c.counit_of_vector(basis[t]))
    from .algebra import FiniteAlgebra

    b_alg = FiniteAlgebra(field, tuple(f"u{i}" for i in range(m)), mult, unit)
    for i in range(m):
        for j in range(i):
            if dict(b_alg.mult[i][j]) != dict(b_alg.mult[j][i]):
                raise NotPointed("dual of the coradical is not commutative")
    idempotents = split_commutative_idempotents(b_alg)
    u_mat = Mat(field, idempotents, m)
    g_coords = u_mat.inverse().transpose()
    group = []
    for i in range(m):
        row = g_coords.rows[i]
        vec = [field.zero] * n
        for j, coeff in enumerate(row):
            if coeff != field.zero:
                for t, x in enumerate(basis[j]):
                    if x != field.zero:
                        vec[t] = field.add(vec[t], field.mul(coeff, x))
        gv = tuple(vec)
        if not c.is_group_like(gv):
            raise AdjqError("eigen split produced a non-group-like vector (bug)")
        group.append(gv)
    return _sorted_group_likes(c, group), c0


def group_likes(c: Coalgebra):
    """The complete list of group-like elements of the coradical.

    Raises NotPointed when the coradical has a simple piece of dimension
    greater than one.
    """
    if "group_likes" in c._cache:
        return c._cache["group_likes"]
    n = c.dim
    field = c.field
    result = None
    if c.grouplike_hint is not None:
        hints = c.grouplike_hint
        for v in hints:
            if len(v) != n or not c.is_group_like(v):
                raise AdjqError("stored group-like hint is not group-like (bug or bad file)")
        span = Subspace.from_vectors(field, n, hints)
        if span.dim == len(hints):
            filt = _filtration_from(c, span)
            if filt is not None:
                c._cache["filtration"] = filt
                result = tuple(hints)
    if result is None:
        likes, c0 = _group_likes_generic(c)
        if len(likes) != c0.dim:
            raise NotPointed("group-likes do not span the coradical")
        filt = _filtration_from(c, c0)
        if filt is None:
            raise AdjqError("true coradical failed to exhaust the coalgebra (bug)")
        c._cache["filtration"] = filt
        result = tuple(likes)
    c._cache["group_likes"] = result
    return result


def coradical_filtration(c: Coalgebra):
    """C_0 <= C_1 <= ... up to the first term equal to C."""
    if "filtration" not in c._cache:
        group_likes(c)
    return list(c._cache["filtration"])


def is_pointed(c: Coalgebra) -> bool:
    try:
        group_likes(c)
        return True
    except NotPointed:
        return False


def loewy_length(c: Coalgebra) -> int:
    """Least n with C_n = C (0 for cosemisimple)."""
    return len(coradical_filtration(c)) - 1


def _locate_group_like(c: Coalgebra, g):
    for vec in group_likes(c):
        if tuple(vec) == tuple(g):
            return vec
    raise NotGroupLike("vector is not in the group-like list of this coalgebra")


def primitive_space(c: Coalgebra, g, h) -> Subspace:
    """Solutions of Delta(p) = p (x) g + h (x) p."""
    g = _locate_group_like(c, g)
    h = _locate_group_like(c, h)
    field = c.field
    n = c.dim
    zero = field.zero
    cols = []
    for i in range(n):
        col = [zero] * (n * n)
        for j, k, co in c.delta[i]:
            col[j * n + k] = field.add(col[j * n + k], co)
        for t, x in enumerate(g):
            if x != zero:
                idx = i * n + t
                col[idx] = field.sub(col[idx], x)
        for t, x in enumerate(h):
            if x != zero:
                idx = t * n + i
                col[idx] = field.sub(col[idx], x)
        cols.append(col)
    return Mat.from_cols(field, cols, n * n).kernel()


class PrimitiveQuotient:
    """The quotient P_{g,h} / <h-g> presented on a deterministic complement."""

    def __init__(self, space: Subspace, line: Subspace, complement: Subspace):
        self.space = space
        self.line = line
        self.complement = complement

    @property
    def dim(self) -> int:
        return self.complement.dim

    def class_coords(self, vector):
        """Coordinates of the class of vector in the complement basis."""
        residue = self.line.reduce(vector)
        coords = self.complement.coordinates(residue)
        if coords is None:
            raise NotContained("vector is not in the primitive space plus the line")
        return coords

    def lift(self, coords):
        field = self.complement.field
        vec = [field.zero] * self.complement.ambient
        for coeff, row in zip(coords, self.complement.basis):
            if coeff != field.zero:
                for t, x in enumerate(row):
                    if x != field.zero:
                        vec[t] = field.add(vec[t], field.mul(coeff, x))
        return tuple(vec)


def primitive_quotient(c: Coalgebra, g, h) -> PrimitiveQuotient:
    g = _locate_group_like(c, g)
    h = _locate_group_like(c, h)
    space = primitive_space(c, g, h)
    field = c.field
    diff = tuple(field.sub(b, a) for a, b in zip(g, h))
    if vec_is_zero(field, diff):
        line = Subspace.zero(field, c.dim)
    else:
        line = Subspace.from_vectors(field, c.dim, [diff])
    complement = line.complement_in(space)
    return PrimitiveQuotient(space, line, complement)


# --- comodules and bicomodules -------------------------------------------


class Comodule:
    """One-sided comodule; side is "left" (M -> C (x) M) or "right" (M -> M (x) C)."""

    def __init__(self, coalgebra: Coalgebra, dim: int, coaction: Mat, side: str, labels=None):
        if side not in ("left", "right"):
            raise InputError("comodule side must be 'left' or 'right'")
        expected_rows = coalgebra.dim * dim
        if (coaction.nrows, coaction.ncols) != (expected_rows, dim):
            raise ShapeError(
                f"coaction is {coaction.nrows}x{coaction.ncols}, expected {expected_rows}x{dim}"
            )
        same_field(coalgebra.field, coaction.field)
        self.coalgebra = coalgebra
        self.dim = dim
        self.coaction = coaction
        self.side = side
        self.labels = tuple(labels) if labels is not None else tuple(f"m{i}" for i in range(dim))

    def terms(self, idx):
        """Sparse coaction of basis element idx as (c_index, m_index, coeff)."""
        field = self.coalgebra.field
        col = self.coaction.col(idx)
        nc = self.coalgebra.dim
        out = []
        for flat, coeff in enumerate(col):
            if coeff == field.zero:
                continue
            if self.side == "left":
                out.append((flat // self.dim, flat % self.dim, coeff))
            else:
                out.append((flat % nc, flat // nc, coeff))
        return out


def verify_comodule(m: Comodule) -> Report:
    field = m.coalgebra.field
    add, mul, zero = field.add, field.mul, field.zero
    cdim = m.coalgebra.dim
    failures = []
    for i in range(m.dim):
        terms = m.terms(i)
        lhs, rhs = {}, {}
        for cidx, midx, co in terms:
            for a, b, c2 in m.coalgebra.delta[cidx]:
                if m.side == "left":
                    key = (a, b, midx)
                else:
                    key = (midx, a, b)
                lhs[key] = add(lhs.get(key, zero), mul(co, c2))
            for c2idx, m2idx, co2 in m.terms(midx):
                if m.side == "left":
                    key = (cidx, c2idx, m2idx)
                else:
                    key = (m2idx, c2idx, cidx)
                rhs[key] = add(rhs.get(key, zero), mul(co, co2))
        lhs = {k: v for k, v in lhs.items() if v != zero}
        rhs = {k: v for k, v in rhs.items() if v != zero}
        if lhs != rhs:
            failures.append(f"coaction coassociativity fails on {m.labels[i]!r}")
            break
        counit_image = [zero] * m.dim
        for cidx, midx, co in terms:
            e = m.coalgebra.counit[cidx]
            if e != zero:
                counit_image[midx] = add(counit_image[midx], mul(e, co))
        expected = [zero] * m.dim
        expected[i] = field.one
        if counit_image != expected:
            failures.append(f"coaction counit identity fails on {m.labels[i]!r}")
            break
    return Report(f"{m.side} comodule axioms", failures)


class Bicomodule:
    """C-D-bicomodule with commuting left and right coactions."""

    def __init__(self, left_coalgebra, right_coalgebra, dim, mu: Mat, nu: Mat, labels=None):
        same_field(left_coalgebra.field, right_coalgebra.field, mu.field, nu.field)
        self.left_coalgebra = left_coalgebra
        self.right_coalgebra = right_coalgebra
        self.dim = dim
        self.mu = mu
        self.nu = nu
        self.labels = tuple(labels) if labels is not None else tuple(f"m{i}" for i in range(dim))
        self._left = Comodule(left_coalgebra, dim, mu, "left", self.labels)
        self._right = Comodule(right_coalgebra, dim, nu, "right", self.labels)

    @property
    def field(self):
        return self.left_coalgebra.field

    def left_comodule(self) -> Comodule:
        return self._left

    def right_comodule(self) -> Comodule:
        return self._right


def verify_bicomodule(b: Bicomodule) -> Report:
    failures = []
    left = verify_comodule(b.left_comodule())
    right = verify_comodule(b.right_comodule())
    failures.extend("left " + f for f in left.failures)
    failures.extend("right " + f for f in right.failures)
    if not failures:
        field = b.field
        add, mul, zero = field.add, field.mul, field.zero
        for i in range(b.dim):
            lhs, rhs = {}, {}
            # (mu (x) id_D) nu and (id_C (x) nu) mu, both into C (x) M (x) D
            for didx, midx, co in b.right_comodule().terms(i):
                for cidx, m2idx, co2 in b.left_comodule().terms(midx):
                    key = (cidx, m2idx, didx)
                    lhs[key] = add(lhs.get(key, zero), mul(co, co2))
            for cidx, midx, co in b.left_comodule().terms(i):
                for didx, m2idx, co2 in b.right_comodule().terms(midx):
                    key = (cidx, m2idx, didx)
                    rhs[key] = add(rhs.get(key, zero), mul(co, co2))
            lhs = {k: v for k, v in lhs.items() if v != zero}
            rhs = {k: v for k, v in rhs.items() if v != zero}
            if lhs != rhs:
                failures.append(f"left and right coactions do not commute on {b.labels[i]!r}")
                break
    return Report("bicomodule axioms", failures)


def cotensor(w: Comodule, m: Comodule) -> Subspace:
    """W box_C M as the canonical kernel inside W (x) M.

    The subspace basis doubles as the inclusion matrix into the tensor
    basis of W (x) M (left factor major).
    """
    if w.side != "right" or m.side != "left":
        raise ShapeError("cotensor needs a right comodule and a left comodule")
    if w.coalgebra != m.coalgebra:
        raise BaseMismatch("cotensor factors live over different coalgebras")
    field = w.coalgebra.field
    zero = field.zero
    nc = w.coalgebra.dim
    wd, md = w.dim, m.dim
    if wd == 0 or md == 0:
        return Subspace.zero(field, wd * md)
    cols = []
    for a in range(wd):
        nu_terms = w.terms(a)
        for b in range(md):
            col = [zero] * (wd * nc * md)
            for cidx, widx, co in nu_terms:
                idx = (widx * nc + cidx) * md + b
                col[idx] = field.add(col[idx], co)
            for cidx, midx, co in m.terms(b):
                idx = (a * nc + cidx) * md + midx
                col[idx] = field.sub(col[idx], co)
            cols.append(col)
    return Mat.from_cols(field, cols, wd * nc * md).kernel()
