"""Finite-dimensional associative algebras: duals of coalgebras, radicals,
truncated path algebras, ideals and the pair functors.

Structure constants are sparse: mult[i][j] is a tuple of (k, coeff) with
b_i * b_j = sum coeff * b_k.
"""

from __future__ import annotations

import math

from .coalgebra import Coalgebra, CoalgebraMap
from .errors import (
    AdjqError,
    DecompositionUndecided,
    InputError,
    NotHomogeneous,
    NotPointed,
    NotRelationIdeal,
    RadicalUndecided,
    ShapeError,
)
from .fields import QQ, same_field
from .linalg import Mat, Subspace, vec_is_zero
from .report import Report

_ROOT_SCAN_LIMIT = 10**12  # integer factoring budget for rational eigenvalues
_FP_EIGEN_LIMIT = 65536  # largest prime field scanned for eigenvalues
_BRUTE_DIM_LIMIT = 12  # outer gate for the brute-force radical fallback
_BRUTE_SPACE_LIMIT = 4096  # vectors enumerated inside the trace-form radical


def _clean_mult_terms(field, terms):
    zero = field.zero
    acc = {}
    for k, coeff in terms:
        coeff = field.coerce(coeff)
        if coeff == zero:
            continue
        acc[k] = field.add(acc.get(k, zero), coeff)
    return tuple((k, c) for k, c in sorted(acc.items()) if c != zero)


class FiniteAlgebra:
    """Based associative unital algebra with exact structure constants."""

    def __init__(self, field, labels, mult, unit, grading=None):
        labels = tuple(str(x) for x in labels)
        if not labels:
            raise InputError("a unital algebra is nonzero; empty basis rejected")
        if len(set(labels)) != len(labels):
            raise InputError("duplicate basis labels")
        n = len(labels)
        if len(mult) != n or any(len(row) != n for row in mult):
            raise InputError("multiplication table must be n x n")
        self.field = field
        self.labels = labels
        self.mult = tuple(tuple(_clean_mult_terms(field, cell) for cell in row) for row in mult)
        for row in self.mult:
            for cell in row:
                for k, _ in cell:
                    if not (0 <= k < n):
                        raise InputError("multiplication term out of range")
        if len(unit) != n:
            raise InputError("unit vector has wrong length")
        self.unit = tuple(field.coerce(x) for x in unit)
        self.grading = None if grading is None else tuple(int(g) for g in grading)
        if self.grading is not None and len(self.grading) != n:
            raise InputError("grading must assign a degree to every basis element")
        self._cache = {}

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __eq__(self, other):
        return (
            isinstance(other, FiniteAlgebra)
            and self.field == other.field
            and self.labels == other.labels
            and self.mult == other.mult
            and self.unit == other.unit
        )

    def __hash__(self):
        return hash((self.field, self.labels, self.mult, self.unit))

    def __repr__(self):
        return f"FiniteAlgebra(dim {self.dim} over {self.field!r})"

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise InputError(f"unknown basis label {label!r}") from None

    # --- arithmetic -----------------------------------------------------

    def multiply(self, x, y):
        field = self.field
        add, mul, zero = field.add, field.mul, field.zero
        out = [zero] * self.dim
        for i, a in enumerate(x):
            if a == zero:
                continue
            row = self.mult[i]
            for j, b in enumerate(y):
                if b == zero:
                    continue
                ab = mul(a, b)
                for k, c in row[j]:
                    out[k] = add(out[k], mul(ab, c))
        return tuple(out)

    def power(self, x, e: int):
        if e < 1:
            raise InputError("element power needs exponent >= 1")
        result = None
        base = tuple(x)
        while e:
            if e & 1:
                result = base if result is None else self.multiply(result, base)
            e >>= 1
            if e:
                base = self.multiply(base, base)
        return result

    def left_mul_matrix(self, x) -> Mat:
        field = self.field
        zero = field.zero
        cols = []
        for j in range(self.dim):
            col = [zero] * self.dim
            for i, a in enumerate(x):
                if a == zero:
                    continue
                for k, c in self.mult[i][j]:
                    col[k] = field.add(col[k], field.mul(a, c))
            cols.append(col)
        return Mat.from_cols(field, cols, self.dim)

    def right_mul_matrix(self, x) -> Mat:
        field = self.field
        zero = field.zero
        cols = []
        for j in range(self.dim):
            col = [zero] * self.dim
            for i, a in enumerate(x):
                if a == zero:
                    continue
                for k, c in self.mult[j][i]:
                    col[k] = field.add(col[k], field.mul(a, c))
            cols.append(col)
        return Mat.from_cols(field, cols, self.dim)

    def basis_vector(self, i):
        field = self.field
        v = [field.zero] * self.dim
        v[i] = field.one
        return tuple(v)

    def is_commutative(self) -> bool:
        return all(
            self.mult[i][j] == self.mult[j][i] for i in range(self.dim) for j in range(i)
        )


def verify_algebra(a: FiniteAlgebra) -> Report:
    """Exact associativity and two-sided unit check."""
    field = a.field
    add, mul, zero = field.add, field.mul, field.zero
    failures = []
    n = a.dim
    for i in range(n):
        if failures:
            break
        for j in range(n):
            if failures:
                break
            ij = a.mult[i][j]
            for k in range(n):
                lhs = {}
                for t, c in ij:
                    for s, c2 in a.mult[t][k]:
                        lhs[s] = add(lhs.get(s, zero), mul(c, c2))
                rhs = {}
                for t, c in a.mult[j][k]:
                    for s, c2 in a.mult[i][t]:
                        rhs[s] = add(rhs.get(s, zero), mul(c, c2))
                lhs = {s: v for s, v in lhs.items() if v != zero}
                rhs = {s: v for s, v in rhs.items() if v != zero}
                if lhs != rhs:
                    failures.append(
                        "associativity fails on "
                        f"({a.labels[i]!r}, {a.labels[j]!r}, {a.labels[k]!r})"
                    )
                    break
    for i in range(n):
        e = a.basis_vector(i)
        if a.multiply(a.unit, e) != e:
            failures.append(f"left unit law fails on {a.labels[i]!r}")
            break
        if a.multiply(e, a.unit) != e:
            failures.append(f"right unit law fails on {a.labels[i]!r}")
            break
    return Report(f"algebra axioms (dim {n})", failures)


class AlgebraMap:
    """Algebra homomorphism; matrix shape (target.dim, source.dim)."""

    def __init__(self, source: FiniteAlgebra, target: FiniteAlgebra, matrix: Mat):
        same_field(source.field, target.field, matrix.field)
        if (matrix.nrows, matrix.ncols) != (target.dim, source.dim):
            raise ShapeError(
                f"map matrix is {matrix.nrows}x{matrix.ncols}, expected {target.dim}x{source.dim}"
            )
        self.source = source
        self.target = target
        self.matrix = matrix

    @classmethod
    def identity(cls, a: FiniteAlgebra) -> "AlgebraMap":
        return cls(a, a, Mat.identity(a.field, a.dim))

    def __eq__(self, other):
        return (
            isinstance(other, AlgebraMap)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __repr__(self):
        return f"AlgebraMap({self.source!r} -> {self.target!r})"

    def apply(self, vector):
        return self.matrix.apply(vector)

    def compose(self, other: "AlgebraMap") -> "AlgebraMap":
        if other.target != self.source:
            raise ShapeError("algebra maps not composable")
        return AlgebraMap(other.source, self.target, self.matrix.mul(other.matrix))

    def is_isomorphism(self) -> bool:
        return self.matrix.is_invertible()

    def is_surjective(self) -> bool:
        return self.matrix.rank() == self.target.dim


def verify_algebra_map(alpha: AlgebraMap) -> Report:
    src, tgt, mat = alpha.source, alpha.target, alpha.matrix
    field = src.field
    failures = []
    if mat.apply(src.unit) != tgt.unit:
        failures.append("unit is not preserved")
    zero = field.zero
    for i in range(src.dim):
        if failures:
            break
        img_i = mat.col(i)
        for j in range(src.dim):
            prod = [zero] * src.dim
            for k, c in src.mult[i][j]:
                prod[k] = field.add(prod[k], c)
            lhs = mat.apply(prod)
            rhs = tgt.multiply(img_i, mat.col(j))
            if lhs != rhs:
                failures.append(
                    f"multiplicativity fails on ({src.labels[i]!r}, {src.labels[j]!r})"
                )
                break
    return Report("algebra map axioms", failures)


# --- duality ---------------------------------------------------------------


def dual_algebra(c: Coalgebra) -> FiniteAlgebra:
    """Transpose of the comultiplication on the dual basis."""
    if "dual_algebra" in c._cache:
        return c._cache["dual_algebra"]
    n = c.dim
    mult = [[[] for _ in range(n)] for _ in range(n)]
    for t in range(n):
        for j, k, co in c.delta[t]:
            mult[j][k].append((t, co))
    a = FiniteAlgebra(c.field, c.labels, mult, c.counit, grading=c.grading)
    c._cache["dual_algebra"] = a
    return a


def dual_coalgebra(a: FiniteAlgebra) -> Coalgebra:
    """Transpose of the multiplication; inverse of dual_algebra on finite objects."""
    n = a.dim
    delta = [[] for _ in range(n)]
    for i in range(n):
        for j in range(n):
            for t, co in a.mult[i][j]:
                delta[t].append((i, j, co))
    hint = None
    if a.grading is not None:
        candidates = [a.basis_vector(i) for i in range(n) if a.grading[i] == 0]
        c_probe = Coalgebra(a.field, a.labels, delta, a.unit, grading=a.grading)
        if candidates and all(c_probe.is_group_like(v) for v in candidates):
            hint = candidates
    return Coalgebra(a.field, a.labels, delta, a.unit, grading=a.grading, grouplike_hint=hint)


def dual_map(rho: CoalgebraMap) -> AlgebraMap:
    """(rho: C -> D) dualizes to D* -> C* with the transposed matrix."""
    return AlgebraMap(dual_algebra(rho.target), dual_algebra(rho.source), rho.matrix.transpose())


def dual_algebra_map(alpha: AlgebraMap) -> CoalgebraMap:
    return CoalgebraMap(
        dual_coalgebra(alpha.target), dual_coalgebra(alpha.source), alpha.matrix.transpose()
    )


# --- polynomial helpers for eigen-splitting --------------------------------


def _poly_trim(field, f):
    f = list(f)
    while f and f[-1] == field.zero:
        f.pop()
    return f


def _poly_mul(field, f, g):
    if not f or not g:
        return []
    out = [field.zero] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a == field.zero:
            continue
        for j, b in enumerate(g):
            if b != field.zero:
                out[i + j] = field.add(out[i + j], field.mul(a, b))
    return _poly_trim(field, out)


def _poly_divmod(field, f, g):
    f = list(f)
    if not g:
        raise ZeroDivisionError("polynomial division by zero")
    q = [field.zero] * max(0, len(f) - len(g) + 1)
    inv_lead = field.inv(g[-1])
    while len(f) >= len(g) and _poly_trim(field, f):
        f = _poly_trim(field, f)
        if len(f) < len(g):
            break
        coeff = field.mul(f[-1], inv_lead)
        shift = len(f) - len(g)
        q[shift] = coeff
        for i, b in enumerate(g):
            f[shift + i] = field.sub(f[shift + i], field.mul(coeff, b))
        f.pop()
    return _poly_trim(field, q), _poly_trim(field, f)


def _poly_gcd(field, f, g):
    f, g = _poly_trim(field, f), _poly_trim(field, g)
    while g:
        _, r = _poly_divmod(field, f, g)
        f, g = g, r
    if f:
        inv = field.inv(f[-1])
        f = [field.mul(inv, a) for a in f]
    return f


def _poly_lcm(field, f, g):
    if not f:
        return list(g)
    if not g:
        return list(f)
    d = _poly_gcd(field, f, g)
    q, _ = _poly_divmod(field, _poly_mul(field, f, g), d)
    inv = field.inv(q[-1])
    return [field.mul(inv, a) for a in q]


def _poly_eval(field, f, x):
    acc = field.zero
    for c in reversed(f):
        acc = field.add(field.mul(acc, x), c)
    return acc


def _min_poly(field, r: Mat):
    """Minimal polynomial of a square matrix (coefficients low to high, monic)."""
    d = r.nrows
    poly = [field.one]
    for i in range(d):
        if len(poly) - 1 == d:
            break
        v = [field.zero] * d
        v[i] = field.one
        vecs = [tuple(v)]
        while True:
            w = r.apply(vecs[-1])
            k = Mat.from_cols(field, vecs, d)
            sol = k.solve(w)
            if sol is not None:
                ann = [field.neg(c) for c in sol] + [field.one]
                break
            vecs.append(w)
        poly = _poly_lcm(field, poly, ann)
    return poly


def _divisors(n: int):
    n = abs(n)
    if n > _ROOT_SCAN_LIMIT:
        raise DecompositionUndecided(
            f"eigenvalue search needs divisors of {n}, beyond the exact budget"
        )
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _rational_roots(field, poly):
    """All rational roots of a Q[x] polynomial, ascending."""
    from fractions import Fraction

    poly = _poly_trim(field, poly)
    roots = set()
    while poly and poly[0] == 0:
        roots.add(Fraction(0))
        poly = poly[1:]
    if len(poly) <= 1:
        return sorted(roots)
    denom_lcm = 1
    for c in poly:
        denom_lcm = denom_lcm * c.denominator // math.gcd(denom_lcm, c.denominator)
    ints = [int(c * denom_lcm) for c in poly]
    g = 0
    for c in ints:
        g = math.gcd(g, c)
    if g > 1:
        ints = [c // g for c in ints]
    for p in _divisors(ints[0]):
        for q in _divisors(ints[-1]):
            for cand in (Fraction(p, q), Fraction(-p, q)):
                if cand not in roots and _poly_eval(field, poly, cand) == 0:
                    roots.add(cand)
    return sorted(roots)


def _eigenvalues_in_field(field, r: Mat):
    poly = _min_poly(field, r)
    if field == QQ:
        return _rational_roots(field, poly)
    if field.p > _FP_EIGEN_LIMIT:
        raise DecompositionUndecided(f"eigenvalue scan unsupported for p > {_FP_EIGEN_LIMIT}")
    return [x for x in range(field.p) if _poly_eval(field, poly, x) == 0]


def split_commutative_idempotents(b: FiniteAlgebra):
    """Primitive orthogonal idempotents of a split semisimple commutative algebra.

    Refines common eigenspaces of the left-multiplication operators; raises
    NotPointed when the algebra is not commutative, not semisimple, or has a
    simple factor that is a proper field extension.
    """
    field = b.field
    n = b.dim
    if not b.is_commutative():
        raise NotPointed("algebra is not commutative")
    blocks = [Subspace.full(field, n)]
    for t in range(n):
        if all(w.dim == 1 for w in blocks):
            break
        op = b.left_mul_matrix(b.basis_vector(t))
        refined = []
        for w in blocks:
            if w.dim == 1:
                refined.append(w)
                continue
            cols = []
            for row in w.basis:
                coords = w.coordinates(op.apply(row))
                if coords is None:
                    raise NotPointed("multiplication operator does not preserve its block")
                cols.append(coords)
            restricted = Mat.from_cols(field, cols, w.dim)
            eigs = _eigenvalues_in_field(field, restricted)
            covered = 0
            for lam in eigs:
                shifted = restricted.sub(Mat.identity(field, w.dim).scale(lam))
                ker = shifted.kernel()
                if ker.dim == 0:
                    continue
                covered += ker.dim
                lifted = []
                for coords in ker.basis:
                    vec = [field.zero] * n
                    for coeff, row in zip(coords, w.basis):
                        if coeff != field.zero:
                            for idx, x in enumerate(row):
                                if x != field.zero:
                                    vec[idx] = field.add(vec[idx], field.mul(coeff, x))
                    lifted.append(vec)
                refined.append(Subspace.from_vectors(field, n, lifted))
            if covered < w.dim:
                raise NotPointed("semisimple part does not split into eigenspaces over k")
        blocks = refined
    if any(w.dim != 1 for w in blocks):
        raise NotPointed("common eigenspaces are not one-dimensional")
    span = Mat.from_cols(field, [w.basis[0] for w in blocks], n)
    coeffs = span.solve(b.unit)
    if coeffs is None:
        raise NotPointed("unit is outside the span of the eigen blocks")
    idems = []
    for coeff, w in zip(coeffs, blocks):
        if coeff == field.zero:
            raise NotPointed("unit has a zero component in some block")
        idems.append(tuple(field.mul(coeff, x) for x in w.basis[0]))
    for i, u in enumerate(idems):
        if b.multiply(u, u) != u:
            raise NotPointed("candidate idempotent is not idempotent")
        for v in idems[:i]:
            if not vec_is_zero(field, b.multiply(u, v)) or not vec_is_zero(field, b.multiply(v, u)):
                raise NotPointed("candidate idempotents are not orthogonal")
    total = idems[0]
    for u in idems[1:]:
        total = tuple(field.add(x, y) for x, y in zip(total, u))
    if total != b.unit:
        raise NotPointed("idempotents do not sum to the unit")

    def order_key(u):
        first = next(i for i, x in enumerate(u) if x != field.zero)
        return (first, u)

    return sorted(idems, key=order_key)


# --- ideals and radicals ----------------------------------------------------


class TwoSidedIdeal:
    """Subspace of an algebra closed under two-sided multiplication."""

    def __init__(self, algebra: FiniteAlgebra, space: Subspace, generators=()):
        self.algebra = algebra
        self.space = space
        self.generators = tuple(tuple(g) for g in generators)

    @property
    def dim(self) -> int:
        return self.space.dim

    def __repr__(self):
        return f"TwoSidedIdeal(dim {self.dim} of {self.algebra!r})"


def _space_product(a: FiniteAlgebra, s1: Subspace, s2: Subspace) -> Subspace:
    vectors = []
    for x in s1.basis:
        for y in s2.basis:
            vectors.append(a.multiply(x, y))
    return Subspace.from_vectors(a.field, a.dim, vectors)


def _is_ideal(a: FiniteAlgebra, s: Subspace) -> bool:
    for i in range(a.dim):
        e = a.basis_vector(i)
        for v in s.basis:
            if not s.contains_vector(a.multiply(e, v)):
                return False
            if not s.contains_vector(a.multiply(v, e)):
                return False
    return True


def _is_nilpotent_space(a: FiniteAlgebra, s: Subspace) -> bool:
    power = s
    for _ in range(a.dim + 1):
        if power.dim == 0:
            return True
        nxt = _space_product(a, power, s)
        if nxt == power:
            return False
        power = nxt
    return power.dim == 0


def ideal_closure(a: FiniteAlgebra, gens) -> TwoSidedIdeal:
    """Smallest subspace containing gens and closed under two-sided multiplication."""
    gens = [tuple(a.field.coerce(x) for x in g) for g in gens]
    space = Subspace.from_vectors(a.field, a.dim, gens)
    while True:
        vectors = list(space.basis)
        for i in range(a.dim):
            e = a.basis_vector(i)
            for v in space.basis:
                vectors.append(a.multiply(e, v))
                vectors.append(a.multiply(v, e))
        nxt = Subspace.from_vectors(a.field, a.dim, vectors)
        if nxt == space:
            return TwoSidedIdeal(a, space, gens)
        space = nxt


def _graded_radical_candidate(a: FiniteAlgebra):
    if a.grading is None:
        return None
    vectors = [a.basis_vector(i) for i in range(a.dim) if a.grading[i] > 0]
    return Subspace.from_vectors(a.field, a.dim, vectors)


def _quotient_is_split_semisimple(a: FiniteAlgebra, s: Subspace) -> bool:
    try:
        q, _, _ = quotient_algebra(a, s)
        split_commutative_idempotents(q)
        return True
    except (NotPointed, DecompositionUndecided):
        return False


def _dickson_kernel(a: FiniteAlgebra) -> Subspace:
    """{x : trace(L_x L_y) = 0 for all y}; equals J(A) in characteristic zero
    and always contains J(A)."""
    field = a.field
    n = a.dim
    traces = []
    for k in range(n):
        t = field.zero
        for j in range(n):
            for idx, c in a.mult[k][j]:
                if idx == j:
                    t = field.add(t, c)
        traces.append(t)
    rows = []
    for i in range(n):
        row = []
        for j in range(n):
            s = field.zero
            for k, c in a.mult[i][j]:
                if traces[k] != field.zero:
                    s = field.add(s, field.mul(c, traces[k]))
            row.append(s)
        rows.append(row)
    return Mat(field, rows, n).transpose().kernel()


def _frobenius_nilradical(a: FiniteAlgebra) -> Subspace:
    """Nilpotent elements of a commutative algebra over F_p via the linear map
    x -> x^(p^m)."""
    field = a.field
    p = field.p
    m = 0
    bound = 1
    while bound <= a.dim:
        bound *= p
        m += 1
    cols = []
    for i in range(a.dim):
        v = a.basis_vector(i)
        for _ in range(m):
            v = a.power(v, p)
        cols.append(v)
    return Mat.from_cols(field, cols, a.dim).kernel()


def _brute_force_radical(a: FiniteAlgebra, ambient: Subspace):
    """Exhaustive search of {x in ambient : the ideal (x) is nilpotent}."""
    field = a.field
    p = field.p
    if a.dim > _BRUTE_DIM_LIMIT or p ** ambient.dim > _BRUTE_SPACE_LIMIT:
        raise RadicalUndecided(
            "no sound radical method applies: algebra is ungraded, noncommutative, "
            f"over F_{p}, and too large for exhaustive search"
        )
    found: list = []
    span = Subspace.zero(field, a.dim)
    coeffs = [0] * ambient.dim
    total = p**ambient.dim
    for counter in range(1, total):
        k = counter
        for idx in range(ambient.dim):
            coeffs[idx] = k % p
            k //= p
        vec = [field.zero] * a.dim
        for coeff, row in zip(coeffs, ambient.basis):
            if coeff:
                for t, x in enumerate(row):
                    if x != field.zero:
                        vec[t] = field.add(vec[t], field.mul(coeff, x))
        vec = tuple(vec)
        if span.contains_vector(vec):
            continue
        power = vec
        nilpotent = False
        for _ in range(a.dim + 1):
            power = a.multiply(power, vec)
            if vec_is_zero(field, power):
                nilpotent = True
                break
        if not nilpotent:
            continue
        if _is_nilpotent_space(a, ideal_closure(a, [vec]).space):
            found.append(vec)
            span = Subspace.from_vectors(field, a.dim, found)
    return span


def radical(a: FiniteAlgebra) -> TwoSidedIdeal:
    """The Jacobson radical, always returned with a correctness certificate.

    Every candidate is confirmed to be a nilpotent two-sided ideal before it
    is accepted; completeness is certified either by a split semisimple
    quotient, by characteristic zero, by commutativity, or by the candidate
    being the (always radical-containing) trace-form kernel.
    """
    if "radical" in a._cache:
        return a._cache["radical"]
    field = a.field
    result = None
    graded = _graded_radical_candidate(a)
    if graded is not None and _is_ideal(a, graded) and _is_nilpotent_space(a, graded):
        if _quotient_is_split_semisimple(a, graded):
            result = graded
    if result is None:
        if field == QQ:
            result = _dickson_kernel(a)
            if not (_is_ideal(a, result) and _is_nilpotent_space(a, result)):
                raise AdjqError("trace-form radical failed its certificate over Q (bug)")
        elif a.is_commutative():
            result = _frobenius_nilradical(a)
            if not (_is_ideal(a, result) and _is_nilpotent_space(a, result)):
                raise AdjqError("Frobenius nilradical failed its certificate (bug)")
        else:
            trace_kernel = _dickson_kernel(a)
            if _is_ideal(a, trace_kernel) and _is_nilpotent_space(a, trace_kernel):
                result = trace_kernel
            else:
                result = _brute_force_radical(a, trace_kernel)
                if not (_is_ideal(a, result) and _is_nilpotent_space(a, result)):
                    raise AdjqError("brute-force radical failed its certificate (bug)")
    ideal = TwoSidedIdeal(a, result, result.basis)
    a._cache["radical"] = ideal
    return ideal


def radical_power(a: FiniteAlgebra, n: int) -> TwoSidedIdeal:
    """J^n as the span of n-fold products of radical elements."""
    if n < 0:
        raise InputError("radical power needs n >= 0")
    if n == 0:
        return TwoSidedIdeal(a, Subspace.full(a.field, a.dim), [a.unit])
    jac = radical(a)
    space = jac.space
    for _ in range(n - 1):
        if space.dim == 0:
            break
        space = _space_product(a, space, jac.space)
    return TwoSidedIdeal(a, space, space.basis)


def is_relation_ideal(i: TwoSidedIdeal) -> bool:
    return radical_power(i.algebra, 2).space.contains(i.space)


def algebra_is_pointed(a: FiniteAlgebra) -> bool:
    try:
        pointed_data(a)
        return True
    except NotPointed:
        return False


def pointed_data(a: FiniteAlgebra):
    """(radical, quotient algebra, projection, section, quotient idempotents)."""
    if "pointed" not in a._cache:
        jac = radical(a)
        q, proj, sect = quotient_algebra(a, jac.space)
        idems = split_commutative_idempotents(q)
        a._cache["pointed"] = (jac, q, proj, sect, idems)
    return a._cache["pointed"]


def quotient_algebra(a: FiniteAlgebra, s: Subspace):
    """Quotient by a two-sided ideal subspace: (algebra, projection, section).

    The quotient basis is the coordinate complement of s, so the section
    sends quotient basis vectors to the corresponding ambient coordinates.
    """
    if s.ambient != a.dim:
        raise ShapeError("ideal subspace does not live in the algebra")
    field = a.field
    proj = s.quotient_matrix()
    q_dim = proj.nrows
    if q_dim == 0:
        raise InputError("quotient by the whole algebra is zero; not a unital algebra")
    pivot_set = set(s.pivots)
    free = [c for c in range(a.dim) if c not in pivot_set]
    sect_cols = []
    for c in free:
        sect_cols.append(a.basis_vector(c))
    sect = Mat.from_cols(field, sect_cols, a.dim)
    mult = [[None] * q_dim for _ in range(q_dim)]
    for i, ci in enumerate(free):
        for j, cj in enumerate(free):
            prod = [field.zero] * a.dim
            for k, c in a.mult[ci][cj]:
                prod[k] = field.add(prod[k], c)
            coords = proj.apply(prod)
            mult[i][j] = tuple((t, x) for t, x in enumerate(coords) if x != field.zero)
    unit_q = proj.apply(a.unit)
    grading = None
    if a.grading is not None:
        components = {}
        for idx in range(a.dim):
            components.setdefault(a.grading[idx], []).append(a.basis_vector(idx))
        hom_dim = 0
        for vecs in components.values():
            layer = Subspace.from_vectors(field, a.dim, vecs)
            hom_dim += s.intersect(layer).dim
        if hom_dim == s.dim:
            grading = tuple(a.grading[c] for c in free)
    labels = tuple(a.labels[c] for c in free)
    q = FiniteAlgebra(field, labels, mult, unit_q, grading=grading)
    return q, proj, sect


def minimal_generator_degrees(ideal: TwoSidedIdeal) -> set:
    """Degrees where I/(I.J + J.I) has a nonzero graded component."""
    a = ideal.algebra
    if a.grading is None:
        raise NotHomogeneous("parent algebra carries no grading")
    field = a.field
    layers = {}
    for idx, d in enumerate(a.grading):
        layers.setdefault(d, []).append(a.basis_vector(idx))
    layer_spaces = {d: Subspace.from_vectors(field, a.dim, vs) for d, vs in layers.items()}
    comps = {d: ideal.space.intersect(sp) for d, sp in layer_spaces.items()}
    if sum(c.dim for c in comps.values()) != ideal.space.dim:
        raise NotHomogeneous("ideal is not the sum of its graded components")
    if not is_relation_ideal(ideal):
        raise NotRelationIdeal("ideal is not contained in J^2")
    jac = radical(a)
    boundary = _space_product(a, ideal.space, jac.space).sum(
        _space_product(a, jac.space, ideal.space)
    )
    out = set()
    for d, comp in comps.items():
        if comp.dim > boundary.intersect(layer_spaces[d]).dim:
            out.add(d)
    return out


def alg_congruent(alpha: AlgebraMap, beta: AlgebraMap) -> bool:
    """(alpha-beta)(A) <= J(B) and (alpha-beta)(J(A)) <= J^2(B), exactly."""
    if alpha.source != beta.source or alpha.target != beta.target:
        raise ShapeError("maps must share source and target")
    diff = alpha.matrix.sub(beta.matrix)
    jb = radical(alpha.target).space
    for j in range(diff.ncols):
        if not jb.contains_vector(diff.col(j)):
            return False
    ja = radical(alpha.source).space
    j2b = radical_power(alpha.target, 2).space
    for v in ja.basis:
        if not j2b.contains_vector(diff.apply(v)):
            return False
    return True


# --- idempotent lifting -----------------------------------------------------


def lift_orthogonal_idempotents(a: FiniteAlgebra):
    """Complete orthogonal idempotents of A lifting those of A/J(A).

    Deterministic: quotient idempotents are lifted one at a time inside the
    corner (1-F)A(1-F) by iterating x -> 3x^2 - 2x^3, which squares the
    defect x^2 - x in each step; the last idempotent is 1 - (sum of the
    others).
    """
    from .errors import SplittingObstruction

    field = a.field
    jac, q, proj, sect, idems_q = pointed_data(a)
    n = a.dim
    zero_vec = tuple([field.zero] * n)
    lifted = []
    f_sum = zero_vec
    three = field.coerce(3)
    two = field.coerce(2)
    for count, e_bar in enumerate(idems_q):
        if count == len(idems_q) - 1:
            x = tuple(field.sub(u, v) for u, v in zip(a.unit, f_sum))
        else:
            naive = sect.apply(e_bar)
            corner = tuple(field.sub(u, v) for u, v in zip(a.unit, f_sum))
            x = a.multiply(a.multiply(corner, naive), corner)
            steps = 0
            while a.multiply(x, x) != x:
                steps += 1
                if steps > n + 4:
                    raise SplittingObstruction("idempotent lifting did not converge")
                x2 = a.multiply(x, x)
                x3 = a.multiply(x2, x)
                x = tuple(
                    field.sub(field.mul(three, u), field.mul(two, v)) for u, v in zip(x2, x3)
                )
        if a.multiply(x, x) != x:
            raise SplittingObstruction("lifted element is not idempotent")
        if tuple(proj.apply(x)) != tuple(e_bar):
            raise SplittingObstruction("lifted idempotent does not reduce correctly")
        for prev in lifted:
            if not vec_is_zero(field, a.multiply(x, prev)) or not vec_is_zero(
                field, a.multiply(prev, x)
            ):
                raise SplittingObstruction("lifted idempotents are not orthogonal")
        lifted.append(x)
        f_sum = tuple(field.add(u, v) for u, v in zip(f_sum, x))
    if f_sum != a.unit:
        raise SplittingObstruction("lifted idempotents do not sum to one")
    return lifted


# --- truncated path algebras -------------------------------------------------


class TruncatedPathAlgebra(FiniteAlgebra):
    """k<<Q>>/J^(N+1): basis the paths of length <= N, product concatenation."""

    def __init__(self, kquiver, field, bound: int, max_dim=None):
        from .quiver import enumerate_paths

        if bound < 0:
            raise InputError("truncation bound must be >= 0")
        paths = enumerate_paths(kquiver, bound, limit=max_dim)
        index = {(p.names, p.source): i for i, p in enumerate(paths)}
        from .quiver import path_labels

        labels = path_labels(kquiver, paths)
        one = field.one
        n = len(paths)
        mult = [[() for _ in range(n)] for _ in range(n)]
        for i, p in enumerate(paths):
            for j, q in enumerate(paths):
                if p.source != q.target:
                    continue
                if p.length + q.length > bound:
                    continue
                mult[i][j] = ((index[(p.names + q.names, q.source)], one),)
        unit = [one if p.length == 0 else field.zero for p in paths]
        super().__init__(field, labels, mult, unit, grading=tuple(p.length for p in paths))
        self.kquiver = kquiver
        self.bound = bound
        self.paths = tuple(paths)
        self._path_index = index

    def path_index(self, names, source) -> int:
        return self._path_index[(tuple(names), source)]


def truncated_path_algebra(q, field, bound: int, max_dim=None) -> TruncatedPathAlgebra:
    """Truncated path algebra of a quiver or k-quiver."""
    from .quiver import Quiver, to_kquiver

    kq = to_kquiver(q) if isinstance(q, Quiver) else q
    return TruncatedPathAlgebra(kq, field, bound, max_dim=max_dim)


def path_algebra_duality(q, field, bound: int):
    """(truncated path algebra, dual of the path coalgebra, iso matrix).

    The two share the path basis, so the isomorphism is the identity matrix;
    it is checked entry by entry against both multiplication tables.
    """
    from .adjunction import path_coalgebra
    from .quiver import Quiver, to_kquiver

    kq = to_kquiver(q) if isinstance(q, Quiver) else q
    tpa = truncated_path_algebra(kq, field, bound)
    dual = dual_algebra(path_coalgebra(kq, field, bound))
    if dual.labels != tpa.labels:
        raise AdjqError("path algebra and dual path coalgebra bases disagree (bug)")
    iso = Mat.identity(field, tpa.dim)
    if dual.mult != tpa.mult or dual.unit != tpa.unit:
        raise AdjqError("dual of the path coalgebra differs from the path algebra (bug)")
    return tpa, dual, iso


# --- pairs and the tensor algebra -------------------------------------------


class AlgebraPair:
    """(split semisimple pointed algebra, bimodule) with explicit actions."""

    def __init__(self, algebra: FiniteAlgebra, dim: int, left, right, labels=None):
        self.algebra = algebra
        self.dim = dim
        self.left = tuple(left)
        self.right = tuple(right)
        if len(self.left) != algebra.dim or len(self.right) != algebra.dim:
            raise ShapeError("need one action matrix per algebra basis element")
        for mat in self.left + self.right:
            if (mat.nrows, mat.ncols) != (dim, dim):
                raise ShapeError("action matrices must be square of the bimodule dimension")
        self.labels = tuple(labels) if labels is not None else tuple(f"u{i}" for i in range(dim))

    @property
    def field(self):
        return self.algebra.field

    def left_action(self, vec) -> Mat:
        out = Mat.zeros(self.field, self.dim, self.dim)
        for i, x in enumerate(vec):
            if x != self.field.zero:
                out = out.add(self.left[i].scale(x))
        return out

    def right_action(self, vec) -> Mat:
        out = Mat.zeros(self.field, self.dim, self.dim)
        for i, x in enumerate(vec):
            if x != self.field.zero:
                out = out.add(self.right[i].scale(x))
        return out


def verify_pair(p: AlgebraPair) -> Report:
    """J(A)=0 plus the bimodule axioms, all exact."""
    failures = []
    if radical(p.algebra).dim != 0:
        failures.append("base algebra is not semisimple")
    a = p.algebra
    eye = Mat.identity(p.field, p.dim)
    if p.dim:
        if p.left_action(a.unit) != eye:
            failures.append("left unit action is not the identity")
        if p.right_action(a.unit) != eye:
            failures.append("right unit action is not the identity")
    for i in range(a.dim):
        if failures:
            break
        li = p.left[i]
        ri = p.right[i]
        for j in range(a.dim):
            prod = [p.field.zero] * a.dim
            for k, c in a.mult[i][j]:
                prod[k] = p.field.add(prod[k], c)
            if p.left_action(prod) != li.mul(p.left[j]):
                failures.append(f"left action not multiplicative on ({i},{j})")
                break
            if p.right_action(prod) != p.right[j].mul(ri):
                failures.append(f"right action not anti-compatible on ({i},{j})")
                break
            if p.left[i].mul(p.right[j]) != p.right[j].mul(p.left[i]):
                failures.append(f"left and right actions do not commute on ({i},{j})")
                break
    return Report("algebra pair axioms", failures)


def pair_of_algebra(a: FiniteAlgebra) -> AlgebraPair:
    """(A/J, J/J^2) with the induced actions, on deterministic bases.

    The semisimple quotient is rewritten on its primitive idempotent basis,
    so its multiplication table is diagonal.
    """
    jac, q, proj, sect, idems_q = pointed_data(a)
    field = a.field
    m = len(idems_q)
    diag_mult = [
        [((i, field.one),) if i == j else () for j in range(m)] for i in range(m)
    ]
    base = FiniteAlgebra(
        field, tuple(f"v{i}" for i in range(m)), diag_mult, [field.one] * m
    )
    j2 = radical_power(a, 2)
    u_basis = j2.space.complement_in(jac.space)
    lifted = [sect.apply(e) for e in idems_q]
    left = []
    right = []
    for e in lifted:
        lcols = []
        rcols = []
        for row in u_basis.basis:
            img = a.multiply(e, row)
            lcols.append(_class_coords(field, j2.space, u_basis, img))
            img = a.multiply(row, e)
            rcols.append(_class_coords(field, j2.space, u_basis, img))
        left.append(Mat.from_cols(field, lcols, u_basis.dim))
        right.append(Mat.from_cols(field, rcols, u_basis.dim))
    labels = []
    for r, row in enumerate(u_basis.basis):
        idx = _coordinate_index_vec(field, row)
        labels.append(a.labels[idx] if idx is not None else f"u{r}")
    if len(set(labels)) != len(labels):
        labels = [f"u{r}" for r in range(u_basis.dim)]
    return AlgebraPair(base, u_basis.dim, left, right, labels)


def _coordinate_index_vec(field, vec):
    idx = None
    for i, x in enumerate(vec):
        if x == field.zero:
            continue
        if x != field.one or idx is not None:
            return None
        idx = i
    return idx


def _class_coords(field, sub: Subspace, comp: Subspace, vec):
    """Coordinates of (vec mod sub) in the complement basis."""
    residue = sub.reduce(vec)
    coords = comp.coordinates(residue)
    if coords is None:
        raise ShapeError("vector is not in the expected sum of subspaces")
    return coords


def tensor_algebra(p: AlgebraPair, bound: int) -> TruncatedPathAlgebra:
    """Truncation of the tensor algebra of the pair: concatenation product on
    chains of Peirce-component basis elements."""
    from .quiver import KQuiver

    field = p.field
    check = verify_pair(p)
    if not check.ok:
        raise InputError(f"pair fails its axioms: {check.failures[0]}")
    idems = split_commutative_idempotents(p.algebra)
    m = len(idems)
    eye = Mat.identity(field, p.dim)
    spaces = {}
    used = set()
    total = 0
    for gi in range(m):
        rg = p.right_action(idems[gi])
        for hi in range(m):
            lh = p.left_action(idems[hi])
            fixed_l = lh.sub(eye)
            fixed_r = rg.sub(eye)
            stacked = Mat(field, list(fixed_l.rows) + list(fixed_r.rows), p.dim)
            comp = stacked.kernel()
            if comp.dim == 0:
                continue
            names = []
            for r, row in enumerate(comp.basis):
                idx = _coordinate_index_vec(field, row)
                name = p.labels[idx] if idx is not None else None
                if name is None or name in used:
                    name = f"t{gi}.{hi}.{r}"
                used.add(name)
                names.append(name)
            spaces[(f"v{gi}", f"v{hi}")] = tuple(names)
            total += comp.dim
    if total != p.dim:
        raise InputError("bimodule does not decompose into Peirce components")
    kq = KQuiver(tuple(f"v{i}" for i in range(m)), spaces)
    return TruncatedPathAlgebra(kq, field, bound)
