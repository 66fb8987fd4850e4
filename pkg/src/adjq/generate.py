"""Seeded random instances for the property suites and the fuzz command.

Everything takes an explicit random.Random so that a seed reproduces the
exact run.
"""

from __future__ import annotations

import random
from fractions import Fraction

from .adjunction import PathCoalgebra, lift_kquiver_map, path_coalgebra
from .algebra import AlgebraMap, TruncatedPathAlgebra, dual_algebra, truncated_path_algebra
from .coalgebra import CoalgebraMap, verify_coalgebra_map
from .errors import AdjqError, InputError
from .fields import QQ, PrimeField
from .linalg import Mat
from .quiver import KQuiver, KQuiverMap, Quiver, enumerate_paths, to_kquiver

ARROW_NAMES = "abcdefghijklmnop"


def random_quiver(rng: random.Random, max_vertices=4, max_arrows=5) -> Quiver:
    nv = rng.randint(1, max_vertices)
    vertices = [str(i + 1) for i in range(nv)]
    na = rng.randint(0, max_arrows)
    arrows = [(ARROW_NAMES[i], rng.choice(vertices), rng.choice(vertices)) for i in range(na)]
    return Quiver(vertices, arrows)


def bounded_quiver(
    rng: random.Random,
    degree: int,
    dim_cap: int = 24,
    max_vertices: int = 4,
    max_arrows: int = 5,
    need_length: int | None = None,
) -> tuple[Quiver, KQuiver]:
    """Random quiver whose path count at the degree stays under the cap."""
    while True:
        q = random_quiver(rng, max_vertices, max_arrows)
        kq = to_kquiver(q)
        try:
            paths = enumerate_paths(kq, degree, limit=dim_cap)
        except InputError:
            continue
        if need_length is not None and not any(p.length == need_length for p in paths):
            continue
        return q, kq


def random_scalar(rng: random.Random, field, nonzero=False):
    if field == QQ:
        pool = [Fraction(k) for k in (-2, -1, 0, 0, 1, 1, 2, 3)] + [Fraction(1, 2)]
    else:
        pool = [x % field.p for x in range(-1, field.p)]
    x = field.coerce(rng.choice(pool))
    while nonzero and x == field.zero:
        x = field.coerce(rng.choice(pool))
    return x


def random_matrix(rng: random.Random, field, nrows, ncols) -> Mat:
    return Mat(
        field,
        [[random_scalar(rng, field) for _ in range(ncols)] for _ in range(nrows)],
        ncols,
    )


def random_invertible(rng: random.Random, field, n) -> Mat:
    if n == 0:
        return Mat.zeros(field, 0, 0)
    while True:
        m = random_matrix(rng, field, n, n)
        if m.is_invertible():
            return m


def random_kquiver_map(rng: random.Random, src: KQuiver, tgt: KQuiver, field) -> KQuiverMap:
    vm = {v: rng.choice(tgt.vertices) for v in src.vertices}
    blocks = {}
    for (g, h), names in src.spaces.items():
        rows = tgt.dim(vm[g], vm[h])
        if rows:
            blocks[(g, h)] = random_matrix(rng, field, rows, len(names))
    return KQuiverMap(src, tgt, vm, blocks, field)


def random_kquiver_auto(rng: random.Random, kq: KQuiver, field) -> KQuiverMap:
    """Graded automorphism: identity on vertices, invertible block per pair."""
    blocks = {
        pair: random_invertible(rng, field, len(names)) for pair, names in kq.spaces.items()
    }
    return KQuiverMap(kq, kq, {v: v for v in kq.vertices}, blocks, field)


def random_unipotent_conjugation(rng: random.Random, pc: PathCoalgebra) -> CoalgebraMap:
    """Coalgebra automorphism ~ id: transpose of conjugation by 1 + (radical
    element) on the dual truncated path algebra."""
    field = pc.field
    a = dual_algebra(pc)
    j_elt = [field.zero] * a.dim
    for i in range(a.dim):
        if pc.grading[i] > 0 and rng.random() < 0.5:
            j_elt[i] = random_scalar(rng, field)
    u = tuple(field.add(x, y) for x, y in zip(a.unit, j_elt))
    lu = a.left_mul_matrix(u)
    u_inv = lu.solve(a.unit)
    if u_inv is None:
        raise AdjqError("unipotent element failed to invert (bug)")
    conj = lu.mul(a.right_mul_matrix(u_inv))
    rho = CoalgebraMap(pc, pc, conj.transpose())
    check = verify_coalgebra_map(rho)
    if not check.ok:
        raise AdjqError(f"conjugation transpose is not a coalgebra map: {check.failures[0]}")
    return rho


def random_substitution_algebra_auto(rng: random.Random, tpa: TruncatedPathAlgebra) -> AlgebraMap:
    """Unipotent substitution x -> x + (element of e_h J^2 e_g), extended
    multiplicatively over the path basis."""
    field = tpa.field
    arrow_images = {}
    for i, p in enumerate(tpa.paths):
        if p.length != 1:
            continue
        img = list(tpa.basis_vector(i))
        for j, q in enumerate(tpa.paths):
            if q.length >= 2 and q.source == p.source and q.target == p.target:
                if rng.random() < 0.4:
                    img[j] = field.add(img[j], random_scalar(rng, field))
        arrow_images[i] = tuple(img)
    cols = []
    for i, p in enumerate(tpa.paths):
        if p.length == 0:
            cols.append(tpa.basis_vector(i))
        elif p.length == 1:
            cols.append(arrow_images[i])
        else:
            acc = None
            for name in p.names:
                idx = tpa.path_index((name,), tpa.kquiver.pair_of(name)[0])
                vec = arrow_images[idx]
                acc = vec if acc is None else tpa.multiply(acc, vec)
            cols.append(acc)
    return AlgebraMap(tpa, tpa, Mat.from_cols(field, cols, tpa.dim))


def random_graded_algebra_auto(rng: random.Random, tpa: TruncatedPathAlgebra) -> AlgebraMap:
    """Graded automorphism of the path algebra induced by invertible maps on
    the arrow spaces (vertices fixed)."""
    field = tpa.field
    phi = random_kquiver_auto(rng, tpa.kquiver, field)
    cols = []
    for p in tpa.paths:
        if p.length == 0:
            cols.append(tpa.basis_vector(tpa.path_index((), p.source)))
            continue
        images = {(): field.one}
        for name in p.names:
            g, h = tpa.kquiver.pair_of(name)
            block = phi.blocks[(g, h)]
            pos = tpa.kquiver.basis(g, h).index(name)
            bcol = block.col(pos)
            names_t = tpa.kquiver.basis(g, h)
            nxt = {}
            for acc, co in images.items():
                for r, x in enumerate(bcol):
                    if x != field.zero:
                        key = acc + (names_t[r],)
                        nxt[key] = field.add(nxt.get(key, field.zero), field.mul(co, x))
            images = nxt
        col = [field.zero] * tpa.dim
        for names, co in images.items():
            col[tpa.path_index(names, p.source)] = co
        cols.append(col)
    return AlgebraMap(tpa, tpa, Mat.from_cols(field, cols, tpa.dim))


def random_congruent_pair(rng: random.Random, field, degree: int, dim_cap: int = 20):
    """(rho, gamma, source pc, target pc) with rho ~ gamma guaranteed."""
    _, src_kq = bounded_quiver(rng, degree, dim_cap)
    _, tgt_kq = bounded_quiver(rng, degree, dim_cap)
    src_pc = path_coalgebra(src_kq, field, degree)
    tgt_pc = path_coalgebra(tgt_kq, field, degree)
    phi = random_kquiver_map(rng, src_kq, tgt_kq, field)
    base = lift_kquiver_map(phi, degree, source_pc=src_pc, target_pc=tgt_pc)
    unip = random_unipotent_conjugation(rng, tgt_pc)
    rho = unip.compose(base)
    return rho, base, src_pc, tgt_pc


def random_field(rng: random.Random):
    return rng.choice([QQ, PrimeField(2), PrimeField(3)])


def random_homogeneous_ideal(rng: random.Random, tpa: TruncatedPathAlgebra, degree: int):
    """Generators: 1-3 random nonzero combinations of degree-n paths."""
    field = tpa.field
    slots = [i for i, p in enumerate(tpa.paths) if p.length == degree]
    if not slots:
        raise InputError(f"quiver has no paths of length {degree}")
    gens = []
    for _ in range(rng.randint(1, 3)):
        vec = [field.zero] * tpa.dim
        for i in slots:
            if rng.random() < 0.6:
                vec[i] = random_scalar(rng, field)
        if any(x != field.zero for x in vec):
            gens.append(tuple(vec))
    if not gens:
        vec = [field.zero] * tpa.dim
        vec[slots[0]] = field.one
        gens.append(tuple(vec))
    return gens
