"""Seeded property suites: the machine-checkable content of the theory.

Each suite returns a dict with the instance count, failures, and the stats
the structured CLI report prints.  All randomness flows from the seed.
"""

from __future__ import annotations

import itertools
import random
from fractions import Fraction

from .adjunction import (
    PathCoalgebra,
    check_triangle_identities,
    coalg_congruent,
    counit_map,
    gabriel_kquiver,
    invert_mod_congruence,
    is_admissible,
    lift_kquiver_map,
    path_coalgebra,
    unit_map,
)
from .algebra import (
    AlgebraMap,
    alg_congruent,
    dual_map,
    ideal_closure,
    minimal_generator_degrees,
    path_algebra_duality,
    truncated_path_algebra,
)
from .coalgebra import CoalgebraMap, coradical_filtration, verify_coalgebra_map
from .fields import QQ, PrimeField
from .generate import (
    bounded_quiver,
    random_congruent_pair,
    random_graded_algebra_auto,
    random_homogeneous_ideal,
    random_kquiver_map,
    random_matrix,
    random_substitution_algebra_auto,
    random_unipotent_conjugation,
)
from .linalg import Mat, Subspace, preimage, vec_is_zero
from .quiver import KQuiver, Quiver, kmap_is_iso, to_kquiver


def suite_triangle(seed: int, count: int, dmax: int = 4, dim_cap: int = 22) -> dict:
    """Counit-unit equations on random quivers over Q and F_3; also checks
    counit isomorphism and unit injectivity plus admissibility."""
    rng = random.Random(seed)
    failures = []
    fields = [QQ, PrimeField(3)]
    for i in range(count):
        field = fields[i % 2]
        d = rng.randint(1, dmax)
        _, kq = bounded_quiver(rng, d, dim_cap)
        pc = path_coalgebra(kq, field, d)
        rep = check_triangle_identities(pc, kq, d)
        if not rep.ok:
            failures.append(f"instance {i}: {rep.failures}")
            continue
        eta = unit_map(pc, d)
        if not is_admissible(eta):
            failures.append(f"instance {i}: unit image is not admissible")
        if not kmap_is_iso(counit_map(kq, field, d, pc=pc)):
            failures.append(f"instance {i}: counit is not an isomorphism")
    return {"suite": "triangle", "instances": count, "failures": failures}


def suite_congruence_propagation(seed: int, count: int, dmax: int = 3) -> dict:
    """rho ~ gamma forces (rho-gamma)(C_i) <= D_(i-1) for every i."""
    rng = random.Random(seed)
    failures = []
    fields = [QQ, PrimeField(3), PrimeField(2)]
    for i in range(count):
        field = fields[i % 3]
        d = rng.randint(1, dmax)
        rho, gamma, src, tgt = random_congruent_pair(rng, field, d)
        if not coalg_congruent(rho, gamma):
            failures.append(f"instance {i}: constructed pair is not congruent")
            continue
        filt_c = coradical_filtration(src)
        filt_d = coradical_filtration(tgt)
        diff = rho.matrix.sub(gamma.matrix)
        for level, ci in enumerate(filt_c):
            if level == 0:
                target_space = Subspace.zero(field, tgt.dim)
            else:
                target_space = filt_d[min(level - 1, len(filt_d) - 1)]
            for v in ci.basis:
                if not target_space.contains_vector(diff.apply(v)):
                    failures.append(f"instance {i}: propagation fails at level {level}")
                    break
            else:
                continue
            break
    return {"suite": "congruence-propagation", "instances": count, "failures": failures}


def suite_reflect_isomorphisms(seed: int, count: int, dmax: int = 3) -> dict:
    """Unipotent-type endomorphisms congruent to id invert exactly via the
    alternating-sum recursion."""
    rng = random.Random(seed)
    failures = []
    fields = [QQ, PrimeField(3), PrimeField(2)]
    for i in range(count):
        field = fields[i % 3]
        d = rng.randint(1, dmax)
        _, kq = bounded_quiver(rng, d, 20)
        pc = path_coalgebra(kq, field, d)
        rho = random_unipotent_conjugation(rng, pc)
        if i % 2:
            tpa = truncated_path_algebra(kq, field, d)
            subst = random_substitution_algebra_auto(rng, tpa)
            dual_subst = CoalgebraMap(pc, pc, subst.matrix.transpose())
            if not verify_coalgebra_map(dual_subst).ok:
                failures.append(f"instance {i}: substitution dual is not a coalgebra map")
                continue
            rho = rho.compose(dual_subst)
        ident = CoalgebraMap.identity(pc)
        if not coalg_congruent(rho, ident):
            failures.append(f"instance {i}: sample is not congruent to id")
            continue
        inv = invert_mod_congruence(rho)
        eye = Mat.identity(field, pc.dim)
        if rho.matrix.mul(inv.matrix) != eye or inv.matrix.mul(rho.matrix) != eye:
            failures.append(f"instance {i}: inverse is not two-sided")
    return {"suite": "reflect-isomorphisms", "instances": count, "failures": failures}


def suite_duality(seed: int, count: int, dmax: int = 3) -> dict:
    """Path algebra = dual of path coalgebra, and congruence matches under
    dualization on sampled pairs."""
    rng = random.Random(seed)
    failures = []
    fields = [QQ, PrimeField(3), PrimeField(2)]
    quiver_checks = max(10, count // 10)
    for i in range(quiver_checks):
        field = fields[i % 3]
        d = rng.randint(1, dmax)
        _, kq = bounded_quiver(rng, d, 22)
        try:
            path_algebra_duality(kq, field, d)
        except Exception as exc:  # pragma: no cover - failure surface
            failures.append(f"duality instance {i}: {exc}")
    for i in range(count):
        field = fields[i % 3]
        d = rng.randint(1, dmax)
        if i % 2 == 0:
            rho, gamma, src, tgt = random_congruent_pair(rng, field, d)
        else:
            _, src_kq = bounded_quiver(rng, d, 18)
            _, tgt_kq = bounded_quiver(rng, d, 18)
            src = path_coalgebra(src_kq, field, d)
            tgt = path_coalgebra(tgt_kq, field, d)
            rho = lift_kquiver_map(
                random_kquiver_map(rng, src_kq, tgt_kq, field), d, source_pc=src, target_pc=tgt
            )
            gamma = lift_kquiver_map(
                random_kquiver_map(rng, src_kq, tgt_kq, field), d, source_pc=src, target_pc=tgt
            )
        lhs = coalg_congruent(rho, gamma)
        rhs = alg_congruent(dual_map(rho), dual_map(gamma))
        if lhs != rhs:
            failures.append(f"pair instance {i}: coalgebra side {lhs}, algebra side {rhs}")
        if i % 2 == 0 and not lhs:
            failures.append(f"pair instance {i}: constructed congruent pair reported incongruent")
    return {
        "suite": "duality",
        "instances": count + quiver_checks,
        "failures": failures,
    }


def suite_degree_theorem(seed: int, count: int, bound_max: int = 5) -> dict:
    """Minimal generator degrees of homogeneous relation ideals survive
    automorphisms of the truncated path algebra."""
    rng = random.Random(seed)
    failures = []
    fields = [QQ, PrimeField(3), PrimeField(2)]
    # the quadratic-presentation instance: two loops, commutator ideal
    two_loops = Quiver(["1"], [("x", "1", "1"), ("y", "1", "1")])
    tpa0 = truncated_path_algebra(two_loops, QQ, 3)
    xy = tpa0.index("xy")
    yx = tpa0.index("yx")
    comm = [Fraction(0)] * tpa0.dim
    comm[xy] = Fraction(1)
    comm[yx] = Fraction(-1)
    ideal0 = ideal_closure(tpa0, [tuple(comm)])
    base_degrees = minimal_generator_degrees(ideal0)
    aut0 = random_substitution_algebra_auto(rng, tpa0).compose(
        random_graded_algebra_auto(rng, tpa0)
    )
    moved0 = ideal_closure(tpa0, [aut0.apply(g) for g in ideal0.generators])
    if base_degrees != {2} or minimal_generator_degrees(moved0) != {2}:
        failures.append("quadratic-presentation instance: degrees not preserved")
    done = 0
    while done < count:
        field = fields[done % 3]
        n = rng.choice([2, 3])
        bound = rng.randint(n, bound_max)
        q, kq = bounded_quiver(rng, bound, 26, need_length=n)
        tpa = truncated_path_algebra(kq, field, bound)
        gens = random_homogeneous_ideal(rng, tpa, n)
        ideal = ideal_closure(tpa, gens)
        degrees = minimal_generator_degrees(ideal)
        auto = random_substitution_algebra_auto(rng, tpa).compose(
            random_graded_algebra_auto(rng, tpa)
        )
        moved = ideal_closure(tpa, [auto.apply(g) for g in ideal.generators])
        try:
            moved_degrees = minimal_generator_degrees(moved)
        except Exception as exc:
            failures.append(f"instance {done}: transported ideal rejected: {exc}")
            done += 1
            continue
        if moved_degrees != degrees:
            failures.append(f"instance {done}: degrees {degrees} became {moved_degrees}")
        done += 1
    return {"suite": "degree-theorem", "instances": count + 1, "failures": failures}


def suite_kronecker_count(expected: int = 6) -> dict:
    """Exhaustive count of congruence classes of automorphisms of the
    Kronecker path coalgebra over F_2 with a 2-dimensional arrow space.

    Candidates are cut down by the theorem that coalgebra maps preserve the
    coradical: columns at group-likes may not have arrow components.
    """
    field = PrimeField(2)
    kron = KQuiver(["1", "2"], {("1", "2"): ("x", "y")})
    pc = path_coalgebra(kron, field, 1)
    n = pc.dim
    autos = []
    stationary = [i for i, p in enumerate(pc.paths) if p.length == 0]
    arrows = [i for i, p in enumerate(pc.paths) if p.length == 1]
    free_slots = []
    for j in range(n):
        for i in range(n):
            if j in stationary and i in arrows:
                continue
            free_slots.append((i, j))
    for bits in itertools.product((0, 1), repeat=len(free_slots)):
        entries = [[0] * n for _ in range(n)]
        for (i, j), bit in zip(free_slots, bits):
            entries[i][j] = bit
        mat = Mat(field, entries, n)
        if not mat.is_invertible():
            continue
        rho = CoalgebraMap(pc, pc, mat)
        if verify_coalgebra_map(rho).ok:
            autos.append(rho)
    classes: list[CoalgebraMap] = []
    for rho in autos:
        if not any(coalg_congruent(rho, rep) for rep in classes):
            classes.append(rho)
    failures = []
    if len(classes) != expected:
        failures.append(f"found {len(classes)} classes, expected {expected}")
    return {
        "suite": "kronecker-count",
        "instances": len(autos),
        "classes": len(classes),
        "failures": failures,
    }


# --- brute-force oracle for the exact kernel ---------------------------------


def _all_vectors(field, n):
    return [tuple(v) for v in itertools.product(range(field.p), repeat=n)]


def _span_set(field, vectors, n):
    out = set()
    for coeffs in itertools.product(range(field.p), repeat=len(vectors)):
        acc = [field.zero] * n
        for c, v in zip(coeffs, vectors):
            if c:
                for t, x in enumerate(v):
                    acc[t] = field.add(acc[t], field.mul(c, x))
        out.add(tuple(acc))
    return out


def suite_exact_kernel(seed: int, count: int) -> dict:
    """All subspace operations against brute-force enumeration over F_2, F_3
    at ambient dimension <= 4."""
    rng = random.Random(seed)
    failures = []
    for i in range(count):
        field = PrimeField(2) if i % 2 == 0 else PrimeField(3)
        n = rng.randint(1, 4)
        rows = rng.randint(1, 4)
        m = random_matrix(rng, field, rows, n)
        vecs_a = [
            tuple(rng.randrange(field.p) for _ in range(n)) for _ in range(rng.randint(0, 3))
        ]
        vecs_b = [
            tuple(rng.randrange(field.p) for _ in range(n)) for _ in range(rng.randint(0, 3))
        ]
        a = Subspace.from_vectors(field, n, vecs_a)
        b = Subspace.from_vectors(field, n, vecs_b)
        problems = []
        if _span_set(field, vecs_a, n) != _span_set(field, a.basis, n):
            problems.append("rref changed the row space")
        brute_kernel = {v for v in _all_vectors(field, n) if vec_is_zero(field, m.apply(v))}
        if brute_kernel != _span_set(field, m.kernel().basis, n):
            problems.append("kernel mismatch")
        svecs = [tuple(rng.randrange(field.p) for _ in range(rows)) for _ in range(rng.randint(0, 2))]
        s = Subspace.from_vectors(field, rows, svecs)
        s_set = _span_set(field, svecs, rows)
        brute_pre = {v for v in _all_vectors(field, n) if m.apply(v) in s_set}
        if brute_pre != _span_set(field, preimage(m, s).basis, n):
            problems.append("preimage mismatch")
        a_set = _span_set(field, vecs_a, n)
        b_set = _span_set(field, vecs_b, n)
        pair_sums = {
            tuple(field.add(x, y) for x, y in zip(u, v)) for u in a_set for v in b_set
        }
        if _span_set(field, a.sum(b).basis, n) != pair_sums:
            problems.append("sum mismatch")
        if _span_set(field, a.intersect(b).basis, n) != (a_set & b_set):
            problems.append("intersection mismatch")
        if a.sum(b).dim + a.intersect(b).dim != a.dim + b.dim:
            problems.append("dimension formula fails")
        sup = a.sum(b)
        comp = a.complement_in(sup)
        comp_set = _span_set(field, comp.basis, n)
        comp_sums = {
            tuple(field.add(x, y) for x, y in zip(u, v)) for u in a_set for v in comp_set
        }
        if comp_sums != _span_set(field, sup.basis, n) or a.intersect(comp).dim != 0:
            problems.append("complement mismatch")
        image_set = {m.apply(v) for v in _all_vectors(field, n)}
        round_set = {m.apply(v) for v in brute_pre}
        if round_set != (s_set & image_set):
            problems.append("preimage/image round trip fails")
        if problems:
            failures.append(f"instance {i}: " + "; ".join(problems))
    return {"suite": "exact-kernel", "instances": count, "failures": failures}


SUITES = {
    "triangle": suite_triangle,
    "congruence-propagation": suite_congruence_propagation,
    "reflect-isomorphisms": suite_reflect_isomorphisms,
    "duality": suite_duality,
    "degree-theorem": suite_degree_theorem,
    "exact-kernel": suite_exact_kernel,
}


def run_suites(seed: int, count: int, names=None) -> list[dict]:
    out = []
    chosen = list(SUITES) if names is None else list(names)
    for name in chosen:
        if name == "kronecker-count":
            out.append(suite_kronecker_count())
            continue
        if name not in SUITES:
            raise KeyError(name)
        out.append(SUITES[name](seed, count))
    return out
