"""Uniqueness of presentations: moving between two admissible embeddings of a
coalgebra in its path coalgebra, and the exact dual alignment for truncated
path algebra presentations.
"""

from __future__ import annotations

from .adjunction import (
    PathCoalgebra,
    coalg_congruent,
    invert_mod_congruence,
    is_admissible,
    lift_kquiver_map,
    psi,
)
from .algebra import (
    AlgebraMap,
    TruncatedPathAlgebra,
    alg_congruent,
    dual_algebra_map,
    radical_power,
    verify_algebra_map,
)
from .coalgebra import CoalgebraMap, verify_coalgebra_map
from .errors import (
    AdjqError,
    InputError,
    NoLift,
    NormalizationRequired,
    NotAdmissible,
    ShapeError,
)
from .linalg import Mat, Subspace
from .quiver import compose_kmaps, invert_kmap, kmap_is_iso


def transport_presentation(gamma: CoalgebraMap, delta: CoalgebraMap) -> CoalgebraMap:
    """Automorphism rho of the path coalgebra with rho . gamma ~ delta, for two
    admissible presentations gamma, delta of the same coalgebra."""
    if gamma.source != delta.source or gamma.target != delta.target:
        raise ShapeError("presentations must share source and target")
    if not isinstance(gamma.target, PathCoalgebra):
        raise InputError("presentations must land in a path coalgebra")
    if not is_admissible(gamma) or not is_admissible(delta):
        raise NotAdmissible("both presentations must be admissible")
    psi_gamma = psi(gamma)
    psi_delta = psi(delta)
    if not kmap_is_iso(psi_gamma) or not kmap_is_iso(psi_delta):
        raise NotAdmissible("adjunct of an admissible presentation must be an isomorphism")
    phi = compose_kmaps(psi_delta, invert_kmap(psi_gamma))
    target = gamma.target
    rho = lift_kquiver_map(phi, target.degree, source_pc=target, target_pc=target)
    if not rho.is_isomorphism():
        raise AdjqError("transported map is not an automorphism (bug)")
    check = verify_coalgebra_map(rho)
    if not check.ok:
        raise AdjqError(f"transported map fails coalgebra axioms: {check.failures[0]}")
    if not coalg_congruent(rho.compose(gamma), delta):
        raise AdjqError("transported automorphism does not move gamma to delta (bug)")
    return rho


def _arrow_corner(src: TruncatedPathAlgebra, g: str, h: str) -> list[int]:
    """Basis indices of e_h J^2 e_g: paths of length >= 2 from g to h."""
    return [
        i
        for i, p in enumerate(src.paths)
        if p.length >= 2 and p.source == g and p.target == h
    ]


def align_presentations(gamma: AlgebraMap, delta: AlgebraMap) -> AlgebraMap:
    """Automorphism psi ~ id of the truncated path algebra with
    gamma . psi = delta exactly.

    Both maps must be surjective with relation-ideal kernels, congruent, and
    equal on the degree-zero part.  Each arrow x is sent to x + y_x where
    y_x in e_h J^2 e_g solves gamma(y_x) = delta(x) - gamma(x); the map is
    extended multiplicatively along the path basis.
    """
    src = gamma.source
    if not isinstance(src, TruncatedPathAlgebra):
        raise InputError("alignment needs a truncated path algebra source")
    if gamma.target != delta.target or delta.source != src:
        raise ShapeError("presentations must share source and target")
    field = src.field
    for i, p in enumerate(src.paths):
        if p.length == 0 and gamma.matrix.col(i) != delta.matrix.col(i):
            raise NormalizationRequired("presentations disagree on the degree-zero part")
    if not gamma.is_surjective() or not delta.is_surjective():
        raise InputError("presentations must be surjective")
    j2_target = radical_power(gamma.target, 2).space
    j2_src = radical_power(src, 2).space
    for alpha in (gamma, delta):
        ker = alpha.matrix.kernel()
        if not j2_src.contains(ker):
            raise InputError("presentation kernel is not a relation ideal")
    if not alg_congruent(gamma, delta):
        raise InputError("presentations are not congruent")
    # image of each arrow: x + y_x
    arrow_images = {}
    for i, p in enumerate(src.paths):
        if p.length != 1:
            continue
        g, h = p.source, p.target
        corner = _arrow_corner(src, g, h)
        rhs = tuple(
            field.sub(dx, gx)
            for dx, gx in zip(delta.matrix.col(i), gamma.matrix.col(i))
        )
        if not j2_target.contains_vector(rhs):
            raise NoLift("difference of arrow images is outside J^2 of the target")
        restricted = Mat.from_cols(field, [gamma.matrix.col(c) for c in corner], gamma.target.dim)
        sol = restricted.solve(rhs)
        if sol is None:
            raise NoLift("no corner solution for an arrow correction")
        img = [field.zero] * src.dim
        img[i] = field.one
        for c, coeff in zip(corner, sol):
            img[c] = field.add(img[c], coeff)
        arrow_images[i] = tuple(img)
    # multiplicative extension over the path basis
    cols = []
    for i, p in enumerate(src.paths):
        if p.length == 0:
            cols.append(src.basis_vector(i))
        elif p.length == 1:
            cols.append(arrow_images[i])
        else:
            acc = None
            for name in p.names:
                arrow_idx = src.path_index((name,), src.kquiver.pair_of(name)[0])
                vec = arrow_images[arrow_idx]
                acc = vec if acc is None else src.multiply(acc, vec)
            cols.append(acc)
    psi_map = AlgebraMap(src, src, Mat.from_cols(field, cols, src.dim))
    check = verify_algebra_map(psi_map)
    if not check.ok:
        raise AdjqError(f"alignment map fails algebra axioms: {check.failures[0]}")
    if gamma.compose(psi_map).matrix != delta.matrix:
        raise NoLift("aligned composite differs from the second presentation")
    if not alg_congruent(psi_map, AlgebraMap.identity(src)):
        raise AdjqError("alignment map is not congruent to the identity (bug)")
    # certify invertibility through the dual coalgebra side
    dual_psi = dual_algebra_map(psi_map)
    dual_inv = invert_mod_congruence(dual_psi)
    inv_matrix = dual_inv.matrix.transpose()
    eye = Mat.identity(field, src.dim)
    if psi_map.matrix.mul(inv_matrix) != eye or inv_matrix.mul(psi_map.matrix) != eye:
        raise AdjqError("dual-certified inverse failed the exact check (bug)")
    return psi_map
