"""Finite-dimensional algebras, syzygy towers, and stable self-extension rings.

The Yoneda oracle at the bottom recomputes ring products by a different
route (chain maps lifted through the resolution boundaries) and must agree
with the tower-lift products used by tate_ring.
"""

from __future__ import annotations

import numpy as np
import pytest

from gtl.exactlin import PrimeField, matmul_mod, rank_mod, solve_mod
from gtl.gallery import build_truncated_ci, expected_ext_dim_ci, expected_hh0_dim
from gtl.graded import AlgebraFormatError, col_echelon
from gtl.report import FAIL, PASS, PreconditionError
from gtl.stmod import (
    FDAlgebra,
    FDModule,
    SyzygyTower,
    cosyzygy_step,
    derive_radical,
    duality_functional,
    fd_algebra_from_json_dict,
    free_generator_matrix,
    free_module,
    hom_space,
    minimal_cover,
    omega_lift,
    regular_bimodule,
    stable_hom,
    syzygy_step,
    tate_ext,
    tate_ring,
    trivial_module,
)


# -- algebras -----------------------------------------------------------------


def test_gallery_algebras_validate(klein_alg, cubic_alg):
    for alg in (klein_alg, cubic_alg):
        assert alg.validate().passed
        assert alg.validate_symmetric().passed
        assert alg.op().validate().passed


def test_validate_catches_broken_associativity(cubic_alg):
    mult = cubic_alg.mult.copy()
    mult[1, 2, 0] = 1  # x * x^2 = 1 while (x * x) * x stays 0
    broken = FDAlgebra(
        cubic_alg.field, cubic_alg.dim, mult, cubic_alg.unit, cubic_alg.radical
    )
    rep = broken.validate()
    assert not rep.passed
    assert rep.verdict_for("associativity") == FAIL


def test_validate_symmetric_needs_a_functional(klein_alg):
    bare = FDAlgebra(
        klein_alg.field, klein_alg.dim, klein_alg.mult, klein_alg.unit, klein_alg.radical
    )
    rep = bare.validate_symmetric()
    assert not rep.passed
    assert rep.verdict_for("present") == FAIL


def test_validate_symmetric_rejects_degenerate_functional(klein_alg):
    lam = np.zeros(klein_alg.dim, dtype=np.int64)
    lam[0] = 1  # dual of the unit pairs every radical element to zero
    shady = FDAlgebra(
        klein_alg.field, klein_alg.dim, klein_alg.mult, klein_alg.unit,
        klein_alg.radical, lam,
    )
    rep = shady.validate_symmetric()
    assert rep.verdict_for("symmetric") == PASS
    assert rep.verdict_for("nondegenerate") == FAIL


def test_generator_vectors(klein_alg):
    gens = klein_alg.generator_vectors()
    # unit plus x1 and x2: x1*x2 lies in J^2
    assert gens.shape == (4, 3)
    assert gens[:, 0].tolist() == klein_alg.unit.tolist()


def test_derive_radical_both_paths(klein_alg):
    # dim 4 over F_2 forces the root search; dim 3 over F_2 uses traces
    derived = derive_radical(klein_alg.mult, klein_alg.unit, klein_alg.field)
    assert np.array_equal(
        col_echelon(derived, 2), col_echelon(klein_alg.radical, 2)
    )
    line = build_truncated_ci((3,), 2)
    derived_line = derive_radical(line.mult, line.unit, line.field)
    assert np.array_equal(
        col_echelon(derived_line, 2), col_echelon(line.radical, 2)
    )


def test_fd_json_round_trip_and_derivation(klein_alg):
    payload = klein_alg.to_json_dict()
    back = fd_algebra_from_json_dict(payload)
    assert np.array_equal(back.mult, klein_alg.mult)
    assert np.array_equal(back.unit, klein_alg.unit)
    assert back.labels == klein_alg.labels
    assert np.array_equal(back.symmetrizing, klein_alg.symmetrizing)

    stripped = dict(payload)
    del stripped["radical"]
    rederived = fd_algebra_from_json_dict(stripped)
    assert np.array_equal(
        col_echelon(rederived.radical, 2), col_echelon(klein_alg.radical, 2)
    )


def test_fd_json_rejects_malformed_payloads(klein_alg):
    payload = klein_alg.to_json_dict()
    for breakage in (
        lambda d: d.pop("mult"),
        lambda d: d.update(field_char=6),
        lambda d: d.update(mult=[[0]]),
        lambda d: d.update(radical=[[1], [0]]),
        lambda d: d.update(symmetrizing=[1, 0]),
        lambda d: d.update(unit=[1]),
    ):
        bad = {k: v for k, v in payload.items()}
        breakage(bad)
        with pytest.raises(AlgebraFormatError):
            fd_algebra_from_json_dict(bad)


def test_enveloping_algebra(klein_alg):
    env = klein_alg.enveloping()
    assert env.dim == 16
    assert env.validate().passed
    assert env.validate_symmetric().passed
    assert "1|x1" in env.labels


# -- modules --------------------------------------------------------------------


def test_trivial_module_kills_the_radical(klein_alg):
    k = trivial_module(klein_alg)
    assert k.validate().passed
    assert k.action[:, 0, 0].tolist() == [1, 0, 0, 0]


def test_free_module_and_generators(klein_alg):
    free = free_module(klein_alg, 2)
    assert free.dim == 8
    assert free.validate().passed
    gens = free_generator_matrix(klein_alg, 2)
    assert gens.shape == (8, 2)
    assert rank_mod(gens, 2) == 2


def test_module_validate_catches_wrong_action(klein_alg):
    action = np.zeros((4, 1, 1), dtype=np.int64)
    action[0, 0, 0] = 1
    action[1, 0, 0] = 1  # x1 acting as the identity is not multiplicative
    bad = FDModule(klein_alg, 1, action)
    rep = bad.validate()
    assert rep.verdict_for("multiplicativity") == FAIL


def test_dual_module_is_a_module_over_op(klein_alg):
    k = trivial_module(klein_alg)
    dual = k.dual()
    assert dual.validate().passed
    assert dual.algebra.mult.shape == klein_alg.mult.shape


def test_regular_bimodule(klein_alg):
    env, bim = regular_bimodule(klein_alg)
    assert bim.dim == klein_alg.dim
    assert bim.validate().passed


# -- covers and towers -------------------------------------------------------------


def test_minimal_cover_of_trivial_module(klein_alg):
    cover = minimal_cover(trivial_module(klein_alg))
    assert cover.rank == 1
    assert cover.pi.shape == (1, 4)
    assert rank_mod(cover.pi, 2) == 1


def test_syzygy_dims_follow_the_cover_recurrence(klein_alg):
    # dim W_{s+1} = rank_s * dim(algebra) - dim W_s, from the exact sequences
    tower = SyzygyTower(trivial_module(klein_alg))
    ranks = tower.ranks(5)
    dims = [tower.module(s).dim for s in range(6)]
    for s in range(5):
        assert dims[s + 1] == 4 * ranks[s] - dims[s]
    assert ranks == [expected_ext_dim_ci(2, s) for s in range(5)]
    assert dims == [2 * s + 1 for s in range(6)]


def test_syzygy_inclusion_is_exact(klein_alg):
    step = syzygy_step(trivial_module(klein_alg))
    assert step.syzygy.dim == 3
    composite = matmul_mod(step.cover.pi, step.iota, 2)
    assert not np.any(composite)
    assert step.syzygy.validate().passed


def test_cosyzygy_and_window_inverse(klein_alg):
    k = trivial_module(klein_alg)
    co = cosyzygy_step(k)
    assert co.cosyzygy.dim == 3
    assert co.cosyzygy.validate().passed
    assert not np.any(matmul_mod(co.project, co.embed, 2))
    # going back down recovers k on the nose (no free summand appears)
    back = syzygy_step(co.cosyzygy).syzygy
    assert back.dim == 1
    assert (back.dim - k.dim) % klein_alg.dim == 0


# -- hom spaces ---------------------------------------------------------------------


def test_hom_space_dimensions(klein_alg):
    k = trivial_module(klein_alg)
    free = free_module(klein_alg, 1)
    assert hom_space(k, k).shape[1] == 1
    assert hom_space(free, k).shape[1] == 1
    assert hom_space(free, free).shape[1] == 4


def test_hom_space_columns_are_module_maps(klein_alg):
    free = free_module(klein_alg, 1)
    tower = SyzygyTower(trivial_module(klein_alg))
    w1 = tower.module(1)
    hom = hom_space(w1, free)
    eye = np.eye(4, dtype=np.int64)
    for c in range(hom.shape[1]):
        mat = hom[:, c].reshape(free.dim, w1.dim)
        for s in range(4):
            lhs = matmul_mod(free.action[s], mat, 2)
            rhs = matmul_mod(mat, w1.action[s], 2)
            assert np.array_equal(lhs, rhs)


def test_stable_hom_of_trivial_module(klein_alg):
    k = trivial_module(klein_alg)
    st = stable_hom(k, k)
    assert st.dim == 1
    assert st.coordinates(np.eye(1, dtype=np.int64)).tolist() == [1]
    assert not st.is_stably_zero(np.eye(1, dtype=np.int64))


def test_maps_from_free_modules_are_stably_zero(klein_alg):
    k = trivial_module(klein_alg)
    free = free_module(klein_alg, 1)
    assert stable_hom(free, k).dim == 0
    st = stable_hom(free, free)
    assert st.dim == 0
    assert st.is_stably_zero(np.eye(4, dtype=np.int64))


def test_omega_lift_preserves_the_identity(klein_alg):
    tower = SyzygyTower(trivial_module(klein_alg))
    lifted = omega_lift(tower, np.eye(1, dtype=np.int64), 0, 0)
    w1 = tower.module(1)
    assert lifted.shape == (3, 3)
    st = stable_hom(w1, w1)
    assert st.coordinates(lifted).tolist() == st.coordinates(np.eye(3, dtype=np.int64)).tolist()


# -- Tate extensions ------------------------------------------------------------------


def test_tate_ext_dims_match_both_sides_of_zero(klein_alg):
    k = trivial_module(klein_alg)
    tower = SyzygyTower(k)
    dims = [tate_ext(klein_alg, k, d, tower).dim for d in range(-3, 4)]
    assert dims == [3, 2, 1, 1, 2, 3, 4]


def test_klein_ring_shape(klein_ring):
    assert [klein_ring.dim(d) for d in klein_ring.degrees()] == [3, 2, 1, 1, 2, 3, 4]
    assert klein_ring.validate().passed
    # duality shadow: dim in degree i equals dim in degree -1-i
    for i in range(-3, 3):
        assert klein_ring.dim(i) == klein_ring.dim(-1 - i)


def test_klein_ring_products_are_commutative(klein_ring):
    # char 2 makes graded commutativity literal symmetry of every block
    for i in klein_ring.degrees():
        for j in klein_ring.degrees():
            if not klein_ring.in_window(i + j):
                continue
            left = klein_ring.mult_block(i, j)
            right = klein_ring.mult_block(j, i).transpose(1, 0, 2)
            assert np.array_equal(left, right), (i, j)


def test_periodic_hypersurface_ring():
    alg = build_truncated_ci((2,), 2)
    ring = tate_ring(alg, trivial_module(alg), (-3, 3))
    assert [ring.dim(d) for d in ring.degrees()] == [1] * 7
    assert ring.validate().passed
    # the degree-1 class is invertible: its negative powers multiply back up
    assert ring.mult_block(1, -1)[0, 0].tolist() == [1]
    assert ring.mult_block(-1, -1)[0, 0].tolist() == [1]


def test_tate_ring_requires_symmetrizing_form(klein_alg):
    bare = FDAlgebra(
        klein_alg.field, klein_alg.dim, klein_alg.mult, klein_alg.unit, klein_alg.radical
    )
    with pytest.raises(PreconditionError):
        tate_ring(bare, trivial_module(bare), (-2, 2))


def test_tate_ring_window_must_contain_zero(klein_alg):
    with pytest.raises(ValueError):
        tate_ring(klein_alg, trivial_module(klein_alg), (1, 3))


def test_duality_functional_on_klein(klein_alg):
    ring, res = duality_functional(klein_alg, trivial_module(klein_alg), (-2, 2))
    assert [ring.dim(d) for d in ring.degrees()] == [2, 1, 1, 2, 3]
    assert res.found and res.functional.tolist() == [1]
    with pytest.raises(ValueError):
        duality_functional(klein_alg, trivial_module(klein_alg), (0, 2))


def test_hh0_of_klein_four(klein_alg):
    env, bim = regular_bimodule(klein_alg)
    assert tate_ext(env, bim, 0).dim == expected_hh0_dim((2, 2), 2) == 4


# -- the independent Yoneda oracle ------------------------------------------------------


def extend_from_generators(target: FDModule, rank: int, gen_images: np.ndarray) -> np.ndarray:
    """Unique module map from a rank-r free module with the given generator images."""
    alg = target.algebra
    d, p = alg.dim, alg.p
    out = np.zeros((target.dim, rank * d), dtype=np.int64)
    for t in range(rank):
        moved = matmul_mod(target.action.reshape(d * target.dim, target.dim),
                           gen_images[:, t:t + 1], p)
        out[:, t * d:(t + 1) * d] = moved.reshape(d, target.dim).T
    return out


def yoneda_product(alg, tower, f: np.ndarray, g: np.ndarray, i: int, j: int) -> np.ndarray:
    """Compose Ext classes by chain-map lifting along boundary matrices.

    f and g are cocycles W_i -> k and W_j -> k.  g is pushed to a cocycle on
    the resolution, lifted i steps through the boundaries d_s = iota_{s-1} o
    pi_s, composed with f's cocycle, and factored back through pi_{i+j}.
    """
    p = alg.p
    pi = lambda s: tower.step(s).cover.pi
    iota = lambda s: tower.step(s).iota
    rank = lambda s: tower.step(s).cover.rank
    boundary = lambda s: matmul_mod(iota(s - 1), pi(s), p)

    g_hat = matmul_mod(g, pi(j), p)  # cocycle P_j -> k
    gens = free_generator_matrix(alg, rank(j))
    lifted_gens = solve_mod(pi(0), matmul_mod(g_hat, gens, p), p)
    chain = extend_from_generators(tower.step(0).cover.free, rank(j), lifted_gens)
    for s in range(1, i + 1):
        gens = free_generator_matrix(alg, rank(j + s))
        rhs = matmul_mod(chain, matmul_mod(boundary(j + s), gens, p), p)
        lifted_gens = solve_mod(boundary(s), rhs, p)
        assert lifted_gens is not None
        chain = extend_from_generators(tower.step(s).cover.free, rank(j + s), lifted_gens)
    cocycle = matmul_mod(matmul_mod(f, pi(i), p), chain, p)  # P_{i+j} -> k
    h = solve_mod(pi(i + j).T, cocycle.reshape(-1), p)
    assert h is not None
    return h.reshape(1, -1)


def test_products_agree_with_yoneda_composition(klein_alg, klein_ring):
    k = trivial_module(klein_alg)
    tower = SyzygyTower(k)
    tower.ensure_steps(4)
    ext = {d: tate_ext(klein_alg, k, d, tower) for d in (1, 2, 3)}
    for i, j in ((1, 1), (1, 2), (2, 1)):
        block = klein_ring.mult_block(i, j)
        target = ext[i + j]
        for x, f in enumerate(ext[i].basis):
            for y, g in enumerate(ext[j].basis):
                h = yoneda_product(klein_alg, tower, f, g, i, j)
                assert target.coordinates(h).tolist() == block[x, y].tolist(), (i, j, x, y)
