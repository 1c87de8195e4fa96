"""Tensor-product space: dimensions, operator algebra, truncation artifact."""

import numpy as np
import pytest

from superlaser.hilbert import DimensionBudgetError, build_space, expect


def test_dimensions():
    assert build_space(1, 2).dim == 6
    assert build_space(8, 3).dim == 1024


def test_dimension_budget():
    with pytest.raises(DimensionBudgetError):
        build_space(12, 3)
    # a raised budget admits the same space
    assert build_space(12, 3, dim_budget=1 << 15).dim == 4096 * 4


def test_field_commutator_exact_below_truncation():
    space = build_space(2, 3)
    comm = (space.a @ space.adag - space.adag @ space.a).toarray()
    below = space.n_diag < space.n_max
    sub = comm[np.ix_(below, below)]
    # identity up to sqrt(k)**2 roundoff in the ladder entries
    assert np.abs(sub - np.eye(below.sum())).max() < 1e-13
    # the top Fock row carries the truncation artifact -n_max
    top = ~below
    assert np.allclose(np.diag(comm)[top], -space.n_max)


def test_two_level_algebra():
    space = build_space(2, 1)
    for m in range(2):
        anti = space.sm[m] @ space.sp_[m] + space.sp_[m] @ space.sm[m]
        assert np.allclose(anti.toarray(), np.eye(space.dim))
        sq = (space.sm[m] @ space.sm[m]).toarray()
        assert np.allclose(sq, 0.0)
    both = (space.sm[0] @ space.sm[1]).toarray()
    assert np.abs(both).max() > 0


def test_operators_of_different_atoms_commute():
    space = build_space(3, 1)
    pairs = [(space.sm[0], space.sp_[1]), (space.sx[0], space.sm[2]),
             (space.proj_e[1], space.sy[2])]
    for a, b in pairs:
        comm = (a @ b - b @ a).toarray()
        assert np.abs(comm).max() == 0.0


def test_states_and_expectations():
    space = build_space(2, 2)
    rho = space.ground_state()
    assert np.trace(rho) == 1.0
    assert expect(space.n_op, rho) == 0.0
    rho = space.product_state(excited=[1], n_photons=2)
    assert expect(space.proj_e[0], rho).real == pytest.approx(0.0)
    assert expect(space.proj_e[1], rho).real == pytest.approx(1.0)
    assert expect(space.n_op, rho).real == pytest.approx(2.0)
    with pytest.raises(ValueError):
        space.product_state(n_photons=5)
