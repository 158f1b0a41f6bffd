import random

import pytest

from abelianj.lie import (
    LieAlgebra, bilinear_table, bracket_span, center,
    center_of_subalgebra, centralizer, check_jacobi, classify_subspace,
    commutator_ideal, derived_and_central_series, direct_sum, is_homomorphism,
    is_isomorphism, is_unimodular, pushforward,
)
from abelianj.linalg import DimensionMismatch, Matrix, Subspace, rat, vec


def aff_line():
    # [u, x] = x on two generators
    return LieAlgebra(2, {(0, 1): {1: 1}}, basis_names=("u", "x"))


def heisenberg():
    return LieAlgebra(3, {(0, 1): {2: 1}})


def aff_complex():
    return LieAlgebra(4, {(0, 2): {2: 1}, (0, 3): {3: 1},
                          (1, 2): {3: 1}, (1, 3): {2: -1}})


def test_bracket_antisymmetry_and_lookup():
    g = aff_line()
    assert g.bracket((1, 0), (0, 1)) == vec((0, 1))
    assert g.bracket((0, 1), (1, 0)) == vec((0, -1))
    assert g.c[1][0] == vec((0, -1))


def test_constructor_rejects_bad_pairs():
    with pytest.raises(DimensionMismatch):
        LieAlgebra(2, {(1, 0): {0: 1}})
    with pytest.raises(DimensionMismatch):
        LieAlgebra(2, {(0, 0): {0: 1}})


def test_jacobi_holds_on_fixtures():
    for g in (aff_line(), heisenberg(), aff_complex(), LieAlgebra.abelian(5)):
        assert check_jacobi(g) is None


def test_jacobi_witness():
    # [e1,e2]=e1, [e1,e3]=e2, [e2,e3]=e1 breaks the cyclic identity
    g = LieAlgebra(3, {(0, 1): {0: 1}, (0, 2): {1: 1}, (1, 2): {0: 1}})
    wit = check_jacobi(g)
    assert wit is not None
    assert wit.triple == (0, 1, 2)
    assert wit.residual == vec((0, -1, 0))


def test_center_and_commutator():
    g = heisenberg()
    assert center(g) == Subspace(3, [(0, 0, 1)])
    assert commutator_ideal(g) == Subspace(3, [(0, 0, 1)])
    assert center(aff_complex()).is_zero()
    assert commutator_ideal(aff_complex()) == Subspace(4, [(0, 0, 1, 0), (0, 0, 0, 1)])


def test_series_flags():
    s = derived_and_central_series(aff_line())
    assert s.is_solvable and s.is_2step_solvable and not s.is_nilpotent
    s = derived_and_central_series(heisenberg())
    assert s.is_nilpotent and s.nilpotency_class == 2
    s = derived_and_central_series(LieAlgebra.abelian(3))
    assert s.is_nilpotent and s.nilpotency_class <= 1


def test_unimodular():
    assert not is_unimodular(aff_line())
    assert not is_unimodular(aff_complex())
    assert is_unimodular(heisenberg())
    assert is_unimodular(LieAlgebra.abelian(4))


def test_classify_subspace():
    g = aff_complex()
    gp = commutator_ideal(g)
    role = classify_subspace(g, gp)
    assert role.is_subalgebra and role.is_ideal and role.is_abelian_subspace
    span_u = Subspace(4, [(1, 0, 0, 0), (0, 1, 0, 0)])
    role = classify_subspace(g, span_u)
    assert role.is_subalgebra and not role.is_ideal


def test_centralizer():
    g = heisenberg()
    assert centralizer(g, Subspace(3, [(1, 0, 0)])) == Subspace(
        3, [(1, 0, 0), (0, 0, 1)])
    assert centralizer(g, Subspace.zero(3)) == Subspace.whole(3)
    assert centralizer(aff_line(), Subspace.whole(2)).is_zero()


def test_center_of_subalgebra():
    g = aff_complex()
    whole = Subspace.whole(4)
    assert center_of_subalgebra(g, whole) == center(g)
    gp = commutator_ideal(g)
    assert center_of_subalgebra(g, gp) == gp


def test_bracket_span_and_bilinear_table():
    g = aff_complex()
    whole = Subspace.whole(4)
    assert bracket_span(g, whole, whole) == commutator_ideal(g)
    tab = bilinear_table(g, Matrix.identity(4), Matrix.identity(4))
    assert all(vec(tab[i][j]) == g.c[i][j] for i in range(4) for j in range(4))


def test_pushforward_identity_and_inverse():
    g = aff_complex()
    assert pushforward(g, Matrix.identity(4)) == g
    rng = random.Random(7)
    for _ in range(20):
        rows = [[rat(rng.randint(-2, 2)) for _ in range(4)] for _ in range(4)]
        p = Matrix(rows)
        if p.det() == 0:
            continue
        moved = pushforward(g, p)
        assert check_jacobi(moved) is None
        assert pushforward(moved, p.inverse()) == g


def test_direct_sum():
    s = direct_sum(aff_line(), heisenberg())
    assert s.dim == 5
    assert s.bracket((1, 0, 0, 0, 0), (0, 1, 0, 0, 0)) == vec((0, 1, 0, 0, 0))
    assert s.bracket((0, 0, 1, 0, 0), (0, 0, 0, 1, 0)) == vec((0, 0, 0, 0, 1))
    # halves commute
    assert s.bracket((1, 0, 0, 0, 0), (0, 0, 1, 0, 0)) == vec((0,) * 5)
    assert len(set(s.basis_names)) == 5


def test_homomorphism_and_isomorphism():
    g = aff_line()
    # x -> 2x, u -> u rescales the root vector: still a homomorphism
    phi = Matrix([[1, 0], [0, 2]])
    assert is_homomorphism(phi, g, g)
    assert is_isomorphism(phi, g, g)
    bad = Matrix([[0, 1], [1, 0]])
    assert not is_homomorphism(bad, g, g)
    wit = is_homomorphism(bad, g, g, witness=True)
    assert wit is not None and wit.pair == (0, 1)


def test_abelian_constructor():
    g = LieAlgebra.abelian(3)
    assert all(g.bracket(x, y) == vec((0, 0, 0))
               for x in (vec((1, 0, 0)),) for y in (vec((0, 1, 0)),))
    assert commutator_ideal(g).is_zero()


def test_from_tensor_validates():
    g = aff_line()
    assert LieAlgebra.from_tensor(g.c) == g
    bad = [[(0, 0), (0, 1)], [(0, 1), (0, 0)]]
    with pytest.raises(DimensionMismatch):
        LieAlgebra.from_tensor(bad)
