import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hiergraver.lattice import (
    CapExceeded,
    SlicedVector,
    conformal_leq,
    fiber_enumerate,
    has_conformal_decomposition,
    has_semiconformal_decomposition,
    is_conformal_pair,
    kernel_lattice_basis,
    mat_vec,
    norm1,
    sign_canonical,
    type_of,
    vec_neg_part,
    vec_pos,
)

IND_22 = ((1, 1, 0, 0), (0, 0, 1, 1), (1, 0, 1, 0), (0, 1, 0, 1))


small_vec = st.lists(st.integers(-4, 4), min_size=1, max_size=8).map(tuple)


class TestVectorHelpers:
    def test_pos_neg_split(self):
        u = (2, -3, 0, 1)
        assert vec_pos(u) == (2, 0, 0, 1)
        assert vec_neg_part(u) == (0, 3, 0, 0)

    @given(small_vec)
    def test_pos_minus_neg_is_identity(self, u):
        assert tuple(p - n for p, n in zip(vec_pos(u), vec_neg_part(u))) == u

    @given(small_vec)
    def test_sign_canonical_idempotent(self, u):
        assert sign_canonical(sign_canonical(u)) == sign_canonical(u)

    @given(small_vec)
    def test_sign_canonical_first_nonzero_positive(self, u):
        c = sign_canonical(u)
        nz = [x for x in c if x != 0]
        if nz:
            assert nz[0] > 0

    def test_conformal_leq(self):
        assert conformal_leq((1, 0, -1), (2, 0, -1))
        assert not conformal_leq((1, 0, 1), (2, 0, -1))
        assert not conformal_leq((3, 0, 0), (2, 0, 0))

    def test_conformal_pair(self):
        assert is_conformal_pair((1, -1, 0), (1, 0, 2))
        assert not is_conformal_pair((1, -1, 0), (-1, 0, 2))


class TestKernelBasis:
    def test_independence_2x2(self):
        basis = kernel_lattice_basis(IND_22)
        assert len(basis) == 1
        assert sign_canonical(basis[0]) == (1, -1, -1, 1)

    def test_basis_vectors_lie_in_kernel(self):
        m = ((1, 2, 3), (0, 1, 1))
        for v in kernel_lattice_basis(m):
            assert all(x == 0 for x in mat_vec(m, v))

    def test_full_rank_gives_empty_basis(self):
        assert kernel_lattice_basis(((1, 0), (0, 1))) == []

    def test_saturation(self):
        # ker of [2 4] contains (2, -1); a non-saturated basis would give (4, -2)
        basis = kernel_lattice_basis(((2, 4),))
        assert sign_canonical(basis[0]) == (2, -1)


class TestFiber:
    def test_independence_fiber(self):
        fiber = fiber_enumerate(IND_22, (1, 1, 1, 1))
        assert sorted(fiber.points) == [(0, 1, 1, 0), (1, 0, 0, 1)]

    def test_empty_fiber(self):
        fiber = fiber_enumerate(IND_22, (2, 0, 0, 1))
        assert fiber.points == ()

    def test_cap(self):
        with pytest.raises(CapExceeded):
            fiber_enumerate(((1, 1, 1),), (5,), max_points=3)

    def test_rejects_negative_matrix(self):
        with pytest.raises(ValueError):
            fiber_enumerate(((1, -1),), (0,))


class TestDecompositions:
    def test_conformal_decomposable(self):
        m = ((1, 1, 0, 0, 0, 0), (0, 0, 1, 1, 0, 0), (0, 0, 0, 0, 1, 1))
        # sum of two disjoint kernel vectors
        u = (1, -1, 1, -1, 0, 0)
        found, witness = has_conformal_decomposition(u, m)
        assert found
        v, w = witness
        assert tuple(a + b for a, b in zip(v, w)) == u
        assert is_conformal_pair(v, w)

    def test_graver_element_has_no_conformal_decomposition(self):
        assert not has_conformal_decomposition((1, -1, -1, 1), IND_22)[0]

    def test_semiconformal_on_independence_basic_move(self):
        assert not has_semiconformal_decomposition((1, -1, -1, 1), IND_22)[0]


class TestSlicedVector:
    def test_type_counts_nonzero_slices(self):
        sv = SlicedVector((1, -1, 0, 0, 0, 0, 2, 0, 0), 3, 3)
        assert sv.slices() == ((1, -1, 0), (0, 0, 0), (2, 0, 0))
        assert type_of(sv) == 2

    def test_norm_and_zero(self):
        assert norm1((1, -2, 3)) == 6
        assert type_of(SlicedVector((0, 0, 0, 0), 2, 2)) == 0
