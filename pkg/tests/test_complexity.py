import pytest

from hiergraver.complexes import parse_complex
from hiergraver.complexity import (
    GammaVector,
    ResourceCaps,
    big_move_generator,
    graver_complexity,
    markov_complexity,
    markov_lower_bound,
    model_complexities,
    reducible_norm_check,
)
from hiergraver.lattice import mat_vec, norm1
from hiergraver.modelmatrix import build_model_matrix, lift_factors


def factors(name, dims_rest, n=4):
    return lift_factors(parse_complex(name, n=n), dims_rest)


class TestGammaVector:
    def test_rejects_negative_counts(self):
        with pytest.raises(ValueError):
            GammaVector(((1,), (-1,)), (1, -1))

    def test_rejects_non_kernel(self):
        with pytest.raises(ValueError):
            GammaVector(((1,), (-1,)), (2, 1))

    def test_norm(self):
        g = GammaVector(((1, 0), (-1, 0)), (1, 1))
        assert g.norm1() == 2


class TestGraverComplexity:
    def test_triangle_3x3(self):
        a, b = factors("[12][13][23]", (3, 3), n=3)
        g, witness = graver_complexity(a, b)
        assert g == 9
        assert witness.norm1() == 9

    def test_four_simplex_boundary(self):
        a, b = factors("[123][124][134][234]", (2, 2, 2))
        assert graver_complexity(a, b)[0] == 2

    def test_saturated_link_on_234_12(self):
        a, b = factors("[234][12]", (2, 2, 2))
        assert graver_complexity(a, b)[0] == 4

    def test_floor_when_deletion_kills_all_moves(self):
        # both facets contain vertex 1, so B has no rows and every lifted
        # Graver element lives in a single slice; reported format is 2
        a, b = factors("[123][14]", (2, 2, 2))
        assert b == ()
        assert graver_complexity(a, b)[0] == 2


class TestLowerBound:
    def test_triangle_3x3(self):
        a, b = factors("[12][13][23]", (3, 3), n=3)
        lb, witness = markov_lower_bound(a, b)
        assert lb == 5
        assert witness.norm1() == 5

    @pytest.mark.slow
    def test_triangle_3x4(self):
        a, b = factors("[12][13][23]", (3, 4), n=3)
        assert markov_lower_bound(a, b)[0] == 8

    def test_rejects_negative_matrix(self):
        with pytest.raises(ValueError):
            markov_lower_bound(((1, -1),), ((1, 1),))


class TestMarkovComplexity:
    def test_heuristic_on_boundary_complex(self):
        a, b = factors("[123][124][134][234]", (2, 2, 2))
        m, witness, profile = markov_complexity(a, b, mode="heuristic")
        assert m == 2
        assert profile[0] == (2, 2)

    def test_exact_equals_heuristic_on_small_model(self):
        a, b = factors("[123][34]", (2, 2, 2))
        m_h = markov_complexity(a, b, mode="heuristic")[0]
        m_e = markov_complexity(a, b, mode="exact")[0]
        assert m_h == m_e == 2

    def test_profile_nondecreasing(self):
        a, b = factors("[12][13][4]", (2, 2, 2))
        _, _, profile = markov_complexity(a, b, r_cap=4)
        types = [t for _, t in profile]
        assert types == sorted(types)

    def test_rejects_bad_mode_and_rcap(self):
        a, b = factors("[123][34]", (2, 2, 2))
        with pytest.raises(ValueError):
            markov_complexity(a, b, mode="quick")
        with pytest.raises(ValueError):
            markov_complexity(a, b, r_cap=1)


class TestModelComplexities:
    def test_trivial_kernel_marker(self):
        rep = model_complexities(parse_complex("[123]", n=3), (2, 2))
        assert rep.trivial_kernel
        assert rep.graver_complexity == rep.markov_complexity == 0

    def test_requires_vertex_one(self):
        with pytest.raises(ValueError):
            model_complexities(parse_complex("[23]", n=3), (2, 2))

    def test_invariants_on_core_model(self):
        rep = model_complexities(
            parse_complex("[12][13][4]", n=4), (2, 2, 2), mode="heuristic"
        )
        assert rep.lower_bound <= rep.markov_complexity <= rep.graver_complexity
        assert rep.markov_complexity == 2
        assert rep.graver_complexity == 3

    def test_time_limit_cap(self):
        caps = ResourceCaps(time_limit_s=0.0)
        rep = model_complexities(
            parse_complex("[234][1]", n=4), (2, 2, 2), mode="heuristic", caps=caps
        )
        assert rep.cap_exceeded is not None
        assert rep.markov_complexity is None


class TestReducibleNormCheck:
    def test_two_triangles_glued_on_edge(self):
        rep = reducible_norm_check(
            parse_complex("[12][13][23][24][34]"), (2, 2, 2, 2)
        )
        assert rep.holds
        assert rep.full_norm == max(4, rep.l1, rep.l2)

    def test_disjoint_edges(self):
        rep = reducible_norm_check(parse_complex("[12][34]"), (2, 2, 2, 2))
        assert rep.holds
        assert rep.full_norm == 4

    def test_saturated_plus_isolated_vertex(self):
        rep = reducible_norm_check(parse_complex("[123][4]"), (2, 2, 2, 2))
        assert rep.holds
        assert rep.l1 == 0  # the [123] sub-model has a trivial kernel

    def test_rejects_irreducible(self):
        with pytest.raises(ValueError):
            reducible_norm_check(parse_complex("[12][13][23]"), (2, 2, 2))


class TestBigMoveGenerator:
    @pytest.mark.parametrize("m", [2, 3, 4, 5])
    def test_lies_in_kernel(self, m):
        u = big_move_generator(m)
        a = build_model_matrix(parse_complex("[12][13][23]"), (m, m, 2)).entries
        assert all(x == 0 for x in mat_vec(a, u))

    def test_m2_is_the_parity_move(self):
        assert norm1(big_move_generator(2)) == 8

    def test_norm_grows_without_bound(self):
        assert norm1(big_move_generator(6)) == 24

    def test_rejects_m1(self):
        with pytest.raises(ValueError):
            big_move_generator(1)
