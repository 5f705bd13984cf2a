"""Acceptance gate: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s``.  Criteria marked
``extended`` reproduce values that take hours on a single core and are
deselected by default (``-m extended`` opts in); everything else completes
in minutes.
"""

import random

import pytest

from hiergraver.cli import main as cli_main
from hiergraver.complexes import parse_complex
from hiergraver.complexity import (
    graver_complexity,
    markov_complexity,
    markov_lower_bound,
    model_complexities,
)
from hiergraver.graver import graver_basis_vectors, graver_bruteforce
from hiergraver.io import parse_matrix
from hiergraver.lattice import (
    SlicedVector,
    has_conformal_decomposition,
    mat_vec,
    sign_canonical,
    type_of,
)
from hiergraver.markov import (
    graver_basis,
    is_markov_basis,
    minimal_markov_basis,
    semiconformal_free_set,
    universal_markov_basis,
)
from hiergraver.modelmatrix import (
    build_model_matrix,
    lawrence_lift,
    lift_factors,
    lift_row_permutation,
)
from hiergraver.table_data import CORE_SUITE, EXTENDED_SUITE

from test_model_matrix import FOUR_CYCLE_2222

# every four-variable model of the reference table
ALL_TABLE_MODELS = [
    "[123][124][134][234]", "[123][124][134]", "[123][124][234]",
    "[123][124][34]", "[123][234][14]", "[123][14][24][34]",
    "[234][12][13][14]", "[12][13][14][23][24][34]", "[123][124]",
    "[123][234]", "[123][24][34]", "[234][12][13]", "[123][14][24]",
    "[12][13][23][24][34]", "[12][13][14][23][24]", "[123][34]",
    "[123][14]", "[234][12]", "[12][13][23][34]", "[12][13][23][14]",
    "[12][23][24][34]", "[12][14][23][34]", "[123][4]", "[234][1]",
    "[12][13][23][4]", "[23][24][34][1]", "[12][23][34]", "[12][14][23]",
    "[12][23][4]", "[12][13][4]", "[23][34][1]", "[12][34]",
    "[12][3][4]", "[34][1][2]", "[1][2][3][4]",
]


def _ok(n, detail=""):
    print(f"\nACCEPTANCE CRITERION {n}: PASS {detail}".rstrip())


def test_criterion_1_four_cycle_matrix_bit_exact(tmp_path):
    out = tmp_path / "m.txt"
    code = cli_main(
        ["matrix", "--complex", "[12][14][23][34]", "--dims", "2,2,2,2",
         "--out", str(out)]
    )
    assert code == 0
    assert parse_matrix(out.read_text()) == FOUR_CYCLE_2222
    _ok(1, "(binary four-cycle margin matrix, 16x16, bit-exact)")


def test_criterion_2_block_decomposition_all_table_models():
    for name in ALL_TABLE_MODELS:
        delta = parse_complex(name, n=4)
        for dims in ((2, 2, 2, 2), (3, 2, 2, 2)):
            full = build_model_matrix(delta, dims)
            a, b = lift_factors(delta, dims[1:])
            lam = lawrence_lift(a, b, dims[0])
            perm = lift_row_permutation(delta, dims)
            assert tuple(lam.entries[p] for p in perm) == full.entries
    _ok(2, f"({len(ALL_TABLE_MODELS)} models x 2 dimension vectors)")


def test_criterion_3_remark_vector_in_kernel_with_type_2():
    u = (2, -2, -1, 1, -2, 2, 1, -1) + (-1, 1, 1, -1, 1, -1, -1, 1)
    m = build_model_matrix(parse_complex("[12][14][23][34]"), (2, 2, 2, 2))
    assert all(x == 0 for x in mat_vec(m.entries, u))
    assert type_of(SlicedVector(u, 2, 8)) == 2
    _ok(3, "(2x8 kernel vector, type 2)")


def _pointed(basis):
    # a pointed kernel has no nonzero one-signed kernel vector, and such a
    # vector would appear in the Graver basis
    return all(any(x < 0 for x in v) for v in basis)


def test_criterion_4_graver_matches_bruteforce_on_20_plus_instances():
    instances = []
    for p, q in [(2, 2), (2, 3), (2, 4), (3, 3), (3, 4)]:
        instances.append(build_model_matrix(parse_complex("[1][2]"), (p, q)).entries)
    instances.append(
        build_model_matrix(parse_complex("[12][13][23]"), (2, 2, 2)).entries
    )
    for name, _, _ in CORE_SUITE:
        a, b = lift_factors(parse_complex(name, n=4), (2, 2, 2))
        instances.append(a)
        if b:
            instances.append(b)
    rng = random.Random(46091)
    random_found = 0
    while random_found < 10:
        m = tuple(tuple(rng.randint(-2, 2) for _ in range(6)) for _ in range(3))
        if any(all(row[c] == 0 for row in m) for c in range(6)):
            continue
        basis = graver_basis_vectors(m)
        if not basis or not _pointed(basis):
            continue
        box = max(abs(x) for v in basis for x in v)
        if box > 6:
            continue  # keep the brute-force side desk-scale
        instances.append(m)
        random_found += 1
    assert len(instances) >= 20
    for m in instances:
        basis = set(graver_basis_vectors(m))
        box = max((abs(x) for v in basis for x in v), default=1)
        # brute force at the basis's own sup-norm is a sound two-sided
        # oracle: decomposition parts never leave the box of the whole
        assert basis == set(graver_bruteforce(m, box))
    _ok(4, f"({len(instances)} instances, exact set equality)")


def test_criterion_5_worked_example_g_and_lower_bound():
    a, b = lift_factors(parse_complex("[12][13][23]", n=3), (3, 3))
    g, witness = graver_complexity(a, b)
    assert g == 9
    assert witness.norm1() == 9
    lb, _ = markov_lower_bound(a, b)
    assert lb == 5
    _ok(5, "(g=9 with Gamma witness, lower bound 5)")


@pytest.mark.extended
def test_criterion_5_worked_example_markov_complexity_extended():
    # heuristic mode stops once the per-r profile is constant at 5 past r=5
    a, b = lift_factors(parse_complex("[12][13][23]", n=3), (3, 3))
    m, _, profile = markov_complexity(a, b, mode="heuristic")
    assert m == 5
    assert profile[-1][1] == profile[-2][1] == 5
    _ok("5-extended", f"(m=5, profile {profile})")


def test_criterion_6_core_table():
    for name, m_exp, g_exp in CORE_SUITE:
        rep = model_complexities(parse_complex(name, n=4), (2, 2, 2), mode="heuristic")
        assert (rep.markov_complexity, rep.graver_complexity) == (m_exp, g_exp), name
    _ok(6, f"({len(CORE_SUITE)} core rows, exact integer match)")


@pytest.mark.extended
@pytest.mark.parametrize("name,m_exp,g_exp", EXTENDED_SUITE)
def test_criterion_6_extended_table(name, m_exp, g_exp):
    rep = model_complexities(parse_complex(name, n=4), (2, 2, 2), mode="heuristic")
    assert (rep.markov_complexity, rep.graver_complexity) == (m_exp, g_exp)
    _ok("6-extended", f"({name})")


def test_criterion_7_lower_bounds():
    for dims, expected in [((3, 3), 5), ((3, 4), 8)]:
        a, b = lift_factors(parse_complex("[12][13][23]", n=3), dims)
        assert markov_lower_bound(a, b)[0] == expected
    _ok(7, "(lower bounds 5 and 8)")


@pytest.mark.extended
def test_criterion_7_lower_bound_3x5_extended():
    a, b = lift_factors(parse_complex("[12][13][23]", n=3), (3, 5))
    assert markov_lower_bound(a, b)[0] == 12
    _ok("7-extended", "(lower bound 12)")


def test_criterion_7_out_of_scope_values_documented_skip():
    pytest.skip(
        "the two blank table rows ([234][12][13][14], "
        "[12][13][14][23][24][34]) and the bound 19 for "
        "[123][124][134][234] at dims (3,3,3) are not desk-scale "
        "computations and are intentionally not reproduced"
    )


def _markov_property_instances():
    for name, dims in [
        ("[1][2]", (2, 3)),
        ("[1][2]", (3, 3)),
        ("[12][13][23]", (2, 2, 2)),
        ("[12][13][23]", (2, 2, 3)),
        ("[123][4]", (2, 2, 2, 2)),
    ]:
        yield build_model_matrix(parse_complex(name), dims).entries


def test_criterion_8_markov_property_suite():
    count = 0
    for m in _markov_property_instances():
        g = graver_basis(m)
        if not g.vectors:
            continue
        s = semiconformal_free_set(m, g=g)
        mini = minimal_markov_basis(m, g=g)
        uni = universal_markov_basis(m, g=g)
        assert set(s.vectors) <= set(mini.vectors)
        assert set(mini.vectors) <= set(uni.vectors) <= set(g.vectors)
        assert is_markov_basis(mini, m, g)
        for v in mini.vectors:
            assert not is_markov_basis([u for u in mini.vectors if u != v], m, g)
        count += 1
    assert count >= 4
    _ok(8, f"(containments + minimality on {count} models)")


def test_criterion_8_row_splitting_closure():
    # splitting one slice of a degree-r basis element into a conformal sum
    # must land exactly on a degree-(r+1) basis element
    verified = 0
    cases = [
        ("[12][34]", (2, 2, 2), 2, 30),
        ("[123][34]", (2, 2, 2), 2, 10),
        ("[123][34]", (2, 2, 2), 3, 10),
        ("[123][4]", (2, 2, 2), 2, 12),
        ("[123][4]", (2, 2, 2), 3, 18),
    ]
    for name, dims_rest, r, quota in cases:
        a, b = lift_factors(parse_complex(name, n=4), dims_rest)
        lam = lawrence_lift(a, b, r)
        lam_next = lawrence_lift(a, b, r + 1)
        n = lam.n
        next_basis = {sign_canonical(v)
                      for v in graver_basis_vectors(lam_next.entries)}
        taken = 0
        for u in graver_basis_vectors(lam.entries):
            if taken >= quota:
                break
            slices = list(SlicedVector(u, r, n).slices())
            for i, s in enumerate(slices):
                if all(x == 0 for x in s):
                    continue
                found, witness = has_conformal_decomposition(s, a)
                if not found:
                    continue
                v1, v2 = witness
                split = sum(slices[:i], ()) + v1 + v2 + sum(slices[i + 1:], ())
                assert all(x == 0 for x in mat_vec(lam_next.entries, split))
                assert sign_canonical(split) in next_basis
                taken += 1
                break
        verified += taken
    assert verified >= 50
    _ok(8, f"(row-splitting closure on {verified} sampled elements)")


def test_criterion_8_report_invariants_on_core_suite():
    for name, _, _ in CORE_SUITE:
        rep = model_complexities(parse_complex(name, n=4), (2, 2, 2), mode="heuristic")
        assert rep.lower_bound <= rep.markov_complexity <= rep.graver_complexity
        types = [t for _, t in rep.per_r_profile]
        assert types == sorted(types)
        past = [t for r, t in rep.per_r_profile if r > rep.markov_complexity]
        assert len(set(past)) <= 1
    _ok(8, "(lb <= m <= g, monotone and stable profiles, 9 models)")


def test_criterion_9_table_determinism_across_jobs(tmp_path):
    out1, out2 = tmp_path / "a", tmp_path / "b"
    assert cli_main(["table", "--suite", "core", "--jobs", "1", "--out", str(out1)]) == 0
    assert cli_main(["table", "--suite", "core", "--jobs", "2", "--out", str(out2)]) == 0
    files1 = sorted(p.name for p in out1.iterdir())
    files2 = sorted(p.name for p in out2.iterdir())
    assert files1 == files2
    for name in files1:
        assert (out1 / name).read_bytes() == (out2 / name).read_bytes()
    _ok(9, f"({len(files1)} files byte-identical at --jobs 1 and 2)")
