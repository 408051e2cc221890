"""Evaluation codes: section spaces, exact distances, zero-block contraction."""

import itertools
import math
import random
from fractions import Fraction

import pytest

from hierdepth.agcode import (
    INFEASIBLE,
    LinearCode,
    VanishingCondition,
    all_rational_points,
    append_zero_blocks,
    build_code,
    evaluate_basis,
    min_distance,
    mmp_compare,
    monomial_exponents,
    normalize_point,
    normalized_distance,
    permute_points,
    vanishing_basis,
    zero_block_contract,
)
from hierdepth.errors import (
    DistanceUnknown,
    DuplicatePoint,
    EmptyCode,
    EmptyMessageSpace,
)
from hierdepth.gf import FMatrix


def oracle_min_weight(code):
    """Minimum weight by full message enumeration, pure Python."""
    rows = code.generator.tolist()
    p = code.p
    best = None
    for coeffs in itertools.product(range(p), repeat=len(rows)):
        if not any(coeffs):
            continue
        word = [0] * code.n
        for c, row in zip(coeffs, rows):
            if c:
                for j, x in enumerate(row):
                    word[j] = (word[j] + c * x) % p
        w = sum(1 for x in word if x)
        if w and (best is None or w < best):
            best = w
    return best


def oracle_rank(rows, p):
    """Row rank by hand-rolled elimination over the prime field."""
    mat = [list(r) for r in rows]
    rank = 0
    col = 0
    ncols = len(mat[0]) if mat else 0
    while rank < len(mat) and col < ncols:
        pivot = next((i for i in range(rank, len(mat)) if mat[i][col] % p), None)
        if pivot is None:
            col += 1
            continue
        mat[rank], mat[pivot] = mat[pivot], mat[rank]
        inv = pow(mat[rank][col] % p, p - 2, p)
        mat[rank] = [(x * inv) % p for x in mat[rank]]
        for i in range(len(mat)):
            if i != rank and mat[i][col] % p:
                f = mat[i][col] % p
                mat[i] = [(a - f * b) % p for a, b in zip(mat[i], mat[rank])]
        rank += 1
        col += 1
    return rank


def low_order_coeffs(coeff_row, monomials, pt, p, order):
    """Taylor coefficients below `order` of the dehomogenized form at pt.

    Expands each monomial around the point with binomials, in the chart
    where the first nonzero coordinate is one. Independent of the
    derivative machinery under test.
    """
    i0 = next(i for i, c in enumerate(pt) if c)
    rest = [i for i in range(len(pt)) if i != i0]
    low = {}
    for coeff, expo in zip(coeff_row, monomials):
        if coeff % p == 0:
            continue
        cur = {(): coeff % p}
        for idx in rest:
            e, a = expo[idx], pt[idx]
            nxt = {}
            for key, c in cur.items():
                for i in range(e + 1):
                    cc = (c * math.comb(e, i) * pow(a, e - i, p)) % p
                    nxt[key + (i,)] = (nxt.get(key + (i,), 0) + cc) % p
            cur = nxt
        for key, c in cur.items():
            if sum(key) < order:
                low[key] = (low.get(key, 0) + c) % p
    return low


def test_monomial_orders():
    line = monomial_exponents(3, 2)
    assert line == ((3, 0), (2, 1), (1, 2), (0, 3))
    plane = monomial_exponents(2, 3)
    assert len(plane) == 6
    assert plane[0] == (2, 0, 0) and plane[-1] == (0, 0, 2)
    assert len(monomial_exponents(3, 3)) == 10


def test_normalize_point():
    assert normalize_point((2, 4, 6), 7) == (1, 2, 3)
    assert normalize_point((0, 3, 3), 5) == (0, 1, 1)
    with pytest.raises(ValueError):
        normalize_point((0, 0, 0), 5)


def test_rational_point_inventories():
    plane = all_rational_points("P2", 5)
    assert len(plane) == 31
    assert len(set(plane)) == 31
    for pt in plane:
        assert normalize_point(pt, 5) == pt
    line = all_rational_points("P1", 5)
    assert len(line) == 6 and line[-1] == (0, 1)


class TestVanishingSpaces:
    def test_dimension_ladder_through_a_point(self):
        conds = [VanishingCondition((1, 2, 3))]
        dims = [
            vanishing_basis(d, conds, "P2", 7).dim if d else None
            for d in range(4)
        ]
        assert dims[1:] == [2, 5, 9]
        assert vanishing_basis(3, [], "P2", 7).dim == 10

    def test_order_two_takes_three_conditions(self):
        b = vanishing_basis(3, [VanishingCondition((1, 0, 0), order=2)], "P2", 7)
        assert b.dim == 7

    @pytest.mark.parametrize(
        "pt,order",
        [((1, 2, 3), 1), ((0, 1, 3), 1), ((1, 0, 0), 2), ((0, 1, 4), 2)],
    )
    def test_basis_rows_really_vanish(self, pt, order):
        b = vanishing_basis(3, [VanishingCondition(pt, order=order)], "P2", 7)
        assert b.dim == 10 - order * (order + 1) // 2
        for row in b.basis.tolist():
            low = low_order_coeffs(row, b.monomials, pt, 7, order)
            assert all(v == 0 for v in low.values())

    def test_dimension_matches_rank_oracle(self):
        b = vanishing_basis(2, [VanishingCondition((1, 1, 1))], "P2", 5)
        assert b.dim == oracle_rank(b.basis.tolist(), 5) == 5

    def test_evaluation_matches_direct_substitution(self):
        b = vanishing_basis(2, [], "P1", 5)
        vals = evaluate_basis(b, (1, 3))
        for row, got in zip(b.basis.tolist(), vals):
            direct = sum(
                c * pow(1, e0, 5) * pow(3, e1, 5)
                for c, (e0, e1) in zip(row, b.monomials)
            ) % 5
            assert got % 5 == direct
        # at infinity only the top power of the second variable survives
        assert list(evaluate_basis(b, (0, 1))) == [
            row[-1] for row in b.basis.tolist()
        ]


class TestBuildCode:
    def test_shapes_and_rank(self):
        b = vanishing_basis(1, [], "P2", 5)
        pts = [(1, 0, 0), (1, 1, 0), (1, 0, 1), (0, 1, 1)]
        code = build_code([b], pts, 5)
        assert (code.r, code.num_points, code.n) == (1, 4, 4)
        assert code.k == 3 == oracle_rank(code.generator.tolist(), 5)
        assert code.message_dim == 3

    def test_two_summands_interleave(self):
        b1 = vanishing_basis(1, [], "P1", 5)
        b2 = vanishing_basis(0, [], "P1", 5)
        code = build_code([b1, b2], [(1, 0), (1, 1)], 5)
        assert code.r == 2 and code.n == 4
        arr = code.generator.tolist()
        # columns 0,2 belong to the first summand, 1,3 to the second
        assert [row[1] for row in arr[:2]] == [0, 0]
        assert [row[0] for row in arr[2:]] == [0]

    def test_duplicate_points_rejected_up_to_scaling(self):
        b = vanishing_basis(1, [], "P2", 7)
        with pytest.raises(DuplicatePoint):
            build_code([b], [(1, 2, 3), (2, 4, 6)], 7)

    def test_exceptional_points_may_repeat(self):
        b = vanishing_basis(1, [], "P2", 7)
        code = build_code(
            [b], [(1, 2, 3)], 7, exceptional=[(1, 0, 0), (1, 0, 0)]
        )
        assert code.num_points == 3
        assert code.points[1] == code.points[2] == (1, 0, 0)

    def test_empty_message_space_rejected(self):
        b = vanishing_basis(0, [VanishingCondition((1, 0))], "P1", 5)
        assert b.dim == 0
        with pytest.raises(EmptyMessageSpace):
            build_code([b], [(1, 1)], 5)


class TestReedSolomonGrid:
    def test_mds_for_every_small_length(self):
        for n in range(1, 6):
            pts = all_rational_points("P1", 5)[:n]
            for k in range(1, n + 1):
                b = vanishing_basis(k - 1, [], "P1", 5)
                code = build_code([b], pts, 5)
                assert code.k == k
                d = min_distance(code)
                assert d == n - k + 1
                assert oracle_min_weight(code) == d

    def test_distance_is_cached(self):
        b = vanishing_basis(1, [], "P1", 5)
        code = build_code([b], all_rational_points("P1", 5)[:4], 5)
        d = min_distance(code)
        assert code.d_min == d == 3
        assert min_distance(code, budget=1) == 3  # cache beats the budget

    def test_budget_cuts_off_enumeration(self):
        b = vanishing_basis(4, [], "P1", 5)
        code = build_code([b], all_rational_points("P1", 5), 5)
        assert min_distance(code, budget=100) is INFEASIBLE
        assert code.d_min is None

    def test_empty_code_rejected(self):
        dead = LinearCode(
            p=5, r=1, points=((1, 0), (1, 1)),
            generator=FMatrix.zeros(5, 1, 2), k=0, message_dim=1,
        )
        with pytest.raises(EmptyCode):
            min_distance(dead)


FROZEN_REGULAR = [
    (1, 1, 1), (1, 1, 2), (1, 1, 3), (1, 1, 4), (1, 2, 1),
    (1, 2, 2), (1, 2, 3), (1, 2, 4), (1, 3, 1), (1, 3, 2),
]


def scaled_instance():
    basis = vanishing_basis(2, [VanishingCondition((1, 0, 0))], "P2", 5)
    return build_code(
        [basis], FROZEN_REGULAR, 5, exceptional=[(1, 0, 0), (1, 0, 0)]
    )


class TestScaledContractionInstance:
    """Quadrics through a blown-down point, ten honest points, two dead."""

    def test_point_list_is_the_frozen_prefix(self):
        derived = [
            pt for pt in all_rational_points("P2", 5) if all(c for c in pt)
        ][:10]
        assert derived == FROZEN_REGULAR

    def test_headline_numbers(self):
        code = scaled_instance()
        assert code.message_dim == 5 and code.k == 5
        assert (code.num_points, code.n) == (12, 12)
        assert (5**5 - 1) // 4 == 781
        d = min_distance(code)
        assert d == 4
        assert oracle_min_weight(code) == 4

    def test_contraction_drops_the_dead_blocks(self):
        code = scaled_instance()
        min_distance(code)
        contracted, report = zero_block_contract(code)
        assert report.zero_blocks == (10, 11)
        assert (report.n_points_before, report.n_points_after) == (12, 10)
        assert report.delta_before == Fraction(4, 12)
        assert report.delta_after == Fraction(4, 10)
        assert contracted.d_min is None  # recomputed, not copied
        assert min_distance(contracted) == 4
        assert oracle_min_weight(contracted) == 4

    def test_compare_route(self):
        code = scaled_instance()
        rep = mmp_compare(code)
        assert rep.zero_blocks == (10, 11)
        assert rep.d_min == 4
        assert rep.delta_before == Fraction(1, 3)
        assert rep.delta_after == Fraction(2, 5)
        assert rep.ratio == Fraction(6, 5)
        assert rep.improved
        assert code.d_min == 4  # inherited across the zero coordinates


class TestContractionRandomized:
    def test_fifty_padded_instances(self):
        rng = random.Random(3119)
        line = all_rational_points("P1", 5)
        for _ in range(50):
            n = rng.randint(3, 6)
            k = rng.randint(1, min(n, 4))
            pts = rng.sample(line, n)
            base = build_code([vanishing_basis(k - 1, [], "P1", 5)], pts, 5)
            d = min_distance(base)
            z = rng.randint(1, 3)
            padded = append_zero_blocks(
                base, [line[rng.randrange(len(line))] for _ in range(z)]
            )
            assert padded.d_min is None
            perm = list(range(n + z))
            rng.shuffle(perm)
            padded = permute_points(padded, perm)
            contracted, report = zero_block_contract(padded)
            assert len(report.zero_blocks) == z
            assert report.n_points_after == n
            assert sorted(contracted.points) == sorted(base.points)
            assert min_distance(contracted) == d
            rep = mmp_compare(padded)
            assert rep.ratio == Fraction(n + z, n)
            assert rep.improved
            assert rep.delta_after == Fraction(d, n)

    def test_untouched_code_reports_no_improvement(self):
        b = vanishing_basis(1, [], "P1", 5)
        code = build_code([b], all_rational_points("P1", 5)[:4], 5)
        rep = mmp_compare(code)
        assert rep.zero_blocks == ()
        assert rep.ratio == 1
        assert not rep.improved

    def test_compare_propagates_infeasibility(self):
        b = vanishing_basis(4, [], "P1", 5)
        code = build_code([b], all_rational_points("P1", 5), 5)
        assert mmp_compare(code, budget=100) is INFEASIBLE

    def test_compare_refuses_fully_dead_code(self):
        dead = LinearCode(
            p=5, r=1, points=((1, 0), (1, 1)),
            generator=FMatrix.zeros(5, 1, 2), k=1, message_dim=1,
        )
        with pytest.raises(EmptyCode):
            mmp_compare(dead)


def test_normalized_distance_contract():
    b = vanishing_basis(1, [], "P1", 5)
    code = build_code([b], all_rational_points("P1", 5)[:4], 5)
    with pytest.raises(DistanceUnknown):
        normalized_distance(code)
    min_distance(code)
    assert normalized_distance(code) == Fraction(3, 4)


def test_permute_points_is_weight_preserving():
    code = scaled_instance()
    d = min_distance(code)
    perm = list(range(code.num_points))
    random.Random(7).shuffle(perm)
    moved = permute_points(code, perm)
    assert moved.d_min == d
    assert sorted(moved.points) == sorted(code.points)
    assert oracle_min_weight(moved) == d
    with pytest.raises(ValueError):
        permute_points(code, [0, 0] + perm[2:])
