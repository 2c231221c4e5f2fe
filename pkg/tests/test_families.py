"""Tests for rank3.families: constructions, parameters, groups, descriptors."""

import numpy as np
import pytest

from rank3.families import (
    AsymmetricConnectionSet,
    AsymmetricOrbit,
    BadCongruence,
    ConnectionSet,
    FamilyId,
    OrderCondition,
    Unsupported,
    VectorSpace,
    WrongOrbitCount,
    ZeroInSet,
    affine_orbital_graph,
    affine_polar,
    affine_polar_group,
    alternating_forms,
    alternating_forms_group,
    bilinear_forms,
    bilinear_forms_group,
    cayley_graph,
    family_graph,
    family_group,
    format_descriptor,
    hamming2,
    hamming2_group,
    paley,
    parse_descriptor,
    peisert,
    quaternion_normalizer_spec,
    sl25_with_scalars_spec,
    van_lint_schrijver,
)
from rank3.gf import make_field
from rank3.graphs import DenseGraph, complement, srg_params


def srg(g):
    p = srg_params(g)
    return (p.n, p.k, p.lam, p.mu)
from rank3.permgrp import (
    MatrixGroupSpec,
    affine_perms,
    linear_perms,
    rank_and_subdegrees,
    schreier_sims,
    write_matrix_spec,
)


def digit_rows(n, p, dim):
    idx = np.arange(n)
    cols = []
    for _ in range(dim):
        idx, r = np.divmod(idx, p)
        cols.append(r)
    return np.stack(cols, axis=1)


def assert_translation_invariant(g, p, dim, seed=7):
    """Adjacency is preserved by x -> x + a for 10 sampled translations a."""
    digs = digit_rows(g.n, p, dim)
    pv = p ** np.arange(dim)
    rng = np.random.default_rng(seed)
    for a in rng.integers(1, g.n, size=10):
        img = ((digs + digs[a]) % p) @ pv
        assert np.array_equal(g.adj[np.ix_(img, img)], g.adj)


# -- cayley_graph ---------------------------------------------------------------


class TestCayleyGraph:
    def test_pentagon(self):
        g = cayley_graph(ConnectionSet(make_field(5, 1), frozenset({1, 4})))
        edges = {(u, v) for u in range(5) for v in range(u + 1, 5) if g.has_edge(u, v)}
        assert edges == {(0, 1), (1, 2), (2, 3), (3, 4), (0, 4)}
        assert g == paley(5)

    def test_asymmetric_rejected(self):
        # squares mod 7 = {1,2,4}; -1 is a nonresidue so the set is not symmetric
        with pytest.raises(AsymmetricConnectionSet):
            cayley_graph(ConnectionSet(make_field(7, 1), frozenset({1, 2, 4})))

    def test_zero_rejected(self):
        with pytest.raises(ZeroInSet):
            cayley_graph(ConnectionSet(make_field(5, 1), frozenset({0, 1, 4})))

    def test_full_set_gives_complete_graph(self):
        g = cayley_graph(ConnectionSet(make_field(2, 3), frozenset(range(1, 8))))
        assert g.n == 8
        assert (g.degrees() == 7).all()

    def test_empty_and_out_of_range(self):
        f = make_field(5, 1)
        with pytest.raises(ValueError):
            cayley_graph(ConnectionSet(f, frozenset()))
        with pytest.raises(ValueError):
            cayley_graph(ConnectionSet(f, frozenset({1, 5})))

    def test_vector_space_container(self):
        g = cayley_graph(ConnectionSet(VectorSpace(2, 2), frozenset({1, 2, 3})))
        assert (g.degrees() == 3).all()  # K4
        with pytest.raises(ValueError):
            VectorSpace(4, 2)  # p must be prime
        with pytest.raises(ValueError):
            VectorSpace(2, 0)

    def test_translation_invariance(self):
        assert_translation_invariant(paley(13), 13, 1)
        assert_translation_invariant(affine_polar(2, 2, -1), 2, 4)


# -- one-dimensional families -----------------------------------------------------


class TestPaley:
    @pytest.mark.parametrize("q", [5, 9, 13, 17, 25, 29, 37, 41, 49, 81])
    def test_srg_params(self, q):
        assert srg(paley(q)) == ((q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4))

    @pytest.mark.parametrize("q", [2, 3, 7, 8, 11, 23, 27])
    def test_bad_congruence(self, q):
        with pytest.raises(BadCongruence):
            paley(q)

    def test_not_prime_power(self):
        with pytest.raises(ValueError):
            paley(12)


class TestPeisert:
    @pytest.mark.parametrize("q", [9, 49, 81, 121])
    def test_params_and_valency(self, q):
        g = peisert(q)
        assert (g.degrees() == (q - 1) // 2).all()
        assert srg(g) == ((q, (q - 1) // 2, (q - 5) // 4, (q - 1) // 4))

    @pytest.mark.parametrize("q", [5, 13, 25, 27, 343, 7])
    def test_bad_congruence(self, q):
        # p = 1 mod 4, or odd exponent
        with pytest.raises(BadCongruence):
            peisert(q)


class TestVanLintSchrijver:
    @pytest.mark.parametrize(
        "q,e,params",
        [
            (16, 3, (16, 5, 0, 2)),
            (25, 3, (25, 8, 3, 2)),
            (64, 3, (64, 21, 8, 6)),
            (81, 5, (81, 16, 7, 2)),
        ],
    )
    def test_srg_params(self, q, e, params):
        g = van_lint_schrijver(q, e)
        assert (g.degrees() == (q - 1) // e).all()
        assert srg(g) == params

    def test_valency_256(self):
        assert (van_lint_schrijver(256, 5).degrees() == 51).all()

    def test_e2_rejected(self):
        with pytest.raises(Unsupported):
            van_lint_schrijver(25, 2)

    @pytest.mark.parametrize(
        "q,e",
        [
            (13, 3),  # ord_3(13) = 1
            (243, 11),  # ord_11(3) = 5, not 10
            (25, 5),  # p = e
            (8, 3),  # exponent 3 is not a multiple of e - 1 = 2
            (64, 7),  # ord_7(2) = 3, not 6
        ],
    )
    def test_order_condition(self, q, e):
        with pytest.raises(OrderCondition):
            van_lint_schrijver(q, e)

    def test_nonprime_e(self):
        with pytest.raises(ValueError):
            van_lint_schrijver(16, 4)


# -- Hamming, polar, forms families ------------------------------------------------


class TestHamming2:
    @pytest.mark.parametrize("m", [3, 5, 9])
    def test_srg_params(self, m):
        assert srg(hamming2(m)) == ((m * m, 2 * (m - 1), m - 2, 2))

    def test_small_m_rejected(self):
        with pytest.raises(ValueError):
            hamming2(1)

    def test_group_rank(self):
        assert rank_and_subdegrees(hamming2_group(5)) == (3, [8, 16])
        assert rank_and_subdegrees(hamming2_group(9)) == (3, [16, 64])


class TestAffinePolar:
    def test_minus_4_2(self):
        g = affine_polar(2, 2, -1)
        assert (g.degrees() == 5).all()
        assert srg(g) == ((16, 5, 0, 2))

    def test_plus_4_3(self):
        assert srg(affine_polar(2, 3, 1)) == ((81, 32, 13, 12))

    def test_minus_6_2(self):
        assert srg(affine_polar(3, 2, -1)) == ((64, 27, 10, 12))

    def test_plus_4_2(self):
        assert srg(affine_polar(2, 2, 1)) == ((16, 9, 4, 6))

    def test_parameter_validation(self):
        with pytest.raises(ValueError):
            affine_polar(1, 3, 1)
        with pytest.raises(ValueError):
            affine_polar(2, 3, 0)
        with pytest.raises(ValueError):
            affine_polar(3, 5, 1)  # 5**6 vertices exceed the cap

    def test_group_orders_and_ranks(self):
        spec = affine_polar_group(2, 2, -1)
        assert schreier_sims(linear_perms(spec)).order == 120
        assert rank_and_subdegrees(affine_perms(spec)) == (3, [5, 10])
        spec = affine_polar_group(2, 3, 1)
        assert schreier_sims(linear_perms(spec)).order == 2304
        assert rank_and_subdegrees(affine_perms(spec)) == (3, [32, 48])

    def test_group_minus_6_2(self):
        spec = affine_polar_group(3, 2, -1)
        assert schreier_sims(linear_perms(spec)).order == 51840
        assert rank_and_subdegrees(affine_perms(spec)) == (3, [27, 36])

    def test_group_exceptions(self):
        with pytest.raises(Unsupported):
            affine_polar_group(2, 4, -1)  # non-prime field
        with pytest.raises(Unsupported):
            affine_polar_group(2, 2, 1)  # transvections fall short here


class TestBilinearForms:
    def test_2_3(self):
        g = bilinear_forms(2, 3)
        assert (g.degrees() == 21).all()
        assert srg(g) == ((64, 21, 8, 6))

    def test_3_3(self):
        assert srg(bilinear_forms(3, 3)) == ((729, 104, 31, 12))

    def test_2_5(self):
        g = bilinear_forms(2, 5)
        assert (g.degrees() == 93).all()
        assert srg(g) == ((1024, 93, 32, 6))

    def test_validation(self):
        with pytest.raises(ValueError):
            bilinear_forms(2, 1)
        with pytest.raises(ValueError):
            bilinear_forms(3, 4)  # 3**8 vertices exceed the cap

    def test_group_ranks(self):
        assert rank_and_subdegrees(affine_perms(bilinear_forms_group(2, 3))) == (
            3,
            [21, 42],
        )
        assert rank_and_subdegrees(affine_perms(bilinear_forms_group(3, 3))) == (
            3,
            [104, 624],
        )

    @pytest.mark.slow
    def test_gf4_valency_and_group(self):
        g = bilinear_forms(4, 3)
        assert g.n == 4096
        assert (g.degrees() == 315).all()
        assert rank_and_subdegrees(affine_perms(bilinear_forms_group(4, 3))) == (
            3,
            [315, 3780],
        )


class TestAlternatingForms:
    def test_params(self):
        g = alternating_forms()
        assert g.n == 1024
        assert (g.degrees() == 155).all()
        assert srg(g) == ((1024, 155, 42, 20))

    def test_other_parameters_rejected(self):
        with pytest.raises(Unsupported):
            alternating_forms(4, 2)
        with pytest.raises(Unsupported):
            alternating_forms(5, 3)

    def test_group_rank(self):
        assert rank_and_subdegrees(affine_perms(alternating_forms_group())) == (
            3,
            [155, 868],
        )


# -- generic orbital construction ---------------------------------------------------


class TestAffineOrbitalGraph:
    def test_gl_is_transitive(self):
        spec = MatrixGroupSpec(
            3, 2, (((1, 1), (0, 1)), ((0, 1), (1, 0)), ((2, 0), (0, 1)))
        )
        with pytest.raises(WrongOrbitCount) as exc:
            affine_orbital_graph(spec)
        assert exc.value.count == 1

    def test_too_many_orbits(self):
        spec = MatrixGroupSpec(13, 1, (((3,),),))  # <3> has 4 orbits on F13*
        with pytest.raises(WrongOrbitCount) as exc:
            affine_orbital_graph(spec)
        assert exc.value.count == 4

    def test_asymmetric_orbit(self):
        spec = MatrixGroupSpec(7, 1, (((2,),),))  # squares mod 7, -1 nonresidue
        with pytest.raises(AsymmetricOrbit):
            affine_orbital_graph(spec)

    def test_square_orbit_recovers_paley(self):
        spec = MatrixGroupSpec(13, 1, (((4,),),))  # <4> = squares mod 13
        assert affine_orbital_graph(spec, 0) == paley(13)
        assert affine_orbital_graph(spec, 1) == complement(paley(13))
        with pytest.raises(ValueError):
            affine_orbital_graph(spec, 2)

    def test_quaternion_normalizer_13(self):
        spec = quaternion_normalizer_spec(13)
        g = affine_orbital_graph(spec)
        assert srg(g) == ((169, 72, 31, 30))
        assert rank_and_subdegrees(affine_perms(spec)) == (3, [72, 96])

    def test_quaternion_normalizer_7_is_transitive(self):
        with pytest.raises(WrongOrbitCount) as exc:
            affine_orbital_graph(quaternion_normalizer_spec(7))
        assert exc.value.count == 1

    def test_quaternion_spec_validation(self):
        with pytest.raises(ValueError):
            quaternion_normalizer_spec(2)

    def test_index_two_subgroup_at_7(self):
        # <X, Y, (1 + X + Y + XY)/2, 2I>: order 72, orbits 24 + 24
        spec = MatrixGroupSpec(
            7,
            2,
            (
                ((0, 6), (1, 0)),
                ((2, 3), (3, 5)),
                ((0, 2), (3, 1)),
                ((2, 0), (0, 2)),
            ),
        )
        g = affine_orbital_graph(spec)
        assert srg(g) == ((49, 24, 11, 12))
        assert rank_and_subdegrees(affine_perms(spec)) == (3, [24, 24])

    @pytest.mark.slow
    def test_sl25_41(self):
        spec = sl25_with_scalars_spec(41)
        g = affine_orbital_graph(spec)
        assert srg(g) == ((1681, 480, 149, 132))
        assert rank_and_subdegrees(affine_perms(spec)) == (3, [480, 1200])

    def test_spec_file_round_trip(self, tmp_path):
        spec = MatrixGroupSpec(13, 1, (((4,),),))
        path = tmp_path / "squares13.txt"
        write_matrix_spec(spec, path)
        fid = parse_descriptor(f"orbital:{path}")
        assert fid.params[0] == "file"
        assert family_graph(fid) == paley(13)


# -- descriptors and dispatch --------------------------------------------------------


DESCRIPTOR_CASES = [
    ("paley:49", FamilyId("Paley", (49,))),
    ("peisert:81", FamilyId("Peisert", (81,))),
    ("vls:16:3", FamilyId("VLS", (16, 3))),
    ("hamming2:9", FamilyId("Hamming2", (9,))),
    ("vo:-:4:2", FamilyId("AffinePolar", (2, 2, -1))),
    ("vo:+:8:2", FamilyId("AffinePolar", (4, 2, 1))),
    ("hq:2:3", FamilyId("BilinearForms", (2, 3))),
    ("a52", FamilyId("AlternatingForms", (5, 2))),
    ("orbital:q8:13", FamilyId("AffineOrbital", ("q8", 13))),
    ("orbital:sl25:41", FamilyId("AffineOrbital", ("sl25", 41))),
]


class TestDescriptors:
    @pytest.mark.parametrize("text,fid", DESCRIPTOR_CASES)
    def test_round_trip(self, text, fid):
        assert parse_descriptor(text) == fid
        assert format_descriptor(fid) == text

    @pytest.mark.parametrize(
        "text",
        ["foo:1", "paley", "paley:x", "vo:*:4:2", "vo:-:5:2", "vls:16", "orbital"],
    )
    def test_bad_descriptors(self, text):
        with pytest.raises(ValueError):
            parse_descriptor(text)

    def test_unknown_tag_rejected(self):
        with pytest.raises(ValueError):
            FamilyId("Nope", ())

    def test_family_graph_dispatch(self):
        assert family_graph(FamilyId("Paley", (9,))) == paley(9)
        assert family_graph(FamilyId("Hamming2", (3,))) == hamming2(3)
        assert family_graph(FamilyId("AffinePolar", (2, 2, -1))) == affine_polar(
            2, 2, -1
        )


class TestFamilyGroups:
    @pytest.mark.parametrize(
        "desc,expected",
        [
            ("paley:9", (3, [4, 4])),
            ("paley:49", (3, [24, 24])),
            ("peisert:49", (3, [24, 24])),
            ("peisert:81", (3, [40, 40])),
            ("vls:16:3", (3, [5, 10])),
            ("vls:25:3", (3, [8, 16])),
            ("vls:64:3", (3, [21, 42])),
            ("vls:81:5", (3, [16, 64])),
            ("hamming2:9", (3, [16, 64])),
            ("vo:-:4:2", (3, [5, 10])),
            ("hq:2:3", (3, [21, 42])),
            ("orbital:q8:13", (3, [72, 96])),
        ],
    )
    def test_rank_and_subdegrees(self, desc, expected):
        gs = family_group(parse_descriptor(desc))
        assert rank_and_subdegrees(gs) == expected

    def test_vls_256_subdegrees(self):
        gs = family_group(parse_descriptor("vls:256:5"))
        assert rank_and_subdegrees(gs) == (3, [51, 204])

    def test_group_is_automorphisms(self):
        # every family group generator preserves the graph's adjacency
        for desc in ["paley:13", "peisert:9", "vls:16:3", "hamming2:5", "vo:-:4:2",
                     "hq:2:3", "orbital:q8:13"]:
            fid = parse_descriptor(desc)
            g = family_graph(fid)
            for perm in family_group(fid).gens:
                img = perm.img
                assert np.array_equal(g.adj[np.ix_(img, img)], g.adj), desc

    def test_unavailable_group_is_none(self):
        assert family_group(FamilyId("AffinePolar", (2, 4, -1))) is None
        assert family_group(FamilyId("AffinePolar", (2, 2, 1))) is None
