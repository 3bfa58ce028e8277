"""The exact solver, the brute-force oracle, and the structural checkers."""

import random
from fractions import Fraction

import pytest

import permdeg as pd
from permdeg.groups import Subgroup
from permdeg.solver import cover_sets

from conftest import group_for, mu_of


def rep_of_orders(G, orders):
    """Representation built from the first lattice subgroup of each order."""
    lat = G.lattice()
    parts = []
    pool = list(lat.subgroups)
    for o in orders:
        H = next(H for H in pool if H.order == o)
        pool.remove(H)
        parts.append(H)
    return pd.representation(G, parts)


class TestRepresentationBasics:
    def test_degree_of_full_group(self):
        G = group_for("S3")
        assert pd.degree(pd.representation(G, [G.full_subgroup()])) == 1

    def test_degree_v4_two_z2(self):
        assert pd.degree(rep_of_orders(group_for("Ab(2,2)"), [2, 2])) == 4

    def test_degree_s3_point_stabilizer(self):
        assert pd.degree(rep_of_orders(group_for("S3"), [2])) == 3

    def test_regular_rep_faithful(self):
        for expr in ("C6", "Q8", "S3"):
            G = group_for(expr)
            assert pd.is_faithful(pd.representation(G, [G.trivial_subgroup()]))

    def test_q8_single_proper_part_never_faithful(self):
        G = group_for("Q8")
        for H in G.lattice().subgroups:
            if 1 < H.order < 8:
                assert not pd.is_faithful(pd.representation(G, [H]))

    def test_s3_point_stabilizer_faithful(self):
        assert pd.is_faithful(rep_of_orders(group_for("S3"), [2]))

    def test_empty_rep_not_faithful_on_nontrivial(self):
        G = group_for("C2")
        R = pd.representation(G, [])
        assert not pd.is_faithful(R)
        assert pd.kernel_bits(R) == (1 << 2) - 1


class TestRealizeAction:
    @staticmethod
    def image_size(R):
        return len(set(pd.realize_action(R)))

    def test_regular_action_image(self):
        G = group_for("D4")
        R = pd.representation(G, [G.trivial_subgroup()])
        perms = pd.realize_action(R)
        assert len(perms[0]) == G.order
        assert self.image_size(R) == G.order

    def test_s3_three_point_action(self):
        R = rep_of_orders(group_for("S3"), [2])
        perms = pd.realize_action(R)
        assert len(perms[0]) == 3
        assert len(set(perms)) == 6

    def test_image_size_is_order_over_kernel(self):
        rng = random.Random(2)
        for expr in ("C12", "D6", "Q8", "Ab(2,2)"):
            G = group_for(expr)
            lat = G.lattice()
            for _ in range(10):
                parts = rng.sample(lat.subgroups, rng.randint(1, 3))
                R = pd.representation(G, parts)
                k = bin(pd.kernel_bits(R)).count("1")
                assert len(set(pd.realize_action(R))) == G.order // k

    def test_action_is_homomorphism(self):
        G = group_for("D4")
        R = rep_of_orders(G, [2, 4])
        perms = pd.realize_action(R)
        for a in range(G.order):
            for b in range(G.order):
                composed = tuple(perms[a][perms[b][i]] for i in range(len(perms[0])))
                assert composed == perms[G.mul(a, b)]


def self_or(x):
    return x


class TestCoverSets:
    def test_trivial_core_covers_everything(self):
        G = group_for("S3")
        lat = G.lattice()
        covers = cover_sets(G, lat)
        full = (1 << len(lat.minimal_normals)) - 1
        for i, H in enumerate(lat.subgroups):
            if pd.core(G, H).is_trivial():
                assert covers[i] == full

    def test_full_group_covers_nothing(self):
        G = group_for("Ab(2,2)")
        lat = G.lattice()
        covers = cover_sets(G, lat)
        assert covers[lat.subgroup_index(G.full_subgroup())] == 0

    def test_v4_z2_covers_other_two(self):
        G = group_for("Ab(2,2)")
        lat = G.lattice()
        covers = cover_sets(G, lat)
        for i, H in enumerate(lat.subgroups):
            if H.order == 2:
                assert bin(covers[i]).count("1") == 2
                # it fails to cover exactly itself
                k = lat.minimal_normals.index(i)
                assert not (covers[i] >> k) & 1

    def test_faithful_iff_covered_randomized(self):
        rng = random.Random(5)
        for expr in ("C12", "D6", "Q8", "Ab(2,2,2)", "S4"):
            G = group_for(expr)
            lat = G.lattice()
            covers = cover_sets(G, lat)
            full = (1 << len(lat.minimal_normals)) - 1
            for _ in range(20):
                idxs = rng.sample(range(len(lat)), rng.randint(1, 3))
                R = pd.representation(G, [lat.subgroups[i] for i in idxs])
                mask = 0
                for i in idxs:
                    mask |= covers[i]
                assert pd.is_faithful(R) == (mask == full)


class TestMuExact:
    @pytest.mark.parametrize("expr,expected", [
        ("C8", 8), ("S3", 3), ("C6", 5), ("Ab(2,2)", 4), ("Q8", 8),
        ("C12", 7), ("Ab(2,2,2)", 6), ("S4", 4), ("D4", 4), ("D6", 5),
        ("SL(2,3)", 8),
    ])
    def test_known_values(self, expr, expected):
        res = pd.mu_exact(group_for(expr))
        assert res.mu == expected
        assert res.proven_optimal
        assert pd.is_faithful(res.witness)
        assert pd.degree(res.witness) == expected

    def test_trivial_group(self):
        res = pd.mu_exact(pd.make_cyclic(1))
        assert res.mu == 1

    def test_cayley_bound(self, catalog48):
        for entry in catalog48:
            if entry.order <= 24:
                assert mu_of(entry.name) <= entry.order

    def test_deterministic_witness(self):
        a = pd.mu_exact(pd.build(pd.parse_group_expr("D6")))
        b = pd.mu_exact(pd.build(pd.parse_group_expr("D6")))
        assert [H.bits for H in a.witness.parts] == [H.bits for H in b.witness.parts]


class TestMuOracle:
    @pytest.mark.parametrize("expr,expected", [
        ("C6", 5), ("Ab(2,2)", 4), ("Q8", 8), ("S3", 3), ("S4", 4),
    ])
    def test_known_values(self, expr, expected):
        assert pd.mu_oracle(group_for(expr)).mu == expected

    def test_order_cap(self):
        with pytest.raises(pd.ResourceCapError):
            pd.mu_oracle(group_for("SL(2,5)"))

    def test_agrees_with_exact_small(self):
        for expr in ("C16", "D8", "Q16", "Ab(4,2)", "SL(2,3)", "D12",
                     "Ab(3,3)", "C24"):
            G = group_for(expr)
            assert pd.mu_oracle(G).mu == pd.mu_exact(G).mu


class TestAbelianFormula:
    @pytest.mark.parametrize("factors,expected", [
        ((4, 3), 7), ((2, 2), 4), ((8,), 8), ((2, 3), 5),
    ])
    def test_m_value(self, factors, expected):
        G = pd.make_abelian(list(factors))
        assert pd.m_value(pd.primary_decomposition(G)) == expected

    def test_m_value_trivial_is_one(self):
        assert pd.m_value(pd.primary_decomposition(pd.make_cyclic(1))) == 1

    @pytest.mark.parametrize("expr,expected", [
        ("C12", 7), ("Ab(2,2,2)", 6), ("C6", 5), ("Ab(9,3)", 12),
        ("Ab(8,4,2)", 14), ("C100", 29),
    ])
    def test_mu_abelian(self, expr, expected):
        assert pd.mu_abelian(group_for(expr)) == expected

    def test_mu_abelian_rejects_nonabelian(self):
        with pytest.raises(pd.DomainError):
            pd.mu_abelian(group_for("S3"))

    def test_witness_structure(self):
        G = group_for("C12")
        W = pd.abelian_witness(G)
        assert pd.is_faithful(W)
        assert pd.degree(W) == 7

    def test_m_function_lemma_properties(self):
        # m(K) <= |K|; m(K x L) = m(K) + m(L); monotone under subgroups
        for expr in ("C12", "Ab(4,2)", "Ab(2,2,2)", "Ab(9,3)", "C30"):
            G = group_for(expr)
            mG = pd.m_value(pd.primary_decomposition(G))
            assert mG <= G.order
            for H in G.lattice().subgroups:
                Hg, _ = pd.subgroup_as_group(H)
                assert pd.m_value(pd.primary_decomposition(Hg)) <= mG
        for a, b in (("C4", "C3"), ("Ab(2,2)", "C9"), ("C8", "C2")):
            K, L = group_for(a), group_for(b)
            P = pd.direct_product(K, L)
            assert (pd.m_value(pd.primary_decomposition(P))
                    == pd.m_value(pd.primary_decomposition(K))
                    + pd.m_value(pd.primary_decomposition(L)))


class TestInducedRepresentation:
    def test_on_full_group_is_same(self):
        G = group_for("S3")
        R = rep_of_orders(G, [2])
        ind = pd.induced_representation(R, G.full_subgroup())
        assert [H.bits for H in ind.parts] == [H.bits for H in R.parts]

    def test_induced_need_not_be_faithful(self):
        # restricting the faithful 3-point representation of S3 to the very
        # stabilizer it uses kills faithfulness
        G = group_for("S3")
        R = rep_of_orders(G, [2])
        ind = pd.induced_representation(R, R.parts[0])
        assert not pd.is_faithful(ind)

    def test_on_trivial_subgroup_faithful(self):
        G = group_for("D4")
        R = rep_of_orders(G, [4])
        ind = pd.induced_representation(R, G.trivial_subgroup())
        assert pd.is_faithful(ind)


class TestReduceToMeetIrreducible:
    def test_already_irreducible_unchanged(self):
        G = group_for("S3")
        res = pd.mu_exact(G)
        out = pd.reduce_to_meet_irreducible(res.witness)
        assert sorted(H.bits for H in out.parts) == sorted(
            H.bits for H in res.witness.parts)

    def test_v4_trivial_part_splits(self):
        G = group_for("Ab(2,2)")
        R = pd.representation(G, [G.trivial_subgroup()])
        out = pd.reduce_to_meet_irreducible(R)
        assert sorted(H.order for H in out.parts) == [2, 2]
        assert pd.degree(out) == 4
        assert pd.is_faithful(out)

    def test_rejects_nonminimal(self):
        G = group_for("C6")  # mu = 5, regular rep degree 6
        R = pd.representation(G, [G.trivial_subgroup()])
        with pytest.raises(pd.PreconditionError):
            pd.reduce_to_meet_irreducible(R)

    def test_rejects_unfaithful(self):
        G = group_for("Q8")
        R = pd.representation(G, [pd.center(G), pd.center(G), pd.center(G),
                                  pd.center(G)])
        assert pd.degree(R) == 16  # wrong on purpose: not faithful either
        with pytest.raises(pd.PreconditionError):
            pd.reduce_to_meet_irreducible(R)


class TestDecompositions:
    def test_product_construction_faithful(self):
        G = H = group_for("C2")
        P = pd.direct_product(G, H)
        lat = P.lattice()
        # 1 x H = {0, 1}; G x 1 = {0, 2} under pair indexing
        R = pd.representation(P, [Subgroup(P, 0b0011), Subgroup(P, 0b0101)])
        # part 0 = 1 x H serves the G side; part 1 = G x 1 serves the H side
        report = pd.check_decomposition(G, H, R, [0])
        assert report.kind == "faithful"

    def test_coprime_minimal_splits(self):
        G, H = group_for("C4"), group_for("C3")
        P = pd.direct_product(G, H)
        res = pd.mu_exact(P)
        report = pd.find_weak_decomposition(G, H, res.witness)
        assert report is not None
        assert pd.weak_decomposition_inequality_check(report)
        assert (report.induced_degree_left + report.induced_degree_right
                <= pd.degree(res.witness))

    def test_q8_z4_weak_decomposition_found(self):
        G, H = group_for("Q8"), group_for("C4")
        P = pd.direct_product(G, H)
        res = pd.mu_exact(P)
        report = pd.find_weak_decomposition(G, H, res.witness)
        assert report is not None
        assert pd.weak_decomposition_inequality_check(report)

    def test_single_trivial_part_not_decomposable(self):
        G, H = group_for("C2"), group_for("C3")
        P = pd.direct_product(G, H)
        R = pd.representation(P, [P.trivial_subgroup()])
        assert pd.find_weak_decomposition(G, H, R) is None

    def test_inequality_check_rejects_none_kind(self):
        G, H = group_for("C2"), group_for("C3")
        P = pd.direct_product(G, H)
        R = pd.representation(P, [P.full_subgroup()])
        report = pd.check_decomposition(G, H, R, [])
        assert report.kind == "none"
        with pytest.raises(pd.PreconditionError):
            pd.weak_decomposition_inequality_check(report)


class TestCSAndAdditivity:
    def test_abelian_is_cs(self):
        for expr in ("C2", "C12", "Ab(2,2,2)", "Ab(9,3)"):
            assert pd.is_CS(group_for(expr))

    def test_sl25_is_cs(self):
        assert pd.is_CS(group_for("SL(2,5)"))

    def test_s3_not_cs(self):
        assert not pd.is_CS(group_for("S3"))

    def test_trivial_not_cs(self):
        assert not pd.is_CS(pd.make_cyclic(1))

    def test_q8_cs_and_cse(self):
        G = group_for("Q8")
        assert pd.is_CS(G)
        ok, wit = pd.is_CSE(G)
        assert ok and wit.order == 8

    def test_s3_cse_witness_c3(self):
        ok, wit = pd.is_CSE(group_for("S3"))
        assert ok
        assert wit.order == 3

    def test_additivity_coprime(self):
        rec = pd.verify_additivity(group_for("C4"), group_for("C3"))
        assert rec.lhs == rec.rhs == 7
        assert rec.equal and rec.guaranteed == "coprime"

    def test_additivity_cs(self):
        rec = pd.verify_additivity(group_for("Q8"), group_for("C4"))
        assert rec.lhs == rec.rhs == 12
        assert rec.guaranteed == "CS"

    def test_additivity_s3_s3_via_cse(self):
        # S3 has the central-socle subgroup C3 with the same mu, so the
        # product is additive through the extended collection
        rec = pd.verify_additivity(group_for("S3"), group_for("S3"))
        assert rec.lhs == rec.rhs == 6
        assert rec.guaranteed == "CSE"


class TestCompression:
    def test_cr_z6(self):
        assert pd.compression_ratio(group_for("C6")) == Fraction(6, 5)

    def test_cr_q8(self):
        assert pd.compression_ratio(group_for("Q8")) == 1

    def test_cr_s4(self):
        assert pd.compression_ratio(group_for("S4")) == 6

    @pytest.mark.parametrize("expr,expected", [
        ("C9", "cyclic-prime-power"),
        ("Q16", "generalized-quaternion"),
        ("Ab(2,2)", "klein-four"),
        ("C6", "compressible"),
        ("C32", "cyclic-prime-power"),
        ("S3", "compressible"),
    ])
    def test_classify(self, expr, expected):
        verdict = pd.classify_incompressible(group_for(expr))
        assert verdict.structural_type == expected
        assert (expected != "compressible") == (verdict.cr == 1)

    def test_classify_rejects_trivial(self):
        with pytest.raises(pd.DomainError):
            pd.classify_incompressible(pd.make_cyclic(1))

    def test_cr_monotone_full_subgroup(self):
        G = group_for("D6")
        assert pd.cr_monotonicity_check(G, G.full_subgroup())

    def test_cr_monotone_sl25_z5(self):
        G = group_for("SL(2,5)")
        H = next(H for H in G.lattice().subgroups if H.order == 5)
        assert pd.cr_monotonicity_check(G, H)

    def test_cr_monotone_sweep(self, catalog48):
        for entry in catalog48:
            if entry.order > 24:
                continue
            G = group_for(entry.name)
            for H in G.lattice().subgroups:
                assert pd.cr_monotonicity_check(G, H)


class TestSemidirectBound:
    def test_dihedral_from_inversion(self):
        for n in (3, 5):
            Cn, C2 = pd.make_cyclic(n), pd.make_cyclic(2)
            rep = pd.semidirect_bound_check(Cn, C2, pd.inversion_action(Cn, C2))
            assert rep.mu_product == n
            assert rep.bound == n + 2
            assert rep.holds and rep.embedding_injective

    def test_trivial_action_tight(self):
        C4, C3 = pd.make_cyclic(4), pd.make_cyclic(3)
        rep = pd.semidirect_bound_check(C4, C3, pd.trivial_action(C4, C3))
        assert rep.mu_product == 7 and rep.bound == 7
        assert rep.holds and rep.embedding_injective


class TestSocleProperties:
    @pytest.mark.parametrize("expr", ["Ab(2,2)", "Q8", "Ab(9,3)", "C12",
                                      "Ab(2,2,2)", "Q16"])
    def test_minimal_witness_passes(self, expr):
        G = group_for(expr)
        res = pd.mu_exact(G)
        report = pd.socle_induced_properties_check(G, res.witness)
        assert report.passed

    def test_v4_hyperplane_dimensions(self):
        G = group_for("Ab(2,2)")
        res = pd.mu_exact(G)
        # each part is one of the Z2 subgroups: dimension 1 inside the
        # 2-dimensional socle
        report = pd.socle_induced_properties_check(G, res.witness)
        assert report.codimension_one

    def test_rejects_non_cs(self):
        G = group_for("S3")
        with pytest.raises(pd.PreconditionError):
            pd.socle_induced_properties_check(G, pd.mu_exact(G).witness)

    def test_socle_equals_product_of_zp_layers_for_cs(self, catalog48):
        # for central-socle groups the socle is generated by the central
        # elements of prime order
        for entry in catalog48:
            if entry.order > 24:
                continue
            G = group_for(entry.name)
            if not pd.is_CS(G):
                continue
            Z = pd.center(G)
            primes = {2, 3, 5, 7, 11, 13, 17, 19, 23}
            gens = [z for z in Z.elements() if G.element_order(z) in primes]
            if gens:
                assert pd.socle(G).bits == G.subgroup_generated_bits(gens)
            else:
                assert pd.socle(G).is_trivial()
