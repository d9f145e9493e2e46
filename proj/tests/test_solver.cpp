#include "sus/checker.hpp"
#include "sus/oracle.hpp"
#include "sus/solver.hpp"
#include "sus/structure_check.hpp"

#include "test_util.hpp"

using namespace sus;
using sus::test::diag;
using sus::test::single_pair;

TEST(SolveSus, IdenticalPair) {
    std::mt19937_64 rng(1);
    const CMatrix a = random_gaussian(rng, 5, 5);
    const auto out = solve_sus(single_pair(a, a));
    const auto* s = std::get_if<Solved>(&out);
    ASSERT_NE(s, nullptr);
    EXPECT_LE(s->residual, 1e-6);
}

TEST(SolveSus, Permutation) {
    const auto out = solve_sus(single_pair(diag({1.0, 2.0}), diag({2.0, 1.0})));
    const auto* s = std::get_if<Solved>(&out);
    ASSERT_NE(s, nullptr);
    EXPECT_LE((s->u * diag({1.0, 2.0}) * s->u.adjoint() - diag({2.0, 1.0})).norm(), 1e-6);
}

TEST(SolveSus, TraceDifferenceIsNotSimilar) {
    const auto c = single_pair(diag({1.0, 2.0}), diag({1.0, 3.0}));
    const auto out = solve_sus(c);
    const auto* ns = std::get_if<NotSimilar>(&out);
    ASSERT_NE(ns, nullptr);
    EXPECT_TRUE(check_certificate(c, ns->trace, ns->certificate, {}).confirmed);
}

TEST(SolveSus, ScalarChaining) {
    // 1x1 blocks, a_13 and a_34 the only off-diagonal entries
    std::mt19937_64 rng(2);
    const BlockStructure ones({1, 1, 1, 1});
    for (int t = 0; t < 10; ++t) {
        CMatrix a = diag({1.0, 2.0, 3.0, 4.0});
        a(0, 2) = random_gaussian(rng, 1, 1)(0, 0);
        a(2, 3) = random_gaussian(rng, 1, 1)(0, 0);
        CMatrix phases = CMatrix::Zero(4, 4);
        for (Eigen::Index k = 0; k < 4; ++k) {
            phases(k, k) = std::polar(1.0, 6.0 * std::uniform_real_distribution<double>(0, 1)(rng));
        }
        const CMatrix b = phases * a * phases.adjoint();
        const auto c = single_pair(a, b);
        const auto view = induced_partition(c, ones, ones);
        ASSERT_TRUE(std::holds_alternative<PreSolutionInForm>(check_presolution(view, Mode::Sus, {})));
        const auto g = build_induced_graph(view, Mode::Sus, {});
        const auto part = partition_vertices(g);
        const auto [u, v] = build_usol(view, g, path_products(view, g, part));
        const Complex lhs = u(0, 0) * a(0, 2) * a(2, 3) * std::conj(u(3, 3));
        EXPECT_LE(std::abs(lhs - b(0, 2) * b(2, 3)), 1e-12);
        EXPECT_LE((u * a * u.adjoint() - b).norm(), 1e-12);
    }
}

TEST(SolveSus, PlantedCompleteness) {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const std::size_t n = 2 + seed % 9;
        const std::size_t p = 1 + seed % 4;
        const Instance inst = generate({seed, seed % 2 ? InstanceKind::Structured : InstanceKind::PlantedSimilar, 0, n, p});
        const auto out = solve_sus(inst.collection);
        const auto* s = std::get_if<Solved>(&out);
        ASSERT_NE(s, nullptr) << "seed " << seed << " gave " << outcome_name(out);
        EXPECT_LE(s->residual, 1e-6);
        EXPECT_LE(s->trace.size(), n);
        EXPECT_TRUE(check_witness(inst.collection, s->u, s->v, {}).confirmed);
    }
}

TEST(SolveSus, SoundnessTwoConfirmations) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const Instance inst = generate({seed, InstanceKind::PerturbedNonSimilar, 0, 4, 2});
        const auto out = solve_sus(inst.collection);
        const auto* ns = std::get_if<NotSimilar>(&out);
        ASSERT_NE(ns, nullptr) << "seed " << seed;
        EXPECT_TRUE(check_certificate(inst.collection, ns->trace, ns->certificate, {}).confirmed);
        EXPECT_TRUE(trace_word_oracle(inst.collection, 4).has_value());
    }
}

TEST(SolveSus, ScaleInvariance) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        for (auto kind : {InstanceKind::Structured, InstanceKind::PerturbedNonSimilar}) {
            const Instance inst = generate({seed, kind, 0, 5, 2});
            const auto base = solve_sus(inst.collection).index();
            for (double c : {1e-3, 1e3}) {
                std::vector<MatrixPair> scaled;
                for (const auto& pr : inst.collection.pairs()) scaled.push_back({c * pr.a, c * pr.b});
                const auto out = solve_sus(PairCollection(5, 5, scaled));
                EXPECT_EQ(out.index(), base) << "seed " << seed << " c " << c;
            }
        }
    }
}

TEST(SolveSus, NormalSingleMatrixOracle) {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        const std::size_t n = 2 + static_cast<std::size_t>(t % 5);
        const CMatrix q = random_unitary(rng, n);
        CMatrix d = CMatrix::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
        for (Eigen::Index k = 0; k < d.rows(); ++k) d(k, k) = Complex(static_cast<double>(k % 3), static_cast<double>(k % 2));
        const CMatrix a = q * d * q.adjoint();
        CMatrix d2 = d;
        if (t % 2) d2(0, 0) += 0.5;
        const CMatrix w = random_unitary(rng, n);
        const auto c = single_pair(a, w * d2 * w.adjoint());
        const bool expected = small_case_decider(c, Mode::Sus);
        EXPECT_EQ(expected, t % 2 == 0);
        EXPECT_EQ(std::holds_alternative<Solved>(solve_sus(c)), expected);
    }
}

TEST(SolveSus, PairwiseButNotJointly) {
    const Instance inst = generate({7, InstanceKind::Pairwise, 0, 5, 2});
    for (std::size_t l = 0; l < 2; ++l) {
        const PairCollection one(5, 5, {inst.collection.pair(l)});
        EXPECT_TRUE(std::holds_alternative<Solved>(solve_sus(one)));
    }
    const auto out = solve_sus(inst.collection);
    ASSERT_TRUE(std::holds_alternative<NotSimilar>(out));
    EXPECT_LE(outcome_trace(out).size(), 5u);
}

TEST(VerifyWitness, Examples) {
    const Instance inst = generate({1, InstanceKind::PlantedSimilar, 0, 4, 2});
    const CMatrix i4 = CMatrix::Identity(4, 4);
    std::vector<MatrixPair> same;
    for (const auto& pr : inst.collection.pairs()) same.push_back({pr.a, pr.a});
    EXPECT_EQ(verify_witness(PairCollection(4, 4, same), i4, i4, {}).residual, 0.0);
    EXPECT_LE(verify_witness(inst.collection, *inst.u, *inst.u, {}).residual, 1e-12);
    const CMatrix r = random_unitary(std::uint64_t{99}, 4);
    const auto bad = verify_witness(inst.collection, r, r, {});
    EXPECT_GT(bad.residual, 1e-3);
    EXPECT_FALSE(bad.accepted);
}

TEST(SolveSueq, IdenticalCollection) {
    std::mt19937_64 rng(4);
    const CMatrix a = random_gaussian(rng, 3, 5);
    const auto out = solve_sueq(PairCollection(3, 5, {{a, a}}));
    const auto* s = std::get_if<Solved>(&out);
    ASSERT_NE(s, nullptr);
    EXPECT_LE(s->residual, 1e-6);
}

TEST(SolveSueq, PlantedRectangular) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const std::size_t m = 2 + seed % 4;
        const std::size_t n = m + 1 + seed % 3;
        const Instance inst = generate({seed, InstanceKind::PlantedEquivalent, m, n, 1 + seed % 3});
        const auto out = solve_sueq(inst.collection);
        const auto* s = std::get_if<Solved>(&out);
        ASSERT_NE(s, nullptr) << "seed " << seed << " gave " << outcome_name(out);
        EXPECT_LE(s->residual, 1e-6);
        EXPECT_LE(s->trace.size(), m + n);
        for (const auto& st : s->trace) {
            // a step touches one side only
            if (st.touched_side == VertexKind::Row) {
                EXPECT_EQ(st.cols_after, st.cols_before);
                EXPECT_GT(st.rows_after.count(), st.rows_before.count());
            } else {
                EXPECT_EQ(st.rows_after, st.rows_before);
                EXPECT_GT(st.cols_after.count(), st.cols_before.count());
            }
        }
    }
}

TEST(SolveSueq, SingularValueOracle) {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 30; ++t) {
        const std::size_t m = 2 + static_cast<std::size_t>(t % 3);
        const std::size_t n = 2 + static_cast<std::size_t>((t / 3) % 4);
        const CMatrix a = random_gaussian(rng, m, n);
        CMatrix b;
        if (t % 2) {
            b = random_gaussian(rng, m, n);
        } else {
            b = random_unitary(rng, m) * a * random_unitary(rng, n).adjoint();
        }
        const PairCollection c(m, n, {{a, b}});
        const Eigen::JacobiSVD<CMatrix> sa(a);
        const Eigen::JacobiSVD<CMatrix> sb(b);
        const bool by_svd = (sa.singularValues() - sb.singularValues()).norm() <= 1e-8 * (1.0 + a.norm());
        EXPECT_EQ(small_case_decider(c, Mode::SuEq), by_svd);
        EXPECT_EQ(std::holds_alternative<Solved>(solve_sueq(c)), by_svd) << "t " << t;
    }
}

TEST(SolveSueq, TranspositionDuality) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance inst = generate({seed, InstanceKind::PlantedEquivalent, 3, 5, 2});
        std::vector<MatrixPair> t;
        for (const auto& pr : inst.collection.pairs()) t.push_back({pr.a.adjoint(), pr.b.adjoint()});
        const auto out = solve_sueq(PairCollection(5, 3, t));
        const auto* s = std::get_if<Solved>(&out);
        ASSERT_NE(s, nullptr);
        EXPECT_LE(s->residual, 1e-6);
    }
}

TEST(SolveSueq, ScaleInvariance) {
    for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const Instance inst = generate({seed, InstanceKind::PlantedEquivalent, 3, 4, 2});
        std::vector<MatrixPair> perturbed;
        for (const auto& pr : inst.collection.pairs()) perturbed.push_back(pr);
        perturbed[0].b(0, 0) += 0.1;
        const PairCollection bad(3, 4, perturbed);
        const auto base_good = solve_sueq(inst.collection).index();
        const auto base_bad = solve_sueq(bad).index();
        EXPECT_EQ(base_good, 0u);
        EXPECT_EQ(base_bad, 1u);
        for (double c : {1e-3, 1e3}) {
            std::vector<MatrixPair> g;
            std::vector<MatrixPair> b;
            for (const auto& pr : inst.collection.pairs()) g.push_back({c * pr.a, c * pr.b});
            for (const auto& pr : bad.pairs()) b.push_back({c * pr.a, c * pr.b});
            EXPECT_EQ(solve_sueq(PairCollection(3, 4, g)).index(), base_good);
            EXPECT_EQ(solve_sueq(PairCollection(3, 4, b)).index(), base_bad);
        }
    }
}

TEST(SolveSueq, ZeroCollection) {
    const CMatrix z = CMatrix::Zero(2, 3);
    const auto out = solve_sueq(PairCollection(2, 3, {{z, z}}));
    const auto* s = std::get_if<Solved>(&out);
    ASSERT_NE(s, nullptr);
    EXPECT_TRUE(s->trace.empty());
    EXPECT_LE((s->u - CMatrix::Identity(2, 2)).norm(), 1e-15);
    EXPECT_LE((s->v - CMatrix::Identity(3, 3)).norm(), 1e-15);
}
