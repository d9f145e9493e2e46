#include "sus/refine.hpp"
#include "sus/solver.hpp"

#include "test_util.hpp"

using namespace sus;
using sus::test::diag;

namespace {

// Sus collection with 2x2 blocks, distinct scalar diagonal blocks and the given
// off-diagonal blocks (0-based cell, matrix).
PairCollection blocks4(std::size_t d, const std::vector<std::tuple<std::size_t, std::size_t, CMatrix>>& cells) {
    const auto n = static_cast<Eigen::Index>(2 * d);
    CMatrix a = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < d; ++i) {
        const auto o = static_cast<Eigen::Index>(2 * i);
        a.block(o, o, 2, 2) = static_cast<double>(i + 1) * CMatrix::Identity(2, 2);
    }
    for (const auto& [i, j, m] : cells) {
        a.block(static_cast<Eigen::Index>(2 * i), static_cast<Eigen::Index>(2 * j), 2, 2) = m;
    }
    return PairCollection(static_cast<std::size_t>(n), static_cast<std::size_t>(n), {{a, a}});
}

BlockStructure twos(std::size_t d) { return BlockStructure(std::vector<std::size_t>(d, 2)); }

struct Built {
    PartitionView view;
    InducedGraph g;
    VertexPartition part;
};

Built build(const PairCollection& c, const BlockStructure& s) {
    auto view = induced_partition(c, s, s);
    auto g = build_induced_graph(view, Mode::Sus, {});
    auto part = partition_vertices(g);
    return {std::move(view), std::move(g), std::move(part)};
}

}  // namespace

TEST(InducedGraph, EdgelessGivesSingletons) {
    const auto b = build(blocks4(3, {}), twos(3));
    EXPECT_TRUE(b.g.edges.empty());
    ASSERT_EQ(b.part.classes.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        EXPECT_EQ(b.part.classes[k], std::vector<std::size_t>{k});
        EXPECT_EQ(b.part.representative[k], k);
    }
    const auto paths = path_products(b.view, b.g, b.part);
    const auto [u, v] = build_usol(b.view, b.g, paths);
    EXPECT_LE((u - CMatrix::Identity(6, 6)).norm(), 1e-15);
}

TEST(InducedGraph, SingleUnitaryEdge) {
    const CMatrix q = random_unitary(std::uint64_t{1}, 2);
    const auto b = build(blocks4(2, {{0, 1, q}}), twos(2));
    ASSERT_EQ(b.g.edges.size(), 1u);
    EXPECT_EQ(b.g.edges[0].from, 0u);
    EXPECT_EQ(b.g.edges[0].to, 1u);
    EXPECT_EQ(b.g.edges[0].witness, (SubmatrixRef{0, Side::A, 0, 1}));
    EXPECT_NEAR(b.g.edges[0].r_a, 1.0, 1e-12);
}

TEST(InducedGraph, PathGraphForest) {
    const CMatrix q = random_unitary(std::uint64_t{2}, 2);
    const auto b = build(blocks4(3, {{0, 1, q}, {1, 2, q}}), twos(3));
    ASSERT_EQ(b.part.classes.size(), 1u);
    EXPECT_EQ(b.part.representative[0], 0u);
    EXPECT_EQ(b.part.path_to(b.g, 1).size(), 1u);
    const auto p3 = b.part.path_to(b.g, 2);
    ASSERT_EQ(p3.size(), 2u);
    EXPECT_EQ(p3[0], (PathEdge{0, 0, 1, 1}));
    EXPECT_EQ(p3[1], (PathEdge{0, 1, 2, 1}));
}

TEST(InducedGraph, WorkedPathSigns) {
    // edges (2,1), (2,3), (4,3) in 1-based vertex numbering
    const CMatrix q1 = random_unitary(std::uint64_t{3}, 2);
    const CMatrix q2 = random_unitary(std::uint64_t{4}, 2);
    const CMatrix q3 = random_unitary(std::uint64_t{5}, 2);
    const CMatrix a21 = 2.0 * q1;
    const CMatrix a23 = q2;
    const CMatrix a43 = 3.0 * q3;
    const auto b = build(blocks4(4, {{1, 0, a21}, {1, 2, a23}, {3, 2, a43}}), twos(4));
    ASSERT_EQ(b.part.classes.size(), 1u);
    EXPECT_EQ(b.part.classes[0], (std::vector<std::size_t>{0, 1, 2, 3}));
    const auto path = b.part.path_to(b.g, 3);
    ASSERT_EQ(path.size(), 3u);
    EXPECT_EQ(path[0], (PathEdge{0, 1, 0, -1}));
    EXPECT_EQ(path[1], (PathEdge{0, 1, 2, 1}));
    EXPECT_EQ(path[2], (PathEdge{0, 3, 2, -1}));

    const CMatrix expected = a21.inverse() * a23 * a43.inverse();
    const auto paths = path_products(b.view, b.g, b.part);
    EXPECT_LE((paths.a_path[3] - expected).norm(), 1e-12);
    // sqrt(r) contributions: 2^-1 * 1 * 3^-1
    EXPECT_NEAR(paths.scale[3], 1.0 / 6.0, 1e-12);
    const auto naive = path_product(b.view, b.g, b.part, 3);
    EXPECT_LE((naive.a - expected).norm(), 1e-12);
}

TEST(PathProducts, RepresentativeIsIdentity) {
    const CMatrix q = random_unitary(std::uint64_t{6}, 2);
    const auto b = build(blocks4(2, {{0, 1, 2.0 * q}}), twos(2));
    const auto paths = path_products(b.view, b.g, b.part);
    EXPECT_LE((paths.a_path[0] - CMatrix::Identity(2, 2)).norm(), 1e-15);
    EXPECT_DOUBLE_EQ(paths.scale[0], 1.0);
    EXPECT_LE((paths.a_path[1] - 2.0 * q).norm(), 1e-12);
    EXPECT_NEAR(paths.scale[1], 2.0, 1e-12);
}

TEST(PathProducts, SingleEdgeUsol) {
    const CMatrix qa = random_unitary(std::uint64_t{7}, 2);
    const CMatrix qb = random_unitary(std::uint64_t{8}, 2);
    CMatrix a = CMatrix::Zero(4, 4);
    a.block(0, 0, 2, 2) = CMatrix::Identity(2, 2);
    a.block(2, 2, 2, 2) = 2.0 * CMatrix::Identity(2, 2);
    CMatrix b = a;
    a.block(0, 2, 2, 2) = 2.0 * qa;
    b.block(0, 2, 2, 2) = 2.0 * qb;
    const PairCollection c(4, 4, {{a, b}});
    const auto bb = build(c, twos(2));
    const auto paths = path_products(bb.view, bb.g, bb.part);
    const auto [u, v] = build_usol(bb.view, bb.g, paths);
    CMatrix expected = CMatrix::Identity(4, 4);
    expected.block(2, 2, 2, 2) = qb.adjoint() * qa;
    EXPECT_LE((u - expected).norm(), 1e-12);
    EXPECT_LE((u * a * u.adjoint() - b).norm(), 1e-12);
}

TEST(PrProducts, ForestEdgesAreScalar) {
    std::mt19937_64 rng(9);
    for (int t = 0; t < 20; ++t) {
        std::vector<std::tuple<std::size_t, std::size_t, CMatrix>> cells;
        for (std::size_t i = 0; i < 4; ++i) {
            for (std::size_t j = 0; j < 4; ++j) {
                if (i != j && std::uniform_real_distribution<double>(0, 1)(rng) < 0.4) {
                    cells.emplace_back(i, j, (1.0 + static_cast<double>(i + j)) * random_unitary(rng, 2));
                }
            }
        }
        const auto b = build(blocks4(4, cells), twos(4));
        const auto paths = path_products(b.view, b.g, b.part);
        const auto prs = pr_products(b.view, b.g, b.part, paths, {});
        // forest edges: the path to j is the path to i times A_ij
        for (std::size_t vtx = 0; vtx < 4; ++vtx) {
            if (!b.part.parent_edge[vtx]) continue;
            const auto& w = b.g.edges[*b.part.parent_edge[vtx]].witness;
            for (const auto& p : prs) {
                if (p.l != w.l || p.i != w.i || p.j != w.j) continue;
                const auto alpha = is_multiple_of_identity(p.pr_a, {}, p.scale);
                EXPECT_TRUE(alpha.has_value());
            }
        }
        // every pr is a unitary multiple with scale r_ij (rho_i / rho_j)^2
        for (const auto& p : prs) {
            const CMatrix blk = b.view.block(p.l, Side::A, p.i, p.j);
            const auto r = is_multiple_of_unitary(p.pr_a, {}, p.scale);
            ASSERT_TRUE(r.has_value());
            const double ratio = paths.scale[p.i] / paths.scale[p.j];
            const double expected = (blk * blk.adjoint())(0, 0).real() * ratio * ratio;
            EXPECT_NEAR(*r, expected, 1e-9 * (1.0 + expected));
        }
        // incremental vs naive
        for (std::size_t vtx = 0; vtx < 4; ++vtx) {
            const auto naive = path_product(b.view, b.g, b.part, vtx);
            EXPECT_LE((naive.a - paths.a_path[vtx]).norm(), 1e-10 * (1.0 + naive.a.norm()));
            EXPECT_NEAR(naive.scale, paths.scale[vtx], 1e-10 * naive.scale);
        }
    }
}

TEST(PrProducts, HolonomyViolation) {
    // two routes from block 1 to block 3 differ by diag(1, -1)
    const CMatrix i2 = CMatrix::Identity(2, 2);
    const CMatrix h = diag({1.0, -1.0});
    const auto b = build(blocks4(3, {{0, 1, i2}, {1, 2, i2}, {0, 2, h}}), twos(3));
    ASSERT_TRUE(std::holds_alternative<PreSolutionInForm>(check_presolution(b.view, Mode::Sus, {})));
    const auto paths = path_products(b.view, b.g, b.part);
    const auto prs = pr_products(b.view, b.g, b.part, paths, {});
    const auto rep = check_solution_form(b.view, b.g, b.part, prs, {});
    const auto* pv = std::get_if<PrViolation>(&rep);
    ASSERT_NE(pv, nullptr);
    EXPECT_EQ(pv->violation.kind, ViolationKind::PrNotIdentityMultiple);
    // by hand: path to 2 is A_12 = I, path to 3 is A_13 = h, pr(A_23) = I I h^-1 = h
    EXPECT_EQ(pv->violation.at.i, 1u);
    EXPECT_EQ(pv->violation.at.j, 2u);
    EXPECT_LE((pv->pr_a - h).norm(), 1e-12);
    const auto sel = select_s_and_r(b.g, b.part, *pv);
    EXPECT_EQ(sel.quantity, Quantity::PrNormal);
    EXPECT_EQ(sel.touched, 0u);
}

TEST(PrProducts, OneByOneBlocksAlwaysSolutionForm) {
    std::mt19937_64 rng(10);
    for (int t = 0; t < 20; ++t) {
        CMatrix a = CMatrix::Zero(5, 5);
        for (Eigen::Index i = 0; i < 5; ++i) a(i, i) = static_cast<double>(i);
        for (Eigen::Index i = 0; i < 5; ++i) {
            for (Eigen::Index j = 0; j < 5; ++j) {
                if (i != j && std::uniform_real_distribution<double>(0, 1)(rng) < 0.5) {
                    a(i, j) = random_gaussian(rng, 1, 1)(0, 0);
                }
            }
        }
        const PairCollection c(5, 5, {{a, a}});
        const BlockStructure s(std::vector<std::size_t>(5, 1));
        const auto view = induced_partition(c, s, s);
        ASSERT_TRUE(std::holds_alternative<PreSolutionInForm>(check_presolution(view, Mode::Sus, {})));
        const auto g = build_induced_graph(view, Mode::Sus, {});
        const auto part = partition_vertices(g);
        const auto paths = path_products(view, g, part);
        const auto prs = pr_products(view, g, part, paths, {});
        EXPECT_TRUE(std::holds_alternative<SolutionFormReport>(check_solution_form(view, g, part, prs, {})));
    }
}

TEST(InducedGraph, BipartiteVertexIds) {
    const CMatrix q = random_unitary(std::uint64_t{11}, 2);
    CMatrix a = CMatrix::Zero(4, 4);
    a.block(0, 0, 2, 2) = q;
    const PairCollection c(4, 4, {{a, a}});
    const BlockStructure s({2, 2});
    const auto view = induced_partition(c, s, s);
    const auto g = build_induced_graph(view, Mode::SuEq, {});
    EXPECT_EQ(g.vertex_count(), 4u);
    ASSERT_EQ(g.edges.size(), 1u);
    EXPECT_EQ(g.edges[0].from, 0u);
    EXPECT_EQ(g.edges[0].to, 2u);
    EXPECT_EQ(g.vertex(2), (VertexRef{VertexKind::Col, 0}));
    const auto part = partition_vertices(g);
    EXPECT_EQ(part.classes.size(), 3u);
    const auto paths = path_products(view, g, part);
    const auto [u, v] = build_usol(view, g, paths);
    EXPECT_LE((u - CMatrix::Identity(4, 4)).norm(), 1e-15);
    // V_1 = B_11^-1 A_11 with B = A
    EXPECT_LE((v - CMatrix::Identity(4, 4)).norm(), 1e-12);
}

TEST(PrProducts, SimilarityCovariance) {
    // one refinement on a structured instance, then pr(B) = U_c pr(A) U_c^*
    int checked = 0;
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const Instance inst = generate({seed, InstanceKind::Structured, 0, 8, 2});
        const auto& coll = inst.collection;
        const BlockStructure s0 = BlockStructure::single(8);
        const auto view0 = induced_partition(coll, s0, s0);
        const auto rep0 = check_presolution(view0, Mode::Sus, {});
        const auto* v0 = std::get_if<Violation>(&rep0);
        if (v0 == nullptr) continue;
        const auto sel = select_s_and_r(view0, Mode::Sus, *v0, {});
        const auto eq = build_equivalent_problem(coll, view0, Mode::Sus, sel, {});
        const auto* ep = std::get_if<EquivalentProblem>(&eq);
        ASSERT_NE(ep, nullptr);
        const CMatrix u_hat = ep->step.z * *inst.u * ep->step.y.adjoint();
        for (const auto& pr : ep->collection.pairs()) {
            EXPECT_LE((u_hat * pr.a * u_hat.adjoint() - pr.b).norm(), 1e-6 * (1.0 + pr.a.norm()));
        }
        const BlockStructure& s1 = ep->step.rows_after;
        const auto view = induced_partition(ep->collection, s1, s1);
        if (!std::holds_alternative<PreSolutionInForm>(check_presolution(view, Mode::Sus, {}))) continue;
        const auto g = build_induced_graph(view, Mode::Sus, {});
        const auto part = partition_vertices(g);
        const auto paths = path_products(view, g, part);
        for (const auto& p : pr_products(view, g, part, paths, {})) {
            const std::size_t c = part.representative[part.class_of[p.i]];
            const auto o = static_cast<Eigen::Index>(s1.offset(c));
            const auto k = static_cast<Eigen::Index>(s1.size(c));
            const CMatrix uc = u_hat.block(o, o, k, k);
            EXPECT_LE((uc * p.pr_a * uc.adjoint() - p.pr_b).norm(), 1e-6 * (1.0 + p.scale));
            ++checked;
        }
    }
    EXPECT_GT(checked, 0);
}
