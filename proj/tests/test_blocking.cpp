#include "sus/blocking.hpp"

#include "test_util.hpp"

using namespace sus;

TEST(BlockStructure, Offsets) {
    const BlockStructure s({3, 2, 2});
    EXPECT_EQ(s.count(), 3u);
    EXPECT_EQ(s.dimension(), 7u);
    EXPECT_EQ(s.offset(0), 0u);
    EXPECT_EQ(s.offset(1), 3u);
    EXPECT_EQ(s.offset(2), 5u);
    EXPECT_THROW(BlockStructure({2, 0}), SusError);
}

TEST(PairCollection, RejectsBadInput) {
    const CMatrix a = CMatrix::Identity(2, 2);
    EXPECT_THROW(PairCollection(2, 2, {}), SusError);
    EXPECT_THROW(PairCollection(2, 3, {{a, a}}), SusError);
    CMatrix nan = a;
    nan(0, 1) = Complex(std::nan(""), 0.0);
    EXPECT_THROW(PairCollection(2, 2, {{a, nan}}), SusError);
}

TEST(InducedPartition, SingleBlockIsWholeMatrix) {
    std::mt19937_64 rng(1);
    const CMatrix a = random_gaussian(rng, 4, 4);
    const PairCollection c(4, 4, {{a, a}});
    const auto v = induced_partition(c, BlockStructure::single(4), BlockStructure::single(4));
    EXPECT_EQ(v.block(0, Side::A, 0, 0), a);
}

TEST(InducedPartition, BlocksTileTheMatrix) {
    std::mt19937_64 rng(2);
    const CMatrix a = random_gaussian(rng, 4, 4);
    const CMatrix b = random_gaussian(rng, 4, 4);
    const PairCollection c(4, 4, {{a, b}});
    const BlockStructure s({2, 2});
    const auto v = induced_partition(c, s, s);
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            const auto r = static_cast<Eigen::Index>(2 * i);
            const auto k = static_cast<Eigen::Index>(2 * j);
            EXPECT_EQ(v.block(0, Side::A, i, j), a.block(r, k, 2, 2));
            EXPECT_EQ(v.block(0, Side::B, i, j), b.block(r, k, 2, 2));
        }
    }
    EXPECT_DOUBLE_EQ(v.scale(0), std::max(a.norm(), b.norm()));
}

TEST(InducedPartition, RectangularCellAddressing) {
    std::mt19937_64 rng(3);
    const CMatrix a = random_gaussian(rng, 7, 7);
    const PairCollection c(7, 7, {{a, a}});
    const BlockStructure s({3, 2, 2});
    const auto v = induced_partition(c, s, s);
    // block (2,1) in 1-based terms: rows 4-5, columns 1-3
    EXPECT_EQ(v.block(0, Side::A, 1, 0), a.block(3, 0, 2, 3));
    EXPECT_FALSE(v.square_cell(1, 0));
    EXPECT_TRUE(v.square_cell(1, 2));
}

TEST(InducedPartition, RectangularCollection) {
    std::mt19937_64 rng(4);
    const CMatrix a = random_gaussian(rng, 3, 5);
    const PairCollection c(3, 5, {{a, a}});
    const auto v = induced_partition(c, BlockStructure({1, 2}), BlockStructure({2, 3}));
    EXPECT_EQ(v.block(0, Side::A, 1, 1), a.block(1, 2, 2, 3));
    EXPECT_THROW(induced_partition(c, BlockStructure({3}), BlockStructure({4})), SusError);
}

TEST(RefineStructure, Examples) {
    EXPECT_EQ(refine_structure(BlockStructure({4}), 0, {2, 2}), BlockStructure({2, 2}));
    EXPECT_EQ(refine_structure(BlockStructure({3, 2, 2}), 0, {1, 2}), BlockStructure({1, 2, 2, 2}));
    EXPECT_EQ(refine_structure(BlockStructure({2, 2}), 1, {1, 1}), BlockStructure({2, 1, 1}));
}

TEST(RefineStructure, RejectsNonRefinement) {
    EXPECT_THROW(refine_structure(BlockStructure({4}), 0, {4}), SusError);
    EXPECT_THROW(refine_structure(BlockStructure({4}), 0, {2, 1}), SusError);
    EXPECT_THROW(refine_structure(BlockStructure({4}), 1, {2, 2}), SusError);
}

TEST(EmbedBlockDiagonal, Examples) {
    const CMatrix i2 = CMatrix::Identity(2, 2);
    EXPECT_EQ(embed_block_diagonal({i2, i2}, BlockStructure({2, 2})), CMatrix::Identity(4, 4));
    const CMatrix q = random_unitary(std::uint64_t{1}, 2);
    const CMatrix e = embed_block_diagonal({q, CMatrix::Identity(1, 1)}, BlockStructure({2, 1}));
    EXPECT_EQ(e.block(0, 0, 2, 2), q);
    EXPECT_EQ(e(2, 2), Complex(1.0));
    EXPECT_EQ(e.block(0, 2, 2, 1).norm(), 0.0);
    EXPECT_THROW(embed_block_diagonal({q}, BlockStructure({1, 1})), SusError);
}
