#pragma once

// Block-diagonal shape of the unknown unitaries and the induced partition of
// every matrix in a collection into addressable submatrices.

#include "sus/linalg.hpp"

#include <cstddef>
#include <vector>

namespace sus {

enum class Mode { Sus, SuEq };
enum class Side { A, B };

const char* to_string(Mode mode);
const char* to_string(Side side);

/// Ordered sizes [n_1, ..., n_d] of the diagonal blocks, each >= 1.
class BlockStructure {
public:
    BlockStructure() = default;
    explicit BlockStructure(std::vector<std::size_t> sizes);

    static BlockStructure single(std::size_t dimension) { return BlockStructure({dimension}); }

    const std::vector<std::size_t>& sizes() const { return sizes_; }
    std::size_t count() const { return sizes_.size(); }
    std::size_t size(std::size_t i) const { return sizes_.at(i); }
    std::size_t offset(std::size_t i) const { return offsets_.at(i); }
    std::size_t dimension() const { return offsets_.empty() ? 0 : offsets_.back(); }

    friend bool operator==(const BlockStructure&, const BlockStructure&) = default;

private:
    std::vector<std::size_t> sizes_;
    std::vector<std::size_t> offsets_;  // prefix sums, offsets_[0] == 0, back() == dimension
};

struct MatrixPair {
    CMatrix a;
    CMatrix b;
};

/// p pairs (A_l, B_l) of m x n complex matrices with finite entries.
class PairCollection {
public:
    PairCollection() = default;
    PairCollection(std::size_t m, std::size_t n, std::vector<MatrixPair> pairs);

    std::size_t rows() const { return m_; }
    std::size_t cols() const { return n_; }
    std::size_t size() const { return pairs_.size(); }
    bool square() const { return m_ == n_; }

    const MatrixPair& pair(std::size_t l) const { return pairs_.at(l); }
    const std::vector<MatrixPair>& pairs() const { return pairs_; }
    const CMatrix& matrix(std::size_t l, Side side) const {
        return side == Side::A ? pairs_.at(l).a : pairs_.at(l).b;
    }

private:
    std::size_t m_ = 0;
    std::size_t n_ = 0;
    std::vector<MatrixPair> pairs_;
};

/// Locates one block: pair index l, side, row block i, column block j
/// (all 0-based internally; printed 1-based).
struct SubmatrixRef {
    std::size_t l = 0;
    Side side = Side::A;
    std::size_t i = 0;
    std::size_t j = 0;

    friend bool operator==(const SubmatrixRef&, const SubmatrixRef&) = default;
};

/// Value copies of every block of every matrix under a pair of structures.
class PartitionView {
public:
    PartitionView(const PairCollection& coll, BlockStructure rows, BlockStructure cols);

    const BlockStructure& row_structure() const { return rows_; }
    const BlockStructure& col_structure() const { return cols_; }
    std::size_t pair_count() const { return pairs_; }

    const CMatrix& block(std::size_t l, Side side, std::size_t i, std::size_t j) const;
    const CMatrix& block(const SubmatrixRef& ref) const {
        return block(ref.l, ref.side, ref.i, ref.j);
    }

    /// max(|A_l|_F, |B_l|_F): the parent scale every predicate on pair l uses.
    double scale(std::size_t l) const { return scales_.at(l); }

    bool square_cell(std::size_t i, std::size_t j) const { return rows_.size(i) == cols_.size(j); }

private:
    BlockStructure rows_;
    BlockStructure cols_;
    std::size_t pairs_ = 0;
    std::vector<CMatrix> blocks_;
    std::vector<double> scales_;
};

PartitionView induced_partition(const PairCollection& coll, const BlockStructure& rows,
                                const BlockStructure& cols);

/// Replace block `at` by the run of `multiplicities` (at least two, summing to
/// the old size).
BlockStructure refine_structure(const BlockStructure& old, std::size_t at,
                                const std::vector<std::size_t>& multiplicities);

CMatrix embed_block_diagonal(const std::vector<CMatrix>& blocks, const BlockStructure& structure);

}  // namespace sus
