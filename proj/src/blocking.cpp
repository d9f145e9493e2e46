#include "sus/blocking.hpp"

#include <numeric>
#include <string>

namespace sus {

const char* to_string(Mode mode) { return mode == Mode::Sus ? "sus" : "sueq"; }
const char* to_string(Side side) { return side == Side::A ? "A" : "B"; }

BlockStructure::BlockStructure(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
    offsets_.reserve(sizes_.size() + 1);
    offsets_.push_back(0);
    for (std::size_t s : sizes_) {
        if (s == 0) throw SusError(ErrorCode::InvalidRefinement, "block sizes must be positive");
        offsets_.push_back(offsets_.back() + s);
    }
}

PairCollection::PairCollection(std::size_t m, std::size_t n, std::vector<MatrixPair> pairs)
    : m_(m), n_(n), pairs_(std::move(pairs)) {
    if (m_ == 0 || n_ == 0) throw SusError(ErrorCode::DimensionMismatch, "empty dimensions");
    if (pairs_.empty()) throw SusError(ErrorCode::DimensionMismatch, "collection has no pairs");
    const auto rows = static_cast<Eigen::Index>(m_);
    const auto cols = static_cast<Eigen::Index>(n_);
    for (std::size_t l = 0; l < pairs_.size(); ++l) {
        for (const CMatrix* x : {&pairs_[l].a, &pairs_[l].b}) {
            if (x->rows() != rows || x->cols() != cols) {
                throw SusError(ErrorCode::DimensionMismatch,
                               "pair " + std::to_string(l + 1) + " does not have shape " +
                                   std::to_string(m_) + "x" + std::to_string(n_));
            }
            if (!all_finite(*x)) {
                throw SusError(ErrorCode::InvalidInput,
                               "pair " + std::to_string(l + 1) + " has a non-finite entry");
            }
        }
    }
}

PartitionView::PartitionView(const PairCollection& coll, BlockStructure rows, BlockStructure cols)
    : rows_(std::move(rows)), cols_(std::move(cols)), pairs_(coll.size()) {
    if (rows_.dimension() != coll.rows() || cols_.dimension() != coll.cols()) {
        throw SusError(ErrorCode::DimensionMismatch, "structure does not match collection shape");
    }
    const std::size_t d = rows_.count();
    const std::size_t f = cols_.count();
    blocks_.reserve(pairs_ * 2 * d * f);
    scales_.reserve(pairs_);
    for (std::size_t l = 0; l < pairs_; ++l) {
        const auto& pr = coll.pair(l);
        scales_.push_back(std::max(pr.a.norm(), pr.b.norm()));
        for (const CMatrix* x : {&pr.a, &pr.b}) {
            for (std::size_t i = 0; i < d; ++i) {
                for (std::size_t j = 0; j < f; ++j) {
                    blocks_.emplace_back(x->block(static_cast<Eigen::Index>(rows_.offset(i)),
                                                  static_cast<Eigen::Index>(cols_.offset(j)),
                                                  static_cast<Eigen::Index>(rows_.size(i)),
                                                  static_cast<Eigen::Index>(cols_.size(j))));
                }
            }
        }
    }
}

const CMatrix& PartitionView::block(std::size_t l, Side side, std::size_t i, std::size_t j) const {
    const std::size_t d = rows_.count();
    const std::size_t f = cols_.count();
    if (l >= pairs_ || i >= d || j >= f) {
        throw SusError(ErrorCode::DimensionMismatch, "submatrix reference out of range");
    }
    const std::size_t s = side == Side::A ? 0 : 1;
    return blocks_[((l * 2 + s) * d + i) * f + j];
}

PartitionView induced_partition(const PairCollection& coll, const BlockStructure& rows,
                                const BlockStructure& cols) {
    return PartitionView(coll, rows, cols);
}

BlockStructure refine_structure(const BlockStructure& old, std::size_t at,
                                const std::vector<std::size_t>& multiplicities) {
    if (at >= old.count()) throw SusError(ErrorCode::InvalidRefinement, "block index out of range");
    if (multiplicities.size() < 2) {
        throw SusError(ErrorCode::InvalidRefinement, "refinement needs at least two groups");
    }
    const std::size_t total = std::accumulate(multiplicities.begin(), multiplicities.end(),
                                              std::size_t{0});
    if (total != old.size(at)) {
        throw SusError(ErrorCode::InvalidRefinement, "multiplicities do not sum to the block size");
    }
    std::vector<std::size_t> sizes;
    sizes.reserve(old.count() + multiplicities.size() - 1);
    sizes.insert(sizes.end(), old.sizes().begin(), old.sizes().begin() + static_cast<long>(at));
    sizes.insert(sizes.end(), multiplicities.begin(), multiplicities.end());
    sizes.insert(sizes.end(), old.sizes().begin() + static_cast<long>(at) + 1, old.sizes().end());
    return BlockStructure(std::move(sizes));
}

CMatrix embed_block_diagonal(const std::vector<CMatrix>& blocks, const BlockStructure& structure) {
    if (blocks.size() != structure.count()) {
        throw SusError(ErrorCode::DimensionMismatch, "block count does not match structure");
    }
    const auto n = static_cast<Eigen::Index>(structure.dimension());
    CMatrix out = CMatrix::Zero(n, n);
    for (std::size_t k = 0; k < blocks.size(); ++k) {
        const auto s = static_cast<Eigen::Index>(structure.size(k));
        if (blocks[k].rows() != s || blocks[k].cols() != s) {
            throw SusError(ErrorCode::DimensionMismatch, "block does not match its size");
        }
        const auto o = static_cast<Eigen::Index>(structure.offset(k));
        out.block(o, o, s, s) = blocks[k];
    }
    return out;
}

}  // namespace sus
