#pragma once

// Induced graph over block indices, its connected classes with a BFS spanning
// forest, and the products of witness blocks along forest paths.
//
// Vertex ids: in Sus mode vertex i is block i. In SuEq mode row blocks come
// first (0..d-1) and column blocks follow (d..d+f-1).

#include "sus/blocking.hpp"

#include <cstddef>
#include <optional>
#include <vector>

namespace sus {

enum class VertexKind { Row, Col };

struct VertexRef {
    VertexKind kind = VertexKind::Row;
    std::size_t index = 0;

    friend bool operator==(const VertexRef&, const VertexRef&) = default;
};

/// One factor of a path product: witness block (l, i, j) of the A (or B) side,
/// taken as is (sign +1, walking from the row-block-i end to the
/// column-block-j end) or inverted (sign -1, walking the other way).
struct PathEdge {
    std::size_t l = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    int sign = 1;

    friend bool operator==(const PathEdge&, const PathEdge&) = default;
};

/// Enough to recompute pr(X_ij) = X^pth_i X_ij (X^pth_j)^{-1} from raw blocks.
struct PrPath {
    VertexRef representative;
    std::vector<PathEdge> to_i;
    std::vector<PathEdge> to_j;
};

struct GraphEdge {
    std::size_t from = 0;  ///< vertex of the witness row block
    std::size_t to = 0;    ///< vertex of the witness column block
    SubmatrixRef witness;  ///< A-side witness; the B-side witness is the same cell
    double r_a = 0.0;      ///< X X^* = r I on each side
    double r_b = 0.0;
};

struct InducedGraph {
    Mode mode = Mode::Sus;
    std::size_t row_vertices = 0;
    std::size_t col_vertices = 0;  ///< zero in Sus mode
    std::vector<GraphEdge> edges;

    std::size_t vertex_count() const { return row_vertices + col_vertices; }
    VertexRef vertex(std::size_t id) const;
    std::size_t id(VertexRef v) const;
    /// Vertex ids of the two ends of cell (i, j).
    std::size_t row_vertex(std::size_t i) const { return i; }
    std::size_t col_vertex(std::size_t j) const { return mode == Mode::Sus ? j : row_vertices + j; }
};

struct VertexPartition {
    std::vector<std::vector<std::size_t>> classes;  ///< vertex ids, ascending
    std::vector<std::size_t> class_of;              ///< per vertex
    std::vector<std::size_t> representative;        ///< per class
    std::vector<std::optional<std::size_t>> parent_edge;  ///< per vertex, forest edge to parent
    std::vector<std::size_t> parent;                ///< per vertex (self for representatives)
    std::vector<int> parent_sign;                   ///< s(k) of the edge parent -> vertex
    std::vector<std::size_t> bfs_order;             ///< every vertex after its parent

    /// Signed witness edges from the class representative to `vertex`.
    std::vector<PathEdge> path_to(const InducedGraph& g, std::size_t vertex) const;
};

struct PathProducts {
    std::vector<CMatrix> a_path;  ///< per vertex; identity at representatives
    std::vector<CMatrix> b_path;
    std::vector<double> scale;    ///< r^pth: product of sqrt(r)^{s(k)} along the path
};

struct PrEntry {
    std::size_t l = 0;
    std::size_t i = 0;  ///< row block
    std::size_t j = 0;  ///< column block
    CMatrix pr_a;
    CMatrix pr_b;
    double scale = 1.0;  ///< parent scale transported along the paths
};

/// Edges from nonzero square off-diagonal (Sus) or square (SuEq) blocks. The
/// witness of an edge is the first nonzero block in scan order: l ascending,
/// then (i, j) before (j, i). Expects Pre-Solution form.
InducedGraph build_induced_graph(const PartitionView& view, Mode mode, const Tolerances& tol);

/// Connected classes with the smallest vertex id as representative and a BFS
/// forest visiting neighbours in ascending id order.
VertexPartition partition_vertices(const InducedGraph& g);

/// Products along the forest, each extending its parent's by one factor.
PathProducts path_products(const PartitionView& view, const InducedGraph& g,
                           const VertexPartition& part);

/// (A^pth, B^pth, r^pth) for one vertex, multiplied out from scratch.
struct VertexPath {
    CMatrix a;
    CMatrix b;
    double scale = 1.0;
};
VertexPath path_product(const PartitionView& view, const InducedGraph& g,
                        const VertexPartition& part, std::size_t vertex);

/// pr(A_ij), pr(B_ij) for every l and every nonzero intra-class cell, in
/// order l, then (i, j) lexicographic. Diagonal cells are skipped in Sus mode.
std::vector<PrEntry> pr_products(const PartitionView& view, const InducedGraph& g,
                                 const VertexPartition& part, const PathProducts& paths,
                                 const Tolerances& tol);

PrPath pr_path(const InducedGraph& g, const VertexPartition& part, std::size_t i, std::size_t j);

}  // namespace sus
