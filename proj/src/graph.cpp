#include "sus/graph.hpp"

#include <algorithm>
#include <cmath>
#include <deque>

namespace sus {

VertexRef InducedGraph::vertex(std::size_t id) const {
    if (id < row_vertices) return {VertexKind::Row, id};
    return {VertexKind::Col, id - row_vertices};
}

std::size_t InducedGraph::id(VertexRef v) const {
    if (v.kind == VertexKind::Row || mode == Mode::Sus) return v.index;
    return row_vertices + v.index;
}

namespace {

double witness_scale(const CMatrix& block, const Tolerances& tol, double scale) {
    const auto r = is_multiple_of_unitary(block, tol, scale);
    if (!r || !(*r > 0.0)) {
        throw SusError(ErrorCode::InternalInconsistency,
                       "graph edge witness is not a nonzero multiple of a unitary");
    }
    return *r;
}

// Walk from parent to child across edge e: +1 when the parent is the witness
// row end.
int orientation(const GraphEdge& e, std::size_t parent) { return e.from == parent ? 1 : -1; }

struct Step {
    CMatrix a;
    CMatrix b;
    double factor = 1.0;
};

// Extend a parent's product by one witness factor.
Step extend(const PartitionView& view, const GraphEdge& e, int sign, const CMatrix& pa,
            const CMatrix& pb) {
    const CMatrix& wa = view.block(e.witness.l, Side::A, e.witness.i, e.witness.j);
    const CMatrix& wb = view.block(e.witness.l, Side::B, e.witness.i, e.witness.j);
    if (sign > 0) return {pa * wa, pb * wb, std::sqrt(e.r_a)};
    return {pa * inverse_of_unitary_multiple(wa, e.r_a), pb * inverse_of_unitary_multiple(wb, e.r_b),
            1.0 / std::sqrt(e.r_a)};
}

std::size_t vertex_size(const PartitionView& view, const InducedGraph& g, std::size_t v) {
    const VertexRef ref = g.vertex(v);
    return ref.kind == VertexKind::Row ? view.row_structure().size(ref.index)
                                       : view.col_structure().size(ref.index);
}

}  // namespace

InducedGraph build_induced_graph(const PartitionView& view, Mode mode, const Tolerances& tol) {
    InducedGraph g;
    g.mode = mode;
    const std::size_t d = view.row_structure().count();
    const std::size_t f = view.col_structure().count();
    g.row_vertices = d;
    g.col_vertices = mode == Mode::Sus ? 0 : f;

    const auto nonzero = [&](std::size_t l, std::size_t i, std::size_t j) {
        return view.square_cell(i, j) && !is_zero(view.block(l, Side::A, i, j), tol, view.scale(l));
    };
    const auto make_edge = [&](std::size_t l, std::size_t i, std::size_t j) {
        GraphEdge e;
        e.from = g.row_vertex(i);
        e.to = g.col_vertex(j);
        e.witness = {l, Side::A, i, j};
        e.r_a = witness_scale(view.block(l, Side::A, i, j), tol, view.scale(l));
        e.r_b = witness_scale(view.block(l, Side::B, i, j), tol, view.scale(l));
        return e;
    };

    if (mode == Mode::Sus) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = i + 1; j < d; ++j) {
                for (std::size_t l = 0; l < view.pair_count(); ++l) {
                    if (nonzero(l, i, j)) {
                        g.edges.push_back(make_edge(l, i, j));
                        break;
                    }
                    if (nonzero(l, j, i)) {
                        g.edges.push_back(make_edge(l, j, i));
                        break;
                    }
                }
            }
        }
    } else {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < f; ++j) {
                for (std::size_t l = 0; l < view.pair_count(); ++l) {
                    if (nonzero(l, i, j)) {
                        g.edges.push_back(make_edge(l, i, j));
                        break;
                    }
                }
            }
        }
    }
    return g;
}

VertexPartition partition_vertices(const InducedGraph& g) {
    const std::size_t nv = g.vertex_count();
    // adjacency as (neighbour, edge index), sorted by neighbour
    std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(nv);
    for (std::size_t k = 0; k < g.edges.size(); ++k) {
        adj[g.edges[k].from].emplace_back(g.edges[k].to, k);
        adj[g.edges[k].to].emplace_back(g.edges[k].from, k);
    }
    for (auto& a : adj) std::sort(a.begin(), a.end());

    VertexPartition part;
    constexpr std::size_t unseen = static_cast<std::size_t>(-1);
    part.class_of.assign(nv, unseen);
    part.parent.assign(nv, 0);
    part.parent_edge.assign(nv, std::nullopt);
    part.parent_sign.assign(nv, 1);
    part.bfs_order.reserve(nv);

    for (std::size_t root = 0; root < nv; ++root) {
        if (part.class_of[root] != unseen) continue;
        const std::size_t cls = part.classes.size();
        part.classes.emplace_back();
        part.representative.push_back(root);
        part.class_of[root] = cls;
        part.parent[root] = root;
        std::deque<std::size_t> queue{root};
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            part.classes[cls].push_back(v);
            part.bfs_order.push_back(v);
            for (const auto& [w, k] : adj[v]) {
                if (part.class_of[w] != unseen) continue;
                part.class_of[w] = cls;
                part.parent[w] = v;
                part.parent_edge[w] = k;
                part.parent_sign[w] = orientation(g.edges[k], v);
                queue.push_back(w);
            }
        }
        std::sort(part.classes[cls].begin(), part.classes[cls].end());
    }
    return part;
}

std::vector<PathEdge> VertexPartition::path_to(const InducedGraph& g, std::size_t vertex) const {
    std::vector<PathEdge> out;
    std::size_t v = vertex;
    while (parent_edge.at(v)) {
        const GraphEdge& e = g.edges.at(*parent_edge[v]);
        out.push_back({e.witness.l, e.witness.i, e.witness.j, parent_sign[v]});
        v = parent[v];
    }
    std::reverse(out.begin(), out.end());
    return out;
}

PathProducts path_products(const PartitionView& view, const InducedGraph& g,
                           const VertexPartition& part) {
    const std::size_t nv = g.vertex_count();
    PathProducts out;
    out.a_path.resize(nv);
    out.b_path.resize(nv);
    out.scale.assign(nv, 1.0);
    for (std::size_t v : part.bfs_order) {
        if (!part.parent_edge[v]) {
            const auto s = static_cast<Eigen::Index>(vertex_size(view, g, v));
            out.a_path[v] = CMatrix::Identity(s, s);
            out.b_path[v] = CMatrix::Identity(s, s);
            continue;
        }
        const std::size_t p = part.parent[v];
        Step st = extend(view, g.edges[*part.parent_edge[v]], part.parent_sign[v], out.a_path[p],
                         out.b_path[p]);
        out.a_path[v] = std::move(st.a);
        out.b_path[v] = std::move(st.b);
        out.scale[v] = out.scale[p] * st.factor;
    }
    return out;
}

VertexPath path_product(const PartitionView& view, const InducedGraph& g,
                        const VertexPartition& part, std::size_t vertex) {
    const std::size_t rep = part.representative.at(part.class_of.at(vertex));
    const auto s = static_cast<Eigen::Index>(vertex_size(view, g, rep));
    VertexPath out{CMatrix::Identity(s, s), CMatrix::Identity(s, s), 1.0};
    for (const PathEdge& pe : part.path_to(g, vertex)) {
        const CMatrix& wa = view.block(pe.l, Side::A, pe.i, pe.j);
        const CMatrix& wb = view.block(pe.l, Side::B, pe.i, pe.j);
        const double ra = wa.squaredNorm() / static_cast<double>(wa.rows());
        const double rb = wb.squaredNorm() / static_cast<double>(wb.rows());
        if (pe.sign > 0) {
            out.a = out.a * wa;
            out.b = out.b * wb;
            out.scale *= std::sqrt(ra);
        } else {
            out.a = out.a * inverse_of_unitary_multiple(wa, ra);
            out.b = out.b * inverse_of_unitary_multiple(wb, rb);
            out.scale /= std::sqrt(ra);
        }
    }
    return out;
}

std::vector<PrEntry> pr_products(const PartitionView& view, const InducedGraph& g,
                                 const VertexPartition& part, const PathProducts& paths,
                                 const Tolerances& tol) {
    std::vector<PrEntry> out;
    const std::size_t d = view.row_structure().count();
    const std::size_t f = view.col_structure().count();
    for (std::size_t l = 0; l < view.pair_count(); ++l) {
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < f; ++j) {
                if (g.mode == Mode::Sus && i == j) continue;
                if (!view.square_cell(i, j)) continue;
                const std::size_t vi = g.row_vertex(i);
                const std::size_t vj = g.col_vertex(j);
                if (part.class_of[vi] != part.class_of[vj]) continue;
                const CMatrix& a = view.block(l, Side::A, i, j);
                if (is_zero(a, tol, view.scale(l))) continue;
                const CMatrix& b = view.block(l, Side::B, i, j);
                const double rho2 = paths.scale[vj] * paths.scale[vj];
                PrEntry e;
                e.l = l;
                e.i = i;
                e.j = j;
                e.pr_a = paths.a_path[vi] * a * inverse_of_unitary_multiple(paths.a_path[vj], rho2);
                const CMatrix& pbj = paths.b_path[vj];
                const double rho2_b = pbj.squaredNorm() / static_cast<double>(pbj.rows());
                e.pr_b = paths.b_path[vi] * b * inverse_of_unitary_multiple(pbj, rho2_b);
                e.scale = view.scale(l) * paths.scale[vi] / paths.scale[vj];
                out.push_back(std::move(e));
            }
        }
    }
    return out;
}

PrPath pr_path(const InducedGraph& g, const VertexPartition& part, std::size_t i, std::size_t j) {
    const std::size_t vi = g.row_vertex(i);
    const std::size_t vj = g.col_vertex(j);
    PrPath out;
    out.representative = g.vertex(part.representative.at(part.class_of.at(vi)));
    out.to_i = part.path_to(g, vi);
    out.to_j = part.path_to(g, vj);
    return out;
}

}  // namespace sus
