#include "sus/solver.hpp"

#include <cmath>
#include <limits>

namespace sus {

WitnessCheck verify_witness(const PairCollection& coll, const CMatrix& u, const CMatrix& v,
                            const Tolerances& tol) {
    const auto m = static_cast<Eigen::Index>(coll.rows());
    const auto n = static_cast<Eigen::Index>(coll.cols());
    if (u.rows() != m || u.cols() != m || v.rows() != n || v.cols() != n) {
        throw SusError(ErrorCode::DimensionMismatch, "witness shape does not match the instance");
    }
    WitnessCheck out;
    for (const auto& pr : coll.pairs()) {
        const double r = (u * pr.a * v.adjoint() - pr.b).norm() / (1.0 + pr.a.norm());
        out.residual = std::max(out.residual, r);
    }
    const double du = (u * u.adjoint() - CMatrix::Identity(m, m)).norm() / static_cast<double>(m);
    const double dv = (v * v.adjoint() - CMatrix::Identity(n, n)).norm() / static_cast<double>(n);
    out.unitarity = std::max(du, dv);
    out.accepted = out.residual <= tol.verify && out.unitarity <= tol.verify;
    return out;
}

std::pair<CMatrix, CMatrix> build_usol(const PartitionView& view, const InducedGraph& g,
                                       const PathProducts& paths) {
    const auto block = [&](std::size_t vertex) {
        const CMatrix& pb = paths.b_path[vertex];
        const double rho2 = pb.squaredNorm() / static_cast<double>(pb.rows());
        return CMatrix(inverse_of_unitary_multiple(pb, rho2) * paths.a_path[vertex]);
    };
    std::vector<CMatrix> rows;
    for (std::size_t i = 0; i < view.row_structure().count(); ++i) rows.push_back(block(g.row_vertex(i)));
    CMatrix u = embed_block_diagonal(rows, view.row_structure());
    if (g.mode == Mode::Sus) return {u, u};
    std::vector<CMatrix> cols;
    for (std::size_t j = 0; j < view.col_structure().count(); ++j) cols.push_back(block(g.col_vertex(j)));
    return {u, embed_block_diagonal(cols, view.col_structure())};
}

namespace {

void fill_frame(MismatchCertificate& c, Mode mode, const PartitionView& view, const Transforms& t) {
    c.mode = mode;
    c.rows = view.row_structure();
    c.cols = view.col_structure();
    c.row_a = t.row_a;
    c.row_b = t.row_b;
    c.col_a = t.col_a;
    c.col_b = t.col_b;
}

}  // namespace

SolveOutcome solve(const PairCollection& coll, Mode mode, const Tolerances& tol) {
    tol.validate();
    if (mode == Mode::Sus && !coll.square()) {
        throw SusError(ErrorCode::DimensionMismatch, "similarity needs square matrices");
    }
    const std::size_t m = coll.rows();
    const std::size_t n = coll.cols();
    const std::size_t max_steps = mode == Mode::Sus ? n : m + n;

    PairCollection cur = coll;
    BlockStructure rows = BlockStructure::single(m);
    BlockStructure cols = BlockStructure::single(n);
    Transforms t = Transforms::identity(m, n);
    IterationTrace trace;

    try {
        while (true) {
            const PartitionView view(cur, rows, cols);
            std::optional<Selection> sel;
            std::optional<InducedGraph> graph;

            PreSolutionReport pre = check_presolution(view, mode, tol);
            if (auto* c = std::get_if<MismatchCertificate>(&pre)) {
                fill_frame(*c, mode, view, t);
                return NotSimilar{std::move(*c), std::move(trace)};
            }
            if (auto* v = std::get_if<Violation>(&pre)) {
                sel = select_s_and_r(view, mode, *v, tol);
            } else {
                graph = build_induced_graph(view, mode, tol);
                const VertexPartition part = partition_vertices(*graph);
                const PathProducts paths = path_products(view, *graph, part);
                const auto prs = pr_products(view, *graph, part, paths, tol);
                SolutionReport sol = check_solution_form(view, *graph, part, prs, tol);
                if (auto* c = std::get_if<MismatchCertificate>(&sol)) {
                    fill_frame(*c, mode, view, t);
                    return NotSimilar{std::move(*c), std::move(trace)};
                }
                if (auto* pv = std::get_if<PrViolation>(&sol)) {
                    sel = select_s_and_r(*graph, part, *pv);
                } else {
                    const auto [u_hat, v_hat] = build_usol(view, *graph, paths);
                    Witness w = compose_witness(u_hat, v_hat, t);
                    const WitnessCheck check = verify_witness(coll, w.u, w.v, tol);
                    if (check.accepted) {
                        return Solved{std::move(w.u), std::move(w.v), check.residual,
                                      std::move(trace)};
                    }
                    return VerificationFailed{std::move(w.u), std::move(w.v), check.residual,
                                              std::move(trace),
                                              "witness residual or unitarity above tolerance"};
                }
            }

            auto eq = build_equivalent_problem(cur, view, mode, *sel, tol);
            if (auto* c = std::get_if<MismatchCertificate>(&eq)) {
                fill_frame(*c, mode, view, t);
                return NotSimilar{std::move(*c), std::move(trace)};
            }
            auto& ep = std::get<EquivalentProblem>(eq);
            accumulate(t, ep.step, mode);
            rows = ep.step.rows_after;
            cols = ep.step.cols_after;
            cur = std::move(ep.collection);
            trace.push_back(std::move(ep.step));
            if (trace.size() > max_steps) {
                throw SusError(ErrorCode::InternalInconsistency, "iteration bound exceeded");
            }
        }
    } catch (const SusError& e) {
        if (e.code() == ErrorCode::SpecInvalid || e.code() == ErrorCode::InvalidInput) throw;
        return VerificationFailed{CMatrix(), CMatrix(), std::numeric_limits<double>::infinity(),
                                  std::move(trace), e.what()};
    }
}

SolveOutcome solve_sus(const PairCollection& coll, const Tolerances& tol) {
    return solve(coll, Mode::Sus, tol);
}

SolveOutcome solve_sueq(const PairCollection& coll, const Tolerances& tol) {
    return solve(coll, Mode::SuEq, tol);
}

const char* outcome_name(const SolveOutcome& outcome) {
    switch (outcome.index()) {
        case 0: return "Solved";
        case 1: return "NotSimilar";
        default: return "VerificationFailed";
    }
}

const IterationTrace& outcome_trace(const SolveOutcome& outcome) {
    return std::visit([](const auto& o) -> const IterationTrace& { return o.trace; }, outcome);
}

}  // namespace sus
