#include "sus/canonical.hpp"

#include <cmath>

namespace sus {

CanonicalFeatures extract_canonical_features(const std::vector<CMatrix>& mats,
                                             const Tolerances& tol) {
    tol.validate();
    if (mats.empty()) throw SusError(ErrorCode::DimensionMismatch, "no matrices");
    const auto n = static_cast<std::size_t>(mats.front().rows());
    std::vector<MatrixPair> pairs;
    for (const auto& a : mats) {
        if (a.rows() != a.cols() || static_cast<std::size_t>(a.rows()) != n) {
            throw SusError(ErrorCode::DimensionMismatch, "features need square matrices of one size");
        }
        pairs.push_back({a, a});
    }
    PairCollection cur(n, n, std::move(pairs));
    BlockStructure st = BlockStructure::single(n);
    CanonicalFeatures out;

    while (true) {
        const PartitionView view(cur, st, st);
        FeatureStep rec;
        rec.structure = st;
        std::optional<Selection> sel;

        PreSolutionReport pre = check_presolution(view, Mode::Sus, tol);
        if (std::holds_alternative<MismatchCertificate>(pre)) {
            throw SusError(ErrorCode::InternalInconsistency, "mirrored collection reported a mismatch");
        }
        if (auto* v = std::get_if<Violation>(&pre)) {
            sel = select_s_and_r(view, Mode::Sus, *v, tol);
        } else {
            const auto& form = std::get<PreSolutionInForm>(pre);
            rec.presolution = true;
            rec.diag_scalars = form.diag_scalars;
            rec.unitary_scales = form.unitary_scales;
            const InducedGraph g = build_induced_graph(view, Mode::Sus, tol);
            const VertexPartition part = partition_vertices(g);
            rec.partition = part.classes;
            const PathProducts paths = path_products(view, g, part);
            SolutionReport sol =
                check_solution_form(view, g, part, pr_products(view, g, part, paths, tol), tol);
            if (std::holds_alternative<MismatchCertificate>(sol)) {
                throw SusError(ErrorCode::InternalInconsistency,
                               "mirrored collection reported a mismatch");
            }
            if (auto* pv = std::get_if<PrViolation>(&sol)) {
                sel = select_s_and_r(g, part, *pv);
            } else {
                rec.solution_form = true;
                rec.beta = std::get<SolutionFormReport>(sol).beta;
                out.steps.push_back(std::move(rec));
                return out;
            }
        }

        auto eq = build_equivalent_problem(cur, view, Mode::Sus, *sel, tol);
        if (std::holds_alternative<MismatchCertificate>(eq)) {
            throw SusError(ErrorCode::InternalInconsistency, "mirrored collection reported a mismatch");
        }
        auto& ep = std::get<EquivalentProblem>(eq);
        rec.violation = sel->violation;
        rec.quantity = sel->quantity;
        rec.eigenvalues = ep.step.groups;
        out.steps.push_back(std::move(rec));
        st = ep.step.rows_after;
        cur = std::move(ep.collection);
        if (out.steps.size() > n + 1) {
            throw SusError(ErrorCode::InternalInconsistency, "iteration bound exceeded");
        }
    }
}

namespace {

bool close(Complex a, Complex b, const Tolerances& tol) {
    return std::abs(a - b) <= tol.group * (1.0 + std::max(std::abs(a), std::abs(b)));
}

bool same_entries(const std::vector<ScalarEntry>& x, const std::vector<ScalarEntry>& y,
                  const Tolerances& tol) {
    if (x.size() != y.size()) return false;
    for (std::size_t k = 0; k < x.size(); ++k) {
        if (x[k].l != y[k].l || x[k].i != y[k].i || x[k].j != y[k].j) return false;
        if (!close(x[k].value, y[k].value, tol)) return false;
    }
    return true;
}

}  // namespace

bool compare_features(const CanonicalFeatures& f1, const CanonicalFeatures& f2,
                      const Tolerances& tol) {
    if (f1.steps.size() != f2.steps.size()) return false;
    for (std::size_t k = 0; k < f1.steps.size(); ++k) {
        const FeatureStep& a = f1.steps[k];
        const FeatureStep& b = f2.steps[k];
        if (!(a.structure == b.structure) || a.solution_form != b.solution_form ||
            a.presolution != b.presolution || a.quantity != b.quantity ||
            a.partition != b.partition) {
            return false;
        }
        if (a.violation.has_value() != b.violation.has_value()) return false;
        if (a.violation && (a.violation->kind != b.violation->kind || !(a.violation->at == b.violation->at))) {
            return false;
        }
        if (a.eigenvalues.size() != b.eigenvalues.size()) return false;
        for (std::size_t g = 0; g < a.eigenvalues.size(); ++g) {
            if (a.eigenvalues[g].multiplicity != b.eigenvalues[g].multiplicity) return false;
            if (!close(a.eigenvalues[g].value, b.eigenvalues[g].value, tol)) return false;
        }
        if (!same_entries(a.diag_scalars, b.diag_scalars, tol) ||
            !same_entries(a.unitary_scales, b.unitary_scales, tol) ||
            !same_entries(a.beta, b.beta, tol)) {
            return false;
        }
    }
    return true;
}

}  // namespace sus
