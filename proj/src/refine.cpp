#include "sus/refine.hpp"

#include <algorithm>

namespace sus {

std::vector<std::size_t> RefinementStep::multiplicities() const {
    std::vector<std::size_t> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back(g.multiplicity);
    return out;
}

Transforms Transforms::identity(std::size_t m, std::size_t n) {
    const auto mm = static_cast<Eigen::Index>(m);
    const auto nn = static_cast<Eigen::Index>(n);
    return {CMatrix::Identity(mm, mm), CMatrix::Identity(mm, mm), CMatrix::Identity(nn, nn),
            CMatrix::Identity(nn, nn)};
}

Selection select_s_and_r(const PartitionView& view, Mode mode, const Violation& violation,
                         const Tolerances& tol) {
    const SubmatrixRef& at = violation.at;
    const CMatrix& a = view.block(at.l, Side::A, at.i, at.j);
    const CMatrix& b = view.block(at.l, Side::B, at.i, at.j);
    const double s = view.scale(at.l);
    Selection sel;
    sel.violation = violation;

    switch (violation.kind) {
        case ViolationKind::DiagonalNotIdentityMultiple: {
            if (mode != Mode::Sus) {
                throw SusError(ErrorCode::InternalInconsistency, "diagonal violation in SuEq mode");
            }
            CMatrix sr = hermitian_real_part(a);
            sel.touched = at.i;
            sel.context = s;
            if (!is_multiple_of_identity(sr, tol, s)) {
                sel.quantity = Quantity::HermitianReal;
                sel.s = std::move(sr);
                sel.r = hermitian_real_part(b);
            } else {
                sel.quantity = Quantity::HermitianImag;
                sel.s = hermitian_imag_part(a);
                sel.r = hermitian_imag_part(b);
            }
            return sel;
        }
        case ViolationKind::RectangularNonzero:
        case ViolationKind::SquareNotUnitaryMultiple: {
            sel.context = gram_context(s, a, b);
            if (!gram_identity_scalar(a, GramSide::Left, tol, s)) {
                sel.quantity = Quantity::GramLeft;
                sel.s = gram(a, GramSide::Left);
                sel.r = gram(b, GramSide::Left);
                sel.touched_side = VertexKind::Row;
                sel.touched = at.i;
            } else if (!gram_identity_scalar(a, GramSide::Right, tol, s)) {
                sel.quantity = Quantity::GramRight;
                sel.s = gram(a, GramSide::Right);
                sel.r = gram(b, GramSide::Right);
                sel.touched_side = mode == Mode::Sus ? VertexKind::Row : VertexKind::Col;
                sel.touched = at.j;
            } else {
                throw SusError(ErrorCode::InternalInconsistency,
                               "violating block has both Gram matrices identity multiples");
            }
            return sel;
        }
        case ViolationKind::PrNotIdentityMultiple:
            break;
    }
    throw SusError(ErrorCode::InternalInconsistency, "pr violation needs path data");
}

Selection select_s_and_r(const InducedGraph& g, const VertexPartition& part, const PrViolation& pv) {
    Selection sel;
    sel.violation = pv.violation;
    sel.quantity = Quantity::PrNormal;
    sel.s = pv.pr_a;
    sel.r = pv.pr_b;
    const std::size_t vi = g.row_vertex(pv.violation.at.i);
    const VertexRef rep = g.vertex(part.representative.at(part.class_of.at(vi)));
    sel.touched_side = rep.kind;
    sel.touched = rep.index;
    sel.context = pv.scale;
    sel.pr_path = pv.path;
    return sel;
}

void apply_to_rows(CMatrix& m, const CMatrix& block, std::size_t offset) {
    const auto o = static_cast<Eigen::Index>(offset);
    const CMatrix rows = m.middleRows(o, block.rows());
    m.middleRows(o, block.rows()).noalias() = block * rows;
}

void apply_to_cols(CMatrix& m, const CMatrix& block, std::size_t offset) {
    const auto o = static_cast<Eigen::Index>(offset);
    const CMatrix cols = m.middleCols(o, block.rows());
    m.middleCols(o, block.rows()).noalias() = cols * block.adjoint();
}

std::variant<EquivalentProblem, MismatchCertificate> build_equivalent_problem(
    const PairCollection& coll, const PartitionView& view, Mode mode, const Selection& sel,
    const Tolerances& tol) {
    const bool normal = sel.quantity == Quantity::PrNormal;
    const EigenDecomposition ea = normal ? normal_eigendecomposition(sel.s, tol, sel.context)
                                         : hermitian_eigendecomposition(sel.s, tol, sel.context);
    if (ea.groups.size() < 2) {
        throw SusError(ErrorCode::NumericalFailure,
                       "functional fails its identity test but its spectrum does not split");
    }
    const double bound = std::max(sel.s.norm(), sel.r.norm());
    std::optional<EigenDecomposition> eb;
    try {
        eb = normal ? normal_eigendecomposition(sel.r, tol, sel.context)
                    : hermitian_eigendecomposition(sel.r, tol, sel.context);
    } catch (const SusError& e) {
        if (e.code() != ErrorCode::NotMultipleOfUnitary) throw;
    }
    if (!eb || !spectra_match(ea, *eb, tol, sel.context, bound)) {
        MismatchCertificate c;
        c.kind = MismatchKind::EigenvalueMismatch;
        c.quantity = sel.quantity;
        c.at = sel.violation.at;
        c.a_value = ea.eigenvalues;
        c.b_value = eb ? eb->eigenvalues : quantity_spectrum(sel.r, sel.quantity);
        c.pr_path = sel.pr_path;
        return c;
    }

    RefinementStep step;
    step.violation = sel.violation;
    step.quantity = sel.quantity;
    step.touched_side = sel.touched_side;
    step.touched = sel.touched;
    step.rows_before = view.row_structure();
    step.cols_before = view.col_structure();
    step.eigenvalues_a = ea.eigenvalues;
    step.eigenvalues_b = eb->eigenvalues;
    step.groups = ea.groups;
    step.pr_path = sel.pr_path;
    step.y = ea.diagonalizer;
    step.z = eb->diagonalizer;

    const auto mults = ea.multiplicities();
    const bool row_side = sel.touched_side == VertexKind::Row;
    step.rows_after = row_side ? refine_structure(step.rows_before, sel.touched, mults)
                               : step.rows_before;
    step.cols_after = mode == Mode::Sus ? step.rows_after
                      : row_side        ? step.cols_before
                                        : refine_structure(step.cols_before, sel.touched, mults);

    const std::size_t offset = row_side ? step.rows_before.offset(sel.touched)
                                        : step.cols_before.offset(sel.touched);
    std::vector<MatrixPair> pairs = coll.pairs();
    for (auto& pr : pairs) {
        if (mode == Mode::Sus || row_side) {
            apply_to_rows(pr.a, step.y, offset);
            apply_to_rows(pr.b, step.z, offset);
        }
        if (mode == Mode::Sus || !row_side) {
            apply_to_cols(pr.a, step.y, offset);
            apply_to_cols(pr.b, step.z, offset);
        }
    }
    return EquivalentProblem{PairCollection(coll.rows(), coll.cols(), std::move(pairs)),
                             std::move(step)};
}

void accumulate(Transforms& t, const RefinementStep& step, Mode mode) {
    const bool row_side = step.touched_side == VertexKind::Row;
    if (mode == Mode::Sus || row_side) {
        const std::size_t o = step.rows_before.offset(step.touched);
        apply_to_rows(t.row_a, step.y, o);
        apply_to_rows(t.row_b, step.z, o);
    }
    if (mode == Mode::Sus) {
        t.col_a = t.row_a;
        t.col_b = t.row_b;
    } else if (!row_side) {
        const std::size_t o = step.cols_before.offset(step.touched);
        apply_to_rows(t.col_a, step.y, o);
        apply_to_rows(t.col_b, step.z, o);
    }
}

Transforms accumulated_transforms(const IterationTrace& trace, Mode mode, std::size_t m,
                                  std::size_t n) {
    Transforms t = Transforms::identity(m, n);
    for (const auto& step : trace) accumulate(t, step, mode);
    return t;
}

Witness compose_witness(const CMatrix& u_hat, const CMatrix& v_hat, const Transforms& t) {
    Witness w;
    w.u = t.row_b.adjoint() * u_hat * t.row_a;
    w.v = t.col_b.adjoint() * v_hat * t.col_a;
    return w;
}

Witness compose_witness(const CMatrix& u_hat, const CMatrix& v_hat, const IterationTrace& trace,
                        Mode mode) {
    return compose_witness(u_hat, v_hat,
                           accumulated_transforms(trace, mode, static_cast<std::size_t>(u_hat.rows()),
                                                  static_cast<std::size_t>(v_hat.rows())));
}

}  // namespace sus
