#include "sus/structure_check.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sus {

const char* to_string(ViolationKind kind) {
    switch (kind) {
        case ViolationKind::DiagonalNotIdentityMultiple: return "DiagonalNotIdentityMultiple";
        case ViolationKind::RectangularNonzero: return "RectangularNonzero";
        case ViolationKind::SquareNotUnitaryMultiple: return "SquareNotUnitaryMultiple";
        case ViolationKind::PrNotIdentityMultiple: return "PrNotIdentityMultiple";
    }
    return "Unknown";
}

const char* to_string(Quantity q) {
    switch (q) {
        case Quantity::HermitianReal: return "HermitianReal";
        case Quantity::HermitianImag: return "HermitianImag";
        case Quantity::GramLeft: return "GramLeft";
        case Quantity::GramRight: return "GramRight";
        case Quantity::PrNormal: return "PrNormal";
        case Quantity::DiagonalScalar: return "DiagonalScalar";
        case Quantity::UnitaryScale: return "UnitaryScale";
        case Quantity::PrScalar: return "PrScalar";
    }
    return "Unknown";
}

const char* to_string(MismatchKind kind) {
    switch (kind) {
        case MismatchKind::ScalarMismatch: return "ScalarMismatch";
        case MismatchKind::ZeroPatternMismatch: return "ZeroPatternMismatch";
        case MismatchKind::EigenvalueMismatch: return "EigenvalueMismatch";
    }
    return "Unknown";
}

bool is_spectral(Quantity q) {
    switch (q) {
        case Quantity::HermitianReal:
        case Quantity::HermitianImag:
        case Quantity::GramLeft:
        case Quantity::GramRight:
        case Quantity::PrNormal: return true;
        default: return false;
    }
}

std::optional<Complex> diagonal_scalar(const CMatrix& block, const Tolerances& tol, double scale) {
    const auto re = is_multiple_of_identity(hermitian_real_part(block), tol, scale);
    if (!re) return std::nullopt;
    const auto im = is_multiple_of_identity(hermitian_imag_part(block), tol, scale);
    if (!im) return std::nullopt;
    return Complex(re->real(), im->real());
}

bool rectangular_is_zero(const CMatrix& block, const Tolerances& tol, double scale) {
    return gram_identity_scalar(block, GramSide::Left, tol, scale) &&
           gram_identity_scalar(block, GramSide::Right, tol, scale);
}

std::vector<Complex> quantity_spectrum(const CMatrix& f, Quantity q) {
    std::vector<Complex> out;
    if (f.size() == 0) return out;
    if (q == Quantity::PrNormal) {
        Eigen::ComplexEigenSolver<CMatrix> solver(f, false);
        if (solver.info() != Eigen::Success) {
            throw SusError(ErrorCode::NumericalFailure, "eigenvalue iteration did not converge");
        }
        const auto& ev = solver.eigenvalues();
        out.assign(ev.data(), ev.data() + ev.size());
        std::sort(out.begin(), out.end(), [](Complex a, Complex b) {
            if (a.real() != b.real()) return a.real() > b.real();
            return a.imag() > b.imag();
        });
        return out;
    }
    const CMatrix h = (f + f.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h, Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw SusError(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    }
    const auto& ev = solver.eigenvalues();
    for (Eigen::Index k = ev.size() - 1; k >= 0; --k) out.emplace_back(ev(k), 0.0);
    return out;
}

double gram_context(double parent_scale, const CMatrix& a, const CMatrix& b) {
    return parent_scale * std::max(a.norm(), b.norm());
}

namespace {

MismatchCertificate spectral_mismatch(MismatchKind kind, Quantity q, SubmatrixRef at,
                                      const CMatrix& fa, const CMatrix& fb) {
    MismatchCertificate c;
    c.kind = kind;
    c.quantity = q;
    c.at = at;
    c.a_value = quantity_spectrum(fa, q);
    c.b_value = quantity_spectrum(fb, q);
    return c;
}

MismatchCertificate scalar_mismatch(MismatchKind kind, Quantity q, SubmatrixRef at, Complex a,
                                    Complex b) {
    MismatchCertificate c;
    c.kind = kind;
    c.quantity = q;
    c.at = at;
    c.a_value = {a};
    c.b_value = {b};
    return c;
}

}  // namespace

PreSolutionReport check_presolution(const PartitionView& view, Mode mode, const Tolerances& tol) {
    PreSolutionInForm form;
    const std::size_t d = view.row_structure().count();
    const std::size_t f = view.col_structure().count();
    for (std::size_t l = 0; l < view.pair_count(); ++l) {
        const double s = view.scale(l);
        for (std::size_t i = 0; i < d; ++i) {
            for (std::size_t j = 0; j < f; ++j) {
                const CMatrix& a = view.block(l, Side::A, i, j);
                const CMatrix& b = view.block(l, Side::B, i, j);
                const SubmatrixRef at_a{l, Side::A, i, j};
                const SubmatrixRef at_b{l, Side::B, i, j};

                if (mode == Mode::Sus && i == j) {
                    const auto alpha_a = diagonal_scalar(a, tol, s);
                    if (!alpha_a) return Violation{ViolationKind::DiagonalNotIdentityMultiple, at_a};
                    const CMatrix br = hermitian_real_part(b);
                    if (!is_multiple_of_identity(br, tol, s)) {
                        return spectral_mismatch(MismatchKind::EigenvalueMismatch,
                                                 Quantity::HermitianReal, at_b,
                                                 hermitian_real_part(a), br);
                    }
                    const CMatrix bi = hermitian_imag_part(b);
                    if (!is_multiple_of_identity(bi, tol, s)) {
                        return spectral_mismatch(MismatchKind::EigenvalueMismatch,
                                                 Quantity::HermitianImag, at_b,
                                                 hermitian_imag_part(a), bi);
                    }
                    const Complex alpha_b = *diagonal_scalar(b, tol, s);
                    if (!scalars_match(*alpha_a, alpha_b, tol.cmp, s)) {
                        return scalar_mismatch(MismatchKind::ScalarMismatch,
                                               Quantity::DiagonalScalar, at_a, *alpha_a, alpha_b);
                    }
                    form.diag_scalars.push_back({l, i, i, *alpha_a});
                    continue;
                }

                if (view.square_cell(i, j)) {
                    const auto r_a = is_multiple_of_unitary(a, tol, s);
                    if (!r_a) return Violation{ViolationKind::SquareNotUnitaryMultiple, at_a};
                    const auto r_b = is_multiple_of_unitary(b, tol, s);
                    if (!r_b) {
                        const bool left_fails = !gram_identity_scalar(b, GramSide::Left, tol, s);
                        const GramSide side = left_fails ? GramSide::Left : GramSide::Right;
                        return spectral_mismatch(
                            MismatchKind::EigenvalueMismatch,
                            left_fails ? Quantity::GramLeft : Quantity::GramRight, at_b,
                            gram(a, side), gram(b, side));
                    }
                    if (!scalars_match(std::sqrt(*r_a), std::sqrt(*r_b), tol.cmp, s)) {
                        const bool pattern = (*r_a == 0.0) != (*r_b == 0.0);
                        return scalar_mismatch(
                            pattern ? MismatchKind::ZeroPatternMismatch : MismatchKind::ScalarMismatch,
                            Quantity::UnitaryScale, at_a, *r_a, *r_b);
                    }
                    form.unitary_scales.push_back({l, i, j, *r_a});
                    continue;
                }

                if (!rectangular_is_zero(a, tol, s)) {
                    return Violation{ViolationKind::RectangularNonzero, at_a};
                }
                if (!rectangular_is_zero(b, tol, s)) {
                    const bool left_fails = !gram_identity_scalar(b, GramSide::Left, tol, s);
                    const GramSide side = left_fails ? GramSide::Left : GramSide::Right;
                    return spectral_mismatch(MismatchKind::ZeroPatternMismatch,
                                             left_fails ? Quantity::GramLeft : Quantity::GramRight,
                                             at_b, gram(a, side), gram(b, side));
                }
            }
        }
    }
    return form;
}

SolutionReport check_solution_form(const PartitionView& view, const InducedGraph& g,
                                   const VertexPartition& part, const std::vector<PrEntry>& prs,
                                   const Tolerances& tol) {
    (void)view;
    SolutionFormReport form;
    for (const PrEntry& e : prs) {
        const SubmatrixRef at{e.l, Side::A, e.i, e.j};
        const auto beta_a = is_multiple_of_identity(e.pr_a, tol, e.scale);
        if (!beta_a) {
            return PrViolation{{ViolationKind::PrNotIdentityMultiple, at}, e.pr_a, e.pr_b, e.scale,
                               pr_path(g, part, e.i, e.j)};
        }
        const auto beta_b = is_multiple_of_identity(e.pr_b, tol, e.scale);
        if (!beta_b) {
            MismatchCertificate c = spectral_mismatch(MismatchKind::EigenvalueMismatch,
                                                      Quantity::PrNormal,
                                                      {e.l, Side::B, e.i, e.j}, e.pr_a, e.pr_b);
            c.pr_path = pr_path(g, part, e.i, e.j);
            return c;
        }
        if (!scalars_match(*beta_a, *beta_b, tol.cmp, e.scale)) {
            MismatchCertificate c = scalar_mismatch(MismatchKind::ScalarMismatch, Quantity::PrScalar,
                                                    at, *beta_a, *beta_b);
            c.pr_path = pr_path(g, part, e.i, e.j);
            return c;
        }
        form.beta.push_back({e.l, e.i, e.j, *beta_a});
    }
    return form;
}

}  // namespace sus
