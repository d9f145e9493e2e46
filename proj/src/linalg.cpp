#include "sus/linalg.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>

namespace sus {

const char* to_string(ErrorCode code) {
    switch (code) {
        case ErrorCode::NotHermitian: return "NotHermitian";
        case ErrorCode::NotMultipleOfUnitary: return "NotMultipleOfUnitary";
        case ErrorCode::NumericalFailure: return "NumericalFailure";
        case ErrorCode::SingularBlock: return "SingularBlock";
        case ErrorCode::DimensionMismatch: return "DimensionMismatch";
        case ErrorCode::InvalidRefinement: return "InvalidRefinement";
        case ErrorCode::InternalInconsistency: return "InternalInconsistency";
        case ErrorCode::SpecInvalid: return "SpecInvalid";
        case ErrorCode::OutOfScope: return "OutOfScope";
        case ErrorCode::InvalidInput: return "InvalidInput";
    }
    return "Unknown";
}

void Tolerances::validate() const {
    if (!(cmp > 0.0 && cmp <= group && group <= verify && verify < 1.0)) {
        throw SusError(ErrorCode::SpecInvalid,
                       "tolerances must satisfy 0 < cmp <= group <= verify < 1");
    }
}

std::vector<std::size_t> EigenDecomposition::multiplicities() const {
    std::vector<std::size_t> out;
    out.reserve(groups.size());
    for (const auto& g : groups) out.push_back(g.multiplicity);
    return out;
}

double frobenius_norm(const CMatrix& m) { return m.norm(); }

CMatrix adjoint(const CMatrix& m) { return m.adjoint(); }

CMatrix matmul(const CMatrix& a, const CMatrix& b) {
    if (a.cols() != b.rows()) {
        throw SusError(ErrorCode::DimensionMismatch, "matmul: inner dimensions differ");
    }
    return a * b;
}

CMatrix inverse_of_unitary_multiple(const CMatrix& m, double r) {
    if (!(r > 0.0)) {
        throw SusError(ErrorCode::SingularBlock, "inverse of a zero multiple of a unitary");
    }
    return m.adjoint() / r;
}

bool all_finite(const CMatrix& m) {
    for (Eigen::Index k = 0; k < m.size(); ++k) {
        const Complex z = m.data()[k];
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

CMatrix hermitian_real_part(const CMatrix& m) { return (m + m.adjoint()) * 0.5; }

CMatrix hermitian_imag_part(const CMatrix& m) {
    return (m - m.adjoint()) * Complex(0.0, -0.5);
}

std::optional<Complex> is_multiple_of_identity(const CMatrix& m, const Tolerances& tol,
                                               double scale) {
    if (m.rows() != m.cols()) {
        throw SusError(ErrorCode::DimensionMismatch, "is_multiple_of_identity: not square");
    }
    if (m.size() == 0) return Complex(0.0);
    const Complex alpha = m.trace() / static_cast<double>(m.rows());
    CMatrix dev = m;
    dev.diagonal().array() -= alpha;
    if (dev.norm() <= tol.cmp * (scale + m.norm())) return alpha;
    return std::nullopt;
}

CMatrix gram(const CMatrix& m, GramSide side) {
    return side == GramSide::Left ? CMatrix(m * m.adjoint()) : CMatrix(m.adjoint() * m);
}

std::optional<double> gram_identity_scalar(const CMatrix& m, GramSide side, const Tolerances& tol,
                                           double scale) {
    CMatrix g = gram(m, side);
    if (g.size() == 0) return 0.0;
    const double gnorm = g.norm();
    const double alpha = g.trace().real() / static_cast<double>(g.rows());
    g.diagonal().array() -= alpha;
    if (g.norm() <= tol.cmp * (scale * m.norm() + gnorm)) return alpha;
    return std::nullopt;
}

std::optional<double> is_multiple_of_unitary(const CMatrix& m, const Tolerances& tol,
                                             double scale) {
    if (m.rows() != m.cols()) {
        throw SusError(ErrorCode::DimensionMismatch, "is_multiple_of_unitary: not square");
    }
    if (is_zero(m, tol, scale)) return 0.0;
    const auto left = gram_identity_scalar(m, GramSide::Left, tol, scale);
    if (!left) return std::nullopt;
    const auto right = gram_identity_scalar(m, GramSide::Right, tol, scale);
    if (!right) return std::nullopt;
    return std::max(0.0, 0.5 * (*left + *right));
}

bool is_zero(const CMatrix& m, const Tolerances& tol, double scale) {
    return m.norm() <= tol.cmp * scale;
}

bool scalars_match(Complex a, Complex b, double cmp, double scale) {
    return std::abs(a - b) <= cmp * (scale + std::max(std::abs(a), std::abs(b)));
}

namespace {

struct RealSplit {
    std::vector<double> values;  // descending
    CMatrix diagonalizer;        // rows: conjugated eigenvectors, same order
    std::vector<std::size_t> group_sizes;
};

RealSplit split_hermitian(const CMatrix& s, double threshold) {
    const auto n = s.rows();
    RealSplit out;
    if (n == 0) return out;
    // Symmetrize exactly so the backend sees a Hermitian input.
    const CMatrix h = (s + s.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(h);
    if (solver.info() != Eigen::Success) {
        throw SusError(ErrorCode::NumericalFailure, "Hermitian eigensolver did not converge");
    }
    const auto& evals = solver.eigenvalues();
    const auto& evecs = solver.eigenvectors();
    out.values.resize(static_cast<std::size_t>(n));
    out.diagonalizer.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        const Eigen::Index src = n - 1 - k;
        out.values[static_cast<std::size_t>(k)] = evals(src);
        out.diagonalizer.row(k) = evecs.col(src).adjoint();
    }
    std::size_t run = 1;
    for (std::size_t k = 1; k < out.values.size(); ++k) {
        if (out.values[k - 1] - out.values[k] <= threshold) {
            ++run;
        } else {
            out.group_sizes.push_back(run);
            run = 1;
        }
    }
    out.group_sizes.push_back(run);
    return out;
}

}  // namespace

EigenDecomposition hermitian_eigendecomposition(const CMatrix& s, const Tolerances& tol,
                                                double scale) {
    if (s.rows() != s.cols()) {
        throw SusError(ErrorCode::DimensionMismatch, "hermitian_eigendecomposition: not square");
    }
    const double snorm = s.norm();
    if ((s - s.adjoint()).norm() > tol.cmp * (scale + snorm)) {
        throw SusError(ErrorCode::NotHermitian, "matrix is not Hermitian within tolerance");
    }
    const RealSplit split = split_hermitian(s, tol.group * (scale + snorm));

    EigenDecomposition out;
    out.diagonalizer = split.diagonalizer;
    out.eigenvalues.reserve(split.values.size());
    for (double v : split.values) out.eigenvalues.emplace_back(v, 0.0);
    std::size_t k = 0;
    for (std::size_t size : split.group_sizes) {
        double sum = 0.0;
        for (std::size_t t = 0; t < size; ++t) sum += split.values[k + t];
        out.groups.push_back({Complex(sum / static_cast<double>(size), 0.0), size});
        k += size;
    }
    return out;
}

EigenDecomposition normal_eigendecomposition(const CMatrix& n, const Tolerances& tol,
                                             double scale) {
    if (n.rows() != n.cols()) {
        throw SusError(ErrorCode::DimensionMismatch, "normal_eigendecomposition: not square");
    }
    if (!is_multiple_of_unitary(n, tol, scale)) {
        throw SusError(ErrorCode::NotMultipleOfUnitary,
                       "matrix is not a multiple of a unitary within tolerance");
    }
    const double threshold = tol.group * (scale + n.norm());
    const CMatrix h_imag = hermitian_imag_part(n);
    const RealSplit outer = split_hermitian(hermitian_real_part(n), threshold);

    CMatrix y = outer.diagonalizer;
    std::vector<std::size_t> sizes;
    Eigen::Index offset = 0;
    for (std::size_t size : outer.group_sizes) {
        const auto m = static_cast<Eigen::Index>(size);
        if (m == 1) {
            sizes.push_back(1);
        } else {
            const CMatrix rows = y.middleRows(offset, m);
            const CMatrix restricted = rows * h_imag * rows.adjoint();
            const RealSplit inner = split_hermitian(restricted, threshold);
            y.middleRows(offset, m) = inner.diagonalizer * rows;
            sizes.insert(sizes.end(), inner.group_sizes.begin(), inner.group_sizes.end());
        }
        offset += m;
    }

    EigenDecomposition out;
    out.diagonalizer = y;
    const CMatrix d = y * n * y.adjoint();
    out.eigenvalues.reserve(static_cast<std::size_t>(n.rows()));
    for (Eigen::Index k = 0; k < n.rows(); ++k) out.eigenvalues.push_back(d(k, k));
    std::size_t k = 0;
    for (std::size_t size : sizes) {
        Complex sum = 0.0;
        for (std::size_t t = 0; t < size; ++t) sum += out.eigenvalues[k + t];
        out.groups.push_back({sum / static_cast<double>(size), size});
        k += size;
    }
    return out;
}

bool spectra_match(const EigenDecomposition& a, const EigenDecomposition& b, const Tolerances& tol,
                   double scale, double norm_bound) {
    if (a.groups.size() != b.groups.size()) return false;
    const double threshold = tol.group * (scale + norm_bound);
    for (std::size_t k = 0; k < a.groups.size(); ++k) {
        if (a.groups[k].multiplicity != b.groups[k].multiplicity) return false;
        if (std::abs(a.groups[k].value - b.groups[k].value) > threshold) return false;
    }
    return true;
}

}  // namespace sus
