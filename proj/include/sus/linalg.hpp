#pragma once

// Dense complex matrix arithmetic, Hermitian / normal eigendecomposition and
// the tolerance-based structural predicates used throughout the solver.
//
// Every predicate is relative: a threshold is always `tol * (scale + |M|_F)`
// where `scale` is the Frobenius norm of the parent matrix the block was cut
// from (supplied by the caller, default 1). With the default this reduces to
// the familiar `tol * (1 + |M|_F)` form.

#include <Eigen/Dense>

#include <complex>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace sus {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;

enum class ErrorCode {
    NotHermitian,
    NotMultipleOfUnitary,
    NumericalFailure,
    SingularBlock,
    DimensionMismatch,
    InvalidRefinement,
    InternalInconsistency,
    SpecInvalid,
    OutOfScope,
    InvalidInput,
};

const char* to_string(ErrorCode code);

class SusError : public std::runtime_error {
public:
    SusError(ErrorCode code, const std::string& what)
        : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

struct Tolerances {
    double cmp = 1e-9;     ///< structural comparisons (identity, unitary, zero, scalar equality)
    double group = 1e-7;   ///< eigenvalue grouping
    double verify = 1e-6;  ///< final residual acceptance

    /// Throws SpecInvalid unless 0 < cmp <= group <= verify < 1.
    void validate() const;
};

struct EigenGroup {
    Complex value;
    std::size_t multiplicity = 0;
};

/// `diagonalizer * S * diagonalizer^*` is diagonal with `eigenvalues` on the
/// diagonal, in canonical order. `groups` partitions the eigenvalues into runs
/// that agree within the grouping tolerance.
struct EigenDecomposition {
    std::vector<Complex> eigenvalues;
    CMatrix diagonalizer;
    std::vector<EigenGroup> groups;

    std::vector<std::size_t> multiplicities() const;
};

// --- plumbing ---------------------------------------------------------------

double frobenius_norm(const CMatrix& m);
CMatrix adjoint(const CMatrix& m);
CMatrix matmul(const CMatrix& a, const CMatrix& b);

/// Inverse of a multiple of a unitary, `M^{-1} = M^* / r` where `M M^* = r I`.
CMatrix inverse_of_unitary_multiple(const CMatrix& m, double r);

bool all_finite(const CMatrix& m);

/// (M + M^*) / 2
CMatrix hermitian_real_part(const CMatrix& m);
/// (M - M^*) / 2i
CMatrix hermitian_imag_part(const CMatrix& m);

// --- predicates -------------------------------------------------------------

/// alpha = trace(M)/dim when |M - alpha I|_F <= cmp (scale + |M|_F).
std::optional<Complex> is_multiple_of_identity(const CMatrix& m, const Tolerances& tol,
                                               double scale = 1.0);

/// r >= 0 with M M^* = r I = M^* M. Both Gram matrices are tested against a
/// threshold of cmp (scale |M|_F + |G|_F), the first-order size of a
/// perturbation of M at the `scale` level. r = 0 iff M is zero.
std::optional<double> is_multiple_of_unitary(const CMatrix& m, const Tolerances& tol,
                                             double scale = 1.0);

enum class GramSide { Left, Right };

/// M M^* (left) or M^* M (right).
CMatrix gram(const CMatrix& m, GramSide side);

/// Real alpha with G = alpha I for the chosen Gram matrix of M, at threshold
/// cmp (scale |M|_F + |G|_F). Works for rectangular M.
std::optional<double> gram_identity_scalar(const CMatrix& m, GramSide side, const Tolerances& tol,
                                           double scale);

/// |M|_F <= cmp * scale.
bool is_zero(const CMatrix& m, const Tolerances& tol, double scale);

/// |a - b| <= cmp (scale + max(|a|, |b|)).
bool scalars_match(Complex a, Complex b, double cmp, double scale);

// --- eigendecompositions ----------------------------------------------------

/// Real eigenvalues sorted descending. Neighbours within
/// group (scale + |S|_F) are merged transitively into one group.
EigenDecomposition hermitian_eigendecomposition(const CMatrix& s, const Tolerances& tol,
                                                double scale = 1.0);

/// Eigendecomposition of a multiple of a unitary. Splits on the Hermitian part
/// first, then diagonalizes the imaginary part inside every degenerate
/// eigenspace of the first. Canonical order: real part descending, then
/// imaginary part descending, both decided on groups rather than raw floats.
EigenDecomposition normal_eigendecomposition(const CMatrix& n, const Tolerances& tol,
                                             double scale = 1.0);

/// Grouped signatures agree: same multiplicity pattern and group values within
/// group (scale + max(|S|_F, |R|_F)).
bool spectra_match(const EigenDecomposition& a, const EigenDecomposition& b, const Tolerances& tol,
                   double scale, double norm_bound);

}  // namespace sus
