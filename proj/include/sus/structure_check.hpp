#pragma once

// Pre-Solution and Solution-form tests over a partitioned collection. Every
// cell is tested A-side first; an A-side failure is a Violation to refine on,
// a B-side-only failure or a scalar disagreement is a Mismatch.

#include "sus/blocking.hpp"
#include "sus/graph.hpp"

#include <optional>
#include <variant>
#include <vector>

namespace sus {

enum class ViolationKind {
    DiagonalNotIdentityMultiple,
    RectangularNonzero,
    SquareNotUnitaryMultiple,
    PrNotIdentityMultiple,
};

/// The functional a certificate or refinement step measures.
enum class Quantity {
    HermitianReal,   ///< (X + X^*)/2 of a diagonal block
    HermitianImag,   ///< (X - X^*)/2i of a diagonal block
    GramLeft,        ///< X X^*
    GramRight,       ///< X^* X
    PrNormal,        ///< pr(X) as a matrix
    DiagonalScalar,  ///< alpha of a diagonal identity multiple
    UnitaryScale,    ///< r with X X^* = r I
    PrScalar,        ///< beta with pr(X) = beta I
};

enum class MismatchKind { ScalarMismatch, ZeroPatternMismatch, EigenvalueMismatch };

const char* to_string(ViolationKind kind);
const char* to_string(Quantity q);
const char* to_string(MismatchKind kind);

/// True for quantities whose values are spectra rather than single scalars.
bool is_spectral(Quantity q);

struct Violation {
    ViolationKind kind = ViolationKind::DiagonalNotIdentityMultiple;
    SubmatrixRef at;
};

/// Evidence of non-similarity. The quantity is measured on the collection as
/// seen through the four transforms (row_a A col_a^*, row_b B col_b^*) under
/// the recorded structures, so it can be re-derived from the raw instance.
struct MismatchCertificate {
    MismatchKind kind = MismatchKind::ScalarMismatch;
    Quantity quantity = Quantity::DiagonalScalar;
    SubmatrixRef at;  ///< A-side locator of the cell (side field: the side that failed)
    std::vector<Complex> a_value;
    std::vector<Complex> b_value;
    std::optional<PrPath> pr_path;

    Mode mode = Mode::Sus;
    BlockStructure rows;
    BlockStructure cols;
    CMatrix row_a;
    CMatrix row_b;
    CMatrix col_a;
    CMatrix col_b;
};

struct ScalarEntry {
    std::size_t l = 0;
    std::size_t i = 0;
    std::size_t j = 0;
    Complex value;
};

struct PreSolutionInForm {
    std::vector<ScalarEntry> diag_scalars;   ///< Sus only, per (l, i, i)
    std::vector<ScalarEntry> unitary_scales;  ///< r_ij (real) for square cells
};

using PreSolutionReport = std::variant<PreSolutionInForm, Violation, MismatchCertificate>;

struct SolutionFormReport {
    std::vector<ScalarEntry> beta;  ///< per pr entry, in enumeration order
};

struct PrViolation {
    Violation violation;  ///< kind PrNotIdentityMultiple, at = (l, A, i, j)
    CMatrix pr_a;
    CMatrix pr_b;
    double scale = 1.0;
    PrPath path;
};

using SolutionReport = std::variant<SolutionFormReport, PrViolation, MismatchCertificate>;

/// alpha when both Hermitian parts of a diagonal block are identity multiples.
std::optional<Complex> diagonal_scalar(const CMatrix& block, const Tolerances& tol, double scale);

/// A rectangular block counts as zero when both of its Gram matrices are
/// identity multiples (they can only be so at rank zero).
bool rectangular_is_zero(const CMatrix& block, const Tolerances& tol, double scale);

/// Eigenvalues of a functional in canonical order, expanded (no grouping).
/// Hermitian quantities use the Hermitian solver, PrNormal a general one.
std::vector<Complex> quantity_spectrum(const CMatrix& f, Quantity q);

/// Grouping/compare context of a Gram functional of cell (A_ij, B_ij).
double gram_context(double parent_scale, const CMatrix& a, const CMatrix& b);

/// Scan l, i, j, A before B; returns the first violation or mismatch.
/// Certificate frame fields are left for the caller to fill.
PreSolutionReport check_presolution(const PartitionView& view, Mode mode, const Tolerances& tol);

/// Requires Pre-Solution form. Scans pr entries in enumeration order.
SolutionReport check_solution_form(const PartitionView& view, const InducedGraph& g,
                                   const VertexPartition& part, const std::vector<PrEntry>& prs,
                                   const Tolerances& tol);

}  // namespace sus
