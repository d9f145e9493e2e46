#pragma once

// Equivalent-problem construction: pick the functional S (A-side) and R
// (B-side) a violation points at, diagonalize both, compare spectra, conjugate
// the collection and split the touched block.

#include "sus/structure_check.hpp"

#include <variant>
#include <vector>

namespace sus {

struct Selection {
    Violation violation;
    Quantity quantity = Quantity::HermitianReal;
    CMatrix s;
    CMatrix r;
    VertexKind touched_side = VertexKind::Row;  ///< Sus steps always touch rows (= columns)
    std::size_t touched = 0;
    double context = 1.0;  ///< parent scale used for grouping
    std::optional<PrPath> pr_path;
};

struct RefinementStep {
    Violation violation;
    Quantity quantity = Quantity::HermitianReal;
    VertexKind touched_side = VertexKind::Row;
    std::size_t touched = 0;
    BlockStructure rows_before;
    BlockStructure cols_before;
    BlockStructure rows_after;
    BlockStructure cols_after;
    std::vector<Complex> eigenvalues_a;  ///< expanded, canonical order
    std::vector<Complex> eigenvalues_b;
    std::vector<EigenGroup> groups;      ///< A-side grouping
    std::optional<PrPath> pr_path;
    CMatrix y;  ///< touched block of Y (A side)
    CMatrix z;  ///< touched block of Z (B side)

    std::vector<std::size_t> multiplicities() const;
};

using IterationTrace = std::vector<RefinementStep>;

/// Accumulated Y_t...Y_1 (A side) and Z_t...Z_1 (B side) for rows and columns.
/// In Sus mode the column transforms equal the row transforms.
struct Transforms {
    CMatrix row_a;
    CMatrix row_b;
    CMatrix col_a;
    CMatrix col_b;

    static Transforms identity(std::size_t m, std::size_t n);
};

Selection select_s_and_r(const PartitionView& view, Mode mode, const Violation& violation,
                         const Tolerances& tol);
Selection select_s_and_r(const InducedGraph& g, const VertexPartition& part, const PrViolation& pv);

struct EquivalentProblem {
    PairCollection collection;
    RefinementStep step;
};

/// Throws NumericalFailure when S fails its predicate yet groups into a single
/// eigenvalue (the predicate and the grouping disagree inside the tolerance band).
std::variant<EquivalentProblem, MismatchCertificate> build_equivalent_problem(
    const PairCollection& coll, const PartitionView& view, Mode mode, const Selection& sel,
    const Tolerances& tol);

/// Left-multiply the touched row block of `m` by `block` (rows) or right-multiply
/// the touched column block by `block^*` (columns).
void apply_to_rows(CMatrix& m, const CMatrix& block, std::size_t offset);
void apply_to_cols(CMatrix& m, const CMatrix& block, std::size_t offset);

/// Fold one step into the accumulated transforms.
void accumulate(Transforms& t, const RefinementStep& step, Mode mode);

Transforms accumulated_transforms(const IterationTrace& trace, Mode mode, std::size_t m,
                                  std::size_t n);

struct Witness {
    CMatrix u;
    CMatrix v;  ///< equals u in Sus mode
};

/// U = row_b^* U_hat row_a and V = col_b^* V_hat col_a, i.e.
/// U = Z_1^* ... Z_t^* U_hat Y_t ... Y_1.
Witness compose_witness(const CMatrix& u_hat, const CMatrix& v_hat, const IterationTrace& trace,
                        Mode mode);
Witness compose_witness(const CMatrix& u_hat, const CMatrix& v_hat, const Transforms& t);

}  // namespace sus
