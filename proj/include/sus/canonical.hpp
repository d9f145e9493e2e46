#pragma once

// Per-iteration features of a single collection {A_l}, recorded while the
// iteration runs on the mirrored instance (A_l, A_l) until Solution form.

#include "sus/refine.hpp"

#include <optional>
#include <vector>

namespace sus {

struct FeatureStep {
    BlockStructure structure;
    bool solution_form = false;
    std::optional<Violation> violation;  ///< absent at Solution form
    std::optional<Quantity> quantity;
    std::vector<EigenGroup> eigenvalues;  ///< grouped spectrum of the diagonalized S

    bool presolution = false;                ///< the fields below are set only then
    std::vector<ScalarEntry> diag_scalars;   ///< a_i
    std::vector<ScalarEntry> unitary_scales;  ///< r_ij
    std::vector<std::vector<std::size_t>> partition;
    std::vector<ScalarEntry> beta;  ///< Solution form only
};

struct CanonicalFeatures {
    std::vector<FeatureStep> steps;
};

/// Throws DimensionMismatch on non-square or unequal inputs; NumericalFailure
/// propagates from the eigensolvers.
CanonicalFeatures extract_canonical_features(const std::vector<CMatrix>& mats,
                                             const Tolerances& tol = {});

/// Exact on discrete fields; numeric values within group (1 + max |x|).
bool compare_features(const CanonicalFeatures& f1, const CanonicalFeatures& f2,
                      const Tolerances& tol = {});

}  // namespace sus
