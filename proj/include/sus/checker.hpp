#pragma once

// Third-party validation of solver output from the raw instance. Uses the
// linear-algebra predicates and the block partition only; no solver code.
//
// A certificate is confirmed when
//   1. its four transforms are unitary,
//   2. every trace step, replayed on (row_a A col_a^*, row_b B col_b^*) under
//      that step's structure, shows the recorded functional diagonalized to
//      the recorded spectrum on both sides, with equal spectra and a
//      refinement that matches the grouping, and
//   3. the certified quantity, recomputed in the final frame, disagrees
//      between the sides by more than the comparison tolerance.

#include "sus/refine.hpp"

#include <string>

namespace sus {

struct CheckResult {
    bool confirmed = false;
    std::string reason;  ///< first failed check, or a short summary on success
    double residual = 0.0;
};

CheckResult check_witness(const PairCollection& coll, const CMatrix& u, const CMatrix& v,
                          const Tolerances& tol);

CheckResult check_certificate(const PairCollection& coll, const IterationTrace& trace,
                              const MismatchCertificate& cert, const Tolerances& tol);

}  // namespace sus
