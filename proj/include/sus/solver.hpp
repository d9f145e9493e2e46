#pragma once

// The decision procedure: partition, test Pre-Solution form, test Solution
// form, then either build the closed-form witness or refine and repeat.

#include "sus/refine.hpp"

#include <string>
#include <variant>

namespace sus {

struct Solved {
    CMatrix u;
    CMatrix v;  ///< equals u in Sus mode
    double residual = 0.0;
    IterationTrace trace;
};

struct NotSimilar {
    MismatchCertificate certificate;
    IterationTrace trace;
};

/// The iteration finished (or gave up) without a witness that passes the final
/// residual test. `u`/`v` are empty when no candidate was built.
struct VerificationFailed {
    CMatrix u;
    CMatrix v;
    double residual = 0.0;
    IterationTrace trace;
    std::string reason;
};

using SolveOutcome = std::variant<Solved, NotSimilar, VerificationFailed>;

struct WitnessCheck {
    double residual = 0.0;   ///< max_l |U A_l V^* - B_l|_F / (1 + |A_l|_F)
    double unitarity = 0.0;  ///< max(|U U^* - I|_F / m, |V V^* - I|_F / n)
    bool accepted = false;   ///< both at most tol.verify
};

WitnessCheck verify_witness(const PairCollection& coll, const CMatrix& u, const CMatrix& v,
                            const Tolerances& tol);

/// Block-diagonal (U^sol, V^sol) with every class representative fixed to the
/// identity: X_i = (B^pth_i)^{-1} A^pth_i.
std::pair<CMatrix, CMatrix> build_usol(const PartitionView& view, const InducedGraph& g,
                                       const PathProducts& paths);

SolveOutcome solve(const PairCollection& coll, Mode mode, const Tolerances& tol = {});
SolveOutcome solve_sus(const PairCollection& coll, const Tolerances& tol = {});
SolveOutcome solve_sueq(const PairCollection& coll, const Tolerances& tol = {});

const char* outcome_name(const SolveOutcome& outcome);
const IterationTrace& outcome_trace(const SolveOutcome& outcome);

}  // namespace sus
