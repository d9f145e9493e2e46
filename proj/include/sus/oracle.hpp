#pragma once

// Solver-independent references: a one-sided trace-word certifier and exact
// deciders for a few classical special cases.

#include "sus/blocking.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sus {

struct Letter {
    std::size_t l = 0;
    bool adjoint = false;

    friend bool operator==(const Letter&, const Letter&) = default;
};

using Word = std::vector<Letter>;

/// "A1 A2* A1" style, 1-based.
std::string to_string(const Word& w);

/// tr w(A) (side A) or tr w(B).
Complex word_trace(const PairCollection& coll, const Word& w, Side side);

struct WordWitness {
    Word word;
    Complex trace_a;
    Complex trace_b;
};

/// First word of length <= max_len (shortest first, one representative per
/// rotation class) whose traces differ by more than
/// cmp (|tr w(A)| + prod_k |X_k|_F). Throws SpecInvalid for max_len > 6.
std::optional<WordWitness> trace_word_oracle(const PairCollection& coll, std::size_t max_len,
                                             const Tolerances& tol = {});

/// Ground truth on its scope: Sus with p = 1 and A normal; SuEq with p = 1;
/// Sus with n = 2. Throws OutOfScope elsewhere.
bool small_case_decider(const PairCollection& coll, Mode mode, const Tolerances& tol = {});

/// Minimum over pairings of sqrt(sum |a_k - b_pi(k)|^2); lists of equal length.
double matching_distance(const std::vector<Complex>& a, const std::vector<Complex>& b);

}  // namespace sus
