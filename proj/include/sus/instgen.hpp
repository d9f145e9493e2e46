#pragma once

// Seeded instance generation. Every kind is a pure function of its spec.

#include "sus/blocking.hpp"

#include <cstdint>
#include <optional>
#include <random>
#include <string>

namespace sus {

enum class InstanceKind {
    PlantedSimilar,       ///< random A_l, B_l = U A_l U^*
    Structured,           ///< block-structured A_l that exercise graph and pr steps, planted U
    PlantedEquivalent,    ///< random m x n A_l, B_l = U A_l V^*
    PerturbedNonSimilar,  ///< planted similar, then B_1 += epsilon E with |E|_F = 1
    DeepSplit,            ///< A_1 whose blocks split off one at a time, planted U
    Pairwise,             ///< p = 2, B_1 = Q A_1 Q^*, B_2 = R A_2 R^* with independent Q, R
};

const char* to_string(InstanceKind kind);
std::optional<InstanceKind> parse_instance_kind(const std::string& name);

struct InstanceSpec {
    std::uint64_t seed = 0;
    InstanceKind kind = InstanceKind::PlantedSimilar;
    std::size_t m = 0;  ///< PlantedEquivalent only; 0 means n
    std::size_t n = 2;
    std::size_t p = 1;
    double epsilon = 1e-2;       ///< PerturbedNonSimilar
    std::size_t split_depth = 0; ///< DeepSplit: multiplicity k of the peeled eigenvalue (0: n - 2)
    double gap = 0.0;            ///< DeepSplit: eigenvalue spacing delta (0: unit spacing)
};

struct Instance {
    Mode mode = Mode::Sus;
    PairCollection collection;
    std::optional<CMatrix> u;  ///< planted witness, when there is one
    std::optional<CMatrix> v;
};

/// Complex Gaussian matrix with E|x_ij|^2 = 1.
CMatrix random_gaussian(std::mt19937_64& rng, std::size_t rows, std::size_t cols);

/// Haar unitary: QR of a complex Gaussian matrix, with the phases of R's
/// diagonal moved into Q so that R has a positive real diagonal.
CMatrix random_unitary(std::mt19937_64& rng, std::size_t n);
CMatrix random_unitary(std::uint64_t seed, std::size_t n);

/// Throws SpecInvalid on a spec outside the kind's domain.
Instance generate(const InstanceSpec& spec);

}  // namespace sus
