#pragma once

// JSON exchange formats. Matrices are arrays of rows, each entry a [re, im]
// pair. Doubles are written as shortest round-trip decimals, so values read
// back bit-exactly. Block and pair indices are 1-based on disk.

#include "sus/canonical.hpp"
#include "sus/solver.hpp"

#include <json.hpp>

#include <optional>
#include <string>

namespace sus {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSolverVersion = "1.0.0";
inline constexpr int kFormatVersion = 1;

struct InstanceFile {
    Mode mode = Mode::Sus;
    PairCollection collection;
};

struct WitnessFile {
    CMatrix u;
    CMatrix v;
};

struct ResultFile {
    std::string outcome;  ///< Solved | NotSimilar | VerificationFailed
    Mode mode = Mode::Sus;
    std::optional<CMatrix> u;
    std::optional<CMatrix> v;
    double residual = 0.0;  ///< infinity when no candidate witness was built
    std::optional<MismatchCertificate> certificate;
    IterationTrace trace;
    Tolerances tolerances;
    std::string solver_version = kSolverVersion;
    double wall_time = 0.0;  ///< seconds
    std::string reason;
};

/// Reads a file, or standard input for "-". Throws InvalidInput.
std::string read_text(const std::string& path);
void write_text(const std::string& path, const std::string& text);

/// Throws SusError(InvalidInput) with a line/column or JSON-pointer location.
Json parse_json(const std::string& text);

Json matrix_to_json(const CMatrix& m);
CMatrix matrix_from_json(const Json& j, const std::string& where);

Json instance_to_json(const InstanceFile& inst);
InstanceFile instance_from_json(const Json& j);

Json witness_to_json(const WitnessFile& w);
WitnessFile witness_from_json(const Json& j);

ResultFile make_result(const SolveOutcome& outcome, Mode mode, const Tolerances& tol,
                       double wall_time);
Json result_to_json(const ResultFile& r);
ResultFile result_from_json(const Json& j);

Json certificate_to_json(const MismatchCertificate& c);
MismatchCertificate certificate_from_json(const Json& j, const std::string& where);

Json trace_to_json(const IterationTrace& t);
IterationTrace trace_from_json(const Json& j, const std::string& where);

Json features_to_json(const CanonicalFeatures& f);
CanonicalFeatures features_from_json(const Json& j);

std::string dump(const Json& j);

}  // namespace sus
