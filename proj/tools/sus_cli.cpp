// sus: solve, generate, verify and canonicalize simultaneous unitary
// similarity / equivalence instances.
//
// Exit status: 0 solved / confirmed / equal, 1 not similar / features differ,
// 2 verification failed, 3 verify refuted the result, 64 bad input.

#include "sus/checker.hpp"
#include "sus/instgen.hpp"
#include "sus/io.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <sstream>

namespace {

constexpr int kExitInput = 64;

struct TolOptions {
    std::optional<double> cmp;
    std::optional<double> group;
    std::optional<double> verify;

    void add(CLI::App* app) {
        app->add_option("--tol-cmp", cmp, "structural comparison tolerance");
        app->add_option("--tol-group", group, "eigenvalue grouping tolerance");
        app->add_option("--tol-verify", verify, "final residual tolerance");
    }

    sus::Tolerances resolve() const {
        sus::Tolerances t;
        const auto env = [](const char* name, double& slot) {
            if (const char* v = std::getenv(name)) {
                char* end = nullptr;
                const double x = std::strtod(v, &end);
                if (end == v || *end != '\0') {
                    throw sus::SusError(sus::ErrorCode::InvalidInput,
                                        std::string(name) + " is not a number");
                }
                slot = x;
            }
        };
        env("SUS_TOL_CMP", t.cmp);
        env("SUS_TOL_GROUP", t.group);
        env("SUS_TOL_VERIFY", t.verify);
        if (cmp) t.cmp = *cmp;
        if (group) t.group = *group;
        if (verify) t.verify = *verify;
        t.validate();
        return t;
    }
};

std::string fmt(sus::Complex z) {
    std::ostringstream os;
    os.precision(6);
    if (z.imag() == 0.0) {
        os << z.real();
    } else {
        os << z.real() << (z.imag() < 0 ? "-" : "+") << std::abs(z.imag()) << "i";
    }
    return os.str();
}

std::string fmt(const std::vector<sus::Complex>& v) {
    std::string out = "[";
    for (std::size_t k = 0; k < v.size(); ++k) out += (k ? ", " : "") + fmt(v[k]);
    return out + "]";
}

std::string fmt(const sus::BlockStructure& s) {
    std::string out = "[";
    for (std::size_t k = 0; k < s.count(); ++k) out += (k ? "," : "") + std::to_string(s.size(k));
    return out + "]";
}

std::string fmt(const sus::SubmatrixRef& r) {
    return std::string(sus::to_string(r.side)) + std::to_string(r.l + 1) + "(" +
           std::to_string(r.i + 1) + "," + std::to_string(r.j + 1) + ")";
}

void print_trace(std::ostream& os, const sus::IterationTrace& trace) {
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const auto& s = trace[k];
        os << "  step " << k + 1 << ": " << fmt(s.rows_before);
        if (!(s.rows_before == s.cols_before) || !(s.rows_after == s.cols_after)) {
            os << " x " << fmt(s.cols_before);
        }
        os << " -> " << fmt(s.rows_after);
        if (!(s.rows_after == s.cols_after)) os << " x " << fmt(s.cols_after);
        os << "  " << sus::to_string(s.violation.kind) << " at " << fmt(s.violation.at) << ", "
           << sus::to_string(s.quantity) << " spectrum " << fmt(s.eigenvalues_a) << "\n";
    }
}

void summarize(std::ostream& os, const sus::SolveOutcome& outcome, bool trace) {
    const auto& t = sus::outcome_trace(outcome);
    if (const auto* s = std::get_if<sus::Solved>(&outcome)) {
        os << "Solved: residual " << s->residual << " after " << t.size() << " refinement step"
           << (t.size() == 1 ? "" : "s") << "\n";
    } else if (const auto* ns = std::get_if<sus::NotSimilar>(&outcome)) {
        const auto& c = ns->certificate;
        os << "NotSimilar: " << sus::to_string(c.kind) << " of " << sus::to_string(c.quantity)
           << " at " << fmt(c.at) << " under structure " << fmt(c.rows);
        if (c.mode == sus::Mode::SuEq) os << " x " << fmt(c.cols);
        os << "\n  A side " << fmt(c.a_value) << "\n  B side " << fmt(c.b_value) << "\n";
    } else {
        const auto& vf = std::get<sus::VerificationFailed>(outcome);
        os << "VerificationFailed: " << vf.reason << " (residual " << vf.residual << ")\n";
    }
    if (trace) print_trace(os, t);
}

std::string witness_path(const std::string& out) {
    const std::string ext = ".json";
    if (out.size() > ext.size() && out.compare(out.size() - ext.size(), ext.size(), ext) == 0) {
        return out.substr(0, out.size() - ext.size()) + ".witness.json";
    }
    return out + ".witness.json";
}

int cmd_solve(const std::string& mode_flag, const std::string& in, const std::string& out,
              const TolOptions& topt, bool trace) {
    const sus::Tolerances tol = topt.resolve();
    const sus::InstanceFile inst = sus::instance_from_json(sus::parse_json(sus::read_text(in)));
    sus::Mode mode = inst.mode;
    if (mode_flag == "sus") mode = sus::Mode::Sus;
    if (mode_flag == "sueq") mode = sus::Mode::SuEq;
    if (mode == sus::Mode::Sus && !inst.collection.square()) {
        throw sus::SusError(sus::ErrorCode::InvalidInput, "/n: similarity needs m = n");
    }
    const auto start = std::chrono::steady_clock::now();
    const sus::SolveOutcome outcome = sus::solve(inst.collection, mode, tol);
    const double wall =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const sus::ResultFile result = sus::make_result(outcome, mode, tol, wall);
    const std::string text = sus::dump(sus::result_to_json(result));
    if (out.empty() || out == "-") {
        std::cout << text;
        summarize(std::cerr, outcome, trace);
    } else {
        sus::write_text(out, text);
        summarize(std::cout, outcome, trace);
    }
    return static_cast<int>(outcome.index());
}

int cmd_gen(const sus::InstanceSpec& spec, const std::string& out) {
    const sus::Instance inst = sus::generate(spec);
    sus::write_text(out, sus::dump(sus::instance_to_json({inst.mode, inst.collection})));
    if (inst.u && out != "-") {
        sus::write_text(witness_path(out), sus::dump(sus::witness_to_json({*inst.u, *inst.v})));
    }
    return 0;
}

int cmd_verify(const std::string& in, const std::string& result_path) {
    const sus::InstanceFile inst = sus::instance_from_json(sus::parse_json(sus::read_text(in)));
    const sus::ResultFile r = sus::result_from_json(sus::parse_json(sus::read_text(result_path)));
    if (r.mode == sus::Mode::Sus && !inst.collection.square()) {
        throw sus::SusError(sus::ErrorCode::InvalidInput, "similarity result for a rectangular instance");
    }
    sus::CheckResult check;
    if (r.outcome == "Solved") {
        check = sus::check_witness(inst.collection, *r.u, *r.v, r.tolerances);
    } else if (r.outcome == "NotSimilar") {
        check = sus::check_certificate(inst.collection, r.trace, *r.certificate, r.tolerances);
    } else if (r.u && r.v) {
        // the claim is only that this candidate does not pass
        const sus::CheckResult w = sus::check_witness(inst.collection, *r.u, *r.v, r.tolerances);
        check.confirmed = !w.confirmed;
        check.reason = "candidate witness: " + w.reason;
    } else {
        check.confirmed = true;
        check.reason = "no candidate witness to check (" + r.reason + ")";
    }
    std::cout << (check.confirmed ? "confirmed " : "refuted ") << r.outcome << ": " << check.reason
              << "\n";
    return check.confirmed ? 0 : 3;
}

int cmd_canon(const std::string& in, const std::string& out, const TolOptions& topt) {
    const sus::Tolerances tol = topt.resolve();
    const sus::InstanceFile inst = sus::instance_from_json(sus::parse_json(sus::read_text(in)));
    if (!inst.collection.square()) {
        throw sus::SusError(sus::ErrorCode::InvalidInput, "/n: features need square matrices");
    }
    std::vector<sus::CMatrix> mats;
    for (const auto& pr : inst.collection.pairs()) mats.push_back(pr.a);
    const auto features = sus::extract_canonical_features(mats, tol);
    sus::write_text(out, sus::dump(sus::features_to_json(features)));
    return 0;
}

int cmd_diff(const std::string& a, const std::string& b, const TolOptions& topt) {
    const sus::Tolerances tol = topt.resolve();
    const auto fa = sus::features_from_json(sus::parse_json(sus::read_text(a)));
    const auto fb = sus::features_from_json(sus::parse_json(sus::read_text(b)));
    const bool same = sus::compare_features(fa, fb, tol);
    std::cout << (same ? "features match" : "features differ") << "\n";
    return same ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Simultaneous unitary similarity and equivalence solver"};
    app.require_subcommand(1);

    std::string mode_flag;
    std::string in;
    std::string out;
    std::string result_path;
    bool trace = false;
    TolOptions tol;

    auto* solve = app.add_subcommand("solve", "decide an instance and write a result file");
    solve->add_option("--mode", mode_flag, "sus or sueq (default: the instance's mode)")
        ->check(CLI::IsMember({"sus", "sueq"}));
    solve->add_option("--in", in, "instance file, - for stdin")->required();
    solve->add_option("--out", out, "result file (default: stdout)");
    solve->add_flag("--trace", trace, "print the refinement steps");
    tol.add(solve);

    sus::InstanceSpec spec;
    std::string kind = "planted";
    auto* gen = app.add_subcommand("gen", "generate a seeded instance");
    gen->add_option("--kind", kind, "planted, structured, equivalent, perturbed, deepsplit, pairwise")
        ->check(CLI::IsMember({"planted", "structured", "equivalent", "perturbed", "deepsplit", "pairwise"}));
    gen->add_option("--n", spec.n, "column dimension")->required();
    gen->add_option("--m", spec.m, "row dimension (equivalent only)");
    gen->add_option("--p", spec.p, "pair count")->required();
    gen->add_option("--seed", spec.seed, "random seed")->required();
    gen->add_option("--epsilon", spec.epsilon, "perturbation size (perturbed)");
    gen->add_option("--depth", spec.split_depth, "peeled multiplicity (deepsplit)");
    gen->add_option("--gap", spec.gap, "eigenvalue spacing (deepsplit)");
    gen->add_option("--out", out, "instance file, - for stdout")->required();

    auto* verify = app.add_subcommand("verify", "re-check a result against its instance");
    verify->add_option("--in", in, "instance file")->required();
    verify->add_option("--result", result_path, "result file")->required();

    auto* canon = app.add_subcommand("canon", "write canonical features of the A matrices");
    canon->add_option("--in", in, "instance file")->required();
    canon->add_option("--out", out, "features file, - for stdout")->default_val("-");
    tol.add(canon);

    std::string diff_a;
    std::string diff_b;
    auto* diff = app.add_subcommand("diff", "compare two feature files");
    diff->add_option("first", diff_a, "features file")->required();
    diff->add_option("second", diff_b, "features file")->required();
    tol.add(diff);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kExitInput;
    }

    try {
        if (*solve) return cmd_solve(mode_flag, in, out, tol, trace);
        if (*gen) {
            spec.kind = *sus::parse_instance_kind(kind);
            return cmd_gen(spec, out);
        }
        if (*verify) return cmd_verify(in, result_path);
        if (*canon) return cmd_canon(in, out, tol);
        if (*diff) return cmd_diff(diff_a, diff_b, tol);
    } catch (const sus::SusError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInput;
    }
    return kExitInput;
}
