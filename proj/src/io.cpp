#include "sus/io.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <iterator>
#include <limits>
#include <sstream>

namespace sus {

namespace {

[[noreturn]] void bad(const std::string& where, const std::string& what) {
    throw SusError(ErrorCode::InvalidInput, (where.empty() ? std::string("/") : where) + ": " + what);
}

const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    const auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing field \"") + key + "\"");
    return *it;
}

std::string sub(const std::string& where, const std::string& key) { return where + "/" + key; }
std::string sub(const std::string& where, std::size_t k) { return where + "/" + std::to_string(k); }

double as_double(const Json& j, const std::string& where) {
    if (!j.is_number()) bad(where, "expected a number");
    const double x = j.get<double>();
    if (!std::isfinite(x)) bad(where, "number is not finite");
    return x;
}

std::size_t as_size(const Json& j, const std::string& where) {
    if (!j.is_number_integer() || j.get<long long>() < 0) bad(where, "expected a nonnegative integer");
    return j.get<std::size_t>();
}

std::size_t as_index(const Json& j, const std::string& where) {
    const std::size_t k = as_size(j, where);
    if (k == 0) bad(where, "indices are 1-based");
    return k - 1;
}

std::string as_string(const Json& j, const std::string& where) {
    if (!j.is_string()) bad(where, "expected a string");
    return j.get<std::string>();
}

const Json& as_array(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array");
    return j;
}

Json complex_to_json(Complex z) { return Json::array({z.real(), z.imag()}); }

Complex complex_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2) bad(where, "expected [re, im]");
    return {as_double(j[0], sub(where, 0)), as_double(j[1], sub(where, 1))};
}

Json complex_list_to_json(const std::vector<Complex>& v) {
    Json out = Json::array();
    for (Complex z : v) out.push_back(complex_to_json(z));
    return out;
}

std::vector<Complex> complex_list_from_json(const Json& j, const std::string& where) {
    std::vector<Complex> out;
    for (std::size_t k = 0; k < as_array(j, where).size(); ++k) {
        out.push_back(complex_from_json(j[k], sub(where, k)));
    }
    return out;
}

Json structure_to_json(const BlockStructure& s) { return Json(s.sizes()); }

BlockStructure structure_from_json(const Json& j, const std::string& where) {
    std::vector<std::size_t> sizes;
    for (std::size_t k = 0; k < as_array(j, where).size(); ++k) {
        sizes.push_back(as_size(j[k], sub(where, k)));
    }
    try {
        return BlockStructure(std::move(sizes));
    } catch (const SusError& e) {
        bad(where, e.what());
    }
}

template <class E, std::size_t N>
E enum_from(const Json& j, const std::string& where, const E (&values)[N]) {
    const std::string s = as_string(j, where);
    for (E v : values) {
        if (s == to_string(v)) return v;
    }
    bad(where, "unknown value \"" + s + "\"");
}

constexpr Mode kModes[] = {Mode::Sus, Mode::SuEq};
constexpr Side kSides[] = {Side::A, Side::B};
constexpr ViolationKind kViolations[] = {
    ViolationKind::DiagonalNotIdentityMultiple, ViolationKind::RectangularNonzero,
    ViolationKind::SquareNotUnitaryMultiple, ViolationKind::PrNotIdentityMultiple};
constexpr Quantity kQuantities[] = {Quantity::HermitianReal, Quantity::HermitianImag,
                                    Quantity::GramLeft,      Quantity::GramRight,
                                    Quantity::PrNormal,      Quantity::DiagonalScalar,
                                    Quantity::UnitaryScale,  Quantity::PrScalar};
constexpr MismatchKind kMismatches[] = {MismatchKind::ScalarMismatch,
                                        MismatchKind::ZeroPatternMismatch,
                                        MismatchKind::EigenvalueMismatch};

Json ref_to_json(const SubmatrixRef& r) {
    return Json{{"l", r.l + 1}, {"side", to_string(r.side)}, {"i", r.i + 1}, {"j", r.j + 1}};
}

SubmatrixRef ref_from_json(const Json& j, const std::string& where) {
    return {as_index(field(j, "l", where), sub(where, "l")),
            enum_from(field(j, "side", where), sub(where, "side"), kSides),
            as_index(field(j, "i", where), sub(where, "i")),
            as_index(field(j, "j", where), sub(where, "j"))};
}

const char* kind_name(VertexKind k) { return k == VertexKind::Row ? "row" : "col"; }

VertexKind kind_from_json(const Json& j, const std::string& where) {
    const std::string s = as_string(j, where);
    if (s == "row") return VertexKind::Row;
    if (s == "col") return VertexKind::Col;
    bad(where, "expected \"row\" or \"col\"");
}

Json edges_to_json(const std::vector<PathEdge>& es) {
    Json out = Json::array();
    for (const auto& e : es) {
        out.push_back(Json{{"l", e.l + 1}, {"i", e.i + 1}, {"j", e.j + 1}, {"sign", e.sign}});
    }
    return out;
}

std::vector<PathEdge> edges_from_json(const Json& j, const std::string& where) {
    std::vector<PathEdge> out;
    for (std::size_t k = 0; k < as_array(j, where).size(); ++k) {
        const std::string w = sub(where, k);
        const Json& s = field(j[k], "sign", w);
        if (!s.is_number_integer() || (s.get<int>() != 1 && s.get<int>() != -1)) {
            bad(sub(w, "sign"), "expected 1 or -1");
        }
        out.push_back({as_index(field(j[k], "l", w), sub(w, "l")),
                       as_index(field(j[k], "i", w), sub(w, "i")),
                       as_index(field(j[k], "j", w), sub(w, "j")), s.get<int>()});
    }
    return out;
}

Json path_to_json(const std::optional<PrPath>& p) {
    if (!p) return nullptr;
    return Json{{"representative",
                 {{"kind", kind_name(p->representative.kind)}, {"index", p->representative.index + 1}}},
                {"to_i", edges_to_json(p->to_i)},
                {"to_j", edges_to_json(p->to_j)}};
}

std::optional<PrPath> path_from_json(const Json& j, const std::string& where) {
    if (j.is_null()) return std::nullopt;
    PrPath p;
    const Json& rep = field(j, "representative", where);
    const std::string rw = sub(where, "representative");
    p.representative = {kind_from_json(field(rep, "kind", rw), sub(rw, "kind")),
                        as_index(field(rep, "index", rw), sub(rw, "index"))};
    p.to_i = edges_from_json(field(j, "to_i", where), sub(where, "to_i"));
    p.to_j = edges_from_json(field(j, "to_j", where), sub(where, "to_j"));
    return p;
}

Json entries_to_json(const std::vector<ScalarEntry>& es) {
    Json out = Json::array();
    for (const auto& e : es) {
        out.push_back(Json{{"l", e.l + 1}, {"i", e.i + 1}, {"j", e.j + 1}, {"value", complex_to_json(e.value)}});
    }
    return out;
}

std::vector<ScalarEntry> entries_from_json(const Json& j, const std::string& where) {
    std::vector<ScalarEntry> out;
    for (std::size_t k = 0; k < as_array(j, where).size(); ++k) {
        const std::string w = sub(where, k);
        out.push_back({as_index(field(j[k], "l", w), sub(w, "l")),
                       as_index(field(j[k], "i", w), sub(w, "i")),
                       as_index(field(j[k], "j", w), sub(w, "j")),
                       complex_from_json(field(j[k], "value", w), sub(w, "value"))});
    }
    return out;
}

Json groups_to_json(const std::vector<EigenGroup>& gs) {
    Json out = Json::array();
    for (const auto& g : gs) {
        out.push_back(Json{{"value", complex_to_json(g.value)}, {"multiplicity", g.multiplicity}});
    }
    return out;
}

std::vector<EigenGroup> groups_from_json(const Json& j, const std::string& where) {
    std::vector<EigenGroup> out;
    for (std::size_t k = 0; k < as_array(j, where).size(); ++k) {
        const std::string w = sub(where, k);
        out.push_back({complex_from_json(field(j[k], "value", w), sub(w, "value")),
                       as_size(field(j[k], "multiplicity", w), sub(w, "multiplicity"))});
    }
    return out;
}

Json tolerances_to_json(const Tolerances& t) {
    return Json{{"cmp", t.cmp}, {"group", t.group}, {"verify", t.verify}};
}

Tolerances tolerances_from_json(const Json& j, const std::string& where) {
    Tolerances t;
    t.cmp = as_double(field(j, "cmp", where), sub(where, "cmp"));
    t.group = as_double(field(j, "group", where), sub(where, "group"));
    t.verify = as_double(field(j, "verify", where), sub(where, "verify"));
    try {
        t.validate();
    } catch (const SusError& e) {
        bad(where, e.what());
    }
    return t;
}

void check_header(const Json& j, const char* format) {
    if (!j.is_object()) bad("", "expected an object");
    if (as_string(field(j, "format", ""), "/format") != format) {
        bad("/format", std::string("expected \"") + format + "\"");
    }
    if (as_size(field(j, "version", ""), "/version") != static_cast<std::size_t>(kFormatVersion)) {
        bad("/version", "unsupported version");
    }
}

Json header(const char* format) { return Json{{"format", format}, {"version", kFormatVersion}}; }

}  // namespace

std::string read_text(const std::string& path) {
    if (path == "-") {
        return {std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>()};
    }
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SusError(ErrorCode::InvalidInput, "cannot open " + path);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

void write_text(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SusError(ErrorCode::InvalidInput, "cannot write " + path);
    out << text;
}

Json parse_json(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const Json::parse_error& e) {
        throw SusError(ErrorCode::InvalidInput, e.what());
    }
}

std::string dump(const Json& j) { return j.dump(1) + "\n"; }

Json matrix_to_json(const CMatrix& m) {
    Json out = Json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        Json row = Json::array();
        for (Eigen::Index k = 0; k < m.cols(); ++k) row.push_back(complex_to_json(m(i, k)));
        out.push_back(std::move(row));
    }
    return out;
}

CMatrix matrix_from_json(const Json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) bad(where, "expected a nonempty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty()) bad(sub(where, 0), "expected a nonempty row");
    const std::size_t cols = j[0].size();
    CMatrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t i = 0; i < rows; ++i) {
        const std::string w = sub(where, i);
        if (!j[i].is_array() || j[i].size() != cols) {
            bad(w, "expected a row of " + std::to_string(cols) + " entries");
        }
        for (std::size_t k = 0; k < cols; ++k) {
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) =
                complex_from_json(j[i][k], sub(w, k));
        }
    }
    return m;
}

Json instance_to_json(const InstanceFile& inst) {
    Json out = header("sus-instance");
    const auto& c = inst.collection;
    out["mode"] = to_string(inst.mode);
    out["m"] = c.rows();
    out["n"] = c.cols();
    out["p"] = c.size();
    Json pairs = Json::array();
    for (const auto& pr : c.pairs()) {
        pairs.push_back(Json{{"A", matrix_to_json(pr.a)}, {"B", matrix_to_json(pr.b)}});
    }
    out["pairs"] = std::move(pairs);
    return out;
}

InstanceFile instance_from_json(const Json& j) {
    check_header(j, "sus-instance");
    InstanceFile inst;
    inst.mode = enum_from(field(j, "mode", ""), "/mode", kModes);
    const std::size_t m = as_size(field(j, "m", ""), "/m");
    const std::size_t n = as_size(field(j, "n", ""), "/n");
    const std::size_t p = as_size(field(j, "p", ""), "/p");
    if (m == 0 || n == 0 || p == 0) bad("", "m, n and p must be positive");
    if (inst.mode == Mode::Sus && m != n) bad("/n", "similarity needs m = n");
    const Json& pairs = as_array(field(j, "pairs", ""), "/pairs");
    if (pairs.size() != p) bad("/pairs", "expected " + std::to_string(p) + " pairs");
    std::vector<MatrixPair> out;
    for (std::size_t l = 0; l < p; ++l) {
        const std::string w = sub("/pairs", l);
        MatrixPair pr{matrix_from_json(field(pairs[l], "A", w), sub(w, "A")),
                      matrix_from_json(field(pairs[l], "B", w), sub(w, "B"))};
        for (const auto& [x, name] : {std::pair{&pr.a, "A"}, std::pair{&pr.b, "B"}}) {
            if (static_cast<std::size_t>(x->rows()) != m || static_cast<std::size_t>(x->cols()) != n) {
                bad(sub(w, name), "expected a " + std::to_string(m) + "x" + std::to_string(n) + " matrix");
            }
        }
        out.push_back(std::move(pr));
    }
    inst.collection = PairCollection(m, n, std::move(out));
    return inst;
}

Json witness_to_json(const WitnessFile& w) {
    Json out = header("sus-witness");
    out["U"] = matrix_to_json(w.u);
    out["V"] = matrix_to_json(w.v);
    return out;
}

WitnessFile witness_from_json(const Json& j) {
    check_header(j, "sus-witness");
    return {matrix_from_json(field(j, "U", ""), "/U"), matrix_from_json(field(j, "V", ""), "/V")};
}

Json certificate_to_json(const MismatchCertificate& c) {
    return Json{{"kind", to_string(c.kind)},
                {"quantity", to_string(c.quantity)},
                {"at", ref_to_json(c.at)},
                {"a_value", complex_list_to_json(c.a_value)},
                {"b_value", complex_list_to_json(c.b_value)},
                {"pr_path", path_to_json(c.pr_path)},
                {"frame",
                 {{"mode", to_string(c.mode)},
                  {"rows", structure_to_json(c.rows)},
                  {"cols", structure_to_json(c.cols)},
                  {"row_a", matrix_to_json(c.row_a)},
                  {"row_b", matrix_to_json(c.row_b)},
                  {"col_a", matrix_to_json(c.col_a)},
                  {"col_b", matrix_to_json(c.col_b)}}}};
}

MismatchCertificate certificate_from_json(const Json& j, const std::string& where) {
    MismatchCertificate c;
    c.kind = enum_from(field(j, "kind", where), sub(where, "kind"), kMismatches);
    c.quantity = enum_from(field(j, "quantity", where), sub(where, "quantity"), kQuantities);
    c.at = ref_from_json(field(j, "at", where), sub(where, "at"));
    c.a_value = complex_list_from_json(field(j, "a_value", where), sub(where, "a_value"));
    c.b_value = complex_list_from_json(field(j, "b_value", where), sub(where, "b_value"));
    c.pr_path = path_from_json(field(j, "pr_path", where), sub(where, "pr_path"));
    const Json& f = field(j, "frame", where);
    const std::string fw = sub(where, "frame");
    c.mode = enum_from(field(f, "mode", fw), sub(fw, "mode"), kModes);
    c.rows = structure_from_json(field(f, "rows", fw), sub(fw, "rows"));
    c.cols = structure_from_json(field(f, "cols", fw), sub(fw, "cols"));
    c.row_a = matrix_from_json(field(f, "row_a", fw), sub(fw, "row_a"));
    c.row_b = matrix_from_json(field(f, "row_b", fw), sub(fw, "row_b"));
    c.col_a = matrix_from_json(field(f, "col_a", fw), sub(fw, "col_a"));
    c.col_b = matrix_from_json(field(f, "col_b", fw), sub(fw, "col_b"));
    return c;
}

Json trace_to_json(const IterationTrace& t) {
    Json out = Json::array();
    for (const auto& s : t) {
        out.push_back(Json{{"violation", {{"kind", to_string(s.violation.kind)}, {"at", ref_to_json(s.violation.at)}}},
                           {"quantity", to_string(s.quantity)},
                           {"touched", {{"kind", kind_name(s.touched_side)}, {"index", s.touched + 1}}},
                           {"rows_before", structure_to_json(s.rows_before)},
                           {"cols_before", structure_to_json(s.cols_before)},
                           {"rows_after", structure_to_json(s.rows_after)},
                           {"cols_after", structure_to_json(s.cols_after)},
                           {"eigenvalues_a", complex_list_to_json(s.eigenvalues_a)},
                           {"eigenvalues_b", complex_list_to_json(s.eigenvalues_b)},
                           {"groups", groups_to_json(s.groups)},
                           {"pr_path", path_to_json(s.pr_path)},
                           {"Y", matrix_to_json(s.y)},
                           {"Z", matrix_to_json(s.z)}});
    }
    return out;
}

IterationTrace trace_from_json(const Json& j, const std::string& where) {
    IterationTrace out;
    for (std::size_t k = 0; k < as_array(j, where).size(); ++k) {
        const Json& e = j[k];
        const std::string w = sub(where, k);
        RefinementStep s;
        const Json& v = field(e, "violation", w);
        s.violation.kind = enum_from(field(v, "kind", sub(w, "violation")), sub(w, "violation/kind"), kViolations);
        s.violation.at = ref_from_json(field(v, "at", sub(w, "violation")), sub(w, "violation/at"));
        s.quantity = enum_from(field(e, "quantity", w), sub(w, "quantity"), kQuantities);
        const Json& t = field(e, "touched", w);
        s.touched_side = kind_from_json(field(t, "kind", sub(w, "touched")), sub(w, "touched/kind"));
        s.touched = as_index(field(t, "index", sub(w, "touched")), sub(w, "touched/index"));
        s.rows_before = structure_from_json(field(e, "rows_before", w), sub(w, "rows_before"));
        s.cols_before = structure_from_json(field(e, "cols_before", w), sub(w, "cols_before"));
        s.rows_after = structure_from_json(field(e, "rows_after", w), sub(w, "rows_after"));
        s.cols_after = structure_from_json(field(e, "cols_after", w), sub(w, "cols_after"));
        s.eigenvalues_a = complex_list_from_json(field(e, "eigenvalues_a", w), sub(w, "eigenvalues_a"));
        s.eigenvalues_b = complex_list_from_json(field(e, "eigenvalues_b", w), sub(w, "eigenvalues_b"));
        s.groups = groups_from_json(field(e, "groups", w), sub(w, "groups"));
        s.pr_path = path_from_json(field(e, "pr_path", w), sub(w, "pr_path"));
        s.y = matrix_from_json(field(e, "Y", w), sub(w, "Y"));
        s.z = matrix_from_json(field(e, "Z", w), sub(w, "Z"));
        out.push_back(std::move(s));
    }
    return out;
}

ResultFile make_result(const SolveOutcome& outcome, Mode mode, const Tolerances& tol,
                       double wall_time) {
    ResultFile r;
    r.outcome = outcome_name(outcome);
    r.mode = mode;
    r.tolerances = tol;
    r.wall_time = wall_time;
    r.trace = outcome_trace(outcome);
    if (const auto* s = std::get_if<Solved>(&outcome)) {
        r.u = s->u;
        r.v = s->v;
        r.residual = s->residual;
    } else if (const auto* ns = std::get_if<NotSimilar>(&outcome)) {
        r.certificate = ns->certificate;
    } else {
        const auto& vf = std::get<VerificationFailed>(outcome);
        if (vf.u.size() > 0) {
            r.u = vf.u;
            r.v = vf.v;
        }
        r.residual = vf.residual;
        r.reason = vf.reason;
    }
    return r;
}

Json result_to_json(const ResultFile& r) {
    Json out = header("sus-result");
    out["outcome"] = r.outcome;
    out["mode"] = to_string(r.mode);
    out["U"] = r.u ? matrix_to_json(*r.u) : Json(nullptr);
    out["V"] = r.v ? matrix_to_json(*r.v) : Json(nullptr);
    out["residual"] = std::isfinite(r.residual) ? Json(r.residual) : Json(nullptr);
    out["certificate"] = r.certificate ? certificate_to_json(*r.certificate) : Json(nullptr);
    out["trace"] = trace_to_json(r.trace);
    out["tolerances"] = tolerances_to_json(r.tolerances);
    out["solver_version"] = r.solver_version;
    out["wall_time"] = r.wall_time;
    if (!r.reason.empty()) out["reason"] = r.reason;
    return out;
}

ResultFile result_from_json(const Json& j) {
    check_header(j, "sus-result");
    ResultFile r;
    r.outcome = as_string(field(j, "outcome", ""), "/outcome");
    if (r.outcome != "Solved" && r.outcome != "NotSimilar" && r.outcome != "VerificationFailed") {
        bad("/outcome", "unknown outcome \"" + r.outcome + "\"");
    }
    r.mode = enum_from(field(j, "mode", ""), "/mode", kModes);
    if (const Json& u = field(j, "U", ""); !u.is_null()) r.u = matrix_from_json(u, "/U");
    if (const Json& v = field(j, "V", ""); !v.is_null()) r.v = matrix_from_json(v, "/V");
    const Json& res = field(j, "residual", "");
    r.residual = res.is_null() ? std::numeric_limits<double>::infinity() : as_double(res, "/residual");
    if (const Json& c = field(j, "certificate", ""); !c.is_null()) {
        r.certificate = certificate_from_json(c, "/certificate");
    }
    r.trace = trace_from_json(field(j, "trace", ""), "/trace");
    r.tolerances = tolerances_from_json(field(j, "tolerances", ""), "/tolerances");
    r.solver_version = as_string(field(j, "solver_version", ""), "/solver_version");
    r.wall_time = as_double(field(j, "wall_time", ""), "/wall_time");
    if (j.contains("reason")) r.reason = as_string(j["reason"], "/reason");
    if (r.outcome == "Solved" && (!r.u || !r.v)) bad("", "Solved result without U and V");
    if (r.outcome == "NotSimilar" && !r.certificate) bad("/certificate", "NotSimilar result without a certificate");
    return r;
}

Json features_to_json(const CanonicalFeatures& f) {
    Json out = header("sus-features");
    Json steps = Json::array();
    for (const auto& s : f.steps) {
        Json e{{"structure", structure_to_json(s.structure)}, {"solution_form", s.solution_form}};
        if (s.violation) {
            e["violation"] = Json{{"kind", to_string(s.violation->kind)}, {"at", ref_to_json(s.violation->at)}};
            e["quantity"] = to_string(*s.quantity);
            e["eigenvalues"] = groups_to_json(s.eigenvalues);
        }
        e["presolution"] = s.presolution;
        if (s.presolution) {
            e["diag_scalars"] = entries_to_json(s.diag_scalars);
            e["unitary_scales"] = entries_to_json(s.unitary_scales);
            Json part = Json::array();
            for (const auto& cls : s.partition) {
                Json c = Json::array();
                for (std::size_t v : cls) c.push_back(v + 1);
                part.push_back(std::move(c));
            }
            e["partition"] = std::move(part);
        }
        if (s.solution_form) e["beta"] = entries_to_json(s.beta);
        steps.push_back(std::move(e));
    }
    out["steps"] = std::move(steps);
    return out;
}

CanonicalFeatures features_from_json(const Json& j) {
    check_header(j, "sus-features");
    CanonicalFeatures f;
    const Json& steps = as_array(field(j, "steps", ""), "/steps");
    for (std::size_t k = 0; k < steps.size(); ++k) {
        const Json& e = steps[k];
        const std::string w = sub("/steps", k);
        FeatureStep s;
        s.structure = structure_from_json(field(e, "structure", w), sub(w, "structure"));
        const Json& sf = field(e, "solution_form", w);
        if (!sf.is_boolean()) bad(sub(w, "solution_form"), "expected a boolean");
        s.solution_form = sf.get<bool>();
        if (e.contains("violation")) {
            const Json& v = e["violation"];
            s.violation = Violation{
                enum_from(field(v, "kind", sub(w, "violation")), sub(w, "violation/kind"), kViolations),
                ref_from_json(field(v, "at", sub(w, "violation")), sub(w, "violation/at"))};
            s.quantity = enum_from(field(e, "quantity", w), sub(w, "quantity"), kQuantities);
            s.eigenvalues = groups_from_json(field(e, "eigenvalues", w), sub(w, "eigenvalues"));
        }
        const Json& ps = field(e, "presolution", w);
        if (!ps.is_boolean()) bad(sub(w, "presolution"), "expected a boolean");
        s.presolution = ps.get<bool>();
        if (s.presolution) {
            s.diag_scalars = entries_from_json(field(e, "diag_scalars", w), sub(w, "diag_scalars"));
            s.unitary_scales = entries_from_json(field(e, "unitary_scales", w), sub(w, "unitary_scales"));
            const Json& part = as_array(field(e, "partition", w), sub(w, "partition"));
            for (std::size_t c = 0; c < part.size(); ++c) {
                std::vector<std::size_t> cls;
                for (std::size_t t = 0; t < as_array(part[c], sub(sub(w, "partition"), c)).size(); ++t) {
                    cls.push_back(as_index(part[c][t], sub(sub(sub(w, "partition"), c), t)));
                }
                s.partition.push_back(std::move(cls));
            }
        }
        if (s.solution_form) s.beta = entries_from_json(field(e, "beta", w), sub(w, "beta"));
        f.steps.push_back(std::move(s));
    }
    return f;
}

}  // namespace sus
