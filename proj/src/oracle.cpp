#include "sus/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>

namespace sus {

std::string to_string(const Word& w) {
    std::string out;
    for (std::size_t k = 0; k < w.size(); ++k) {
        if (k) out += ' ';
        out += 'A' + std::to_string(w[k].l + 1);
        if (w[k].adjoint) out += '*';
    }
    return out;
}

namespace {

const CMatrix& letter_matrix(const PairCollection& coll, std::size_t code, Side side,
                             const std::vector<CMatrix>& adj_a, const std::vector<CMatrix>& adj_b) {
    const std::size_t l = code / 2;
    if (code % 2 == 0) return coll.matrix(l, side);
    return side == Side::A ? adj_a[l] : adj_b[l];
}

// Smallest in its rotation class, so each cyclic class is visited once.
bool rotation_minimal(const std::vector<std::size_t>& w) {
    const std::size_t n = w.size();
    for (std::size_t s = 1; s < n; ++s) {
        for (std::size_t k = 0; k < n; ++k) {
            const std::size_t a = w[k];
            const std::size_t b = w[(k + s) % n];
            if (a < b) break;
            if (a > b) return false;
        }
    }
    return true;
}

struct Search {
    const PairCollection& coll;
    const Tolerances& tol;
    std::size_t len;
    std::vector<CMatrix> adj_a;
    std::vector<CMatrix> adj_b;
    std::vector<double> norms;
    std::vector<std::size_t> word;
    std::optional<WordWitness> found;

    void run(const CMatrix& pa, const CMatrix& pb, double bound) {
        if (found) return;
        if (word.size() == len) {
            if (!rotation_minimal(word)) return;
            const Complex ta = pa.trace();
            const Complex tb = pb.trace();
            if (std::abs(ta - tb) > tol.cmp * (std::abs(ta) + bound)) {
                WordWitness w;
                for (std::size_t c : word) w.word.push_back({c / 2, c % 2 == 1});
                w.trace_a = ta;
                w.trace_b = tb;
                found = std::move(w);
            }
            return;
        }
        for (std::size_t c = 0; c < 2 * coll.size(); ++c) {
            // rotation classes all contain a word starting with their smallest letter
            if (!word.empty() && c < word.front()) continue;
            word.push_back(c);
            const CMatrix& la = letter_matrix(coll, c, Side::A, adj_a, adj_b);
            const CMatrix& lb = letter_matrix(coll, c, Side::B, adj_a, adj_b);
            if (word.size() == 1) {
                run(la, lb, norms[c / 2]);
            } else {
                run(pa * la, pb * lb, bound * norms[c / 2]);
            }
            word.pop_back();
            if (found) return;
        }
    }
};

}  // namespace

Complex word_trace(const PairCollection& coll, const Word& w, Side side) {
    const auto n = static_cast<Eigen::Index>(coll.rows());
    CMatrix p = CMatrix::Identity(n, n);
    for (const Letter& x : w) {
        const CMatrix& m = coll.matrix(x.l, side);
        p = x.adjoint ? CMatrix(p * m.adjoint()) : CMatrix(p * m);
    }
    return p.trace();
}

std::optional<WordWitness> trace_word_oracle(const PairCollection& coll, std::size_t max_len,
                                             const Tolerances& tol) {
    if (!coll.square()) throw SusError(ErrorCode::DimensionMismatch, "trace words need square matrices");
    if (max_len > 6) throw SusError(ErrorCode::SpecInvalid, "word length above 6");
    Search s{coll, tol, 0, {}, {}, {}, {}, std::nullopt};
    for (const auto& pr : coll.pairs()) {
        s.adj_a.push_back(pr.a.adjoint());
        s.adj_b.push_back(pr.b.adjoint());
        s.norms.push_back(std::max(pr.a.norm(), pr.b.norm()));
    }
    const CMatrix none;
    for (std::size_t len = 1; len <= max_len && !s.found; ++len) {
        s.len = len;
        s.run(none, none, 1.0);
    }
    return s.found;
}

double matching_distance(const std::vector<Complex>& a, const std::vector<Complex>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    const std::size_t n = a.size();
    if (n == 0) return 0.0;
    // Hungarian method on squared distances, 1-based potentials.
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), minv(n + 1);
    std::vector<std::size_t> match(n + 1, 0), way(n + 1, 0);
    std::vector<char> used(n + 1);
    for (std::size_t i = 1; i <= n; ++i) {
        match[0] = i;
        std::size_t j0 = 0;
        std::fill(minv.begin(), minv.end(), inf);
        std::fill(used.begin(), used.end(), 0);
        do {
            used[j0] = 1;
            const std::size_t i0 = match[j0];
            double delta = inf;
            std::size_t j1 = 0;
            for (std::size_t j = 1; j <= n; ++j) {
                if (used[j]) continue;
                const double cur = std::norm(a[i0 - 1] - b[j - 1]) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (std::size_t j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[match[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (match[j0] != 0);
        do {
            const std::size_t j1 = way[j0];
            match[j0] = match[j1];
            j0 = j1;
        } while (j0);
    }
    double total = 0.0;
    for (std::size_t j = 1; j <= n; ++j) total += std::norm(a[match[j] - 1] - b[j - 1]);
    return std::sqrt(total);
}

namespace {

std::vector<Complex> eigenvalues(const CMatrix& m) {
    Eigen::ComplexEigenSolver<CMatrix> solver(m, false);
    if (solver.info() != Eigen::Success) {
        throw SusError(ErrorCode::NumericalFailure, "eigenvalue iteration did not converge");
    }
    const auto& ev = solver.eigenvalues();
    return {ev.data(), ev.data() + ev.size()};
}

std::vector<Complex> singular_values(const CMatrix& m) {
    Eigen::JacobiSVD<CMatrix> svd(m);
    const auto& sv = svd.singularValues();
    std::vector<Complex> out;
    for (Eigen::Index k = 0; k < sv.size(); ++k) out.emplace_back(sv(k), 0.0);
    return out;
}

bool is_normal(const CMatrix& m, const Tolerances& tol) {
    return (m * m.adjoint() - m.adjoint() * m).norm() <= tol.cmp * (1.0 + m.squaredNorm());
}

}  // namespace

bool small_case_decider(const PairCollection& coll, Mode mode, const Tolerances& tol) {
    if (coll.size() == 1) {
        const CMatrix& a = coll.pair(0).a;
        const CMatrix& b = coll.pair(0).b;
        const double thr = tol.group * (1.0 + std::max(a.norm(), b.norm()));
        if (mode == Mode::SuEq) {
            return matching_distance(singular_values(a), singular_values(b)) <= thr;
        }
        if (is_normal(a, tol)) {
            return is_normal(b, tol) && matching_distance(eigenvalues(a), eigenvalues(b)) <= thr;
        }
    }
    if (mode == Mode::Sus && coll.rows() == 2) {
        // A 2x2 tuple is fixed up to unitary similarity by its traces and the
        // SO(3) invariants of the traceless parts: dot products (length 2) and
        // triple products (length 3).
        return !trace_word_oracle(coll, 3, tol);
    }
    throw SusError(ErrorCode::OutOfScope, "no exact decider for this instance shape");
}

}  // namespace sus
