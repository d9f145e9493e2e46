#include "sus/instgen.hpp"

#include "sus/oracle.hpp"

#include <cmath>

namespace sus {

const char* to_string(InstanceKind kind) {
    switch (kind) {
        case InstanceKind::PlantedSimilar: return "planted";
        case InstanceKind::Structured: return "structured";
        case InstanceKind::PlantedEquivalent: return "equivalent";
        case InstanceKind::PerturbedNonSimilar: return "perturbed";
        case InstanceKind::DeepSplit: return "deepsplit";
        case InstanceKind::Pairwise: return "pairwise";
    }
    return "unknown";
}

std::optional<InstanceKind> parse_instance_kind(const std::string& name) {
    for (InstanceKind k : {InstanceKind::PlantedSimilar, InstanceKind::Structured,
                           InstanceKind::PlantedEquivalent, InstanceKind::PerturbedNonSimilar,
                           InstanceKind::DeepSplit, InstanceKind::Pairwise}) {
        if (name == to_string(k)) return k;
    }
    return std::nullopt;
}

CMatrix random_gaussian(std::mt19937_64& rng, std::size_t rows, std::size_t cols) {
    std::normal_distribution<double> normal(0.0, std::sqrt(0.5));
    CMatrix out(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    // fill row-major so the stream order does not depend on Eigen's storage order
    for (Eigen::Index i = 0; i < out.rows(); ++i) {
        for (Eigen::Index j = 0; j < out.cols(); ++j) {
            const double re = normal(rng);
            const double im = normal(rng);
            out(i, j) = Complex(re, im);
        }
    }
    return out;
}

CMatrix random_unitary(std::mt19937_64& rng, std::size_t n) {
    const CMatrix g = random_gaussian(rng, n, n);
    Eigen::HouseholderQR<CMatrix> qr(g);
    CMatrix q = qr.householderQ();
    const CMatrix r = qr.matrixQR();
    for (Eigen::Index k = 0; k < q.cols(); ++k) {
        const Complex d = r(k, k);
        const double a = std::abs(d);
        if (a > 0.0) q.col(k) *= d / a;
    }
    return q;
}

CMatrix random_unitary(std::uint64_t seed, std::size_t n) {
    std::mt19937_64 rng(seed);
    return random_unitary(rng, n);
}

namespace {

double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

std::vector<MatrixPair> conjugate_all(const std::vector<CMatrix>& as, const CMatrix& u,
                                      const CMatrix& v) {
    std::vector<MatrixPair> out;
    out.reserve(as.size());
    for (const auto& a : as) out.push_back({a, u * a * v.adjoint()});
    return out;
}

Instance planted(std::vector<CMatrix> as, std::mt19937_64& rng, std::size_t n) {
    const CMatrix u = random_unitary(rng, n);
    Instance inst;
    inst.mode = Mode::Sus;
    inst.collection = PairCollection(n, n, conjugate_all(as, u, u));
    inst.u = u;
    inst.v = u;
    return inst;
}

std::vector<std::size_t> random_sizes(std::mt19937_64& rng, std::size_t n) {
    std::vector<std::size_t> sizes;
    std::size_t left = n;
    while (left > 0) {
        const std::size_t cap = std::min<std::size_t>(3, left);
        const std::size_t b = std::uniform_int_distribution<std::size_t>(1, cap)(rng);
        sizes.push_back(b);
        left -= b;
    }
    return sizes;
}

// Matrix in block Pre-Solution form: scalar diagonal blocks, square
// off-diagonal blocks scaled unitaries or zero, rectangular blocks zero.
CMatrix presolution_matrix(std::mt19937_64& rng, const BlockStructure& st, double density) {
    const auto n = static_cast<Eigen::Index>(st.dimension());
    CMatrix m = CMatrix::Zero(n, n);
    for (std::size_t i = 0; i < st.count(); ++i) {
        for (std::size_t j = 0; j < st.count(); ++j) {
            const auto oi = static_cast<Eigen::Index>(st.offset(i));
            const auto oj = static_cast<Eigen::Index>(st.offset(j));
            const auto si = static_cast<Eigen::Index>(st.size(i));
            if (i == j) {
                const CMatrix a = random_gaussian(rng, 1, 1);
                m.block(oi, oi, si, si) = a(0, 0) * CMatrix::Identity(si, si);
            } else if (st.size(i) == st.size(j) && uniform(rng, 0.0, 1.0) < density) {
                m.block(oi, oj, si, si) = uniform(rng, 0.5, 1.5) * random_unitary(rng, st.size(i));
            }
        }
    }
    return m;
}

Instance structured(std::mt19937_64& rng, std::size_t n, std::size_t p) {
    const BlockStructure st(random_sizes(rng, n));
    const auto nn = static_cast<Eigen::Index>(n);
    const CMatrix w = random_unitary(rng, n);

    CMatrix h = CMatrix::Zero(nn, nn);
    CMatrix k = CMatrix::Zero(nn, nn);
    for (std::size_t i = 0; i < st.count(); ++i) {
        const auto oi = static_cast<Eigen::Index>(st.offset(i));
        const auto si = static_cast<Eigen::Index>(st.size(i));
        h.block(oi, oi, si, si) = static_cast<double>(st.count() - i) * CMatrix::Identity(si, si);
        k.block(oi, oi, si, si) = Complex(0.0, uniform(rng, -1.0, 1.0)) * CMatrix::Identity(si, si);
        for (std::size_t j = i + 1; j < st.count(); ++j) {
            if (st.size(i) != st.size(j) || uniform(rng, 0.0, 1.0) >= 0.6) continue;
            const auto oj = static_cast<Eigen::Index>(st.offset(j));
            const CMatrix q = uniform(rng, 0.5, 1.5) * random_unitary(rng, st.size(i));
            k.block(oi, oj, si, si) = q;
            k.block(oj, oi, si, si) = -q.adjoint();
        }
    }
    std::vector<CMatrix> as;
    as.push_back(w * (h + k) * w.adjoint());
    for (std::size_t l = 1; l < p; ++l) {
        as.push_back(w * presolution_matrix(rng, st, 0.5) * w.adjoint());
    }
    return planted(std::move(as), rng, n);
}

Instance deep_split(std::mt19937_64& rng, std::size_t n, std::size_t p, std::size_t k,
                    double gap) {
    const double delta = gap > 0.0 ? gap : 1.0;
    const auto nn = static_cast<Eigen::Index>(n);
    CMatrix h = CMatrix::Identity(nn, nn);
    for (std::size_t t = 0; t < n - k; ++t) {
        h(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t)) +=
            static_cast<double>(n - k - t) * delta;
    }
    const CMatrix g = random_gaussian(rng, n, n);
    const CMatrix skew = (g - g.adjoint()) * (0.5 * (gap > 0.0 ? std::sqrt(delta) : 1.0));
    const CMatrix w = random_unitary(rng, n);
    std::vector<CMatrix> as;
    as.push_back(w * (h + skew) * w.adjoint());
    for (std::size_t l = 1; l < p; ++l) as.push_back(random_gaussian(rng, n, n));
    return planted(std::move(as), rng, n);
}

std::vector<CMatrix> random_list(std::mt19937_64& rng, std::size_t p, std::size_t m,
                                 std::size_t n) {
    std::vector<CMatrix> as;
    for (std::size_t l = 0; l < p; ++l) as.push_back(random_gaussian(rng, m, n));
    return as;
}

}  // namespace

Instance generate(const InstanceSpec& spec) {
    const std::size_t n = spec.n;
    const std::size_t p = spec.p;
    if (n == 0 || p == 0) throw SusError(ErrorCode::SpecInvalid, "n and p must be positive");
    std::mt19937_64 rng(spec.seed);

    switch (spec.kind) {
        case InstanceKind::PlantedSimilar:
            return planted(random_list(rng, p, n, n), rng, n);
        case InstanceKind::Structured:
            return structured(rng, n, p);
        case InstanceKind::PlantedEquivalent: {
            const std::size_t m = spec.m == 0 ? n : spec.m;
            auto as = random_list(rng, p, m, n);
            const CMatrix u = random_unitary(rng, m);
            const CMatrix v = random_unitary(rng, n);
            Instance inst;
            inst.mode = Mode::SuEq;
            inst.collection = PairCollection(m, n, conjugate_all(as, u, v));
            inst.u = u;
            inst.v = v;
            return inst;
        }
        case InstanceKind::PerturbedNonSimilar: {
            if (!(spec.epsilon > 0.0)) {
                throw SusError(ErrorCode::SpecInvalid, "epsilon must be positive");
            }
            for (int attempt = 0; attempt < 32; ++attempt) {
                Instance inst = planted(random_list(rng, p, n, n), rng, n);
                CMatrix e = random_gaussian(rng, n, n);
                e /= e.norm();
                std::vector<MatrixPair> pairs = inst.collection.pairs();
                pairs[0].b += spec.epsilon * e;
                inst.collection = PairCollection(n, n, std::move(pairs));
                inst.u.reset();
                inst.v.reset();
                if (trace_word_oracle(inst.collection, 4)) return inst;
            }
            throw SusError(ErrorCode::SpecInvalid, "no certifiable perturbation found");
        }
        case InstanceKind::DeepSplit: {
            const std::size_t k = spec.split_depth == 0 ? (n >= 3 ? n - 2 : n) : spec.split_depth;
            if (k < 2 || k > n) {
                throw SusError(ErrorCode::SpecInvalid, "split depth must be in [2, n]");
            }
            if (spec.gap < 0.0) throw SusError(ErrorCode::SpecInvalid, "gap must be nonnegative");
            return deep_split(rng, n, p, k, spec.gap);
        }
        case InstanceKind::Pairwise: {
            if (p != 2 || n < 2) throw SusError(ErrorCode::SpecInvalid, "pairwise needs p = 2, n >= 2");
            auto as = random_list(rng, 2, n, n);
            const CMatrix q = random_unitary(rng, n);
            const CMatrix r = random_unitary(rng, n);
            Instance inst;
            inst.mode = Mode::Sus;
            inst.collection =
                PairCollection(n, n, {{as[0], q * as[0] * q.adjoint()}, {as[1], r * as[1] * r.adjoint()}});
            return inst;
        }
    }
    throw SusError(ErrorCode::SpecInvalid, "unknown instance kind");
}

}  // namespace sus
