#include "sus/checker.hpp"

#include "sus/oracle.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace sus {

namespace {

struct Failure {
    std::string what;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure{what};
}

CMatrix cut(const CMatrix& x, const BlockStructure& rows, const BlockStructure& cols, std::size_t i,
            std::size_t j) {
    require(i < rows.count() && j < cols.count(), "block index out of range");
    return x.block(static_cast<Eigen::Index>(rows.offset(i)), static_cast<Eigen::Index>(cols.offset(j)),
                   static_cast<Eigen::Index>(rows.size(i)), static_cast<Eigen::Index>(cols.size(j)));
}

bool unitary(const CMatrix& t, std::size_t dim, const Tolerances& tol) {
    const auto d = static_cast<Eigen::Index>(dim);
    if (t.rows() != d || t.cols() != d) return false;
    return (t * t.adjoint() - CMatrix::Identity(d, d)).norm() <= tol.verify * static_cast<double>(dim);
}

std::vector<Complex> spectrum(const CMatrix& f, bool hermitian) {
    std::vector<Complex> out;
    if (hermitian) {
        Eigen::SelfAdjointEigenSolver<CMatrix> es((f + f.adjoint()) * 0.5, Eigen::EigenvaluesOnly);
        for (Eigen::Index k = es.eigenvalues().size() - 1; k >= 0; --k) {
            out.emplace_back(es.eigenvalues()(k), 0.0);
        }
    } else {
        Eigen::ComplexEigenSolver<CMatrix> es(f, false);
        const auto& ev = es.eigenvalues();
        out.assign(ev.data(), ev.data() + ev.size());
    }
    return out;
}

CMatrix diag(const std::vector<Complex>& v) {
    CMatrix d = CMatrix::Zero(static_cast<Eigen::Index>(v.size()), static_cast<Eigen::Index>(v.size()));
    for (std::size_t k = 0; k < v.size(); ++k) {
        d(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = v[k];
    }
    return d;
}

// The collection seen through the transforms, under one pair of structures.
struct Frame {
    Mode mode;
    std::vector<CMatrix> a;
    std::vector<CMatrix> b;
    BlockStructure rows;
    BlockStructure cols;

    double scale(std::size_t l) const { return std::max(a.at(l).norm(), b.at(l).norm()); }
    const CMatrix& side(std::size_t l, Side s) const { return s == Side::A ? a.at(l) : b.at(l); }
    CMatrix block(std::size_t l, Side s, std::size_t i, std::size_t j) const {
        return cut(side(l, s), rows, cols, i, j);
    }
};

struct Measured {
    CMatrix fa;
    CMatrix fb;
    double context_max = 1.0;  // grouping context as the solver used it
    double context_min = 1.0;  // conservative context for the disagreement test
};

struct PathValue {
    CMatrix a;
    CMatrix b;
};

PathValue walk(const Frame& fr, VertexRef rep, const std::vector<PathEdge>& path, VertexRef target,
               const Tolerances& tol) {
    const auto size_of = [&](VertexRef v) {
        return v.kind == VertexKind::Row ? fr.rows.size(v.index) : fr.cols.size(v.index);
    };
    const auto s = static_cast<Eigen::Index>(size_of(rep));
    PathValue p{CMatrix::Identity(s, s), CMatrix::Identity(s, s)};
    VertexRef at = rep;
    const VertexKind col_kind = fr.mode == Mode::Sus ? VertexKind::Row : VertexKind::Col;
    for (const PathEdge& e : path) {
        const VertexRef row_end{VertexKind::Row, e.i};
        const VertexRef col_end{col_kind, e.j};
        require(e.sign == 1 || e.sign == -1, "path edge sign must be +1 or -1");
        require(at == (e.sign > 0 ? row_end : col_end), "path edges do not chain");
        const CMatrix wa = fr.block(e.l, Side::A, e.i, e.j);
        const CMatrix wb = fr.block(e.l, Side::B, e.i, e.j);
        require(wa.rows() == wa.cols(), "path edge block is not square");
        const auto ra = is_multiple_of_unitary(wa, tol, fr.scale(e.l));
        const auto rb = is_multiple_of_unitary(wb, tol, fr.scale(e.l));
        require(ra && rb && *ra > 0.0 && *rb > 0.0,
                "path edge block is not a nonzero multiple of a unitary");
        if (e.sign > 0) {
            p.a = p.a * wa;
            p.b = p.b * wb;
            at = col_end;
        } else {
            p.a = p.a * wa.adjoint() / *ra;
            p.b = p.b * wb.adjoint() / *rb;
            at = row_end;
        }
    }
    require(at == target, "path does not end at the cell's block");
    return p;
}

Measured measure_pr(const Frame& fr, const SubmatrixRef& at, const PrPath& path,
                    const Tolerances& tol) {
    const VertexKind col_kind = fr.mode == Mode::Sus ? VertexKind::Row : VertexKind::Col;
    const PathValue pi = walk(fr, path.representative, path.to_i, {VertexKind::Row, at.i}, tol);
    const PathValue pj = walk(fr, path.representative, path.to_j, {col_kind, at.j}, tol);
    const double nc = static_cast<double>(pi.a.rows());
    const double rho_i = pi.a.norm() / std::sqrt(nc);
    const double rho_j = pj.a.norm() / std::sqrt(nc);
    const double rho_jb = pj.b.norm() / std::sqrt(nc);
    Measured m;
    m.fa = pi.a * fr.block(at.l, Side::A, at.i, at.j) * pj.a.adjoint() / (rho_j * rho_j);
    m.fb = pi.b * fr.block(at.l, Side::B, at.i, at.j) * pj.b.adjoint() / (rho_jb * rho_jb);
    m.context_max = m.context_min = fr.scale(at.l) * rho_i / rho_j;
    return m;
}

Measured measure(const Frame& fr, Quantity q, const SubmatrixRef& at,
                 const std::optional<PrPath>& path, const Tolerances& tol) {
    if (q == Quantity::PrNormal || q == Quantity::PrScalar) {
        require(path.has_value(), "pr quantity without a path");
        return measure_pr(fr, at, *path, tol);
    }
    const CMatrix a = fr.block(at.l, Side::A, at.i, at.j);
    const CMatrix b = fr.block(at.l, Side::B, at.i, at.j);
    const double s = fr.scale(at.l);
    Measured m;
    m.context_max = m.context_min = s;
    switch (q) {
        case Quantity::HermitianReal:
            require(a.rows() == a.cols() && (fr.mode == Mode::Sus && at.i == at.j),
                    "Hermitian part of a non-diagonal cell");
            m.fa = (a + a.adjoint()) * 0.5;
            m.fb = (b + b.adjoint()) * 0.5;
            break;
        case Quantity::HermitianImag:
            require(a.rows() == a.cols() && (fr.mode == Mode::Sus && at.i == at.j),
                    "Hermitian part of a non-diagonal cell");
            m.fa = (a - a.adjoint()) * Complex(0.0, -0.5);
            m.fb = (b - b.adjoint()) * Complex(0.0, -0.5);
            break;
        case Quantity::GramLeft:
            m.fa = a * a.adjoint();
            m.fb = b * b.adjoint();
            m.context_max = s * std::max(a.norm(), b.norm());
            m.context_min = s * std::min(a.norm(), b.norm());
            break;
        case Quantity::GramRight:
            m.fa = a.adjoint() * a;
            m.fb = b.adjoint() * b;
            m.context_max = s * std::max(a.norm(), b.norm());
            m.context_min = s * std::min(a.norm(), b.norm());
            break;
        default:
            m.fa = a;
            m.fb = b;
            break;
    }
    return m;
}

void replay(Frame& fr, const IterationTrace& trace, const Tolerances& tol) {
    for (std::size_t k = 0; k < trace.size(); ++k) {
        const RefinementStep& st = trace[k];
        const std::string step = "step " + std::to_string(k + 1) + ": ";
        require(st.rows_before == fr.rows && st.cols_before == fr.cols,
                step + "structure does not continue the previous step");
        require(is_spectral(st.quantity), step + "quantity is not a matrix functional");
        const Measured m = measure(fr, st.quantity, st.violation.at, st.pr_path, tol);
        const std::size_t dim = static_cast<std::size_t>(m.fa.rows());
        require(st.eigenvalues_a.size() == dim && st.eigenvalues_b.size() == dim,
                step + "spectrum length does not match the block");
        const double bound = std::max(m.fa.norm(), m.fb.norm());
        const double vthr = tol.verify * (m.context_max + bound);
        require((m.fa - diag(st.eigenvalues_a)).norm() <= vthr,
                step + "A-side functional is not diagonal with the recorded spectrum");
        require((m.fb - diag(st.eigenvalues_b)).norm() <= vthr,
                step + "B-side functional is not diagonal with the recorded spectrum");

        const double gthr = tol.group * (m.context_max + bound);
        std::size_t pos = 0;
        for (std::size_t g = 0; g < st.groups.size(); ++g) {
            for (std::size_t t = 0; t < st.groups[g].multiplicity; ++t, ++pos) {
                require(pos < dim, step + "group multiplicities exceed the block size");
                require(std::abs(st.eigenvalues_a[pos] - st.groups[g].value) <= gthr * dim &&
                            std::abs(st.eigenvalues_b[pos] - st.groups[g].value) <= gthr * dim,
                        step + "eigenvalue outside its group");
            }
            for (std::size_t h = g + 1; h < st.groups.size(); ++h) {
                require(std::abs(st.groups[g].value - st.groups[h].value) > tol.cmp * (m.context_max + bound),
                        step + "groups are not distinct");
            }
        }
        require(pos == dim, step + "group multiplicities do not cover the block");

        std::vector<std::size_t> mults;
        for (const auto& g : st.groups) mults.push_back(g.multiplicity);
        const bool row_side = st.touched_side == VertexKind::Row;
        BlockStructure rows = fr.rows;
        BlockStructure cols = fr.cols;
        try {
            if (row_side) rows = refine_structure(fr.rows, st.touched, mults);
            if (fr.mode == Mode::Sus) cols = rows;
            else if (!row_side) cols = refine_structure(fr.cols, st.touched, mults);
        } catch (const SusError& e) {
            throw Failure{step + e.what()};
        }
        const std::size_t expected_size =
            row_side ? fr.rows.size(st.touched) : fr.cols.size(st.touched);
        require(expected_size == dim, step + "functional does not live on the touched block");
        require(rows == st.rows_after && cols == st.cols_after,
                step + "refined structure does not match the grouping");
        fr.rows = rows;
        fr.cols = cols;
    }
}

bool recorded_close(const std::vector<Complex>& recorded, const std::vector<Complex>& actual,
                    double thr) {
    return matching_distance(recorded, actual) <= thr;
}

}  // namespace

CheckResult check_witness(const PairCollection& coll, const CMatrix& u, const CMatrix& v,
                          const Tolerances& tol) {
    CheckResult out;
    if (!unitary(u, coll.rows(), tol) || !unitary(v, coll.cols(), tol)) {
        out.reason = "witness is not unitary within tolerance";
        return out;
    }
    for (const auto& pr : coll.pairs()) {
        out.residual = std::max(out.residual,
                                (u * pr.a * v.adjoint() - pr.b).norm() / (1.0 + pr.a.norm()));
    }
    out.confirmed = out.residual <= tol.verify;
    std::ostringstream os;
    os << "normalized residual " << out.residual << (out.confirmed ? " within " : " above ")
       << "tolerance " << tol.verify;
    out.reason = os.str();
    return out;
}

CheckResult check_certificate(const PairCollection& coll, const IterationTrace& trace,
                              const MismatchCertificate& cert, const Tolerances& tol) {
    CheckResult out;
    try {
        require(cert.mode == Mode::SuEq || coll.square(), "similarity certificate on rectangular input");
        require(unitary(cert.row_a, coll.rows(), tol) && unitary(cert.row_b, coll.rows(), tol) &&
                    unitary(cert.col_a, coll.cols(), tol) && unitary(cert.col_b, coll.cols(), tol),
                "certificate transforms are not unitary");
        if (cert.mode == Mode::Sus) {
            const double d = std::max((cert.row_a - cert.col_a).norm(), (cert.row_b - cert.col_b).norm());
            require(d <= tol.verify * static_cast<double>(coll.rows()),
                    "similarity certificate with different row and column transforms");
        }

        Frame fr{cert.mode, {}, {}, BlockStructure::single(coll.rows()), BlockStructure::single(coll.cols())};
        for (const auto& pr : coll.pairs()) {
            fr.a.push_back(cert.row_a * pr.a * cert.col_a.adjoint());
            fr.b.push_back(cert.row_b * pr.b * cert.col_b.adjoint());
        }
        replay(fr, trace, tol);
        require(fr.rows == cert.rows && fr.cols == cert.cols,
                "certificate structure is not where the trace ends");
        require(cert.at.l < coll.size(), "certificate pair index out of range");

        const Measured m = measure(fr, cert.quantity, cert.at, cert.pr_path, tol);
        const double s = fr.scale(cert.at.l);
        std::ostringstream os;
        if (is_spectral(cert.quantity)) {
            const bool herm = cert.quantity != Quantity::PrNormal;
            const auto sa = spectrum(m.fa, herm);
            const auto sb = spectrum(m.fb, herm);
            const double bound = std::max(m.fa.norm(), m.fb.norm());
            const double rthr = tol.verify * (m.context_max + bound);
            require(recorded_close(cert.a_value, sa, rthr), "recorded A-side spectrum does not match");
            require(recorded_close(cert.b_value, sb, rthr), "recorded B-side spectrum does not match");
            const double dist = matching_distance(sa, sb);
            const double thr = tol.cmp * (m.context_min + std::min(m.fa.norm(), m.fb.norm()));
            require(dist > thr, "spectra agree within the comparison tolerance");
            os << to_string(cert.quantity) << " spectra differ by " << dist << " > " << thr;
        } else {
            Complex va;
            Complex vb;
            double ctx = s;
            if (cert.quantity == Quantity::DiagonalScalar) {
                require(cert.mode == Mode::Sus && cert.at.i == cert.at.j, "diagonal scalar off the diagonal");
                const auto ar = is_multiple_of_identity((m.fa + m.fa.adjoint()) * 0.5, tol, s);
                const auto ai = is_multiple_of_identity((m.fa - m.fa.adjoint()) * Complex(0.0, -0.5), tol, s);
                const auto br = is_multiple_of_identity((m.fb + m.fb.adjoint()) * 0.5, tol, s);
                const auto bi = is_multiple_of_identity((m.fb - m.fb.adjoint()) * Complex(0.0, -0.5), tol, s);
                require(ar && ai && br && bi, "diagonal blocks are not identity multiples");
                va = Complex(ar->real(), ai->real());
                vb = Complex(br->real(), bi->real());
            } else if (cert.quantity == Quantity::UnitaryScale) {
                require(m.fa.rows() == m.fa.cols(), "unitary scale of a rectangular block");
                const auto ra = is_multiple_of_unitary(m.fa, tol, s);
                const auto rb = is_multiple_of_unitary(m.fb, tol, s);
                require(ra && rb, "blocks are not multiples of unitaries");
                va = *ra;
                vb = *rb;
            } else {
                ctx = m.context_max;
                const auto ba = is_multiple_of_identity(m.fa, tol, ctx);
                const auto bb = is_multiple_of_identity(m.fb, tol, ctx);
                require(ba && bb, "pr blocks are not identity multiples");
                va = *ba;
                vb = *bb;
            }
            require(cert.a_value.size() == 1 && cert.b_value.size() == 1, "scalar certificate needs one value per side");
            require(std::abs(cert.a_value[0] - va) <= tol.verify * (ctx + std::abs(va)) &&
                        std::abs(cert.b_value[0] - vb) <= tol.verify * (ctx + std::abs(vb)),
                    "recorded scalars do not match");
            if (cert.quantity == Quantity::UnitaryScale) {
                va = std::sqrt(va.real());
                vb = std::sqrt(vb.real());
            }
            require(!scalars_match(va, vb, tol.cmp, ctx), "scalars agree within the comparison tolerance");
            os << to_string(cert.quantity) << " " << va << " vs " << vb;
        }
        out.confirmed = true;
        out.reason = os.str();
    } catch (const Failure& f) {
        out.reason = f.what;
    } catch (const SusError& e) {
        out.reason = e.what();
    }
    return out;
}

}  // namespace sus
