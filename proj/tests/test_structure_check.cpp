#include "sus/refine.hpp"

#include "test_util.hpp"

using namespace sus;
using sus::test::diag;
using sus::test::single_pair;

namespace {

PartitionView square_view(const PairCollection& c, const BlockStructure& s) {
    return induced_partition(c, s, s);
}

}  // namespace

TEST(PreSolution, NonScalarFirstIteration) {
    std::mt19937_64 rng(1);
    const CMatrix a = random_gaussian(rng, 4, 4);
    const auto c = single_pair(a, a);
    const auto rep = check_presolution(square_view(c, BlockStructure::single(4)), Mode::Sus, {});
    const auto* v = std::get_if<Violation>(&rep);
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(v->kind, ViolationKind::DiagonalNotIdentityMultiple);
    EXPECT_EQ(v->at, (SubmatrixRef{0, Side::A, 0, 0}));
}

TEST(PreSolution, ScalarCollectionIsInForm) {
    const CMatrix a = Complex(2, 1) * CMatrix::Identity(3, 3);
    const auto c = single_pair(a, a);
    const auto rep = check_presolution(square_view(c, BlockStructure::single(3)), Mode::Sus, {});
    const auto* f = std::get_if<PreSolutionInForm>(&rep);
    ASSERT_NE(f, nullptr);
    ASSERT_EQ(f->diag_scalars.size(), 1u);
    EXPECT_LE(std::abs(f->diag_scalars[0].value - Complex(2, 1)), 1e-15);
}

TEST(PreSolution, ZeroPatternMismatch) {
    const CMatrix a = diag({1.0, 2.0});
    CMatrix b = a;
    b(0, 1) = 0.5;
    const auto c = single_pair(a, b);
    const auto rep = check_presolution(square_view(c, BlockStructure({1, 1})), Mode::Sus, {});
    const auto* m = std::get_if<MismatchCertificate>(&rep);
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->kind, MismatchKind::ZeroPatternMismatch);
    EXPECT_EQ(m->at.i, 0u);
    EXPECT_EQ(m->at.j, 1u);
    // independent recomputation: |B_12| well above the zero threshold
    EXPECT_GT(std::abs(b(0, 1)), 1e-9 * std::max(a.norm(), b.norm()));
}

TEST(PreSolution, DiagonalScalarMismatch) {
    const auto c = single_pair(diag({1.0, 2.0}), diag({1.0, 3.0}));
    const auto rep = check_presolution(square_view(c, BlockStructure({1, 1})), Mode::Sus, {});
    const auto* m = std::get_if<MismatchCertificate>(&rep);
    ASSERT_NE(m, nullptr);
    EXPECT_EQ(m->kind, MismatchKind::ScalarMismatch);
    EXPECT_EQ(m->quantity, Quantity::DiagonalScalar);
    EXPECT_EQ(m->at.i, 1u);
}

TEST(PreSolution, SquareNotUnitaryMultiple) {
    CMatrix a = CMatrix::Zero(4, 4);
    a.block(0, 2, 2, 2) = diag({1.0, 2.0});
    const auto c = single_pair(a, a);
    const auto rep = check_presolution(square_view(c, BlockStructure({2, 2})), Mode::Sus, {});
    const auto* v = std::get_if<Violation>(&rep);
    ASSERT_NE(v, nullptr);
    EXPECT_EQ(v->kind, ViolationKind::SquareNotUnitaryMultiple);
    EXPECT_EQ(v->at, (SubmatrixRef{0, Side::A, 0, 1}));
}

TEST(PreSolution, DiagonalScalarNeedsBothHermitianParts) {
    EXPECT_TRUE(diagonal_scalar(Complex(1, 1) * CMatrix::Identity(2, 2), {}, 1.0));
    EXPECT_FALSE(diagonal_scalar(Complex(0, 1) * diag({1.0, 2.0}), {}, 1.0));
    const CMatrix rot = sus::test::mat({{0.0, 1.0}, {-1.0, 0.0}});
    EXPECT_FALSE(diagonal_scalar(rot, {}, 1.0));
}

TEST(PreSolution, RectangularZeroViaGrams) {
    EXPECT_TRUE(rectangular_is_zero(CMatrix::Zero(2, 3), {}, 1.0));
    CMatrix v = CMatrix::Zero(2, 1);
    v(0, 0) = 1.0;
    EXPECT_FALSE(rectangular_is_zero(v, {}, 1.0));
    CMatrix w = CMatrix::Zero(2, 1);
    w(1, 0) = 1e-14;
    EXPECT_TRUE(rectangular_is_zero(w, {}, 1.0));
}

TEST(Selection, ImaginaryPartWhenRealIsScalar) {
    const CMatrix a = Complex(0, 1) * diag({1.0, 2.0});
    const auto c = single_pair(a, a);
    const auto view = square_view(c, BlockStructure::single(2));
    const auto rep = check_presolution(view, Mode::Sus, {});
    const auto sel = select_s_and_r(view, Mode::Sus, std::get<Violation>(rep), {});
    EXPECT_EQ(sel.quantity, Quantity::HermitianImag);
    EXPECT_LE((sel.s - diag({1.0, 2.0})).norm(), 1e-15);
}

TEST(Selection, RealPartPreferred) {
    const auto c = single_pair(diag({1.0, 2.0}), diag({1.0, 2.0}));
    const auto view = square_view(c, BlockStructure::single(2));
    const auto sel = select_s_and_r(view, Mode::Sus,
                                    std::get<Violation>(check_presolution(view, Mode::Sus, {})), {});
    EXPECT_EQ(sel.quantity, Quantity::HermitianReal);
    EXPECT_LE((sel.s - diag({1.0, 2.0})).norm(), 1e-15);
}

TEST(Selection, RectangularGramLeft) {
    CMatrix v = CMatrix::Zero(2, 1);
    v(0, 0) = 1.0;
    const auto c = single_pair(v, v);
    const auto view = induced_partition(c, BlockStructure::single(2), BlockStructure::single(1));
    const auto rep = check_presolution(view, Mode::SuEq, {});
    const auto* viol = std::get_if<Violation>(&rep);
    ASSERT_NE(viol, nullptr);
    EXPECT_EQ(viol->kind, ViolationKind::RectangularNonzero);
    const auto sel = select_s_and_r(view, Mode::SuEq, *viol, {});
    EXPECT_EQ(sel.quantity, Quantity::GramLeft);
    EXPECT_EQ(sel.touched_side, VertexKind::Row);
    EXPECT_LE((sel.s - diag({1.0, 0.0})).norm(), 1e-15);
}

TEST(QuantitySpectrum, CanonicalOrder) {
    const auto h = quantity_spectrum(diag({-1.0, 3.0, 0.0}), Quantity::GramLeft);
    ASSERT_EQ(h.size(), 3u);
    EXPECT_NEAR(h[0].real(), 3.0, 1e-12);
    EXPECT_NEAR(h[2].real(), -1.0, 1e-12);
    const auto n = quantity_spectrum(sus::test::mat({{0.0, 1.0}, {-1.0, 0.0}}), Quantity::PrNormal);
    EXPECT_LE(std::abs(n[0] - Complex(0, 1)), 1e-12);
    EXPECT_LE(std::abs(n[1] - Complex(0, -1)), 1e-12);
    EXPECT_TRUE(is_spectral(Quantity::PrNormal));
    EXPECT_FALSE(is_spectral(Quantity::PrScalar));
}

TEST(PreSolution, ScaleInvariantVerdict) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 10; ++k) {
        const CMatrix q = random_unitary(rng, 2);
        CMatrix a = CMatrix::Zero(4, 4);
        a.block(0, 0, 2, 2) = CMatrix::Identity(2, 2);
        a.block(2, 2, 2, 2) = 2.0 * CMatrix::Identity(2, 2);
        a.block(0, 2, 2, 2) = 3.0 * q;
        for (double s : {1e-3, 1.0, 1e3}) {
            const auto c = single_pair(s * a, s * a);
            const auto rep = check_presolution(square_view(c, BlockStructure({2, 2})), Mode::Sus, {});
            const auto* f = std::get_if<PreSolutionInForm>(&rep);
            ASSERT_NE(f, nullptr);
            ASSERT_FALSE(f->unitary_scales.empty());
            EXPECT_NEAR(f->unitary_scales[0].value.real(), 9.0 * s * s, 1e-9 * 9.0 * s * s);
        }
    }
}
