#include <gtest/gtest.h>

#include <memory>
#include <random>

#include <nlohmann/json.hpp>

#include "dynr/cdyb.hpp"
#include "dynr/rmatrix.hpp"
#include "oracles.hpp"

using namespace dynr;

namespace {

constexpr std::size_t kH = 0, kE = 1, kF = 2;

std::shared_ptr<const LieAlgebra> sl(int n) {
    static std::shared_ptr<const LieAlgebra> cache[6];
    if (!cache[n]) cache[n] = std::make_shared<LieAlgebra>(build_builtin("sl", n));
    return cache[n];
}

struct Scalar {
    double v;
    Scalar& operator+=(const Scalar& o) { v += o.v; return *this; }
    Scalar& operator-=(const Scalar& o) { v -= o.v; return *this; }
    friend Scalar operator*(Scalar a, double s) { a.v *= s; return a; }
};

Vector with_radius(std::mt19937_64& rng, const LieAlgebra& alg, const Matrix& basis, double radius) {
    Vector x = basis * oracle::random_real(rng, static_cast<std::size_t>(basis.cols()));
    return x * (radius / spectral_radius(ad_operator(alg, AlgebraElement{x})));
}

AlgebraElement regular_point(std::mt19937_64& rng, const LieAlgebra& alg, const SubalgebraSplit& split,
                             double radius) {
    for (;;) {
        const AlgebraElement w{with_radius(rng, alg, split.h_basis(), radius)};
        if (regularity_margin(alg, split, w) >= kSamplingMargin) return w;
    }
}

}  // namespace

TEST(Scheme, ValidationAndTolerances) {
    EXPECT_NO_THROW(DiffScheme::central(1e-9).validate());
    EXPECT_NO_THROW(DiffScheme::richardson(1e-2, 6).validate());
    EXPECT_THROW(DiffScheme::central(1e-10).validate(), std::invalid_argument);
    EXPECT_THROW(DiffScheme::central(0.1).validate(), std::invalid_argument);
    EXPECT_THROW(DiffScheme::richardson(1e-5, 7).validate(), std::invalid_argument);
    EXPECT_EQ(DiffScheme::exact().default_tolerance(), 1e-12);
    EXPECT_EQ(DiffScheme::richardson().default_tolerance(), 1e-7);
    EXPECT_EQ(DiffScheme::central().default_tolerance(), 1e-6);
    EXPECT_EQ(DiffScheme::richardson().to_json()["kind"], "richardson");
}

TEST(GroupDerivative, TraceFunctions) {
    const auto& a = *sl(2);
    const GroupElement e{Matrix::Identity(2, 2)};
    std::function<Scalar(const GroupElement&)> tr = [](const GroupElement& m) { return Scalar{m.matrix.trace().real()}; };
    const Matrix h = a.generator(kH);
    std::function<Scalar(const GroupElement&)> tr_h = [h](const GroupElement& m) {
        return Scalar{(h * m.matrix).trace().real()};
    };
    for (std::size_t k = 0; k < 3; ++k)
        EXPECT_NEAR(group_derivative(a, tr, e, k, Side::Right, DiffScheme::richardson()).v, 0.0, 1e-12);
    const double rh = group_derivative(a, tr_h, e, kH, Side::Right, DiffScheme::richardson()).v;
    const double lh = group_derivative(a, tr_h, e, kH, Side::Left, DiffScheme::richardson()).v;
    EXPECT_NEAR(rh, 2.0, 1e-9);
    EXPECT_NEAR(rh - lh, 0.0, 1e-12);
}

TEST(FlatDerivative, ConstantLinearAndF0) {
    const auto alg = sl(2);
    const Tensor2 cas = casimir_hat(*alg);
    std::function<Tensor2(const AlgebraElement&)> constant = [&](const AlgebraElement&) { return cas; };
    std::function<Tensor2(const AlgebraElement&)> linear = [&](const AlgebraElement& w) {
        return cas * w.coeffs(kE).real();
    };
    const AlgebraElement w{(Vector(3) << 0.3, -0.2, 0.5).finished()};
    EXPECT_EQ(max_abs_norm(flat_derivative(constant, w, kH, DiffScheme::richardson())), 0.0);
    EXPECT_LE(max_abs_norm(flat_derivative(linear, w, kE, DiffScheme::richardson()) - cas), 1e-10);

    // d/dtheta of the E (x) F coefficient of f0(ad theta H) at theta = 1:
    // -csch^2(1)/2 + 1/2.
    const double expected = 0.1379691695168448;
    EXPECT_NEAR(-0.5 / std::pow(std::sinh(1.0), 2) + 0.5, expected, 1e-15);
    const auto f0 = RMatrixFunction::f0(alg).on_algebra();
    const Tensor2 d = flat_derivative(f0, AlgebraElement{Vector::Unit(3, kH)}, kH, DiffScheme::richardson());
    EXPECT_NEAR(d.comps(kE, kF).real(), expected, 1e-9);
}

TEST(Mcybe, DrinfeldJimboAndZero) {
    for (int n : {2, 3, 4}) {
        const auto a = sl(n);
        const auto rd = root_data(*a);
        const auto rep = mcybe_residual(*a, dj_constant(*a, rd));
        EXPECT_LE(rep.norm, 1e-12);
        EXPECT_TRUE(rep.pass);
        const auto zero = mcybe_residual(*a, Tensor2::zero(a->dim()));
        EXPECT_NEAR(zero.norm, 0.25 * max_abs_norm(f_hat(*a)), 1e-15);
        EXPECT_FALSE(zero.pass);
    }
}

TEST(Mcybe, AgreesWithRepresentationOracle) {
    // For antisymmetric r the cyclic sum equals the three-term classical YB
    // expression; f/4 = -[I_12, I_23]/4.
    std::mt19937_64 rng(31);
    for (int n : {2, 3}) {
        const auto& a = *sl(n);
        const Matrix cas = casimir_hat(a).comps;
        const Matrix cas_term = oracle::commutator(oracle::place(a, cas, 1, 2), oracle::place(a, cas, 2, 3));
        std::vector<Matrix> candidates{dj_constant(a, root_data(a)).comps};
        for (int k = 0; k < 3; ++k) {
            const Matrix m = oracle::random_real_matrix(rng, a.dim());
            candidates.push_back(m - m.transpose());
        }
        for (const auto& r : candidates) {
            const Tensor3 expected = oracle::expand3(a, oracle::classical_yb_rep(a, r) - 0.25 * cas_term);
            const auto rep = mcybe_residual(a, Tensor2{r});
            EXPECT_LE(oracle::max_abs_diff(*rep.residual3, expected), 1e-11);
        }
    }
}

TEST(LieCdyb, F0SolvesFullEquation) {
    std::mt19937_64 rng(32);
    for (int n : {2, 3}) {
        const auto alg = sl(n);
        const auto f0 = RMatrixFunction::f0(alg).on_algebra();
        const auto analytic = [alg](const AlgebraElement& w, const Vector& d) {
            return f0_rmatrix_derivative(*alg, w, AlgebraElement{d});
        };
        for (int k = 0; k < 10; ++k) {
            const AlgebraElement w{with_radius(rng, *alg, Matrix::Identity(alg->dim(), alg->dim()), 3.0 * (k + 1) / 10)};
            const auto rep = lie_cdyb_residual(*alg, f0, w, DiffScheme::richardson());
            EXPECT_TRUE(rep.pass) << rep.norm;
            const auto exact = lie_cdyb_residual(*alg, f0, w, DiffScheme::richardson(), nullptr, std::nullopt, analytic);
            EXPECT_LE(exact.norm, 1e-9);
            EXPECT_EQ(exact.tolerance, 1e-9);
        }
    }
}

TEST(LieCdyb, NegativeControlsFail) {
    const auto alg = sl(3);
    const Tensor2 cas = casimir_hat(*alg);
    std::function<Tensor2(const AlgebraElement&)> casimir = [&](const AlgebraElement&) { return cas; };
    std::function<Tensor2(const AlgebraElement&)> zero = [&](const AlgebraElement&) { return Tensor2::zero(8); };
    std::mt19937_64 rng(33);
    const AlgebraElement w{oracle::random_real(rng, 8)};
    EXPECT_FALSE(lie_cdyb_residual(*alg, casimir, w, DiffScheme::richardson()).pass);
    EXPECT_FALSE(lie_cdyb_residual(*alg, zero, w, DiffScheme::richardson()).pass);
}

TEST(LieCdyb, SchemeConvergence) {
    const auto alg = sl(2);
    const auto f0 = RMatrixFunction::f0(alg).on_algebra();
    const AlgebraElement w{(Vector(3) << 1.1, 0.7, -0.4).finished()};
    const double coarse = lie_cdyb_residual(*alg, f0, w, DiffScheme::central(1e-2)).norm;
    const double fine = lie_cdyb_residual(*alg, f0, w, DiffScheme::central(5e-3)).norm;
    EXPECT_NEAR(coarse / fine, 4.0, 0.2);
}

TEST(HCdyb, CothAndDirac) {
    std::mt19937_64 rng(34);
    const auto alg = sl(3);
    const auto roots = std::make_shared<RootData>(root_data(*alg));
    const auto coth = RMatrixFunction::cartan_coth(alg, roots).on_algebra();
    const auto block = std::make_shared<SubalgebraSplit>(split_from_id(*alg, "block:2+1"));
    const auto dirac = RMatrixFunction::dirac(alg, block, RMatrixFunction::f0(alg)).on_algebra();
    for (int k = 0; k < 10; ++k) {
        const AlgebraElement wc = regular_point(rng, *alg, roots->split, 1.0 + 2.0 * k / 10);
        EXPECT_TRUE(lie_cdyb_residual(*alg, coth, wc, DiffScheme::richardson(), &roots->split).pass);
        const AlgebraElement wb = regular_point(rng, *alg, *block, 1.0 + 2.0 * k / 10);
        EXPECT_TRUE(lie_cdyb_residual(*alg, dirac, wb, DiffScheme::richardson(), block.get()).pass);
    }
    const AlgebraElement off{Vector::Unit(8, 3)};
    EXPECT_THROW(lie_cdyb_residual(*alg, coth, off, DiffScheme::richardson(), &roots->split), DomainError);
}

TEST(HCdyb, MarginIsSmallestRestrictedSingularValue) {
    const auto alg = sl(2);
    const auto split = split_from_id(*alg, "cartan");
    // ad(theta H) is diag(2 theta, -2 theta) on span(E, F).
    EXPECT_NEAR(regularity_margin(*alg, split, AlgebraElement{Vector::Unit(3, kH) * 0.3}), 0.6, 1e-14);
    EXPECT_EQ(regularity_margin(*alg, split, AlgebraElement{Vector::Zero(3)}), 0.0);
}

TEST(Equivariance, IsotropyRandomAndNegativeControl) {
    const auto alg2 = sl(2);
    const auto f0_2 = RMatrixFunction::f0(alg2).on_algebra();
    const AlgebraElement h{Vector::Unit(3, kH)};
    EXPECT_LE(equivariance_residual(*alg2, f0_2, AlgebraElement{h.coeffs * 0.8}, h, DiffScheme::richardson()).norm,
              1e-10);

    const auto alg = sl(3);
    const auto f0 = RMatrixFunction::f0(alg).on_algebra();
    std::mt19937_64 rng(35);
    for (int k = 0; k < 10; ++k) {
        const AlgebraElement w{with_radius(rng, *alg, Matrix::Identity(8, 8), 3.0 * (k + 1) / 10)};
        const AlgebraElement t{oracle::random_real(rng, 8)};
        EXPECT_TRUE(equivariance_residual(*alg, f0, w, t, DiffScheme::richardson()).pass);
    }
    Tensor2 fixed = Tensor2::zero(8);
    fixed.comps(3, 4) = 1.0;
    fixed.comps(4, 3) = -1.0;
    std::function<Tensor2(const AlgebraElement&)> constant = [&](const AlgebraElement&) { return fixed; };
    const auto rep = equivariance_residual(*alg, constant, AlgebraElement{oracle::random_real(rng, 8)},
                                           AlgebraElement{oracle::random_real(rng, 8)}, DiffScheme::richardson());
    EXPECT_GT(rep.norm, 1e-3);

    const auto split = split_from_id(*alg, "cartan");
    EXPECT_THROW(equivariance_residual(*alg, f0, AlgebraElement{Vector::Zero(8)}, AlgebraElement{Vector::Unit(8, 4)},
                                       DiffScheme::richardson(), &split),
                 DomainError);
}

TEST(Gcdyb, ConstantDrinfeldJimboMatchesMcybe) {
    const auto alg = sl(3);
    const Tensor2 dj = dj_constant(*alg, root_data(*alg));
    std::function<Tensor2(const GroupElement&)> constant = [&](const GroupElement&) { return dj; };
    std::mt19937_64 rng(36);
    const auto m = exp_map(*alg, AlgebraElement{oracle::random_real(rng, 8)});
    const auto rep = gcdyb_residual(*alg, constant, m, DiffScheme::central());
    EXPECT_LE(rep.norm, 1e-12);
    EXPECT_LE(oracle::max_abs_diff(*rep.residual3, *mcybe_residual(*alg, dj).residual3), 0.0);
}

TEST(Gcdyb, F0OfLogSolvesAndAgreesWithAlgebraForm) {
    std::mt19937_64 rng(37);
    const auto alg = sl(2);
    const auto f0 = RMatrixFunction::f0(alg);
    for (int k = 0; k < 10; ++k) {
        Vector x = oracle::random_real(rng, 3);
        x *= (k + 1) / 10.0 / x.norm();
        const auto g = gcdyb_residual(*alg, f0.on_group(), exp_map(*alg, AlgebraElement{x}), DiffScheme::central());
        const auto l = lie_cdyb_residual(*alg, f0.on_algebra(), AlgebraElement{x}, DiffScheme::central());
        EXPECT_TRUE(g.pass) << g.norm;
        EXPECT_EQ(g.pass, l.pass);
        EXPECT_LE(std::abs(g.norm - l.norm), 1e-6);
    }
}

TEST(Gcdyb, CanonicalTwoFormPasses) {
    std::mt19937_64 rng(38);
    const auto alg = sl(2);
    const auto rfun =
        RMatrixFunction::from_q(alg, QForm::from_rmatrix(alg, RMatrixFunction::f0(alg).on_group())).on_group();
    for (int k = 0; k < 10; ++k) {
        Vector x = oracle::random_real(rng, 3);
        x *= (k + 1) / 10.0 / x.norm();
        EXPECT_TRUE(gcdyb_residual(*alg, rfun, exp_map(*alg, AlgebraElement{x}), DiffScheme::central(1e-5)).pass);
    }
}

TEST(Gcdyb, ConstantTwoFormResidualAtIdentityIsHalfF) {
    // With a constant 2-form the inversion formula does not solve the
    // group equation: at M = e the residual is exactly -f/2.
    for (int n : {2, 3}) {
        const auto alg = sl(n);
        const auto rfun = RMatrixFunction::from_q(alg, QForm::zero(*alg)).on_group();
        const auto rep = gcdyb_residual(*alg, rfun, GroupElement{Matrix::Identity(n, n)}, DiffScheme::richardson());
        const Tensor3 expected = f_hat(*alg) * -0.5;
        EXPECT_LE(oracle::max_abs_diff(*rep.residual3, expected), 1e-9);
        EXPECT_FALSE(rep.pass);
    }
}

TEST(Gcdyb, CasimirNegativeControl) {
    const auto alg = sl(2);
    const Tensor2 cas = casimir_hat(*alg);
    std::function<Tensor2(const GroupElement&)> casimir = [&](const GroupElement&) { return cas; };
    const auto rep = gcdyb_residual(*alg, casimir, exp_map(*alg, AlgebraElement{Vector::Unit(3, kF) * 0.3}),
                                    DiffScheme::central());
    EXPECT_GT(rep.norm, 1e-2);
}

TEST(Report, JsonSchema) {
    const auto alg = sl(2);
    auto rep = mcybe_residual(*alg, dj_constant(*alg, root_data(*alg)));
    rep.seed = 42;
    const auto j = report_to_json(rep);
    for (const char* key : {"equation", "algebra", "point", "scheme", "norm", "tolerance", "pass", "seed"})
        EXPECT_TRUE(j.contains(key)) << key;
    EXPECT_EQ(j["equation"], "mcybe");
    EXPECT_EQ(j["seed"], 42);
    EXPECT_EQ(j["scheme"]["kind"], "exact");
}
