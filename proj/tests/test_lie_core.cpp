#include <gtest/gtest.h>

#include <cstdio>
#include <fstream>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "dynr/lie_algebra.hpp"
#include "oracles.hpp"

using namespace dynr;

namespace {

constexpr std::size_t kH = 0, kE = 1, kF = 2;

const LieAlgebra& sl2() {
    static const LieAlgebra alg = builtin_from_id("sl2");
    return alg;
}

const LieAlgebra& sl3() {
    static const LieAlgebra alg = builtin_from_id("sl3");
    return alg;
}

const char* kSl2Text = R"(# sl(2) in the defining representation
algebra custom-sl2
dimension 3
rep_dimension 2
generator 0   1 0  0 0    0 0  -1 0
generator 1   0 0  1 0    0 0   0 0
generator 2   0 0  0 0    1 0   0 0
end
)";

}  // namespace

TEST(Builtin, Sl2StructureConstantsAndForm) {
    const auto& a = sl2();
    EXPECT_EQ(a.dim(), 3u);
    EXPECT_EQ(a.f(kH, kE, kE), Complex(2.0));
    EXPECT_EQ(a.f(kE, kF, kH), Complex(1.0));
    EXPECT_EQ(a.f(kH, kF, kF), Complex(-2.0));
    EXPECT_EQ(a.gram()(kH, kH), Complex(2.0));
    EXPECT_EQ(a.gram()(kE, kF), Complex(1.0));
    EXPECT_EQ(a.gram()(kE, kE), Complex(0.0));
}

TEST(Builtin, Sl2DualBasis) {
    // H^ = H/2, E^ = F, F^ = E: column a of g^-1 holds the coefficients of T^a.
    const Matrix& gi = sl2().gram_inv();
    EXPECT_NEAR(std::abs(gi(kH, kH) - 0.5), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(gi(kF, kE) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(gi(kE, kF) - 1.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(gi(kE, kE)), 0.0, 1e-15);
}

TEST(Builtin, StructureConstantsMatchBruteForceCommutators) {
    for (const char* id : {"sl2", "sl3", "sl4"}) {
        const auto a = builtin_from_id(id);
        for (std::size_t i = 0; i < a.dim(); ++i)
            for (std::size_t j = 0; j < a.dim(); ++j) {
                const Vector c = oracle::bracket_coeffs(a, i, j);
                for (std::size_t k = 0; k < a.dim(); ++k)
                    EXPECT_NEAR(std::abs(a.f(i, j, k) - c(static_cast<Eigen::Index>(k))), 0.0, 1e-13) << id;
            }
    }
}

TEST(Builtin, AllValidate) {
    for (int n = 2; n <= 5; ++n) {
        const auto a = build_builtin("sl", n);
        EXPECT_EQ(a.dim(), static_cast<std::size_t>(n * n - 1));
        const auto rep = validate(a);
        EXPECT_TRUE(rep.pass) << "sl" << n;
        for (const auto& row : rep.rows) {
            EXPECT_LE(row.max_violation, row.invariant == "form_condition" ? row.tolerance : 1e-12) << row.invariant;
        }
    }
    EXPECT_EQ(validate(sl2()).row("jacobi")->max_violation, 0.0);
}

TEST(Builtin, UnknownIdsThrow) {
    EXPECT_THROW(build_builtin("sl", 6), AlgebraError);
    EXPECT_THROW(build_builtin("so", 3), AlgebraError);
    EXPECT_THROW(builtin_from_id("sl1"), AlgebraError);
    EXPECT_THROW(builtin_from_id("g2"), AlgebraError);
}

TEST(Validate, CorruptedConstantFailsJacobiAndRepresentation) {
    const auto bad = sl2().with_structure_constant(kH, kE, kE, 2.1);
    const auto rep = validate(bad);
    EXPECT_FALSE(rep.pass);
    EXPECT_FALSE(rep.row("jacobi")->pass);
    EXPECT_FALSE(rep.row("representation_consistency")->pass);
    EXPECT_TRUE(rep.row("structure_antisymmetry")->pass);
}

TEST(Validate, AbelianAlgebraWithIdentityForm) {
    const auto a = load_algebra_text(R"(algebra abelian2
dimension 2
rep_dimension 2
generator 0  1 0 0 0  0 0 0 0
generator 1  0 0 0 0  0 0 1 0
end)");
    const auto rep = validate(a);
    EXPECT_TRUE(rep.pass);
    EXPECT_LE(oracle::max_abs(a.gram() - Matrix::Identity(2, 2)), 0.0);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_EQ(a.f(i / 4, (i / 2) % 2, i % 2), Complex(0.0));
}

TEST(TextFormat, LoadsAndMatchesBuiltin) {
    const auto a = load_algebra_text(kSl2Text);
    EXPECT_EQ(a.name(), "custom-sl2");
    EXPECT_LE(oracle::max_abs(a.gram() - sl2().gram()), 1e-15);
    for (std::size_t c = 0; c < 3; ++c) EXPECT_LE(oracle::max_abs(a.f_slice(c) - sl2().f_slice(c)), 1e-15);
}

TEST(TextFormat, FileRoundTrip) {
    const std::string path = ::testing::TempDir() + "dynr_sl2.alg";
    {
        std::ofstream out(path);
        out << kSl2Text;
    }
    const auto a = load_algebra_file(path);
    EXPECT_EQ(a.dim(), 3u);
    std::remove(path.c_str());
    EXPECT_THROW(load_algebra_file(path), AlgebraError);
}

TEST(TextFormat, StrictErrors) {
    const std::string head = "algebra x\ndimension 3\nrep_dimension 2\n";
    const std::string g0 = "generator 0 1 0 0 0 0 0 -1 0\n";
    const std::string g1 = "generator 1 0 0 1 0 0 0 0 0\n";
    const std::string g2 = "generator 2 0 0 0 0 1 0 0 0\n";
    EXPECT_NO_THROW(load_algebra_text(head + g0 + g1 + g2 + "end\n"));
    EXPECT_THROW(load_algebra_text(head + g0 + g1 + g2), AlgebraError);                   // no end
    EXPECT_THROW(load_algebra_text(head + g0 + g0 + g2 + "end\n"), AlgebraError);         // duplicate
    EXPECT_THROW(load_algebra_text(head + g0 + g1 + "end\n"), AlgebraError);              // missing
    EXPECT_THROW(load_algebra_text(head + g0 + g1 + g2 + "bogus 1\nend\n"), AlgebraError);
    EXPECT_THROW(load_algebra_text(head + g0 + g1 + g2 + "end\nalgebra y\n"), AlgebraError);
    EXPECT_THROW(load_algebra_text(head + "generator 3 0 0 0 0 0 0 0 0\nend\n"), AlgebraError);
    EXPECT_THROW(load_algebra_text(head + "generator 0 1 0 0 0 0 0\nend\n"), AlgebraError);  // short
    // Supplied constants that violate Jacobi are rejected after validation.
    std::string consts;
    for (const char* line : {"constant 0 1 1 2.1 0\n", "constant 1 0 1 -2.1 0\n", "constant 0 2 2 -2 0\n",
                             "constant 2 0 2 2 0\n", "constant 1 2 0 1 0\n", "constant 2 1 0 -1 0\n"})
        consts += line;
    EXPECT_THROW(load_algebra_text(head + g0 + g1 + g2 + consts + "end\n"), AlgebraError);
}

TEST(Adjoint, AdOfCartanElementIsDiagonal) {
    const double theta = 0.7;
    const auto ad = ad_operator(sl2(), AlgebraElement{Vector::Unit(3, kH) * theta}).matrix;
    EXPECT_NEAR(std::abs(ad(kH, kH)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ad(kE, kE) - 2.0 * theta), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(ad(kF, kF) + 2.0 * theta), 0.0, 1e-15);
    EXPECT_LE(oracle::max_abs(ad - Matrix(ad.diagonal().asDiagonal())), 1e-15);
    EXPECT_LE(oracle::max_abs(ad_operator(sl2(), AlgebraElement{Vector::Zero(3)}).matrix), 0.0);
}

TEST(Adjoint, AdActsAsCommutatorAndIsFormSkew) {
    std::mt19937_64 rng(11);
    for (int k = 0; k < 20; ++k) {
        const Vector x = oracle::random_real(rng, 8);
        const Vector y = oracle::random_real(rng, 8);
        const Matrix ad = ad_operator(sl3(), AlgebraElement{x}).matrix;
        const Matrix lhs = sl3().to_matrix(ad * y);
        const Matrix rhs = oracle::commutator(sl3().to_matrix(x), sl3().to_matrix(y));
        EXPECT_LE(oracle::max_abs(lhs - rhs), 1e-13);
        EXPECT_LE(oracle::max_abs(sl3().gram() * ad + ad.transpose() * sl3().gram()), 1e-12);
    }
}

TEST(Adjoint, GroupAdjointMatchesExpOfAd) {
    std::mt19937_64 rng(5);
    for (int k = 0; k < 100; ++k) {
        const auto& a = k % 2 ? sl2() : sl3();
        Vector x = oracle::random_real(rng, a.dim());
        x *= 2.0 * std::uniform_real_distribution<double>(0.0, 1.0)(rng) / x.norm();
        const Matrix ad_exp = ad_operator(a, AlgebraElement{x}).matrix.exp();
        const Matrix big_ad = Ad_operator(a, exp_map(a, AlgebraElement{x})).matrix;
        EXPECT_LE(oracle::max_abs(ad_exp - big_ad), 1e-10);
        EXPECT_LE(oracle::max_abs(big_ad.transpose() * a.gram() * big_ad - a.gram()), 1e-10);
    }
    const Matrix id = Ad_operator(sl2(), GroupElement{Matrix::Identity(2, 2)}).matrix;
    EXPECT_LE(oracle::max_abs(id - Matrix::Identity(3, 3)), 0.0);
}

TEST(Adjoint, GroupAdjointOfCartanExponential) {
    const auto m = exp_map(sl2(), AlgebraElement{Vector::Unit(3, kH)});
    const Matrix ad = Ad_operator(sl2(), m).matrix;
    EXPECT_NEAR(std::abs(ad(kH, kH) - 1.0), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(ad(kE, kE) - std::exp(2.0)), 0.0, 1e-13);
    EXPECT_NEAR(std::abs(ad(kF, kF) - std::exp(-2.0)), 0.0, 1e-14);
}

TEST(Adjoint, NonGroupMatrixThrows) {
    Matrix m = Matrix::Identity(2, 2);
    m(0, 0) = 2.0;  // Ad of gl(2) element leaves traceful directions
    m(0, 1) = 1.0;
    EXPECT_NO_THROW(Ad_operator(sl2(), GroupElement{m}));  // conjugation preserves sl(2)
    const auto abel = load_algebra_text(R"(algebra diag
dimension 1
rep_dimension 2
generator 0  1 0 0 0  0 0 -1 0
end)");
    EXPECT_THROW(Ad_operator(abel, GroupElement{m}), DomainError);
}

TEST(ExpLog, CartanExponentialIsDiagonal) {
    const double theta = 0.3;
    const Matrix m = exp_map(sl2(), AlgebraElement{Vector::Unit(3, kH) * theta}).matrix;
    EXPECT_NEAR(std::abs(m(0, 0) - std::exp(theta)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(1, 1) - std::exp(-theta)), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(m(0, 1)) + std::abs(m(1, 0)), 0.0, 1e-15);
    EXPECT_LE(oracle::max_abs(exp_map(sl2(), AlgebraElement{Vector::Zero(3)}).matrix - Matrix::Identity(2, 2)), 0.0);
}

TEST(ExpLog, RoundTrip) {
    std::mt19937_64 rng(17);
    double worst = 0.0;
    for (int k = 0; k < 100; ++k) {
        const auto& a = k % 2 ? sl2() : sl3();
        Vector x = oracle::random_real(rng, a.dim());
        x *= std::uniform_real_distribution<double>(0.0, 1.0)(rng) / x.norm();
        const auto m = exp_map(a, AlgebraElement{x});
        EXPECT_NEAR(std::abs(m.matrix.determinant() - 1.0), 0.0, 1e-10);
        const Vector back = log_map(a, m).coeffs;
        worst = std::max(worst, oracle::max_abs(back - x));
        worst = std::max(worst, oracle::max_abs(exp_map(a, AlgebraElement{back}).matrix - m.matrix));
    }
    EXPECT_LE(worst, 1e-10);
}

TEST(ExpLog, NegativeRealEigenvalueIsOutsideThePrincipalBranch) {
    Matrix m = Matrix::Identity(2, 2) * -1.0;
    EXPECT_THROW(log_map(sl2(), GroupElement{m}), DomainError);
    Matrix j = Matrix::Zero(2, 2);
    j(0, 0) = -2.0;
    j(1, 1) = -0.5;
    EXPECT_THROW(log_map(sl2(), GroupElement{j}), DomainError);
}

TEST(Split, CartanOfSl2) {
    const auto s = split_from_id(sl2(), "cartan");
    EXPECT_EQ(s.dim_h(), 1u);
    EXPECT_EQ(s.dim_perp(), 2u);
    EXPECT_NEAR(std::abs(s.h_form()(0, 0) - 2.0), 0.0, 1e-15);
    // Complement is span{E, F}.
    EXPECT_LE(oracle::max_abs(s.perp_basis().row(kH)), 1e-15);
}

TEST(Split, ProjectorsAndOrthogonality) {
    for (const char* id : {"cartan", "block:2+1", "basis:0,1,2,4"}) {
        const auto s = split_from_id(sl3(), id);
        const Matrix id8 = Matrix::Identity(8, 8);
        EXPECT_LE(oracle::max_abs(s.proj_h() + s.proj_perp() - id8), 1e-14) << id;
        EXPECT_LE(oracle::max_abs(s.proj_h() * s.proj_perp()), 1e-14) << id;
        EXPECT_LE(oracle::max_abs(s.h_basis().transpose() * sl3().gram() * s.perp_basis()), 1e-14) << id;
        EXPECT_EQ(s.dim_h() + s.dim_perp(), 8u);
    }
}

TEST(Split, GradeZeroBlockIsNonAbelian) {
    const auto s = split_from_id(sl3(), "block:2+1");
    EXPECT_EQ(s.dim_h(), 4u);
    bool non_abelian = false;
    for (Eigen::Index i = 0; i < 4; ++i)
        for (Eigen::Index j = 0; j < 4; ++j) {
            const Vector c = ad_operator(sl3(), AlgebraElement{s.h_basis().col(i)}).matrix * s.h_basis().col(j);
            non_abelian = non_abelian || oracle::max_abs(c) > 0.5;
            EXPECT_LE(s.perp_residual(c), 1e-12);
        }
    EXPECT_TRUE(non_abelian);
}

TEST(Split, Errors) {
    EXPECT_THROW(SubalgebraSplit(sl2(), Matrix(Vector::Unit(3, kE))), AlgebraError);  // null direction
    Matrix ef(3, 2);
    ef << Vector::Unit(3, kE), Vector::Unit(3, kF);
    EXPECT_THROW(SubalgebraSplit(sl2(), ef), AlgebraError);  // [E, F] = H not in span
    Matrix dep(3, 2);
    dep << Vector::Unit(3, kH), Vector::Unit(3, kH) * 2.0;
    EXPECT_THROW(SubalgebraSplit(sl2(), dep), AlgebraError);
    EXPECT_THROW(split_from_id(sl3(), "block:2+2"), AlgebraError);
    EXPECT_THROW(split_from_id(sl3(), "nonsense"), AlgebraError);
}

TEST(Roots, Sl2) {
    const auto rd = root_data(sl2());
    ASSERT_EQ(rd.roots.size(), 2u);
    const auto& alpha = rd.roots[0].positive ? rd.roots[0] : rd.roots[1];
    EXPECT_EQ(alpha.vector_index, kE);
    EXPECT_EQ(rd.roots[alpha.partner].vector_index, kF);
    EXPECT_NEAR(std::abs(alpha.values(0) - 2.0), 0.0, 1e-15);
    EXPECT_NEAR(std::abs(alpha.normalization - 1.0), 0.0, 1e-15);
    EXPECT_LE(oracle::max_abs(rd.principal_element().coeffs - Vector::Unit(3, kH)), 1e-15);
}

TEST(Roots, BracketInvariantAndPairs) {
    for (int n = 2; n <= 5; ++n) {
        const auto a = build_builtin("sl", n);
        const auto rd = root_data(a);
        EXPECT_EQ(rd.roots.size(), static_cast<std::size_t>(n * (n - 1)));
        std::mt19937_64 rng(n);
        for (int k = 0; k < 3; ++k) {
            const AlgebraElement h = rd.split.from_h_coords(oracle::random_real(rng, rd.split.dim_h()));
            for (std::size_t r = 0; r < rd.roots.size(); ++r) {
                const auto& root = rd.roots[r];
                const Vector lhs = ad_operator(a, h).matrix * root.root_vector;
                EXPECT_LE(oracle::max_abs(lhs - rd.evaluate(r, h) * root.root_vector), 1e-12);
                EXPECT_LE(oracle::max_abs(rd.roots[root.partner].values + root.values), 0.0);
            }
        }
        // Simple roots E_{i,i+1} take the value 2 on the principal element.
        const auto nn = static_cast<std::size_t>(n);
        for (std::size_t r = 0; r < rd.roots.size(); ++r) {
            for (std::size_t i = 0; i + 1 < nn; ++i) {
                const std::size_t simple = (nn - 1) + i * (nn - 1) + i;  // E_{i,i+1}
                if (rd.roots[r].vector_index == simple) {
                    EXPECT_NEAR(std::abs(rd.evaluate(r, rd.principal_element()) - 2.0), 0.0, 1e-13);
                }
            }
        }
    }
    EXPECT_THROW(root_data(load_algebra_text(kSl2Text)), AlgebraError);
}
