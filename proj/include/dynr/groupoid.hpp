#pragma once

// The Poisson-Lie groupoid of triples (M^F, g, M^I): structure functions,
// the generator bracket, a left-trivialized bivector and Jacobi checks.

#include <array>
#include <cstddef>

#include <nlohmann/json_fwd.hpp>

#include "dynr/cdyb.hpp"
#include "dynr/lie_algebra.hpp"
#include "dynr/tensor.hpp"

namespace dynr {

struct GroupoidPoint {
    GroupElement m_final;    // M^F, the target
    GroupElement g;
    GroupElement m_initial;  // M^I, the source
};

/// Coordinate function X -> X(row, col) on one factor of the triple.
struct MatrixCoordinate {
    enum class Factor { G, Initial, Final };
    Factor factor = Factor::G;
    std::size_t row = 0;
    std::size_t col = 0;
};

std::string to_string(MatrixCoordinate::Factor factor);

/// r_+(M) - (1 (x) Ad M^-1) r_-(M), r_+- = r +- I/2.
Tensor2 theta(const LieAlgebra& algebra, const GroupRFun& rfun, const GroupElement& m);

/// theta - (Ad M^-1 (x) 1) theta.
Tensor2 delta(const LieAlgebra& algebra, const GroupRFun& rfun, const GroupElement& m);

/// Bracket of two matrix-element coordinates from the closed-form table,
/// contracted in the representation.
Complex generator_pb(const LieAlgebra& algebra, const GroupoidPoint& point, const MatrixCoordinate& a,
                     const MatrixCoordinate& b, const GroupRFun& rfun, double kappa = 1.0);

/// Blocks indexed by factor in the order (g, I, F). Entry (a, b) of block
/// (A, B) pairs the left-invariant derivative L^A_a with L^B_b.
class BivectorTable {
public:
    static constexpr std::size_t kG = 0;
    static constexpr std::size_t kI = 1;
    static constexpr std::size_t kF = 2;

    BivectorTable(std::size_t dim, std::array<std::array<Matrix, 3>, 3> blocks)
        : dim_(dim), blocks_(std::move(blocks)) {}

    [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
    [[nodiscard]] const Matrix& block(std::size_t a, std::size_t b) const { return blocks_.at(a).at(b); }
    /// The 3n x 3n matrix.
    [[nodiscard]] Matrix assembled() const;
    /// max |Pi + Pi^T| over the assembled matrix.
    [[nodiscard]] double antisymmetry_defect() const;

private:
    std::size_t dim_;
    std::array<std::array<Matrix, 3>, 3> blocks_;
};

BivectorTable bivector(const LieAlgebra& algebra, const GroupoidPoint& point, const GroupRFun& rfun,
                       double kappa = 1.0);

/// Left-invariant derivatives (X T_a)(row, col) of a coordinate, one per
/// basis element, placed in the slot of its factor (length 3n).
Vector coordinate_gradient(const LieAlgebra& algebra, const GroupoidPoint& point, const MatrixCoordinate& c);

/// Bracket of two coordinates through the bivector.
Complex bivector_pb(const LieAlgebra& algebra, const GroupoidPoint& point, const MatrixCoordinate& a,
                    const MatrixCoordinate& b, const GroupRFun& rfun, double kappa = 1.0);

/// |sum_cyc {A, {B, C}}|. The outer derivative of {B, C} along the factor
/// of the first argument uses the given scheme; inner derivatives of
/// matrix-element coordinates are exact.
double jacobi_residual(const LieAlgebra& algebra, const GroupoidPoint& point,
                       const std::array<MatrixCoordinate, 3>& coords, const GroupRFun& rfun, double kappa,
                       const DiffScheme& scheme);

/// Composability tolerance on max |M^I - Mbar^F|.
inline constexpr double kComposeTolerance = 1e-10;

/// (M^F, g, M^I)(Mbar^F, gbar, Mbar^I) = (M^F, g gbar, Mbar^I). Throws
/// AlgebraError unless M^I = Mbar^F.
GroupoidPoint compose(const GroupoidPoint& p, const GroupoidPoint& q);

inline const GroupElement& source(const GroupoidPoint& p) { return p.m_initial; }
inline const GroupElement& target(const GroupoidPoint& p) { return p.m_final; }

// JSON: {"algebra", "M_F", "g", "M_I"}, each matrix a list of rows of [re, im].
nlohmann::json point_to_json(const LieAlgebra& algebra, const GroupoidPoint& p);
GroupoidPoint point_from_json(const LieAlgebra& algebra, const nlohmann::json& j);

}  // namespace dynr
