#pragma once

// Numerical differentiation on group and algebra domains, and residuals of
// the dynamical Yang-Baxter equations. Every residual is written as
// LHS + f/4 so that solutions give zero.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dynr/lie_algebra.hpp"
#include "dynr/tensor.hpp"

namespace dynr {

enum class SchemeKind { Central, Richardson, Exact };

struct DiffScheme {
    SchemeKind kind = SchemeKind::Richardson;
    double step = 1e-5;
    int levels = 2;

    static DiffScheme central(double h = 1e-5) { return {SchemeKind::Central, h, 1}; }
    static DiffScheme richardson(double h = 1e-5, int levels = 2) { return {SchemeKind::Richardson, h, levels}; }
    /// Marker for residuals that involve no differentiation.
    static DiffScheme exact() { return {SchemeKind::Exact, 0.0, 0}; }

    /// Throws std::invalid_argument unless h in [1e-9, 1e-2] and levels in [1, 6].
    void validate() const;
    /// Tolerance ladder: 1e-12 exact, 1e-7 Richardson, 1e-6 central.
    [[nodiscard]] double default_tolerance() const;
    [[nodiscard]] nlohmann::json to_json() const;
};

namespace detail {

template <class V>
V central_difference(const std::function<V(double)>& curve, double h) {
    V forward = curve(h);
    V backward = curve(-h);
    forward -= backward;
    return forward * (0.5 / h);
}

}  // namespace detail

/// d/dt curve(t) at t = 0 with the given scheme. V needs -=, +=, and
/// multiplication by double.
template <class V>
V differentiate(const std::function<V(double)>& curve, const DiffScheme& scheme) {
    scheme.validate();
    if (scheme.kind == SchemeKind::Exact) {
        throw std::invalid_argument("differentiate: exact scheme has no step");
    }
    const int levels = scheme.kind == SchemeKind::Central ? 1 : scheme.levels;
    std::vector<V> row;
    double h = scheme.step;
    for (int i = 0; i < levels; ++i, h *= 0.5) {
        std::vector<V> next;
        next.push_back(detail::central_difference<V>(curve, h));
        double factor = 4.0;
        for (std::size_t j = 0; j < row.size(); ++j, factor *= 4.0) {
            V improved = next[j];
            V delta = next[j];
            delta -= row[j];
            improved += delta * (1.0 / (factor - 1.0));
            next.push_back(std::move(improved));
        }
        row = std::move(next);
    }
    return row.back();
}

enum class Side { Right, Left };

/// (R_a psi)(M) = d/dt psi(M e^{t T_a}) or (L_a psi)(M) = d/dt psi(e^{t T_a} M).
template <class V>
V group_derivative(const LieAlgebra& algebra, const std::function<V(const GroupElement&)>& fun,
                   const GroupElement& m, std::size_t a, Side side, const DiffScheme& scheme) {
    const Vector unit = Vector::Unit(static_cast<Eigen::Index>(algebra.dim()), static_cast<Eigen::Index>(a));
    std::function<V(double)> curve = [&](double t) {
        const GroupElement flow = exp_map(algebra, AlgebraElement{unit * t});
        return fun(GroupElement{side == Side::Right ? Matrix(m.matrix * flow.matrix) : Matrix(flow.matrix * m.matrix)});
    };
    return differentiate(curve, scheme);
}

/// d/dt fun(omega + t direction) at t = 0.
template <class V>
V directional_derivative(const std::function<V(const AlgebraElement&)>& fun, const AlgebraElement& omega,
                         const Vector& direction, const DiffScheme& scheme) {
    std::function<V(double)> curve = [&](double t) { return fun(AlgebraElement{omega.coeffs + t * direction}); };
    return differentiate(curve, scheme);
}

/// Derivative along the coordinate omega^a.
template <class V>
V flat_derivative(const std::function<V(const AlgebraElement&)>& fun, const AlgebraElement& omega, std::size_t a,
                  const DiffScheme& scheme) {
    const auto n = omega.coeffs.size();
    return directional_derivative<V>(fun, omega, Vector::Unit(n, static_cast<Eigen::Index>(a)), scheme);
}

struct ResidualReport {
    std::string equation;
    std::string algebra;
    Vector point;                  // log coordinates of the evaluation point
    DiffScheme scheme;
    double norm = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    std::optional<std::uint64_t> seed;
    std::optional<Tensor3> residual3;
    std::optional<Tensor2> residual2;
    std::string error;             // non-empty if evaluation failed (domain violation)

    void finalize() { pass = error.empty() && norm <= tolerance; }
};

/// JSON schema: {equation, algebra, point, scheme, norm, tolerance, pass, seed[, error]}.
nlohmann::json report_to_json(const ResidualReport& report);

using GroupRFun = std::function<Tensor2(const GroupElement&)>;
using AlgebraRFun = std::function<Tensor2(const AlgebraElement&)>;
/// Optional analytic derivative provider: (omega, direction) -> d r.
using AlgebraRDerivative = std::function<Tensor2(const AlgebraElement&, const Vector&)>;

/// cyclic_sum([r12, r23] + T^a_1 (D+_a / 2 + r_a^b D-_b) r23) + f/4 with
/// r_a^b = g_ac r^{cb}.
ResidualReport gcdyb_residual(const LieAlgebra& algebra, const GroupRFun& rfun, const GroupElement& m,
                              const DiffScheme& scheme, std::optional<double> tolerance = std::nullopt);

/// cyclic_sum([r12, r23] + D^i_1 d_i r23) + f/4. With split == nullptr the
/// sum runs over the whole algebra (D^a = T^a); otherwise over H with
/// dual basis H^i and omega must lie in H.
ResidualReport lie_cdyb_residual(const LieAlgebra& algebra, const AlgebraRFun& rfun, const AlgebraElement& omega,
                                 const DiffScheme& scheme, const SubalgebraSplit* split = nullptr,
                                 std::optional<double> tolerance = std::nullopt,
                                 const AlgebraRDerivative& analytic = nullptr);

/// d/dt r(e^{tT} omega e^{-tT}) - (ad T (x) 1 + 1 (x) ad T) r(omega). With a
/// split, T must lie in H.
ResidualReport equivariance_residual(const LieAlgebra& algebra, const AlgebraRFun& rfun,
                                     const AlgebraElement& omega, const AlgebraElement& t, const DiffScheme& scheme,
                                     const SubalgebraSplit* split = nullptr,
                                     std::optional<double> tolerance = std::nullopt);

/// cyclic_sum([r12, r23]) + f/4, pure tensor arithmetic.
ResidualReport mcybe_residual(const LieAlgebra& algebra, const Tensor2& r,
                              std::optional<double> tolerance = std::nullopt);

}  // namespace dynr
