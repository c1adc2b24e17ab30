#include "dynr/cdyb.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace dynr {

void DiffScheme::validate() const {
    if (kind == SchemeKind::Exact) return;
    if (!(step >= 1e-9 && step <= 1e-2)) {
        std::ostringstream msg;
        msg << "finite-difference step " << step << " outside [1e-9, 1e-2]";
        throw std::invalid_argument(msg.str());
    }
    if (kind == SchemeKind::Richardson && (levels < 1 || levels > 6)) {
        throw std::invalid_argument("Richardson levels must be in [1, 6]");
    }
}

double DiffScheme::default_tolerance() const {
    switch (kind) {
        case SchemeKind::Exact: return 1e-12;
        case SchemeKind::Richardson: return 1e-7;
        case SchemeKind::Central: return 1e-6;
    }
    return 1e-6;
}

nlohmann::json DiffScheme::to_json() const {
    switch (kind) {
        case SchemeKind::Exact: return {{"kind", "exact"}};
        case SchemeKind::Central: return {{"kind", "central"}, {"step", step}};
        case SchemeKind::Richardson: return {{"kind", "richardson"}, {"step", step}, {"levels", levels}};
    }
    return {};
}

nlohmann::json report_to_json(const ResidualReport& r) {
    nlohmann::json point = nlohmann::json::array();
    for (Eigen::Index i = 0; i < r.point.size(); ++i) point.push_back({r.point(i).real(), r.point(i).imag()});
    nlohmann::json j = {
        {"equation", r.equation},
        {"algebra", r.algebra},
        {"point", point},
        {"scheme", r.scheme.to_json()},
        {"norm", r.norm},
        {"tolerance", r.tolerance},
        {"pass", r.pass},
        {"seed", r.seed ? nlohmann::json(*r.seed) : nlohmann::json(nullptr)},
    };
    if (!r.error.empty()) j["error"] = r.error;
    return j;
}

namespace {

ResidualReport start(std::string equation, const LieAlgebra& alg, Vector point, const DiffScheme& scheme,
                     std::optional<double> tolerance) {
    scheme.validate();
    ResidualReport rep;
    rep.equation = std::move(equation);
    rep.algebra = alg.name();
    rep.point = std::move(point);
    rep.scheme = scheme;
    rep.tolerance = tolerance.value_or(scheme.default_tolerance());
    return rep;
}

Vector log_coordinates_or_empty(const LieAlgebra& alg, const GroupElement& m) {
    try {
        return log_map(alg, m).coeffs;
    } catch (const DomainError&) {
        return {};
    }
}

}  // namespace

ResidualReport gcdyb_residual(const LieAlgebra& alg, const GroupRFun& rfun, const GroupElement& m,
                              const DiffScheme& scheme, std::optional<double> tolerance) {
    ResidualReport rep = start("gcdyb", alg, log_coordinates_or_empty(alg, m), scheme, tolerance);
    const std::size_t n = alg.dim();
    const Tensor2 r = rfun(m);
    std::vector<Tensor2> right;
    std::vector<Tensor2> left;
    right.reserve(n);
    left.reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
        right.push_back(group_derivative<Tensor2>(alg, rfun, m, a, Side::Right, scheme));
        left.push_back(group_derivative<Tensor2>(alg, rfun, m, a, Side::Left, scheme));
    }
    // r_a^b = g_{ac} r^{cb}
    const Matrix mixed = alg.gram() * r.comps;
    std::vector<Tensor2> parts;
    parts.reserve(n);
    for (std::size_t a = 0; a < n; ++a) {
        Tensor2 x = (right[a] + left[a]) * 0.5;
        for (std::size_t b = 0; b < n; ++b) {
            const Complex w = mixed(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (w != Complex{}) x += w * (right[b] - left[b]);
        }
        parts.push_back(std::move(x));
    }
    Tensor3 res = cyclic_sum(bracket_12_23(alg, r, r) + assemble_dual_leg(alg, parts));
    res += f_hat(alg) * 0.25;
    rep.norm = max_abs_norm(res);
    rep.residual3 = std::move(res);
    rep.finalize();
    return rep;
}

ResidualReport lie_cdyb_residual(const LieAlgebra& alg, const AlgebraRFun& rfun, const AlgebraElement& omega,
                                 const DiffScheme& scheme, const SubalgebraSplit* split,
                                 std::optional<double> tolerance, const AlgebraRDerivative& analytic) {
    ResidualReport rep = start(split != nullptr ? "h-cdyb" : "lie-cdyb", alg, omega.coeffs,
                               analytic ? DiffScheme::exact() : scheme, tolerance);
    if (analytic && !tolerance) rep.tolerance = 1e-9;
    const auto n = static_cast<Eigen::Index>(alg.dim());
    Matrix directions;
    Matrix duals;
    if (split != nullptr) {
        const double residual = split->perp_residual(omega.coeffs);
        if (residual > 1e-12 * std::max(1.0, omega.coeffs.cwiseAbs().maxCoeff())) {
            throw DomainError("h-cdyb: omega is not in the subalgebra");
        }
        directions = split->h_basis();
        duals = split->h_dual_basis();
    } else {
        directions = Matrix::Identity(n, n);
        duals = alg.gram_inv();
    }
    std::vector<Tensor2> parts;
    parts.reserve(static_cast<std::size_t>(directions.cols()));
    for (Eigen::Index i = 0; i < directions.cols(); ++i) {
        const Vector dir = directions.col(i);
        parts.push_back(analytic ? analytic(omega, dir) : directional_derivative<Tensor2>(rfun, omega, dir, scheme));
    }
    const Tensor2 r = rfun(omega);
    Tensor3 res = cyclic_sum(bracket_12_23(alg, r, r) + assemble_leg(duals, parts));
    res += f_hat(alg) * 0.25;
    rep.norm = max_abs_norm(res);
    rep.residual3 = std::move(res);
    rep.finalize();
    return rep;
}

ResidualReport equivariance_residual(const LieAlgebra& alg, const AlgebraRFun& rfun, const AlgebraElement& omega,
                                     const AlgebraElement& t, const DiffScheme& scheme,
                                     const SubalgebraSplit* split, std::optional<double> tolerance) {
    ResidualReport rep = start("equivariance", alg, omega.coeffs, scheme, tolerance);
    if (split != nullptr) {
        const double scale = std::max(1.0, t.coeffs.cwiseAbs().maxCoeff());
        if (split->perp_residual(t.coeffs) > 1e-12 * scale) {
            throw DomainError("equivariance: T is not in the subalgebra");
        }
    }
    const Matrix omega_m = alg.to_matrix(omega.coeffs);
    std::function<Tensor2(double)> curve = [&](double s) {
        const Matrix g = exp_map(alg, AlgebraElement{t.coeffs * s}).matrix;
        const Matrix g_inv = exp_map(alg, AlgebraElement{-t.coeffs * s}).matrix;
        Vector conj = alg.expand(g * omega_m * g_inv);
        if (split != nullptr) conj = split->proj_h() * conj;
        return rfun(AlgebraElement{conj});
    };
    const Tensor2 lhs = differentiate(curve, scheme);
    const Tensor2 rhs = ad_action(alg, t, rfun(omega));
    Tensor2 res = lhs - rhs;
    rep.norm = max_abs_norm(res);
    rep.residual2 = std::move(res);
    rep.finalize();
    return rep;
}

ResidualReport mcybe_residual(const LieAlgebra& alg, const Tensor2& r, std::optional<double> tolerance) {
    ResidualReport rep = start("mcybe", alg, Vector(), DiffScheme::exact(), tolerance);
    Tensor3 res = cyclic_sum(bracket_12_23(alg, r, r));
    res += f_hat(alg) * 0.25;
    rep.norm = max_abs_norm(res);
    rep.residual3 = std::move(res);
    rep.finalize();
    return rep;
}

}  // namespace dynr
