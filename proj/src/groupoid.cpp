#include "dynr/groupoid.hpp"

#include <cmath>
#include <functional>

#include <nlohmann/json.hpp>

namespace dynr {

std::string to_string(MatrixCoordinate::Factor factor) {
    switch (factor) {
        case MatrixCoordinate::Factor::G: return "g";
        case MatrixCoordinate::Factor::Initial: return "I";
        case MatrixCoordinate::Factor::Final: return "F";
    }
    return "?";
}

namespace {

LinearOperator ad_inverse(const LieAlgebra& alg, const GroupElement& m) {
    return Ad_operator(alg, GroupElement{m.matrix.inverse()});
}

std::size_t slot(MatrixCoordinate::Factor f) {
    switch (f) {
        case MatrixCoordinate::Factor::G: return BivectorTable::kG;
        case MatrixCoordinate::Factor::Initial: return BivectorTable::kI;
        case MatrixCoordinate::Factor::Final: return BivectorTable::kF;
    }
    return 0;
}

const GroupElement& factor_of(const GroupoidPoint& p, MatrixCoordinate::Factor f) {
    switch (f) {
        case MatrixCoordinate::Factor::G: return p.g;
        case MatrixCoordinate::Factor::Initial: return p.m_initial;
        case MatrixCoordinate::Factor::Final: return p.m_final;
    }
    return p.g;
}

GroupElement& factor_of(GroupoidPoint& p, MatrixCoordinate::Factor f) {
    return const_cast<GroupElement&>(factor_of(static_cast<const GroupoidPoint&>(p), f));
}

void check_coordinate(const LieAlgebra& alg, const MatrixCoordinate& c) {
    if (c.row >= alg.rep_dim() || c.col >= alg.rep_dim()) {
        throw AlgebraError("matrix coordinate out of range");
    }
}

// (X T_a)(i, j) for every a.
Vector left_products(const LieAlgebra& alg, const Matrix& x, std::size_t i, std::size_t j) {
    const auto n = static_cast<Eigen::Index>(alg.dim());
    Vector out(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        out(a) = (x.row(static_cast<Eigen::Index>(i)) * alg.generator(static_cast<std::size_t>(a))
                      .col(static_cast<Eigen::Index>(j)))(0, 0);
    }
    return out;
}

// (T_a X)(i, j) for every a.
Vector right_products(const LieAlgebra& alg, const Matrix& x, std::size_t i, std::size_t j) {
    const auto n = static_cast<Eigen::Index>(alg.dim());
    Vector out(n);
    for (Eigen::Index a = 0; a < n; ++a) {
        out(a) = (alg.generator(static_cast<std::size_t>(a)).row(static_cast<Eigen::Index>(i)) *
                  x.col(static_cast<Eigen::Index>(j)))(0, 0);
    }
    return out;
}

Complex pair(const Vector& u, const Matrix& t, const Vector& v) { return (u.transpose() * t * v)(0, 0); }

// Ordered bracket for factor(a) <= factor(b) in the order g, I, F.
Complex ordered_pb(const LieAlgebra& alg, const GroupoidPoint& p, const MatrixCoordinate& a,
                   const MatrixCoordinate& b, const GroupRFun& rfun) {
    using F = MatrixCoordinate::Factor;
    const Matrix& g = p.g.matrix;
    const Matrix& mi = p.m_initial.matrix;
    const Matrix& mf = p.m_final.matrix;
    if (a.factor == F::G && b.factor == F::G) {
        const Matrix ri = rfun(p.m_initial).comps;
        const Matrix rf = rfun(p.m_final).comps;
        return pair(left_products(alg, g, a.row, a.col), ri, left_products(alg, g, b.row, b.col)) -
               pair(right_products(alg, g, a.row, a.col), rf, right_products(alg, g, b.row, b.col));
    }
    if (a.factor == F::G && b.factor == F::Initial) {
        return pair(left_products(alg, g, a.row, a.col), theta(alg, rfun, p.m_initial).comps,
                    left_products(alg, mi, b.row, b.col));
    }
    if (a.factor == F::G && b.factor == F::Final) {
        return pair(right_products(alg, g, a.row, a.col), theta(alg, rfun, p.m_final).comps,
                    left_products(alg, mf, b.row, b.col));
    }
    if (a.factor == F::Initial && b.factor == F::Initial) {
        return pair(left_products(alg, mi, a.row, a.col), delta(alg, rfun, p.m_initial).comps,
                    left_products(alg, mi, b.row, b.col));
    }
    if (a.factor == F::Final && b.factor == F::Final) {
        return -pair(left_products(alg, mf, a.row, a.col), delta(alg, rfun, p.m_final).comps,
                     left_products(alg, mf, b.row, b.col));
    }
    return {};  // {M^I, M^F} = 0
}

}  // namespace

Tensor2 theta(const LieAlgebra& alg, const GroupRFun& rfun, const GroupElement& m) {
    const Tensor2 r = rfun(m);
    const Tensor2 half = casimir_hat(alg) * 0.5;
    return (r + half) - leg_transform(r - half, ad_inverse(alg, m), 2);
}

Tensor2 delta(const LieAlgebra& alg, const GroupRFun& rfun, const GroupElement& m) {
    const Tensor2 th = theta(alg, rfun, m);
    return th - leg_transform(th, ad_inverse(alg, m), 1);
}

Complex generator_pb(const LieAlgebra& alg, const GroupoidPoint& p, const MatrixCoordinate& a,
                     const MatrixCoordinate& b, const GroupRFun& rfun, double kappa) {
    check_coordinate(alg, a);
    check_coordinate(alg, b);
    if (slot(a.factor) <= slot(b.factor)) return ordered_pb(alg, p, a, b, rfun) / kappa;
    return -ordered_pb(alg, p, b, a, rfun) / kappa;
}

Matrix BivectorTable::assembled() const {
    const auto n = static_cast<Eigen::Index>(dim_);
    Matrix out(3 * n, 3 * n);
    for (std::size_t a = 0; a < 3; ++a)
        for (std::size_t b = 0; b < 3; ++b)
            out.block(static_cast<Eigen::Index>(a) * n, static_cast<Eigen::Index>(b) * n, n, n) = blocks_[a][b];
    return out;
}

double BivectorTable::antisymmetry_defect() const {
    const Matrix m = assembled();
    return m.size() == 0 ? 0.0 : (m + m.transpose()).cwiseAbs().maxCoeff();
}

BivectorTable bivector(const LieAlgebra& alg, const GroupoidPoint& p, const GroupRFun& rfun, double kappa) {
    const std::size_t n = alg.dim();
    const auto ni = static_cast<Eigen::Index>(n);
    const LinearOperator ad_g_inv = ad_inverse(alg, p.g);
    const Tensor2 ri = rfun(p.m_initial);
    const Tensor2 rf = rfun(p.m_final);
    const Tensor2 rf_conj = leg_transform(leg_transform(rf, ad_g_inv, 1), ad_g_inv, 2);

    std::array<std::array<Matrix, 3>, 3> blocks;
    const double s = 1.0 / kappa;
    blocks[0][0] = s * (ri - rf_conj).comps;
    blocks[0][1] = s * theta(alg, rfun, p.m_initial).comps;
    blocks[0][2] = s * leg_transform(theta(alg, rfun, p.m_final), ad_g_inv, 1).comps;
    blocks[1][1] = s * delta(alg, rfun, p.m_initial).comps;
    blocks[2][2] = -s * delta(alg, rfun, p.m_final).comps;
    blocks[1][2] = Matrix::Zero(ni, ni);
    blocks[1][0] = -blocks[0][1].transpose();
    blocks[2][0] = -blocks[0][2].transpose();
    blocks[2][1] = -blocks[1][2].transpose();
    return BivectorTable(n, std::move(blocks));
}

Vector coordinate_gradient(const LieAlgebra& alg, const GroupoidPoint& p, const MatrixCoordinate& c) {
    check_coordinate(alg, c);
    const auto n = static_cast<Eigen::Index>(alg.dim());
    Vector out = Vector::Zero(3 * n);
    out.segment(static_cast<Eigen::Index>(slot(c.factor)) * n, n) =
        left_products(alg, factor_of(p, c.factor).matrix, c.row, c.col);
    return out;
}

namespace {

Complex contract(const Matrix& pi, const Vector& u, const Vector& v) { return (u.transpose() * pi * v)(0, 0); }

// {B, C} as a function of the point through the bivector.
Complex bracket_via(const LieAlgebra& alg, const GroupoidPoint& p, const MatrixCoordinate& b,
                    const MatrixCoordinate& c, const GroupRFun& rfun, double kappa) {
    const Matrix pi = bivector(alg, p, rfun, kappa).assembled();
    return contract(pi, coordinate_gradient(alg, p, b), coordinate_gradient(alg, p, c));
}

struct ScalarValue {
    Complex v;
    ScalarValue& operator+=(const ScalarValue& o) { v += o.v; return *this; }
    ScalarValue& operator-=(const ScalarValue& o) { v -= o.v; return *this; }
    friend ScalarValue operator*(ScalarValue a, double s) { a.v *= s; return a; }
};

}  // namespace

Complex bivector_pb(const LieAlgebra& alg, const GroupoidPoint& p, const MatrixCoordinate& a,
                    const MatrixCoordinate& b, const GroupRFun& rfun, double kappa) {
    return bracket_via(alg, p, a, b, rfun, kappa);
}

double jacobi_residual(const LieAlgebra& alg, const GroupoidPoint& p, const std::array<MatrixCoordinate, 3>& coords,
                       const GroupRFun& rfun, double kappa, const DiffScheme& scheme) {
    const std::size_t n = alg.dim();
    const Matrix pi = bivector(alg, p, rfun, kappa).assembled();
    Complex total{};
    for (std::size_t k = 0; k < 3; ++k) {
        const MatrixCoordinate& a = coords[k];
        const MatrixCoordinate& b = coords[(k + 1) % 3];
        const MatrixCoordinate& c = coords[(k + 2) % 3];
        // pi couples A's factor to all three, so {B, C} is differentiated in each.
        const Vector grad_a = coordinate_gradient(alg, p, a);
        Vector grad_bc = Vector::Zero(static_cast<Eigen::Index>(3 * n));
        for (std::size_t f = 0; f < 3; ++f) {
            const auto factor = static_cast<MatrixCoordinate::Factor>(f);
            for (std::size_t d = 0; d < n; ++d) {
                const Vector unit = Vector::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
                std::function<ScalarValue(double)> curve = [&](double t) {
                    GroupoidPoint moved = p;
                    GroupElement& x = factor_of(moved, factor);
                    x.matrix = x.matrix * exp_map(alg, AlgebraElement{unit * t}).matrix;
                    return ScalarValue{bracket_via(alg, moved, b, c, rfun, kappa)};
                };
                grad_bc(static_cast<Eigen::Index>(f * n + d)) = differentiate(curve, scheme).v;
            }
        }
        total += contract(pi, grad_a, grad_bc);
    }
    return std::abs(total);
}

GroupoidPoint compose(const GroupoidPoint& p, const GroupoidPoint& q) {
    const Matrix diff = p.m_initial.matrix - q.m_final.matrix;
    if (diff.size() == 0 || diff.cwiseAbs().maxCoeff() > kComposeTolerance) {
        throw AlgebraError("compose: source of the first arrow does not match the target of the second");
    }
    return {p.m_final, GroupElement{p.g.matrix * q.g.matrix}, q.m_initial};
}

namespace {

nlohmann::json matrix_to_json(const Matrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const nlohmann::json& j, std::size_t d) {
    if (!j.is_array() || j.size() != d) throw AlgebraError("groupoid JSON: wrong number of rows");
    Matrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i) {
        const auto& row = j[i];
        if (!row.is_array() || row.size() != d) throw AlgebraError("groupoid JSON: wrong number of columns");
        for (std::size_t k = 0; k < d; ++k) {
            const auto& e = row[k];
            if (!e.is_array() || e.size() != 2) throw AlgebraError("groupoid JSON: entry must be [re, im]");
            m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(k)) = {e[0].get<double>(), e[1].get<double>()};
        }
    }
    return m;
}

}  // namespace

nlohmann::json point_to_json(const LieAlgebra& alg, const GroupoidPoint& p) {
    return {{"algebra", alg.name()},
            {"M_F", matrix_to_json(p.m_final.matrix)},
            {"g", matrix_to_json(p.g.matrix)},
            {"M_I", matrix_to_json(p.m_initial.matrix)}};
}

GroupoidPoint point_from_json(const LieAlgebra& alg, const nlohmann::json& j) {
    try {
        if (j.at("algebra").get<std::string>() != alg.name()) throw AlgebraError("groupoid JSON: algebra mismatch");
        const std::size_t d = alg.rep_dim();
        return {GroupElement{matrix_from_json(j.at("M_F"), d)}, GroupElement{matrix_from_json(j.at("g"), d)},
                GroupElement{matrix_from_json(j.at("M_I"), d)}};
    } catch (const nlohmann::json::exception& e) {
        throw AlgebraError(std::string("groupoid JSON: ") + e.what());
    }
}

}  // namespace dynr
