#include "dynr/tensor.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace dynr {

Tensor3& Tensor3::operator+=(const Tensor3& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
    return *this;
}

Tensor3& Tensor3::operator-=(const Tensor3& o) {
    for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
    return *this;
}

Tensor3& Tensor3::operator*=(Complex s) {
    for (auto& v : data_) v *= s;
    return *this;
}

Tensor2 casimir_hat(const LieAlgebra& alg) { return {alg.gram_inv()}; }

Tensor3 f_hat(const LieAlgebra& alg) {
    const std::size_t n = alg.dim();
    Tensor3 out(n);
    const Matrix& gi = alg.gram_inv();
    for (std::size_t c = 0; c < n; ++c) {
        const Matrix raised = gi * alg.f_slice(c) * gi.transpose();
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q) out(p, q, c) = raised(p, q);
    }
    return out;
}

Tensor3 bracket_12_23(const LieAlgebra& alg, const Tensor2& r, const Tensor2& s) {
    const std::size_t n = alg.dim();
    if (r.dim() != n || s.dim() != n) {
        throw AlgebraError("bracket_12_23: tensor dimension does not match the algebra");
    }
    Tensor3 out(n);
    for (std::size_t b = 0; b < n; ++b) {
        const Matrix m = r.comps * alg.f_slice(b) * s.comps;
        for (std::size_t a = 0; a < n; ++a)
            for (std::size_t c = 0; c < n; ++c) out(a, b, c) = m(a, c);
    }
    return out;
}

Tensor3 cyclic_rotate(const Tensor3& t) {
    const std::size_t n = t.dim();
    Tensor3 out(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) out(a, b, c) = t(c, a, b);
    return out;
}

Tensor3 cyclic_sum(const Tensor3& t) {
    const std::size_t n = t.dim();
    Tensor3 out(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) out(a, b, c) = t(a, b, c) + t(c, a, b) + t(b, c, a);
    return out;
}

Tensor2 leg_transform(const Tensor2& t, const LinearOperator& a, int leg) {
    switch (leg) {
        case 1: return {a.matrix * t.comps};
        case 2: return {t.comps * a.matrix.transpose()};
        default: throw AlgebraError("leg_transform: leg must be 1 or 2 for a Tensor2");
    }
}

Tensor3 leg_transform(const Tensor3& t, const LinearOperator& op, int leg) {
    if (leg < 1 || leg > 3) {
        throw AlgebraError("leg_transform: leg must be 1, 2 or 3 for a Tensor3");
    }
    const std::size_t n = t.dim();
    const Matrix& a = op.matrix;
    Tensor3 out(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            for (std::size_t k = 0; k < n; ++k) {
                Complex s{};
                for (std::size_t x = 0; x < n; ++x) {
                    switch (leg) {
                        case 1: s += a(i, x) * t(x, j, k); break;
                        case 2: s += a(j, x) * t(i, x, k); break;
                        default: s += a(k, x) * t(i, j, x); break;
                    }
                }
                out(i, j, k) = s;
            }
    return out;
}

Tensor3 assemble_leg(const Matrix& dual_vectors, const std::vector<Tensor2>& parts) {
    if (static_cast<std::size_t>(dual_vectors.cols()) != parts.size()) {
        throw AlgebraError("assemble: expected one part per first-leg vector");
    }
    const std::size_t n = static_cast<std::size_t>(dual_vectors.rows());
    Tensor3 out(n);
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (parts[i].dim() != n) throw AlgebraError("assemble: part has wrong dimension");
        for (std::size_t p = 0; p < n; ++p) {
            const Complex w = dual_vectors(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(i));
            if (w == Complex{}) continue;
            for (std::size_t b = 0; b < n; ++b)
                for (std::size_t c = 0; c < n; ++c) out(p, b, c) += w * parts[i].comps(b, c);
        }
    }
    return out;
}

Tensor3 assemble_dual_leg(const LieAlgebra& alg, const std::vector<Tensor2>& parts) {
    if (parts.size() != alg.dim()) {
        throw AlgebraError("assemble_dual_leg: expected " + std::to_string(alg.dim()) + " parts");
    }
    // Column a of g^{-1} holds the coefficients of T^a.
    return assemble_leg(alg.gram_inv(), parts);
}

Tensor2 ad_action(const LieAlgebra& alg, const AlgebraElement& x, const Tensor2& t) {
    const Matrix adx = ad_operator(alg, x).matrix;
    return {adx * t.comps + t.comps * adx.transpose()};
}

Tensor3 ad_action(const LieAlgebra& alg, const AlgebraElement& x, const Tensor3& t) {
    const LinearOperator adx = ad_operator(alg, x);
    return leg_transform(t, adx, 1) + leg_transform(t, adx, 2) + leg_transform(t, adx, 3);
}

Tensor2 operator_to_tensor(const LieAlgebra& alg, const LinearOperator& op) {
    return {op.matrix * alg.gram_inv()};
}

LinearOperator tensor_to_operator(const LieAlgebra& alg, const Tensor2& t) {
    return {t.comps * alg.gram()};
}

double max_abs_norm(const Tensor2& t) {
    return t.comps.size() == 0 ? 0.0 : t.comps.cwiseAbs().maxCoeff();
}

double max_abs_norm(const Tensor3& t) {
    double m = 0.0;
    for (const auto& v : t.data()) m = std::max(m, std::abs(v));
    return m;
}

double antisymmetry_defect(const Tensor2& t) {
    return max_abs_norm(Tensor2{t.comps + t.comps.transpose()});
}

Matrix to_representation(const LieAlgebra& alg, const Tensor2& t) {
    const auto d = static_cast<Eigen::Index>(alg.rep_dim());
    Matrix out = Matrix::Zero(d * d, d * d);
    for (std::size_t a = 0; a < alg.dim(); ++a) {
        for (std::size_t b = 0; b < alg.dim(); ++b) {
            const Complex w = t.comps(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (w == Complex{}) continue;
            const Matrix& x = alg.generator(a);
            const Matrix& y = alg.generator(b);
            for (Eigen::Index i = 0; i < d; ++i)
                for (Eigen::Index j = 0; j < d; ++j) out.block(i * d, j * d, d, d) += w * x(i, j) * y;
        }
    }
    return out;
}

namespace {

nlohmann::json header(const LieAlgebra& alg, int rank) {
    return {{"algebra", alg.name()}, {"basis_hash", alg.basis_hash()}, {"rank", rank}, {"dim", alg.dim()}};
}

nlohmann::json encode(const Complex* begin, std::size_t count) {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < count; ++i) arr.push_back({begin[i].real(), begin[i].imag()});
    return arr;
}

std::vector<Complex> decode(const LieAlgebra& alg, const nlohmann::json& j, int rank) {
    try {
        if (j.at("algebra").get<std::string>() != alg.name()) {
            throw AlgebraError("tensor JSON: algebra mismatch");
        }
        if (j.at("basis_hash").get<std::string>() != alg.basis_hash()) {
            throw AlgebraError("tensor JSON: basis order hash mismatch");
        }
        if (j.at("rank").get<int>() != rank) throw AlgebraError("tensor JSON: rank mismatch");
        if (j.at("dim").get<std::size_t>() != alg.dim()) throw AlgebraError("tensor JSON: dim mismatch");
        std::size_t expected = 1;
        for (int r = 0; r < rank; ++r) expected *= alg.dim();
        const auto& comps = j.at("components");
        if (!comps.is_array() || comps.size() != expected) {
            throw AlgebraError("tensor JSON: wrong number of components");
        }
        std::vector<Complex> out;
        out.reserve(expected);
        for (const auto& c : comps) {
            if (!c.is_array() || c.size() != 2) throw AlgebraError("tensor JSON: component must be [re, im]");
            out.emplace_back(c[0].get<double>(), c[1].get<double>());
        }
        return out;
    } catch (const nlohmann::json::exception& e) {
        throw AlgebraError(std::string("tensor JSON: ") + e.what());
    }
}

}  // namespace

nlohmann::json tensor_to_json(const LieAlgebra& alg, const Tensor2& t) {
    auto j = header(alg, 2);
    // Row-major: component (a, b) at index a * n + b.
    const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor> rm = t.comps;
    j["components"] = encode(rm.data(), static_cast<std::size_t>(rm.size()));
    return j;
}

nlohmann::json tensor_to_json(const LieAlgebra& alg, const Tensor3& t) {
    auto j = header(alg, 3);
    j["components"] = encode(t.data().data(), t.data().size());
    return j;
}

Tensor2 tensor2_from_json(const LieAlgebra& alg, const nlohmann::json& j) {
    const auto v = decode(alg, j, 2);
    const auto n = static_cast<Eigen::Index>(alg.dim());
    Tensor2 t = Tensor2::zero(alg.dim());
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b) t.comps(a, b) = v[static_cast<std::size_t>(a * n + b)];
    return t;
}

Tensor3 tensor3_from_json(const LieAlgebra& alg, const nlohmann::json& j) {
    Tensor3 t(alg.dim());
    t.data() = decode(alg, j, 3);
    return t;
}

}  // namespace dynr
