#pragma once

// Reference computations that avoid the library's index conventions:
// everything is done with explicit Kronecker products in the defining
// representation and re-expanded through the trace pairing.

#include <cmath>
#include <random>

#include "dynr/lie_algebra.hpp"
#include "dynr/tensor.hpp"

namespace oracle {

using dynr::Complex;
using dynr::LieAlgebra;
using dynr::Matrix;
using dynr::Vector;

inline Matrix kron(const Matrix& a, const Matrix& b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); ++i)
        for (Eigen::Index j = 0; j < a.cols(); ++j)
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    return out;
}

inline Matrix identity(const LieAlgebra& alg) {
    const auto d = static_cast<Eigen::Index>(alg.rep_dim());
    return Matrix::Identity(d, d);
}

/// sum t^{ab} T_a (x) T_b as a d^2 x d^2 matrix.
inline Matrix rep2(const LieAlgebra& alg, const Matrix& t) {
    const auto d = static_cast<Eigen::Index>(alg.rep_dim());
    Matrix out = Matrix::Zero(d * d, d * d);
    for (std::size_t a = 0; a < alg.dim(); ++a)
        for (std::size_t b = 0; b < alg.dim(); ++b)
            out += t(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b)) *
                   kron(alg.generator(a), alg.generator(b));
    return out;
}

/// Embeds a two-leg representation matrix on legs (1,2), (2,3) or (1,3).
inline Matrix place(const LieAlgebra& alg, const Matrix& t, int i, int j) {
    const Matrix id = identity(alg);
    const auto d = static_cast<Eigen::Index>(alg.rep_dim());
    Matrix out = Matrix::Zero(d * d * d, d * d * d);
    for (std::size_t a = 0; a < alg.dim(); ++a)
        for (std::size_t b = 0; b < alg.dim(); ++b) {
            const Complex w = t(static_cast<Eigen::Index>(a), static_cast<Eigen::Index>(b));
            if (w == Complex{}) continue;
            Matrix legs[3] = {id, id, id};
            legs[i - 1] = alg.generator(a);
            legs[j - 1] = alg.generator(b);
            out += w * kron(kron(legs[0], legs[1]), legs[2]);
        }
    return out;
}

/// Coefficients c^{ab} of a d^2 x d^2 matrix in span{T_a (x) T_b}.
inline Matrix expand2(const LieAlgebra& alg, const Matrix& m) {
    const auto n = static_cast<Eigen::Index>(alg.dim());
    Matrix pairing(n, n);
    for (Eigen::Index a = 0; a < n; ++a)
        for (Eigen::Index b = 0; b < n; ++b)
            pairing(a, b) = (m * kron(alg.generator(static_cast<std::size_t>(a)),
                                      alg.generator(static_cast<std::size_t>(b))))
                                .trace();
    const Matrix gi = alg.gram_inv();
    return gi * pairing * gi.transpose();
}

/// Coefficients c^{abc} of a d^3 x d^3 matrix.
inline dynr::Tensor3 expand3(const LieAlgebra& alg, const Matrix& m) {
    const std::size_t n = alg.dim();
    dynr::Tensor3 pairing(n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c)
                pairing(a, b, c) =
                    (m * kron(kron(alg.generator(a), alg.generator(b)), alg.generator(c))).trace();
    dynr::Tensor3 out = pairing;
    const Matrix gi = alg.gram_inv();
    for (int leg = 1; leg <= 3; ++leg) out = dynr::leg_transform(out, dynr::LinearOperator{gi}, leg);
    return out;
}

inline Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

/// [r_12, s_23] computed in the representation.
inline dynr::Tensor3 bracket_12_23(const LieAlgebra& alg, const Matrix& r, const Matrix& s) {
    return expand3(alg, commutator(place(alg, r, 1, 2), place(alg, s, 2, 3)));
}

/// [r12, r13] + [r12, r23] + [r13, r23] in the representation.
inline Matrix classical_yb_rep(const LieAlgebra& alg, const Matrix& r) {
    const Matrix r12 = place(alg, r, 1, 2);
    const Matrix r13 = place(alg, r, 1, 3);
    const Matrix r23 = place(alg, r, 2, 3);
    return commutator(r12, r13) + commutator(r12, r23) + commutator(r13, r23);
}

/// Brute-force [[T_a, T_b]] from the matrices: coefficients of the
/// commutator through the trace pairing.
inline Vector bracket_coeffs(const LieAlgebra& alg, std::size_t a, std::size_t b) {
    const Matrix c = commutator(alg.generator(a), alg.generator(b));
    const auto n = static_cast<Eigen::Index>(alg.dim());
    Vector pair(n);
    for (Eigen::Index k = 0; k < n; ++k) pair(k) = (c * alg.generator(static_cast<std::size_t>(k))).trace();
    return alg.gram_inv() * pair;
}

/// f0(z) = coth(z/2)/2 - 1/z in long double.
/// Closed form, or its Taylor polynomial near 0 where the closed form cancels.
inline long double f0(long double z) {
    if (std::abs(z) < 1e-2L) {
        const long double z2 = z * z;
        return z * (1.0L / 12 - z2 / 720 + z2 * z2 / 30240 - z2 * z2 * z2 / 1209600);
    }
    return 0.5L / std::tanh(0.5L * z) - 1.0L / z;
}

inline Vector random_real(std::mt19937_64& rng, std::size_t n, double lo = -1.0, double hi = 1.0) {
    std::uniform_real_distribution<double> u(lo, hi);
    Vector v(static_cast<Eigen::Index>(n));
    for (auto& x : v) x = u(rng);
    return v;
}

inline Matrix random_real_matrix(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Matrix m(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = u(rng);
    return m;
}

inline double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

inline double max_abs_diff(const dynr::Tensor3& a, const dynr::Tensor3& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.data().size(); ++i) m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

}  // namespace oracle
