#pragma once

// Dense elements of g (x) g and g (x) g (x) g. Every index is raised:
// a Tensor2 t stands for t^{ab} T_a (x) T_b and a Tensor3 for
// t^{abc} T_a (x) T_b (x) T_c in the basis of the owning LieAlgebra.
//
// Operator <-> tensor dictionary: an operator r with matrix r^a_c maps to
// the tensor (r (x) id)(I) with components r^a_c g^{cb}.

#include <cstddef>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dynr/lie_algebra.hpp"

namespace dynr {

struct Tensor2 {
    Matrix comps;

    static Tensor2 zero(std::size_t n) { return {Matrix::Zero(n, n)}; }
    [[nodiscard]] std::size_t dim() const noexcept { return static_cast<std::size_t>(comps.rows()); }

    Tensor2& operator+=(const Tensor2& o) { comps += o.comps; return *this; }
    Tensor2& operator-=(const Tensor2& o) { comps -= o.comps; return *this; }
    Tensor2& operator*=(Complex s) { comps *= s; return *this; }
    friend Tensor2 operator+(Tensor2 a, const Tensor2& b) { return a += b; }
    friend Tensor2 operator-(Tensor2 a, const Tensor2& b) { return a -= b; }
    friend Tensor2 operator*(Complex s, Tensor2 a) { return a *= s; }
    friend Tensor2 operator*(Tensor2 a, double s) { return a *= s; }
    /// Swaps the two legs.
    [[nodiscard]] Tensor2 flipped() const { return {comps.transpose()}; }
};

class Tensor3 {
public:
    Tensor3() = default;
    explicit Tensor3(std::size_t n) : n_(n), data_(n * n * n) {}

    [[nodiscard]] std::size_t dim() const noexcept { return n_; }
    Complex& operator()(std::size_t a, std::size_t b, std::size_t c) { return data_[(a * n_ + b) * n_ + c]; }
    Complex operator()(std::size_t a, std::size_t b, std::size_t c) const {
        return data_[(a * n_ + b) * n_ + c];
    }
    [[nodiscard]] const std::vector<Complex>& data() const noexcept { return data_; }
    std::vector<Complex>& data() noexcept { return data_; }

    Tensor3& operator+=(const Tensor3& o);
    Tensor3& operator-=(const Tensor3& o);
    Tensor3& operator*=(Complex s);
    friend Tensor3 operator+(Tensor3 a, const Tensor3& b) { return a += b; }
    friend Tensor3 operator-(Tensor3 a, const Tensor3& b) { return a -= b; }
    friend Tensor3 operator*(Complex s, Tensor3 a) { return a *= s; }
    friend Tensor3 operator*(Tensor3 a, double s) { return a *= s; }

private:
    std::size_t n_ = 0;
    std::vector<Complex> data_;
};

/// I = T_a (x) T^a; components g^{ab}.
Tensor2 casimir_hat(const LieAlgebra& algebra);

/// f = f_{ab}^c T^a (x) T^b (x) T_c; components g^{pa} g^{qb} f_{ab}^c.
Tensor3 f_hat(const LieAlgebra& algebra);

/// [r_12, s_23]^{abc} = r^{ad} s^{ec} f_{de}^b.
Tensor3 bracket_12_23(const LieAlgebra& algebra, const Tensor2& r, const Tensor2& s);

/// t^{abc} -> t^{cab}: the factor in slot 1 moves to slot 2, 2 to 3, 3 to 1.
Tensor3 cyclic_rotate(const Tensor3& t);
/// t + rotate(t) + rotate^2(t)
Tensor3 cyclic_sum(const Tensor3& t);

/// Applies A to the given leg (1-based): (A t)^{..a..} = A^a_b t^{..b..}.
Tensor2 leg_transform(const Tensor2& t, const LinearOperator& a, int leg);
Tensor3 leg_transform(const Tensor3& t, const LinearOperator& a, int leg);

/// sum_a T^a (x) X_a, i.e. components g^{pa} (X_a)^{bc}.
Tensor3 assemble_dual_leg(const LieAlgebra& algebra, const std::vector<Tensor2>& parts);

/// sum_i D_i (x) X_i for arbitrary first-leg vectors D_i (columns of
/// dual_vectors). assemble_dual_leg is the case D_i = T^i.
Tensor3 assemble_leg(const Matrix& dual_vectors, const std::vector<Tensor2>& parts);

/// (ad X (x) 1 + 1 (x) ad X) t
Tensor2 ad_action(const LieAlgebra& algebra, const AlgebraElement& x, const Tensor2& t);
/// ad X acting on all three legs.
Tensor3 ad_action(const LieAlgebra& algebra, const AlgebraElement& x, const Tensor3& t);

/// Tensor of an operator under the fixed dictionary, and back.
Tensor2 operator_to_tensor(const LieAlgebra& algebra, const LinearOperator& op);
LinearOperator tensor_to_operator(const LieAlgebra& algebra, const Tensor2& t);

double max_abs_norm(const Tensor2& t);
double max_abs_norm(const Tensor3& t);
/// max |t^{ab} + t^{ba}|
double antisymmetry_defect(const Tensor2& t);

/// Representation-space image sum t^{ab} rho(T_a) (x) rho(T_b) as a
/// d^2 x d^2 Kronecker matrix.
Matrix to_representation(const LieAlgebra& algebra, const Tensor2& t);

// JSON schema: {"algebra", "basis_hash", "rank", "dim",
//               "components": [[re, im], ...] row-major}.
nlohmann::json tensor_to_json(const LieAlgebra& algebra, const Tensor2& t);
nlohmann::json tensor_to_json(const LieAlgebra& algebra, const Tensor3& t);
/// Throws AlgebraError if the algebra id, basis hash, rank or size differ.
Tensor2 tensor2_from_json(const LieAlgebra& algebra, const nlohmann::json& j);
Tensor3 tensor3_from_json(const LieAlgebra& algebra, const nlohmann::json& j);

}  // namespace dynr
