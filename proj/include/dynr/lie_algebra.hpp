#pragma once

// Finite-dimensional Lie algebras with an invariant non-degenerate form,
// realized through a faithful matrix representation.
//
// Conventions used throughout the library:
//   * basis {T_a}, a = 0..n-1, given as d x d complex matrices;
//   * [T_a, T_b] = f_{ab}^c T_c;
//   * g_{ab} = tr(T_a T_b), g^{ab} its inverse; the dual basis is
//     T^a = g^{ab} T_b and is never stored;
//   * a linear operator A acts on coefficient vectors, A(T_b) = A^a_b T_a,
//     so column b of the matrix holds the image of T_b.

#include <complex>
#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace dynr {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Raised when an input lies outside the domain where an operation is
/// defined (singular pivot, branch cut, non-regular element, ...).
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& what, double condition = 0.0)
        : std::runtime_error(what), condition_(condition) {}
    /// Condition number of the offending operator, 0 if not applicable.
    [[nodiscard]] double condition() const noexcept { return condition_; }

private:
    double condition_;
};

/// Malformed algebra data: failed invariants, bad file, unknown built-in.
class AlgebraError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct AlgebraElement {
    Vector coeffs;  // omega = coeffs[a] T_a
};

struct GroupElement {
    Matrix matrix;  // in the algebra's defining representation
};

struct LinearOperator {
    Matrix matrix;  // A(T_b) = matrix(a, b) T_a
};

class LieAlgebra {
public:
    /// Derives structure constants from the representation matrices.
    /// Throws AlgebraError if the Gram matrix is singular or the basis
    /// does not close under commutators.
    static LieAlgebra from_representation(std::string name, std::vector<Matrix> basis);

    /// Uses the supplied structure constants verbatim (indexed f(a,b,c)).
    /// No invariant checking beyond shapes; call validate() for that.
    static LieAlgebra from_data(std::string name, std::vector<Matrix> basis,
                                std::vector<Complex> structure_constants);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::size_t dim() const noexcept { return basis_.size(); }
    [[nodiscard]] std::size_t rep_dim() const noexcept { return rep_dim_; }
    [[nodiscard]] const std::vector<Matrix>& basis() const noexcept { return basis_; }
    [[nodiscard]] const Matrix& generator(std::size_t a) const { return basis_.at(a); }

    /// f_{ab}^c
    [[nodiscard]] Complex f(std::size_t a, std::size_t b, std::size_t c) const {
        return f_[(a * dim() + b) * dim() + c];
    }
    /// Slice with fixed upper index: slice(c)(a, b) = f_{ab}^c.
    [[nodiscard]] const Matrix& f_slice(std::size_t c) const { return f_slices_[c]; }

    [[nodiscard]] const Matrix& gram() const noexcept { return gram_; }
    [[nodiscard]] const Matrix& gram_inv() const noexcept { return gram_inv_; }
    [[nodiscard]] double gram_condition() const noexcept { return gram_condition_; }

    /// Returns a copy with f_{ab}^c = value and f_{ba}^c = -value.
    [[nodiscard]] LieAlgebra with_structure_constant(std::size_t a, std::size_t b, std::size_t c,
                                                     Complex value) const;

    /// Matrix of omega^a rho(T_a).
    [[nodiscard]] Matrix to_matrix(const Vector& coeffs) const;

    /// Coefficients x^a = g^{ab} tr(T_b X). If residual is non-null it
    /// receives max|X - x^a T_a|.
    [[nodiscard]] Vector expand(const Matrix& x, double* residual = nullptr) const;

    /// Stable identifier of the basis ordering: FNV-1a 64 over the name,
    /// dimensions and every generator entry printed with %.17g.
    [[nodiscard]] std::string basis_hash() const;

    [[nodiscard]] bool is_builtin_sl() const noexcept { return builtin_sl_rank_ > 0; }
    /// n for a built-in sl(n), 0 otherwise.
    [[nodiscard]] int sl_rank() const noexcept { return builtin_sl_rank_; }

private:
    LieAlgebra() = default;
    void finish();

    std::string name_;
    std::size_t rep_dim_ = 0;
    std::vector<Matrix> basis_;
    std::vector<Complex> f_;
    std::vector<Matrix> f_slices_;
    Matrix gram_;
    Matrix gram_inv_;
    double gram_condition_ = 0.0;
    int builtin_sl_rank_ = 0;

    friend LieAlgebra build_builtin(const std::string&, int);
};

/// Built-in algebras. Supported: name "sl" with rank parameter n in [2, 5].
/// Basis order for sl(n): Cartan generators H_i = E_ii - E_{i+1,i+1},
/// i = 0..n-2, then root vectors E_ij (i != j) in lexicographic (i, j)
/// order. For sl(2) this is {H, E, F}.
LieAlgebra build_builtin(const std::string& name, int rank);

/// Parses "sl2" .. "sl5" into build_builtin.
LieAlgebra builtin_from_id(const std::string& id);

/// Parses the text format documented in README ("Custom algebras").
/// Throws AlgebraError on any grammar or validation failure.
LieAlgebra load_algebra_text(const std::string& text);
LieAlgebra load_algebra_file(const std::string& path);

struct ValidationRow {
    std::string invariant;
    double max_violation = 0.0;
    double tolerance = 0.0;
    bool pass = true;
};

struct ValidationReport {
    std::vector<ValidationRow> rows;
    bool pass = true;
    [[nodiscard]] const ValidationRow* row(const std::string& invariant) const;
};

/// Checks every algebra invariant; never throws.
ValidationReport validate(const LieAlgebra& algebra, double tolerance = 1e-12);

/// (ad X)^c_b = X^a f_{ab}^c
LinearOperator ad_operator(const LieAlgebra& algebra, const AlgebraElement& x);

/// Ad M in the basis. Throws DomainError if M rho(T_b) M^-1 does not
/// re-expand with residual <= 1e-8.
LinearOperator Ad_operator(const LieAlgebra& algebra, const GroupElement& m);

GroupElement exp_map(const LieAlgebra& algebra, const AlgebraElement& x);

/// Principal logarithm. Throws DomainError if an eigenvalue of M lies on
/// the closed negative real axis, or if the result does not re-expand in
/// the algebra basis (residual > 1e-8).
AlgebraElement log_map(const LieAlgebra& algebra, const GroupElement& m);

/// Largest eigenvalue modulus.
double spectral_radius(const LinearOperator& op);

/// 2-norm condition number (ratio of extreme singular values); +inf if
/// the smallest singular value vanishes.
double condition_number(const Matrix& m);

class SubalgebraSplit {
public:
    /// Columns of h_basis are coefficient vectors of H_i. The complement
    /// is the form-orthogonal one; its basis is chosen among projected
    /// basis vectors so coordinate-aligned splits keep their E_alpha.
    SubalgebraSplit(const LieAlgebra& algebra, const Matrix& h_basis);

    [[nodiscard]] std::size_t dim_h() const noexcept { return h_basis_.cols(); }
    [[nodiscard]] std::size_t dim_perp() const noexcept { return perp_basis_.cols(); }
    [[nodiscard]] const Matrix& h_basis() const noexcept { return h_basis_; }
    [[nodiscard]] const Matrix& perp_basis() const noexcept { return perp_basis_; }
    [[nodiscard]] const Matrix& h_form() const noexcept { return h_form_; }
    [[nodiscard]] const Matrix& h_form_inv() const noexcept { return h_form_inv_; }
    [[nodiscard]] const Matrix& perp_form_inv() const noexcept { return perp_form_inv_; }
    [[nodiscard]] const Matrix& proj_h() const noexcept { return proj_h_; }
    [[nodiscard]] const Matrix& proj_perp() const noexcept { return proj_perp_; }

    /// Coefficient vectors of the dual basis H^i = (h_form_inv)^{ij} H_j,
    /// one per column.
    [[nodiscard]] Matrix h_dual_basis() const { return h_basis_ * h_form_inv_.transpose(); }

    /// Coordinates c with P_H x = sum_i c_i H_i.
    [[nodiscard]] Vector h_coords(const Vector& x) const { return coord_map_ * x; }

    /// max |P_perp x|; zero iff x lies in H.
    [[nodiscard]] double perp_residual(const Vector& x) const;

    /// Element of H from coordinates omega^i along H_i.
    [[nodiscard]] AlgebraElement from_h_coords(const Vector& coords) const {
        return {h_basis_ * coords};
    }

private:
    Matrix h_basis_;
    Matrix perp_basis_;
    Matrix h_form_;
    Matrix h_form_inv_;
    Matrix perp_form_inv_;
    Matrix proj_h_;
    Matrix proj_perp_;
    Matrix coord_map_;
};

/// Named splits: "cartan" for built-in sl(n); "block:2+1" (block-diagonal
/// grade-zero subalgebra of sl(n) for the given partition of n);
/// "basis:0,1,2,4" (span of the listed basis vectors).
SubalgebraSplit split_from_id(const LieAlgebra& algebra, const std::string& id);

struct Root {
    Vector values;          // alpha(H_i) for each Cartan basis element
    std::size_t vector_index;   // basis index of E_alpha
    std::size_t partner;        // index into RootData::roots of -alpha
    Complex normalization;      // tr(E_alpha E_{-alpha})
    bool positive;              // lexicographic choice: i < j
    Vector root_vector;         // coefficient vector of E_alpha
};

struct RootData {
    SubalgebraSplit split;  // H = Cartan subalgebra
    std::vector<Root> roots;
    Vector principal;       // see principal_element()

    /// alpha(omega) for omega in the Cartan subalgebra.
    [[nodiscard]] Complex evaluate(std::size_t root, const AlgebraElement& omega) const;

    /// Principal grading element h = 2 rho-check, alpha(h) = 2 on simple
    /// roots; for sl(2) this is H.
    [[nodiscard]] AlgebraElement principal_element() const;
};

/// Root data of a built-in sl(n); throws AlgebraError otherwise.
RootData root_data(const LieAlgebra& algebra);

}  // namespace dynr
