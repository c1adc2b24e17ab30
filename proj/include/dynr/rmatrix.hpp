#pragma once

// Dynamical r-matrix constructions.

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "dynr/lie_algebra.hpp"
#include "dynr/tensor.hpp"

namespace dynr {

// ---------------------------------------------------------------------------
// f0(z) = coth(z/2)/2 - 1/z applied to ad(omega)
// ---------------------------------------------------------------------------

enum class F0Method { Series, Eigen };

struct F0Diagnostics {
    F0Method used = F0Method::Series;
    bool fell_back = false;           // eigen requested, series used
    bool quotient_form = false;       // Bernoulli bound unattainable, entire-quotient series used
    int series_terms = 0;
    double spectral_radius = 0.0;
    double eigvec_condition = 0.0;
    std::string warning;
};

/// Largest spectral radius of ad(omega) accepted by the f0 constructions.
inline constexpr double kF0RadiusLimit = 0.9 * 2.0 * 3.14159265358979323846;

/// Scalar f0 and its derivative, analytic at 0.
Complex f0_scalar(Complex z);
Complex f0_scalar_derivative(Complex z);

/// f0(ad omega). Throws DomainError if the spectral radius of ad omega is
/// not below kF0RadiusLimit.
LinearOperator f0_operator(const LieAlgebra& algebra, const AlgebraElement& omega, F0Method method,
                           F0Diagnostics* diag = nullptr);

Tensor2 f0_rmatrix(const LieAlgebra& algebra, const AlgebraElement& omega, F0Method method,
                   F0Diagnostics* diag = nullptr);

/// d/dt f0(ad(omega + t delta)) at t = 0 as a tensor, from divided
/// differences of f0 on the spectrum of ad omega. Throws DomainError if
/// ad omega is not safely diagonalizable.
Tensor2 f0_rmatrix_derivative(const LieAlgebra& algebra, const AlgebraElement& omega,
                              const AlgebraElement& delta);

// ---------------------------------------------------------------------------
// 2-form data and the inversion formula
// ---------------------------------------------------------------------------

/// The operator q(M) of the expansion rho = 1/2 q^{ab} tr(T_a M^-1 dM)
/// ^ tr(T_b M^-1 dM). Must be form-skew at every M.
class QForm {
public:
    using Eval = std::function<LinearOperator(const GroupElement&)>;

    QForm(std::string name, Eval eval) : name_(std::move(name)), eval_(std::move(eval)) {}

    static QForm zero(const LieAlgebra& algebra);
    /// Throws AlgebraError unless q is form-skew (g q antisymmetric).
    static QForm constant(const LieAlgebra& algebra, const LinearOperator& q);
    /// Constant form-skew q built from the raised antisymmetric tensor
    /// components a - a^T, scaled so max |q^{ab}| = scale.
    static QForm random_constant(const LieAlgebra& algebra, const Matrix& seed_matrix, double scale);
    /// Piecewise-constant table: q at the entry whose log coordinates are
    /// nearest (Euclidean) to log M.
    static QForm table(std::shared_ptr<const LieAlgebra> algebra,
                       std::vector<std::pair<AlgebraElement, LinearOperator>> entries);
    /// The q whose inversion reproduces a prescribed r(M):
    /// q = 1/2 (r_+ - r_- Ad M)^-1 (r_+ + r_- Ad M).
    static QForm from_rmatrix(std::shared_ptr<const LieAlgebra> algebra,
                              std::function<Tensor2(const GroupElement&)> rfun);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    LinearOperator operator()(const GroupElement& m) const { return eval_(m); }

private:
    std::string name_;
    Eval eval_;
};

/// Pivot operator q_-(M) - Ad M q_+(M) whose invertibility defines the domain.
LinearOperator q_pivot(const LieAlgebra& algebra, const QForm& q, const GroupElement& m);

/// Condition limit of the pivot operator.
inline constexpr double kPivotConditionLimit = 1e10;

/// r = r_- + I/2 with r_-(M) = -q_-(M) (q_-(M) - Ad M q_+(M))^-1.
/// Throws DomainError (carrying the condition number) if the pivot is
/// singular or its condition exceeds kPivotConditionLimit.
Tensor2 r_from_q(const LieAlgebra& algebra, const QForm& q, const GroupElement& m,
                 double* pivot_condition = nullptr);

// ---------------------------------------------------------------------------
// RMatrixFunction
// ---------------------------------------------------------------------------

enum class RMatrixKind { FromQ, F0, Dirac, CartanCoth, Constant };

std::string to_string(RMatrixKind kind);

struct RMatrixDomain {
    double log_radius = 0.0;   // ball radius in log coordinates (0 = unbounded)
    std::string description;
};

/// omega -> r(omega) with an equivalent group-domain view M -> r(log M).
/// Evaluations are pure and the object is freely shareable.
class RMatrixFunction {
public:
    using AlgebraEval = std::function<Tensor2(const AlgebraElement&)>;
    using GroupEval = std::function<Tensor2(const GroupElement&)>;

    static RMatrixFunction f0(std::shared_ptr<const LieAlgebra> algebra, F0Method method = F0Method::Series);
    static RMatrixFunction from_q(std::shared_ptr<const LieAlgebra> algebra, QForm q);
    static RMatrixFunction dirac(std::shared_ptr<const LieAlgebra> algebra,
                                 std::shared_ptr<const SubalgebraSplit> split, RMatrixFunction r0,
                                 double kappa = 1.0);
    static RMatrixFunction cartan_coth(std::shared_ptr<const LieAlgebra> algebra,
                                       std::shared_ptr<const RootData> roots);
    /// Constant tensors are stored as given; no antisymmetry check, so
    /// negative controls (e.g. the Casimir) can be expressed.
    static RMatrixFunction constant(std::shared_ptr<const LieAlgebra> algebra, Tensor2 value,
                                    std::string label);

    [[nodiscard]] RMatrixKind kind() const noexcept { return kind_; }
    [[nodiscard]] const std::string& label() const noexcept { return label_; }
    [[nodiscard]] const RMatrixDomain& domain() const noexcept { return domain_; }
    [[nodiscard]] const std::shared_ptr<const SubalgebraSplit>& split() const noexcept { return split_; }
    [[nodiscard]] const LieAlgebra& algebra() const noexcept { return *algebra_; }
    [[nodiscard]] std::shared_ptr<const LieAlgebra> algebra_ptr() const noexcept { return algebra_; }

    /// True for kinds whose natural variable is the group element.
    [[nodiscard]] bool group_native() const noexcept { return kind_ == RMatrixKind::FromQ; }

    /// Throws DomainError outside the domain, and AlgebraError if a
    /// non-constant construction returns a tensor with antisymmetry defect
    /// above 1e-10.
    [[nodiscard]] Tensor2 at(const AlgebraElement& omega) const;
    [[nodiscard]] Tensor2 at(const GroupElement& m) const;

    [[nodiscard]] AlgebraEval on_algebra() const;
    [[nodiscard]] GroupEval on_group() const;

private:
    RMatrixFunction() = default;
    Tensor2 checked(Tensor2 t) const;

    RMatrixKind kind_ = RMatrixKind::Constant;
    std::string label_;
    RMatrixDomain domain_;
    std::shared_ptr<const LieAlgebra> algebra_;
    std::shared_ptr<const SubalgebraSplit> split_;
    AlgebraEval algebra_eval_;
    GroupEval group_eval_;
};

// ---------------------------------------------------------------------------
// Reduction and closed forms
// ---------------------------------------------------------------------------

/// Restricted operator ad(omega)|_{H-perp} in the complement basis.
Matrix restricted_ad_perp(const LieAlgebra& algebra, const SubalgebraSplit& split, const AlgebraElement& omega);

/// Smallest singular value of ad(omega)|_{H-perp}. Reduced r-matrices grow
/// like its inverse, so finite-difference checks need it bounded below.
double regularity_margin(const LieAlgebra& algebra, const SubalgebraSplit& split, const AlgebraElement& omega);

/// Margin used when sampling points for subalgebra-valued checks.
inline constexpr double kSamplingMargin = 0.1;

/// r*(omega_H) = r0(omega_H) + tensor of A, A = 0 on H and
/// A = (1/kappa) C^-1 on H-perp with C = (1/kappa) ad(omega_H)|_{H-perp}.
/// Throws DomainError if omega_H is not in H (residual > 1e-12) or if the
/// restricted operator is singular.
Tensor2 dirac_reduce(const LieAlgebra& algebra, const SubalgebraSplit& split, const RMatrixFunction& r0,
                     const AlgebraElement& omega_h, double kappa = 1.0);

/// Operator f0(ad omega) on H and coth(ad omega / 2)/2 on H-perp, each
/// computed by eigendecomposition of the restricted blocks.
Tensor2 graded_closed_form(const LieAlgebra& algebra, const SubalgebraSplit& split, const AlgebraElement& omega);

/// 1/2 sum_alpha coth(alpha(omega)/2) E_alpha (x) E^alpha,
/// E^alpha = E_{-alpha} / tr(E_alpha E_{-alpha}). Throws DomainError for
/// omega outside the Cartan subalgebra or non-regular omega.
Tensor2 cartan_coth(const LieAlgebra& algebra, const RootData& roots, const AlgebraElement& omega);

/// 1/2 sum_{alpha > 0} (E_alpha (x) E^alpha - E^alpha (x) E_alpha).
Tensor2 dj_constant(const LieAlgebra& algebra, const RootData& roots);

}  // namespace dynr
