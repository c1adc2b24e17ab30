#include "dynr/rmatrix.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <sstream>

namespace dynr {

namespace {

// B_2, B_4, ..., B_60.
constexpr std::array<double, 30> kBernoulliEven = {
    0.16666666666666666,      // 1/6
    -0.03333333333333333,     // -1/30
    0.023809523809523808,     // 1/42
    -0.03333333333333333,     // -1/30
    0.07575757575757576,      // 5/66
    -0.2531135531135531,      // -691/2730
    1.1666666666666667,       // 7/6
    -7.092156862745098,       // -3617/510
    54.971177944862156,       // 43867/798
    -529.1242424242424,       // -174611/330
    6192.123188405797,        // 854513/138
    -86580.25311355312,       // -236364091/2730
    1425517.1666666667,       // 8553103/6
    -27298231.067816094,      // -23749461029/870
    601580873.9006424,        // 8615841276005/14322
    -15116315767.092157,      // -7709321041217/510
    429614643061.1667,        // 2577687858367/6
    -13711655205088.332,      // -26315271553053477373/1919190
    488332318973593.2,        // 2929993913841559/6
    -1.9296579341940068e+16,  // -261082718496449122051/13530
    8.416930475736826e+17,    // 1520097643918070802691/1806
    -4.0338071854059454e+19,  // -27833269579301024235023/690
    2.1150748638081993e+21,   // 596451111593912163277961/282
    -1.2086626522296526e+23,  // -5609403368997817686249127547/46410
    7.500866746076964e+24,    // 495057205241079648212477525/66
    -5.038778101481069e+26,   // -801165718135489957347924991853/1590
    3.6528776484818122e+28,   // 29149963634884862421418123812691/798
    -2.849876930245088e+30,   // -2479392929313226753685415739663229/870
    2.3865427499683627e+32,   // 84483613348880041862046775994036021/354
    -2.1399949257225335e+34,  // B_60
};

// c_k = B_{2k} / (2k)!, so f0(z) = sum_{k>=1} c_k z^{2k-1}.
const std::array<double, 30>& series_coefficients() {
    static const std::array<double, 30> coeffs = [] {
        std::array<double, 30> c{};
        double factorial = 1.0;
        for (int k = 1; k <= 30; ++k) {
            factorial *= static_cast<double>((2 * k - 1) * (2 * k));
            c[static_cast<std::size_t>(k - 1)] = kBernoulliEven[static_cast<std::size_t>(k - 1)] / factorial;
        }
        return c;
    }();
    return coeffs;
}

constexpr double kSeriesTolerance = 1e-16;
constexpr double kEigvecConditionLimit = 1e8;
constexpr double kSmallArgument = 0.5;

// Smallest N with |B_2N| rho^(2N-1) / (2N)! < 1e-16, or 0 if none <= 30.
int bernoulli_terms(double rho) {
    const auto& c = series_coefficients();
    if (rho == 0.0) return 1;
    for (int k = 1; k <= 30; ++k) {
        const double bound = std::abs(c[static_cast<std::size_t>(k - 1)]) * std::pow(rho, 2 * k - 1);
        if (bound < kSeriesTolerance) return k;
    }
    return 0;
}

Matrix bernoulli_series(const Matrix& a, int terms) {
    const auto& c = series_coefficients();
    const Eigen::Index n = a.rows();
    const Matrix a2 = a * a;
    Matrix acc = c[static_cast<std::size_t>(terms - 1)] * Matrix::Identity(n, n);
    for (int k = terms - 1; k >= 1; --k) {
        acc = a2 * acc;
        acc.diagonal().array() += c[static_cast<std::size_t>(k - 1)];
    }
    return a * acc;
}

// f0(z) = z P(z) / S(z) with entire P, S:
//   u = z/2, S = sinh(u) / (2u) = sum u^{2k} / (2 (2k+1)!),
//   P = (u cosh u - sinh u) / z^3 = sum_{k>=1} 2k u^{2k-2} / (8 (2k+1)!).
Matrix quotient_series(const Matrix& a, int* terms_used) {
    const Eigen::Index n = a.rows();
    const Matrix u2 = 0.25 * (a * a);
    const double u2norm = u2.cwiseAbs().rowwise().sum().maxCoeff();
    Matrix p = Matrix::Zero(n, n);
    Matrix s = Matrix::Zero(n, n);
    Matrix power = Matrix::Identity(n, n);  // u^{2j}
    double inv_fact = 1.0;                  // 1 / (2j+1)!
    int j = 0;
    double power_norm = 1.0;
    for (; j < 80; ++j) {
        // s gets u^{2j} / (2 (2j+1)!), p gets 2(j+1) u^{2j} / (8 (2j+3)!).
        const double next_inv_fact = inv_fact / static_cast<double>((2 * j + 2) * (2 * j + 3));
        s += (0.5 * inv_fact) * power;
        p += (2.0 * (j + 1) / 8.0 * next_inv_fact) * power;
        if (power_norm * inv_fact < 1e-18 && j > 2) break;
        power = power * u2;
        power_norm *= u2norm;
        inv_fact = next_inv_fact;
    }
    if (terms_used != nullptr) *terms_used = j + 1;
    return a * p * s.partialPivLu().inverse();
}

struct EigenSplit {
    Matrix vectors;
    Matrix inverse;
    Vector values;
    double condition = std::numeric_limits<double>::infinity();
};

EigenSplit diagonalize(const Matrix& a) {
    EigenSplit out;
    Eigen::ComplexEigenSolver<Matrix> es(a);
    if (es.info() != Eigen::Success) return out;
    out.vectors = es.eigenvectors();
    out.values = es.eigenvalues();
    out.condition = condition_number(out.vectors);
    if (std::isfinite(out.condition)) out.inverse = out.vectors.inverse();
    return out;
}

template <class F>
Matrix apply_on_spectrum(const EigenSplit& es, F&& fn) {
    Vector fv(es.values.size());
    for (Eigen::Index i = 0; i < fv.size(); ++i) fv(i) = fn(es.values(i));
    return es.vectors * fv.asDiagonal() * es.inverse;
}

double max_abs(const Matrix& m) { return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff(); }

Complex half_coth_half(Complex z) { return 0.5 / std::tanh(0.5 * z); }

}  // namespace

// ---------------------------------------------------------------------------
// f0
// ---------------------------------------------------------------------------

Complex f0_scalar(Complex z) {
    if (std::abs(z) < kSmallArgument) {
        const auto& c = series_coefficients();
        const Complex z2 = z * z;
        Complex acc = c[13];
        for (int k = 13; k >= 1; --k) acc = acc * z2 + c[static_cast<std::size_t>(k - 1)];
        return acc * z;
    }
    return half_coth_half(z) - 1.0 / z;
}

Complex f0_scalar_derivative(Complex z) {
    if (std::abs(z) < kSmallArgument) {
        const auto& c = series_coefficients();
        const Complex z2 = z * z;
        Complex acc = 27.0 * c[13];
        for (int k = 13; k >= 1; --k) acc = acc * z2 + static_cast<double>(2 * k - 1) * c[static_cast<std::size_t>(k - 1)];
        return acc;
    }
    const Complex s = std::sinh(0.5 * z);
    return -0.25 / (s * s) + 1.0 / (z * z);
}

LinearOperator f0_operator(const LieAlgebra& alg, const AlgebraElement& omega, F0Method method,
                           F0Diagnostics* diag) {
    F0Diagnostics local;
    F0Diagnostics& d = diag != nullptr ? *diag : local;
    d = F0Diagnostics{};
    const Matrix a = ad_operator(alg, omega).matrix;
    const Eigen::Index n = a.rows();

    EigenSplit es = diagonalize(a);
    const double rho = es.values.size() == 0 ? 0.0 : es.values.cwiseAbs().maxCoeff();
    d.spectral_radius = rho;
    if (!(rho < kF0RadiusLimit)) {
        std::ostringstream msg;
        msg << "f0: spectral radius of ad(omega) is " << rho << ", outside the domain (< " << kF0RadiusLimit << ")";
        throw DomainError(msg.str());
    }
    if (rho == 0.0 && max_abs(a) == 0.0) {
        d.used = method;
        return {Matrix::Zero(n, n)};
    }

    if (method == F0Method::Eigen) {
        d.eigvec_condition = es.condition;
        if (es.condition <= kEigvecConditionLimit) {
            d.used = F0Method::Eigen;
            return {apply_on_spectrum(es, f0_scalar)};
        }
        d.fell_back = true;
        std::ostringstream msg;
        msg << "f0: eigenvector condition " << es.condition << " above 1e8, using series";
        d.warning = msg.str();
    }

    d.used = F0Method::Series;
    const int terms = bernoulli_terms(rho);
    if (terms > 0) {
        // Two extra terms cover the gap between the spectral radius and the
        // operator norm for mildly non-normal ad(omega).
        d.series_terms = std::min(terms + 2, 30);
        return {bernoulli_series(a, d.series_terms)};
    }
    d.quotient_form = true;
    return {quotient_series(a, &d.series_terms)};
}

Tensor2 f0_rmatrix(const LieAlgebra& alg, const AlgebraElement& omega, F0Method method, F0Diagnostics* diag) {
    return operator_to_tensor(alg, f0_operator(alg, omega, method, diag));
}

Tensor2 f0_rmatrix_derivative(const LieAlgebra& alg, const AlgebraElement& omega, const AlgebraElement& delta) {
    const Matrix a = ad_operator(alg, omega).matrix;
    const Matrix e = ad_operator(alg, delta).matrix;
    const EigenSplit es = diagonalize(a);
    if (!(es.condition <= kEigvecConditionLimit)) {
        throw DomainError("f0 derivative: ad(omega) is not safely diagonalizable", es.condition);
    }
    const double rho = es.values.cwiseAbs().maxCoeff();
    if (!(rho < kF0RadiusLimit)) {
        throw DomainError("f0 derivative: spectral radius outside the domain");
    }
    const Eigen::Index n = a.rows();
    Matrix inner = es.inverse * e * es.vectors;
    for (Eigen::Index i = 0; i < n; ++i) {
        for (Eigen::Index j = 0; j < n; ++j) {
            const Complex li = es.values(i);
            const Complex lj = es.values(j);
            Complex dd;
            if (std::abs(li - lj) < 1e-4) {
                dd = f0_scalar_derivative(0.5 * (li + lj));
            } else {
                dd = (f0_scalar(li) - f0_scalar(lj)) / (li - lj);
            }
            inner(i, j) *= dd;
        }
    }
    return operator_to_tensor(alg, {es.vectors * inner * es.inverse});
}

// ---------------------------------------------------------------------------
// QForm and the inversion formula
// ---------------------------------------------------------------------------

namespace {

double form_skew_defect(const LieAlgebra& alg, const Matrix& q) {
    const Matrix gq = alg.gram() * q;
    return max_abs(gq + gq.transpose());
}

}  // namespace

QForm QForm::zero(const LieAlgebra& alg) {
    const auto n = static_cast<Eigen::Index>(alg.dim());
    return QForm("zero", [n](const GroupElement&) { return LinearOperator{Matrix::Zero(n, n)}; });
}

QForm QForm::constant(const LieAlgebra& alg, const LinearOperator& q) {
    const double defect = form_skew_defect(alg, q.matrix);
    if (defect > 1e-12 * std::max(1.0, max_abs(q.matrix))) {
        throw AlgebraError("q is not form-skew (defect " + std::to_string(defect) + ")");
    }
    return QForm("constant", [q](const GroupElement&) { return q; });
}

QForm QForm::random_constant(const LieAlgebra& alg, const Matrix& seed_matrix, double scale) {
    Matrix skew = seed_matrix - seed_matrix.transpose();
    const double m = max_abs(skew);
    if (m > 0.0) skew *= scale / m;
    QForm q = constant(alg, tensor_to_operator(alg, Tensor2{skew}));
    q.name_ = "random-constant";
    return q;
}

QForm QForm::table(std::shared_ptr<const LieAlgebra> alg,
                   std::vector<std::pair<AlgebraElement, LinearOperator>> entries) {
    if (entries.empty()) throw AlgebraError("q table is empty");
    for (const auto& [pt, q] : entries) {
        if (form_skew_defect(*alg, q.matrix) > 1e-12 * std::max(1.0, max_abs(q.matrix))) {
            throw AlgebraError("q table entry is not form-skew");
        }
    }
    return QForm("table", [alg, entries = std::move(entries)](const GroupElement& m) {
        const Vector x = log_map(*alg, m).coeffs;
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < entries.size(); ++i) {
            const double d = (entries[i].first.coeffs - x).norm();
            if (d < best_d) {
                best_d = d;
                best = i;
            }
        }
        return entries[best].second;
    });
}

QForm QForm::from_rmatrix(std::shared_ptr<const LieAlgebra> alg, std::function<Tensor2(const GroupElement&)> rfun) {
    return QForm("from-rmatrix", [alg, rfun = std::move(rfun)](const GroupElement& m) {
        const auto n = static_cast<Eigen::Index>(alg->dim());
        const Matrix r = tensor_to_operator(*alg, rfun(m)).matrix;
        const Matrix id = Matrix::Identity(n, n);
        const Matrix rp = r + 0.5 * id;
        const Matrix rm_ad = (r - 0.5 * id) * Ad_operator(*alg, m).matrix;
        const Matrix lhs = rp - rm_ad;
        const double cond = condition_number(lhs);
        if (!(cond <= kPivotConditionLimit)) {
            throw DomainError("q from r: r_+ - r_- Ad M is singular", cond);
        }
        return LinearOperator{0.5 * lhs.partialPivLu().solve(rp + rm_ad)};
    });
}

LinearOperator q_pivot(const LieAlgebra& alg, const QForm& qf, const GroupElement& m) {
    const Matrix q = qf(m).matrix;
    const auto n = q.rows();
    const Matrix id = Matrix::Identity(n, n);
    return {(q - 0.5 * id) - Ad_operator(alg, m).matrix * (q + 0.5 * id)};
}

Tensor2 r_from_q(const LieAlgebra& alg, const QForm& qf, const GroupElement& m, double* pivot_condition) {
    const Matrix q = qf(m).matrix;
    const auto n = q.rows();
    const double skew = form_skew_defect(alg, q);
    if (skew > 1e-12 * std::max(1.0, max_abs(q))) {
        throw AlgebraError("q(M) is not form-skew (defect " + std::to_string(skew) + ")");
    }
    const Matrix id = Matrix::Identity(n, n);
    const Matrix q_minus = q - 0.5 * id;
    const Matrix pivot = q_minus - Ad_operator(alg, m).matrix * (q + 0.5 * id);
    const double cond = condition_number(pivot);
    if (pivot_condition != nullptr) *pivot_condition = cond;
    if (!(cond <= kPivotConditionLimit)) {
        std::ostringstream msg;
        msg << "r_from_q: pivot operator q_- - Ad M q_+ is singular or ill-conditioned (condition " << cond << ")";
        throw DomainError(msg.str(), cond);
    }
    // r_- = -q_- pivot^-1  <=>  pivot^T r_-^T = -q_-^T
    const Matrix r_minus = -(pivot.transpose().partialPivLu().solve(q_minus.transpose())).transpose();
    return operator_to_tensor(alg, {r_minus + 0.5 * id});
}

// ---------------------------------------------------------------------------
// RMatrixFunction
// ---------------------------------------------------------------------------

std::string to_string(RMatrixKind kind) {
    switch (kind) {
        case RMatrixKind::FromQ: return "from-q";
        case RMatrixKind::F0: return "f0";
        case RMatrixKind::Dirac: return "dirac";
        case RMatrixKind::CartanCoth: return "cartan-coth";
        case RMatrixKind::Constant: return "constant";
    }
    return "unknown";
}

Tensor2 RMatrixFunction::checked(Tensor2 t) const {
    if (kind_ != RMatrixKind::Constant) {
        const double defect = antisymmetry_defect(t);
        if (defect > 1e-10) {
            throw AlgebraError(label_ + ": r-matrix lost antisymmetry (defect " + std::to_string(defect) + ")");
        }
    }
    return t;
}

Tensor2 RMatrixFunction::at(const AlgebraElement& omega) const {
    if (algebra_eval_) return checked(algebra_eval_(omega));
    return checked(group_eval_(exp_map(*algebra_, omega)));
}

Tensor2 RMatrixFunction::at(const GroupElement& m) const {
    if (group_eval_) return checked(group_eval_(m));
    return checked(algebra_eval_(log_map(*algebra_, m)));
}

RMatrixFunction::AlgebraEval RMatrixFunction::on_algebra() const {
    return [self = *this](const AlgebraElement& omega) { return self.at(omega); };
}

RMatrixFunction::GroupEval RMatrixFunction::on_group() const {
    return [self = *this](const GroupElement& m) { return self.at(m); };
}

RMatrixFunction RMatrixFunction::f0(std::shared_ptr<const LieAlgebra> alg, F0Method method) {
    RMatrixFunction r;
    r.kind_ = RMatrixKind::F0;
    r.label_ = method == F0Method::Eigen ? "f0:eigen" : "f0";
    r.domain_ = {kF0RadiusLimit, "spectral radius of ad(omega) < 0.9 * 2 pi"};
    r.algebra_ = alg;
    r.algebra_eval_ = [alg, method](const AlgebraElement& omega) { return f0_rmatrix(*alg, omega, method); };
    return r;
}

RMatrixFunction RMatrixFunction::from_q(std::shared_ptr<const LieAlgebra> alg, QForm q) {
    RMatrixFunction r;
    r.kind_ = RMatrixKind::FromQ;
    r.label_ = "from-q:" + q.name();
    r.domain_ = {0.0, "q_-(M) - Ad M q_+(M) invertible (condition <= 1e10)"};
    r.algebra_ = alg;
    r.group_eval_ = [alg, q = std::move(q)](const GroupElement& m) { return r_from_q(*alg, q, m); };
    return r;
}

RMatrixFunction RMatrixFunction::dirac(std::shared_ptr<const LieAlgebra> alg,
                                       std::shared_ptr<const SubalgebraSplit> split, RMatrixFunction r0,
                                       double kappa) {
    RMatrixFunction r;
    r.kind_ = RMatrixKind::Dirac;
    r.label_ = "dirac(" + r0.label() + ")";
    r.domain_ = {r0.domain().log_radius, "omega in H with ad(omega)|_{H-perp} invertible"};
    r.algebra_ = alg;
    r.split_ = split;
    r.algebra_eval_ = [alg, split, r0 = std::move(r0), kappa](const AlgebraElement& omega) {
        return dirac_reduce(*alg, *split, r0, omega, kappa);
    };
    return r;
}

RMatrixFunction RMatrixFunction::cartan_coth(std::shared_ptr<const LieAlgebra> alg,
                                             std::shared_ptr<const RootData> roots) {
    RMatrixFunction r;
    r.kind_ = RMatrixKind::CartanCoth;
    r.label_ = "cartan-coth";
    r.domain_ = {0.0, "regular Cartan elements: |alpha(omega)| > 1e-8 for every root"};
    r.algebra_ = alg;
    r.split_ = std::shared_ptr<const SubalgebraSplit>(roots, &roots->split);
    r.algebra_eval_ = [alg, roots](const AlgebraElement& omega) { return dynr::cartan_coth(*alg, *roots, omega); };
    return r;
}

RMatrixFunction RMatrixFunction::constant(std::shared_ptr<const LieAlgebra> alg, Tensor2 value, std::string label) {
    RMatrixFunction r;
    r.kind_ = RMatrixKind::Constant;
    r.label_ = std::move(label);
    r.domain_ = {0.0, "everywhere"};
    r.algebra_ = alg;
    r.algebra_eval_ = [value = std::move(value)](const AlgebraElement&) { return value; };
    r.group_eval_ = [value = r.algebra_eval_](const GroupElement&) { return value(AlgebraElement{}); };
    return r;
}

// ---------------------------------------------------------------------------
// Dirac reduction and closed forms
// ---------------------------------------------------------------------------

Matrix restricted_ad_perp(const LieAlgebra& alg, const SubalgebraSplit& split, const AlgebraElement& omega) {
    const Matrix& pb = split.perp_basis();
    const Matrix a = ad_operator(alg, omega).matrix;
    return split.perp_form_inv() * pb.transpose() * alg.gram() * a * pb;
}

namespace {

void require_in_h(const SubalgebraSplit& split, const AlgebraElement& omega, const char* who) {
    const double scale = std::max(1.0, omega.coeffs.size() ? omega.coeffs.cwiseAbs().maxCoeff() : 0.0);
    const double residual = split.perp_residual(omega.coeffs);
    if (residual > 1e-12 * scale) {
        std::ostringstream msg;
        msg << who << ": omega is not in the subalgebra (projection residual " << residual << ")";
        throw DomainError(msg.str());
    }
}

// Operator on g that is block on H-perp (given in complement coordinates)
// and zero on H.
Matrix embed_perp(const LieAlgebra& alg, const SubalgebraSplit& split, const Matrix& block) {
    const Matrix& pb = split.perp_basis();
    return pb * block * split.perp_form_inv() * pb.transpose() * alg.gram();
}

Matrix embed_h(const SubalgebraSplit& split, const Matrix& block) {
    const Eigen::Index n = split.h_basis().rows();
    Matrix coord(block.cols(), n);
    for (Eigen::Index a = 0; a < n; ++a) coord.col(a) = split.h_coords(Vector::Unit(n, a));
    return split.h_basis() * block * coord;
}

}  // namespace

double regularity_margin(const LieAlgebra& alg, const SubalgebraSplit& split, const AlgebraElement& omega) {
    const Matrix c = restricted_ad_perp(alg, split, omega);
    if (c.size() == 0) return std::numeric_limits<double>::infinity();
    return Eigen::JacobiSVD<Matrix>(c).singularValues().minCoeff();
}

Tensor2 dirac_reduce(const LieAlgebra& alg, const SubalgebraSplit& split, const RMatrixFunction& r0,
                     const AlgebraElement& omega_h, double kappa) {
    require_in_h(split, omega_h, "dirac_reduce");
    if (!(kappa != 0.0 && std::isfinite(kappa))) throw AlgebraError("dirac_reduce: kappa must be finite and non-zero");
    const Matrix constraint = restricted_ad_perp(alg, split, omega_h) / kappa;
    const double cond = condition_number(constraint);
    if (!(cond <= kPivotConditionLimit)) {
        std::ostringstream msg;
        msg << "dirac_reduce: singular restricted operator ad(omega)|_{H-perp} (condition " << cond << ")";
        throw DomainError(msg.str(), cond);
    }
    const Matrix correction = constraint.partialPivLu().inverse() / kappa;
    return r0.at(omega_h) + operator_to_tensor(alg, {embed_perp(alg, split, correction)});
}

Tensor2 graded_closed_form(const LieAlgebra& alg, const SubalgebraSplit& split, const AlgebraElement& omega) {
    require_in_h(split, omega, "graded_closed_form");
    const Matrix a = ad_operator(alg, omega).matrix;
    const Matrix on_h = split.h_form_inv() * split.h_basis().transpose() * alg.gram() * a * split.h_basis();
    const Matrix on_perp = restricted_ad_perp(alg, split, omega);

    const EigenSplit eh = diagonalize(on_h);
    const EigenSplit ep = diagonalize(on_perp);
    if (!(eh.condition <= kEigvecConditionLimit) || !(ep.condition <= kEigvecConditionLimit)) {
        throw DomainError("graded_closed_form: restricted ad(omega) is not safely diagonalizable");
    }
    for (Eigen::Index i = 0; i < ep.values.size(); ++i) {
        if (std::abs(std::sinh(0.5 * ep.values(i))) < 1e-8) {
            throw DomainError("graded_closed_form: coth pole on H-perp");
        }
    }
    const Matrix op = embed_h(split, apply_on_spectrum(eh, f0_scalar)) +
                      embed_perp(alg, split, apply_on_spectrum(ep, half_coth_half));
    return operator_to_tensor(alg, {op});
}

Tensor2 cartan_coth(const LieAlgebra& alg, const RootData& rd, const AlgebraElement& omega) {
    require_in_h(rd.split, omega, "cartan_coth");
    Tensor2 out = Tensor2::zero(alg.dim());
    for (std::size_t k = 0; k < rd.roots.size(); ++k) {
        const Root& root = rd.roots[k];
        const Complex alpha = rd.evaluate(k, omega);
        if (std::abs(alpha) <= 1e-8 || std::abs(std::sinh(0.5 * alpha)) <= 1e-8) {
            std::ostringstream msg;
            msg << "cartan_coth: non-regular omega, alpha(omega) = " << alpha.real()
                << (alpha.imag() != 0.0 ? " + i" + std::to_string(alpha.imag()) : std::string()) << " for root "
                << k;
            throw DomainError(msg.str());
        }
        const Root& partner = rd.roots[root.partner];
        const Complex weight = half_coth_half(alpha) / root.normalization;
        out.comps += weight * root.root_vector * partner.root_vector.transpose();
    }
    return out;
}

Tensor2 dj_constant(const LieAlgebra& alg, const RootData& rd) {
    Tensor2 out = Tensor2::zero(alg.dim());
    for (const Root& root : rd.roots) {
        if (!root.positive) continue;
        const Root& partner = rd.roots[root.partner];
        const Matrix term = root.root_vector * partner.root_vector.transpose() / root.normalization;
        out.comps += 0.5 * (term - term.transpose());
    }
    return out;
}

}  // namespace dynr
