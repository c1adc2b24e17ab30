#include "dynr/lie_algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <limits>
#include <map>
#include <sstream>

#include <unsupported/Eigen/MatrixFunctions>

namespace dynr {

namespace {

constexpr double kGramConditionLimit = 1e12;
constexpr double kExpandResidualLimit = 1e-8;

double max_abs(const Matrix& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

Matrix elementary(std::size_t d, std::size_t i, std::size_t j) {
    Matrix m = Matrix::Zero(d, d);
    m(i, j) = 1.0;
    return m;
}

}  // namespace

double condition_number(const Matrix& m) {
    if (m.size() == 0) {
        return 1.0;
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    const auto& s = svd.singularValues();
    const double smallest = s(s.size() - 1);
    if (smallest == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return s(0) / smallest;
}

double spectral_radius(const LinearOperator& op) {
    if (op.matrix.size() == 0) {
        return 0.0;
    }
    Eigen::ComplexEigenSolver<Matrix> es(op.matrix, false);
    return es.eigenvalues().cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// LieAlgebra
// ---------------------------------------------------------------------------

void LieAlgebra::finish() {
    const std::size_t n = dim();
    gram_ = Matrix(n, n);
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            gram_(a, b) = (basis_[a] * basis_[b]).trace();
        }
    }
    gram_condition_ = condition_number(gram_);
    if (!(gram_condition_ <= kGramConditionLimit)) {
        throw AlgebraError("algebra '" + name_ + "': invariant form is degenerate (condition " +
                           std::to_string(gram_condition_) + ")");
    }
    gram_inv_ = gram_.fullPivLu().inverse();

    f_slices_.assign(n, Matrix::Zero(n, n));
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                f_slices_[c](a, b) = f(a, b, c);
            }
        }
    }
}

LieAlgebra LieAlgebra::from_representation(std::string name, std::vector<Matrix> basis) {
    if (basis.empty()) {
        throw AlgebraError("algebra '" + name + "': empty basis");
    }
    LieAlgebra alg;
    alg.name_ = std::move(name);
    alg.rep_dim_ = static_cast<std::size_t>(basis.front().rows());
    for (const auto& m : basis) {
        if (static_cast<std::size_t>(m.rows()) != alg.rep_dim_ ||
            static_cast<std::size_t>(m.cols()) != alg.rep_dim_) {
            throw AlgebraError("algebra '" + alg.name_ + "': generators differ in size");
        }
    }
    alg.basis_ = std::move(basis);
    const std::size_t n = alg.dim();
    alg.f_.assign(n * n * n, Complex{});
    alg.finish();
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            double residual = 0.0;
            const Vector c = alg.expand(commutator(alg.basis_[a], alg.basis_[b]), &residual);
            if (residual > kExpandResidualLimit) {
                throw AlgebraError("algebra '" + alg.name_ + "': basis not closed under brackets");
            }
            for (std::size_t k = 0; k < n; ++k) {
                alg.f_[(a * n + b) * n + k] = c(k);
            }
        }
    }
    alg.finish();
    return alg;
}

LieAlgebra LieAlgebra::from_data(std::string name, std::vector<Matrix> basis,
                                 std::vector<Complex> structure_constants) {
    if (basis.empty()) {
        throw AlgebraError("algebra '" + name + "': empty basis");
    }
    const std::size_t n = basis.size();
    if (structure_constants.size() != n * n * n) {
        throw AlgebraError("algebra '" + name + "': expected n^3 structure constants");
    }
    LieAlgebra alg;
    alg.name_ = std::move(name);
    alg.rep_dim_ = static_cast<std::size_t>(basis.front().rows());
    alg.basis_ = std::move(basis);
    alg.f_ = std::move(structure_constants);
    alg.finish();
    return alg;
}

LieAlgebra LieAlgebra::with_structure_constant(std::size_t a, std::size_t b, std::size_t c,
                                               Complex value) const {
    LieAlgebra copy = *this;
    const std::size_t n = dim();
    copy.f_[(a * n + b) * n + c] = value;
    copy.f_[(b * n + a) * n + c] = -value;
    copy.finish();
    return copy;
}

Matrix LieAlgebra::to_matrix(const Vector& coeffs) const {
    Matrix m = Matrix::Zero(rep_dim_, rep_dim_);
    for (std::size_t a = 0; a < dim(); ++a) {
        m += coeffs(a) * basis_[a];
    }
    return m;
}

Vector LieAlgebra::expand(const Matrix& x, double* residual) const {
    const std::size_t n = dim();
    Vector traces(n);
    for (std::size_t b = 0; b < n; ++b) {
        traces(b) = (basis_[b] * x).trace();
    }
    Vector coeffs = gram_inv_ * traces;
    if (residual != nullptr) {
        *residual = max_abs(x - to_matrix(coeffs));
    }
    return coeffs;
}

std::string LieAlgebra::basis_hash() const {
    std::ostringstream canon;
    canon << name_ << '|' << dim() << '|' << rep_dim_;
    char buf[64];
    for (const auto& m : basis_) {
        for (Eigen::Index i = 0; i < m.rows(); ++i) {
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                std::snprintf(buf, sizeof buf, "|%.17g,%.17g", m(i, j).real(), m(i, j).imag());
                canon << buf;
            }
        }
    }
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char ch : canon.str()) {
        h ^= ch;
        h *= 0x100000001b3ULL;
    }
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

// ---------------------------------------------------------------------------
// Built-ins and loading
// ---------------------------------------------------------------------------

LieAlgebra build_builtin(const std::string& name, int rank) {
    if (name != "sl") {
        throw AlgebraError("unknown built-in algebra '" + name + "'");
    }
    if (rank < 2 || rank > 5) {
        throw AlgebraError("unsupported rank for sl(n): " + std::to_string(rank));
    }
    const auto d = static_cast<std::size_t>(rank);
    std::vector<Matrix> basis;
    for (std::size_t i = 0; i + 1 < d; ++i) {
        basis.push_back(elementary(d, i, i) - elementary(d, i + 1, i + 1));
    }
    for (std::size_t i = 0; i < d; ++i) {
        for (std::size_t j = 0; j < d; ++j) {
            if (i != j) {
                basis.push_back(elementary(d, i, j));
            }
        }
    }
    LieAlgebra alg = LieAlgebra::from_representation("sl" + std::to_string(rank), std::move(basis));
    // Structure constants of sl(n) in this basis are integers; strip roundoff
    // from the Gram inversion so built-ins expose exact real values.
    for (auto& v : alg.f_) {
        v = Complex(std::round(v.real()), 0.0);
    }
    alg.finish();
    alg.builtin_sl_rank_ = rank;
    const auto report = validate(alg);
    if (!report.pass) {
        throw AlgebraError("built-in " + alg.name() + " failed validation");
    }
    return alg;
}

LieAlgebra builtin_from_id(const std::string& id) {
    if (id.size() == 3 && id.rfind("sl", 0) == 0 && std::isdigit(static_cast<unsigned char>(id[2]))) {
        return build_builtin("sl", id[2] - '0');
    }
    throw AlgebraError("unknown algebra id '" + id + "' (expected sl2..sl5 or file:<path>)");
}

namespace {

class Tokens {
public:
    explicit Tokens(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            if (auto hash = line.find('#'); hash != std::string::npos) {
                line.erase(hash);
            }
            std::istringstream ls(line);
            std::string tok;
            while (ls >> tok) {
                toks_.push_back({tok, lineno});
            }
        }
    }
    bool done() const { return pos_ >= toks_.size(); }
    std::string next(const char* what) {
        if (done()) {
            throw AlgebraError(std::string("unexpected end of input, expected ") + what);
        }
        return toks_[pos_++].text;
    }
    int line() const { return pos_ == 0 ? 0 : toks_[pos_ - 1].line; }
    long integer(const char* what) {
        const std::string t = next(what);
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size()) {
            fail(std::string("expected integer ") + what + ", got '" + t + "'");
        }
        return v;
    }
    double real(const char* what) {
        const std::string t = next(what);
        std::size_t used = 0;
        double v = 0.0;
        try {
            v = std::stod(t, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (used != t.size() || !std::isfinite(v)) {
            fail(std::string("expected number ") + what + ", got '" + t + "'");
        }
        return v;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        throw AlgebraError("line " + std::to_string(line()) + ": " + msg);
    }

private:
    struct Tok {
        std::string text;
        int line;
    };
    std::vector<Tok> toks_;
    std::size_t pos_ = 0;
};

}  // namespace

LieAlgebra load_algebra_text(const std::string& text) {
    Tokens tk(text);
    std::string name;
    long n = -1;
    long d = -1;
    std::map<long, Matrix> generators;
    std::vector<Complex> constants;
    bool have_constants = false;
    bool ended = false;

    while (!tk.done()) {
        const std::string kw = tk.next("keyword");
        if (ended) {
            tk.fail("content after 'end'");
        }
        if (kw == "algebra") {
            if (!name.empty()) tk.fail("duplicate 'algebra'");
            name = tk.next("algebra name");
        } else if (kw == "dimension") {
            if (n >= 0) tk.fail("duplicate 'dimension'");
            n = tk.integer("dimension");
            if (n < 1 || n > 64) tk.fail("dimension out of range [1, 64]");
        } else if (kw == "rep_dimension") {
            if (d >= 0) tk.fail("duplicate 'rep_dimension'");
            d = tk.integer("rep_dimension");
            if (d < 1 || d > 64) tk.fail("rep_dimension out of range [1, 64]");
        } else if (kw == "generator") {
            if (n < 0 || d < 0) tk.fail("'generator' before 'dimension' and 'rep_dimension'");
            const long idx = tk.integer("generator index");
            if (idx < 0 || idx >= n) tk.fail("generator index out of range");
            if (generators.count(idx) != 0) tk.fail("duplicate generator " + std::to_string(idx));
            Matrix m(d, d);
            for (long i = 0; i < d; ++i) {
                for (long j = 0; j < d; ++j) {
                    const double re = tk.real("(real part)");
                    const double im = tk.real("(imaginary part)");
                    m(i, j) = Complex(re, im);
                }
            }
            generators.emplace(idx, std::move(m));
        } else if (kw == "constant") {
            if (n < 0) tk.fail("'constant' before 'dimension'");
            if (!have_constants) {
                constants.assign(static_cast<std::size_t>(n * n * n), Complex{});
                have_constants = true;
            }
            long ix[3];
            for (long& v : ix) {
                v = tk.integer("structure constant index");
                if (v < 0 || v >= n) tk.fail("structure constant index out of range");
            }
            const double re = tk.real("(real part)");
            const double im = tk.real("(imaginary part)");
            constants[static_cast<std::size_t>((ix[0] * n + ix[1]) * n + ix[2])] = Complex(re, im);
        } else if (kw == "end") {
            ended = true;
        } else {
            tk.fail("unknown keyword '" + kw + "'");
        }
    }
    if (!ended) throw AlgebraError("missing 'end'");
    if (name.empty()) throw AlgebraError("missing 'algebra <name>'");
    if (n < 0 || d < 0) throw AlgebraError("missing 'dimension' or 'rep_dimension'");
    if (static_cast<long>(generators.size()) != n) {
        throw AlgebraError("expected " + std::to_string(n) + " generators, got " +
                           std::to_string(generators.size()));
    }
    std::vector<Matrix> basis;
    for (auto& [idx, m] : generators) {
        basis.push_back(std::move(m));
    }
    LieAlgebra alg = have_constants
                         ? LieAlgebra::from_data(name, std::move(basis), std::move(constants))
                         : LieAlgebra::from_representation(name, std::move(basis));
    const auto report = validate(alg);
    if (!report.pass) {
        std::string failed;
        for (const auto& row : report.rows) {
            if (!row.pass) failed += " " + row.invariant;
        }
        throw AlgebraError("algebra '" + name + "' failed validation:" + failed);
    }
    return alg;
}

LieAlgebra load_algebra_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw AlgebraError("cannot open algebra file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return load_algebra_text(ss.str());
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

const ValidationRow* ValidationReport::row(const std::string& invariant) const {
    for (const auto& r : rows) {
        if (r.invariant == invariant) return &r;
    }
    return nullptr;
}

ValidationReport validate(const LieAlgebra& alg, double tolerance) {
    const std::size_t n = alg.dim();
    ValidationReport report;
    auto add = [&](std::string inv, double violation, double tol) {
        const bool ok = violation <= tol;
        report.rows.push_back({std::move(inv), violation, tol, ok});
        report.pass = report.pass && ok;
    };

    double antisym = 0.0;
    double jacobi = 0.0;
    double invariance = 0.0;
    double rep = 0.0;
    for (std::size_t a = 0; a < n; ++a) {
        for (std::size_t b = 0; b < n; ++b) {
            for (std::size_t c = 0; c < n; ++c) {
                antisym = std::max(antisym, std::abs(alg.f(a, b, c) + alg.f(b, a, c)));
                for (std::size_t e = 0; e < n; ++e) {
                    Complex s{};
                    for (std::size_t d = 0; d < n; ++d) {
                        s += alg.f(a, b, d) * alg.f(d, c, e) + alg.f(b, c, d) * alg.f(d, a, e) +
                             alg.f(c, a, d) * alg.f(d, b, e);
                    }
                    jacobi = std::max(jacobi, std::abs(s));
                }
            }
        }
    }
    // f_{abc} = f_{ab}^d g_{dc} must be totally antisymmetric.
    std::vector<Complex> lowered(n * n * n);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                Complex s{};
                for (std::size_t d = 0; d < n; ++d) s += alg.f(a, b, d) * alg.gram()(d, c);
                lowered[(a * n + b) * n + c] = s;
            }
    auto low = [&](std::size_t a, std::size_t b, std::size_t c) { return lowered[(a * n + b) * n + c]; };
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = 0; c < n; ++c) {
                invariance = std::max({invariance, std::abs(low(a, b, c) + low(b, a, c)),
                                       std::abs(low(a, b, c) - low(b, c, a))});
            }
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) {
            Matrix m = commutator(alg.generator(a), alg.generator(b));
            for (std::size_t c = 0; c < n; ++c) m -= alg.f(a, b, c) * alg.generator(c);
            rep = std::max(rep, max_abs(m));
        }

    add("structure_antisymmetry", antisym, tolerance);
    add("jacobi", jacobi, tolerance);
    add("form_invariance", invariance, tolerance);
    add("form_symmetry", max_abs(alg.gram() - alg.gram().transpose()), tolerance);
    add("form_condition", alg.gram_condition(), kGramConditionLimit);
    add("representation_consistency", rep, tolerance);
    return report;
}

// ---------------------------------------------------------------------------
// ad / Ad / exp / log
// ---------------------------------------------------------------------------

LinearOperator ad_operator(const LieAlgebra& alg, const AlgebraElement& x) {
    const std::size_t n = alg.dim();
    Matrix m = Matrix::Zero(n, n);
    for (std::size_t c = 0; c < n; ++c) {
        // (ad X)^c_b = X^a f_{ab}^c
        m.row(c) = x.coeffs.transpose() * alg.f_slice(c);
    }
    return {m};
}

LinearOperator Ad_operator(const LieAlgebra& alg, const GroupElement& m) {
    const std::size_t n = alg.dim();
    const Matrix inv = m.matrix.inverse();
    Matrix out(n, n);
    double worst = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
        double residual = 0.0;
        out.col(b) = alg.expand(m.matrix * alg.generator(b) * inv, &residual);
        worst = std::max(worst, residual);
    }
    if (worst > kExpandResidualLimit) {
        throw DomainError("Ad: conjugated generators leave the algebra (residual " +
                          std::to_string(worst) + "); element not in the group");
    }
    return {out};
}

GroupElement exp_map(const LieAlgebra& alg, const AlgebraElement& x) {
    return {alg.to_matrix(x.coeffs).exp()};
}

AlgebraElement log_map(const LieAlgebra& alg, const GroupElement& m) {
    const Matrix& a = m.matrix;
    Eigen::ComplexEigenSolver<Matrix> es(a);
    const Vector& lambda = es.eigenvalues();
    const double scale = std::max(1.0, lambda.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < lambda.size(); ++i) {
        const Complex l = lambda(i);
        if (l.real() <= 0.0 && std::abs(l.imag()) <= 1e-12 * scale) {
            throw DomainError("log: eigenvalue on the closed negative real axis (outside principal branch)");
        }
    }
    Matrix log_a;
    const Matrix& v = es.eigenvectors();
    if (condition_number(v) < 1e8) {
        Vector log_lambda(lambda.size());
        for (Eigen::Index i = 0; i < lambda.size(); ++i) log_lambda(i) = std::log(lambda(i));
        log_a = v * log_lambda.asDiagonal() * v.inverse();
    } else {
        // Defective or nearly so: inverse scaling and squaring on the Schur form.
        log_a = a.log();
    }
    double residual = 0.0;
    Vector coeffs = alg.expand(log_a, &residual);
    if (residual > kExpandResidualLimit) {
        throw DomainError("log: principal logarithm does not lie in the algebra (residual " +
                          std::to_string(residual) + ")");
    }
    return {coeffs};
}

// ---------------------------------------------------------------------------
// Subalgebra splits
// ---------------------------------------------------------------------------

SubalgebraSplit::SubalgebraSplit(const LieAlgebra& alg, const Matrix& h_basis) : h_basis_(h_basis) {
    const Eigen::Index n = static_cast<Eigen::Index>(alg.dim());
    if (h_basis.rows() != n || h_basis.cols() == 0 || h_basis.cols() > n) {
        throw AlgebraError("subalgebra basis has wrong shape");
    }
    Eigen::FullPivLU<Matrix> rank_check(h_basis);
    rank_check.setThreshold(1e-12);
    if (rank_check.rank() != h_basis.cols()) {
        throw AlgebraError("subalgebra basis is linearly dependent");
    }
    const Matrix& g = alg.gram();
    h_form_ = h_basis.transpose() * g * h_basis;
    const double cond = condition_number(h_form_);
    if (!(cond <= kGramConditionLimit)) {
        throw AlgebraError("restricted form is degenerate on the subalgebra (not self-dual)");
    }
    h_form_inv_ = h_form_.fullPivLu().inverse();
    proj_h_ = h_basis * h_form_inv_ * h_basis.transpose() * g;
    proj_perp_ = Matrix::Identity(n, n) - proj_h_;
    coord_map_ = h_form_inv_ * h_basis.transpose() * g;

    const double hscale = std::max(1.0, h_basis.cwiseAbs().maxCoeff());
    for (Eigen::Index i = 0; i < h_basis.cols(); ++i) {
        for (Eigen::Index j = 0; j < h_basis.cols(); ++j) {
            const Vector bracket =
                ad_operator(alg, {h_basis.col(i)}).matrix * h_basis.col(j);
            if ((proj_perp_ * bracket).cwiseAbs().maxCoeff() > 1e-12 * hscale * hscale) {
                throw AlgebraError("subalgebra basis is not closed under the bracket");
            }
        }
    }

    // Complement basis: greedily keep projected standard basis vectors that
    // stay independent, preferring those with no H-component.
    const Eigen::Index k = n - h_basis.cols();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    for (Eigen::Index a = 0; a < n; ++a) order[static_cast<std::size_t>(a)] = a;
    std::stable_sort(order.begin(), order.end(), [&](Eigen::Index x, Eigen::Index y) {
        return proj_h_.col(x).cwiseAbs().maxCoeff() < proj_h_.col(y).cwiseAbs().maxCoeff();
    });
    perp_basis_ = Matrix(n, 0);
    for (Eigen::Index a : order) {
        if (perp_basis_.cols() == k) break;
        Matrix trial(n, perp_basis_.cols() + 1);
        trial << perp_basis_, proj_perp_.col(a);
        Eigen::FullPivLU<Matrix> lu(trial);
        lu.setThreshold(1e-10);
        if (lu.rank() == trial.cols()) perp_basis_ = std::move(trial);
    }
    if (perp_basis_.cols() != k) {
        throw AlgebraError("could not build the orthogonal complement");
    }
    perp_form_inv_ = (perp_basis_.transpose() * g * perp_basis_).fullPivLu().inverse();
}

double SubalgebraSplit::perp_residual(const Vector& x) const {
    return x.size() == 0 ? 0.0 : (proj_perp_ * x).cwiseAbs().maxCoeff();
}

namespace {

std::vector<long> parse_int_list(const std::string& s, char sep) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) {
        std::size_t used = 0;
        long v = 0;
        try {
            v = std::stol(item, &used);
        } catch (const std::exception&) {
            used = 0;
        }
        if (item.empty() || used != item.size()) {
            throw AlgebraError("malformed integer list '" + s + "'");
        }
        out.push_back(v);
    }
    return out;
}

}  // namespace

SubalgebraSplit split_from_id(const LieAlgebra& alg, const std::string& id) {
    const auto n = static_cast<Eigen::Index>(alg.dim());
    if (id == "cartan") {
        return root_data(alg).split;
    }
    if (id.rfind("basis:", 0) == 0) {
        const auto idx = parse_int_list(id.substr(6), ',');
        Matrix hb = Matrix::Zero(n, static_cast<Eigen::Index>(idx.size()));
        for (std::size_t i = 0; i < idx.size(); ++i) {
            if (idx[i] < 0 || idx[i] >= n) throw AlgebraError("basis index out of range in '" + id + "'");
            hb(idx[i], static_cast<Eigen::Index>(i)) = 1.0;
        }
        return SubalgebraSplit(alg, hb);
    }
    if (id.rfind("block:", 0) == 0) {
        if (!alg.is_builtin_sl()) throw AlgebraError("block splits need a built-in sl(n)");
        const auto sizes = parse_int_list(id.substr(6), '+');
        std::vector<int> block_of;
        for (std::size_t b = 0; b < sizes.size(); ++b) {
            if (sizes[b] < 1) throw AlgebraError("block sizes must be positive");
            block_of.insert(block_of.end(), static_cast<std::size_t>(sizes[b]), static_cast<int>(b));
        }
        if (static_cast<int>(block_of.size()) != alg.sl_rank()) {
            throw AlgebraError("block sizes must sum to n in '" + id + "'");
        }
        const int d = alg.sl_rank();
        std::vector<Eigen::Index> cols;
        for (int i = 0; i + 1 < d; ++i) cols.push_back(i);
        Eigen::Index idx = d - 1;
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j) continue;
                if (block_of[static_cast<std::size_t>(i)] == block_of[static_cast<std::size_t>(j)]) cols.push_back(idx);
                ++idx;
            }
        Matrix hb = Matrix::Zero(n, static_cast<Eigen::Index>(cols.size()));
        for (std::size_t i = 0; i < cols.size(); ++i) hb(cols[i], static_cast<Eigen::Index>(i)) = 1.0;
        return SubalgebraSplit(alg, hb);
    }
    throw AlgebraError("unknown subalgebra id '" + id + "' (expected cartan, block:a+b+..., basis:i,j,...)");
}

// ---------------------------------------------------------------------------
// Root data
// ---------------------------------------------------------------------------

Complex RootData::evaluate(std::size_t root, const AlgebraElement& omega) const {
    // Coordinates of omega along the Cartan basis H_i.
    return roots.at(root).values.transpose() * split.h_coords(omega.coeffs);
}

AlgebraElement RootData::principal_element() const { return {principal}; }

RootData root_data(const LieAlgebra& alg) {
    if (!alg.is_builtin_sl()) {
        throw AlgebraError("root data is only available for built-in sl(n), not '" + alg.name() + "'");
    }
    const int d = alg.sl_rank();
    const auto n = static_cast<Eigen::Index>(alg.dim());
    Matrix hb = Matrix::Zero(n, d - 1);
    for (int k = 0; k + 1 < d; ++k) hb(k, k) = 1.0;
    RootData rd{SubalgebraSplit(alg, hb), {}, Vector()};

    std::vector<std::pair<int, int>> pairs;
    Eigen::Index idx = d - 1;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) {
            if (i == j) continue;
            Root r;
            r.values = Vector(d - 1);
            for (int k = 0; k + 1 < d; ++k) {
                const Matrix& h = alg.generator(static_cast<std::size_t>(k));
                r.values(k) = h(i, i) - h(j, j);
            }
            r.vector_index = static_cast<std::size_t>(idx);
            r.root_vector = Vector::Zero(n);
            r.root_vector(idx) = 1.0;
            r.positive = i < j;
            r.partner = 0;
            r.normalization = 0.0;
            rd.roots.push_back(std::move(r));
            pairs.emplace_back(i, j);
            ++idx;
        }
    for (std::size_t a = 0; a < pairs.size(); ++a) {
        for (std::size_t b = 0; b < pairs.size(); ++b) {
            if (pairs[b].first == pairs[a].second && pairs[b].second == pairs[a].first) {
                rd.roots[a].partner = b;
                rd.roots[a].normalization =
                    (alg.generator(rd.roots[a].vector_index) * alg.generator(rd.roots[b].vector_index)).trace();
            }
        }
    }
    Matrix h = Matrix::Zero(d, d);
    for (int i = 0; i < d; ++i) h(i, i) = static_cast<double>(d - 1 - 2 * i);
    rd.principal = alg.expand(h);
    return rd;
}

}  // namespace dynr
