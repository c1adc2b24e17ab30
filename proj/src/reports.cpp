#include "dynr/reports.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <sstream>

#include <unistd.h>

#include <nlohmann/json.hpp>

namespace dynr {

// ---------------------------------------------------------------------------
// RunConfig
// ---------------------------------------------------------------------------

DiffScheme RunConfig::scheme() const {
    return richardson == 0 ? DiffScheme::central(fd_step) : DiffScheme::richardson(fd_step, richardson);
}

std::string RunConfig::canonical() const {
    std::ostringstream s;
    s << std::setprecision(17);
    s << "algebra=" << algebra << "\n"
      << "rmatrix=" << rmatrix << "\n"
      << "subalgebra=" << subalgebra << "\n"
      << "kappa=" << kappa << "\n"
      << "samples=" << samples << "\n"
      << "seed=" << (seed ? std::to_string(*seed) : std::string()) << "\n"
      << "fd-step=" << fd_step << "\n"
      << "richardson=" << richardson << "\n"
      << "tol=";
    if (tol) s << *tol;
    s << "\n"
      << "grid=" << grid << "\n"
      << "point=" << point << "\n"
      << "quantity=" << quantity << "\n"
      << "radius=" << radius << "\n";
    return s.str();
}

std::string RunConfig::hash() const {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : canonical()) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

void RunConfig::validate() const {
    if (!(std::isfinite(kappa) && kappa != 0.0)) throw ConfigError("kappa must be finite and non-zero");
    if (samples < 1 || samples > 1000000) throw ConfigError("samples must be in [1, 1000000]");
    try {
        scheme().validate();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (richardson < 0 || richardson > 6) throw ConfigError("richardson must be in [0, 6]");
    if (tol && !(*tol > 0.0 && std::isfinite(*tol))) throw ConfigError("tol must be positive");
    if (!(radius >= 0.0 && std::isfinite(radius))) throw ConfigError("radius must be non-negative");
    if (threads < 0) throw ConfigError("threads must be non-negative");
}

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not a number: '" + v + "'");
    }
}

long long to_integer(const std::string& key, const std::string& v) {
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) throw std::invalid_argument(v);
        return x;
    } catch (const std::exception&) {
        throw ConfigError(key + ": not an integer: '" + v + "'");
    }
}

}  // namespace

void set_config_value(RunConfig& c, const std::string& raw_key, const std::string& value) {
    std::string key = raw_key;
    std::replace(key.begin(), key.end(), '_', '-');
    if (key == "algebra") c.algebra = value;
    else if (key == "rmatrix") c.rmatrix = value;
    else if (key == "subalgebra") c.subalgebra = value;
    else if (key == "kappa") c.kappa = to_double(key, value);
    else if (key == "samples") c.samples = static_cast<int>(to_integer(key, value));
    else if (key == "seed") {
        if (!value.empty() && value[0] == '-') throw ConfigError("seed must be non-negative");
        c.seed = static_cast<std::uint64_t>(to_integer(key, value));
    }
    else if (key == "fd-step") c.fd_step = to_double(key, value);
    else if (key == "richardson") c.richardson = static_cast<int>(to_integer(key, value));
    else if (key == "tol") c.tol = to_double(key, value);
    else if (key == "out") c.out = value;
    else if (key == "grid") c.grid = value;
    else if (key == "point") c.point = value;
    else if (key == "quantity") c.quantity = value;
    else if (key == "radius") c.radius = to_double(key, value);
    else if (key == "threads") c.threads = static_cast<int>(to_integer(key, value));
    else throw ConfigError("unknown config key '" + raw_key + "'");
}

void apply_config_text(RunConfig& c, const std::string& text) {
    std::istringstream in(text);
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("config line " + std::to_string(lineno) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        if (key.empty()) throw ConfigError("config line " + std::to_string(lineno) + ": empty key");
        set_config_value(c, key, trim(line.substr(eq + 1)));
    }
}

void apply_config_file(RunConfig& c, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    apply_config_text(c, buf.str());
}

// ---------------------------------------------------------------------------
// Context
// ---------------------------------------------------------------------------

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

std::mt19937_64 sample_rng(std::uint64_t seed, std::uint64_t index) {
    return std::mt19937_64(splitmix64(seed ^ splitmix64(index + 1)));
}

std::shared_ptr<const LieAlgebra> load_algebra(const std::string& id) {
    try {
        if (id.rfind("sl", 0) == 0 && id.size() <= 3) return std::make_shared<LieAlgebra>(builtin_from_id(id));
        return std::make_shared<LieAlgebra>(load_algebra_file(id));
    } catch (const AlgebraError& e) {
        throw ConfigError(std::string("algebra: ") + e.what());
    }
}

QForm make_qform(const std::string& id, const RunContext& ctx, std::uint64_t seed) {
    const LieAlgebra& alg = *ctx.algebra;
    if (id == "from-q:zero") return QForm::zero(alg);
    if (id == "from-q:random") {
        std::mt19937_64 rng(splitmix64(seed));
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        const auto n = static_cast<Eigen::Index>(alg.dim());
        Matrix m(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) m(i, j) = u(rng);
        return QForm::random_constant(alg, m, 0.3);
    }
    if (id == "from-q:canonical") {
        return QForm::from_rmatrix(ctx.algebra, RMatrixFunction::f0(ctx.algebra).on_group());
    }
    throw ConfigError("unknown 2-form id '" + id + "'");
}

}  // namespace

RMatrixFunction make_rmatrix(const std::string& id, const RunContext& ctx, double kappa, std::uint64_t seed) {
    const auto& alg = ctx.algebra;
    auto need_roots = [&] {
        if (!ctx.roots) throw ConfigError(id + " requires a built-in sl(n) algebra");
        return ctx.roots;
    };
    if (id == "f0") return RMatrixFunction::f0(alg, F0Method::Series);
    if (id == "f0:eigen") return RMatrixFunction::f0(alg, F0Method::Eigen);
    if (id.rfind("from-q:", 0) == 0) return RMatrixFunction::from_q(alg, make_qform(id, ctx, seed));
    if (id == "dirac") {
        std::shared_ptr<const SubalgebraSplit> split = ctx.split;
        if (!split) split = std::shared_ptr<const SubalgebraSplit>(need_roots(), &need_roots()->split);
        return RMatrixFunction::dirac(alg, split, RMatrixFunction::f0(alg), kappa);
    }
    if (id == "cartan-coth") return RMatrixFunction::cartan_coth(alg, need_roots());
    if (id == "constant:dj") return RMatrixFunction::constant(alg, dj_constant(*alg, *need_roots()), id);
    if (id == "constant:zero") return RMatrixFunction::constant(alg, Tensor2::zero(alg->dim()), id);
    if (id == "casimir") return RMatrixFunction::constant(alg, casimir_hat(*alg), id);
    throw ConfigError("unknown r-matrix id '" + id + "'");
}

RunContext make_context(const RunConfig& config) {
    config.validate();
    RunContext ctx;
    ctx.algebra = load_algebra(config.algebra);
    if (ctx.algebra->is_builtin_sl()) ctx.roots = std::make_shared<RootData>(root_data(*ctx.algebra));
    if (!config.subalgebra.empty()) {
        try {
            ctx.split = std::make_shared<SubalgebraSplit>(split_from_id(*ctx.algebra, config.subalgebra));
        } catch (const AlgebraError& e) {
            throw ConfigError(std::string("subalgebra: ") + e.what());
        }
    }
    if (!config.rmatrix.empty()) {
        if (config.rmatrix == "from-q:random" && !config.seed) {
            throw ConfigError("from-q:random needs --seed");
        }
        ctx.rfun = make_rmatrix(config.rmatrix, ctx, config.kappa, config.seed.value_or(0));
        if (!ctx.split && ctx.rfun->split()) ctx.split = ctx.rfun->split();
    }
    return ctx;
}

Vector parse_point(const std::string& text, std::size_t dim) {
    Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
    if (trim(text).empty()) return v;
    std::istringstream in(text);
    std::string item;
    std::size_t i = 0;
    while (std::getline(in, item, ',')) {
        if (i >= dim) throw ConfigError("point has more than " + std::to_string(dim) + " coordinates");
        v(static_cast<Eigen::Index>(i++)) = to_double("point", trim(item));
    }
    if (i != dim) throw ConfigError("point needs " + std::to_string(dim) + " coordinates");
    return v;
}

// ---------------------------------------------------------------------------
// Sampling
// ---------------------------------------------------------------------------

namespace {

Vector uniform_vector(std::mt19937_64& rng, Eigen::Index n) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    Vector v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng);
    return v;
}

// Random element of the split (or the algebra) rescaled so the spectral
// radius of ad is uniform in [lo, hi].
Vector sample_by_radius(std::mt19937_64& rng, const LieAlgebra& alg, const SubalgebraSplit* split, double lo,
                        double hi) {
    Vector x = split != nullptr ? Vector(split->h_basis() * uniform_vector(rng, split->h_basis().cols()))
                                : uniform_vector(rng, static_cast<Eigen::Index>(alg.dim()));
    std::uniform_real_distribution<double> u(lo, hi);
    const double target = u(rng);
    const double rho = spectral_radius(ad_operator(alg, AlgebraElement{x}));
    if (rho > 1e-12) x *= target / rho;
    return x;
}

// sample_by_radius inside H, redrawn until ad(omega)|_{H-perp} has
// smallest singular value at least kSamplingMargin.
Vector sample_regular(std::mt19937_64& rng, const LieAlgebra& alg, const SubalgebraSplit& split, double lo,
                      double hi) {
    for (int attempt = 0; attempt < 1000; ++attempt) {
        Vector x = sample_by_radius(rng, alg, &split, lo, hi);
        if (regularity_margin(alg, split, AlgebraElement{x}) >= kSamplingMargin) return x;
    }
    throw DomainError("no point with the required regularity margin in the sampling range");
}

// Random element with Euclidean coefficient norm uniform in (0, radius].
Vector sample_by_norm(std::mt19937_64& rng, const LieAlgebra& alg, double radius) {
    Vector x = uniform_vector(rng, static_cast<Eigen::Index>(alg.dim()));
    std::uniform_real_distribution<double> u(0.0, radius);
    const double norm = x.norm();
    if (norm > 0.0) x *= u(rng) / norm;
    return x;
}

MatrixCoordinate random_coordinate(std::mt19937_64& rng, const LieAlgebra& alg) {
    std::uniform_int_distribution<int> factor(0, 2);
    std::uniform_int_distribution<std::size_t> entry(0, alg.rep_dim() - 1);
    MatrixCoordinate c;
    c.factor = static_cast<MatrixCoordinate::Factor>(factor(rng));
    c.row = entry(rng);
    c.col = entry(rng);
    return c;
}

std::string describe(const MatrixCoordinate& c) {
    return to_string(c.factor) + "(" + std::to_string(c.row) + "," + std::to_string(c.col) + ")";
}

struct Sample {
    ResidualReport report;
    std::string detail;
    bool domain_failure = false;
};

Sample failed_sample(const std::string& equation, const LieAlgebra& alg, const Vector& point,
                     const DiffScheme& scheme, const std::string& what) {
    Sample s;
    s.report.equation = equation;
    s.report.algebra = alg.name();
    s.report.point = point;
    s.report.scheme = scheme;
    s.report.norm = std::numeric_limits<double>::quiet_NaN();
    s.report.error = what;
    s.report.pass = false;
    s.domain_failure = true;
    return s;
}

const std::vector<std::string> kEquations = {"gcdyb", "lie-cdyb", "h-cdyb", "equivariance", "mcybe",
                                             "groupoid-jacobi"};

}  // namespace

nlohmann::json VerifyOutcome::payload_json() const {
    nlohmann::json arr = nlohmann::json::array();
    for (std::size_t i = 0; i < reports.size(); ++i) {
        nlohmann::json j = report_to_json(reports[i]);
        j["index"] = i;
        j["rmatrix"] = rmatrix;
        j["config_hash"] = config_hash;
        j["version"] = kLibraryVersion;
        if (i < details.size() && !details[i].empty()) j["detail"] = details[i];
        arr.push_back(std::move(j));
    }
    return arr;
}

int VerifyOutcome::exit_code() const {
    std::size_t domain = 0;
    bool failed = false;
    for (const auto& r : reports) {
        if (!r.error.empty()) ++domain;
        else if (!r.pass) failed = true;
    }
    if (failed) return kExitResidual;
    if (!reports.empty() && domain == reports.size()) return kExitDomain;
    return kExitPass;
}

VerifyOutcome run_verify(const std::string& equation, const RunConfig& config) {
    if (std::find(kEquations.begin(), kEquations.end(), equation) == kEquations.end()) {
        throw ConfigError("unknown equation '" + equation + "'");
    }
    const bool sampled = equation != "mcybe";
    if (sampled && !config.seed) throw ConfigError("verify " + equation + " needs --seed");
    const RunContext ctx = make_context(config);
    if (!ctx.rfun) throw ConfigError("verify needs --rmatrix");
    const LieAlgebra& alg = *ctx.algebra;
    const RMatrixFunction& rfun = *ctx.rfun;
    const DiffScheme scheme = config.scheme();
    const std::uint64_t seed = config.seed.value_or(0);
    const SubalgebraSplit* split = ctx.split.get();
    if (equation == "h-cdyb" && split == nullptr) throw ConfigError("h-cdyb needs --subalgebra");

    VerifyOutcome out;
    out.config_hash = config.hash();
    out.seed = seed;
    out.rmatrix = rfun.label();

    const std::size_t count = sampled ? static_cast<std::size_t>(config.samples) : 1;
    auto evaluate = [&](std::size_t i) -> Sample {
        std::mt19937_64 rng = sample_rng(seed, i);
        Vector point;
        try {
            Sample s;
            if (equation == "gcdyb") {
                point = sample_by_norm(rng, alg, config.radius > 0 ? config.radius : 1.0);
                s.report = gcdyb_residual(alg, rfun.on_group(), exp_map(alg, AlgebraElement{point}), scheme,
                                          config.tol);
                s.report.point = point;
            } else if (equation == "lie-cdyb") {
                point = sample_by_radius(rng, alg, nullptr, 0.0, config.radius > 0 ? config.radius : 3.0);
                s.report = lie_cdyb_residual(alg, rfun.on_algebra(), AlgebraElement{point}, scheme, nullptr,
                                             config.tol);
            } else if (equation == "h-cdyb") {
                const double hi = config.radius > 0 ? config.radius : 3.0;
                point = sample_regular(rng, alg, *split, hi / 6.0, hi);
                s.report = lie_cdyb_residual(alg, rfun.on_algebra(), AlgebraElement{point}, scheme, split,
                                             config.tol);
            } else if (equation == "equivariance") {
                const double hi = config.radius > 0 ? config.radius : 3.0;
                point = split != nullptr ? sample_regular(rng, alg, *split, hi / 6.0, hi)
                                         : sample_by_radius(rng, alg, nullptr, 0.0, hi);
                const Vector t = split != nullptr
                                     ? Vector(split->h_basis() * uniform_vector(rng, split->h_basis().cols()))
                                     : uniform_vector(rng, static_cast<Eigen::Index>(alg.dim()));
                s.report = equivariance_residual(alg, rfun.on_algebra(), AlgebraElement{point}, AlgebraElement{t},
                                                 scheme, split, config.tol);
                std::ostringstream d;
                d << std::setprecision(17) << "T=";
                for (Eigen::Index k = 0; k < t.size(); ++k) d << (k ? "," : "") << t(k).real();
                s.detail = d.str();
            } else if (equation == "mcybe") {
                point = parse_point(config.point, alg.dim());
                s.report = mcybe_residual(alg, rfun.at(AlgebraElement{point}), config.tol);
                s.report.point = point;
            } else {  // groupoid-jacobi
                const double r = config.radius > 0 ? config.radius : 1.0;
                const Vector xf = sample_by_norm(rng, alg, r);
                const Vector y = sample_by_norm(rng, alg, r);
                const Vector xi = sample_by_norm(rng, alg, r);
                point = Vector(3 * xf.size());
                point << xf, y, xi;
                const GroupoidPoint p{exp_map(alg, AlgebraElement{xf}), exp_map(alg, AlgebraElement{y}),
                                      exp_map(alg, AlgebraElement{xi})};
                const std::array<MatrixCoordinate, 3> coords{random_coordinate(rng, alg),
                                                             random_coordinate(rng, alg),
                                                             random_coordinate(rng, alg)};
                s.report.equation = "groupoid-jacobi";
                s.report.algebra = alg.name();
                s.report.point = point;
                s.report.scheme = scheme;
                s.report.tolerance = config.tol.value_or(1e-5);
                s.report.norm = jacobi_residual(alg, p, coords, rfun.on_group(), config.kappa, scheme);
                s.report.finalize();
                s.detail = describe(coords[0]) + " " + describe(coords[1]) + " " + describe(coords[2]);
            }
            s.report.seed = config.seed;
            return s;
        } catch (const DomainError& e) {
            Sample s = failed_sample(equation, alg, point, scheme, e.what());
            s.report.seed = config.seed;
            return s;
        }
    };
    const auto samples = parallel_map<Sample>(count, config.threads, evaluate);
    for (const auto& s : samples) {
        out.reports.push_back(s.report);
        out.details.push_back(s.detail);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Sweep
// ---------------------------------------------------------------------------

std::vector<SweepAxis> parse_grid(const std::string& text, std::size_t dim) {
    std::vector<SweepAxis> axes;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        std::vector<std::string> parts;
        std::istringstream pin(item);
        std::string p;
        while (std::getline(pin, p, ':')) parts.push_back(trim(p));
        if (parts.size() != 4) throw ConfigError("grid axis '" + item + "' must be index:lo:hi:count");
        const long long idx = to_integer("grid", parts[0]);
        const long long count = to_integer("grid", parts[3]);
        SweepAxis a{0, to_double("grid", parts[1]), to_double("grid", parts[2]), 0};
        if (idx < 0 || static_cast<std::size_t>(idx) >= dim) throw ConfigError("grid axis index out of range");
        if (count < 1) throw ConfigError("invalid grid: axis with no points");
        if (!(a.hi >= a.lo)) throw ConfigError("invalid grid: hi < lo");
        if (count == 1 && a.hi != a.lo) throw ConfigError("invalid grid: one point needs lo = hi");
        a.index = static_cast<std::size_t>(idx);
        a.count = static_cast<std::size_t>(count);
        axes.push_back(a);
    }
    if (axes.empty()) throw ConfigError("invalid grid: no axes");
    if (axes.size() > 2) throw ConfigError("invalid grid: at most two axes");
    return axes;
}

std::string SweepResult::to_csv() const {
    std::ostringstream s;
    s << std::setprecision(17);
    for (const auto& a : axes) s << "coord" << a.index << ",";
    s << "norm,pass\n";
    for (const auto& p : points) {
        for (double c : p.coords) s << c << ",";
        if (p.error.empty()) s << p.value;
        else s << "nan";
        s << "," << (p.pass ? "true" : "false") << "\n";
    }
    return s.str();
}

nlohmann::json SweepResult::to_json() const {
    nlohmann::json ax = nlohmann::json::array();
    for (const auto& a : axes) ax.push_back({{"index", a.index}, {"lo", a.lo}, {"hi", a.hi}, {"count", a.count}});
    nlohmann::json pts = nlohmann::json::array();
    for (const auto& p : points) {
        nlohmann::json j = {{"coords", p.coords}, {"pass", p.pass}};
        if (p.error.empty()) j["value"] = p.value;
        else {
            j["value"] = nullptr;
            j["error"] = p.error;
        }
        pts.push_back(std::move(j));
    }
    return {{"quantity", quantity},
            {"axes", ax},
            {"points", pts},
            {"summary", {{"max", max}, {"median", median}, {"fail_count", fail_count}, {"domain_count", domain_count}}}};
}

int SweepResult::exit_code() const {
    if (fail_count > 0) return kExitResidual;
    if (!points.empty() && domain_count == points.size()) return kExitDomain;
    return kExitPass;
}

SweepResult run_sweep(const RunConfig& config) {
    const RunContext ctx = make_context(config);
    if (!ctx.rfun) throw ConfigError("sweep needs --rmatrix");
    const LieAlgebra& alg = *ctx.algebra;
    SweepResult res;
    res.axes = parse_grid(config.grid, alg.dim());
    res.quantity = config.quantity;
    const bool from_q = ctx.rfun->kind() == RMatrixKind::FromQ;
    if (res.quantity.empty()) res.quantity = from_q ? "pivot-condition" : (ctx.split ? "h-cdyb" : "lie-cdyb");
    const std::vector<std::string> known = {"pivot-condition", "gcdyb", "lie-cdyb", "h-cdyb", "mcybe"};
    if (std::find(known.begin(), known.end(), res.quantity) == known.end()) {
        throw ConfigError("unknown sweep quantity '" + res.quantity + "'");
    }
    if (res.quantity == "pivot-condition" && !from_q) throw ConfigError("pivot-condition needs a from-q r-matrix");
    if (res.quantity == "h-cdyb" && !ctx.split) throw ConfigError("h-cdyb needs --subalgebra");
    std::optional<QForm> q;
    if (res.quantity == "pivot-condition") q = make_qform(config.rmatrix, ctx, config.seed.value_or(0));

    const Vector base = parse_point(config.point, alg.dim());
    std::size_t total = 1;
    for (const auto& a : res.axes) total *= a.count;
    const DiffScheme scheme = config.scheme();
    const RMatrixFunction& rfun = *ctx.rfun;

    auto evaluate = [&](std::size_t k) -> SweepPoint {
        SweepPoint p;
        Vector x = base;
        std::size_t rest = k;
        // The last axis varies fastest.
        std::vector<std::size_t> idx(res.axes.size());
        for (std::size_t ai = res.axes.size(); ai-- > 0;) {
            idx[ai] = rest % res.axes[ai].count;
            rest /= res.axes[ai].count;
        }
        for (std::size_t ai = 0; ai < res.axes.size(); ++ai) {
            const auto& a = res.axes[ai];
            const double c = a.count == 1 ? a.lo
                                          : a.lo + (a.hi - a.lo) * static_cast<double>(idx[ai]) /
                                                       static_cast<double>(a.count - 1);
            x(static_cast<Eigen::Index>(a.index)) = c;
            p.coords.push_back(c);
        }
        try {
            if (res.quantity == "pivot-condition") {
                const GroupElement m = exp_map(alg, AlgebraElement{x});
                p.value = condition_number(q_pivot(alg, *q, m).matrix);
                p.pass = p.value <= kPivotConditionLimit;
            } else {
                ResidualReport r;
                if (res.quantity == "gcdyb") {
                    r = gcdyb_residual(alg, rfun.on_group(), exp_map(alg, AlgebraElement{x}), scheme, config.tol);
                } else if (res.quantity == "lie-cdyb") {
                    r = lie_cdyb_residual(alg, rfun.on_algebra(), AlgebraElement{x}, scheme, nullptr, config.tol);
                } else if (res.quantity == "h-cdyb") {
                    r = lie_cdyb_residual(alg, rfun.on_algebra(), AlgebraElement{x}, scheme, ctx.split.get(),
                                          config.tol);
                } else {
                    r = mcybe_residual(alg, rfun.at(AlgebraElement{x}), config.tol);
                }
                p.value = r.norm;
                p.pass = r.pass;
            }
        } catch (const DomainError& e) {
            p.error = e.what();
            p.pass = false;
        }
        return p;
    };
    res.points = parallel_map<SweepPoint>(total, config.threads, evaluate);

    std::vector<double> values;
    for (const auto& p : res.points) {
        if (!p.error.empty()) {
            ++res.domain_count;
            continue;
        }
        values.push_back(p.value);
        if (!p.pass) ++res.fail_count;
    }
    if (!values.empty()) {
        std::sort(values.begin(), values.end());
        res.max = values.back();
        const std::size_t m = values.size() / 2;
        res.median = values.size() % 2 ? values[m] : 0.5 * (values[m - 1] + values[m]);
    }
    return res;
}

// ---------------------------------------------------------------------------
// Eval, validation, metadata
// ---------------------------------------------------------------------------

nlohmann::json run_eval(const RunConfig& config) {
    const RunContext ctx = make_context(config);
    if (!ctx.rfun) throw ConfigError("eval needs --rmatrix");
    const Vector point = parse_point(config.point, ctx.algebra->dim());
    const Tensor2 r = ctx.rfun->at(AlgebraElement{point});
    nlohmann::json j = tensor_to_json(*ctx.algebra, r);
    nlohmann::json pt = nlohmann::json::array();
    for (Eigen::Index i = 0; i < point.size(); ++i) pt.push_back(point(i).real());
    j["point"] = pt;
    j["kind"] = to_string(ctx.rfun->kind());
    j["label"] = ctx.rfun->label();
    j["domain"] = ctx.rfun->domain().description;
    j["domain_check"] = "ok";
    j["antisymmetry_defect"] = antisymmetry_defect(r);
    j["config_hash"] = config.hash();
    j["version"] = kLibraryVersion;
    return j;
}

nlohmann::json validation_to_json(const LieAlgebra& alg, const ValidationReport& report) {
    nlohmann::json rows = nlohmann::json::array();
    for (const auto& r : report.rows) {
        rows.push_back({{"invariant", r.invariant},
                        {"max_violation", r.max_violation},
                        {"tolerance", r.tolerance},
                        {"pass", r.pass}});
    }
    return {{"algebra", alg.name()},
            {"dim", alg.dim()},
            {"rep_dim", alg.rep_dim()},
            {"basis_hash", alg.basis_hash()},
            {"pass", report.pass},
            {"rows", rows},
            {"version", kLibraryVersion}};
}

nlohmann::json run_metadata(const RunConfig& config) {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm utc{};
    gmtime_r(&now, &utc);
    char stamp[32];
    std::strftime(stamp, sizeof stamp, "%Y-%m-%dT%H:%M:%SZ", &utc);
    char host[256] = {0};
    if (gethostname(host, sizeof host - 1) != 0) host[0] = '\0';
    return {{"timestamp", stamp},
            {"host", host},
            {"threads", config.threads > 0 ? config.threads : static_cast<int>(std::thread::hardware_concurrency())},
            {"config_hash", config.hash()},
            {"config", config.canonical()},
            {"version", kLibraryVersion}};
}

}  // namespace dynr
