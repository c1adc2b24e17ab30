#pragma once

// Run configuration, sampling and the verify / eval / sweep drivers behind
// the command-line tool.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "dynr/cdyb.hpp"
#include "dynr/groupoid.hpp"
#include "dynr/lie_algebra.hpp"
#include "dynr/rmatrix.hpp"

namespace dynr {

inline constexpr const char* kLibraryVersion = "0.1.0";

enum ExitCode : int { kExitPass = 0, kExitResidual = 1, kExitConfig = 2, kExitDomain = 3 };

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string algebra = "sl2";   // built-in id or path to an algebra file
    std::string rmatrix = "f0";
    std::string subalgebra;        // split id, empty for none
    double kappa = 1.0;
    int samples = 10;
    std::optional<std::uint64_t> seed;
    double fd_step = 1e-5;
    int richardson = 2;            // 0 selects the plain central scheme
    std::optional<double> tol;
    std::string out;
    std::string grid;
    std::string point;             // comma-separated basis coordinates
    std::string quantity;          // sweep quantity
    double radius = 0.0;           // sampling radius, 0 = per-equation default
    int threads = 0;               // 0 = hardware concurrency

    [[nodiscard]] DiffScheme scheme() const;
    /// Canonical key=value text of every field that affects results.
    [[nodiscard]] std::string canonical() const;
    /// FNV-1a 64 of canonical(), as 16 hex digits.
    [[nodiscard]] std::string hash() const;
    /// Throws ConfigError on out-of-range values.
    void validate() const;
};

/// Flat key = value text; '#' starts a comment. Keys are the long flag
/// names with '-' or '_'. Throws ConfigError on unknown keys or bad values.
void apply_config_text(RunConfig& config, const std::string& text);
void apply_config_file(RunConfig& config, const std::string& path);
/// Sets one field from its textual value.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

/// Everything a run needs, resolved from a config.
struct RunContext {
    std::shared_ptr<const LieAlgebra> algebra;
    std::shared_ptr<const SubalgebraSplit> split;  // may be null
    std::shared_ptr<const RootData> roots;         // built-in sl(n) only
    std::optional<RMatrixFunction> rfun;
};

/// Resolves algebra, split and r-matrix; ConfigError on bad ids.
RunContext make_context(const RunConfig& config);

/// r-matrix ids: f0, f0:eigen, from-q:zero, from-q:random, from-q:canonical,
/// dirac, cartan-coth, constant:dj, constant:zero, casimir.
RMatrixFunction make_rmatrix(const std::string& id, const RunContext& context, double kappa,
                             std::uint64_t seed);

Vector parse_point(const std::string& text, std::size_t dim);

/// Runs fun(i) for i in [0, count) on up to `threads` workers; results
/// are stored by index so the output order never depends on scheduling.
template <class T, class Fun>
std::vector<T> parallel_map(std::size_t count, int threads, Fun fun);

struct VerifyOutcome {
    std::vector<ResidualReport> reports;
    std::vector<std::string> details;   // per report, e.g. the coordinate triple
    [[nodiscard]] nlohmann::json payload_json() const;
    [[nodiscard]] int exit_code() const;
    std::string config_hash;
    std::uint64_t seed = 0;
    std::string rmatrix;
};

/// Equations: gcdyb, lie-cdyb, h-cdyb, equivariance, mcybe, groupoid-jacobi.
VerifyOutcome run_verify(const std::string& equation, const RunConfig& config);

struct SweepAxis {
    std::size_t index;   // basis coordinate
    double lo;
    double hi;
    std::size_t count;
};

/// "idx:lo:hi:count[,idx:lo:hi:count]"; throws ConfigError on an invalid
/// or empty grid.
std::vector<SweepAxis> parse_grid(const std::string& text, std::size_t dim);

struct SweepPoint {
    std::vector<double> coords;
    double value = 0.0;
    bool pass = false;
    std::string error;   // non-empty: outside the domain
};

struct SweepResult {
    std::string quantity;
    std::vector<SweepAxis> axes;
    std::vector<SweepPoint> points;
    double max = 0.0;
    double median = 0.0;
    std::size_t fail_count = 0;
    std::size_t domain_count = 0;

    [[nodiscard]] std::string to_csv() const;
    [[nodiscard]] nlohmann::json to_json() const;
    [[nodiscard]] int exit_code() const;
};

/// Quantities: pivot-condition, gcdyb, lie-cdyb, h-cdyb, mcybe. Default:
/// pivot-condition for from-q r-matrices, lie-cdyb (h-cdyb with a split)
/// otherwise.
SweepResult run_sweep(const RunConfig& config);

/// Tensor JSON plus kind, label, domain check and antisymmetry defect.
/// Throws DomainError outside the domain.
nlohmann::json run_eval(const RunConfig& config);

nlohmann::json validation_to_json(const LieAlgebra& algebra, const ValidationReport& report);

/// Timestamp and host block kept apart from the payload.
nlohmann::json run_metadata(const RunConfig& config);

}  // namespace dynr

#include "dynr/detail/parallel.hpp"
