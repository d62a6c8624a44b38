#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sectorcount/asymptotics.hpp"
#include "sectorcount/counting.hpp"

namespace sectorcount {

enum class CounterChoice { Auto, Brute, Fast };
enum class OutputFormat { CSV, JSON };

const char* counter_name(CounterChoice c);

// One sweep: slope, schedule eps = c0 * R^-lambda, geometric R-grid.
// Deterministic: identical configs produce byte-identical CSV output.
struct SweepConfig {
    SlopeValue slope = SlopeValue::rational(Rat(1));
    Rat lambda = Rat(1);
    Rat c0 = Rat(1);
    Int r_min = 10;
    Int r_max = 1000;
    int points = 13;
    CounterChoice counter = CounterChoice::Auto;
    std::string output;  // empty: caller decides the sink
    OutputFormat format = OutputFormat::CSV;
    long seed = 0;  // for randomized instance suites built on top of sweeps
    Rat eta = Rat(1);
    bool timing = false;      // when false the ms column prints 0 (reproducible files)
    Int brute_ceiling = kDefaultBruteCeiling;
    Int crosscheck_max = 0;   // Auto mode re-runs brute for R <= this and compares

    void validate() const;
};

struct ExperimentRow {
    Rat R;
    Rat eps;
    Int S;
    Int Delta;
    Interval area;
    Rat main_mid;
    Rat abs_err;  // |S - mid(area)|
    Rat ratio;    // S / mid(area)
    std::string regime;
    std::string method;
    double ms = 0.0;
    bool precision_flagged = false;
    std::optional<std::string> error;  // failed rows are recorded, not dropped
};

// Runs the sweep; rows come back in grid order (non-decreasing R). Progress
// goes to the diagnostic stream (stderr), never to the result stream.
std::vector<ExperimentRow> run_sweep(const SweepConfig& config);

// Least-squares slope of log |S - Area| against log R over rows with a
// positive error. Throws InsufficientData when fewer than 5 rows qualify.
struct FitResult {
    double slope = 0.0;
    double r2 = 0.0;
    int used = 0;
    int excluded = 0;  // rows with S == mid(area) exactly, noted and skipped
};

FitResult fit_error_exponent(const std::vector<ExperimentRow>& rows);

// Measured constant for an error bound shape: C = max |err| / bound(R).
enum class BoundForm { LinearR, PowerR, QuadEps };

struct BoundCheck {
    double c_measured = 0.0;
    bool pass = true;
};

BoundCheck check_bound(const std::vector<ExperimentRow>& rows, BoundForm form,
                       double exponent = 1.0, double cap = 10.0);

// Same check against caller-supplied (R, eps, err) triples; used for error
// definitions other than |S - Area|.
BoundCheck check_bound_values(const std::vector<std::tuple<Rat, Rat, Rat>>& values,
                              BoundForm form, double exponent = 1.0, double cap = 10.0);

// CSV with the fixed header
//   R,eps_num,eps_den,S,Delta,area_mid,area_width,main_term,abs_err,ratio,regime,method,ms
std::string to_csv(const std::vector<ExperimentRow>& rows, bool timing = false);

// JSON array of row objects with the same field names.
std::string to_json(const std::vector<ExperimentRow>& rows, bool timing = false);

// Plain-text `key = value` config files; '#' starts a comment. Unknown keys
// raise ConfigError carrying the 1-based line number.
SweepConfig parse_config(std::istream& in);
SweepConfig parse_config_file(const std::string& path);

}  // namespace sectorcount
