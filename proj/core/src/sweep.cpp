#include "sectorcount/sweep.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <tuple>

#include <nlohmann/json.hpp>

#include "sectorcount/errors.hpp"

namespace sectorcount {

const char* counter_name(CounterChoice c) {
    switch (c) {
        case CounterChoice::Auto: return "auto";
        case CounterChoice::Brute: return "brute";
        case CounterChoice::Fast: return "fast";
    }
    return "unknown";
}

void SweepConfig::validate() const {
    if (r_min < 10) throw std::invalid_argument("sweep config: r_min must be >= 10");
    if (points < 1) throw std::invalid_argument("sweep config: points must be >= 1");
    if (points >= 2 && r_max <= r_min)
        throw std::invalid_argument("sweep config: need r_max > r_min for a multi-point grid");
    if (r_max < r_min) throw std::invalid_argument("sweep config: r_max must be >= r_min");
    if (c0 <= 0) throw std::invalid_argument("sweep config: c0 must be positive");
    if (lambda < 0) throw std::invalid_argument("sweep config: lambda must be >= 0");
    if (eta < 1) throw std::invalid_argument("sweep config: eta must be >= 1");
}

namespace {

std::string regime_label(const SweepConfig& config) {
    AlphaKind kind = config.slope.is_rational() ? AlphaKind::rational_kind()
                                                : AlphaKind::irrational(config.eta);
    return regime_name(classify_regime(kind, config.lambda).regime);
}

void fill_derived(ExperimentRow& row, const SectorQuery& query) {
    // Flag rows whose area enclosure is too wide relative to the measured
    // error; double precision and recompute once before flagging.
    row.area = sector_area(query);
    auto derive = [&] {
        Rat mid = row.area.mid();
        row.abs_err = abs(Rat(row.S) - mid);
        row.main_mid = main_term(query).mid();
        row.ratio = mid != 0 ? Rat(row.S) / mid : Rat(0);
    };
    derive();
    Rat cap = row.abs_err / 1000000;
    if (row.abs_err > 0 && row.area.width() > cap) {
        row.area = sector_area(query, 2 * default_precision_bits());
        derive();
        row.precision_flagged = row.area.width() > cap;
    }
}

}  // namespace

std::vector<ExperimentRow> run_sweep(const SweepConfig& config) {
    config.validate();
    std::vector<Int> grid = geometric_grid(config.r_min, config.r_max, config.points);
    const std::string regime = regime_label(config);

    std::vector<ExperimentRow> rows;
    rows.reserve(grid.size());
    size_t done = 0;

    for (const Int& r : grid) {
        ExperimentRow row;
        row.R = Rat(r);
        row.regime = regime;
        try {
            row.eps = dyadic_power_schedule(config.c0, Rat(r), config.lambda);
            SectorQuery query(config.slope, row.eps, Rat(r));
            CountReport report;
            switch (config.counter) {
                case CounterChoice::Brute:
                    report = count_sector_brute(query, config.brute_ceiling);
                    break;
                case CounterChoice::Fast:
                case CounterChoice::Auto:
                    report = count_sector_fast(query, config.brute_ceiling);
                    break;
            }
            if (config.counter == CounterChoice::Auto && Rat(r) <= Rat(config.crosscheck_max)) {
                CountReport check = count_sector_brute(query, config.brute_ceiling);
                if (check.S != report.S)
                    throw std::logic_error("auto cross-check: fast and brute counters disagree");
            }
            row.S = report.S;
            row.Delta = report.Delta;
            row.method = method_name(report.method);
            row.ms = report.ms;
            fill_derived(row, query);
        } catch (const Error& e) {
            row.error = e.what();
            row.method = "error";
            row.S = 0;
            row.Delta = 0;
            row.area = Interval(Rat(0));
            row.main_mid = 0;
            row.abs_err = 0;
            row.ratio = 0;
        }
        ++done;
        std::cerr << "[sweep] " << done << "/" << grid.size() << " R=" << r.get_str()
                  << (row.error ? " error" : "") << "\n";
        rows.push_back(std::move(row));
    }
    return rows;
}

FitResult fit_error_exponent(const std::vector<ExperimentRow>& rows) {
    std::vector<std::pair<double, double>> pts;
    int excluded = 0;
    for (const ExperimentRow& row : rows) {
        if (row.error) continue;
        if (row.abs_err == 0) {
            ++excluded;
            continue;
        }
        pts.emplace_back(std::log(row.R.get_d()), std::log(row.abs_err.get_d()));
    }
    if (pts.size() < 5)
        throw InsufficientData("fit_error_exponent: need at least 5 rows with positive error");

    double n = static_cast<double>(pts.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0, syy = 0;
    for (auto [x, y] : pts) {
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
    }
    double cov = n * sxy - sx * sy;
    double varx = n * sxx - sx * sx;
    double vary = n * syy - sy * sy;
    FitResult fit;
    fit.slope = cov / varx;
    fit.r2 = vary > 0 ? (cov * cov) / (varx * vary) : 1.0;
    fit.used = static_cast<int>(pts.size());
    fit.excluded = excluded;
    return fit;
}

namespace {

double bound_value(BoundForm form, double r, double eps, double exponent) {
    switch (form) {
        case BoundForm::LinearR: return r;
        case BoundForm::PowerR: return std::pow(r, exponent);
        case BoundForm::QuadEps: {
            double re = r * eps;
            return 1.0 + re * re;
        }
    }
    return 1.0;
}

}  // namespace

BoundCheck check_bound(const std::vector<ExperimentRow>& rows, BoundForm form,
                       double exponent, double cap) {
    std::vector<std::tuple<Rat, Rat, Rat>> values;
    for (const ExperimentRow& row : rows)
        if (!row.error) values.emplace_back(row.R, row.eps, row.abs_err);
    return check_bound_values(values, form, exponent, cap);
}

BoundCheck check_bound_values(const std::vector<std::tuple<Rat, Rat, Rat>>& values,
                              BoundForm form, double exponent, double cap) {
    BoundCheck out;
    for (const auto& [r, eps, err] : values) {
        double bound = bound_value(form, r.get_d(), eps.get_d(), exponent);
        double c = err.get_d() / bound;
        if (c > out.c_measured) out.c_measured = c;
    }
    out.pass = out.c_measured <= cap;
    return out;
}

namespace {

std::string format_r(const Rat& r) {
    if (is_integer(r)) return r.get_num().get_str();
    return to_decimal_string(r);
}

long long ms_column(const ExperimentRow& row, bool timing) {
    return timing ? static_cast<long long>(row.ms + 0.5) : 0;
}

}  // namespace

std::string to_csv(const std::vector<ExperimentRow>& rows, bool timing) {
    std::ostringstream out;
    out << "R,eps_num,eps_den,S,Delta,area_mid,area_width,main_term,abs_err,ratio,"
           "regime,method,ms\n";
    for (const ExperimentRow& row : rows) {
        out << format_r(row.R) << ',' << row.eps.get_num().get_str() << ','
            << row.eps.get_den().get_str() << ',' << row.S.get_str() << ','
            << row.Delta.get_str() << ',' << to_decimal_string(row.area.mid()) << ','
            << to_decimal_string(row.area.width()) << ','
            << to_decimal_string(row.main_mid) << ',' << to_decimal_string(row.abs_err)
            << ',' << to_decimal_string(row.ratio) << ',' << row.regime << ','
            << row.method << ',' << ms_column(row, timing) << '\n';
    }
    return out.str();
}

std::string to_json(const std::vector<ExperimentRow>& rows, bool timing) {
    nlohmann::json arr = nlohmann::json::array();
    for (const ExperimentRow& row : rows) {
        nlohmann::json obj;
        obj["R"] = format_r(row.R);
        obj["eps_num"] = row.eps.get_num().get_str();
        obj["eps_den"] = row.eps.get_den().get_str();
        obj["S"] = row.S.get_str();
        obj["Delta"] = row.Delta.get_str();
        obj["area_mid"] = to_decimal_string(row.area.mid());
        obj["area_width"] = to_decimal_string(row.area.width());
        obj["main_term"] = to_decimal_string(row.main_mid);
        obj["abs_err"] = to_decimal_string(row.abs_err);
        obj["ratio"] = to_decimal_string(row.ratio);
        obj["regime"] = row.regime;
        obj["method"] = row.method;
        obj["ms"] = ms_column(row, timing);
        if (row.error) obj["error"] = *row.error;
        arr.push_back(std::move(obj));
    }
    return arr.dump(2);
}

namespace {

std::string trim(const std::string& s) {
    size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

bool parse_bool(const std::string& v, int line) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    throw ConfigError("expected a boolean, got '" + v + "'", line);
}

}  // namespace

SweepConfig parse_config(std::istream& in) {
    SweepConfig config;
    std::string raw;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#') continue;
        size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("expected 'key = value'", line_no);
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("expected 'key = value'", line_no);
        try {
            if (key == "slope") {
                config.slope = SlopeValue::parse(value);
            } else if (key == "lambda") {
                config.lambda = parse_rational(value);
            } else if (key == "c0") {
                config.c0 = parse_rational(value);
            } else if (key == "r_min") {
                config.r_min = Int(value);
            } else if (key == "r_max") {
                config.r_max = Int(value);
            } else if (key == "points") {
                config.points = std::stoi(value);
            } else if (key == "counter") {
                if (value == "auto") config.counter = CounterChoice::Auto;
                else if (value == "brute") config.counter = CounterChoice::Brute;
                else if (value == "fast") config.counter = CounterChoice::Fast;
                else throw ConfigError("unknown counter '" + value + "'", line_no);
            } else if (key == "output") {
                config.output = value;
            } else if (key == "format") {
                if (value == "csv") config.format = OutputFormat::CSV;
                else if (value == "json") config.format = OutputFormat::JSON;
                else throw ConfigError("unknown format '" + value + "'", line_no);
            } else if (key == "seed") {
                config.seed = std::stol(value);
            } else if (key == "eta") {
                config.eta = parse_rational(value);
            } else if (key == "timing") {
                config.timing = parse_bool(value, line_no);
            } else if (key == "brute_ceiling") {
                config.brute_ceiling = Int(value);
            } else if (key == "crosscheck_max") {
                config.crosscheck_max = Int(value);
            } else {
                throw ConfigError("unknown key '" + key + "'", line_no);
            }
        } catch (const ConfigError&) {
            throw;
        } catch (const std::exception& e) {
            throw ConfigError(std::string("bad value for '") + key + "': " + e.what(),
                              line_no);
        }
    }
    return config;
}

SweepConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path, 0);
    return parse_config(in);
}

}  // namespace sectorcount
