// sector-count: exact lattice-point counts in thin circular sectors, with
// continued-fraction tooling, regime classification, experiment sweeps and
// emptiness verification.
//
// Exit codes: 0 success, 2 flag/config parse error, 3 counter or domain
// error, 4 unwritable output path, 5 emptiness violation beyond the declared
// threshold.

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include "sectorcount/asymptotics.hpp"
#include "sectorcount/continued_fraction.hpp"
#include "sectorcount/counting.hpp"
#include "sectorcount/errors.hpp"
#include "sectorcount/sweep.hpp"

namespace sc = sectorcount;
using json = nlohmann::json;

namespace {

constexpr int kExitParse = 2;
constexpr int kExitCounter = 3;
constexpr int kExitOutput = 4;
constexpr int kExitViolation = 5;

struct ExitWith {
    int code;
    std::string message;
};

std::string rat_str(const sc::Rat& r) {
    if (sc::is_integer(r)) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

std::string dec(const sc::Rat& r, int sig = 12) {
    return sc::to_decimal_string(r, sig);
}

// Writes to the path, or stdout for "" / "-". Throws ExitWith on failure.
void emit(const std::string& path, const std::string& content) {
    if (path.empty() || path == "-") {
        std::cout << content;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ExitWith{kExitOutput, "cannot open output path: " + path};
    out << content;
    if (!out) throw ExitWith{kExitOutput, "write failed: " + path};
}

sc::Rat effective_lambda(const sc::Rat& eps, const sc::Rat& R) {
    double r = R.get_d();
    if (r <= 1.0) return sc::Rat(0);
    double lam = -std::log(eps.get_d()) / std::log(r);
    if (lam < 0) lam = 0;
    sc::Rat out;
    mpq_set_d(out.get_mpq_t(), lam);
    out.canonicalize();
    return out;
}

struct CountArgs {
    std::string alpha;
    std::string eps;
    std::string lambda;
    std::string c0 = "1";
    std::string radius;
    std::string method = "auto";
    std::string eta = "1";
    std::string ceiling = "100000";
    bool breakdown = false;
    std::string format = "table";
};

void run_count(const CountArgs& args) {
    sc::SlopeValue alpha = sc::SlopeValue::parse(args.alpha);
    sc::Rat R = sc::parse_rational(args.radius);
    if (args.eps.empty() == args.lambda.empty())
        throw CLI::ValidationError("count", "give exactly one of --eps and --lambda");

    sc::Rat lambda;
    sc::Rat eps;
    if (!args.eps.empty()) {
        eps = sc::parse_epsilon(args.eps);
        lambda = effective_lambda(eps, R);
    } else {
        lambda = sc::parse_rational(args.lambda);
        eps = sc::dyadic_power_schedule(sc::parse_rational(args.c0), R, lambda);
    }

    sc::SectorQuery query(alpha, eps, R);
    sc::Int ceiling(args.ceiling);

    sc::CountReport report;
    if (args.method == "brute") {
        report = sc::count_sector_brute(query, ceiling);
    } else if (args.method == "fast" || args.method == "auto") {
        report = sc::count_sector_fast(query, ceiling);
    } else {
        throw CLI::ValidationError("count", "unknown --method: " + args.method);
    }

    sc::Interval area = sc::sector_area(query);
    sc::Interval main = sc::main_term(query);
    sc::AlphaKind kind = alpha.is_rational() ? sc::AlphaKind::rational_kind()
                                             : sc::AlphaKind::irrational(sc::parse_rational(args.eta));
    sc::RegimeVerdict verdict = sc::classify_regime(kind, lambda);

    std::ostringstream out;
    if (args.format == "json") {
        json obj;
        obj["alpha"] = alpha.str();
        obj["eps_num"] = eps.get_num().get_str();
        obj["eps_den"] = eps.get_den().get_str();
        obj["R"] = rat_str(R);
        obj["S"] = report.S.get_str();
        obj["Delta"] = report.Delta.get_str();
        obj["area_lo"] = dec(area.lo, 17);
        obj["area_hi"] = dec(area.hi, 17);
        obj["area_mid"] = dec(area.mid(), 17);
        obj["area_width"] = dec(area.width(), 17);
        obj["main_term"] = dec(main.mid(), 17);
        obj["regime"] = sc::regime_name(verdict.regime);
        if (verdict.error_exponent) obj["error_exponent"] = verdict.error_exponent->get_str();
        obj["method"] = sc::method_name(report.method);
        obj["band_correction"] = report.band_correction.get_str();
        obj["ms"] = report.ms;
        if (args.breakdown && report.breakdown) {
            const auto& br = *report.breakdown;
            obj["breakdown"] = {{"d_min", br.d_min.get_str()},
                                {"d_max", br.d_max.get_str()},
                                {"delta_plus", br.delta_plus.get_str()},
                                {"delta_zero", br.delta_zero.get_str()},
                                {"delta_minus", br.delta_minus.get_str()},
                                {"q_used", br.q_used.get_str()},
                                {"p_bar", br.p_bar.get_str()}};
        }
        out << obj.dump(2) << "\n";
    } else if (args.format == "csv") {
        out << "S,Delta,area_mid,area_width,main_term,regime,method";
        if (args.breakdown && report.breakdown)
            out << ",delta_plus,delta_zero,delta_minus,d_min,d_max,q_used,p_bar";
        out << "\n";
        out << report.S.get_str() << ',' << report.Delta.get_str() << ','
            << dec(area.mid(), 17) << ',' << dec(area.width(), 17) << ','
            << dec(main.mid(), 17) << ',' << sc::regime_name(verdict.regime) << ','
            << sc::method_name(report.method);
        if (args.breakdown && report.breakdown) {
            const auto& br = *report.breakdown;
            out << ',' << br.delta_plus.get_str() << ',' << br.delta_zero.get_str() << ','
                << br.delta_minus.get_str() << ',' << br.d_min.get_str() << ','
                << br.d_max.get_str() << ',' << br.q_used.get_str() << ','
                << br.p_bar.get_str();
        }
        out << "\n";
    } else {
        out << "alpha      = " << alpha.str() << "\n";
        out << "eps        = " << rat_str(eps) << " (~" << dec(eps, 6) << ")\n";
        out << "R          = " << rat_str(R) << "\n";
        out << "S          = " << report.S.get_str() << "\n";
        out << "Delta      = " << report.Delta.get_str() << "\n";
        out << "area       = [" << dec(area.lo) << ", " << dec(area.hi) << "]\n";
        out << "main term  = " << dec(main.mid()) << "\n";
        out << "regime     = " << sc::regime_name(verdict.regime);
        if (verdict.error_exponent)
            out << " (error exponent " << verdict.error_exponent->get_str() << ")";
        out << "\n";
        out << "method     = " << sc::method_name(report.method) << "\n";
        if (report.m_full)
            out << "band rows  = m in (" << report.m_full->get_str() << ", "
                << report.m_band_end->get_str() << "]\n";
        if (args.breakdown && report.breakdown) {
            const auto& br = *report.breakdown;
            out << "breakdown  = d+ " << br.delta_plus.get_str() << ", d0 "
                << br.delta_zero.get_str() << ", d- " << br.delta_minus.get_str()
                << "  (d window [" << br.d_min.get_str() << ", " << br.d_max.get_str()
                << "], q=" << br.q_used.get_str() << ", p_bar=" << br.p_bar.get_str()
                << ")\n";
        }
        out << "ms         = " << report.ms << "\n";
    }
    std::cout << out.str();
}

struct ConvArgs {
    std::string alpha;
    int depth = 5;
    std::string select_eps;
    std::string mode = "first";
    std::string radius;
    std::string eta = "1";
    std::string format = "table";
};

void run_convergents(const ConvArgs& args) {
    sc::SlopeValue alpha = sc::SlopeValue::parse(args.alpha);
    sc::ConvergentList list = sc::convergents(alpha, args.depth);

    std::optional<sc::ConvergentSelection> selection;
    if (!args.select_eps.empty()) {
        sc::SelectionMode mode;
        if (args.mode == "first") mode = sc::SelectionMode::FirstAdmissible;
        else if (args.mode == "optimal") mode = sc::SelectionMode::ErrorOptimal;
        else throw CLI::ValidationError("convergents", "unknown --mode: " + args.mode);
        std::optional<sc::Rat> radius;
        if (!args.radius.empty()) radius = sc::parse_rational(args.radius);
        selection = sc::select_convergent(alpha, sc::parse_epsilon(args.select_eps), mode,
                                          radius, sc::parse_rational(args.eta));
    }
    auto selected = [&](const sc::Convergent& c) {
        return selection && selection->chosen.p == c.p && selection->chosen.q == c.q;
    };

    std::ostringstream out;
    if (args.format == "json") {
        json arr = json::array();
        for (const auto& c : list.items) {
            json obj;
            obj["index"] = c.index;
            obj["p"] = c.p.get_str();
            obj["q"] = c.q.get_str();
            obj["delta_sign"] = c.delta_sign;
            obj["delta_lo"] = dec(c.delta_bound.lo, 17);
            obj["delta_hi"] = dec(c.delta_bound.hi, 17);
            obj["selected"] = selected(c);
            arr.push_back(std::move(obj));
        }
        json root;
        root["convergents"] = std::move(arr);
        root["exhausted"] = list.exhausted;
        if (selection) {
            root["selection"] = {{"p", selection->chosen.p.get_str()},
                                 {"q", selection->chosen.q.get_str()},
                                 {"X", selection->X.get_str()},
                                 {"mode", args.mode}};
        }
        out << root.dump(2) << "\n";
    } else if (args.format == "csv") {
        out << "index,p,q,delta_sign,delta_lo,delta_hi,selected\n";
        for (const auto& c : list.items)
            out << c.index << ',' << c.p.get_str() << ',' << c.q.get_str() << ','
                << c.delta_sign << ',' << dec(c.delta_bound.lo, 17) << ','
                << dec(c.delta_bound.hi, 17) << ',' << (selected(c) ? 1 : 0) << "\n";
    } else {
        for (const auto& c : list.items) {
            out << c.index << ": " << c.p.get_str() << "/" << c.q.get_str()
                << "  delta in [" << dec(c.delta_bound.lo, 6) << ", "
                << dec(c.delta_bound.hi, 6) << "]";
            if (selected(c)) out << "  <= selected (X=" << selection->X.get_str() << ")";
            out << "\n";
        }
        if (list.exhausted) out << "(expansion ends here; rational slope)\n";
    }
    std::cout << out.str();
}

struct ClassifyArgs {
    std::string alpha_kind;
    std::string lambda;
    std::string format = "table";
};

void run_classify(const ClassifyArgs& args) {
    sc::AlphaKind kind;
    if (args.alpha_kind == "rational") {
        kind = sc::AlphaKind::rational_kind();
    } else if (args.alpha_kind.rfind("eta:", 0) == 0) {
        kind = sc::AlphaKind::irrational(sc::parse_rational(args.alpha_kind.substr(4)));
    } else {
        throw CLI::ValidationError("classify", "--alpha-kind must be 'rational' or 'eta:H'");
    }
    sc::RegimeVerdict v = sc::classify_regime(kind, sc::parse_rational(args.lambda));

    std::ostringstream out;
    if (args.format == "json") {
        json obj;
        obj["regime"] = sc::regime_name(v.regime);
        if (v.error_exponent)
            obj["error_exponent"] = v.error_exponent->get_str();
        else
            obj["error_exponent"] = nullptr;
        obj["beta_correction"] = v.beta_correction;
        obj["notes"] = v.notes;
        out << obj.dump(2) << "\n";
    } else if (args.format == "csv") {
        out << "regime,error_exponent,beta_correction\n";
        out << sc::regime_name(v.regime) << ','
            << (v.error_exponent ? v.error_exponent->get_str() : "") << ','
            << (v.beta_correction ? 1 : 0) << "\n";
    } else {
        out << "regime          = " << sc::regime_name(v.regime) << "\n";
        if (v.error_exponent)
            out << "error exponent  = " << v.error_exponent->get_str() << "\n";
        else if (v.regime == sc::Regime::Gap)
            out << "error exponent  = (refused: no asymptotic guaranteed)\n";
        if (v.beta_correction) out << "beta correction = yes\n";
        out << "notes           = " << v.notes << "\n";
    }
    std::cout << out.str();
}

struct SweepArgs {
    std::string config;
    std::string alpha;
    std::string lambda;
    std::string c0 = "1";
    std::string rmin = "1000";
    std::string rmax = "1000000";
    int points = 13;
    std::string counter = "auto";
    long seed = 0;
    std::string eta = "1";
    bool timing = false;
    std::string output;
    std::string format;
};

void run_sweep_cmd(const SweepArgs& args) {
    sc::SweepConfig config;
    if (!args.config.empty()) {
        config = sc::parse_config_file(args.config);
    } else {
        if (args.alpha.empty() || args.lambda.empty())
            throw CLI::ValidationError("sweep", "need --config, or --alpha and --lambda");
        config.slope = sc::SlopeValue::parse(args.alpha);
        config.lambda = sc::parse_rational(args.lambda);
        config.c0 = sc::parse_rational(args.c0);
        config.r_min = sc::Int(args.rmin);
        config.r_max = sc::Int(args.rmax);
        config.points = args.points;
        config.seed = args.seed;
        config.eta = sc::parse_rational(args.eta);
        config.timing = args.timing;
        if (args.counter == "auto") config.counter = sc::CounterChoice::Auto;
        else if (args.counter == "brute") config.counter = sc::CounterChoice::Brute;
        else if (args.counter == "fast") config.counter = sc::CounterChoice::Fast;
        else throw CLI::ValidationError("sweep", "unknown --counter: " + args.counter);
    }
    std::string format = args.format;
    if (format.empty())
        format = (config.format == sc::OutputFormat::JSON) ? "json" : "csv";
    std::string output = !args.output.empty() ? args.output : config.output;

    std::vector<sc::ExperimentRow> rows = sc::run_sweep(config);

    std::string content;
    if (format == "csv") {
        content = sc::to_csv(rows, config.timing);
    } else if (format == "json") {
        content = sc::to_json(rows, config.timing) + "\n";
    } else if (format == "table") {
        std::ostringstream out;
        for (const auto& row : rows) {
            out << "R=" << rat_str(row.R) << "  S=" << row.S.get_str()
                << "  Delta=" << row.Delta.get_str() << "  area=" << dec(row.area.mid(), 8)
                << "  abs_err=" << dec(row.abs_err, 6) << "  ratio=" << dec(row.ratio, 8)
                << "  " << row.regime << "/" << row.method;
            if (row.error) out << "  ERROR: " << *row.error;
            out << "\n";
        }
        content = out.str();
    } else {
        throw CLI::ValidationError("sweep", "unknown --format: " + format);
    }
    emit(output, content);
}

struct VerifyArgs {
    std::string alpha;
    std::string lambda;
    std::string c0 = "1";
    std::string rmin;
    std::string rmax;
    int points = 16;
    std::string threshold;
    std::string ceiling = "100000";
    std::string format = "table";
};

int run_verify_empty(const VerifyArgs& args) {
    sc::SlopeValue alpha = sc::SlopeValue::parse(args.alpha);
    auto radii = sc::geometric_grid(sc::Int(args.rmin), sc::Int(args.rmax), args.points);
    sc::EmptinessReport report = sc::verify_empty(alpha, sc::parse_rational(args.c0),
                                                  sc::parse_rational(args.lambda), radii,
                                                  sc::Int(args.ceiling));

    std::ostringstream out;
    if (args.format == "json") {
        json rows = json::array();
        for (const auto& row : report.rows)
            rows.push_back({{"R", row.R.get_str()},
                            {"eps_num", row.eps.get_num().get_str()},
                            {"eps_den", row.eps.get_den().get_str()},
                            {"S", row.S.get_str()}});
        json root;
        root["rows"] = std::move(rows);
        root["largest_nonempty"] =
            report.largest_nonempty ? json(report.largest_nonempty->get_str()) : json(nullptr);
        out << root.dump(2) << "\n";
    } else if (args.format == "csv") {
        out << "R,eps_num,eps_den,S\n";
        for (const auto& row : report.rows)
            out << row.R.get_str() << ',' << row.eps.get_num().get_str() << ','
                << row.eps.get_den().get_str() << ',' << row.S.get_str() << "\n";
    } else {
        for (const auto& row : report.rows)
            out << "R=" << row.R.get_str() << "  eps~" << dec(row.eps, 6)
                << "  S=" << row.S.get_str() << "\n";
        out << "largest non-empty R: "
            << (report.largest_nonempty ? report.largest_nonempty->get_str() : "none")
            << "\n";
    }
    std::cout << out.str();

    if (!args.threshold.empty() && report.largest_nonempty) {
        if (sc::Rat(*report.largest_nonempty) > sc::parse_rational(args.threshold)) {
            std::cerr << "verify-empty: non-empty sector at R="
                      << report.largest_nonempty->get_str() << " beyond threshold "
                      << args.threshold << "\n";
            return kExitViolation;
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact lattice-point counting in thin circular sectors"};
    app.require_subcommand(1);

    CountArgs count_args;
    auto* count = app.add_subcommand("count", "count lattice points in one sector");
    count->add_option("--alpha", count_args.alpha, "slope: p/q or (a+b*sqrt(D))/c")->required();
    count->add_option("--eps", count_args.eps, "half-width: a/b or m*2^-k");
    count->add_option("--lambda", count_args.lambda, "schedule eps = c0*R^-lambda");
    count->add_option("--c0", count_args.c0, "schedule constant (default 1)");
    count->add_option("--R", count_args.radius, "radius")->required();
    count->add_option("--method", count_args.method, "auto|brute|fast");
    count->add_option("--eta", count_args.eta, "irrationality type for the regime label");
    count->add_option("--ceiling", count_args.ceiling, "brute-force ceiling");
    count->add_flag("--breakdown", count_args.breakdown, "print the d-partition");
    count->add_option("--format", count_args.format, "table|csv|json");

    ConvArgs conv_args;
    auto* conv = app.add_subcommand("convergents", "continued-fraction convergents");
    conv->add_option("--alpha", conv_args.alpha)->required();
    conv->add_option("--depth", conv_args.depth, "last convergent index")->required();
    conv->add_option("--select-eps", conv_args.select_eps, "mark the selected convergent");
    conv->add_option("--mode", conv_args.mode, "first|optimal");
    conv->add_option("--R", conv_args.radius, "denominator cutoff for selection");
    conv->add_option("--eta", conv_args.eta);
    conv->add_option("--format", conv_args.format, "table|csv|json");

    ClassifyArgs classify_args;
    auto* classify = app.add_subcommand("classify", "regime for eps = R^-lambda");
    classify->add_option("--alpha-kind", classify_args.alpha_kind, "rational | eta:H")->required();
    classify->add_option("--lambda", classify_args.lambda)->required();
    classify->add_option("--format", classify_args.format, "table|csv|json");

    SweepArgs sweep_args;
    auto* sweep = app.add_subcommand("sweep", "run an experiment sweep");
    sweep->add_option("--config", sweep_args.config, "config file (key = value lines)");
    sweep->add_option("--alpha", sweep_args.alpha);
    sweep->add_option("--lambda", sweep_args.lambda);
    sweep->add_option("--c0", sweep_args.c0);
    sweep->add_option("--rmin", sweep_args.rmin);
    sweep->add_option("--rmax", sweep_args.rmax);
    sweep->add_option("--points", sweep_args.points);
    sweep->add_option("--counter", sweep_args.counter, "auto|brute|fast");
    sweep->add_option("--seed", sweep_args.seed);
    sweep->add_option("--eta", sweep_args.eta);
    sweep->add_flag("--timing", sweep_args.timing, "emit real wall times in the ms column");
    sweep->add_option("--output", sweep_args.output, "output path ('-' = stdout)");
    sweep->add_option("--format", sweep_args.format, "table|csv|json");

    VerifyArgs verify_args;
    auto* verify = app.add_subcommand("verify-empty", "check S = 0 along a schedule");
    verify->add_option("--alpha", verify_args.alpha)->required();
    verify->add_option("--lambda", verify_args.lambda)->required();
    verify->add_option("--c0", verify_args.c0);
    verify->add_option("--rmin", verify_args.rmin)->required();
    verify->add_option("--rmax", verify_args.rmax)->required();
    verify->add_option("--points", verify_args.points);
    verify->add_option("--threshold", verify_args.threshold,
                       "largest R allowed to be non-empty (exit 5 beyond it)");
    verify->add_option("--ceiling", verify_args.ceiling);
    verify->add_option("--format", verify_args.format, "table|csv|json");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return kExitParse;
    }

    try {
        if (*count) run_count(count_args);
        if (*conv) run_convergents(conv_args);
        if (*classify) run_classify(classify_args);
        if (*sweep) run_sweep_cmd(sweep_args);
        if (*verify) return run_verify_empty(verify_args);
        return 0;
    } catch (const ExitWith& e) {
        std::cerr << "sector-count: " << e.message << "\n";
        return e.code;
    } catch (const sc::ConfigError& e) {
        std::cerr << "sector-count: config line " << e.line << ": " << e.what() << "\n";
        return kExitParse;
    } catch (const sc::Error& e) {
        std::cerr << "sector-count: " << e.what() << "\n";
        return kExitCounter;
    } catch (const CLI::ValidationError& e) {
        std::cerr << "sector-count: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::invalid_argument& e) {
        std::cerr << "sector-count: " << e.what() << "\n";
        return kExitParse;
    } catch (const std::exception& e) {
        std::cerr << "sector-count: internal error: " << e.what() << "\n";
        return kExitCounter;
    }
}
