// Acceptance suite: one pass/fail line per criterion, exit code = number of
// failures. Expected wall time is well under two minutes in a release build.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "sectorcount/asymptotics.hpp"
#include "sectorcount/counting.hpp"
#include "sectorcount/errors.hpp"
#include "sectorcount/floor_exact.hpp"
#include "sectorcount/sweep.hpp"

using namespace sectorcount;
using Clock = std::chrono::steady_clock;

namespace {

int failures = 0;

void report(int id, bool pass, const std::string& name, const std::string& detail) {
    std::cout << "criterion " << id << " " << (pass ? "PASS" : "FAIL") << ": " << name
              << " -- " << detail << "\n"
              << std::flush;
    if (!pass) ++failures;
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.4g", v);
    return buf;
}

SlopeValue slope_phi() { return SlopeValue::parse("(1+1*sqrt(5))/2"); }
SlopeValue slope_sqrt2() { return SlopeValue::parse("(0+1*sqrt(2))/1"); }

// ---------------------------------------------------------------------------
// Criteria 1 + 8: randomized oracle equivalence and the triangle correction.

struct Instance {
    Int S;
    Int Delta;
    Rat R;
    Rat eps;
};

void criteria_1_and_8() {
    auto t0 = Clock::now();
    std::mt19937_64 rng(987654321);
    const SlopeValue quads[] = {slope_sqrt2(), SlopeValue::parse("(0+1*sqrt(3))/1"),
                                slope_phi(), SlopeValue::parse("(1+1*sqrt(13))/2")};

    std::vector<Instance> instances;
    int mismatches = 0;
    int triangle_fast_runs = 0;
    const int total = 500;

    for (int i = 0; i < total; ++i) {
        SlopeValue alpha = [&]() -> SlopeValue {
            if (rng() % 2 == 0) return quads[rng() % 4];
            long q = 1 + static_cast<long>(rng() % 50);
            long p = static_cast<long>(rng() % 121) - 20;
            return SlopeValue::rational(Int(p), Int(q));
        }();
        // Dyadic eps in [1e-6, 0.3].
        unsigned k = 2 + rng() % 19;
        Int den = pow2(k);
        Int m_lo = ceil_rat(make_rat(den, 1000000));
        if (m_lo < 1) m_lo = 1;
        Int m_hi = floor_rat(Rat(3, 10) * Rat(den));
        if (m_hi < m_lo) m_hi = m_lo;
        Int span = m_hi - m_lo + 1;
        Int m = m_lo + Int(rng() % span.get_ui());
        Rat eps = make_rat(m, den);
        Rat R(static_cast<long>(10 + rng() % 4991));

        SectorQuery query(alpha, eps, R);
        CountReport fast = count_sector_fast(query);
        CountReport brute = count_sector_brute(query);
        if (fast.S != brute.S || fast.Delta != brute.Delta) ++mismatches;

        Int tri = count_triangle_brute(query);
        if (alpha.is_rational()) {
            if (count_rational_fast(query).first != tri) ++mismatches;
        } else {
            try {
                auto sel =
                    select_convergent(alpha, eps, SelectionMode::ErrorOptimal, R);
                if (count_triangle_fast(query, sel.chosen).first != tri) ++mismatches;
                ++triangle_fast_runs;
            } catch (const NoAdmissibleConvergent&) {
                // fast sector path fell back to brute for these; equality of S
                // above still covers the instance
            }
        }
        instances.push_back({brute.S, tri, R, eps});
    }
    double elapsed = seconds_since(t0);

    report(1, mismatches == 0 && elapsed <= 60.0, "oracle equivalence",
           std::to_string(total) + " randomized instances, " +
               std::to_string(mismatches) + " mismatches, " +
               std::to_string(triangle_fast_runs) + " convergent-partition runs, " +
               fmt(elapsed) + " s (limit 60 s)");

    double c8 = 0;
    for (const Instance& inst : instances) {
        double re = inst.R.get_d() * inst.eps.get_d();
        double c = std::abs(Rat(inst.S - inst.Delta).get_d()) / (1.0 + re * re);
        if (c > c8) c8 = c;
    }
    report(8, c8 <= 10.0, "triangle correction |S-Delta| = O(1+(R eps)^2)",
           "C_measured = " + fmt(c8) + " (cap 10)");
}

// ---------------------------------------------------------------------------
// Criterion 2: rational closed form residual.

void criterion_2() {
    double worst = 0;
    std::string detail;
    for (const char* slope : {"1/2", "3/7"}) {
        SlopeValue alpha = SlopeValue::parse(slope);
        const Int& p = alpha.rat().get_num();
        const Int& q = alpha.rat().get_den();
        double c_slope = 0;
        for (const Int& r : geometric_grid(1000, 1000000, 13)) {
            Rat eps = dyadic_power_schedule(Rat(1), Rat(r), Rat(4, 5));
            SectorQuery query(alpha, eps, Rat(r));
            Int s = count_sector_fast(query).S;
            RationalClosedForm cf = rational_closed_form(p, q, eps, Rat(r));
            Rat resid = abs(Rat(s) - cf.main - cf.beta.mid() / eps);
            double re = r.get_d() * eps.get_d();
            double c = resid.get_d() / (1.0 + re * re);
            if (c > c_slope) c_slope = c;
        }
        detail += std::string(slope) + ": C=" + fmt(c_slope) + "  ";
        if (c_slope > worst) worst = c_slope;
    }
    report(2, worst <= 10.0, "rational closed form |S - main - beta/eps| = O(1+(R eps)^2)",
           detail + "(cap 10)");
}

// ---------------------------------------------------------------------------
// Criterion 3: line-only regime, exact equality.

void criterion_3() {
    SlopeValue alpha = SlopeValue::parse("3/4");
    int checked = 0;
    int wrong = 0;
    std::vector<Int> radii = geometric_grid(10, 1000000, 13);
    radii.push_back(999995);  // divisible by 5
    radii.push_back(999998);
    radii.push_back(1000000);
    for (const Int& r : radii) {
        // Any eps < 5/(16R) must give S = floor(R/5). Test a comfortable
        // margin and a boundary hugger (where only the disk constraint keeps
        // the d = +-1 classes out).
        const Rat eps_values[] = {
            make_rat(5, 32 * r),
            make_rat(5 * (pow2(30) - 1), pow2(30) * 16 * r),
        };
        for (const Rat& eps : eps_values) {
            SectorQuery query(alpha, eps, Rat(r));
            Int s = count_sector_fast(query).S;
            if (s != floor_div(r, 5)) ++wrong;
            ++checked;
        }
    }
    report(3, wrong == 0, "rational line-only regime S = floor(R/5), tolerance 0",
           std::to_string(checked) + " (R, eps) pairs up to R = 10^6, " +
               std::to_string(wrong) + " wrong");
}

// ---------------------------------------------------------------------------
// Criterion 4: relative error against the area at R = 10^6.

void criterion_4() {
    bool pass = true;
    std::string detail;
    for (const char* lam : {"4/5", "6/5", "8/5"}) {
        auto t0 = Clock::now();
        Rat lambda = parse_rational(lam);
        Rat R(1000000);
        Rat eps = dyadic_power_schedule(Rat(1), R, lambda);
        SectorQuery query(slope_phi(), eps, R);
        Int s = count_sector_fast(query).S;
        Interval area = sector_area(query);
        double rel = std::abs(Rat(Rat(s) / area.mid() - 1).get_d());
        double bound = 3.0 * std::pow(1e6, lambda.get_d() / 2.0 - 1.0);
        double elapsed = seconds_since(t0);
        bool ok = rel <= bound && elapsed <= 300.0;
        pass = pass && ok;
        detail += "lambda=" + std::string(lam) + ": |S/Area-1|=" + fmt(rel) +
                  " (bound " + fmt(bound) + ", " + fmt(elapsed) + " s)  ";
    }
    report(4, pass, "asymptotic ratio bound at R = 10^6 (phi, eta = 1)", detail);
}

// ---------------------------------------------------------------------------
// Criterion 5: fitted error exponents are upper-bounded by the table.

void criterion_5() {
    struct Case {
        SlopeValue slope;
        Rat lambda;
        double predicted;
    };
    const Case cases[] = {{slope_phi(), Rat(6, 5), 0.4}, {slope_sqrt2(), Rat(8, 5), 0.2}};
    bool pass = true;
    std::string detail;
    for (const Case& c : cases) {
        SweepConfig config;
        config.slope = c.slope;
        config.lambda = c.lambda;
        config.r_min = 1000;
        config.r_max = 1000000;
        config.points = 13;
        auto rows = run_sweep(config);
        FitResult fit = fit_error_exponent(rows);
        bool ok = fit.slope <= c.predicted + 0.15;
        pass = pass && ok;
        detail += c.slope.str() + " lambda=" + c.lambda.get_str() + ": slope=" +
                  fmt(fit.slope) + " (bound " + fmt(c.predicted + 0.15) +
                  ", r2=" + fmt(fit.r2) + ")  ";
    }
    report(5, pass, "error-exponent upper bounds from the log-log fit", detail);
}

// ---------------------------------------------------------------------------
// Criterion 6: slow sectors, |S - Area| = O(R).

void criterion_6() {
    SweepConfig config;
    config.slope = slope_sqrt2();
    config.lambda = Rat(3, 10);
    config.r_min = 100;
    config.r_max = 100000;
    config.points = 13;
    auto rows = run_sweep(config);
    BoundCheck check = check_bound(rows, BoundForm::LinearR, 1.0, 10.0);
    report(6, check.pass, "slow sectors |S - Area| <= 10 R (sqrt(2), lambda = 0.3)",
           "C_measured = " + fmt(check.c_measured) + " over " +
               std::to_string(rows.size()) + " grid points");
}

// ---------------------------------------------------------------------------
// Criterion 7: emptiness in the very-quick regime.

void criterion_7() {
    EmptinessReport a =
        verify_empty(slope_sqrt2(), Rat(1), Rat(5, 2), geometric_grid(50, 100000, 16));
    EmptinessReport b =
        verify_empty(slope_phi(), Rat(1), Rat(11, 5), geometric_grid(1000, 100000, 9));
    bool pass = !a.largest_nonempty && !b.largest_nonempty;
    report(7, pass, "very quickly shrinking sectors are empty",
           std::string("sqrt(2), lambda=2.5 on [50, 10^5]: ") +
               (a.largest_nonempty ? "non-empty at R=" + a.largest_nonempty->get_str()
                                   : "all empty") +
               "; phi, lambda=2.2 on [10^3, 10^5]: " +
               (b.largest_nonempty ? "non-empty at R=" + b.largest_nonempty->get_str()
                                   : "all empty"));
}

// ---------------------------------------------------------------------------
// Criterion 9: classifier table, zero tolerance.

void criterion_9() {
    auto eta1 = AlphaKind::irrational(Rat(1));
    auto eta2 = AlphaKind::irrational(Rat(2));
    auto rk = AlphaKind::rational_kind();
    struct Case {
        AlphaKind kind;
        Rat lambda;
        Regime regime;
        std::optional<Rat> exponent;
    };
    const Case cases[] = {
        {eta1, Rat(3, 10), Regime::Slow, Rat(1)},
        {eta1, Rat(1, 2), Regime::Main, Rat(1)},
        {eta1, Rat(3, 5), Regime::Main, Rat(4, 5)},
        {eta1, Rat(2, 3), Regime::Main, Rat(2, 3)},
        {eta1, Rat(3, 2), Regime::Main, Rat(1, 4)},
        {eta1, Rat(2), Regime::Gap, std::nullopt},
        {eta1, Rat(5, 2), Regime::VeryQuick, std::nullopt},
        {eta2, Rat(11, 20), Regime::Main, Rat(9, 10)},
        {eta2, Rat(2), Regime::Gap, std::nullopt},
        {rk, Rat(1, 2), Regime::Slow, Rat(1)},
        {rk, Rat(4, 5), Regime::Main, Rat(2, 5)},
        {rk, Rat(2), Regime::RationalLineOnly, std::nullopt},
    };
    int wrong = 0;
    for (const Case& c : cases) {
        RegimeVerdict v = classify_regime(c.kind, c.lambda);
        if (v.regime != c.regime || v.error_exponent != c.exponent) ++wrong;
    }
    report(9, wrong == 0, "regime classifier table matches exactly",
           "12 cases, " + std::to_string(wrong) + " wrong, zero tolerance");
}

// ---------------------------------------------------------------------------
// Criterion 10: determinism.

void criterion_10() {
    SweepConfig config;
    config.slope = slope_phi();
    config.lambda = Rat(6, 5);
    config.r_min = 1000;
    config.r_max = 100000;
    config.points = 9;
    std::string csv1 = to_csv(run_sweep(config), config.timing);
    std::string csv2 = to_csv(run_sweep(config), config.timing);

    const char* path1 = "/tmp/sectorcount_acceptance_a.csv";
    const char* path2 = "/tmp/sectorcount_acceptance_b.csv";
    {
        std::ofstream(path1, std::ios::binary) << csv1;
        std::ofstream(path2, std::ios::binary) << csv2;
    }
    std::ifstream f1(path1, std::ios::binary), f2(path2, std::ios::binary);
    std::stringstream s1, s2;
    s1 << f1.rdbuf();
    s2 << f2.rdbuf();
    bool pass = csv1 == csv2 && s1.str() == s2.str() && !csv1.empty();
    std::remove(path1);
    std::remove(path2);
    report(10, pass, "repeated sweeps produce byte-identical CSV",
           pass ? std::to_string(csv1.size()) + " bytes, identical" : "outputs differ");
}

}  // namespace

int main() {
    auto t0 = Clock::now();
    criteria_1_and_8();
    criterion_2();
    criterion_3();
    criterion_4();
    criterion_5();
    criterion_6();
    criterion_7();
    criterion_9();
    criterion_10();
    std::cout << (failures == 0 ? "ALL CRITERIA PASSED" : "FAILURES PRESENT") << " ("
              << fmt(seconds_since(t0)) << " s total)\n";
    return failures;
}
