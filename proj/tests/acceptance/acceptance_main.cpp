// Acceptance checks that need no external data. One PASS/FAIL line per
// criterion; the exit status is non-zero if any criterion fails.

#include "fundrisk/engine.hpp"
#include "fundrisk/outputs.hpp"
#include "fundrisk/random_stream.hpp"
#include "fundrisk/return_models.hpp"
#include "fundrisk/scenario.hpp"
#include "fundrisk/yield_curve.hpp"
#include "two_point_model.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace fundrisk;

namespace {

struct Verdict {
    bool pass = true;
    std::string detail;
};

int failures = 0;

void report(int id, const std::string& name, const Verdict& v) {
    std::cout << (v.pass ? "PASS" : "FAIL") << "  [" << id << "] " << name << ": " << v.detail << "\n";
    if (!v.pass) ++failures;
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[160];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

std::string read_text(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Base scenario: the replication inputs when present, else the bundled example.
ScenarioFile base_scenario(const std::filesystem::path& source_dir) {
    const auto replication = source_dir / "scenarios" / "replication" / "base_2020.ini";
    try {
        return load_scenario(replication);
    } catch (const std::exception&) {
        return load_scenario(source_dir / "scenarios" / "example.ini");
    }
}

Verdict oracle_equivalence() {
    const test::TwoPointModel model;
    const std::vector<double> thresholds{0.0, 1.0, 2.0, 5.0};
    const auto exact = test::enumerate_exact(model, thresholds);
    const std::size_t n = 100'000;
    const auto ens = simulate_ensemble(model.config(n, 8), model.source(8), RunOptions{0});
    const auto curve = exhaustion_curve(ens);
    const auto surplus = surplus_exceedance(ens, thresholds);

    Verdict v;
    double worst = 0.0;
    auto check = [&](double est, double p) {
        const double se = test::binomial_se(p, n);
        const double z = se > 0.0 ? std::abs(est - p) / se : (est == p ? 0.0 : INFINITY);
        worst = std::max(worst, z);
        if (z > 3.0) v.pass = false;
    };
    for (std::size_t t = 0; t < curve.size(); ++t) check(curve[t], exact.exhaustion_by_period[t]);
    for (double th : thresholds) check(surplus.at(th), exact.surplus.at(th));
    v.detail = fmt("max |MC - exact| = %.2f standard errors at 1e5 paths (limit 3)", worst);
    return v;
}

Verdict determinism(const std::filesystem::path& source_dir) {
    const auto scratch = std::filesystem::temp_directory_path() / "fundrisk_acceptance_determinism";
    std::filesystem::remove_all(scratch);

    auto example = load_scenario(source_dir / "scenarios" / "example.ini");
    auto mean_reverting = example;
    mean_reverting.equity.mean_reversion = MovingAverage{4, -0.3};

    Verdict v;
    int compared = 0;
    for (auto* s : {&example, &mean_reverting}) {
        std::vector<std::string> reference;
        for (unsigned workers : {1u, 1u, 4u, 4u, 8u}) {
            s->workers = workers;
            s->output_dir = scratch / std::to_string(compared) / std::to_string(workers);
            run_scenario(*s);
            run_sweep(*s, s->sweep_alphas);
            std::vector<std::string> files;
            for (const char* name : {"fan.csv", "exhaustion.csv", "surplus.csv", "sweep.csv"}) {
                files.push_back(read_text(s->output_dir / name));
            }
            if (reference.empty()) {
                reference = files;
            } else if (files != reference) {
                v.pass = false;
            }
            ++compared;
        }
    }
    std::filesystem::remove_all(scratch);
    v.detail = std::to_string(compared) + " runs of 2 scenarios at 1, 4 and 8 workers" +
               (v.pass ? " produced byte-identical CSVs" : " differ");
    return v;
}

Verdict monotonicity(const std::filesystem::path& source_dir) {
    auto scenario = base_scenario(source_dir);
    scenario.n_paths = 1000;
    const auto base = build_config(scenario);

    Verdict v;
    std::size_t violations = 0;
    std::size_t comparisons = 0;
    auto compare = [&](const SimulationConfig& better_cfg) {
        const auto b = simulate_ensemble(base);
        const auto o = simulate_ensemble(better_cfg);
        for (std::size_t p = 0; p < base.n_paths; ++p) {
            ++comparisons;
            bool ok = true;
            const auto eb = b.exhaustion_period(p);
            const auto eo = o.exhaustion_period(p);
            if (eo != 0 && (eb == 0 || eo < eb)) ok = false;
            for (std::size_t t = 1; t <= base.horizon(); ++t) {
                if (o.assets(p, t) < b.assets(p, t)) ok = false;
            }
            if (!ok) ++violations;
        }
    };
    for (double bump : {1.0, 10.0}) {
        auto richer = base;
        richer.initial_assets += bump;
        compare(richer);
    }
    for (double bump : {0.001, 0.02}) {
        auto better = base;
        better.equity.mu += bump;
        compare(better);
    }
    v.pass = violations == 0;
    v.detail = std::to_string(violations) + " worsened paths in " + std::to_string(comparisons) +
               " path comparisons (" + scenario.source.filename().string() + ", A0 and mu raised)";
    return v;
}

Verdict yield_round_trip() {
    Verdict v;
    double worst_forward = 0.0;
    double worst_product = 0.0;
    for (double r : {-2.5, -0.75, 0.0, 0.5, 3.7}) {
        const auto curve = SpotCurve::flat(r, 50);
        const auto dr = discount_factors(curve, 0.0, 100);
        const auto safe = forward_gross_returns(dr);
        const double expected = 1.0 + r / 100.0;
        double product = 1.0;
        for (double g : safe.gross_returns) {
            worst_forward = std::max(worst_forward, std::abs(g - expected) / expected);
            product *= g;
        }
        worst_product = std::max(worst_product, std::abs(product - dr.back()) / dr.back());
    }
    v.pass = worst_forward <= 1e-12 && worst_product <= 1e-12;
    v.detail = fmt("max relative forward error %.2e, cumulative product vs DR_T %.2e (limit 1e-12)",
                   worst_forward, worst_product);
    return v;
}

Verdict moving_average_statistics() {
    Verdict v;
    const std::size_t samples = 100'000;
    const double sigma = 0.175;
    std::ostringstream detail;
    double worst = 0.0;
    for (unsigned q : {1u, 4u}) {
        for (double beta : {-0.3, 0.2}) {
            EquityReturnParams params{0.045, sigma, MovingAverage{q, beta}};
            const std::size_t horizon = q + 5;
            double sum = 0.0;
            double sum_sq = 0.0;
            for (std::size_t i = 0; i < samples; ++i) {
                RandomStream stream(2024 + q, i);
                const auto v_t = sample_innovations(params, horizon, stream);
                const double e = apply_moving_average(v_t, q, beta).back();
                sum += e;
                sum_sq += e * e;
            }
            const double mean = sum / samples;
            const double var = (sum_sq - samples * mean * mean) / (samples - 1);
            const double expected = sigma * sigma * (1.0 + q * beta * beta);
            const double rel = std::abs(var / expected - 1.0);
            worst = std::max(worst, rel);
            if (rel > 0.02) v.pass = false;
        }
    }
    detail << fmt("max relative variance error %.4f over q in {1,4}, beta in {-0.3,0.2} (limit 0.02)", worst);

    // q = 0: the filter is the identity and the return path is exp(mu + v_t).
    bool identity = true;
    const EquityReturnParams plain{0.045, sigma, std::nullopt};
    for (std::uint64_t path = 0; path < 1000 && identity; ++path) {
        RandomStream stream(7, path);
        const auto innovations = sample_innovations(plain, 30, stream);
        if (apply_moving_average(innovations, 0, 0.7) != innovations) identity = false;
        const auto returns = equity_return_path(plain, 30, 7, path).gross_returns;
        for (std::size_t t = 0; t < returns.size(); ++t) {
            if (returns[t] != std::exp(plain.mu + innovations[t])) identity = false;
        }
    }
    if (!identity) v.pass = false;
    detail << "; q=0 identity " << (identity ? "exact" : "broken");
    v.detail = detail.str();
    return v;
}

} // namespace

int main(int argc, char** argv) {
    const std::filesystem::path source_dir = argc > 1 ? argv[1] : FUNDRISK_SOURCE_DIR;
    try {
        report(8, "oracle equivalence", oracle_equivalence());
        report(9, "determinism", determinism(source_dir));
        report(10, "monotonicity", monotonicity(source_dir));
        report(11, "yield-curve round trip", yield_round_trip());
        report(12, "MA(q) statistics", moving_average_statistics());
    } catch (const std::exception& e) {
        std::cout << "FAIL  acceptance aborted: " << e.what() << "\n";
        return 1;
    }
    return failures == 0 ? 0 : 1;
}
