#include <catch2/catch_amalgamated.hpp>

#include "fundrisk/calibration.hpp"
#include "fundrisk/errors.hpp"
#include "test_support.hpp"

#include <cmath>
#include <random>
#include <sstream>

using namespace fundrisk;
using Catch::Approx;

namespace {

CountryYearRecord rec(std::string c, int year, double r, double pi, double pop, double gdp) {
    return {std::move(c), year, r, pi, pop, gdp};
}

} // namespace

TEST_CASE("real_return deflates the nominal total return", "[calibration]") {
    CHECK(*real_return(rec("A", 2000, 0.10, 0.10, 1, 1)) == 0.0);
    CHECK(*real_return(rec("A", 2000, 0.05, 0.02, 1, 1)) == Approx(0.029412).epsilon(1e-5));
    CHECK(*real_return(rec("A", 2000, 0.0, 0.0, 1, 1)) == 0.0);
    CountryYearRecord missing{"A", 2000, 0.05, std::nullopt, 1.0, 1.0};
    CHECK_FALSE(real_return(missing).has_value());
}

TEST_CASE("gdp_weights normalise N * rgdp", "[calibration]") {
    const std::vector<CountryYearRecord> one{rec("A", 1900, 0, 0, 3, 7)};
    CHECK(gdp_weights(one).at("A") == 1.0);

    const std::vector<CountryYearRecord> two{rec("A", 1900, 0, 0, 2, 5), rec("B", 1900, 0, 0, 5, 2)};
    const auto w2 = gdp_weights(two);
    CHECK(w2.at("A") == 0.5);
    CHECK(w2.at("B") == 0.5);

    const std::vector<CountryYearRecord> three{rec("A", 1900, 0, 0, 2, 1), rec("B", 1900, 0, 0, 1, 1),
                                               rec("C", 1900, 0, 0, 0.5, 2)};
    const auto w3 = gdp_weights(three);
    CHECK(w3.at("A") == Approx(0.5));
    CHECK(w3.at("B") == Approx(0.25));
    CHECK(w3.at("C") == Approx(0.25));

    const std::vector<CountryYearRecord> none{{"A", 1900, 0.1, 0.0, std::nullopt, 1.0}};
    CHECK(gdp_weights(none).empty());
}

TEST_CASE("weights sum to one and ignore a common scale", "[calibration][property]") {
    std::mt19937_64 gen(4);
    std::lognormal_distribution<double> size(0.0, 2.0);
    std::uniform_int_distribution<int> count(1, 16);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<CountryYearRecord> year;
        const int k = count(gen);
        for (int i = 0; i < k; ++i) year.push_back(rec("C" + std::to_string(i), 1950, 0, 0, size(gen), size(gen)));
        const auto w = gdp_weights(year);
        double sum = 0.0;
        for (const auto& [c, v] : w) sum += v;
        REQUIRE(std::abs(sum - 1.0) <= 1e-12);

        const double scale = size(gen);
        auto scaled = year;
        for (auto& r : scaled) *r.population *= scale;
        const auto ws = gdp_weights(scaled);
        for (const auto& [c, v] : w) REQUIRE(ws.at(c) == Approx(v).epsilon(1e-12));
    }
}

TEST_CASE("global_weighted_return_series", "[calibration]") {
    SECTION("single country equals its real returns") {
        const std::vector<CountryYearRecord> panel{rec("A", 1900, 0.05, 0.02, 1, 1), rec("A", 1901, -0.1, 0.0, 1, 2)};
        const auto s = global_weighted_return_series(panel);
        REQUIRE(s.returns.size() == 2);
        CHECK(s.returns[0].year == 1900);
        CHECK(s.returns[0].value == *real_return(panel[0]));
        CHECK(s.returns[1].value == *real_return(panel[1]));
    }
    SECTION("equal-GDP opposite returns cancel") {
        const std::vector<CountryYearRecord> panel{rec("A", 1900, 0.10, 0.0, 1, 1), rec("B", 1900, -0.10, 0.0, 1, 1)};
        const auto s = global_weighted_return_series(panel);
        REQUIRE(s.returns.size() == 1);
        CHECK(s.returns[0].value == Approx(0.0).margin(1e-15));
    }
    SECTION("missing countries are dropped and weights renormalised") {
        std::vector<CountryYearRecord> panel{rec("A", 1900, 0.10, 0.0, 1, 3), rec("B", 1900, 0.02, 0.0, 1, 1)};
        panel.push_back({"C", 1900, std::nullopt, 0.0, 10.0, 10.0});
        panel.push_back({"A", 1901, 0.1, 0.0, std::nullopt, 1.0});
        const auto s = global_weighted_return_series(panel);
        REQUIRE(s.returns.size() == 1);
        CHECK(s.returns[0].value == Approx(0.75 * 0.10 + 0.25 * 0.02));
        CHECK(s.skipped_records == 2);
        CHECK(s.skipped_years == 1);
    }
}

TEST_CASE("estimate_moments", "[calibration]") {
    const std::vector<double> two{0.01, 0.03};
    const auto m = estimate_moments(two, MomentMethod::unweighted_pooled);
    CHECK(m.mean_pct == Approx(2.0));
    CHECK(m.sd_pct == Approx(std::sqrt(2.0)));
    CHECK(m.n_values == 2);

    const std::vector<double> flat(10, 0.02);
    CHECK(estimate_moments(flat, MomentMethod::gdp_weighted_portfolio).sd_pct == Approx(0.0).margin(1e-12));
    CHECK_THROWS_AS(estimate_moments(std::vector<double>{0.1}, MomentMethod::unweighted_pooled), ConfigError);
}

TEST_CASE("diversified portfolio is less volatile than pooled countries", "[calibration][property]") {
    std::mt19937_64 gen(12);
    std::normal_distribution<double> ret(0.07, 0.2);
    std::lognormal_distribution<double> size(0.0, 1.0);
    for (int trial = 0; trial < 10; ++trial) {
        std::vector<CountryYearRecord> panel;
        for (int year = 1870; year <= 2015; ++year) {
            for (int c = 0; c < 16; ++c) {
                panel.push_back(rec("C" + std::to_string(c), year, std::max(-0.9, ret(gen)), 0.02, size(gen), 1.0));
            }
        }
        const auto pooled = estimate_panel_moments(panel, MomentMethod::unweighted_pooled);
        const auto weighted = estimate_panel_moments(panel, MomentMethod::gdp_weighted_portfolio);
        CHECK(weighted.sd_pct <= pooled.sd_pct);
        CHECK(pooled.n_values == 146u * 16u);
        CHECK(weighted.n_values == 146u);
        CHECK(weighted.first_year == 1870);
        CHECK(weighted.last_year == 2015);
    }
}

TEST_CASE("load_panel", "[calibration][io]") {
    test::TempDir dir;
    const auto f = dir.write("panel.csv",
                             "country,year,eq_tr,inflation,population,rgdppc\n"
                             "AUS,1900,0.10,0.02,3.7,5000\n"
                             "AUS,1901,NA,0.01,3.8,5100\n"
                             "USA,1900,-1.5,0.02,76,4000\n"
                             "USA,1901,0.05,,77,4100\n");
    const auto panel = load_panel(f);
    CHECK(panel.records.size() == 3);
    CHECK(panel.rejected_rows == 1);
    CHECK_FALSE(panel.records[1].nominal_total_return.has_value());
    CHECK_FALSE(panel.records[2].inflation.has_value());

    const auto bad = dir.write("bad.csv",
                               "country,year,eq_tr,inflation,population,rgdppc\n"
                               "AUS,1900,0.10,0.02,3.7,5000\n"
                               "AUS,19x1,0.10,0.02,3.7,5000\n");
    try {
        load_panel(bad);
        FAIL("expected DataError");
    } catch (const DataError& e) {
        CHECK(e.line() == 3);
    }

    const auto renamed = dir.write("renamed.csv", "iso,year,eq_tr,cpi_infl,pop,rgdpmad\nAUS,1900,0.1,0.0,1,1\n");
    CHECK_THROWS_AS(load_panel(renamed), DataError);
    PanelColumns cols;
    cols.country = "iso";
    cols.inflation = "cpi_infl";
    cols.population = "pop";
    cols.real_gdp_per_capita = "rgdpmad";
    CHECK(load_panel(renamed, cols).records.size() == 1);
}

TEST_CASE("moment method names", "[calibration]") {
    CHECK(parse_moment_method("unweighted-pooled") == MomentMethod::unweighted_pooled);
    CHECK(parse_moment_method("gdp-weighted-portfolio") == MomentMethod::gdp_weighted_portfolio);
    CHECK(to_string(MomentMethod::gdp_weighted_portfolio) == "gdp-weighted-portfolio");
    CHECK_THROWS_AS(parse_moment_method("median"), ConfigError);
}
