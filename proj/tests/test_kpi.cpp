#include "ptx/kpi.hpp"
#include "ptx/market_data.hpp"

#include <doctest.h>

#include <cmath>
#include <filesystem>

using namespace ptx;
using kpi::KpiReport;

namespace {

site::ExperimentConfig tier1_config(site::Strategy s)
{
    site::ExperimentConfig c;
    c.id = "1.1";
    c.electrolyzer.capacity_mw = 10.0;
    c.storage.capacity_kg = 100.0;
    c.fleet.n_trucks = 2;
    c.strategy = s;
    c.daily_demand_kg = 2390.0;
    return c;
}

/// A trace whose annual totals equal the published 10 MW grid-only column.
dispatch::SimulationTrace table3_s1_totals_trace()
{
    dispatch::SimulationTrace t;
    t.config_id = "1.1";
    t.records.resize(8760);
    dispatch::HourRecord& r = t.records[0];
    r.h2_produced_kg = 868000.0;
    r.grid_purchased_mwh = 49865.0;
    r.re_to_electrolyzer_mwh = 0.0;
    r.purchase_cost_dkk = 76.0e6;
    r.re_sold_mwh = 278536.0;
    r.sale_revenue_dkk = 103.0e6;
    r.co2_emitted_kg = 5170.0e3;
    return t;
}

} // namespace

TEST_CASE("published 10 MW grid-only totals reduce to the published KPIs")
{
    const KpiReport k = kpi::compute_kpis(table3_s1_totals_trace(), tier1_config(site::Strategy::S1));
    CHECK(k.produced_h2_t == doctest::Approx(868.0));
    CHECK(k.grid_consumption_mwh == doctest::Approx(49865.0));
    CHECK(k.grid_cost_mdkk == doctest::Approx(76.0));
    REQUIRE(k.h2_cost_dkk_per_kg.has_value());
    CHECK(*k.h2_cost_dkk_per_kg == doctest::Approx(87.6).epsilon(0.001)); // paper rounds to 87
    CHECK(k.electrolyzer_flh_h == doctest::Approx(4986.5)); // paper rounds to 4987
    REQUIRE(k.co2_per_kg.has_value());
    CHECK(*k.co2_per_kg == doctest::Approx(5170.0 / 868.0));
}

TEST_CASE("base variable cost shifts the hydrogen cost uniformly")
{
    auto config = tier1_config(site::Strategy::S1);
    config.base_variable_cost_dkk_per_kg = 5.0;
    const KpiReport k = kpi::compute_kpis(table3_s1_totals_trace(), config);
    CHECK(*k.h2_cost_dkk_per_kg == doctest::Approx(76.0e6 / 868000.0 + 5.0));
}

TEST_CASE("all-zero trace flags per-kg metrics instead of dividing by zero")
{
    dispatch::SimulationTrace t;
    t.config_id = "z";
    t.records.resize(100);
    const KpiReport k = kpi::compute_kpis(t, tier1_config(site::Strategy::S2));
    CHECK(k.produced_h2_t == 0.0);
    CHECK(k.grid_consumption_mwh == 0.0);
    CHECK(k.electrolyzer_flh_h == 0.0);
    CHECK_FALSE(k.h2_cost_dkk_per_kg.has_value());
    CHECK_FALSE(k.co2_per_kg.has_value());
    CHECK_THROWS_AS(k.value(3), std::domain_error);
}

TEST_CASE("report internal consistency holds on simulated runs")
{
    const auto d = market::generate_synthetic(42, 2024);
    for (site::Strategy s : {site::Strategy::S1, site::Strategy::S2, site::Strategy::S3}) {
        const auto config = tier1_config(s);
        const auto trace = dispatch::simulate(config, d);
        const KpiReport k = kpi::compute_kpis(trace, config);

        if (k.produced_h2_t > 0.0) {
            CHECK(std::abs(*k.co2_per_kg * k.produced_h2_t - k.co2_total_t) <=
                  0.005 * std::max(1e-12, k.co2_total_t));
            // h2_cost [DKK/kg] x produced [t] = 1000 x mDKK-equivalents.
            const double lhs_mdkk = *k.h2_cost_dkk_per_kg * k.produced_h2_t / 1000.0;
            const double rhs_mdkk = k.grid_cost_mdkk +
                                    config.base_variable_cost_dkk_per_kg * k.produced_h2_t / 1000.0;
            CHECK(std::abs(lhs_mdkk - rhs_mdkk) <= 0.005 * std::max(1e-12, rhs_mdkk));
        }
        CHECK(k.electrolyzer_flh_h <= static_cast<double>(trace.records.size()));
        CHECK(k.storage_utilization >= 0.0);
        CHECK(k.storage_utilization <= 1.0);
        CHECK(k.truck_utilization >= 0.0);
        CHECK(k.truck_utilization <= 1.0);
    }
}

TEST_CASE("recomputing KPIs from the exported trace reproduces the report exactly")
{
    const auto d = market::generate_synthetic(42, 2024);
    const auto config = tier1_config(site::Strategy::S3);
    const auto trace = dispatch::simulate(config, d);
    const KpiReport direct = kpi::compute_kpis(trace, config);

    const auto path = std::filesystem::temp_directory_path() / "ptx_trace_rt.csv";
    kpi::write_trace_csv(trace, path, "# test\n");
    auto loaded = kpi::load_trace_csv(path);
    loaded.config_id = trace.config_id;
    const KpiReport from_csv = kpi::compute_kpis(loaded, config);
    std::filesystem::remove(path);

    CHECK(from_csv.produced_h2_t == direct.produced_h2_t);
    CHECK(from_csv.grid_consumption_mwh == direct.grid_consumption_mwh);
    CHECK(from_csv.grid_cost_mdkk == direct.grid_cost_mdkk);
    CHECK(*from_csv.h2_cost_dkk_per_kg == *direct.h2_cost_dkk_per_kg);
    CHECK(from_csv.electricity_sold_mwh == direct.electricity_sold_mwh);
    CHECK(from_csv.sale_revenue_mdkk == direct.sale_revenue_mdkk);
    CHECK(from_csv.co2_total_t == direct.co2_total_t);
    CHECK(*from_csv.co2_per_kg == *direct.co2_per_kg);
    CHECK(from_csv.electrolyzer_flh_h == direct.electrolyzer_flh_h);
    CHECK(from_csv.storage_utilization == direct.storage_utilization);
    CHECK(from_csv.truck_utilization == direct.truck_utilization);
}

TEST_CASE("decision matrix from the bundled fixture reproduces the tables")
{
    const auto m = kpi::load_decision_matrix(std::filesystem::path(PTX_FIXTURES_DIR) /
                                             "paper_tables_3_5.csv");
    REQUIRE(m.n_alternatives() == 9);
    REQUIRE(m.n_criteria() == 13);
    CHECK(m.alternatives[0] == "1.1");
    CHECK(m.alternatives[8] == "3.3");
    CHECK(m.values[0][0] == 868.0);
    CHECK(m.values[6][1] == 498633.0);  // 3.1 grid consumption
    CHECK(m.values[7][3] == 5.0);       // 3.2 hydrogen cost
    CHECK(m.values[8][12] == 79.0);     // 3.3 truck utilization
    CHECK(m.criteria[0].orientation == kpi::Orientation::Benefit);
    CHECK(m.criteria[1].orientation == kpi::Orientation::Cost);
    CHECK(m.criteria[3].name == "h2_cost");
}

TEST_CASE("build_decision_matrix honors order, defaults and overrides")
{
    KpiReport a;
    a.experiment_id = "a";
    a.produced_h2_t = 10.0;
    a.h2_cost_dkk_per_kg = 50.0;
    a.co2_per_kg = 2.0;
    KpiReport b = a;
    b.experiment_id = "b";

    const auto m = kpi::build_decision_matrix({a, b});
    CHECK(m.alternatives == std::vector<std::string>{"a", "b"});
    CHECK(m.values[0] == m.values[1]); // identical reports, identical rows
    CHECK(m.criteria[0].orientation == kpi::Orientation::Benefit);

    const auto flipped =
        kpi::build_decision_matrix({a, b}, {{"produced_h2", kpi::Orientation::Cost}});
    CHECK(flipped.criteria[0].orientation == kpi::Orientation::Cost);
    CHECK(flipped.values == m.values); // orientation is metadata only

    CHECK_THROWS(kpi::build_decision_matrix({a, b}, {{"not_a_criterion", kpi::Orientation::Cost}}));
    CHECK_THROWS_AS(kpi::build_decision_matrix({a}), std::invalid_argument);

    KpiReport undefined = a;
    undefined.experiment_id = "c";
    undefined.h2_cost_dkk_per_kg.reset();
    CHECK_THROWS_AS(kpi::build_decision_matrix({a, undefined}), std::domain_error);
}
