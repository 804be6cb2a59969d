// Acceptance suite: runs every criterion at its stated tolerance and prints
// one PASS/FAIL line per criterion. Exits nonzero if any criterion fails.

#include "ptx/calendar.hpp"
#include "ptx/dispatch.hpp"
#include "ptx/kpi.hpp"
#include "ptx/market_data.hpp"
#include "ptx/mcdm.hpp"
#include "ptx/site_model.hpp"
#include "ptx/study.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <vector>

namespace {

using namespace ptx;
namespace fs = std::filesystem;

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what)
{
    if (!ok)
        throw Failure(what);
}

int g_failures = 0;

void run_criterion(int number, const std::string& title, const std::function<void()>& body)
{
    try {
        body();
        std::printf("[PASS] criterion %d: %s\n", number, title.c_str());
    } catch (const std::exception& e) {
        ++g_failures;
        std::printf("[FAIL] criterion %d: %s\n        %s\n", number, title.c_str(), e.what());
    }
    std::fflush(stdout);
}

kpi::DecisionMatrix fixture_matrix()
{
    return kpi::load_decision_matrix(fs::path(PTX_FIXTURES_DIR) / "paper_tables_3_5.csv");
}

// ---------------------------------------------------------------------------
// 1. Ranking-structure reproduction on the published 9x13 fixture.
// ---------------------------------------------------------------------------
void criterion_1()
{
    const auto start = std::chrono::steady_clock::now();

    const kpi::DecisionMatrix matrix = fixture_matrix();
    const mcdm::NormalizedMatrix norm = mcdm::minmax_normalize(matrix);
    const mcdm::WeightVector weights = mcdm::hybrid_weights(norm);
    const auto topsis = mcdm::topsis(norm, weights);
    const auto promethee = mcdm::promethee2(norm, weights);
    const auto vikor = mcdm::vikor(matrix, weights, 0.5);
    const auto ranking = mcdm::aggregate(matrix.alternatives, {topsis, promethee, vikor});

    const auto idx = [&](const std::string& id) {
        for (size_t i = 0; i < matrix.alternatives.size(); ++i)
            if (matrix.alternatives[i] == id)
                return i;
        throw Failure("fixture is missing experiment " + id);
    };

    const size_t i31 = idx("3.1");
    require(topsis.ranks[i31] == 9, "3.1 not ranked last by TOPSIS (rank " +
                                        std::to_string(topsis.ranks[i31]) + ")");
    require(promethee.ranks[i31] == 9, "3.1 not ranked last by PROMETHEE II (rank " +
                                           std::to_string(promethee.ranks[i31]) + ")");
    require(vikor.ranks[i31] == 9, "3.1 not ranked last by VIKOR (rank " +
                                       std::to_string(vikor.ranks[i31]) + ")");
    require(ranking.aggregate_score[i31] == 1.0,
            "3.1 aggregate score is " + std::to_string(ranking.aggregate_score[i31]) +
                ", expected exactly 1.00");

    std::vector<std::string> top3;
    for (size_t i = 0; i < ranking.alternatives.size(); ++i)
        if (ranking.final_position[i] <= 3)
            top3.push_back(ranking.alternatives[i]);
    std::sort(top3.begin(), top3.end());
    std::ostringstream got;
    for (const auto& s : top3)
        got << s << " ";
    require(top3 == std::vector<std::string>{"1.2", "2.2", "3.2"},
            "top-3 aggregate scores are held by {" + got.str() +
                "}, expected the on-site-only trio {1.2 2.2 3.2}");

    require(ranking.final_position[idx("1.2")] == 1, "1.2 does not hold the highest aggregate");

    // Published final order, best to worst.
    const std::map<std::string, int> published = {{"1.2", 1}, {"2.2", 2}, {"3.2", 3},
                                                  {"1.3", 4}, {"2.3", 5}, {"1.1", 6},
                                                  {"2.1", 7}, {"3.3", 8}, {"3.1", 9}};
    std::vector<int> mine, target;
    for (size_t i = 0; i < matrix.alternatives.size(); ++i) {
        mine.push_back(ranking.final_position[i]);
        target.push_back(published.at(matrix.alternatives[i]));
    }
    const double rho = mcdm::spearman(mine, target);
    require(rho >= 0.80, "Spearman vs the published order is " + std::to_string(rho));

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(elapsed < 1.0, "took " + std::to_string(elapsed) + " s (limit 1 s)");
}

// ---------------------------------------------------------------------------
// 2. KPI internal consistency against the published 10 MW grid-only column.
// ---------------------------------------------------------------------------
void criterion_2()
{
    dispatch::SimulationTrace trace;
    trace.config_id = "1.1";
    trace.records.resize(8760);
    dispatch::HourRecord& r = trace.records[0];
    r.h2_produced_kg = 868.0e3;
    r.grid_purchased_mwh = 49865.0;
    r.purchase_cost_dkk = 76.0e6;
    r.re_sold_mwh = 278536.0;
    r.sale_revenue_dkk = 103.0e6;
    r.co2_emitted_kg = 5170.0e3;

    site::ExperimentConfig config;
    config.id = "1.1";
    config.electrolyzer.capacity_mw = 10.0;
    config.storage.capacity_kg = 100.0;
    config.fleet.n_trucks = 2;
    config.daily_demand_kg = 2390.0;

    const kpi::KpiReport k = kpi::compute_kpis(trace, config);
    require(k.h2_cost_dkk_per_kg.has_value(), "hydrogen cost undefined");
    require(std::abs(*k.h2_cost_dkk_per_kg - 87.0) <= 1.0,
            "hydrogen cost " + std::to_string(*k.h2_cost_dkk_per_kg) +
                " DKK/kg, expected 87 +/- 1 (76 mDKK / 868 t = 87.6)");
    require(std::abs(k.electrolyzer_flh_h - 4987.0) <= 1.0,
            "full-load hours " + std::to_string(k.electrolyzer_flh_h) +
                ", expected 4987 +/- 1 (49865 MWh / 10 MW = 4986.5)");

    // The derived full-load specific consumption is the curve calibration.
    const double derived_sc = 49865.0 * 1000.0 / 868.0e3; // 57.45 kWh/kg
    const site::ElectrolyzerSpec default_spec;
    require(std::abs(default_spec.specific_consumption(1.0) - derived_sc) <= 0.01,
            "default full-load specific consumption " +
                std::to_string(default_spec.specific_consumption(1.0)) +
                " kWh/kg does not match the derived " + std::to_string(derived_sc));
}

// ---------------------------------------------------------------------------
// 3. Strategy properties on a seed-fixed synthetic leap year.
// ---------------------------------------------------------------------------
struct GridRun {
    site::ExperimentConfig config;
    dispatch::SimulationTrace trace;
    dispatch::TraceTotals totals;
};

std::map<std::string, GridRun> run_grid(const market::MarketDataset& dataset,
                                        dispatch::SchedulingPolicy policy, bool ample_logistics)
{
    study::StudyConfig sc;
    sc.synthetic_seed = 42;
    std::map<std::string, GridRun> runs;
    for (const std::string& id : sc.experiments) {
        site::ExperimentConfig e = sc.experiment(id);
        if (ample_logistics) {
            e.storage.capacity_kg = 1.0e7;
            e.fleet.n_trucks = 200;
        }
        GridRun run;
        run.config = e;
        run.trace = dispatch::simulate(e, dataset, policy);
        run.totals = run.trace.totals();
        runs.emplace(id, std::move(run));
    }
    return runs;
}

void criterion_3()
{
    const auto start = std::chrono::steady_clock::now();
    const market::MarketDataset d = market::generate_synthetic(42, 2024);
    require(d.hours() == 8784, "2024 must have 8784 hours");

    // Full 3x3 grid with unconstrained logistics (production-side properties).
    const auto runs = run_grid(d, dispatch::SchedulingPolicy::CheapestHours, true);

    for (const std::string tier : {"1", "2", "3"}) {
        const GridRun& s1 = runs.at(tier + ".1");
        const GridRun& s2 = runs.at(tier + ".2");
        const GridRun& s3 = runs.at(tier + ".3");
        const double daily = s1.config.daily_demand_kg;

        require(s2.totals.grid_purchased_mwh == 0.0, "tier " + tier + ": S2 bought grid energy");
        require(s2.totals.co2_emitted_kg == 0.0, "tier " + tier + ": S2 emitted CO2");

        require(s1.trace.unserved_demand_kg == 0.0, "tier " + tier + ": S1 has unserved demand");
        require(s3.trace.unserved_demand_kg == 0.0, "tier " + tier + ": S3 has unserved demand");

        const double annual = 365.0 * daily;
        // One day's production: a leap year's 366th day plus min-load
        // quantization must fit inside the allowance.
        const double tol = 24.0 * s1.config.electrolyzer.max_rate_kg_per_h();
        require(std::abs(s1.totals.h2_produced_kg - annual) <= tol,
                "tier " + tier + ": S1 production " + std::to_string(s1.totals.h2_produced_kg) +
                    " kg not within one day of " + std::to_string(annual));
        require(std::abs(s3.totals.h2_produced_kg - annual) <= tol,
                "tier " + tier + ": S3 production " + std::to_string(s3.totals.h2_produced_kg) +
                    " kg not within one day of " + std::to_string(annual));
        require(std::abs(s1.totals.h2_produced_kg - s3.totals.h2_produced_kg) <= tol,
                "tier " + tier + ": S1 and S3 production differ beyond one day");
        require(s2.totals.h2_produced_kg <= s3.totals.h2_produced_kg + 1e-6,
                "tier " + tier + ": S2 produced more hydrogen than S3");

        require(s3.totals.grid_purchased_mwh <= s1.totals.grid_purchased_mwh + 1e-9,
                "tier " + tier + ": S3 bought more grid energy than S1");

        require(std::abs(s1.totals.re_sold_mwh - s1.totals.re_generated_mwh) <=
                    1e-9 * s1.totals.re_generated_mwh,
                "tier " + tier + ": S1 did not sell every generated MWh");
    }

    // Flat policy: hour-aligned S3-under-S1 comparison.
    const auto flat = run_grid(d, dispatch::SchedulingPolicy::Flat, true);
    for (const std::string tier : {"1", "2", "3"}) {
        const GridRun& s1 = flat.at(tier + ".1");
        const GridRun& s3 = flat.at(tier + ".3");
        for (size_t h = 0; h < s1.trace.records.size(); ++h)
            require(s3.trace.records[h].grid_purchased_mwh <=
                        s1.trace.records[h].grid_purchased_mwh + 1e-12,
                    "tier " + tier + ": flat S3 bought more than S1 in hour " + std::to_string(h));
        require(s3.totals.purchase_cost_dkk <= s1.totals.purchase_cost_dkk + 1e-6,
                "tier " + tier + ": flat S3 grid cost exceeds S1");
        require(s3.totals.co2_emitted_kg <= s1.totals.co2_emitted_kg + 1e-6,
                "tier " + tier + ": flat S3 CO2 exceeds S1");
    }

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    require(elapsed < 5.0, "took " + std::to_string(elapsed) + " s (limit 5 s)");
}

// ---------------------------------------------------------------------------
// 4. Conservation suite on every simulated trace.
// ---------------------------------------------------------------------------
void check_conservation(const dispatch::SimulationTrace& trace, const site::ExperimentConfig& e,
                        const market::MarketDataset& d)
{
    double produced = 0.0, delivered = 0.0;
    for (const dispatch::HourRecord& r : trace.records) {
        const double split = r.re_to_electrolyzer_mwh + r.re_sold_mwh;
        require(std::abs(r.re_generated_mwh - split) <=
                    1e-9 * std::max(1.0, std::abs(r.re_generated_mwh)),
                e.id + ": RE split violated at hour " + std::to_string(r.hour));
        require(r.storage_level_end_kg >= -1e-9 &&
                    r.storage_level_end_kg <= e.storage.capacity_kg + 1e-9,
                e.id + ": storage bound violated at hour " + std::to_string(r.hour));
        const double co2 = r.grid_purchased_mwh * d.co2.at(static_cast<size_t>(r.hour));
        require(std::abs(r.co2_emitted_kg - co2) <= 1e-9 * std::max(1.0, std::abs(co2)),
                e.id + ": CO2 identity violated at hour " + std::to_string(r.hour));
        produced += r.h2_produced_kg;
        delivered += r.h2_delivered_kg;
    }
    const double rhs = delivered + trace.final_storage_kg + trace.final_in_truck_kg;
    require(std::abs(produced - rhs) <= 1e-9 * std::max(1.0, produced),
            e.id + ": hydrogen mass balance off by " + std::to_string(produced - rhs) + " kg");
}

void criterion_4()
{
    const market::MarketDataset d = market::generate_synthetic(42, 2024);
    study::StudyConfig sc;
    sc.synthetic_seed = 42;
    // Default per-tier logistics (throttling in play) and ample logistics.
    for (const bool ample : {false, true}) {
        for (const std::string& id : sc.experiments) {
            site::ExperimentConfig e = sc.experiment(id);
            if (ample) {
                e.storage.capacity_kg = 1.0e7;
                e.fleet.n_trucks = 200;
            }
            check_conservation(dispatch::simulate(e, d), e, d);
        }
    }
}

// ---------------------------------------------------------------------------
// 5. MCDM golden oracles and the randomized property suite.
// ---------------------------------------------------------------------------
void criterion_5()
{
    // Golden 3x3, hand-computed end to end with an independent oracle.
    kpi::DecisionMatrix m;
    m.alternatives = {"A", "B", "C"};
    m.criteria = {{"c0", kpi::Orientation::Benefit},
                  {"c1", kpi::Orientation::Cost},
                  {"c2", kpi::Orientation::Benefit}};
    m.values = {{4.0, 20.0, 0.3}, {6.0, 35.0, 0.9}, {9.0, 60.0, 0.5}};
    const mcdm::WeightVector w{{0.5, 0.3, 0.2}};
    const mcdm::NormalizedMatrix norm = mcdm::minmax_normalize(m);

    const auto t = mcdm::topsis(norm, w);
    const double topsis_expect[3] = {0.357774721070176, 0.514359034828189, 0.605755583209032};
    for (int i = 0; i < 3; ++i)
        require(std::abs(t.scores[static_cast<size_t>(i)] - topsis_expect[i]) < 1e-12,
                "TOPSIS golden score mismatch");
    require(t.ranks == std::vector<int>{3, 2, 1}, "TOPSIS golden ranking mismatch");

    const auto p = mcdm::promethee2(norm, w);
    const double phi_expect[3] = {-0.4, 0.2, 0.2};
    for (int i = 0; i < 3; ++i)
        require(std::abs(p.scores[static_cast<size_t>(i)] - phi_expect[i]) < 1e-12,
                "PROMETHEE golden flow mismatch");
    require(p.ranks == std::vector<int>{3, 1, 2}, "PROMETHEE golden ranking mismatch");

    const auto v = mcdm::vikor(m, w, 0.5);
    const double q_expect[3] = {1.0, 0.0, 0.03623188405797108};
    for (int i = 0; i < 3; ++i)
        require(std::abs(v.scores[static_cast<size_t>(i)] - q_expect[i]) < 1e-12,
                "VIKOR golden Q mismatch");
    require(v.ranks == std::vector<int>{3, 1, 2}, "VIKOR golden ranking mismatch");

    // Property sweep: >= 100 seeded random matrices, m in 2..10, n in 1..15.
    std::mt19937 gen(991);
    std::uniform_int_distribution<size_t> m_dist(2, 10), n_dist(1, 15);
    std::uniform_int_distribution<int> orient(0, 1), grid(0, 60);
    std::uniform_real_distribution<double> real01(0.0, 1.0);
    int checked = 0;
    for (int trial = 0; trial < 120; ++trial) {
        const size_t rows = m_dist(gen), cols = n_dist(gen);
        kpi::DecisionMatrix x;
        for (size_t i = 0; i < rows; ++i)
            x.alternatives.push_back("a" + std::to_string(i));
        for (size_t j = 0; j < cols; ++j)
            x.criteria.push_back({"c" + std::to_string(j), orient(gen)
                                                               ? kpi::Orientation::Benefit
                                                               : kpi::Orientation::Cost});
        const bool integers = trial % 2 == 0;
        x.values.assign(rows, std::vector<double>(cols));
        for (size_t i = 0; i < rows; ++i)
            for (size_t j = 0; j < cols; ++j)
                x.values[i][j] =
                    integers ? static_cast<double>(grid(gen)) : 100.0 * real01(gen);

        const mcdm::NormalizedMatrix nx = mcdm::minmax_normalize(x);
        const mcdm::WeightVector we = mcdm::entropy_weights(nx);
        const mcdm::WeightVector wh = mcdm::hybrid_weights(nx);
        double se = 0.0, sh = 0.0;
        for (double y : we.weights)
            se += y;
        for (double y : wh.weights)
            sh += y;
        require(std::abs(se - 1.0) <= 1e-12, "entropy weights do not sum to 1");
        require(std::abs(sh - 1.0) <= 1e-12, "hybrid weights do not sum to 1");

        auto run = [&](const kpi::DecisionMatrix& mm) {
            const mcdm::NormalizedMatrix n2 = mcdm::minmax_normalize(mm);
            return std::vector<mcdm::MethodRanking>{mcdm::topsis(n2, wh),
                                                    mcdm::promethee2(n2, wh),
                                                    mcdm::vikor(mm, wh, 0.5)};
        };
        const auto base = run(x);

        double phi_sum = 0.0;
        for (double phi : base[1].scores)
            phi_sum += phi;
        require(std::abs(phi_sum) <= 1e-12, "PROMETHEE flows do not balance");

        // Positive affine transform on one raw column: exact rank equality.
        {
            kpi::DecisionMatrix x2 = x;
            std::uniform_int_distribution<size_t> col(0, cols - 1);
            std::uniform_real_distribution<double> alpha(0.2, 8.0), beta(-40.0, 40.0);
            const size_t j = col(gen);
            const double a = alpha(gen), b = beta(gen);
            for (size_t i = 0; i < rows; ++i)
                x2.values[i][j] = a * x.values[i][j] + b;
            const auto moved = run(x2);
            for (size_t k = 0; k < 3; ++k)
                require(moved[k].ranks == base[k].ranks, "affine transform changed a ranking");
        }

        // Permutation equivariance: scores permute with the rows; ranks
        // permute wherever the score is isolated (exact score ties break
        // by row order, so tied alternatives legitimately swap).
        if (!integers) {
            std::vector<size_t> perm(rows);
            for (size_t i = 0; i < rows; ++i)
                perm[i] = i;
            std::shuffle(perm.begin(), perm.end(), gen);
            kpi::DecisionMatrix x2 = x;
            for (size_t i = 0; i < rows; ++i)
                x2.values[i] = x.values[perm[i]];
            const auto permuted = run(x2);
            for (size_t k = 0; k < 3; ++k) {
                const auto& scores = base[k].scores;
                for (size_t i = 0; i < rows; ++i) {
                    require(std::abs(permuted[k].scores[i] - scores[perm[i]]) <= 1e-12,
                            "permutation changed a method score");
                    bool isolated = true;
                    for (size_t r = 0; r < rows; ++r)
                        if (r != perm[i] && std::abs(scores[r] - scores[perm[i]]) <= 1e-9)
                            isolated = false;
                    if (isolated)
                        require(permuted[k].ranks[i] == base[k].ranks[perm[i]],
                                "permutation broke a ranking");
                }
            }
        }

        // Dominance consistency.
        {
            std::uniform_int_distribution<size_t> row(0, rows - 1);
            std::uniform_real_distribution<double> delta(0.5, 5.0);
            const size_t a = row(gen), b = row(gen);
            if (a != b) {
                kpi::DecisionMatrix x2 = x;
                for (size_t j = 0; j < cols; ++j) {
                    const bool benefit = x2.criteria[j].orientation == kpi::Orientation::Benefit;
                    x2.values[a][j] = x2.values[b][j] + (benefit ? delta(gen) : -delta(gen));
                }
                const mcdm::WeightVector w2 = mcdm::hybrid_weights(mcdm::minmax_normalize(x2));
                const mcdm::NormalizedMatrix n2 = mcdm::minmax_normalize(x2);
                for (const auto& r : {mcdm::topsis(n2, w2), mcdm::promethee2(n2, w2),
                                      mcdm::vikor(x2, w2, 0.5)})
                    require(r.ranks[a] < r.ranks[b], "a dominating alternative ranked worse");
            }
        }
        ++checked;
    }
    require(checked >= 100, "property sweep ran fewer than 100 matrices");
}

// ---------------------------------------------------------------------------
// 6. Byte-identical study reruns.
// ---------------------------------------------------------------------------
std::map<std::string, std::string> read_tree(const fs::path& dir)
{
    std::map<std::string, std::string> files;
    for (const auto& entry : fs::recursive_directory_iterator(dir)) {
        if (!entry.is_regular_file())
            continue;
        std::ifstream in(entry.path(), std::ios::binary);
        std::ostringstream buf;
        buf << in.rdbuf();
        files[fs::relative(entry.path(), dir).string()] = buf.str();
    }
    return files;
}

void criterion_6()
{
    const fs::path a = fs::temp_directory_path() / "ptx_acc_det_a";
    const fs::path b = fs::temp_directory_path() / "ptx_acc_det_b";
    fs::remove_all(a);
    fs::remove_all(b);
    for (const fs::path& out : {a, b}) {
        study::StudyConfig sc;
        sc.synthetic_seed = 42;
        sc.synthetic_year = 2024;
        sc.output_dir = out;
        study::run_study(sc);
    }
    const auto ta = read_tree(a);
    const auto tb = read_tree(b);
    require(ta.size() == tb.size() && !ta.empty(), "output trees differ in file count");
    require(ta.count("report.md") == 1, "missing report.md");
    for (const auto& [name, content] : ta) {
        require(tb.count(name) == 1, "second run missing " + name);
        require(content == tb.at(name), "file differs between runs: " + name);
    }
    fs::remove_all(a);
    fs::remove_all(b);
}

} // namespace

int main()
{
    run_criterion(1, "published-fixture ranking structure (min-max, hybrid weights, 3 methods)",
                  criterion_1);
    run_criterion(2, "KPI internal consistency against the published 10 MW column", criterion_2);
    run_criterion(3, "strategy properties on the seed-fixed synthetic leap year", criterion_3);
    run_criterion(4, "conservation suite over every simulated trace", criterion_4);
    run_criterion(5, "MCDM golden oracles and randomized property sweep", criterion_5);
    run_criterion(6, "byte-identical study reruns", criterion_6);

    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all acceptance criteria passed\n");
    return 0;
}
