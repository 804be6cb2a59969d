#include "ptx/study.hpp"

#include "ptx/calendar.hpp"
#include "ptx/csv.hpp"

#include <json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

using nlohmann::json;

namespace ptx::study {

std::map<std::string, TierSpec> default_tiers()
{
    return {
        {"1", {10.0, 2390.0, 100.0, 2}},
        {"2", {50.0, 11952.0, 1000.0, 6}},
        {"3", {100.0, 23903.0, 2000.0, 11}},
    };
}

std::vector<std::string> default_experiment_grid()
{
    std::vector<std::string> grid;
    for (int tier = 1; tier <= 3; ++tier)
        for (int s = 1; s <= 3; ++s)
            grid.push_back(std::to_string(tier) + "." + std::to_string(s));
    return grid;
}

namespace {

kpi::Orientation parse_orient(const std::string& s)
{
    if (s == "benefit")
        return kpi::Orientation::Benefit;
    if (s == "cost")
        return kpi::Orientation::Cost;
    throw std::runtime_error("unknown orientation '" + s + "' (want benefit|cost)");
}

void parse_mcdm(const json& j, McdmSettings& m)
{
    if (j.contains("vikor_v"))
        m.vikor_v = j.at("vikor_v").get<double>();
    if (j.contains("preference")) {
        const std::string fam = j.at("preference").get<std::string>();
        if (fam == "usual")
            m.preference.family = mcdm::PreferenceSpec::Family::Usual;
        else if (fam == "linear")
            m.preference.family = mcdm::PreferenceSpec::Family::Linear;
        else
            throw std::runtime_error("unknown preference family '" + fam + "'");
    }
    if (j.contains("linear_threshold"))
        m.preference.thresholds = {j.at("linear_threshold").get<double>()};
    if (j.contains("entropy_basis"))
        m.entropy_basis = mcdm::parse_entropy_basis(j.at("entropy_basis").get<std::string>());
    if (j.contains("topsis_classical"))
        m.topsis_classical = j.at("topsis_classical").get<bool>();
    if (j.contains("orientations")) {
        for (const auto& [name, value] : j.at("orientations").items())
            m.orientations.emplace_back(name, parse_orient(value.get<std::string>()));
    }
}

} // namespace

StudyConfig config_from_json_text(const std::string& text)
{
    json j = json::parse(text);
    StudyConfig c;

    if (!j.contains("dataset"))
        throw std::runtime_error("config: missing 'dataset' section");
    const json& ds = j.at("dataset");
    if (ds.contains("synthetic")) {
        const json& syn = ds.at("synthetic");
        c.synthetic_seed = syn.at("seed").get<std::uint64_t>();
        if (syn.contains("year"))
            c.synthetic_year = syn.at("year").get<int>();
        if (syn.contains("params")) {
            const json& p = syn.at("params");
            market::SyntheticParams& sp = c.synthetic_params;
            if (p.contains("spot_mean_dkk"))
                sp.spot_mean_dkk = p.at("spot_mean_dkk").get<double>();
            if (p.contains("spot_seasonal_amplitude"))
                sp.spot_seasonal_amplitude = p.at("spot_seasonal_amplitude").get<double>();
            if (p.contains("spot_diurnal_amplitude"))
                sp.spot_diurnal_amplitude = p.at("spot_diurnal_amplitude").get<double>();
            if (p.contains("spot_noise_sd"))
                sp.spot_noise_sd = p.at("spot_noise_sd").get<double>();
            if (p.contains("co2_base_kg_per_mwh"))
                sp.co2_base_kg_per_mwh = p.at("co2_base_kg_per_mwh").get<double>();
            if (p.contains("co2_spot_coupling"))
                sp.co2_spot_coupling = p.at("co2_spot_coupling").get<double>();
            if (p.contains("pv_clear_sky_peak"))
                sp.pv_clear_sky_peak = p.at("pv_clear_sky_peak").get<double>();
            if (p.contains("wind_mean_level"))
                sp.wind_mean_level = p.at("wind_mean_level").get<double>();
        }
    } else if (ds.contains("paths")) {
        const json& p = ds.at("paths");
        market::DatasetPaths paths;
        paths.spot = p.at("spot").get<std::string>();
        paths.co2 = p.at("co2").get<std::string>();
        paths.pv_cf = p.at("pv_cf").get<std::string>();
        paths.wind_cf = p.at("wind_cf").get<std::string>();
        paths.tariffs = p.at("tariffs").get<std::string>();
        c.dataset_paths = paths;
    } else {
        throw std::runtime_error("config: dataset needs either 'synthetic' or 'paths'");
    }

    if (j.contains("tiers")) {
        for (const auto& [name, tj] : j.at("tiers").items()) {
            TierSpec t = c.tiers.count(name) ? c.tiers[name] : TierSpec{};
            if (tj.contains("capacity_mw"))
                t.capacity_mw = tj.at("capacity_mw").get<double>();
            if (tj.contains("daily_demand_kg"))
                t.daily_demand_kg = tj.at("daily_demand_kg").get<double>();
            if (tj.contains("storage_kg"))
                t.storage_kg = tj.at("storage_kg").get<double>();
            if (tj.contains("n_trucks"))
                t.n_trucks = tj.at("n_trucks").get<int>();
            c.tiers[name] = t;
        }
    }

    c.experiments.clear();
    if (j.contains("experiments")) {
        for (const auto& e : j.at("experiments"))
            c.experiments.push_back(e.get<std::string>());
    } else {
        for (const auto& [tier, spec] : c.tiers) {
            (void)spec;
            for (int s = 1; s <= 3; ++s)
                c.experiments.push_back(tier + "." + std::to_string(s));
        }
    }

    if (j.contains("site")) {
        const json& s = j.at("site");
        if (s.contains("pv_capacity_mw"))
            c.renewables.pv_capacity_mw = s.at("pv_capacity_mw").get<double>();
        if (s.contains("wind_capacity_mw"))
            c.renewables.wind_capacity_mw = s.at("wind_capacity_mw").get<double>();
    }
    if (j.contains("electrolyzer")) {
        const json& e = j.at("electrolyzer");
        if (e.contains("curve")) {
            c.efficiency_curve.clear();
            for (const auto& knot : e.at("curve"))
                c.efficiency_curve.push_back({knot.at(0).get<double>(), knot.at(1).get<double>()});
        }
        if (e.contains("min_load_fraction"))
            c.min_load_fraction = e.at("min_load_fraction").get<double>();
        if (e.contains("lhv_kwh_per_kg"))
            c.lhv_kwh_per_kg = e.at("lhv_kwh_per_kg").get<double>();
    }
    if (j.contains("fleet")) {
        const json& f = j.at("fleet");
        if (f.contains("truck_capacity_kg"))
            c.truck_capacity_kg = f.at("truck_capacity_kg").get<double>();
        if (f.contains("round_trip_hours"))
            c.truck_round_trip_hours = f.at("round_trip_hours").get<int>();
    }
    if (j.contains("policy"))
        c.policy = dispatch::parse_policy(j.at("policy").get<std::string>());
    if (j.contains("base_variable_cost_dkk_per_kg"))
        c.base_variable_cost_dkk_per_kg = j.at("base_variable_cost_dkk_per_kg").get<double>();
    if (j.contains("mcdm"))
        parse_mcdm(j.at("mcdm"), c.mcdm);
    if (j.contains("output_dir"))
        c.output_dir = j.at("output_dir").get<std::string>();

    c.validate();
    return c;
}

StudyConfig load_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open config file: " + path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
        return config_from_json_text(buf.str());
    } catch (const json::exception& e) {
        throw std::runtime_error(path.string() + ": " + e.what());
    }
}

std::string StudyConfig::canonical_json() const
{
    json j;
    if (synthetic_seed) {
        j["dataset"]["synthetic"]["seed"] = *synthetic_seed;
        j["dataset"]["synthetic"]["year"] = synthetic_year;
        const market::SyntheticParams& sp = synthetic_params;
        j["dataset"]["synthetic"]["params"] = {
            {"spot_mean_dkk", sp.spot_mean_dkk},
            {"spot_seasonal_amplitude", sp.spot_seasonal_amplitude},
            {"spot_diurnal_amplitude", sp.spot_diurnal_amplitude},
            {"spot_noise_sd", sp.spot_noise_sd},
            {"co2_base_kg_per_mwh", sp.co2_base_kg_per_mwh},
            {"co2_spot_coupling", sp.co2_spot_coupling},
            {"pv_clear_sky_peak", sp.pv_clear_sky_peak},
            {"wind_mean_level", sp.wind_mean_level},
        };
    }
    if (dataset_paths) {
        j["dataset"]["paths"] = {
            {"spot", dataset_paths->spot.string()},
            {"co2", dataset_paths->co2.string()},
            {"pv_cf", dataset_paths->pv_cf.string()},
            {"wind_cf", dataset_paths->wind_cf.string()},
            {"tariffs", dataset_paths->tariffs.string()},
        };
    }
    j["experiments"] = experiments;
    for (const auto& [name, t] : tiers)
        j["tiers"][name] = {{"capacity_mw", t.capacity_mw},
                            {"daily_demand_kg", t.daily_demand_kg},
                            {"storage_kg", t.storage_kg},
                            {"n_trucks", t.n_trucks}};
    j["site"] = {{"pv_capacity_mw", renewables.pv_capacity_mw},
                 {"wind_capacity_mw", renewables.wind_capacity_mw}};
    json curve = json::array();
    for (const site::EfficiencyKnot& k : efficiency_curve)
        curve.push_back({k.load_fraction, k.kwh_per_kg});
    j["electrolyzer"] = {{"curve", curve},
                         {"min_load_fraction", min_load_fraction},
                         {"lhv_kwh_per_kg", lhv_kwh_per_kg}};
    j["fleet"] = {{"truck_capacity_kg", truck_capacity_kg},
                  {"round_trip_hours", truck_round_trip_hours}};
    j["policy"] = dispatch::policy_name(policy);
    j["base_variable_cost_dkk_per_kg"] = base_variable_cost_dkk_per_kg;
    j["mcdm"]["vikor_v"] = mcdm.vikor_v;
    j["mcdm"]["preference"] =
        mcdm.preference.family == mcdm::PreferenceSpec::Family::Usual ? "usual" : "linear";
    if (!mcdm.preference.thresholds.empty())
        j["mcdm"]["linear_threshold"] = mcdm.preference.thresholds[0];
    j["mcdm"]["entropy_basis"] = mcdm::entropy_basis_name(mcdm.entropy_basis);
    j["mcdm"]["topsis_classical"] = mcdm.topsis_classical;
    for (const auto& [name, orientation] : mcdm.orientations)
        j["mcdm"]["orientations"][name] =
            orientation == kpi::Orientation::Benefit ? "benefit" : "cost";
    return j.dump();
}

void StudyConfig::validate() const
{
    if (!synthetic_seed && !dataset_paths)
        throw std::runtime_error("config: no dataset source");
    if (experiments.empty())
        throw std::runtime_error("config: no experiments selected");
    for (const std::string& id : experiments)
        experiment(id); // throws on malformed ids or unknown tiers
}

site::ExperimentConfig StudyConfig::experiment(const std::string& id) const
{
    const auto dot = id.find('.');
    if (dot == std::string::npos || dot == 0 || dot + 2 != id.size())
        throw std::runtime_error("experiment id '" + id + "' is not of the form <tier>.<strategy>");
    const std::string tier_name = id.substr(0, dot);
    const char strategy_digit = id[dot + 1];
    const auto it = tiers.find(tier_name);
    if (it == tiers.end())
        throw std::runtime_error("experiment '" + id + "' references undefined tier '" +
                                 tier_name + "'");
    if (strategy_digit < '1' || strategy_digit > '3')
        throw std::runtime_error("experiment '" + id + "': strategy must be 1, 2 or 3");

    const TierSpec& tier = it->second;
    site::ExperimentConfig e;
    e.id = id;
    e.electrolyzer.capacity_mw = tier.capacity_mw;
    e.electrolyzer.curve = efficiency_curve;
    e.electrolyzer.min_load_fraction = min_load_fraction;
    e.electrolyzer.lhv_kwh_per_kg = lhv_kwh_per_kg;
    e.renewables = renewables;
    e.storage.capacity_kg = tier.storage_kg;
    e.fleet.n_trucks = tier.n_trucks;
    e.fleet.truck_capacity_kg = truck_capacity_kg;
    e.fleet.round_trip_hours = truck_round_trip_hours;
    e.strategy = strategy_digit == '1' ? site::Strategy::S1
                                       : (strategy_digit == '2' ? site::Strategy::S2
                                                                : site::Strategy::S3);
    e.daily_demand_kg = tier.daily_demand_kg;
    e.base_variable_cost_dkk_per_kg = base_variable_cost_dkk_per_kg;
    return e;
}

market::MarketDataset obtain_dataset(const StudyConfig& config)
{
    if (config.dataset_paths)
        return market::load_dataset(*config.dataset_paths);
    return market::generate_synthetic(*config.synthetic_seed, config.synthetic_year,
                                      config.synthetic_params);
}

namespace {

std::string provenance_block(const StudyConfig& config, const market::MarketDataset& dataset)
{
    std::ostringstream out;
    out << "# " << kToolVersion << "\n";
    out << "# config_fingerprint: " << csv::to_hex(csv::fnv1a64(config.canonical_json())) << "\n";
    out << "# dataset_fingerprint: " << csv::to_hex(dataset.fingerprint()) << "\n";
    return out.str();
}

void write_summary_json(const dispatch::SimulationTrace& trace,
                        const std::filesystem::path& path, const std::string& provenance)
{
    const dispatch::TraceTotals t = trace.totals();
    json j;
    j["experiment"] = trace.config_id;
    j["year"] = trace.year;
    j["hours"] = trace.records.size();
    j["totals"] = {
        {"re_generated_mwh", t.re_generated_mwh},
        {"re_to_electrolyzer_mwh", t.re_to_electrolyzer_mwh},
        {"grid_purchased_mwh", t.grid_purchased_mwh},
        {"re_sold_mwh", t.re_sold_mwh},
        {"h2_produced_kg", t.h2_produced_kg},
        {"h2_delivered_kg", t.h2_delivered_kg},
        {"purchase_cost_dkk", t.purchase_cost_dkk},
        {"sale_revenue_dkk", t.sale_revenue_dkk},
        {"co2_emitted_kg", t.co2_emitted_kg},
    };
    j["diagnostics"] = {
        {"unserved_demand_kg", trace.unserved_demand_kg},
        {"throttled_hours", trace.throttled_hours},
        {"final_storage_kg", trace.final_storage_kg},
        {"final_in_truck_kg", trace.final_in_truck_kg},
        {"truck_busy_hours", trace.truck_busy_hours},
        {"mean_storage_level_kg", trace.mean_storage_level_kg},
    };
    std::string prov = provenance;
    j["provenance"] = json::array();
    std::istringstream lines(prov);
    for (std::string line; std::getline(lines, line);)
        j["provenance"].push_back(line.substr(line.starts_with("# ") ? 2 : 0));
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

} // namespace

kpi::KpiReport run_experiment(const StudyConfig& config, const market::MarketDataset& dataset,
                              const std::string& id, const std::string& provenance)
{
    const site::ExperimentConfig e = config.experiment(id);
    const dispatch::SimulationTrace trace = dispatch::simulate(e, dataset, config.policy);
    std::filesystem::create_directories(config.output_dir);
    kpi::write_trace_csv(trace, config.output_dir / ("trace_" + id + ".csv"), provenance);
    write_summary_json(trace, config.output_dir / ("summary_" + id + ".json"), provenance);
    const kpi::KpiReport report = kpi::compute_kpis(trace, e);
    kpi::write_kpi_csv(report, config.output_dir / ("kpis_" + id + ".csv"), provenance);
    return report;
}

StudyReport rank_matrix(const kpi::DecisionMatrix& matrix, const McdmSettings& settings,
                        const std::filesystem::path& out_dir, const std::string& provenance)
{
    const mcdm::NormalizedMatrix norm = mcdm::minmax_normalize(matrix);
    const mcdm::WeightVector equal = mcdm::equal_weights(matrix.n_criteria());
    const mcdm::WeightVector entropy = mcdm::entropy_weights(norm, settings.entropy_basis);
    const mcdm::WeightVector hybrid = mcdm::hybrid_weights(norm, settings.entropy_basis);

    std::vector<mcdm::MethodRanking> methods;
    methods.push_back(settings.topsis_classical ? mcdm::topsis_classical(matrix, hybrid)
                                                : mcdm::topsis(norm, hybrid));
    methods.push_back(mcdm::promethee2(norm, hybrid, settings.preference));
    methods.push_back(mcdm::vikor(matrix, hybrid, settings.vikor_v));

    StudyReport report;
    report.matrix = matrix;
    report.ranking = mcdm::aggregate(matrix.alternatives, methods);
    report.provenance = provenance;

    std::filesystem::create_directories(out_dir);
    std::vector<std::string> criteria;
    for (const kpi::Criterion& c : matrix.criteria)
        criteria.push_back(c.name);
    mcdm::write_weights_csv(criteria, equal, entropy, hybrid, out_dir / "weights.csv", provenance);
    mcdm::write_rankings_csv(report.ranking, out_dir / "rankings.csv", provenance);
    return report;
}

StudyReport run_study(const StudyConfig& config)
{
    const market::MarketDataset dataset = obtain_dataset(config);
    const std::string provenance = provenance_block(config, dataset);

    StudyReport report;
    for (const std::string& id : config.experiments) {
        try {
            report.reports.push_back(run_experiment(config, dataset, id, provenance));
        } catch (const std::exception& e) {
            throw std::runtime_error("experiment " + id + " (simulation step): " + e.what());
        }
    }

    try {
        report.matrix = kpi::build_decision_matrix(report.reports, config.mcdm.orientations);
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("decision-matrix step: ") + e.what());
    }
    kpi::write_decision_matrix_csv(report.matrix, config.output_dir / "decision_matrix.csv",
                                   provenance);

    try {
        const StudyReport ranked =
            rank_matrix(report.matrix, config.mcdm, config.output_dir, provenance);
        report.ranking = ranked.ranking;
    } catch (const std::exception& e) {
        throw std::runtime_error(std::string("ranking step: ") + e.what());
    }
    report.provenance = provenance;

    std::ofstream md(config.output_dir / "report.md");
    if (!md)
        throw std::runtime_error("cannot write report.md");
    md << markdown_report(report);
    return report;
}

namespace {

const std::array<std::string, kpi::kCriteriaCount>& metric_row_labels()
{
    static const std::array<std::string, kpi::kCriteriaCount> labels = {
        "Produced hydrogen [t]",
        "Total grid electricity consumption [MWh]",
        "Cost of grid electricity consumption [mDKK]",
        "Hydrogen production cost [DKK/kg]",
        "Total electricity sold to grid [MWh]",
        "Revenue from selling electricity [mDKK]",
        "CO2 emissions [t]",
        "CO2 emissions [kgCO2/kgH2]",
        "Electrolyzer usage [full load hours]",
        "On-site storage size [kgH2]",
        "On-site storage utilization [%]",
        "Number of trucks",
        "Truck utilization [%]",
    };
    return labels;
}

std::string round_whole(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.0f", v);
    return buf;
}

std::string metric_cell(const kpi::KpiReport& r, size_t row)
{
    switch (row) {
    case 3:
        return r.h2_cost_dkk_per_kg ? round_whole(*r.h2_cost_dkk_per_kg) : "n/a";
    case 7:
        return r.co2_per_kg ? round_whole(*r.co2_per_kg) : "n/a";
    case 10:
        return round_whole(r.storage_utilization * 100.0);
    case 11:
        return std::to_string(r.n_trucks);
    case 12:
        return round_whole(r.truck_utilization * 100.0);
    default:
        return round_whole(r.value(row));
    }
}

std::string strategy_suffix(const std::string& id)
{
    const auto dot = id.find('.');
    return dot == std::string::npos ? "" : "S" + id.substr(dot + 1);
}

} // namespace

std::string markdown_report(const StudyReport& report)
{
    std::ostringstream out;
    out << "# Green hydrogen Power-to-X study\n\n";

    // One KPI table per tier, metrics as rows, strategies as columns.
    std::vector<std::string> tiers;
    for (const kpi::KpiReport& r : report.reports) {
        const std::string tier = r.experiment_id.substr(0, r.experiment_id.find('.'));
        if (std::find(tiers.begin(), tiers.end(), tier) == tiers.end())
            tiers.push_back(tier);
    }
    for (const std::string& tier : tiers) {
        std::vector<const kpi::KpiReport*> cols;
        for (const kpi::KpiReport& r : report.reports)
            if (r.experiment_id.substr(0, r.experiment_id.find('.')) == tier)
                cols.push_back(&r);
        out << "## Scenario " << tier << "\n\n";
        out << "| Metric |";
        for (const kpi::KpiReport* r : cols)
            out << " " << r->experiment_id << " (" << strategy_suffix(r->experiment_id) << ") |";
        out << "\n| --- |";
        for (size_t i = 0; i < cols.size(); ++i)
            out << " ---: |";
        out << "\n";
        for (size_t row = 0; row < kpi::kCriteriaCount; ++row) {
            out << "| " << metric_row_labels()[row] << " |";
            for (const kpi::KpiReport* r : cols)
                out << " " << metric_cell(*r, row) << " |";
            out << "\n";
        }
        out << "\n";
    }

    // Ranking table, best first.
    const mcdm::StudyRanking& rk = report.ranking;
    if (!rk.alternatives.empty()) {
        out << "## Ranking (average of TOPSIS, PROMETHEE II, VIKOR)\n\n";
        out << "| Position | Experiment |";
        for (const mcdm::MethodRanking& m : rk.methods)
            out << " " << mcdm::method_name(m.method) << " rank |";
        out << " Average score |\n|---|---|";
        for (size_t i = 0; i < rk.methods.size(); ++i)
            out << "---|";
        out << "---|\n";
        std::vector<size_t> order(rk.alternatives.size());
        for (size_t i = 0; i < order.size(); ++i)
            order[static_cast<size_t>(rk.final_position[i]) - 1] = i;
        for (size_t pos = 0; pos < order.size(); ++pos) {
            const size_t i = order[pos];
            out << "| " << pos + 1 << " | " << rk.alternatives[i] << " |";
            for (const mcdm::MethodRanking& m : rk.methods)
                out << " " << m.ranks[i] << " |";
            char buf[16];
            std::snprintf(buf, sizeof(buf), "%.2f", rk.aggregate_score[i]);
            out << " " << buf << " |\n";
        }
        out << "\n";
    }

    out << "## Provenance\n\n```\n" << report.provenance << "```\n";
    return out.str();
}

std::string report_from_directory(const std::filesystem::path& study_dir, const std::string& format)
{
    if (format == "csv") {
        std::ifstream in(study_dir / "rankings.csv");
        if (!in)
            throw std::runtime_error("no rankings.csv in " + study_dir.string());
        std::ostringstream buf;
        buf << in.rdbuf();
        return buf.str();
    }
    if (format != "md")
        throw std::runtime_error("unknown report format '" + format + "' (want md|csv)");

    StudyReport report;
    std::vector<std::filesystem::path> kpi_files;
    for (const auto& entry : std::filesystem::directory_iterator(study_dir)) {
        const std::string name = entry.path().filename().string();
        if (name.rfind("kpis_", 0) == 0 && entry.path().extension() == ".csv")
            kpi_files.push_back(entry.path());
    }
    std::sort(kpi_files.begin(), kpi_files.end());
    for (const auto& path : kpi_files)
        report.reports.push_back(kpi::load_kpi_csv(path));
    if (report.reports.empty())
        throw std::runtime_error("no kpis_*.csv files in " + study_dir.string());

    // Rebuild the ranking table from rankings.csv.
    csv::Table t = csv::read_table(study_dir / "rankings.csv");
    mcdm::StudyRanking& rk = report.ranking;
    const size_t n_methods = (t.header.size() - 3) / 2;
    for (size_t m = 0; m < n_methods; ++m) {
        mcdm::MethodRanking mr;
        const std::string col = t.header.at(1 + 2 * m);
        const std::string name = col.substr(0, col.rfind("_score"));
        if (name == "topsis")
            mr.method = mcdm::Method::Topsis;
        else if (name == "promethee2")
            mr.method = mcdm::Method::Promethee2;
        else if (name == "vikor")
            mr.method = mcdm::Method::Vikor;
        else
            throw std::runtime_error("rankings.csv: unknown method column '" + col + "'");
        rk.methods.push_back(mr);
    }
    for (size_t i = 0; i < t.rows.size(); ++i) {
        rk.alternatives.push_back(t.rows[i][0]);
        for (size_t m = 0; m < n_methods; ++m) {
            rk.methods[m].scores.push_back(csv::parse_double(t, i + 1, 1 + 2 * m));
            rk.methods[m].ranks.push_back(static_cast<int>(csv::parse_long(t, i + 1, 2 + 2 * m)));
        }
        rk.aggregate_score.push_back(csv::parse_double(t, i + 1, t.header.size() - 2));
        rk.final_position.push_back(
            static_cast<int>(csv::parse_long(t, i + 1, t.header.size() - 1)));
    }

    // Provenance travels in the CSV comment headers; surface rankings.csv's.
    std::ifstream in(study_dir / "rankings.csv");
    std::string line;
    std::ostringstream prov;
    while (std::getline(in, line) && !line.empty() && line[0] == '#')
        prov << line << "\n";
    report.provenance = prov.str();
    return markdown_report(report);
}

std::string ranking_table_text(const mcdm::StudyRanking& rk)
{
    std::ostringstream out;
    out << "position  experiment  ";
    for (const mcdm::MethodRanking& m : rk.methods)
        out << mcdm::method_name(m.method) << "(score/rank)  ";
    out << "aggregate\n";
    std::vector<size_t> order(rk.alternatives.size());
    for (size_t i = 0; i < order.size(); ++i)
        order[static_cast<size_t>(rk.final_position[i]) - 1] = i;
    for (size_t pos = 0; pos < order.size(); ++pos) {
        const size_t i = order[pos];
        char head[48];
        std::snprintf(head, sizeof(head), "%-9zu %-11s", pos + 1, rk.alternatives[i].c_str());
        out << head;
        for (const mcdm::MethodRanking& m : rk.methods) {
            char cell[48];
            std::snprintf(cell, sizeof(cell), " %8.4f/%-2d          ", m.scores[i], m.ranks[i]);
            out << cell;
        }
        char agg[16];
        std::snprintf(agg, sizeof(agg), "%6.2f", rk.aggregate_score[i]);
        out << agg << "\n";
    }
    return out.str();
}

} // namespace ptx::study
