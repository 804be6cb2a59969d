#include "ptx/kpi.hpp"

#include "ptx/csv.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace ptx::kpi {

const std::array<std::string, kCriteriaCount>& criteria_names()
{
    static const std::array<std::string, kCriteriaCount> names = {
        "produced_h2",    "grid_consumption",    "grid_cost",   "h2_cost",
        "electricity_sold", "sale_revenue",      "co2_total",   "co2_per_kg",
        "electrolyzer_flh", "storage_size",      "storage_utilization",
        "n_trucks",       "truck_utilization",
    };
    return names;
}

const std::array<Orientation, kCriteriaCount>& default_orientations()
{
    static const std::array<Orientation, kCriteriaCount> o = {
        Orientation::Benefit, // produced_h2
        Orientation::Cost,    // grid_consumption
        Orientation::Cost,    // grid_cost
        Orientation::Cost,    // h2_cost
        Orientation::Benefit, // electricity_sold
        Orientation::Benefit, // sale_revenue
        Orientation::Cost,    // co2_total
        Orientation::Cost,    // co2_per_kg
        Orientation::Benefit, // electrolyzer_flh
        Orientation::Cost,    // storage_size
        Orientation::Benefit, // storage_utilization
        Orientation::Cost,    // n_trucks
        Orientation::Benefit, // truck_utilization
    };
    return o;
}

double KpiReport::value(size_t column) const
{
    switch (column) {
    case 0: return produced_h2_t;
    case 1: return grid_consumption_mwh;
    case 2: return grid_cost_mdkk;
    case 3:
        if (!h2_cost_dkk_per_kg)
            throw std::domain_error("experiment " + experiment_id +
                                    ": h2_cost undefined (zero production)");
        return *h2_cost_dkk_per_kg;
    case 4: return electricity_sold_mwh;
    case 5: return sale_revenue_mdkk;
    case 6: return co2_total_t;
    case 7:
        if (!co2_per_kg)
            throw std::domain_error("experiment " + experiment_id +
                                    ": co2_per_kg undefined (zero production)");
        return *co2_per_kg;
    case 8: return electrolyzer_flh_h;
    case 9: return storage_size_kg;
    case 10: return storage_utilization;
    case 11: return static_cast<double>(n_trucks);
    case 12: return truck_utilization;
    default: throw std::out_of_range("criterion column " + std::to_string(column));
    }
}

KpiReport compute_kpis(const dispatch::SimulationTrace& trace, const site::ExperimentConfig& config)
{
    if (trace.records.empty())
        throw std::invalid_argument("empty trace");
    const double hours = static_cast<double>(trace.records.size());

    double h2_kg = 0.0, grid_mwh = 0.0, cost_dkk = 0.0, sold_mwh = 0.0, revenue_dkk = 0.0;
    double co2_kg = 0.0, input_mwh = 0.0, storage_sum = 0.0, busy_hours = 0.0;
    for (const dispatch::HourRecord& r : trace.records) {
        h2_kg += r.h2_produced_kg;
        grid_mwh += r.grid_purchased_mwh;
        cost_dkk += r.purchase_cost_dkk;
        sold_mwh += r.re_sold_mwh;
        revenue_dkk += r.sale_revenue_dkk;
        co2_kg += r.co2_emitted_kg;
        input_mwh += r.re_to_electrolyzer_mwh + r.grid_purchased_mwh;
        storage_sum += r.storage_level_end_kg;
        busy_hours += static_cast<double>(r.trucks_in_transit);
    }

    KpiReport k;
    k.experiment_id = trace.config_id;
    k.produced_h2_t = h2_kg / 1000.0;
    k.grid_consumption_mwh = grid_mwh;
    k.grid_cost_mdkk = cost_dkk / 1e6;
    k.electricity_sold_mwh = sold_mwh;
    k.sale_revenue_mdkk = revenue_dkk / 1e6;
    k.co2_total_t = co2_kg / 1000.0;
    k.electrolyzer_flh_h = input_mwh / config.electrolyzer.capacity_mw;
    k.storage_size_kg = config.storage.capacity_kg;
    k.storage_utilization = storage_sum / hours / config.storage.capacity_kg;
    k.n_trucks = config.fleet.n_trucks;
    k.truck_utilization = busy_hours / (static_cast<double>(config.fleet.n_trucks) * hours);
    if (h2_kg > 0.0) {
        k.h2_cost_dkk_per_kg = (cost_dkk + config.base_variable_cost_dkk_per_kg * h2_kg) / h2_kg;
        k.co2_per_kg = k.co2_total_t * 1000.0 / (k.produced_h2_t * 1000.0);
    }
    return k;
}

void DecisionMatrix::validate() const
{
    if (alternatives.size() < 2)
        throw std::invalid_argument("decision matrix needs at least 2 alternatives");
    if (criteria.empty())
        throw std::invalid_argument("decision matrix needs at least 1 criterion");
    if (values.size() != alternatives.size())
        throw std::invalid_argument("decision matrix row count mismatch");
    for (size_t i = 0; i < criteria.size(); ++i)
        for (size_t j = i + 1; j < criteria.size(); ++j)
            if (criteria[i].name == criteria[j].name)
                throw std::invalid_argument("duplicate criterion name '" + criteria[i].name + "'");
    for (size_t a = 0; a < values.size(); ++a) {
        if (values[a].size() != criteria.size())
            throw std::invalid_argument("decision matrix column count mismatch in row " +
                                        std::to_string(a));
        for (double v : values[a])
            if (!std::isfinite(v))
                throw std::invalid_argument("non-finite decision matrix entry for '" +
                                            alternatives[a] + "'");
    }
}

DecisionMatrix build_decision_matrix(const std::vector<KpiReport>& reports,
                                     const OrientationOverrides& overrides)
{
    if (reports.size() < 2)
        throw std::invalid_argument("need at least 2 reports to build a decision matrix");
    DecisionMatrix m;
    for (size_t j = 0; j < kCriteriaCount; ++j)
        m.criteria.push_back({criteria_names()[j], default_orientations()[j]});
    for (const auto& [name, orientation] : overrides) {
        bool found = false;
        for (Criterion& c : m.criteria) {
            if (c.name == name) {
                c.orientation = orientation;
                found = true;
                break;
            }
        }
        if (!found)
            throw std::invalid_argument("orientation override for unknown criterion '" + name + "'");
    }
    for (const KpiReport& r : reports) {
        m.alternatives.push_back(r.experiment_id);
        std::vector<double> row;
        row.reserve(kCriteriaCount);
        for (size_t j = 0; j < kCriteriaCount; ++j)
            row.push_back(r.value(j)); // throws on flagged-undefined entries
        m.values.push_back(std::move(row));
    }
    m.validate();
    return m;
}

namespace {

std::string orientation_str(Orientation o)
{
    return o == Orientation::Benefit ? "benefit" : "cost";
}

Orientation parse_orientation(const std::string& s, const std::string& file)
{
    if (s == "benefit")
        return Orientation::Benefit;
    if (s == "cost")
        return Orientation::Cost;
    throw std::runtime_error(file + ": unknown orientation '" + s + "'");
}

} // namespace

void write_kpi_csv(const KpiReport& report, const std::filesystem::path& path,
                   const std::string& provenance)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << provenance;
    out << "experiment";
    for (const std::string& name : criteria_names())
        out << "," << name;
    out << "\n" << report.experiment_id;
    for (size_t j = 0; j < kCriteriaCount; ++j) {
        out << ",";
        if (j == 3 && !report.h2_cost_dkk_per_kg)
            out << "na";
        else if (j == 7 && !report.co2_per_kg)
            out << "na";
        else
            out << csv::format_double(report.value(j));
    }
    out << "\n";
}

KpiReport load_kpi_csv(const std::filesystem::path& path)
{
    csv::Table t = csv::read_table(path);
    std::vector<std::string> want = {"experiment"};
    for (const std::string& name : criteria_names())
        want.push_back(name);
    if (t.header != want || t.rows.size() != 1)
        throw std::runtime_error(path.string() + ": not a KPI file");
    KpiReport k;
    k.experiment_id = t.rows[0][0];
    k.produced_h2_t = csv::parse_double(t, 1, 1);
    k.grid_consumption_mwh = csv::parse_double(t, 1, 2);
    k.grid_cost_mdkk = csv::parse_double(t, 1, 3);
    if (t.rows[0][4] != "na")
        k.h2_cost_dkk_per_kg = csv::parse_double(t, 1, 4);
    k.electricity_sold_mwh = csv::parse_double(t, 1, 5);
    k.sale_revenue_mdkk = csv::parse_double(t, 1, 6);
    k.co2_total_t = csv::parse_double(t, 1, 7);
    if (t.rows[0][8] != "na")
        k.co2_per_kg = csv::parse_double(t, 1, 8);
    k.electrolyzer_flh_h = csv::parse_double(t, 1, 9);
    k.storage_size_kg = csv::parse_double(t, 1, 10);
    k.storage_utilization = csv::parse_double(t, 1, 11);
    k.n_trucks = static_cast<int>(csv::parse_long(t, 1, 12));
    k.truck_utilization = csv::parse_double(t, 1, 13);
    return k;
}

void write_decision_matrix_csv(const DecisionMatrix& m, const std::filesystem::path& path,
                               const std::string& provenance)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << provenance;
    out << "alternative";
    for (const Criterion& c : m.criteria)
        out << "," << c.name;
    out << "\norientation";
    for (const Criterion& c : m.criteria)
        out << "," << orientation_str(c.orientation);
    out << "\n";
    for (size_t a = 0; a < m.alternatives.size(); ++a) {
        out << m.alternatives[a];
        for (double v : m.values[a])
            out << "," << csv::format_double(v);
        out << "\n";
    }
}

DecisionMatrix load_decision_matrix(const std::filesystem::path& path)
{
    csv::Table t = csv::read_table(path);
    if (t.header.size() < 2 || t.header[0] != "alternative")
        throw std::runtime_error(path.string() + ": expected 'alternative,<criteria...>' header");
    if (t.rows.empty() || t.rows[0][0] != "orientation")
        throw std::runtime_error(path.string() + ": missing orientation row");
    DecisionMatrix m;
    for (size_t j = 1; j < t.header.size(); ++j)
        m.criteria.push_back({t.header[j], parse_orientation(t.rows[0].at(j), path.string())});
    for (size_t i = 1; i < t.rows.size(); ++i) {
        if (t.rows[i].size() != t.header.size())
            throw std::runtime_error(path.string() + ": row " + std::to_string(i + 1) +
                                     " has wrong field count");
        m.alternatives.push_back(t.rows[i][0]);
        std::vector<double> row;
        for (size_t j = 1; j < t.header.size(); ++j)
            row.push_back(csv::parse_double(t, i + 1, j));
        m.values.push_back(std::move(row));
    }
    m.validate();
    return m;
}

void write_trace_csv(const dispatch::SimulationTrace& trace, const std::filesystem::path& path,
                     const std::string& provenance)
{
    std::ofstream out(path);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << provenance;
    out << "hour,re_generated_mwh,re_to_electrolyzer_mwh,grid_purchased_mwh,re_sold_mwh,"
           "h2_produced_kg,storage_level_end_kg,h2_delivered_kg,purchase_cost_dkk,"
           "sale_revenue_dkk,co2_emitted_kg,trucks_in_transit\n";
    for (const dispatch::HourRecord& r : trace.records) {
        out << r.hour << "," << csv::format_double(r.re_generated_mwh) << ","
            << csv::format_double(r.re_to_electrolyzer_mwh) << ","
            << csv::format_double(r.grid_purchased_mwh) << ","
            << csv::format_double(r.re_sold_mwh) << ","
            << csv::format_double(r.h2_produced_kg) << ","
            << csv::format_double(r.storage_level_end_kg) << ","
            << csv::format_double(r.h2_delivered_kg) << ","
            << csv::format_double(r.purchase_cost_dkk) << ","
            << csv::format_double(r.sale_revenue_dkk) << ","
            << csv::format_double(r.co2_emitted_kg) << "," << r.trucks_in_transit << "\n";
    }
}

dispatch::SimulationTrace load_trace_csv(const std::filesystem::path& path)
{
    csv::Table t = csv::read_table(path);
    if (t.header.size() != 12 || t.header[0] != "hour")
        throw std::runtime_error(path.string() + ": not a trace file");
    dispatch::SimulationTrace trace;
    trace.config_id = path.stem().string();
    for (size_t i = 0; i < t.rows.size(); ++i) {
        dispatch::HourRecord r;
        r.hour = csv::parse_long(t, i + 1, 0);
        r.re_generated_mwh = csv::parse_double(t, i + 1, 1);
        r.re_to_electrolyzer_mwh = csv::parse_double(t, i + 1, 2);
        r.grid_purchased_mwh = csv::parse_double(t, i + 1, 3);
        r.re_sold_mwh = csv::parse_double(t, i + 1, 4);
        r.h2_produced_kg = csv::parse_double(t, i + 1, 5);
        r.storage_level_end_kg = csv::parse_double(t, i + 1, 6);
        r.h2_delivered_kg = csv::parse_double(t, i + 1, 7);
        r.purchase_cost_dkk = csv::parse_double(t, i + 1, 8);
        r.sale_revenue_dkk = csv::parse_double(t, i + 1, 9);
        r.co2_emitted_kg = csv::parse_double(t, i + 1, 10);
        r.trucks_in_transit = static_cast<int>(csv::parse_long(t, i + 1, 11));
        trace.records.push_back(r);
    }
    if (!trace.records.empty())
        trace.final_storage_kg = trace.records.back().storage_level_end_kg;
    return trace;
}

} // namespace ptx::kpi
