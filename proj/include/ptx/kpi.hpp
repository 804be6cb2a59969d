#pragma once

#include "ptx/dispatch.hpp"

#include <array>
#include <optional>
#include <string>
#include <vector>

namespace ptx::kpi {

inline constexpr size_t kCriteriaCount = 13;

enum class Orientation { Benefit, Cost };

/// The 13 KPIs, in the row order of the paper-style report tables.
struct KpiReport {
    std::string experiment_id;
    double produced_h2_t = 0.0;        // tonnes
    double grid_consumption_mwh = 0.0;
    double grid_cost_mdkk = 0.0;       // million DKK
    std::optional<double> h2_cost_dkk_per_kg; // unset when production is zero
    double electricity_sold_mwh = 0.0;
    double sale_revenue_mdkk = 0.0;
    double co2_total_t = 0.0;
    std::optional<double> co2_per_kg;  // kgCO2 per kg H2; unset when production is zero
    double electrolyzer_flh_h = 0.0;
    double storage_size_kg = 0.0;
    double storage_utilization = 0.0;  // time-average fill fraction, [0,1]
    int n_trucks = 0;
    double truck_utilization = 0.0;    // busy-hour fraction of fleet-hours, [0,1]

    /// Criterion value by column index (throws if an optional is unset).
    double value(size_t column) const;
};

const std::array<std::string, kCriteriaCount>& criteria_names();
const std::array<Orientation, kCriteriaCount>& default_orientations();

KpiReport compute_kpis(const dispatch::SimulationTrace& trace, const site::ExperimentConfig& config);

struct Criterion {
    std::string name;
    Orientation orientation = Orientation::Benefit;
};

struct DecisionMatrix {
    std::vector<std::string> alternatives;       // experiment labels, row order
    std::vector<Criterion> criteria;
    std::vector<std::vector<double>> values;     // [alternative][criterion]

    size_t n_alternatives() const { return alternatives.size(); }
    size_t n_criteria() const { return criteria.size(); }
    void validate() const;
};

/// Orientation overrides by criterion name; unknown names are an error.
using OrientationOverrides = std::vector<std::pair<std::string, Orientation>>;

DecisionMatrix build_decision_matrix(const std::vector<KpiReport>& reports,
                                     const OrientationOverrides& overrides = {});

void write_kpi_csv(const KpiReport& report, const std::filesystem::path& path,
                   const std::string& provenance);
KpiReport load_kpi_csv(const std::filesystem::path& path);
void write_decision_matrix_csv(const DecisionMatrix& m, const std::filesystem::path& path,
                               const std::string& provenance);
DecisionMatrix load_decision_matrix(const std::filesystem::path& path);

void write_trace_csv(const dispatch::SimulationTrace& trace, const std::filesystem::path& path,
                     const std::string& provenance);
dispatch::SimulationTrace load_trace_csv(const std::filesystem::path& path);

} // namespace ptx::kpi
