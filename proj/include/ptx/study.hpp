#pragma once

#include "ptx/dispatch.hpp"
#include "ptx/kpi.hpp"
#include "ptx/market_data.hpp"
#include "ptx/mcdm.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace ptx::study {

inline constexpr const char* kToolVersion = "ptxsim 0.1.0";

struct TierSpec {
    double capacity_mw = 0.0;
    double daily_demand_kg = 0.0;
    double storage_kg = 0.0;
    int n_trucks = 0;
};

/// The three paper tiers: pilot, commercial, export scale.
std::map<std::string, TierSpec> default_tiers();

/// All nine tier x strategy labels, "1.1" .. "3.3".
std::vector<std::string> default_experiment_grid();

struct McdmSettings {
    double vikor_v = 0.5;
    mcdm::PreferenceSpec preference;
    mcdm::EntropyBasis entropy_basis = mcdm::EntropyBasis::RawColumns;
    bool topsis_classical = false;
    kpi::OrientationOverrides orientations;
};

struct StudyConfig {
    // Dataset: either synthetic generation or the five CSV paths.
    std::optional<std::uint64_t> synthetic_seed;
    int synthetic_year = 2024;
    market::SyntheticParams synthetic_params;
    std::optional<market::DatasetPaths> dataset_paths;

    std::vector<std::string> experiments = default_experiment_grid(); // run order
    std::map<std::string, TierSpec> tiers = default_tiers();
    site::RenewableSpec renewables;
    std::vector<site::EfficiencyKnot> efficiency_curve = site::ElectrolyzerSpec::default_curve();
    double min_load_fraction = 0.1;
    double lhv_kwh_per_kg = 33.33;
    double truck_capacity_kg = 1000.0;
    int truck_round_trip_hours = 3;
    dispatch::SchedulingPolicy policy = dispatch::SchedulingPolicy::CheapestHours;
    double base_variable_cost_dkk_per_kg = 0.0;
    McdmSettings mcdm;
    std::filesystem::path output_dir = "out";

    /// Canonical JSON used for the provenance fingerprint.
    std::string canonical_json() const;
    void validate() const;

    site::ExperimentConfig experiment(const std::string& id) const;
};

StudyConfig load_config(const std::filesystem::path& path);
StudyConfig config_from_json_text(const std::string& text);

struct StudyReport {
    std::vector<kpi::KpiReport> reports;
    kpi::DecisionMatrix matrix;
    mcdm::StudyRanking ranking;
    std::string provenance; // comment block: version + config/dataset fingerprints
};

market::MarketDataset obtain_dataset(const StudyConfig& config);

/// Runs one experiment and writes trace_<id>.csv, summary_<id>.json and
/// kpis_<id>.csv into the output directory.
kpi::KpiReport run_experiment(const StudyConfig& config, const market::MarketDataset& dataset,
                              const std::string& id, const std::string& provenance);

/// The six-step study: dataset, simulations, KPI extraction, decision
/// matrix, per-method ranking, aggregated report. Deterministic: identical
/// config and dataset give byte-identical output trees.
StudyReport run_study(const StudyConfig& config);

/// Ranking on an existing decision matrix (the `rank` subcommand).
StudyReport rank_matrix(const kpi::DecisionMatrix& matrix, const McdmSettings& settings,
                        const std::filesystem::path& out_dir, const std::string& provenance);

std::string markdown_report(const StudyReport& report);

/// Rebuilds the report from a study output directory (kpis_*.csv and
/// rankings.csv), for the `report` subcommand.
std::string report_from_directory(const std::filesystem::path& study_dir, const std::string& format);

std::string ranking_table_text(const mcdm::StudyRanking& ranking);

} // namespace ptx::study
