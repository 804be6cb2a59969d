#include "ptx/csv.hpp"
#include "ptx/kpi.hpp"
#include "ptx/market_data.hpp"
#include "ptx/mcdm.hpp"
#include "ptx/study.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

namespace {

int cmd_gen_data(std::uint64_t seed, int year, const std::string& out_dir)
{
    const ptx::market::MarketDataset d = ptx::market::generate_synthetic(seed, year);
    ptx::market::write_dataset(d, out_dir);
    std::cout << "wrote " << d.hours() << "-hour dataset for " << year << " to " << out_dir
              << " (fingerprint " << ptx::csv::to_hex(d.fingerprint()) << ")\n";
    return 0;
}

int cmd_simulate(const std::string& config_path, const std::string& experiment_id)
{
    ptx::study::StudyConfig config = ptx::study::load_config(config_path);
    bool known = false;
    for (const std::string& id : config.experiments)
        known = known || id == experiment_id;
    if (!known) {
        std::cerr << "error: unknown experiment id '" << experiment_id << "' (configured: ";
        for (size_t i = 0; i < config.experiments.size(); ++i)
            std::cerr << (i ? ", " : "") << config.experiments[i];
        std::cerr << ")\n";
        return 2;
    }
    const ptx::market::MarketDataset dataset = ptx::study::obtain_dataset(config);
    std::ostringstream prov;
    prov << "# " << ptx::study::kToolVersion << "\n"
         << "# config_fingerprint: "
         << ptx::csv::to_hex(ptx::csv::fnv1a64(config.canonical_json())) << "\n"
         << "# dataset_fingerprint: " << ptx::csv::to_hex(dataset.fingerprint()) << "\n";
    const ptx::kpi::KpiReport report =
        ptx::study::run_experiment(config, dataset, experiment_id, prov.str());
    std::cout << "experiment " << experiment_id << ": " << report.produced_h2_t
              << " t H2, grid " << report.grid_consumption_mwh << " MWh; outputs in "
              << config.output_dir.string() << "\n";
    return 0;
}

int cmd_study(const std::string& config_path)
{
    ptx::study::StudyConfig config = ptx::study::load_config(config_path);
    const ptx::study::StudyReport report = ptx::study::run_study(config);
    std::cout << ptx::study::ranking_table_text(report.ranking);
    std::cout << "study outputs written to " << config.output_dir.string() << "\n";
    return 0;
}

int cmd_rank(const std::string& matrix_path, double v, const std::string& preference,
             double threshold, const std::string& entropy_basis, bool topsis_classical,
             const std::string& out_dir)
{
    const ptx::kpi::DecisionMatrix matrix = ptx::kpi::load_decision_matrix(matrix_path);
    ptx::study::McdmSettings settings;
    settings.vikor_v = v;
    if (preference == "linear") {
        settings.preference.family = ptx::mcdm::PreferenceSpec::Family::Linear;
        settings.preference.thresholds = {threshold};
    } else if (preference != "usual") {
        std::cerr << "error: unknown preference '" << preference << "' (want usual|linear)\n";
        return 2;
    }
    settings.entropy_basis = ptx::mcdm::parse_entropy_basis(entropy_basis);
    settings.topsis_classical = topsis_classical;

    std::ostringstream prov;
    prov << "# " << ptx::study::kToolVersion << "\n"
         << "# matrix_fingerprint: "
         << ptx::csv::to_hex(ptx::csv::fnv1a64(matrix_path)) << "\n";
    const ptx::study::StudyReport report =
        ptx::study::rank_matrix(matrix, settings, out_dir, prov.str());
    std::cout << ptx::study::ranking_table_text(report.ranking);
    return 0;
}

int cmd_report(const std::string& study_dir, const std::string& format)
{
    std::cout << ptx::study::report_from_directory(study_dir, format);
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Hourly Power-to-X plant simulator and strategy ranking tool"};
    app.require_subcommand(1);

    std::uint64_t seed = 42;
    int year = 2024;
    std::string out_dir = "data";
    auto* gen = app.add_subcommand("gen-data", "Generate a synthetic market dataset");
    gen->add_option("--seed", seed, "RNG seed")->capture_default_str();
    gen->add_option("--year", year, "Calendar year to cover")->capture_default_str();
    gen->add_option("--out", out_dir, "Output directory")->capture_default_str();

    std::string config_path;
    std::string experiment_id;
    auto* sim = app.add_subcommand("simulate", "Run a single experiment");
    sim->add_option("--config", config_path, "Study configuration (JSON)")->required();
    sim->add_option("--experiment", experiment_id, "Experiment id, e.g. 2.3")->required();

    std::string study_config;
    auto* study = app.add_subcommand("study", "Run the full study workflow");
    study->add_option("--config", study_config, "Study configuration (JSON)")->required();

    std::string matrix_path;
    double vikor_v = 0.5;
    std::string preference = "usual";
    double threshold = 0.5;
    std::string entropy_basis = "raw";
    bool topsis_classical = false;
    std::string rank_out = ".";
    auto* rank = app.add_subcommand("rank", "Rank alternatives from a decision matrix");
    rank->add_option("--matrix", matrix_path, "decision_matrix.csv")->required();
    rank->add_option("--v", vikor_v, "VIKOR consensus weight in [0,1]")->capture_default_str();
    rank->add_option("--preference", preference, "PROMETHEE preference family (usual|linear)")
        ->capture_default_str();
    rank->add_option("--threshold", threshold, "Linear preference threshold (normalized scale)")
        ->capture_default_str();
    rank->add_option("--entropy-basis", entropy_basis, "Entropy weight basis (raw|normalized)")
        ->capture_default_str();
    rank->add_flag("--topsis-classical", topsis_classical,
                   "Use vector-normalized TOPSIS instead of min-max");
    rank->add_option("--out", rank_out, "Output directory for rankings/weights CSVs")
        ->capture_default_str();

    std::string report_dir;
    std::string report_format = "md";
    auto* report = app.add_subcommand("report", "Re-emit a report from study outputs");
    report->add_option("--study", report_dir, "Study output directory")->required();
    report->add_option("--format", report_format, "md or csv")->capture_default_str();

    CLI11_PARSE(app, argc, argv);

    try {
        if (gen->parsed())
            return cmd_gen_data(seed, year, out_dir);
        if (sim->parsed())
            return cmd_simulate(config_path, experiment_id);
        if (study->parsed())
            return cmd_study(study_config);
        if (rank->parsed())
            return cmd_rank(matrix_path, vikor_v, preference, threshold, entropy_basis,
                            topsis_classical, rank_out);
        if (report->parsed())
            return cmd_report(report_dir, report_format);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
