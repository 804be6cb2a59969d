#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace ptx::market {

enum class SeriesUnit { DkkPerMwh, KgCo2PerMwh, CapacityFactor };

/// One value per hour of a calendar year (8,760 or 8,784 entries).
struct HourlySeries {
    int start_year = 0;
    SeriesUnit unit = SeriesUnit::DkkPerMwh;
    std::vector<double> values;

    size_t hours() const { return values.size(); }
    double at(size_t hour) const;
    void validate(const std::string& name) const;
};

enum class Season { All, Summer, Winter };
enum class TariffKind { TsoConsumption, DsoConsumption, TsoProduction, DsoProduction };

/// Season x hour-of-day block with a flat rate. Hours are inclusive.
struct TariffBand {
    Season season = Season::All;
    int hour_begin = 0;
    int hour_end = 23;
    double rate_dkk_per_mwh = 0.0;

    bool covers(int month, int hour_of_day) const;
};

struct TariffSchedule {
    std::vector<TariffBand> tso_consumption;
    std::vector<TariffBand> dso_consumption;
    std::vector<TariffBand> tso_production;
    std::vector<TariffBand> dso_production;

    /// Every hour of the year must fall in exactly one band per kind.
    void validate(int year) const;

    double consumption_rate(int year, long hour_index) const; // tso + dso
    double production_rate(int year, long hour_index) const;  // tso + dso
    double band_rate(const std::vector<TariffBand>& bands, int year, long hour_index,
                     const char* kind) const;
};

struct MarketDataset {
    int year = 0;
    HourlySeries spot;    // DKK/MWh, may be negative
    HourlySeries co2;     // kgCO2/MWh
    HourlySeries pv_cf;   // [0,1]
    HourlySeries wind_cf; // [0,1]
    TariffSchedule tariffs;

    size_t hours() const { return spot.hours(); }
    void validate() const;

    /// spot + consumption tariffs for the hour's band.
    double buy_price(long hour) const;
    /// spot - production tariffs; may be negative.
    double sell_price(long hour) const;

    std::uint64_t fingerprint() const;
};

struct DatasetPaths {
    std::filesystem::path spot;
    std::filesystem::path co2;
    std::filesystem::path pv_cf;
    std::filesystem::path wind_cf;
    std::filesystem::path tariffs;
};

MarketDataset load_dataset(const DatasetPaths& paths);

/// Writes the five canonical CSV files into `dir` (spot.csv, co2.csv,
/// pv_cf.csv, wind_cf.csv, tariffs.csv).
void write_dataset(const MarketDataset& d, const std::filesystem::path& dir);

struct SyntheticParams {
    double spot_mean_dkk = 420.0;
    double spot_seasonal_amplitude = 110.0; // winter high / summer low
    double spot_diurnal_amplitude = 130.0;  // morning + evening peaks
    double spot_noise_sd = 120.0;
    double co2_base_kg_per_mwh = 95.0;
    double co2_spot_coupling = 0.14; // kgCO2/MWh per DKK/MWh above the mean
    double pv_clear_sky_peak = 0.78;
    double wind_mean_level = -1.0;   // logistic offset; lower -> calmer site
};

/// Deterministic: same (seed, year, params) gives the identical dataset,
/// bit for bit. Ships its own uniform/gaussian transforms because the
/// standard-library distributions are implementation-defined.
MarketDataset generate_synthetic(std::uint64_t seed, int year, const SyntheticParams& params = {});

/// The default Danish-style time-of-use schedule used by generate_synthetic.
TariffSchedule default_tariffs();

} // namespace ptx::market
