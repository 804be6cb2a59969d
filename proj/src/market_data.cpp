#include "ptx/market_data.hpp"

#include "ptx/calendar.hpp"
#include "ptx/csv.hpp"

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>

namespace ptx::market {

double HourlySeries::at(size_t hour) const
{
    if (hour >= values.size())
        throw std::out_of_range("hour " + std::to_string(hour) + " outside year (" +
                                std::to_string(values.size()) + " hours)");
    return values[hour];
}

void HourlySeries::validate(const std::string& name) const
{
    const size_t expected = static_cast<size_t>(cal::hours_in_year(start_year));
    if (values.size() != expected) {
        std::ostringstream msg;
        msg << name << ": " << values.size() << " values, expected " << expected << " for year "
            << start_year;
        throw std::runtime_error(msg.str());
    }
    for (size_t i = 0; i < values.size(); ++i) {
        double v = values[i];
        if (!std::isfinite(v))
            throw std::runtime_error(name + ": non-finite value at hour " + std::to_string(i));
        if (unit == SeriesUnit::CapacityFactor && (v < 0.0 || v > 1.0)) {
            std::ostringstream msg;
            msg << name << ": capacity factor " << v << " outside [0,1] at row " << i + 1;
            throw std::runtime_error(msg.str());
        }
        if (unit == SeriesUnit::KgCo2PerMwh && v < 0.0) {
            std::ostringstream msg;
            msg << name << ": negative CO2 intensity " << v << " at row " << i + 1;
            throw std::runtime_error(msg.str());
        }
    }
}

bool TariffBand::covers(int month, int hour_of_day) const
{
    if (season == Season::Summer && !cal::is_summer_month(month))
        return false;
    if (season == Season::Winter && cal::is_summer_month(month))
        return false;
    return hour_of_day >= hour_begin && hour_of_day <= hour_end;
}

namespace {

void validate_partition(const std::vector<TariffBand>& bands, int year, const char* kind)
{
    if (bands.empty())
        throw std::runtime_error(std::string("tariffs: no ") + kind + " band defined");
    for (const TariffBand& b : bands) {
        if (b.rate_dkk_per_mwh < 0.0)
            throw std::runtime_error(std::string("tariffs: negative rate in ") + kind);
        if (b.hour_begin < 0 || b.hour_end > 23 || b.hour_begin > b.hour_end)
            throw std::runtime_error(std::string("tariffs: bad hour range in ") + kind);
    }
    // Exactly one band per hour of the year. Months x hours cover all cases.
    for (int month = 1; month <= 12; ++month) {
        for (int hod = 0; hod < 24; ++hod) {
            int n = 0;
            for (const TariffBand& b : bands)
                n += b.covers(month, hod) ? 1 : 0;
            if (n != 1) {
                std::ostringstream msg;
                msg << "tariffs: " << kind << " bands cover month " << month << " hour " << hod
                    << " " << n << " times (must be exactly once)";
                throw std::runtime_error(msg.str());
            }
        }
    }
    (void)year;
}

} // namespace

void TariffSchedule::validate(int year) const
{
    validate_partition(tso_consumption, year, "tso_consumption");
    validate_partition(dso_consumption, year, "dso_consumption");
    validate_partition(tso_production, year, "tso_production");
    validate_partition(dso_production, year, "dso_production");
}

double TariffSchedule::band_rate(const std::vector<TariffBand>& bands, int year, long hour_index,
                                 const char* kind) const
{
    const int month = cal::month_of_day(year, cal::day_of_year(hour_index));
    const int hod = cal::hour_of_day(hour_index);
    for (const TariffBand& b : bands) {
        if (b.covers(month, hod))
            return b.rate_dkk_per_mwh;
    }
    throw std::runtime_error(std::string("tariffs: no ") + kind + " band for hour " +
                             std::to_string(hour_index));
}

double TariffSchedule::consumption_rate(int year, long hour_index) const
{
    return band_rate(tso_consumption, year, hour_index, "tso_consumption") +
           band_rate(dso_consumption, year, hour_index, "dso_consumption");
}

double TariffSchedule::production_rate(int year, long hour_index) const
{
    return band_rate(tso_production, year, hour_index, "tso_production") +
           band_rate(dso_production, year, hour_index, "dso_production");
}

void MarketDataset::validate() const
{
    spot.validate("spot");
    co2.validate("co2");
    pv_cf.validate("pv_cf");
    wind_cf.validate("wind_cf");
    if (spot.start_year != year || co2.start_year != year || pv_cf.start_year != year ||
        wind_cf.start_year != year)
        throw std::runtime_error("dataset series cover different years");
    tariffs.validate(year);
}

double MarketDataset::buy_price(long hour) const
{
    return spot.at(static_cast<size_t>(hour)) + tariffs.consumption_rate(year, hour);
}

double MarketDataset::sell_price(long hour) const
{
    return spot.at(static_cast<size_t>(hour)) - tariffs.production_rate(year, hour);
}

std::uint64_t MarketDataset::fingerprint() const
{
    std::uint64_t h = csv::fnv1a64("ptx-dataset");
    auto mix_series = [&h](const HourlySeries& s) {
        for (double v : s.values) {
            h = csv::fnv1a64_accumulate(h, csv::format_double(v));
            h = csv::fnv1a64_accumulate(h, ";");
        }
    };
    h = csv::fnv1a64_accumulate(h, std::to_string(year));
    mix_series(spot);
    mix_series(co2);
    mix_series(pv_cf);
    mix_series(wind_cf);
    auto mix_bands = [&h](const std::vector<TariffBand>& bands) {
        for (const TariffBand& b : bands) {
            h = csv::fnv1a64_accumulate(h, std::to_string(static_cast<int>(b.season)) + ":" +
                                               std::to_string(b.hour_begin) + "-" +
                                               std::to_string(b.hour_end) + "=" +
                                               csv::format_double(b.rate_dkk_per_mwh) + ";");
        }
    };
    mix_bands(tariffs.tso_consumption);
    mix_bands(tariffs.dso_consumption);
    mix_bands(tariffs.tso_production);
    mix_bands(tariffs.dso_production);
    return h;
}

namespace {

HourlySeries load_series(const std::filesystem::path& path, SeriesUnit unit,
                         const char* value_column)
{
    csv::Table t = csv::read_table(path);
    if (t.header.size() != 2 || t.header[0] != "timestamp_utc" || t.header[1] != value_column) {
        throw std::runtime_error(path.string() + ": expected header 'timestamp_utc," +
                                 value_column + "'");
    }
    HourlySeries s;
    s.unit = unit;
    s.values.reserve(t.rows.size());
    std::string prev_ts;
    for (size_t i = 0; i < t.rows.size(); ++i) {
        if (t.rows[i].size() != 2)
            throw std::runtime_error(path.string() + ": row " + std::to_string(i + 1) +
                                     " has " + std::to_string(t.rows[i].size()) + " fields");
        const std::string& ts = t.rows[i][0];
        if (i == 0) {
            if (ts.size() < 4)
                throw std::runtime_error(path.string() + ": bad timestamp '" + ts + "'");
            s.start_year = std::stoi(ts.substr(0, 4));
        } else if (!(prev_ts < ts)) {
            throw std::runtime_error(path.string() + ": timestamps not strictly increasing at row " +
                                     std::to_string(i + 1));
        }
        prev_ts = ts;
        s.values.push_back(csv::parse_double(t, i + 1, 1));
    }
    return s;
}

Season parse_season(const std::string& s, const std::string& file)
{
    if (s == "all")
        return Season::All;
    if (s == "summer")
        return Season::Summer;
    if (s == "winter")
        return Season::Winter;
    throw std::runtime_error(file + ": unknown season '" + s + "'");
}

std::pair<int, int> parse_hours(const std::string& s, const std::string& file)
{
    if (s == "all")
        return {0, 23};
    auto dash = s.find('-');
    if (dash == std::string::npos)
        throw std::runtime_error(file + ": bad hours range '" + s + "' (want 'H-H' or 'all')");
    int lo = std::stoi(s.substr(0, dash));
    int hi = std::stoi(s.substr(dash + 1));
    return {lo, hi};
}

} // namespace

MarketDataset load_dataset(const DatasetPaths& paths)
{
    MarketDataset d;
    d.spot = load_series(paths.spot, SeriesUnit::DkkPerMwh, "price_dkk_per_mwh");
    d.co2 = load_series(paths.co2, SeriesUnit::KgCo2PerMwh, "kg_co2_per_mwh");
    d.pv_cf = load_series(paths.pv_cf, SeriesUnit::CapacityFactor, "capacity_factor");
    d.wind_cf = load_series(paths.wind_cf, SeriesUnit::CapacityFactor, "capacity_factor");
    d.year = d.spot.start_year;

    csv::Table t = csv::read_table(paths.tariffs);
    const std::vector<std::string> want = {"kind", "season", "hours", "rate_dkk_per_mwh"};
    if (t.header != want)
        throw std::runtime_error(paths.tariffs.string() +
                                 ": expected header 'kind,season,hours,rate_dkk_per_mwh'");
    for (size_t i = 0; i < t.rows.size(); ++i) {
        const auto& row = t.rows[i];
        if (row.size() != 4)
            throw std::runtime_error(paths.tariffs.string() + ": row " + std::to_string(i + 1) +
                                     " has " + std::to_string(row.size()) + " fields");
        TariffBand b;
        b.season = parse_season(row[1], paths.tariffs.string());
        auto [lo, hi] = parse_hours(row[2], paths.tariffs.string());
        b.hour_begin = lo;
        b.hour_end = hi;
        b.rate_dkk_per_mwh = csv::parse_double(t, i + 1, 3);
        if (row[0] == "tso_consumption")
            d.tariffs.tso_consumption.push_back(b);
        else if (row[0] == "dso_consumption")
            d.tariffs.dso_consumption.push_back(b);
        else if (row[0] == "tso_production")
            d.tariffs.tso_production.push_back(b);
        else if (row[0] == "dso_production")
            d.tariffs.dso_production.push_back(b);
        else
            throw std::runtime_error(paths.tariffs.string() + ": row " + std::to_string(i + 1) +
                                     ": unknown kind '" + row[0] + "'");
    }
    d.validate();
    return d;
}

void write_dataset(const MarketDataset& d, const std::filesystem::path& dir)
{
    std::filesystem::create_directories(dir);
    auto write_series = [&](const HourlySeries& s, const char* file, const char* column) {
        std::ofstream out(dir / file);
        if (!out)
            throw std::runtime_error("cannot write " + (dir / file).string());
        out << "timestamp_utc," << column << "\n";
        for (size_t h = 0; h < s.values.size(); ++h)
            out << cal::hour_timestamp(d.year, static_cast<long>(h)) << ","
                << csv::format_double(s.values[h]) << "\n";
    };
    write_series(d.spot, "spot.csv", "price_dkk_per_mwh");
    write_series(d.co2, "co2.csv", "kg_co2_per_mwh");
    write_series(d.pv_cf, "pv_cf.csv", "capacity_factor");
    write_series(d.wind_cf, "wind_cf.csv", "capacity_factor");

    std::ofstream out(dir / "tariffs.csv");
    out << "kind,season,hours,rate_dkk_per_mwh\n";
    auto season_str = [](Season s) {
        return s == Season::All ? "all" : (s == Season::Summer ? "summer" : "winter");
    };
    auto write_bands = [&](const std::vector<TariffBand>& bands, const char* kind) {
        for (const TariffBand& b : bands) {
            std::string hours = (b.hour_begin == 0 && b.hour_end == 23)
                                    ? "all"
                                    : std::to_string(b.hour_begin) + "-" + std::to_string(b.hour_end);
            out << kind << "," << season_str(b.season) << "," << hours << ","
                << csv::format_double(b.rate_dkk_per_mwh) << "\n";
        }
    };
    write_bands(d.tariffs.tso_consumption, "tso_consumption");
    write_bands(d.tariffs.dso_consumption, "dso_consumption");
    write_bands(d.tariffs.tso_production, "tso_production");
    write_bands(d.tariffs.dso_production, "dso_production");
}

TariffSchedule default_tariffs()
{
    TariffSchedule t;
    t.tso_consumption = {{Season::All, 0, 23, 112.5}};
    t.dso_consumption = {
        {Season::Summer, 0, 5, 85.0},   {Season::Summer, 6, 16, 127.0},
        {Season::Summer, 17, 20, 330.0}, {Season::Summer, 21, 23, 127.0},
        {Season::Winter, 0, 5, 100.0},  {Season::Winter, 6, 16, 160.0},
        {Season::Winter, 17, 20, 495.0}, {Season::Winter, 21, 23, 160.0},
    };
    t.tso_production = {{Season::All, 0, 23, 11.25}};
    t.dso_production = {{Season::All, 0, 23, 15.0}};
    return t;
}

namespace {

/// Deterministic uniform in (0,1] and standard gaussian from mt19937_64.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    double uniform()
    {
        // 53-bit mantissa; +1 keeps the value strictly positive for log().
        return (static_cast<double>(gen_() >> 11) + 1.0) * 0x1.0p-53;
    }

    double gaussian()
    {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * M_PI * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

private:
    std::mt19937_64 gen_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace

MarketDataset generate_synthetic(std::uint64_t seed, int year, const SyntheticParams& p)
{
    const int hours = cal::hours_in_year(year);
    const double days = cal::days_in_year(year);
    MarketDataset d;
    d.year = year;
    d.spot = {year, SeriesUnit::DkkPerMwh, std::vector<double>(static_cast<size_t>(hours))};
    d.co2 = {year, SeriesUnit::KgCo2PerMwh, std::vector<double>(static_cast<size_t>(hours))};
    d.pv_cf = {year, SeriesUnit::CapacityFactor, std::vector<double>(static_cast<size_t>(hours))};
    d.wind_cf = {year, SeriesUnit::CapacityFactor, std::vector<double>(static_cast<size_t>(hours))};
    d.tariffs = default_tariffs();

    // Zero-mean diurnal shape: morning and evening peaks, night trough.
    double shape[24];
    double shape_mean = 0.0;
    for (int h = 0; h < 24; ++h) {
        double morning = std::exp(-0.5 * std::pow((h - 8.5) / 2.2, 2.0));
        double evening = std::exp(-0.5 * std::pow((h - 18.5) / 2.4, 2.0));
        shape[h] = 0.55 * morning + evening;
        shape_mean += shape[h] / 24.0;
    }
    for (int h = 0; h < 24; ++h)
        shape[h] -= shape_mean;

    Rng spot_rng(seed * 6364136223846793005ULL + 1);
    Rng pv_rng(seed * 6364136223846793005ULL + 2);
    Rng wind_rng(seed * 6364136223846793005ULL + 3);
    Rng co2_rng(seed * 6364136223846793005ULL + 4);

    const double ar_rho = 0.95;
    double spot_noise = 0.0;
    double wind_state = 0.0;
    double cloud = 0.6; // daily cloudiness carry-over, [0.15, 1]

    for (int h = 0; h < hours; ++h) {
        const int day = cal::day_of_year(h);
        const int hod = cal::hour_of_day(h);
        const double day_frac = (day + 0.5) / days;

        if (hod == 0) {
            // New day: update cloudiness (AR across days, clamped).
            cloud = 0.65 * cloud + 0.35 * (0.62 + 0.38 * std::tanh(pv_rng.gaussian()));
            if (cloud < 0.15)
                cloud = 0.15;
            if (cloud > 1.0)
                cloud = 1.0;
        }

        // Spot: winter-high seasonal + diurnal peaks + AR(1) noise.
        const double seasonal = p.spot_seasonal_amplitude * std::cos(2.0 * M_PI * day_frac);
        const double diurnal = p.spot_diurnal_amplitude * shape[hod];
        spot_noise = ar_rho * spot_noise +
                     std::sqrt(1.0 - ar_rho * ar_rho) * p.spot_noise_sd * spot_rng.gaussian();
        const double spot = p.spot_mean_dkk + seasonal + diurnal + spot_noise;
        d.spot.values[static_cast<size_t>(h)] = spot;

        // CO2 intensity tracks the spot price (scarcity -> fossil margin).
        double co2 = p.co2_base_kg_per_mwh + p.co2_spot_coupling * (spot - p.spot_mean_dkk) +
                     12.0 * co2_rng.gaussian();
        d.co2.values[static_cast<size_t>(h)] = co2 > 0.0 ? co2 : 0.0;

        // PV: seasonal daylight window around local noon, zero at night.
        const double solar_season = std::sin(2.0 * M_PI * (day - 80.0) / days);
        const double day_len = 12.2 + 5.3 * solar_season;
        const double sunrise = 12.0 - day_len / 2.0;
        const double sunset = 12.0 + day_len / 2.0;
        const double t = hod + 0.5;
        double pv = 0.0;
        if (t > sunrise && t < sunset) {
            const double elev = std::sin(M_PI * (t - sunrise) / day_len);
            const double peak = p.pv_clear_sky_peak * (0.72 + 0.28 * solar_season);
            pv = peak * cloud * std::pow(elev, 1.25);
            pv *= 1.0 + 0.08 * pv_rng.gaussian();
            if (pv < 0.0)
                pv = 0.0;
            if (pv > 1.0)
                pv = 1.0;
        }
        d.pv_cf.values[static_cast<size_t>(h)] = pv;

        // Wind: autocorrelated latent state squashed into (0,1), winter-high.
        wind_state = 0.985 * wind_state + 0.1726 * wind_rng.gaussian();
        const double wind_season = 0.35 * std::cos(2.0 * M_PI * day_frac);
        const double latent = 1.1 * wind_state + wind_season + p.wind_mean_level;
        d.wind_cf.values[static_cast<size_t>(h)] = 1.0 / (1.0 + std::exp(-latent));
    }
    d.validate();
    return d;
}

} // namespace ptx::market
