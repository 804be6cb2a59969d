#include "ptx/site_model.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ptx::site {

std::vector<EfficiencyKnot> ElectrolyzerSpec::default_curve()
{
    return {{0.25, 57.45 * 0.95}, {1.0, 57.45}};
}

void ElectrolyzerSpec::validate() const
{
    if (capacity_mw <= 0.0)
        throw std::invalid_argument("electrolyzer capacity must be positive");
    if (curve.empty())
        throw std::invalid_argument("efficiency curve needs at least one knot");
    double prev = 0.0;
    for (const EfficiencyKnot& k : curve) {
        if (k.load_fraction <= prev || k.load_fraction > 1.0)
            throw std::invalid_argument("efficiency curve knots must be strictly increasing in (0,1]");
        if (k.kwh_per_kg < lhv_kwh_per_kg)
            throw std::invalid_argument("specific consumption below LHV (efficiency > 100%)");
        prev = k.load_fraction;
    }
    if (curve.back().load_fraction != 1.0)
        throw std::invalid_argument("efficiency curve must end at load fraction 1.0");
    if (min_load_fraction < 0.0 || min_load_fraction > curve.front().load_fraction)
        throw std::invalid_argument("min_load_fraction must lie in [0, first knot]");
    // Output must stay monotone in power: sc(x) - x*sc'(x) >= 0 on each
    // linear segment. Linear in x, so the endpoints suffice.
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
        double slope = (curve[i + 1].kwh_per_kg - curve[i].kwh_per_kg) /
                       (curve[i + 1].load_fraction - curve[i].load_fraction);
        if (curve[i].kwh_per_kg - curve[i].load_fraction * slope < 0.0 ||
            curve[i + 1].kwh_per_kg - curve[i + 1].load_fraction * slope < 0.0)
            throw std::invalid_argument("efficiency curve makes hourly output non-monotone");
    }
}

double ElectrolyzerSpec::specific_consumption(double load_fraction) const
{
    if (load_fraction <= curve.front().load_fraction)
        return curve.front().kwh_per_kg;
    for (size_t i = 0; i + 1 < curve.size(); ++i) {
        const EfficiencyKnot& a = curve[i];
        const EfficiencyKnot& b = curve[i + 1];
        if (load_fraction <= b.load_fraction) {
            double t = (load_fraction - a.load_fraction) / (b.load_fraction - a.load_fraction);
            return a.kwh_per_kg + t * (b.kwh_per_kg - a.kwh_per_kg);
        }
    }
    return curve.back().kwh_per_kg;
}

double ElectrolyzerSpec::h2_output_kg(double power_mw, double hours) const
{
    if (power_mw < 0.0 || power_mw > capacity_mw * (1.0 + 1e-12)) {
        std::ostringstream msg;
        msg << "power " << power_mw << " MW outside [0, " << capacity_mw << "]";
        throw std::out_of_range(msg.str());
    }
    if (power_mw <= 0.0 || power_mw < min_load_fraction * capacity_mw)
        return 0.0;
    const double sc = specific_consumption(power_mw / capacity_mw);
    return power_mw * hours * 1000.0 / sc;
}

double ElectrolyzerSpec::min_load_rate_kg_per_h() const
{
    if (min_load_fraction <= 0.0)
        return 0.0;
    const double p = min_load_fraction * capacity_mw;
    return p * 1000.0 / specific_consumption(min_load_fraction);
}

double ElectrolyzerSpec::power_for_rate_mw(double target_kg_per_h) const
{
    if (target_kg_per_h < 0.0)
        throw std::out_of_range("negative hydrogen rate");
    if (target_kg_per_h == 0.0)
        return 0.0;
    const double max_rate = max_rate_kg_per_h();
    if (target_kg_per_h > max_rate * (1.0 + 1e-9)) {
        std::ostringstream msg;
        msg << "rate " << target_kg_per_h << " kg/h exceeds maximum " << max_rate;
        throw std::out_of_range(msg.str());
    }
    // Output jumps from 0 to the min-load rate; any smaller positive target
    // is first reached at min load.
    if (target_kg_per_h <= min_load_rate_kg_per_h())
        return min_load_fraction * capacity_mw;

    double lo = min_load_fraction * capacity_mw;
    double hi = capacity_mw;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (h2_output_kg(mid, 1.0) >= target_kg_per_h)
            hi = mid;
        else
            lo = mid;
    }
    return hi;
}

void RenewableSpec::validate() const
{
    if (pv_capacity_mw < 0.0 || wind_capacity_mw < 0.0)
        throw std::invalid_argument("renewable capacities must be non-negative");
}

double re_available_mw(const market::MarketDataset& d, const RenewableSpec& spec, long hour)
{
    const size_t h = static_cast<size_t>(hour);
    return d.pv_cf.at(h) * spec.pv_capacity_mw + d.wind_cf.at(h) * spec.wind_capacity_mw;
}

void StorageSpec::validate() const
{
    if (capacity_kg <= 0.0)
        throw std::invalid_argument("storage capacity must be positive");
}

void FleetSpec::validate() const
{
    if (n_trucks < 1)
        throw std::invalid_argument("fleet needs at least one truck");
    if (truck_capacity_kg <= 0.0)
        throw std::invalid_argument("truck capacity must be positive");
    if (round_trip_hours < 1)
        throw std::invalid_argument("round trip must take at least one hour");
}

const char* strategy_name(Strategy s)
{
    switch (s) {
    case Strategy::S1: return "S1";
    case Strategy::S2: return "S2";
    case Strategy::S3: return "S3";
    }
    return "?";
}

Strategy parse_strategy(const std::string& name)
{
    if (name == "S1" || name == "s1")
        return Strategy::S1;
    if (name == "S2" || name == "s2")
        return Strategy::S2;
    if (name == "S3" || name == "s3")
        return Strategy::S3;
    throw std::invalid_argument("unknown strategy '" + name + "'");
}

void ExperimentConfig::validate() const
{
    electrolyzer.validate();
    renewables.validate();
    storage.validate();
    fleet.validate();
    if (daily_demand_kg < 0.0)
        throw std::invalid_argument("daily demand must be non-negative");
    if (base_variable_cost_dkk_per_kg < 0.0)
        throw std::invalid_argument("base variable cost must be non-negative");
    const double day_max = 24.0 * electrolyzer.max_rate_kg_per_h();
    if (daily_demand_kg > day_max) {
        std::ostringstream msg;
        msg << "experiment " << id << ": daily demand " << daily_demand_kg
            << " kg exceeds 24 h full-load output " << day_max << " kg";
        throw std::invalid_argument(msg.str());
    }
}

} // namespace ptx::site
