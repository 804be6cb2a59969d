#include "ptx/dispatch.hpp"

#include "ptx/calendar.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ptx::dispatch {

SchedulingPolicy parse_policy(const std::string& name)
{
    if (name == "cheapest_hours")
        return SchedulingPolicy::CheapestHours;
    if (name == "flat")
        return SchedulingPolicy::Flat;
    throw std::invalid_argument("unknown scheduling policy '" + name + "'");
}

const char* policy_name(SchedulingPolicy p)
{
    return p == SchedulingPolicy::CheapestHours ? "cheapest_hours" : "flat";
}

namespace {

std::array<int, 24> hours_by_ascending_buy_price(const market::MarketDataset& d, long base_hour)
{
    std::array<int, 24> order{};
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) {
        const double pa = d.buy_price(base_hour + a);
        const double pb = d.buy_price(base_hour + b);
        if (pa != pb)
            return pa < pb;
        return a < b; // deterministic under price ties
    });
    return order;
}

void plan_s1(DayPlan& plan, const site::ExperimentConfig& config, const market::MarketDataset& d,
             long base_hour, SchedulingPolicy policy)
{
    const site::ElectrolyzerSpec& el = config.electrolyzer;
    double remaining = config.daily_demand_kg;
    if (remaining <= 0.0)
        return;
    if (policy == SchedulingPolicy::Flat) {
        const double p = el.power_for_rate_mw(remaining / 24.0);
        for (auto& hp : plan.hours) {
            hp.grid_mw = p;
            plan.planned_h2_kg += el.h2_output_kg(p, 1.0);
        }
        return;
    }
    const double full_rate = el.max_rate_kg_per_h();
    for (int h : hours_by_ascending_buy_price(d, base_hour)) {
        if (remaining <= 0.0)
            break;
        const double p = remaining >= full_rate ? el.capacity_mw : el.power_for_rate_mw(remaining);
        const double out = el.h2_output_kg(p, 1.0);
        plan.hours[static_cast<size_t>(h)].grid_mw = p;
        plan.planned_h2_kg += out;
        remaining -= out;
    }
    if (remaining > 0.0)
        plan.shortfall_kg = remaining;
}

void plan_s2(DayPlan& plan, const site::ExperimentConfig& config, const market::MarketDataset& d,
             long base_hour)
{
    const site::ElectrolyzerSpec& el = config.electrolyzer;
    for (int h = 0; h < 24; ++h) {
        const double re = site::re_available_mw(d, config.renewables, base_hour + h);
        double p = std::min(re, el.capacity_mw);
        if (p < el.min_load_fraction * el.capacity_mw)
            p = 0.0;
        plan.hours[static_cast<size_t>(h)].re_mw = p;
        plan.planned_h2_kg += el.h2_output_kg(p, 1.0);
    }
}

void plan_s3(DayPlan& plan, const site::ExperimentConfig& config, const market::MarketDataset& d,
             long base_hour, SchedulingPolicy policy)
{
    const site::ElectrolyzerSpec& el = config.electrolyzer;
    const double min_power = el.min_load_fraction * el.capacity_mw;
    double remaining = config.daily_demand_kg;

    if (policy == SchedulingPolicy::Flat) {
        // Hour-aligned variant: same total power profile as flat S1, fed
        // RE-first. Guarantees per-hour grid(S3) <= grid(S1).
        const double p = remaining > 0.0 ? el.power_for_rate_mw(remaining / 24.0) : 0.0;
        for (int h = 0; h < 24; ++h) {
            const double re = site::re_available_mw(d, config.renewables, base_hour + h);
            HourPlan& hp = plan.hours[static_cast<size_t>(h)];
            hp.re_mw = std::min(re, p);
            hp.grid_mw = p - hp.re_mw;
            plan.planned_h2_kg += el.h2_output_kg(p, 1.0);
        }
        return;
    }

    // RE pass, chronological, stopping at the daily demand. The crossing
    // hour gets just enough power; later RE is sold.
    for (int h = 0; h < 24 && remaining > 0.0; ++h) {
        const double re = site::re_available_mw(d, config.renewables, base_hour + h);
        double p = std::min(re, el.capacity_mw);
        if (p < min_power)
            continue;
        const double out = el.h2_output_kg(p, 1.0);
        if (out > remaining)
            p = el.power_for_rate_mw(remaining);
        const double actual = el.h2_output_kg(p, 1.0);
        plan.hours[static_cast<size_t>(h)].re_mw = p;
        plan.planned_h2_kg += actual;
        remaining -= actual;
    }

    if (remaining <= 0.0)
        return;

    // Grid top-up, cheapest hours first, each up to the hour's headroom.
    for (int h : hours_by_ascending_buy_price(d, base_hour)) {
        if (remaining <= 0.0)
            break;
        HourPlan& hp = plan.hours[static_cast<size_t>(h)];
        const double headroom = el.capacity_mw - hp.re_mw;
        if (headroom <= 0.0)
            continue;
        const double current = el.h2_output_kg(hp.re_mw, 1.0);
        const double full = el.max_rate_kg_per_h();
        double total_power;
        if (current + remaining >= full) {
            total_power = el.capacity_mw;
        } else {
            total_power = el.power_for_rate_mw(current + remaining);
            if (total_power < hp.re_mw)
                total_power = hp.re_mw; // RE already exceeds the need
        }
        const double gained = el.h2_output_kg(total_power, 1.0) - current;
        hp.grid_mw = total_power - hp.re_mw;
        plan.planned_h2_kg += gained;
        remaining -= gained;
    }
    if (remaining > 0.0)
        plan.shortfall_kg = remaining;
}

} // namespace

DayPlan plan_day(site::Strategy strategy, const site::ExperimentConfig& config,
                 const market::MarketDataset& d, int day, SchedulingPolicy policy)
{
    const long base_hour = static_cast<long>(day) * 24;
    if (base_hour < 0 || base_hour + 24 > static_cast<long>(d.hours()))
        throw std::out_of_range("day " + std::to_string(day) + " outside the dataset year");
    DayPlan plan;
    switch (strategy) {
    case site::Strategy::S1:
        plan_s1(plan, config, d, base_hour, policy);
        break;
    case site::Strategy::S2:
        plan_s2(plan, config, d, base_hour);
        break;
    case site::Strategy::S3:
        plan_s3(plan, config, d, base_hour, policy);
        break;
    }
    return plan;
}

double LogisticsState::absorbable_kg(const site::StorageSpec& storage,
                                     const site::FleetSpec& fleet) const
{
    double space = storage.capacity_kg - storage_kg;
    if (has_docked)
        space += fleet.truck_capacity_kg - docked_fill_kg;
    space += static_cast<double>(idle_trucks) * fleet.truck_capacity_kg;
    return space;
}

namespace {

void process_returns(LogisticsState& state, long hour)
{
    auto& fleet = state.in_transit_return_hour;
    for (size_t i = 0; i < fleet.size();) {
        if (fleet[i] <= hour) {
            fleet[i] = fleet.back();
            fleet.pop_back();
            ++state.idle_trucks;
        } else {
            ++i;
        }
    }
}

} // namespace

double step_logistics(LogisticsState& state, const site::StorageSpec& storage,
                      const site::FleetSpec& fleet, double produced_kg, long hour)
{
    process_returns(state, hour);

    // Production and the storage inventory drain through the dock together.
    double pool = state.storage_kg + produced_kg;
    double delivered = 0.0;
    while (true) {
        if (!state.has_docked) {
            if (state.idle_trucks > 0 && pool > 1e-12) {
                --state.idle_trucks;
                state.has_docked = true;
                state.docked_fill_kg = 0.0;
            } else {
                break;
            }
        }
        const double space = fleet.truck_capacity_kg - state.docked_fill_kg;
        const double transfer = std::min(space, pool);
        state.docked_fill_kg += transfer;
        pool -= transfer;
        if (state.docked_fill_kg >= fleet.truck_capacity_kg - 1e-9) {
            delivered += state.docked_fill_kg;
            state.in_transit_return_hour.push_back(hour + fleet.round_trip_hours);
            state.has_docked = false;
            state.docked_fill_kg = 0.0;
        } else {
            break; // pool empty, truck keeps loading next hour
        }
    }
    state.storage_kg = pool;
    if (state.storage_kg > storage.capacity_kg + 1e-6)
        throw std::logic_error("storage overflow: throttling failed upstream");
    state.busy_hours += static_cast<double>(state.in_transit_return_hour.size());
    return delivered;
}

namespace {

/// Largest power not above `planned_mw` whose hourly output fits in
/// `absorb_kg`. Zero when even the min-load output does not fit.
double throttle_power(const site::ElectrolyzerSpec& el, double planned_mw, double absorb_kg)
{
    if (absorb_kg <= 0.0)
        return 0.0;
    double lo = el.min_load_fraction * el.capacity_mw;
    if (el.h2_output_kg(lo, 1.0) > absorb_kg)
        return 0.0;
    double hi = planned_mw;
    while (hi - lo > 1e-6) {
        const double mid = 0.5 * (lo + hi);
        if (el.h2_output_kg(mid, 1.0) <= absorb_kg)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

} // namespace

SimulationTrace simulate(const site::ExperimentConfig& config, const market::MarketDataset& d,
                         SchedulingPolicy policy)
{
    config.validate();
    const long hours = static_cast<long>(d.hours());
    const int days = static_cast<int>(hours / 24);
    const site::ElectrolyzerSpec& el = config.electrolyzer;

    SimulationTrace trace;
    trace.config_id = config.id;
    trace.year = d.year;
    trace.records.reserve(static_cast<size_t>(hours));

    LogisticsState state;
    state.idle_trucks = config.fleet.n_trucks;

    double storage_level_sum = 0.0;

    for (int day = 0; day < days; ++day) {
        const DayPlan plan = plan_day(config.strategy, config, d, day, policy);
        trace.unserved_demand_kg += plan.shortfall_kg;
        for (int hod = 0; hod < 24; ++hod) {
            const long h = static_cast<long>(day) * 24 + hod;
            const HourPlan& hp = plan.hours[static_cast<size_t>(hod)];
            const double re_avail = site::re_available_mw(d, config.renewables, h);

            process_returns(state, h);
            const double absorb = state.absorbable_kg(config.storage, config.fleet);

            double power = hp.total();
            double produced = el.h2_output_kg(power, 1.0);
            if (produced > absorb) {
                ++trace.throttled_hours;
                power = throttle_power(el, power, absorb);
                produced = el.h2_output_kg(power, 1.0);
            }
            // Grid is cut first when throttling; freed RE goes to sale.
            const double re_used = std::min(hp.re_mw, power);
            const double grid_used = power - re_used;

            HourRecord rec;
            rec.hour = h;
            rec.re_generated_mwh = re_avail;
            rec.re_to_electrolyzer_mwh = re_used;
            rec.grid_purchased_mwh = grid_used;
            rec.re_sold_mwh = re_avail - re_used;
            rec.h2_produced_kg = produced;
            rec.purchase_cost_dkk = grid_used * d.buy_price(h);
            rec.sale_revenue_dkk = rec.re_sold_mwh * d.sell_price(h);
            rec.co2_emitted_kg = grid_used * d.co2.at(static_cast<size_t>(h));
            rec.h2_delivered_kg = step_logistics(state, config.storage, config.fleet, produced, h);
            rec.storage_level_end_kg = state.storage_kg;
            rec.trucks_in_transit = static_cast<int>(state.in_transit_return_hour.size());
            storage_level_sum += state.storage_kg;
            trace.records.push_back(rec);
        }
    }

    trace.final_storage_kg = state.storage_kg;
    trace.final_in_truck_kg = state.has_docked ? state.docked_fill_kg : 0.0;
    trace.truck_busy_hours = state.busy_hours;
    trace.mean_storage_level_kg = hours > 0 ? storage_level_sum / static_cast<double>(hours) : 0.0;
    return trace;
}

TraceTotals SimulationTrace::totals() const
{
    TraceTotals t;
    for (const HourRecord& r : records) {
        t.re_generated_mwh += r.re_generated_mwh;
        t.re_to_electrolyzer_mwh += r.re_to_electrolyzer_mwh;
        t.grid_purchased_mwh += r.grid_purchased_mwh;
        t.re_sold_mwh += r.re_sold_mwh;
        t.h2_produced_kg += r.h2_produced_kg;
        t.h2_delivered_kg += r.h2_delivered_kg;
        t.purchase_cost_dkk += r.purchase_cost_dkk;
        t.sale_revenue_dkk += r.sale_revenue_dkk;
        t.co2_emitted_kg += r.co2_emitted_kg;
    }
    return t;
}

} // namespace ptx::dispatch
