#pragma once

#include "ptx/market_data.hpp"
#include "ptx/site_model.hpp"

#include <array>
#include <string>
#include <vector>

namespace ptx::dispatch {

/// Planned electrolyzer feed for one hour, split by source.
struct HourPlan {
    double re_mw = 0.0;
    double grid_mw = 0.0;
    double total() const { return re_mw + grid_mw; }
};

struct DayPlan {
    std::array<HourPlan, 24> hours{};
    double planned_h2_kg = 0.0;
    double shortfall_kg = 0.0; // demand the day plan could not cover
};

enum class SchedulingPolicy { CheapestHours, Flat };

SchedulingPolicy parse_policy(const std::string& name);
const char* policy_name(SchedulingPolicy p);

/// Day-ahead plan (perfect foresight over the day's prices and resources).
/// S1 buys full-load grid power in the cheapest hours until the day's demand
/// is planned, never routing RE to the electrolyzer. S2 runs on whatever RE
/// the park offers, uncapped. S3 runs RE chronologically up to the daily
/// demand and tops the remainder up with grid power, cheapest hours first.
DayPlan plan_day(site::Strategy strategy, const site::ExperimentConfig& config,
                 const market::MarketDataset& d, int day,
                 SchedulingPolicy policy = SchedulingPolicy::CheapestHours);

struct HourRecord {
    long hour = 0;
    double re_generated_mwh = 0.0;
    double re_to_electrolyzer_mwh = 0.0;
    double grid_purchased_mwh = 0.0;
    double re_sold_mwh = 0.0;
    double h2_produced_kg = 0.0;
    double storage_level_end_kg = 0.0;
    double h2_delivered_kg = 0.0;
    double purchase_cost_dkk = 0.0;
    double sale_revenue_dkk = 0.0;
    double co2_emitted_kg = 0.0;
    int trucks_in_transit = 0; // end-of-hour fleet state
};

struct TraceTotals {
    double re_generated_mwh = 0.0;
    double re_to_electrolyzer_mwh = 0.0;
    double grid_purchased_mwh = 0.0;
    double re_sold_mwh = 0.0;
    double h2_produced_kg = 0.0;
    double h2_delivered_kg = 0.0;
    double purchase_cost_dkk = 0.0;
    double sale_revenue_dkk = 0.0;
    double co2_emitted_kg = 0.0;
};

struct SimulationTrace {
    std::string config_id;
    int year = 0;
    std::vector<HourRecord> records;
    double unserved_demand_kg = 0.0;  // planning shortfall (S1/S3 diagnostic)
    long throttled_hours = 0;         // hours cut back for lack of buffer
    double final_storage_kg = 0.0;
    double final_in_truck_kg = 0.0;   // docked, partially filled truck
    double truck_busy_hours = 0.0;    // in-transit truck-hours
    double mean_storage_level_kg = 0.0;

    TraceTotals totals() const;
};

/// Storage plus a single loading dock served by the truck fleet.
struct LogisticsState {
    double storage_kg = 0.0;
    bool has_docked = false;
    double docked_fill_kg = 0.0;
    int idle_trucks = 0;
    std::vector<long> in_transit_return_hour;
    double busy_hours = 0.0;

    /// Mass the plant can absorb this hour: storage headroom, the docked
    /// truck's remaining fill, and every idle truck (they dock in sequence
    /// as soon as the dock frees up).
    double absorbable_kg(const site::StorageSpec& storage, const site::FleetSpec& fleet) const;
};

/// Runs one hour of storage/truck logistics. `produced_kg` must not exceed
/// absorbable_kg (the simulator throttles upstream). Returns kg delivered
/// (counted when a full truck departs).
double step_logistics(LogisticsState& state, const site::StorageSpec& storage,
                      const site::FleetSpec& fleet, double produced_kg, long hour);

SimulationTrace simulate(const site::ExperimentConfig& config, const market::MarketDataset& d,
                         SchedulingPolicy policy = SchedulingPolicy::CheapestHours);

} // namespace ptx::dispatch
