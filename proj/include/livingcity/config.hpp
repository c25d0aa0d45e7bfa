#pragma once

#include <array>
#include <cstdint>
#include <fstream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "livingcity/common.hpp"

// Tunable world parameters with committed defaults. The progression math
// (time classes, cost betas) is fixed in balance.hpp; everything here is
// the surrounding economy: tick income, upkeep, staffing limits, level
// thresholds and slot counts per level.

namespace livingcity {

inline constexpr int kRoleCount = 6;
inline constexpr int kAllocationCount = 8;
inline constexpr int kQolCount = 6;

inline constexpr std::array<const char*, kRoleCount> kRoleNames{
    "deputy_mayor", "public_relations", "human_resources", "technical", "engineer", "administrator",
};

inline constexpr std::array<const char*, kAllocationCount> kAllocationNames{
    "service_funding", "maintenance_funding", "tax_rate",         "healthcare_funding",
    "safety_funding",  "environment_funding", "education_funding", "culture_funding",
};

inline constexpr std::array<const char*, kQolCount> kQolNames{
    "population", "employment", "pollution", "welfare", "healthcare", "safety",
};

inline constexpr std::array<const char*, kCityLevelCap> kLevelNames{
    "village", "town", "small_city", "city", "large_city", "major_city", "megacity", "metropolis",
};

struct LevelRule {
  int buildings_required = 0;   // constructed buildings to be promoted INTO this level
  double min_welfare = 0.0;     // welfare indicator floor
  int min_cooperation = 0;      // procurements won + licenses granted
  int license_slots = 1;        // total slots unlocked at this level
  int buildable_per_category = 3;
};

struct WorldConfig {
  // Quality-of-life relaxation: each tick every indicator moves this
  // fraction of the remaining gap toward its projection target.
  double qol_lambda = 0.05;

  // Per-tick economy. Income tax is llround(population * tax_rate * coef)
  // cents; maintenance is llround(total stages * coef) cents.
  double tax_income_coef_cents = 0.007;
  double maintenance_per_stage_cents = 0.02;

  // Provided services: the consumer pays the provider
  // max(1, llround(base_cost_cents * fee_coef)) cents per tick.
  double service_fee_coef = 2e-6;

  // Capital investments: simple interest, minted at maturity.
  double invest_daily_rate = 0.002;

  Cents starting_treasury_cents = 2'500'000;  // 25,000.00 on registration

  // Staff marketplace.
  int marketplace_pool_size = 60;
  std::array<int, kRoleCount> role_caps{1, 2, 2, 4, 4, 3};
  Cents salary_min_cents_per_day = 8'000;    // 80.00/day
  Cents salary_max_cents_per_day = 90'000;   // 900.00/day

  // Per-level rules, index 0 = village. buildings_required/min_welfare/
  // min_cooperation gate the promotion into that level and are unused for
  // level 1. Cooperation gates kick in at higher levels so cities that
  // never trade stall there.
  std::array<LevelRule, kCityLevelCap> levels{{
      {0, 0.0, 0, 1, 3},
      {3, 6.0, 0, 2, 6},
      {8, 10.0, 0, 3, 9},
      {15, 15.0, 1, 4, 12},
      {25, 20.0, 2, 5, 15},
      {40, 26.0, 4, 6, 18},
      {60, 32.0, 7, 7, 21},
      {90, 40.0, 12, 8, 40},
  }};

  // Projection target model: target = floor + stage_coef * total_stages
  //                                 + alloc_coef * allocation[driver]
  //                                 + service_coef * services_consumed,
  // clamped to [min, max]; pollution's allocation term is subtractive.
  std::array<double, kQolCount> qol_floor{50.0, 5.0, 2.0, 5.0, 4.0, 4.0};
  std::array<double, kQolCount> qol_stage_coef{35.0, 1.2, 0.8, 0.35, 0.3, 0.25};
  std::array<double, kQolCount> qol_alloc_coef{800.0, 25.0, 35.0, 30.0, 35.0, 35.0};
  std::array<int, kQolCount> qol_alloc_driver{2, 0, 5, 0, 3, 4};  // index into allocations
  std::array<double, kQolCount> qol_service_coef{120.0, 1.5, 0.0, 6.0, 2.0, 2.0};
  std::array<double, kQolCount> qol_min{0.0, 0.0, 0.0, 0.0, 0.0, 0.0};
  std::array<double, kQolCount> qol_max{1e7, 100.0, 100.0, 100.0, 100.0, 100.0};

  // Fame score weights (ordinal ranking only).
  int fame_per_stage = 10;
  int fame_per_level = 100;
  int fame_per_procurement_won = 25;
  int fame_per_license_granted = 15;
  int fame_per_service = 20;

  // Service layer.
  std::uint64_t snapshot_every_events = 0;  // 0 = only on demand
};

namespace config_io {

template <typename T, std::size_t N>
inline void get_array(const nlohmann::json& j, const char* key, std::array<T, N>& out) {
  if (!j.contains(key)) return;
  const auto& a = j.at(key);
  if (!a.is_array() || a.size() != N) {
    throw std::runtime_error(std::string("config key '") + key + "' must be an array of " +
                             std::to_string(N));
  }
  for (std::size_t i = 0; i < N; ++i) out[i] = a[i].get<T>();
}

template <typename T>
inline void get(const nlohmann::json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

}  // namespace config_io

inline WorldConfig config_from_json(const nlohmann::json& j) {
  using namespace config_io;
  WorldConfig c;
  get(j, "qol_lambda", c.qol_lambda);
  get(j, "tax_income_coef_cents", c.tax_income_coef_cents);
  get(j, "maintenance_per_stage_cents", c.maintenance_per_stage_cents);
  get(j, "service_fee_coef", c.service_fee_coef);
  get(j, "invest_daily_rate", c.invest_daily_rate);
  get(j, "starting_treasury_cents", c.starting_treasury_cents);
  get(j, "marketplace_pool_size", c.marketplace_pool_size);
  get_array(j, "role_caps", c.role_caps);
  get(j, "salary_min_cents_per_day", c.salary_min_cents_per_day);
  get(j, "salary_max_cents_per_day", c.salary_max_cents_per_day);
  if (j.contains("levels")) {
    const auto& lv = j.at("levels");
    if (!lv.is_array() || lv.size() != kCityLevelCap) {
      throw std::runtime_error("config key 'levels' must be an array of 8");
    }
    for (int i = 0; i < kCityLevelCap; ++i) {
      const auto& r = lv[static_cast<std::size_t>(i)];
      auto& dst = c.levels[static_cast<std::size_t>(i)];
      get(r, "buildings_required", dst.buildings_required);
      get(r, "min_welfare", dst.min_welfare);
      get(r, "min_cooperation", dst.min_cooperation);
      get(r, "license_slots", dst.license_slots);
      get(r, "buildable_per_category", dst.buildable_per_category);
    }
  }
  get_array(j, "qol_floor", c.qol_floor);
  get_array(j, "qol_stage_coef", c.qol_stage_coef);
  get_array(j, "qol_alloc_coef", c.qol_alloc_coef);
  get_array(j, "qol_alloc_driver", c.qol_alloc_driver);
  get_array(j, "qol_service_coef", c.qol_service_coef);
  get_array(j, "qol_min", c.qol_min);
  get_array(j, "qol_max", c.qol_max);
  get(j, "fame_per_stage", c.fame_per_stage);
  get(j, "fame_per_level", c.fame_per_level);
  get(j, "fame_per_procurement_won", c.fame_per_procurement_won);
  get(j, "fame_per_license_granted", c.fame_per_license_granted);
  get(j, "fame_per_service", c.fame_per_service);
  get(j, "snapshot_every_events", c.snapshot_every_events);
  return c;
}

inline nlohmann::json config_to_json(const WorldConfig& c) {
  nlohmann::json j;
  j["qol_lambda"] = c.qol_lambda;
  j["tax_income_coef_cents"] = c.tax_income_coef_cents;
  j["maintenance_per_stage_cents"] = c.maintenance_per_stage_cents;
  j["service_fee_coef"] = c.service_fee_coef;
  j["invest_daily_rate"] = c.invest_daily_rate;
  j["starting_treasury_cents"] = c.starting_treasury_cents;
  j["marketplace_pool_size"] = c.marketplace_pool_size;
  j["role_caps"] = c.role_caps;
  j["salary_min_cents_per_day"] = c.salary_min_cents_per_day;
  j["salary_max_cents_per_day"] = c.salary_max_cents_per_day;
  nlohmann::json levels = nlohmann::json::array();
  for (const auto& r : c.levels) {
    levels.push_back({{"buildings_required", r.buildings_required},
                      {"min_welfare", r.min_welfare},
                      {"min_cooperation", r.min_cooperation},
                      {"license_slots", r.license_slots},
                      {"buildable_per_category", r.buildable_per_category}});
  }
  j["levels"] = levels;
  j["qol_floor"] = c.qol_floor;
  j["qol_stage_coef"] = c.qol_stage_coef;
  j["qol_alloc_coef"] = c.qol_alloc_coef;
  j["qol_alloc_driver"] = c.qol_alloc_driver;
  j["qol_service_coef"] = c.qol_service_coef;
  j["qol_min"] = c.qol_min;
  j["qol_max"] = c.qol_max;
  j["fame_per_stage"] = c.fame_per_stage;
  j["fame_per_level"] = c.fame_per_level;
  j["fame_per_procurement_won"] = c.fame_per_procurement_won;
  j["fame_per_license_granted"] = c.fame_per_license_granted;
  j["fame_per_service"] = c.fame_per_service;
  j["snapshot_every_events"] = c.snapshot_every_events;
  return j;
}

inline WorldConfig load_config(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::runtime_error("cannot open config file " + path);
  nlohmann::json j;
  f >> j;
  return config_from_json(j);
}

inline std::uint64_t config_hash(const WorldConfig& c) { return fnv1a(config_to_json(c).dump()); }

}  // namespace livingcity
