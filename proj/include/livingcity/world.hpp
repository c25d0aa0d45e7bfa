#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "livingcity/catalog.hpp"
#include "livingcity/common.hpp"
#include "livingcity/config.hpp"

// Per-city state and the pure functions over it: projection targets,
// staff scoring and level promotion checks. All mutation goes through the
// engine's event application; nothing here touches shared state.

namespace livingcity::world {

enum class StaffRole : int {
  DeputyMayor = 0,
  PublicRelations,
  HumanResources,
  Technical,
  Engineer,
  Administrator,
};

inline constexpr std::array<const char*, kRoleCount> kTraitNames{
    "willingness_to_work", "teamwork", "concentration", "intuition", "motivation", "expertise",
};

struct StaffMember {
  int npc_id = 0;
  StaffRole role = StaffRole::Technical;
  std::array<double, kRoleCount> traits{};  // five common traits + role expertise, each in [0,1]
  Cents salary_cents_per_day = 0;
  CityId employed_by = 0;  // 0 = common marketplace

  double salary_rate_per_tick() const {
    return static_cast<double>(salary_cents_per_day) / static_cast<double>(kTicksPerDay);
  }
};

struct ActiveBuild {
  std::string building_id;
  int target_stage = 1;
  Tick completion_tick = 0;
  bool external = false;
  std::int64_t license_id = 0;  // set for external builds
  CityId host_city = 0;         // plot owner (service consumer) for external builds
};

enum class SlotStatus : int { Free = 0, Reserved, Licensed };

struct LicenseSlot {
  int slot_id = 0;
  SlotStatus status = SlotStatus::Free;
  std::int64_t ref_id = 0;  // open call id while Reserved, license id while Licensed
};

struct Investment {
  std::int64_t inv_id = 0;
  Cents principal_cents = 0;
  Cents interest_cents = 0;  // fixed at deposit time
  Tick maturity_tick = 0;
};

// Weekly economic line items; `current` rolls into `past` at week
// boundaries.
struct EconWeek {
  Cents income_tax = 0;
  Cents income_services = 0;
  Cents income_interest = 0;
  Cents income_licenses = 0;
  Cents cost_maintenance = 0;
  Cents cost_salaries = 0;
  Cents cost_services = 0;
  Cents cost_construction = 0;
  Cents cost_investments = 0;
};

struct CityState {
  CityId city_id = 0;
  std::string name;
  std::uint64_t password_hash = 0;
  int level = 1;
  Cents treasury_cents = 0;
  std::map<std::string, int> buildings;      // building_id -> stage in [1,12]
  std::map<int, ActiveBuild> active_builds;  // category index -> at most one build
  std::vector<StaffMember> staff;
  std::array<double, kAllocationCount> allocations{};
  std::array<double, kQolCount> qol{};
  std::vector<LicenseSlot> slots;
  std::vector<Investment> investments;

  // Maintained counters (kept in lockstep with `buildings` by event
  // application; serialized so snapshots restore them verbatim).
  int constructed_count = 0;
  std::array<int, catalog::kCategoryCount> category_counts{};
  int stage_sum_total = 0;
  int procurements_won = 0;
  int licenses_granted = 0;
  int calls_issued = 0;
  int services_provided = 0;
  int services_consumed = 0;
  EconWeek week_current;
  EconWeek week_past;

  int cooperation_score() const { return procurements_won + licenses_granted; }

  int free_slot_count() const {
    int n = 0;
    for (const auto& s : slots) {
      if (s.status == SlotStatus::Free) ++n;
    }
    return n;
  }

  int staff_count(StaffRole role) const {
    int n = 0;
    for (const auto& m : staff) {
      if (m.role == role) ++n;
    }
    return n;
  }
};

inline std::int64_t fame(const CityState& c, const WorldConfig& cfg) {
  return static_cast<std::int64_t>(cfg.fame_per_stage) * c.stage_sum_total +
         static_cast<std::int64_t>(cfg.fame_per_level) * (c.level - 1) +
         static_cast<std::int64_t>(cfg.fame_per_procurement_won) * c.procurements_won +
         static_cast<std::int64_t>(cfg.fame_per_license_granted) * c.licenses_granted +
         static_cast<std::int64_t>(cfg.fame_per_service) * c.services_provided;
}

// Projection targets for every quality-of-life indicator. Pure in the city
// state: changing an allocation moves the targets immediately, while the
// indicators themselves only follow through tick relaxation.
inline std::array<double, kQolCount> qol_targets(const CityState& c, const WorldConfig& cfg) {
  std::array<double, kQolCount> t{};
  for (int i = 0; i < kQolCount; ++i) {
    const double alloc = c.allocations[static_cast<std::size_t>(cfg.qol_alloc_driver[i])];
    double v = cfg.qol_floor[i] + cfg.qol_stage_coef[i] * c.stage_sum_total +
               cfg.qol_service_coef[i] * c.services_consumed;
    // Pollution is driven down by its allocation; everything else up.
    if (i == 2) {
      v -= cfg.qol_alloc_coef[i] * alloc;
    } else {
      v += cfg.qol_alloc_coef[i] * alloc;
    }
    t[i] = std::clamp(v, cfg.qol_min[i], cfg.qol_max[i]);
  }
  return t;
}

struct EconRates {
  double tax_cents_per_tick = 0.0;       // before rounding
  double maintenance_cents_per_tick = 0.0;
  double salaries_cents_per_tick = 0.0;
};

inline EconRates econ_rates(const CityState& c, const WorldConfig& cfg) {
  EconRates r;
  r.tax_cents_per_tick = c.qol[0] * c.allocations[2] * cfg.tax_income_coef_cents;
  r.maintenance_cents_per_tick = cfg.maintenance_per_stage_cents * c.stage_sum_total;
  double s = 0.0;
  for (const auto& m : c.staff) s += m.salary_rate_per_tick();
  r.salaries_cents_per_tick = s;
  return r;
}

struct ProjectionReport {
  std::array<double, kQolCount> targets{};
  EconRates rates;
  EconWeek current_week;
  EconWeek past_week;
};

inline ProjectionReport projections(const CityState& c, const WorldConfig& cfg) {
  return {qol_targets(c, cfg), econ_rates(c, cfg), c.week_current, c.week_past};
}

// The named city parameters feeding the staff need-weight function. The
// staffing optimum deliberately shifts with city condition: there are more
// than fifty inputs and the mix changes every time the city does.
inline std::vector<std::pair<std::string, double>> city_parameters(const CityState& c,
                                                                   const WorldConfig& cfg) {
  std::vector<std::pair<std::string, double>> p;
  p.reserve(60);
  const auto targets = qol_targets(c, cfg);

  p.emplace_back("level", c.level);
  p.emplace_back("constructed_buildings", c.constructed_count);
  p.emplace_back("stage_sum_total", c.stage_sum_total);
  for (int i = 0; i < catalog::kCategoryCount; ++i) {
    p.emplace_back(std::string("count_") + catalog::kCategories[static_cast<std::size_t>(i)].name,
                   c.category_counts[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < kQolCount; ++i) {
    p.emplace_back(std::string("qol_") + kQolNames[static_cast<std::size_t>(i)], c.qol[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < kQolCount; ++i) {
    p.emplace_back(std::string("gap_") + kQolNames[static_cast<std::size_t>(i)],
                   targets[static_cast<std::size_t>(i)] - c.qol[static_cast<std::size_t>(i)]);
  }
  for (int i = 0; i < kAllocationCount; ++i) {
    p.emplace_back(std::string("alloc_") + kAllocationNames[static_cast<std::size_t>(i)],
                   c.allocations[static_cast<std::size_t>(i)]);
  }
  p.emplace_back("treasury_kilo", to_currency(c.treasury_cents) / 1000.0);
  p.emplace_back("staff_total", static_cast<double>(c.staff.size()));
  for (int i = 0; i < kRoleCount; ++i) {
    p.emplace_back(std::string("staff_") + kRoleNames[static_cast<std::size_t>(i)],
                   c.staff_count(static_cast<StaffRole>(i)));
  }
  p.emplace_back("active_builds", static_cast<double>(c.active_builds.size()));
  p.emplace_back("free_slots", c.free_slot_count());
  p.emplace_back("licenses_granted", c.licenses_granted);
  p.emplace_back("calls_issued", c.calls_issued);
  p.emplace_back("procurements_won", c.procurements_won);
  p.emplace_back("services_provided", c.services_provided);
  p.emplace_back("services_consumed", c.services_consumed);
  p.emplace_back("investments_active", static_cast<double>(c.investments.size()));
  p.emplace_back("cooperation", c.cooperation_score());
  return p;
}

namespace detail {

// Deterministic mixing coefficient in [0,1) for (role, trait, parameter).
inline double weight_entry(int role, int trait, std::size_t param) {
  Fnv1a f;
  f.update_u64(0x6c6976696e67ULL);  // table salt
  f.update_u64(static_cast<std::uint64_t>(role));
  f.update_u64(static_cast<std::uint64_t>(trait));
  f.update_u64(static_cast<std::uint64_t>(param));
  return static_cast<double>(f.digest() >> 11) * 0x1.0p-53;
}

inline double squash(double x) {
  const double a = x < 0 ? -x : x;
  return a / (1.0 + a);
}

}  // namespace detail

// Need weights per trait for a role in the current city condition: a
// non-negative mix of all city parameters, so member scores are monotone
// in every trait but the best trait mix moves as the city evolves.
inline std::array<double, kRoleCount> staff_need_weights(const CityState& c, StaffRole role,
                                                         const WorldConfig& cfg) {
  const auto params = city_parameters(c, cfg);
  std::array<double, kRoleCount> w{};
  for (int j = 0; j < kRoleCount; ++j) {
    double acc = 0.0;
    for (std::size_t p = 0; p < params.size(); ++p) {
      acc += detail::weight_entry(static_cast<int>(role), j, p) * detail::squash(params[p].second);
    }
    w[static_cast<std::size_t>(j)] = acc / static_cast<double>(params.size());
  }
  return w;
}

struct StaffScore {
  int npc_id = 0;
  double score = 0.0;
};

struct StaffPerformance {
  std::vector<StaffScore> members;
  double aggregate = 0.0;
};

inline StaffPerformance staff_performance(const CityState& c, const WorldConfig& cfg) {
  StaffPerformance out;
  std::array<std::optional<std::array<double, kRoleCount>>, kRoleCount> cache;
  for (const auto& m : c.staff) {
    auto& w = cache[static_cast<std::size_t>(m.role)];
    if (!w) w = staff_need_weights(c, m.role, cfg);
    double s = 0.0;
    for (int j = 0; j < kRoleCount; ++j) {
      s += m.traits[static_cast<std::size_t>(j)] * (*w)[static_cast<std::size_t>(j)];
    }
    out.members.push_back({m.npc_id, s});
    out.aggregate += s;
  }
  return out;
}

// Promotion check into the next level; never demotes. Gates on constructed
// buildings, the welfare indicator and the cooperation score.
inline std::optional<int> level_up_candidate(const CityState& c, const WorldConfig& cfg) {
  if (c.level >= kCityLevelCap) return std::nullopt;
  const auto& rule = cfg.levels[static_cast<std::size_t>(c.level)];  // rule for level+1
  if (c.constructed_count < rule.buildings_required) return std::nullopt;
  if (c.qol[3] < rule.min_welfare) return std::nullopt;
  if (c.cooperation_score() < rule.min_cooperation) return std::nullopt;
  return c.level + 1;
}

inline StaffMember generate_npc(Rng& rng, int npc_id, const WorldConfig& cfg) {
  StaffMember m;
  m.npc_id = npc_id;
  m.role = static_cast<StaffRole>(rng.below(kRoleCount));
  double quality = 0.0;
  for (auto& t : m.traits) {
    t = rng.unit();
    quality += t;
  }
  quality /= kRoleCount;
  // Better staff cost more, with some spread.
  const double span = static_cast<double>(cfg.salary_max_cents_per_day - cfg.salary_min_cents_per_day);
  m.salary_cents_per_day =
      cfg.salary_min_cents_per_day +
      static_cast<Cents>(std::llround(span * (0.7 * quality + 0.3 * rng.unit())));
  m.employed_by = 0;
  return m;
}

// --- serialization -------------------------------------------------------

inline nlohmann::json to_json(const StaffMember& m) {
  return {{"npc_id", m.npc_id},
          {"role", static_cast<int>(m.role)},
          {"traits", m.traits},
          {"salary_cents_per_day", m.salary_cents_per_day},
          {"employed_by", m.employed_by}};
}

inline StaffMember staff_from_json(const nlohmann::json& j) {
  StaffMember m;
  m.npc_id = j.at("npc_id").get<int>();
  m.role = static_cast<StaffRole>(j.at("role").get<int>());
  m.traits = j.at("traits").get<std::array<double, kRoleCount>>();
  m.salary_cents_per_day = j.at("salary_cents_per_day").get<Cents>();
  m.employed_by = j.at("employed_by").get<CityId>();
  return m;
}

inline nlohmann::json to_json(const EconWeek& w) {
  return {{"income_tax", w.income_tax},
          {"income_services", w.income_services},
          {"income_interest", w.income_interest},
          {"income_licenses", w.income_licenses},
          {"cost_maintenance", w.cost_maintenance},
          {"cost_salaries", w.cost_salaries},
          {"cost_services", w.cost_services},
          {"cost_construction", w.cost_construction},
          {"cost_investments", w.cost_investments}};
}

inline EconWeek econ_week_from_json(const nlohmann::json& j) {
  EconWeek w;
  w.income_tax = j.at("income_tax").get<Cents>();
  w.income_services = j.at("income_services").get<Cents>();
  w.income_interest = j.at("income_interest").get<Cents>();
  w.income_licenses = j.at("income_licenses").get<Cents>();
  w.cost_maintenance = j.at("cost_maintenance").get<Cents>();
  w.cost_salaries = j.at("cost_salaries").get<Cents>();
  w.cost_services = j.at("cost_services").get<Cents>();
  w.cost_construction = j.at("cost_construction").get<Cents>();
  w.cost_investments = j.at("cost_investments").get<Cents>();
  return w;
}

inline nlohmann::json to_json(const CityState& c) {
  nlohmann::json builds = nlohmann::json::array();
  for (const auto& [cat_idx, b] : c.active_builds) {
    builds.push_back({{"category", cat_idx},
                      {"building_id", b.building_id},
                      {"target_stage", b.target_stage},
                      {"completion_tick", b.completion_tick},
                      {"external", b.external},
                      {"license_id", b.license_id},
                      {"host_city", b.host_city}});
  }
  nlohmann::json staff = nlohmann::json::array();
  for (const auto& m : c.staff) staff.push_back(to_json(m));
  nlohmann::json slots = nlohmann::json::array();
  for (const auto& s : c.slots) {
    slots.push_back({{"slot_id", s.slot_id}, {"status", static_cast<int>(s.status)}, {"ref_id", s.ref_id}});
  }
  nlohmann::json invs = nlohmann::json::array();
  for (const auto& v : c.investments) {
    invs.push_back({{"inv_id", v.inv_id},
                    {"principal_cents", v.principal_cents},
                    {"interest_cents", v.interest_cents},
                    {"maturity_tick", v.maturity_tick}});
  }
  return {{"city_id", c.city_id},
          {"name", c.name},
          {"password_hash", c.password_hash},
          {"level", c.level},
          {"treasury_cents", c.treasury_cents},
          {"buildings", c.buildings},
          {"active_builds", builds},
          {"staff", staff},
          {"allocations", c.allocations},
          {"qol", c.qol},
          {"slots", slots},
          {"investments", invs},
          {"constructed_count", c.constructed_count},
          {"category_counts", c.category_counts},
          {"stage_sum_total", c.stage_sum_total},
          {"procurements_won", c.procurements_won},
          {"licenses_granted", c.licenses_granted},
          {"calls_issued", c.calls_issued},
          {"services_provided", c.services_provided},
          {"services_consumed", c.services_consumed},
          {"week_current", to_json(c.week_current)},
          {"week_past", to_json(c.week_past)}};
}

inline CityState city_from_json(const nlohmann::json& j) {
  CityState c;
  c.city_id = j.at("city_id").get<CityId>();
  c.name = j.at("name").get<std::string>();
  c.password_hash = j.at("password_hash").get<std::uint64_t>();
  c.level = j.at("level").get<int>();
  c.treasury_cents = j.at("treasury_cents").get<Cents>();
  c.buildings = j.at("buildings").get<std::map<std::string, int>>();
  for (const auto& b : j.at("active_builds")) {
    ActiveBuild ab;
    ab.building_id = b.at("building_id").get<std::string>();
    ab.target_stage = b.at("target_stage").get<int>();
    ab.completion_tick = b.at("completion_tick").get<Tick>();
    ab.external = b.at("external").get<bool>();
    ab.license_id = b.at("license_id").get<std::int64_t>();
    ab.host_city = b.at("host_city").get<CityId>();
    c.active_builds[b.at("category").get<int>()] = std::move(ab);
  }
  for (const auto& m : j.at("staff")) c.staff.push_back(staff_from_json(m));
  c.allocations = j.at("allocations").get<std::array<double, kAllocationCount>>();
  c.qol = j.at("qol").get<std::array<double, kQolCount>>();
  for (const auto& s : j.at("slots")) {
    c.slots.push_back({s.at("slot_id").get<int>(), static_cast<SlotStatus>(s.at("status").get<int>()),
                       s.at("ref_id").get<std::int64_t>()});
  }
  for (const auto& v : j.at("investments")) {
    c.investments.push_back({v.at("inv_id").get<std::int64_t>(), v.at("principal_cents").get<Cents>(),
                             v.at("interest_cents").get<Cents>(), v.at("maturity_tick").get<Tick>()});
  }
  c.constructed_count = j.at("constructed_count").get<int>();
  c.category_counts = j.at("category_counts").get<std::array<int, catalog::kCategoryCount>>();
  c.stage_sum_total = j.at("stage_sum_total").get<int>();
  c.procurements_won = j.at("procurements_won").get<int>();
  c.licenses_granted = j.at("licenses_granted").get<int>();
  c.calls_issued = j.at("calls_issued").get<int>();
  c.services_provided = j.at("services_provided").get<int>();
  c.services_consumed = j.at("services_consumed").get<int>();
  c.week_current = econ_week_from_json(j.at("week_current"));
  c.week_past = econ_week_from_json(j.at("week_past"));
  return c;
}

}  // namespace livingcity::world
