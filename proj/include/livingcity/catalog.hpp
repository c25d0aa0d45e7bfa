#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "livingcity/balance.hpp"
#include "livingcity/common.hpp"

// The building catalog: 147 buildings across seven categories, with 29
// distinct build-from-scratch times and exactly 100 distinct costs. The
// published material fixes those structural constraints but not the
// per-building table, so a seeded generator produces reference catalogs and
// golden tests pin against the committed seed-0 file.

namespace livingcity::catalog {

enum class Category : int {
  FreeAreas = 0,
  Transport,
  Services,
  Institutional,
  PublicFacilities,
  TourismOther,
  External,
};

inline constexpr int kCategoryCount = 7;
inline constexpr int kBuildingCount = 147;
inline constexpr int kDistinctTimes = 29;
inline constexpr int kDistinctCosts = 100;

struct CategoryInfo {
  Category id;
  const char* code;  // three-letter id prefix
  const char* name;
  int expected_count;
};

inline constexpr std::array<CategoryInfo, kCategoryCount> kCategories{{
    {Category::FreeAreas, "FRE", "free_areas", 19},
    {Category::Transport, "TRA", "transport", 18},
    {Category::Services, "SRV", "services", 16},
    {Category::Institutional, "INS", "institutional", 17},
    {Category::PublicFacilities, "PUB", "public_facilities", 19},
    {Category::TourismOther, "TOU", "tourism_other", 18},
    {Category::External, "EXT", "external", 40},
}};

inline const CategoryInfo& category_info(Category c) {
  return kCategories[static_cast<std::size_t>(c)];
}

inline std::optional<Category> category_from_name(const std::string& s) {
  for (const auto& ci : kCategories) {
    if (s == ci.name || s == ci.code) return ci.id;
  }
  return std::nullopt;
}

struct BuildingSpec {
  std::string building_id;
  std::string name;
  Category category = Category::FreeAreas;
  int base_time_s = 0;
  Cents base_cost_cents = 0;
  int min_city_level = 1;
  bool is_external = false;

  double base_cost() const { return to_currency(base_cost_cents); }
};

struct Catalog {
  std::vector<BuildingSpec> entries;  // sorted by building_id
  std::uint64_t seed = 0;             // generation provenance

  const BuildingSpec* find(const std::string& id) const {
    auto it = std::lower_bound(entries.begin(), entries.end(), id,
                               [](const BuildingSpec& b, const std::string& key) {
                                 return b.building_id < key;
                               });
    if (it == entries.end() || it->building_id != id) return nullptr;
    return &*it;
  }

  std::vector<double> base_times() const {
    std::vector<double> v;
    v.reserve(entries.size());
    for (const auto& e : entries) v.push_back(static_cast<double>(e.base_time_s));
    return v;
  }

  std::vector<double> distinct_base_times() const {
    std::set<int> s;
    for (const auto& e : entries) s.insert(e.base_time_s);
    return {s.begin(), s.end()};
  }

  std::vector<double> distinct_base_costs() const {
    std::set<Cents> s;
    for (const auto& e : entries) s.insert(e.base_cost_cents);
    std::vector<double> v;
    v.reserve(s.size());
    for (Cents c : s) v.push_back(to_currency(c));
    return v;
  }
};

struct ValidationIssue {
  std::string entry_id;  // empty for catalog-wide issues
  std::string message;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;
  bool ok() const { return issues.empty(); }

  std::string to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (const auto& i : issues) {
      if (!i.entry_id.empty()) os << i.entry_id << ": ";
      os << i.message << '\n';
    }
    return os.str();
  }
};

// Checks every published structural constraint. Violations are data, not
// errors: the report lists them all with the offending entry ids.
inline ValidationReport validate(const Catalog& cat) {
  ValidationReport rep;
  auto issue = [&rep](std::string id, std::string msg) {
    rep.issues.push_back({std::move(id), std::move(msg)});
  };

  if (static_cast<int>(cat.entries.size()) != kBuildingCount) {
    issue("", "entry count " + std::to_string(cat.entries.size()) + " != 147");
  }

  std::array<int, kCategoryCount> per_category{};
  std::set<int> times;
  std::set<Cents> costs;
  std::set<int> levels;
  std::set<std::string> ids;

  for (const auto& e : cat.entries) {
    if (!ids.insert(e.building_id).second) {
      issue(e.building_id, "duplicate building id");
    }
    per_category[static_cast<std::size_t>(e.category)]++;
    times.insert(e.base_time_s);
    costs.insert(e.base_cost_cents);
    levels.insert(e.min_city_level);

    if (e.base_time_s < 90 || e.base_time_s > 3000) {
      issue(e.building_id, "base time " + std::to_string(e.base_time_s) + "s outside [90, 3000]");
    }
    if (e.base_cost_cents < to_cents(balance::kMinBaseCost) ||
        e.base_cost_cents > to_cents(balance::kMaxBaseCost)) {
      issue(e.building_id, "base cost " + std::to_string(e.base_cost_cents) +
                               " cents outside [200000, 38750000]");
    }
    if (e.min_city_level < 1 || e.min_city_level > kCityLevelCap) {
      issue(e.building_id, "min city level " + std::to_string(e.min_city_level) + " outside [1, 8]");
    }
    if (e.is_external != (e.category == Category::External)) {
      issue(e.building_id, "external flag does not match category");
    }
  }

  for (const auto& ci : kCategories) {
    const int have = per_category[static_cast<std::size_t>(ci.id)];
    if (have != ci.expected_count) {
      issue("", std::string(ci.name) + " count " + std::to_string(have) +
                    " != " + std::to_string(ci.expected_count));
    }
  }
  if (static_cast<int>(times.size()) != kDistinctTimes) {
    issue("", "distinct base times " + std::to_string(times.size()) + " != 29");
  }
  if (static_cast<int>(costs.size()) != kDistinctCosts) {
    issue("", "distinct base costs " + std::to_string(costs.size()) + " != 100");
  }
  for (int lvl = 1; lvl <= kCityLevelCap; ++lvl) {
    if (!levels.count(lvl)) {
      issue("", "no building with min city level " + std::to_string(lvl));
    }
  }
  return rep;
}

namespace detail {

// Distinct-time pool: one band per time class, sized roughly proportionally
// to class width, always containing the anchor times 90, 540, 600, 1800 and
// 3000 so reference catalogs exercise the class-boundary step.
inline std::vector<int> draw_time_pool(Rng& rng) {
  struct Band {
    int lo, hi;  // inclusive
    int count;
    std::vector<int> anchors;
  };
  const std::vector<Band> bands{
      {90, 299, 2, {90}},   {300, 599, 3, {540}},    {600, 1199, 6, {600}},
      {1200, 1799, 6, {}},  {1800, 3000, 12, {1800, 3000}},
  };
  std::vector<int> pool;
  for (const auto& b : bands) {
    std::set<int> chosen(b.anchors.begin(), b.anchors.end());
    while (static_cast<int>(chosen.size()) < b.count) {
      chosen.insert(static_cast<int>(rng.range(b.lo, b.hi)));
    }
    pool.insert(pool.end(), chosen.begin(), chosen.end());
  }
  std::sort(pool.begin(), pool.end());
  return pool;
}

// Distinct-cost pool: 100 values in cents, multiples of 25 euros, with both
// range endpoints always present.
inline std::vector<Cents> draw_cost_pool(Rng& rng) {
  const Cents lo = 200000, hi = 38750000, step = 2500;
  std::set<Cents> chosen{lo, hi};
  while (static_cast<int>(chosen.size()) < kDistinctCosts) {
    chosen.insert(lo + step * rng.range(0, (hi - lo) / step));
  }
  return {chosen.begin(), chosen.end()};
}

inline const std::vector<std::string>& name_words(Category c) {
  static const std::array<std::vector<std::string>, kCategoryCount> words{{
      {"Residential Block", "Garden Estate", "Commercial Row", "Industrial Yard", "Market Square",
       "Terrace Housing", "Riverside Lots", "Workshop Quarter", "Trade Hall", "Artisan Court"},
      {"Bus Depot", "Tram Line", "Metro Station", "Freight Terminal", "Harbor Pier", "Cargo Hub",
       "Central Station", "Airfield", "Bridge Works", "Road Yard"},
      {"Power Plant", "Water Works", "Garbage Plant", "Recycling Center", "Gas Works",
       "Sewage Plant", "District Heating", "Grid Substation", "Pumping Station", "Incinerator"},
      {"City Hall Annex", "Police Precinct", "Fire Station", "Army Barracks", "Courthouse",
       "Tax Office", "Customs House", "Registry Office", "Guard Post", "Council Chamber"},
      {"Primary School", "Clinic", "Hospital Wing", "Library", "Chapel", "University Hall",
       "Kindergarten", "Sports Ground", "Temple", "Community Center"},
      {"Grand Hotel", "Hostel", "Fair Pavilion", "Museum", "Theater", "Botanical Garden",
       "Amusement Pier", "Casino", "Concert Hall", "Spa House"},
      {"Export Warehouse", "Branch Factory", "Resort Annex", "Trade Outpost", "Logistics Dock",
       "Assembly Plant", "Retail Branch", "Tourist Lodge", "Distribution Hub", "Packing House"},
  }};
  return words[static_cast<std::size_t>(c)];
}

}  // namespace detail

// Deterministic catalog generation. For any seed the output passes
// validate(): fixed per-category counts, 29 distinct times covering all
// five time classes, 100 distinct costs spread over the full range, every
// city level represented, and time/cost/level rank-correlated so cheap
// fast buildings unlock early.
inline Catalog generate(std::uint64_t seed) {
  Rng rng(seed ^ 0x9e3779b97f4a7c15ULL);

  const std::vector<int> time_pool = detail::draw_time_pool(rng);
  const std::vector<Cents> cost_pool = detail::draw_cost_pool(rng);

  // 147 assignments per attribute: each pool value at least once, the rest
  // drawn uniformly, then sorted so position i is the i-th cheapest/fastest.
  std::vector<int> times(time_pool.begin(), time_pool.end());
  while (static_cast<int>(times.size()) < kBuildingCount) {
    times.push_back(static_cast<int>(time_pool[rng.below(time_pool.size())]));
  }
  std::sort(times.begin(), times.end());

  std::vector<Cents> costs(cost_pool.begin(), cost_pool.end());
  while (static_cast<int>(costs.size()) < kBuildingCount) {
    costs.push_back(cost_pool[rng.below(cost_pool.size())]);
  }
  std::sort(costs.begin(), costs.end());

  std::vector<int> levels;
  levels.reserve(kBuildingCount);
  for (int i = 0; i < kBuildingCount; ++i) {
    levels.push_back(1 + (i * kCityLevelCap) / kBuildingCount);
  }

  // Category labels shuffled over the complexity ranks so every category
  // spans the whole difficulty range.
  std::vector<Category> slots;
  for (const auto& ci : kCategories) {
    for (int i = 0; i < ci.expected_count; ++i) slots.push_back(ci.id);
  }
  rng.shuffle(slots);

  std::array<int, kCategoryCount> index_in_category{};
  Catalog cat;
  cat.seed = seed;
  cat.entries.reserve(kBuildingCount);
  for (int i = 0; i < kBuildingCount; ++i) {
    BuildingSpec b;
    b.category = slots[static_cast<std::size_t>(i)];
    const auto& ci = category_info(b.category);
    const int n = ++index_in_category[static_cast<std::size_t>(b.category)];
    std::ostringstream id;
    id << ci.code << '-' << std::setw(2) << std::setfill('0') << n;
    b.building_id = id.str();
    const auto& words = detail::name_words(b.category);
    b.name = words[static_cast<std::size_t>(rng.below(words.size()))] + " " + std::to_string(n);
    b.base_time_s = times[static_cast<std::size_t>(i)];
    b.base_cost_cents = costs[static_cast<std::size_t>(i)];
    b.min_city_level = levels[static_cast<std::size_t>(i)];
    b.is_external = b.category == Category::External;
    cat.entries.push_back(std::move(b));
  }

  std::sort(cat.entries.begin(), cat.entries.end(),
            [](const BuildingSpec& a, const BuildingSpec& b) { return a.building_id < b.building_id; });
  return cat;
}

inline constexpr const char* kCatalogHeader = "livingcity-catalog v1";

// Canonical line-based format, one record per building, entries sorted by
// id. save(load(f)) is byte-identical for canonical files.
inline void save(const Catalog& cat, std::ostream& os) {
  os << kCatalogHeader << '\n';
  os << "seed " << cat.seed << '\n';
  std::vector<const BuildingSpec*> sorted;
  sorted.reserve(cat.entries.size());
  for (const auto& e : cat.entries) sorted.push_back(&e);
  std::sort(sorted.begin(), sorted.end(),
            [](const BuildingSpec* a, const BuildingSpec* b) { return a->building_id < b->building_id; });
  for (const BuildingSpec* e : sorted) {
    os << e->building_id << '|' << e->name << '|' << category_info(e->category).name << '|'
       << e->base_time_s << '|' << e->base_cost_cents << '|' << e->min_city_level << '|'
       << (e->is_external ? 1 : 0) << '\n';
  }
}

inline void save(const Catalog& cat, const std::string& path) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open " + path + " for writing");
  save(cat, f);
}

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses a catalog file. Parse errors (bad structure, non-numeric fields)
// throw; range and constraint violations load fine and are left for
// validate() to report.
inline Catalog load(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != kCatalogHeader) {
    throw ParseError("line 1: missing or unsupported catalog header");
  }
  Catalog cat;
  if (!std::getline(is, line) || line.rfind("seed ", 0) != 0) {
    throw ParseError("line 2: expected 'seed <n>'");
  }
  try {
    cat.seed = std::stoull(line.substr(5));
  } catch (const std::exception&) {
    throw ParseError("line 2: field 'seed' is not an integer");
  }

  int lineno = 2;
  while (std::getline(is, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    while (true) {
      std::size_t bar = line.find('|', start);
      if (bar == std::string::npos) {
        fields.push_back(line.substr(start));
        break;
      }
      fields.push_back(line.substr(start, bar - start));
      start = bar + 1;
    }
    const std::string where = "line " + std::to_string(lineno);
    if (fields.size() != 7) {
      throw ParseError(where + ": expected 7 fields, got " + std::to_string(fields.size()));
    }
    BuildingSpec b;
    b.building_id = fields[0];
    b.name = fields[1];
    auto cat_id = category_from_name(fields[2]);
    if (!cat_id) throw ParseError(where + ": field 'category' unknown: " + fields[2]);
    b.category = *cat_id;
    try {
      b.base_time_s = std::stoi(fields[3]);
    } catch (const std::exception&) {
      throw ParseError(where + ": field 'base_time_s' is not an integer");
    }
    try {
      b.base_cost_cents = std::stoll(fields[4]);
    } catch (const std::exception&) {
      throw ParseError(where + ": field 'base_cost_cents' is not an integer");
    }
    try {
      b.min_city_level = std::stoi(fields[5]);
    } catch (const std::exception&) {
      throw ParseError(where + ": field 'min_city_level' is not an integer");
    }
    if (fields[6] != "0" && fields[6] != "1") {
      throw ParseError(where + ": field 'external' must be 0 or 1");
    }
    b.is_external = fields[6] == "1";
    cat.entries.push_back(std::move(b));
  }
  std::sort(cat.entries.begin(), cat.entries.end(),
            [](const BuildingSpec& a, const BuildingSpec& b) { return a.building_id < b.building_id; });
  return cat;
}

inline Catalog load(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot open catalog file " + path);
  return load(f);
}

inline std::uint64_t content_hash(const Catalog& cat) {
  std::ostringstream os;
  save(cat, os);
  return fnv1a(os.str());
}

}  // namespace livingcity::catalog
