#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "livingcity/common.hpp"

// Balance math: build-time and build-cost progressions.
//
// Build times follow a recursive exponential curve, t(x) = t(x-1)^alpha,
// with alpha fixed per time class of the base time. Upgrade costs follow a
// compounding schedule on the cumulative amount spent: with C(1) = base and
// C(x) = (1+beta) * C(x-1), the stage-x upgrade costs C(x) - C(x-1) =
// beta * (1+beta)^(x-2) * base. This cumulative form keeps the total
// improvement spend between 1.5x and 4x the construction cost across the
// whole cost range, and every single upgrade far below building from
// scratch.
//
// Everything here is pure, stateless and re-entrant.

namespace livingcity::balance {

inline constexpr double kMinBaseTime = 90.0;
inline constexpr double kMaxBaseTime = 3000.0;
inline constexpr double kMinBaseCost = 2000.0;
inline constexpr double kMaxBaseCost = 387500.0;
inline constexpr double kBetaMin = 0.10;
inline constexpr double kBetaMax = 0.15;

struct TimeClass {
  const char* label;   // roman numeral
  int class_id;        // 1..5
  double lower_s;      // inclusive
  double upper_s;      // exclusive; infinity for the last class
  double alpha;
};

// Five time classes; boundary times fall into the higher class
// (half-open intervals), taking the smaller alpha.
inline constexpr std::array<TimeClass, 5> kTimeClasses{{
    {"I", 1, 90.0, 300.0, 1.06},
    {"II", 2, 300.0, 600.0, 1.055},
    {"III", 3, 600.0, 1200.0, 1.05},
    {"IV", 4, 1200.0, 1800.0, 1.045},
    {"V", 5, 1800.0, std::numeric_limits<double>::infinity(), 1.04},
}};

struct CostModelParams {
  double beta_min = kBetaMin;
  double beta_max = kBetaMax;
  double cost_min = kMinBaseCost;
  double cost_max = kMaxBaseCost;
};

inline const TimeClass& time_class_for(double base_time_s) {
  if (!(base_time_s >= kMinBaseTime)) {
    std::ostringstream os;
    os << "base time " << base_time_s << "s is below the catalog minimum of 90s";
    throw std::domain_error(os.str());
  }
  for (const auto& tc : kTimeClasses) {
    if (base_time_s >= tc.lower_s && base_time_s < tc.upper_s) return tc;
  }
  return kTimeClasses.back();
}

inline double alpha_for_time(double base_time_s) { return time_class_for(base_time_s).alpha; }

// Required time for construction stage `stage` of a building whose
// build-from-scratch time is base_time_s. Stage 1 is the base time itself;
// each later stage raises the previous one to the class exponent. Evaluated
// by the recursion so that summations over catalogs reproduce a plain
// double loop bit for bit; the closed form base^(alpha^(stage-1)) is kept
// as a test oracle.
inline double required_time_at_stage(double base_time_s, int stage) {
  if (!(base_time_s >= kMinBaseTime && base_time_s <= kMaxBaseTime)) {
    std::ostringstream os;
    os << "base time " << base_time_s << "s outside [90, 3000]";
    throw std::domain_error(os.str());
  }
  if (stage < 1 || stage > kStageCap) {
    std::ostringstream os;
    os << "stage " << stage << " outside [1, " << kStageCap << "]";
    throw std::domain_error(os.str());
  }
  const double alpha = alpha_for_time(base_time_s);
  double t = base_time_s;
  for (int x = 2; x <= stage; ++x) t = std::pow(t, alpha);
  return t;
}

// Lower bound on the total time to construct and fully upgrade every
// building: the double sum of required_time_at_stage over all entries and
// stages 1..stage_cap, accumulated in catalog order.
inline double min_total_time(std::span<const double> base_times_s, int stage_cap = kStageCap) {
  if (base_times_s.empty()) throw std::domain_error("min_total_time: empty catalog");
  if (stage_cap < 1 || stage_cap > kStageCap) {
    throw std::domain_error("min_total_time: stage cap outside [1, 12]");
  }
  double total = 0.0;
  for (std::size_t k = 0; k < base_times_s.size(); ++k) {
    const double base = base_times_s[k];
    if (!(base >= kMinBaseTime && base <= kMaxBaseTime)) {
      std::ostringstream os;
      os << "min_total_time: entry " << k << " has base time " << base << "s outside [90, 3000]";
      throw std::domain_error(os.str());
    }
    const double alpha = alpha_for_time(base);
    double t = base;
    total += t;
    for (int x = 2; x <= stage_cap; ++x) {
      t = std::pow(t, alpha);
      total += t;
    }
  }
  return total;
}

// Per-cost compounding factor, inversely proportional to the construction
// cost: beta = 0.15 - cost * (0.15 - 0.10) / (387500 - 2000). The formula
// is affine and implemented exactly as stated; it does not hit the interval
// endpoints exactly (beta(2000) = 0.14974..., beta(387500) = 0.09974...).
inline double beta_for_cost(double base_cost) {
  if (!(base_cost >= kMinBaseCost && base_cost <= kMaxBaseCost)) {
    std::ostringstream os;
    os << "base cost " << base_cost << " outside [2000, 387500]";
    throw std::domain_error(os.str());
  }
  return kBetaMax - (base_cost * (kBetaMax - kBetaMin)) / (kMaxBaseCost - kMinBaseCost);
}

// Money needed to upgrade a building to `stage` (stage >= 2), given its
// build-from-scratch cost: beta * (1+beta)^(stage-2) * base_cost.
inline double upgrade_cost_at_stage(double base_cost, int stage) {
  if (stage < 2 || stage > kStageCap) {
    std::ostringstream os;
    os << "upgrade stage " << stage << " outside [2, " << kStageCap
       << "] (stage 1 is construction, not an upgrade)";
    throw std::domain_error(os.str());
  }
  const double beta = beta_for_cost(base_cost);
  double factor = beta;
  for (int x = 3; x <= stage; ++x) factor *= 1.0 + beta;
  return factor * base_cost;
}

// Total money to improve one building from stage 2 through the cap,
// S = sum of the stage upgrade costs. S / base_cost always lies strictly
// inside (3/2, 4) over the admissible cost range.
inline double improvement_sum(double base_cost) {
  double s = 0.0;
  for (int x = 2; x <= kStageCap; ++x) s += upgrade_cost_at_stage(base_cost, x);
  return s;
}

enum class FigureId { fig1, fig2, fig3, fig4 };

struct DataSeries {
  std::string title;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;

  std::string to_csv() const {
    std::ostringstream os;
    os.setf(std::ios::fmtflags(0), std::ios::floatfield);
    os.precision(17);
    for (std::size_t i = 0; i < columns.size(); ++i) {
      if (i) os << ',';
      os << columns[i];
    }
    os << '\n';
    for (const auto& row : rows) {
      for (std::size_t i = 0; i < row.size(); ++i) {
        if (i) os << ',';
        os << row[i];
      }
      os << '\n';
    }
    return os.str();
  }
};

// Data series behind the four balance plots.
//   fig1: required time vs stage, one series per distinct base time.
//   fig2: required time vs base time, one series per stage (the step plot).
//   fig3: S/base and S vs base cost.
//   fig4: upgrade costs at stages 3..12 vs the stage-2 upgrade cost.
inline DataSeries figure_series(FigureId which, std::span<const double> base_times_s,
                                std::span<const double> base_costs) {
  const bool needs_times = which == FigureId::fig1 || which == FigureId::fig2;
  if (needs_times && base_times_s.empty()) {
    throw std::runtime_error("figure_series: no reference base times loaded");
  }
  if (!needs_times && base_costs.empty()) {
    throw std::runtime_error("figure_series: no reference base costs loaded");
  }

  DataSeries out;
  switch (which) {
    case FigureId::fig1: {
      out.title = "required_time_vs_stage";
      out.columns.push_back("stage");
      for (double t : base_times_s) {
        std::ostringstream c;
        c << "base_" << t << "s";
        out.columns.push_back(c.str());
      }
      for (int x = 1; x <= kStageCap; ++x) {
        std::vector<double> row;
        row.push_back(x);
        for (double t : base_times_s) row.push_back(required_time_at_stage(t, x));
        out.rows.push_back(std::move(row));
      }
      break;
    }
    case FigureId::fig2: {
      out.title = "required_time_vs_base_time";
      out.columns.push_back("base_time_s");
      for (int x = 1; x <= kStageCap; ++x) out.columns.push_back("stage_" + std::to_string(x));
      for (double t : base_times_s) {
        std::vector<double> row;
        row.push_back(t);
        for (int x = 1; x <= kStageCap; ++x) row.push_back(required_time_at_stage(t, x));
        out.rows.push_back(std::move(row));
      }
      break;
    }
    case FigureId::fig3: {
      out.title = "improvement_sum_vs_base_cost";
      out.columns = {"base_cost", "s_over_base", "s_total"};
      for (double c : base_costs) {
        const double s = improvement_sum(c);
        out.rows.push_back({c, s / c, s});
      }
      break;
    }
    case FigureId::fig4: {
      out.title = "upgrade_costs_vs_stage2_cost";
      out.columns.push_back("base_cost");
      out.columns.push_back("upgrade_stage_2");
      for (int x = 3; x <= kStageCap; ++x) out.columns.push_back("upgrade_stage_" + std::to_string(x));
      for (double c : base_costs) {
        std::vector<double> row;
        row.push_back(c);
        for (int x = 2; x <= kStageCap; ++x) row.push_back(upgrade_cost_at_stage(c, x));
        out.rows.push_back(std::move(row));
      }
      break;
    }
  }
  return out;
}

}  // namespace livingcity::balance
