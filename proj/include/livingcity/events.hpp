#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "livingcity/common.hpp"

// The world event: one immutable, totally ordered entry in the append-only
// log. Every event is an individually applicable state transition carrying
// all derived values (completion ticks, costs, assigned ids) in its
// payload, so replay never recomputes anything platform-sensitive.
//
// Each event records the chain hash of the log before it; the chain is a
// running commitment to the prior state, verified during replay. Client
// timestamps are carried for provenance only and are excluded from the
// chain, because command order is decided by the server sequence alone.

namespace livingcity::events {

enum class Kind : int {
  CityRegistered = 0,
  SessionStarted,
  SessionEnded,
  AllocationsSet,
  BuildStarted,
  BuildCompleted,
  TickAdvanced,
  StaffHired,
  StaffFired,
  CallIssued,
  BidPlaced,
  ProposalMade,
  CallAwarded,
  CallExpired,
  InvestmentMade,
  InvestmentMatured,
  LevelUp,
};

inline constexpr int kKindCount = 17;

inline constexpr std::array<const char*, kKindCount> kKindNames{
    "city_registered", "session_started", "session_ended",  "allocations_set",
    "build_started",   "build_completed", "tick_advanced",  "staff_hired",
    "staff_fired",     "call_issued",     "bid_placed",     "proposal_made",
    "call_awarded",    "call_expired",    "investment_made", "investment_matured",
    "level_up",
};

inline const char* kind_name(Kind k) { return kKindNames[static_cast<std::size_t>(k)]; }

inline std::optional<Kind> kind_from_name(const std::string& s) {
  for (int i = 0; i < kKindCount; ++i) {
    if (s == kKindNames[static_cast<std::size_t>(i)]) return static_cast<Kind>(i);
  }
  return std::nullopt;
}

struct WorldEvent {
  Seq seq = 0;
  Tick tick = 0;
  Kind kind = Kind::TickAdvanced;
  std::vector<CityId> cities;  // cities the event touches, primary first
  nlohmann::json payload;
  std::optional<std::int64_t> client_ts;  // provenance only, never ordering
  std::uint64_t prior_hash = 0;           // log chain hash before this event
};

// Canonical bytes covered by the chain hash: everything except client_ts
// and the chain field itself. nlohmann objects serialize with sorted keys,
// which fixes the byte order.
inline std::string canonical_bytes(const WorldEvent& e) {
  nlohmann::json j{{"seq", e.seq},
                   {"tick", e.tick},
                   {"kind", kind_name(e.kind)},
                   {"cities", e.cities},
                   {"payload", e.payload}};
  return j.dump();
}

inline std::uint64_t chain_step(std::uint64_t prior, const WorldEvent& e) {
  Fnv1a f;
  f.update_u64(prior);
  f.update(canonical_bytes(e));
  return f.digest();
}

inline std::string to_line(const WorldEvent& e) {
  nlohmann::json j{{"seq", e.seq},
                   {"tick", e.tick},
                   {"kind", kind_name(e.kind)},
                   {"cities", e.cities},
                   {"payload", e.payload},
                   {"prior_hash", e.prior_hash}};
  if (e.client_ts) j["client_ts"] = *e.client_ts;
  return j.dump();
}

struct LogFormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline WorldEvent from_line(const std::string& line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(line);
  } catch (const nlohmann::json::exception& ex) {
    throw LogFormatError(std::string("bad event line: ") + ex.what());
  }
  WorldEvent e;
  try {
    e.seq = j.at("seq").get<Seq>();
    e.tick = j.at("tick").get<Tick>();
    const auto kind = kind_from_name(j.at("kind").get<std::string>());
    if (!kind) throw LogFormatError("unknown event kind: " + j.at("kind").get<std::string>());
    e.kind = *kind;
    e.cities = j.at("cities").get<std::vector<CityId>>();
    e.payload = j.at("payload");
    e.prior_hash = j.at("prior_hash").get<std::uint64_t>();
    if (j.contains("client_ts")) e.client_ts = j.at("client_ts").get<std::int64_t>();
  } catch (const nlohmann::json::exception& ex) {
    throw LogFormatError(std::string("bad event fields: ") + ex.what());
  }
  return e;
}

// First line of every event log: binds the run to its catalog, config and
// world seed so replay can refuse mismatched inputs.
struct LogHeader {
  int version = 1;
  std::uint64_t catalog_hash = 0;
  std::uint64_t config_hash = 0;
  std::uint64_t world_seed = 0;

  std::string to_line() const {
    nlohmann::json j{{"format", "livingcity-events"},
                     {"version", version},
                     {"catalog_hash", catalog_hash},
                     {"config_hash", config_hash},
                     {"world_seed", world_seed}};
    return j.dump();
  }

  static LogHeader from_line(const std::string& line) {
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& ex) {
      throw LogFormatError(std::string("bad log header: ") + ex.what());
    }
    if (!j.contains("format") || j.at("format") != "livingcity-events") {
      throw LogFormatError("not a livingcity event log");
    }
    LogHeader h;
    h.version = j.at("version").get<int>();
    if (h.version != 1) throw LogFormatError("unsupported log version");
    h.catalog_hash = j.at("catalog_hash").get<std::uint64_t>();
    h.config_hash = j.at("config_hash").get<std::uint64_t>();
    h.world_seed = j.at("world_seed").get<std::uint64_t>();
    return h;
  }

  // Chain genesis: the header itself seeds the hash chain.
  std::uint64_t genesis_hash() const { return fnv1a(to_line()); }
};

}  // namespace livingcity::events
