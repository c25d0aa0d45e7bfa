#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "livingcity/catalog.hpp"
#include "livingcity/common.hpp"
#include "livingcity/world.hpp"

// Cross-player shared state: procurement calls in three mechanisms,
// licenses over plot slots, the provided-service links they back, and the
// common staff marketplace. Award semantics are first-committer-wins; the
// engine serializes every state change, so each call transitions
// Open -> Awarded or Open -> Expired exactly once.

namespace livingcity::market {

enum class Mechanism : int { BidAuction = 0, DirectOffer, FixedPrice };

inline const char* mechanism_name(Mechanism m) {
  switch (m) {
    case Mechanism::BidAuction: return "bid_auction";
    case Mechanism::DirectOffer: return "direct_offer";
    case Mechanism::FixedPrice: return "fixed_price";
  }
  return "?";
}

enum class CallState : int { Open = 0, Awarded, Expired };

struct Bid {
  CityId bidder = 0;
  Cents amount_cents = 0;
  Tick tick = 0;
};

// A direct-offer proposal; funds are escrowed when proposed so acceptance
// can never fail on the provider's balance.
struct DirectProposal {
  std::int64_t proposal_id = 0;
  CityId provider = 0;
  Cents price_cents = 0;
  std::string building_id;
  Tick tick = 0;
  bool withdrawn = false;
};

struct ProcurementCall {
  std::int64_t call_id = 0;
  CityId issuer = 0;
  int slot_id = 0;
  catalog::Category service_category = catalog::Category::External;
  Mechanism mechanism = Mechanism::FixedPrice;
  Cents reserve_or_price_cents = 0;
  Tick deadline_tick = 0;
  CallState state = CallState::Open;
  CityId winner = 0;
  Cents award_price_cents = 0;
  std::vector<Bid> bids;                  // full bid history, best last
  std::vector<DirectProposal> proposals;  // direct-offer mechanism only
  Cents escrow_cents = 0;                 // current best bid / open proposals held here

  const Bid* best_bid() const { return bids.empty() ? nullptr : &bids.back(); }
};

struct License {
  std::int64_t license_id = 0;
  int slot_id = 0;
  CityId granter = 0;  // call issuer, future service consumer
  CityId holder = 0;   // procurement winner
  std::int64_t call_id = 0;
  bool used = false;   // an external build was started against it
};

struct ProvidedService {
  std::int64_t service_id = 0;
  CityId provider = 0;
  CityId consumer = 0;
  std::string building_id;
  std::int64_t license_id = 0;
  Cents fee_cents_per_tick = 0;  // paid consumer -> provider while the building stands
};

struct MarketState {
  std::map<std::int64_t, ProcurementCall> calls;
  std::map<std::int64_t, License> licenses;
  std::map<std::int64_t, ProvidedService> services;
  std::map<int, world::StaffMember> marketplace;  // unemployed NPCs by id
  std::int64_t next_call_id = 1;
  std::int64_t next_license_id = 1;
  std::int64_t next_service_id = 1;
  std::int64_t next_proposal_id = 1;
  int next_npc_id = 1;

  Cents total_escrow() const {
    Cents total = 0;
    for (const auto& [id, c] : calls) total += c.escrow_cents;
    return total;
  }
};

inline Cents service_fee_per_tick(Cents building_cost_cents, const WorldConfig& cfg) {
  const Cents fee = static_cast<Cents>(
      std::llround(static_cast<double>(building_cost_cents) * cfg.service_fee_coef));
  return fee < 1 ? 1 : fee;
}

// --- serialization -------------------------------------------------------

inline nlohmann::json to_json(const ProcurementCall& c) {
  nlohmann::json bids = nlohmann::json::array();
  for (const auto& b : c.bids) {
    bids.push_back({{"bidder", b.bidder}, {"amount_cents", b.amount_cents}, {"tick", b.tick}});
  }
  nlohmann::json proposals = nlohmann::json::array();
  for (const auto& p : c.proposals) {
    proposals.push_back({{"proposal_id", p.proposal_id},
                         {"provider", p.provider},
                         {"price_cents", p.price_cents},
                         {"building_id", p.building_id},
                         {"tick", p.tick},
                         {"withdrawn", p.withdrawn}});
  }
  return {{"call_id", c.call_id},
          {"issuer", c.issuer},
          {"slot_id", c.slot_id},
          {"service_category", static_cast<int>(c.service_category)},
          {"mechanism", static_cast<int>(c.mechanism)},
          {"reserve_or_price_cents", c.reserve_or_price_cents},
          {"deadline_tick", c.deadline_tick},
          {"state", static_cast<int>(c.state)},
          {"winner", c.winner},
          {"award_price_cents", c.award_price_cents},
          {"bids", bids},
          {"proposals", proposals},
          {"escrow_cents", c.escrow_cents}};
}

inline ProcurementCall call_from_json(const nlohmann::json& j) {
  ProcurementCall c;
  c.call_id = j.at("call_id").get<std::int64_t>();
  c.issuer = j.at("issuer").get<CityId>();
  c.slot_id = j.at("slot_id").get<int>();
  c.service_category = static_cast<catalog::Category>(j.at("service_category").get<int>());
  c.mechanism = static_cast<Mechanism>(j.at("mechanism").get<int>());
  c.reserve_or_price_cents = j.at("reserve_or_price_cents").get<Cents>();
  c.deadline_tick = j.at("deadline_tick").get<Tick>();
  c.state = static_cast<CallState>(j.at("state").get<int>());
  c.winner = j.at("winner").get<CityId>();
  c.award_price_cents = j.at("award_price_cents").get<Cents>();
  for (const auto& b : j.at("bids")) {
    c.bids.push_back({b.at("bidder").get<CityId>(), b.at("amount_cents").get<Cents>(),
                      b.at("tick").get<Tick>()});
  }
  for (const auto& p : j.at("proposals")) {
    c.proposals.push_back({p.at("proposal_id").get<std::int64_t>(), p.at("provider").get<CityId>(),
                           p.at("price_cents").get<Cents>(), p.at("building_id").get<std::string>(),
                           p.at("tick").get<Tick>(), p.at("withdrawn").get<bool>()});
  }
  c.escrow_cents = j.at("escrow_cents").get<Cents>();
  return c;
}

inline nlohmann::json to_json(const MarketState& m) {
  nlohmann::json calls = nlohmann::json::array();
  for (const auto& [id, c] : m.calls) calls.push_back(to_json(c));
  nlohmann::json licenses = nlohmann::json::array();
  for (const auto& [id, l] : m.licenses) {
    licenses.push_back({{"license_id", l.license_id},
                        {"slot_id", l.slot_id},
                        {"granter", l.granter},
                        {"holder", l.holder},
                        {"call_id", l.call_id},
                        {"used", l.used}});
  }
  nlohmann::json services = nlohmann::json::array();
  for (const auto& [id, s] : m.services) {
    services.push_back({{"service_id", s.service_id},
                        {"provider", s.provider},
                        {"consumer", s.consumer},
                        {"building_id", s.building_id},
                        {"license_id", s.license_id},
                        {"fee_cents_per_tick", s.fee_cents_per_tick}});
  }
  nlohmann::json pool = nlohmann::json::array();
  for (const auto& [id, npc] : m.marketplace) pool.push_back(world::to_json(npc));
  return {{"calls", calls},
          {"licenses", licenses},
          {"services", services},
          {"marketplace", pool},
          {"next_call_id", m.next_call_id},
          {"next_license_id", m.next_license_id},
          {"next_service_id", m.next_service_id},
          {"next_proposal_id", m.next_proposal_id},
          {"next_npc_id", m.next_npc_id}};
}

inline MarketState market_from_json(const nlohmann::json& j) {
  MarketState m;
  for (const auto& c : j.at("calls")) {
    auto call = call_from_json(c);
    m.calls[call.call_id] = std::move(call);
  }
  for (const auto& l : j.at("licenses")) {
    License lic{l.at("license_id").get<std::int64_t>(), l.at("slot_id").get<int>(),
                l.at("granter").get<CityId>(),          l.at("holder").get<CityId>(),
                l.at("call_id").get<std::int64_t>(),    l.at("used").get<bool>()};
    m.licenses[lic.license_id] = lic;
  }
  for (const auto& s : j.at("services")) {
    ProvidedService svc{s.at("service_id").get<std::int64_t>(),  s.at("provider").get<CityId>(),
                        s.at("consumer").get<CityId>(),          s.at("building_id").get<std::string>(),
                        s.at("license_id").get<std::int64_t>(),  s.at("fee_cents_per_tick").get<Cents>()};
    m.services[svc.service_id] = std::move(svc);
  }
  for (const auto& npc : j.at("marketplace")) {
    auto member = world::staff_from_json(npc);
    m.marketplace[member.npc_id] = std::move(member);
  }
  m.next_call_id = j.at("next_call_id").get<std::int64_t>();
  m.next_license_id = j.at("next_license_id").get<std::int64_t>();
  m.next_service_id = j.at("next_service_id").get<std::int64_t>();
  m.next_proposal_id = j.at("next_proposal_id").get<std::int64_t>();
  m.next_npc_id = j.at("next_npc_id").get<int>();
  return m;
}

}  // namespace livingcity::market
