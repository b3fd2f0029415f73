#pragma once

#include <json.hpp>

#include "radsurf/radex.hpp"
#include "radsurf/verify.hpp"

namespace radsurf {

using Json = nlohmann::ordered_json;

// Lossless structured form of a radical expression tree.
inline Json rx_to_json(const Rx& e) {
  Json j;
  switch (e->kind) {
    case RxKind::Const:
      j["kind"] = "const";
      j["value"] = e->value.str();
      break;
    case RxKind::Var:
      j["kind"] = "var";
      j["name"] = std::string(name_of(e->var));
      break;
    case RxKind::Add:
    case RxKind::Mul: {
      j["kind"] = e->kind == RxKind::Add ? "add" : "mul";
      Json args = Json::array();
      for (auto& a : e->args) args.push_back(rx_to_json(a));
      j["args"] = std::move(args);
      break;
    }
    case RxKind::Neg:
      j["kind"] = "neg";
      j["arg"] = rx_to_json(e->args[0]);
      break;
    case RxKind::Inv:
      j["kind"] = "inv";
      j["arg"] = rx_to_json(e->args[0]);
      break;
    case RxKind::IPow:
      j["kind"] = "ipow";
      j["arg"] = rx_to_json(e->args[0]);
      j["n"] = e->n;
      break;
    case RxKind::Root:
      j["kind"] = "root";
      j["arg"] = rx_to_json(e->args[0]);
      j["k"] = e->k;
      j["branch"] = e->branch;
      break;
  }
  return j;
}

inline Rx rx_from_json(const Json& j) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "const") return rx_const(Rat::from_string(j.at("value")));
  if (kind == "var") {
    auto sym = sym_from_name(j.at("name").get<std::string>());
    if (!sym) throw ArgumentError("unknown symbol in serialized expression");
    return rx_var(*sym);
  }
  if (kind == "add" || kind == "mul") {
    std::vector<Rx> args;
    for (auto& a : j.at("args")) args.push_back(rx_from_json(a));
    return kind == "add" ? rx_add(std::move(args)) : rx_mul(std::move(args));
  }
  if (kind == "neg") return rx_neg(rx_from_json(j.at("arg")));
  if (kind == "inv") return rx_inv(rx_from_json(j.at("arg")));
  if (kind == "ipow")
    return rx_ipow(rx_from_json(j.at("arg")), j.at("n").get<unsigned>());
  if (kind == "root")
    return rx_root(rx_from_json(j.at("arg")), j.at("k").get<unsigned>(),
                   j.at("branch").get<unsigned>());
  throw ArgumentError("unknown node kind in serialized expression: " + kind);
}

inline Json certificate_to_json(const Certificate& c) {
  Json j;
  switch (c.status) {
    case VerifyStatus::Certified: j["status"] = "certified"; break;
    case VerifyStatus::Failed: j["status"] = "failed"; break;
    case VerifyStatus::Inconclusive: j["status"] = "inconclusive"; break;
  }
  j["kind"] = c.kind;
  j["seed"] = c.seed;
  j["tower_depth"] = c.tower_depth;
  Json samples = Json::array();
  for (auto& s : c.samples) {
    Json sj;
    Json pt = Json::array();
    for (auto& q : s.point) pt.push_back(q.str());
    sj["point"] = std::move(pt);
    Json ch = Json::array();
    for (auto& [b, side] : s.choices) ch.push_back(Json::array({b, side}));
    sj["choices"] = std::move(ch);
    sj["residual_width_log2"] = s.residual_width_log2;
    sj["precision"] = static_cast<long>(s.precision);
    samples.push_back(std::move(sj));
  }
  j["samples"] = std::move(samples);
  if (c.rank) {
    Json r;
    r["sample"] = c.rank->sample_index;
    r["minor_rows"] = Json::array({c.rank->rows[0], c.rank->rows[1]});
    r["lower_bound_log2"] = c.rank->lower_bound_log2;
    r["precision"] = static_cast<long>(c.rank->precision);
    j["rank_witness"] = std::move(r);
  }
  if (!c.note.empty()) j["note"] = c.note;
  return j;
}

inline Json radparam_to_json(const RadParam& p) {
  Json j;
  j["params"] = Json::array({std::string(name_of(p.params.first)),
                             std::string(name_of(p.params.second))});
  Json comps = Json::array();
  for (auto& c : p.components) comps.push_back(rx_to_json(c));
  j["components"] = std::move(comps);
  Json tower = Json::array();
  for (auto& step : p.tower) {
    Json t;
    t["k"] = step->k;
    t["branch"] = step->branch;
    t["radicand"] = rx_to_json(step->args[0]);
    tower.push_back(std::move(t));
  }
  j["tower"] = std::move(tower);
  j["components_text"] = Json::array(
      {rx_text(p.components[0]), rx_text(p.components[1]),
       rx_text(p.components[2])});
  j["certificate"] = certificate_to_json(p.cert);
  return j;
}

inline RadParam radparam_from_json(const Json& j) {
  auto params = j.at("params");
  auto p0 = sym_from_name(params.at(0).get<std::string>());
  auto p1 = sym_from_name(params.at(1).get<std::string>());
  if (!p0 || !p1) throw ArgumentError("bad parameter names in parametrization");
  auto comps = j.at("components");
  return make_radparam(rx_from_json(comps.at(0)), rx_from_json(comps.at(1)),
                       rx_from_json(comps.at(2)), *p0, *p1);
}

}  // namespace radsurf
