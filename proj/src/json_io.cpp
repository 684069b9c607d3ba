#include "ideal_lab/json_io.hpp"

#include <fstream>
#include <sstream>

#include "ideal_lab/errors.hpp"

namespace ideal_lab {

namespace {

IndexDomain parse_domain(const std::string& s) {
  if (s == "nat") return IndexDomain::Nat;
  if (s == "pair") return IndexDomain::Pair;
  throw DomainError("unknown index domain '" + s + "'");
}

Json require(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw DomainError(std::string("missing JSON field '") + key + "'");
  return j.at(key);
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw DomainError("bad number '" + item + "' in scheme spec");
    }
    if (used != item.size()) throw DomainError("bad number '" + item + "' in scheme spec");
    out.push_back(v);
  }
  return out;
}

}  // namespace

Json to_json(const GenSet& g) { return Json(g.elements()); }
Json to_json(const TreeSeq& s) { return Json(s.entries); }

Json index_to_json(IndexDomain d, Index s) {
  if (d == IndexDomain::Nat) return Json(s);
  return Json::array({pair_lo(s), pair_hi(s)});
}

Json to_json(const IndexSet& s) {
  Json members = Json::array();
  for (Index i : s) members.push_back(index_to_json(s.domain(), i));
  return Json{{"domain", to_string(s.domain())}, {"members", std::move(members)}};
}

Json to_json(const VerySparseSet& d) {
  return Json{{"elements", to_json(d.elements())}, {"certified_bound", d.certified_bound()}};
}

Json to_json(const CertificationReport& r) {
  Json j{{"pass", r.pass},
         {"window", r.window},
         {"subsets_checked", r.subsets_checked},
         {"pairs_checked", r.pairs_checked}};
  if (r.collision)
    j["collision"] = Json{{"value", r.collision->value},
                          {"first", to_json(r.collision->first)},
                          {"second", to_json(r.collision->second)}};
  if (r.overlap)
    j["overlap"] = Json{{"G", to_json(r.overlap->g)}, {"H", to_json(r.overlap->h)}, {"total", r.overlap->total}};
  return j;
}

Json to_json(const PositivityWitness& w) { return Json{{"F", to_json(w.f)}, {"window", w.window}}; }

Json to_json(const SearchBounds& b) {
  return Json{{"max_F", b.max_f}, {"max_element", b.max_element}, {"max_K", b.max_k},
              {"window", b.window}, {"nodes", b.nodes},           {"exhausted", b.exhausted}};
}

Json to_json(const LimitWitness& w) {
  Json tails = Json::array();
  for (const auto& t : w.tails) tails.push_back(Json{{"eps", t.eps}, {"K", to_json(t.k)}, {"checked", t.checked}});
  return Json{{"eta", w.eta}, {"F", to_json(w.f)}, {"tails", std::move(tails)}, {"verified", w.verified},
              {"bounds", to_json(w.bounds)}};
}

Json to_json(const ClusterWitness& w) {
  return Json{{"eta", w.eta}, {"eps", w.eps}, {"F", to_json(w.f)}, {"window", w.window}, {"verified", w.verified}};
}

Json to_json(const IdealLimitWitness& w) {
  return Json{{"eta", w.eta},           {"F", to_json(w.f)},   {"eps_ladder", w.eps_ladder},
              {"window", w.window},     {"verified", w.verified}, {"bounds", to_json(w.bounds)}};
}

Json to_json(const SouslinScheme& s) {
  Json params = Json::object();
  switch (s.type()) {
    case SchemeType::Singleton:
      params["c"] = s.points()[0];
      break;
    case SchemeType::Finite:
      params["points"] = s.points();
      break;
    case SchemeType::Cantor:
    case SchemeType::Rationals:
      break;
    case SchemeType::Table: {
      params["depth"] = s.table_depth();
      params["width"] = s.table_width();
      Json entries = Json::array();
      for (const auto& [k, b] : s.table_balls())
        entries.push_back(Json{{"s", k}, {"lo", b.lo()}, {"hi", b.hi()}});
      params["entries"] = std::move(entries);
      break;
    }
  }
  return Json{{"type", to_string(s.type())}, {"params", std::move(params)}};
}

Json to_json(const SchemeReport& r) {
  Json j{{"pass", r.pass},
         {"depth", r.depth},
         {"width", r.width},
         {"nodes_checked", r.nodes_checked},
         {"pairs_checked", r.pairs_checked}};
  if (r.violation)
    j["violation"] = Json{{"kind", r.violation->kind},
                          {"s", to_json(r.violation->s)},
                          {"t", to_json(r.violation->t)},
                          {"detail", r.violation->detail}};
  return j;
}

Json to_json(const BranchPoint& p) {
  return Json{{"branch", to_json(p.branch)}, {"approx", p.approx}, {"error", p.error}, {"collapsed", p.collapsed}};
}

Json to_json(const SequenceWindow& x) {
  Json values = Json::array();
  for (std::size_t slot = 0; slot < x.size(); ++slot)
    values.push_back(Json::array({index_to_json(x.domain(), x.index_at(slot)), x.values()[slot]}));
  return Json{{"domain", to_string(x.domain())}, {"bound", x.bound()}, {"values", std::move(values)}};
}

Json to_json(const RealizedSequence& y) {
  Json j{{"kind", to_string(y.kind)},
         {"scheme", to_json(y.scheme)},
         {"domain", to_string(y.window.domain())},
         {"bound", y.bound()},
         {"resolution_depth", y.resolution_depth},
         {"max_error", y.max_error},
         {"base_point", y.base_point},
         {"in_A_empty", y.in_a_empty}};
  if (y.tree) j["D"] = to_json(y.tree->d());
  // Hindman windows are mostly the base point; list only the other values.
  Json values = Json::array();
  for (std::size_t slot = 0; slot < y.window.size(); ++slot) {
    const double v = y.window.values()[slot];
    if (y.kind == RealizationKind::Hindman && v == y.base_point) continue;
    values.push_back(Json::array({index_to_json(y.window.domain(), y.window.index_at(slot)), v}));
  }
  j["default_value"] = y.kind == RealizationKind::Hindman ? Json(y.base_point) : Json(nullptr);
  j["values"] = std::move(values);
  return j;
}

Json to_json(const Claim1Result& c) {
  return Json{{"branch", to_json(c.branch)}, {"witness", to_json(c.witness)}, {"vacuous_eps", c.vacuous_eps}};
}

Json to_json(const DescentCertificate& c) {
  return Json{{"s", to_json(c.s)},         {"F", to_json(c.f)},       {"n", c.n},
              {"K", to_json(c.k)},         {"pivot", c.pivot},        {"tie_broken", c.tie_broken},
              {"verified", c.verified},    {"checked", c.checked}};
}

Json to_json(const Claim3Result& c) {
  Json j{{"eta", c.eta}, {"status", to_string(c.status)}, {"accepted", c.accepted()}};
  if (c.status == Claim3Result::Status::Unconstrained) {
    j["bounds"] = to_json(c.bounds);
    return j;
  }
  j["witness"] = to_json(*c.witness);
  if (c.escape) j["escape_index"] = index_to_json(c.domain, *c.escape);
  Json descents = Json::array();
  for (const auto& d : c.descents) descents.push_back(to_json(d));
  j["descents"] = std::move(descents);
  j["prefix"] = to_json(c.prefix);
  j["ball"] = Json{{"center", c.ball.center}, {"radius", c.ball.radius}};
  j["distance"] = c.distance;
  j["allowance"] = c.allowance;
  j["consistent"] = c.consistent;
  return j;
}

GenSet gen_set_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("generator set must be a JSON array");
  std::vector<Nat> v;
  for (const auto& e : j) {
    if (!e.is_number_unsigned() && !(e.is_number_integer() && e.get<long long>() >= 0))
      throw DomainError("generator set entries must be naturals");
    v.push_back(e.get<Nat>());
  }
  GenSet g(v);
  if (g.size() != v.size() || !std::is_sorted(v.begin(), v.end()))
    throw DomainError("generator set must be strictly increasing");
  return g;
}

TreeSeq tree_seq_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("sequence must be a JSON array");
  TreeSeq s;
  for (const auto& e : j) {
    if (!e.is_number_integer() || e.get<long long>() < 0) throw DomainError("sequence entries must be naturals");
    s.entries.push_back(e.get<Nat>());
  }
  return s;
}

Index index_from_json(IndexDomain d, const Json& j) {
  if (d == IndexDomain::Nat) {
    if (!j.is_number_integer() || j.get<long long>() < 0) throw DomainError("index must be a natural");
    return j.get<Nat>();
  }
  if (!j.is_array() || j.size() != 2) throw DomainError("pair index must be a 2-array");
  const Nat i = j[0].get<Nat>(), k = j[1].get<Nat>();
  if (i >= k) throw DomainError("pair index must satisfy i<j");
  return pair_index(i, k);
}

SouslinScheme scheme_from_json(const Json& j) {
  const std::string type = require(j, "type").get<std::string>();
  const Json params = j.contains("params") ? j.at("params") : Json::object();
  if (type == "singleton") return SouslinScheme::singleton(require(params, "c").get<double>());
  if (type == "finite") return SouslinScheme::finite_set(require(params, "points").get<std::vector<double>>());
  if (type == "cantor") return SouslinScheme::cantor_middle_thirds();
  if (type == "rationals") return SouslinScheme::rationals_in_unit_interval();
  if (type == "table") {
    // accepted at top level or under params
    const Json& src = params.contains("entries") ? params : j;
    std::vector<TableEntry> entries;
    for (const auto& e : require(src, "entries"))
      entries.push_back(TableEntry{tree_seq_from_json(require(e, "s")), require(e, "lo").get<double>(),
                                   require(e, "hi").get<double>()});
    return SouslinScheme::table(require(src, "depth").get<std::size_t>(), require(src, "width").get<std::size_t>(),
                                entries);
  }
  throw DomainError("unknown scheme type '" + type + "'");
}

SequenceWindow sequence_from_json(const Json& j) {
  const IndexDomain d = parse_domain(require(j, "domain").get<std::string>());
  const Nat bound = require(j, "bound").get<Nat>();
  SequenceWindow x(d, bound);
  std::vector<bool> seen(x.size(), false);
  const bool has_default = j.contains("default_value") && !j.at("default_value").is_null();
  if (has_default) {
    const double v = j.at("default_value").get<double>();
    for (std::size_t slot = 0; slot < x.size(); ++slot) {
      x.set(x.index_at(slot), v);
      seen[slot] = true;
    }
  }
  for (const auto& e : require(j, "values")) {
    if (!e.is_array() || e.size() != 2) throw DomainError("sequence values must be [index, value] pairs");
    const Index s = index_from_json(d, e[0]);
    if (!x.contains(s)) throw DomainError("sequence index " + format_index(d, s) + " outside the declared bound");
    x.set(s, e[1].get<double>());
    seen[x.slot_of(s)] = true;
  }
  for (std::size_t slot = 0; slot < x.size(); ++slot)
    if (!seen[slot]) throw DomainError("sequence is not total below its bound: missing " + format_index(d, x.index_at(slot)));
  return x;
}

LimitWitness limit_witness_from_json(const Json& j) {
  LimitWitness w;
  w.eta = require(j, "eta").get<double>();
  w.f = gen_set_from_json(require(j, "F"));
  for (const auto& t : require(j, "tails"))
    w.tails.push_back(Tail{require(t, "eps").get<double>(), gen_set_from_json(require(t, "K")), 0});
  return w;
}

SouslinScheme parse_scheme_spec(const std::string& spec) {
  if (spec == "cantor") return SouslinScheme::cantor_middle_thirds();
  if (spec == "rationals") return SouslinScheme::rationals_in_unit_interval();
  if (spec.rfind("singleton:", 0) == 0) {
    const auto v = split_doubles(spec.substr(10));
    if (v.size() != 1) throw DomainError("singleton scheme takes exactly one point");
    return SouslinScheme::singleton(v[0]);
  }
  if (spec.rfind("finite:", 0) == 0) return SouslinScheme::finite_set(split_doubles(spec.substr(7)));
  return scheme_from_json(read_json_file(spec));
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot open '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    throw DomainError("malformed JSON in '" + path + "': " + e.what());
  }
}

void write_json_file(const std::string& path, const Json& j) {
  std::ofstream out(path);
  if (!out) throw DomainError("cannot write '" + path + "'");
  out << j.dump(2) << '\n';
}

}  // namespace ideal_lab
