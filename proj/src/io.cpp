#include "groupfair/io.hpp"

#include <fstream>
#include <numeric>
#include <sstream>

namespace groupfair {

namespace {

struct Rational {
  Utility num = 0;
  Utility den = 1;
};

Rational parse_value(const Json& v, const std::string& where) {
  if (v.is_number_integer()) return {v.get<Utility>(), 1};
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    const auto slash = s.find('/');
    try {
      size_t used = 0;
      Rational r;
      if (slash == std::string::npos) {
        r.num = std::stoll(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
      } else {
        const auto p = s.substr(0, slash), q = s.substr(slash + 1);
        r.num = std::stoll(p, &used);
        if (used != p.size()) throw std::invalid_argument(s);
        r.den = std::stoll(q, &used);
        if (used != q.size()) throw std::invalid_argument(s);
      }
      if (r.den <= 0) throw DataError(where + ": denominator must be positive");
      return r;
    } catch (const std::logic_error&) {
      throw DataError(where + ": cannot parse value \"" + s + "\"");
    }
  }
  throw DataError(where + ": values must be integers or \"p/q\" strings");
}

std::vector<Utility> scale(const std::vector<Rational>& vals, const std::string& where) {
  Utility l = 1;
  for (const auto& r : vals) {
    l = std::lcm(l, r.den);
    if (l > (Utility{1} << 40)) throw DataError(where + ": denominators too large");
  }
  std::vector<Utility> out;
  out.reserve(vals.size());
  for (const auto& r : vals) {
    Utility x;
    if (__builtin_mul_overflow(r.num, l / r.den, &x)) throw DataError(where + ": scaled value overflows");
    out.push_back(x);
  }
  return out;
}

const Json& field(const Json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw DataError(where + ": missing field \"" + key + "\"");
  return obj.at(key);
}

Bundle bundle_from_json(const Json& j, int num_goods, const std::string& where) {
  if (!j.is_array()) throw DataError(where + ": bundle must be a list of goods");
  Bundle b = 0;
  for (const auto& g : j) {
    if (!g.is_number_integer()) throw DataError(where + ": goods must be integers");
    const int x = g.get<int>();
    if (x < 0 || x >= num_goods) throw DataError(where + ": good " + std::to_string(x) + " out of range");
    if (contains(b, x)) throw DataError(where + ": good " + std::to_string(x) + " listed twice");
    b |= good_bit(x);
  }
  return b;
}

Json bundle_json(Bundle b) { return Json(bundle_goods(b)); }

const char* notion_key(Notion::Tag t) {
  switch (t) {
    case Notion::Tag::ef: return "ef";
    case Notion::Tag::efc: return "efc";
    case Notion::Tag::efx: return "efx";
    case Notion::Tag::efx0: return "efx0";
    case Notion::Tag::prop: return "prop";
  }
  return "?";
}

}  // namespace

Json to_json(const Instance& inst) {
  Json doc;
  doc["m"] = inst.num_goods;
  Json agents = Json::array();
  for (int a = 0; a < inst.num_agents(); ++a) {
    const auto& v = inst.agents[a];
    Json ja;
    ja["id"] = a;
    ja["kind"] = to_string(v.kind());
    if (v.is_additive()) {
      ja["values"] = std::vector<Utility>(v.good_values().begin(), v.good_values().end());
    } else {
      Json table = Json::object();
      const auto entries = v.table_entries();
      for (size_t s = 0; s < entries.size(); ++s) {
        if (entries[s] != Valuation::kMissing) table[std::to_string(s)] = entries[s];
      }
      ja["table"] = std::move(table);
    }
    agents.push_back(std::move(ja));
  }
  doc["agents"] = std::move(agents);
  if (inst.has_fixed_groups()) {
    doc["groups"]["fixed"] = inst.fixed().members;
  } else {
    doc["groups"]["variable"] = inst.variable().sizes;
  }
  return doc;
}

Instance instance_from_json(const Json& doc) {
  if (!doc.is_object()) throw DataError("instance document must be an object");
  const auto& jm = field(doc, "m", "instance");
  if (!jm.is_number_integer()) throw DataError("instance: m must be an integer");
  Instance inst;
  inst.num_goods = jm.get<int>();
  if (inst.num_goods < 0 || inst.num_goods > kMaxGoods) {
    throw DataError("instance: m must lie in 0..32");
  }
  const auto& agents = field(doc, "agents", "instance");
  if (!agents.is_array()) throw DataError("instance: agents must be a list");
  const int n = static_cast<int>(agents.size());
  std::vector<std::optional<Valuation>> slots(n);
  for (int i = 0; i < n; ++i) {
    const auto& ja = agents[i];
    const std::string where = "agent entry " + std::to_string(i);
    int id = i;
    if (ja.is_object() && ja.contains("id")) {
      if (!ja["id"].is_number_integer()) throw DataError(where + ": id must be an integer");
      id = ja["id"].get<int>();
    }
    if (id < 0 || id >= n) throw DataError(where + ": id " + std::to_string(id) + " out of range");
    if (slots[id]) throw DataError(where + ": duplicate id " + std::to_string(id));
    const auto& jk = field(ja, "kind", where);
    const std::string kind = jk.is_string() ? jk.get<std::string>() : "";
    if (kind == "binary" || kind == "additive") {
      const auto& jv = field(ja, "values", where);
      if (!jv.is_array()) throw DataError(where + ": values must be a list");
      if (static_cast<int>(jv.size()) != inst.num_goods) {
        throw DataError(where + ": expected " + std::to_string(inst.num_goods) + " values, got " +
                        std::to_string(jv.size()));
      }
      std::vector<Rational> vals;
      for (const auto& x : jv) vals.push_back(parse_value(x, where));
      auto scaled = scale(vals, where);
      slots[id] = kind == "binary" ? Valuation::binary(std::move(scaled)) : Valuation::additive(std::move(scaled));
    } else if (kind == "table") {
      if (inst.num_goods > kMaxTableGoods) throw DataError(where + ": table valuations support at most 24 goods");
      const auto& jt = field(ja, "table", where);
      if (!jt.is_object()) throw DataError(where + ": table must map bitmask strings to values");
      const size_t size = size_t{1} << inst.num_goods;
      std::vector<Rational> vals(size, Rational{Valuation::kMissing, 1});
      std::vector<char> present(size, 0);
      for (const auto& [key, val] : jt.items()) {
        size_t used = 0;
        unsigned long long mask = 0;
        try {
          mask = std::stoull(key, &used);
        } catch (const std::logic_error&) {
          used = 0;
        }
        if (used == 0 || used != key.size() || mask >= size) {
          throw DataError(where + ": invalid table key \"" + key + "\"");
        }
        vals[mask] = parse_value(val, where);
        present[mask] = 1;
      }
      Utility l = 1;
      for (size_t s = 0; s < size; ++s) {
        if (present[s]) l = std::lcm(l, vals[s].den);
      }
      std::vector<Utility> entries(size, Valuation::kMissing);
      for (size_t s = 0; s < size; ++s) {
        if (!present[s]) continue;
        if (__builtin_mul_overflow(vals[s].num, l / vals[s].den, &entries[s])) {
          throw DataError(where + ": scaled value overflows");
        }
      }
      slots[id] = Valuation::table(inst.num_goods, std::move(entries));
    } else {
      throw DataError(where + ": kind must be binary, additive or table");
    }
  }
  for (auto& s : slots) inst.agents.push_back(std::move(*s));

  const auto& jg = field(doc, "groups", "instance");
  if (jg.is_object() && jg.contains("fixed")) {
    FixedGroups fg;
    for (const auto& grp : jg["fixed"]) {
      if (!grp.is_array()) throw DataError("instance: fixed groups must be lists of agent ids");
      std::vector<AgentId> ids;
      for (const auto& id : grp) {
        if (!id.is_number_integer()) throw DataError("instance: agent ids must be integers");
        ids.push_back(id.get<int>());
      }
      fg.members.push_back(std::move(ids));
    }
    inst.groups = std::move(fg);
  } else if (jg.is_object() && jg.contains("variable")) {
    VariableGroups vg;
    for (const auto& s : jg["variable"]) {
      if (!s.is_number_integer()) throw DataError("instance: group sizes must be integers");
      vg.sizes.push_back(s.get<int>());
    }
    inst.groups = std::move(vg);
  } else {
    throw DataError("instance: groups must contain \"fixed\" or \"variable\"");
  }
  require_valid(inst);
  return inst;
}

Json to_json(const Allocation& alloc) {
  Json out = Json::array();
  for (Bundle b : alloc.bundles) out.push_back(bundle_json(b));
  return out;
}

Allocation allocation_from_json(const Json& doc, int num_goods) {
  const Json& arr = doc.is_object() ? field(doc, "bundles", "allocation") : doc;
  if (!arr.is_array()) throw DataError("allocation: bundles must be a list");
  Allocation alloc;
  for (size_t i = 0; i < arr.size(); ++i) {
    alloc.bundles.push_back(bundle_from_json(arr[i], num_goods, "bundle " + std::to_string(i)));
  }
  auto violations = validate(alloc, num_goods);
  if (!violations.empty()) throw DataError("allocation: " + describe(violations.front()));
  return alloc;
}

Json to_json(const AgentPartition& part) { return part.members(); }

AgentPartition partition_from_json(const Json& doc, int num_groups) {
  if (!doc.is_array() || static_cast<int>(doc.size()) != num_groups) {
    throw DataError("partition: expected " + std::to_string(num_groups) + " lists of agent ids");
  }
  int n = 0;
  for (const auto& grp : doc) n += static_cast<int>(grp.size());
  AgentPartition part{std::vector<int>(n, -1), num_groups};
  for (int g = 0; g < num_groups; ++g) {
    for (const auto& id : doc[g]) {
      const int a = id.is_number_integer() ? id.get<int>() : -1;
      if (a < 0 || a >= n || part.group_of[a] != -1) throw DataError("partition: invalid or repeated agent id");
      part.group_of[a] = g;
    }
  }
  return part;
}

Json to_json(const FairnessReport& report) {
  Json out;
  out["overall"] = report.overall;
  Json agents = Json::array();
  for (const auto& v : report.agents) {
    Json j;
    j["agent"] = v.agent;
    j["group"] = v.group;
    j["fair"] = v.fair;
    if (v.envied_group) j["envied_group"] = *v.envied_group;
    if (v.good) j["good"] = *v.good;
    agents.push_back(std::move(j));
  }
  out["agents"] = std::move(agents);
  return out;
}

Json to_json(const ReductionTrace& trace) {
  Json out = Json::array();
  for (const auto& s : trace.steps) {
    Json j;
    j["rule"] = to_string(s.rule);
    if (s.undesired) {
      j["agent"] = s.undesired->first;
      j["undesire"] = s.undesired->second;
    } else {
      j["to_first"] = bundle_json(s.to_first);
      j["to_second"] = bundle_json(s.to_second);
    }
    out.push_back(std::move(j));
  }
  return out;
}

Json to_json(const SearchConstraints& cons) {
  Json out;
  out["notion"] = notion_key(cons.notion.tag);
  if (cons.notion.tag == Notion::Tag::efc || cons.notion.tag == Notion::Tag::prop) out["param"] = cons.notion.param;
  out["balanced_goods"] = cons.balanced_allocation;
  out["balanced_agents"] = cons.balanced_partition;
  if (cons.fixed_partition) out["partition"] = to_json(*cons.fixed_partition);
  return out;
}

SearchConstraints constraints_from_json(const Json& doc) {
  SearchConstraints cons;
  if (!doc.is_object()) throw DataError("search constraints must be an object");
  const std::string name = doc.value("notion", std::string("ef1"));
  cons.notion = parse_notion(name, doc.value("param", 1));
  cons.balanced_allocation = doc.value("balanced_goods", false);
  cons.balanced_partition = doc.value("balanced_agents", false);
  if (doc.contains("partition")) {
    cons.fixed_partition = partition_from_json(doc["partition"], static_cast<int>(doc["partition"].size()));
  }
  return cons;
}

Json to_json(const CorpusEntry& entry) {
  Json out;
  out["name"] = entry.name;
  out["description"] = entry.description;
  out["instance"] = to_json(entry.instance);
  out["search"] = to_json(entry.constraints);
  Json exp;
  switch (entry.expected.kind) {
    case Expectation::Kind::exhausted:
      exp["kind"] = "exhausted";
      exp["examined"] = entry.expected.examined;
      break;
    case Expectation::Kind::found: exp["kind"] = "found"; break;
    case Expectation::Kind::all_satisfy:
      exp["kind"] = "all_satisfy";
      exp["property"] = entry.expected.property_name;
      break;
  }
  out["expected"] = std::move(exp);
  return out;
}

Json allocation_document(const Allocation& alloc, const std::optional<AgentPartition>& part,
                         const Notion& notion, const FairnessReport& report) {
  Json out;
  out["bundles"] = to_json(alloc);
  if (part) out["partition"] = to_json(*part);
  out["notion"] = to_string(notion);
  out["fairness"] = to_json(report);
  return out;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DataError("cannot read " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DataError(path + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw DataError("cannot write " + path);
  out << text;
  if (!out) throw DataError("write failed for " + path);
}

}  // namespace groupfair
