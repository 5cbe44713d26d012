#include "iwasawa/config.hpp"

#include <algorithm>

#include "iwasawa/error.hpp"

namespace iwasawa::config {

void require_keys(const Json& obj, const std::vector<std::string>& allowed, const std::string& where) {
  if (!obj.is_object()) throw ConfigError(where + ": expected an object");
  for (const auto& [key, value] : obj.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(where + ": unknown key \"" + key + "\"");
    }
  }
}

namespace {

long long as_int(const Json& v, const std::string& where) {
  if (!v.is_number_integer()) throw ConfigError(where + ": expected an integer");
  return v.get<long long>();
}

int small_int(const Json& v, const std::string& where) {
  long long x = as_int(v, where);
  if (x < -(1LL << 30) || x > (1LL << 30)) throw ConfigError(where + ": integer out of range");
  return static_cast<int>(x);
}

}  // namespace

long long get_int(const Json& obj, const std::string& key, const std::string& where) {
  if (!obj.contains(key)) throw ConfigError(where + ": missing \"" + key + "\"");
  return as_int(obj.at(key), where + "." + key);
}

long long get_int(const Json& obj, const std::string& key, const std::string& where, long long fallback) {
  if (!obj.contains(key)) return fallback;
  return as_int(obj.at(key), where + "." + key);
}

std::vector<int> get_ints(const Json& obj, const std::string& key, const std::string& where,
                          std::vector<int> fallback) {
  if (!obj.contains(key)) return fallback;
  const Json& a = obj.at(key);
  if (!a.is_array()) throw ConfigError(where + "." + key + ": expected an array");
  std::vector<int> out;
  for (const auto& v : a) out.push_back(small_int(v, where + "." + key));
  return out;
}

RingPtr parse_ring(const Json& j) {
  require_keys(j, {"p", "e", "f", "N"}, "ring");
  long long p = get_int(j, "p", "ring");
  long long e = get_int(j, "e", "ring", 1);
  long long f = get_int(j, "f", "ring", 1);
  long long n = get_int(j, "N", "ring", 10);
  if (p < 2 || e < 1 || f < 1 || n < 1 || e > 9 || f > 9) throw ConfigError("ring: parameters out of range");
  try {
    return share(LocalRing::make(static_cast<std::uint64_t>(p), static_cast<int>(e), static_cast<int>(f),
                                 static_cast<int>(n)));
  } catch (const InvalidArgument& err) {
    throw ConfigError(std::string("ring: ") + err.what());
  }
}

AlgebraElt parse_polynomial(const Json& j, const RingPtr& ring, int vars) {
  if (!j.is_array()) throw ConfigError("polynomial: expected an array of terms");
  AlgebraElt h(ring, vars);
  for (const auto& t : j) {
    require_keys(t, {"exp", "coeff", "pi"}, "term");
    auto exp = get_ints(t, "exp", "term");
    if (static_cast<int>(exp.size()) != vars) throw ConfigError("term: exponent length must equal l");
    if (std::any_of(exp.begin(), exp.end(), [](int x) { return x < 0 || x > kDefaultDegreeCap; })) {
      throw ConfigError("term: exponents must lie in [0, 64]");
    }
    if (!t.contains("coeff")) throw ConfigError("term: missing \"coeff\"");
    const Json& c = t.at("coeff");
    RingElt coeff{};
    if (c.is_number_integer()) {
      coeff = ring->from_int(c.get<std::int64_t>());
    } else if (c.is_array()) {
      std::vector<std::int64_t> coords;
      for (const auto& x : c) coords.push_back(as_int(x, "term.coeff"));
      if (static_cast<int>(coords.size()) > ring->degree()) throw ConfigError("term.coeff: too many coordinates");
      coords.resize(ring->degree(), 0);
      coeff = ring->from_coords(coords);
    } else {
      throw ConfigError("term.coeff: expected an integer or coordinate array");
    }
    long long t_pi = get_int(t, "pi", "term", 0);
    if (t_pi < 0 || t_pi > ring->cap()) throw ConfigError("term.pi: out of range");
    coeff = ring->mul(coeff, ring->pow(ring->pi(), static_cast<std::uint64_t>(t_pi)));
    h.add_term(Exponent(exp.begin(), exp.end()), coeff);
  }
  return h;
}

ModulePresentation parse_module(const Json& j, const RingPtr& ring, int vars) {
  if (!j.is_object() || !j.contains("type") || !j.at("type").is_string()) {
    throw ConfigError("module: expected an object with a string \"type\"");
  }
  const std::string type = j.at("type").get<std::string>();
  if (type == "zero") {
    require_keys(j, {"type"}, "module");
    return ModulePresentation::zero(ring, vars);
  }
  if (type == "free") {
    require_keys(j, {"type", "rank"}, "module");
    long long r = get_int(j, "rank", "module", 1);
    if (r < 0 || r > 64) throw ConfigError("module.rank: out of range");
    return ModulePresentation::free(ring, vars, static_cast<int>(r));
  }
  if (type == "cyclic") {
    require_keys(j, {"type", "h"}, "module");
    if (!j.contains("h")) throw ConfigError("module: missing \"h\"");
    return ModulePresentation::cyclic(parse_polynomial(j.at("h"), ring, vars));
  }
  if (type == "elementary") {
    require_keys(j, {"type", "pi_exponents", "series", "free_rank"}, "module");
    auto exps = get_ints(j, "pi_exponents", "module");
    if (std::any_of(exps.begin(), exps.end(), [](int e) { return e < 1; })) {
      throw ConfigError("module.pi_exponents: entries must be positive");
    }
    std::vector<AlgebraElt> series;
    if (j.contains("series")) {
      if (!j.at("series").is_array()) throw ConfigError("module.series: expected an array");
      for (const auto& s : j.at("series")) series.push_back(parse_polynomial(s, ring, vars));
    }
    long long fr = get_int(j, "free_rank", "module", 0);
    if (fr < 0 || fr > 64) throw ConfigError("module.free_rank: out of range");
    return ModulePresentation::elementary(ring, vars, exps, series, static_cast<int>(fr));
  }
  if (type == "generic") {
    require_keys(j, {"type", "rank", "relations"}, "module");
    long long r = get_int(j, "rank", "module");
    if (r < 0 || r > 64) throw ConfigError("module.rank: out of range");
    ModulePresentation m = ModulePresentation::free(ring, vars, static_cast<int>(r));
    m.kind = ShortcutKind::generic;
    m.free_rank = 0;
    if (j.contains("relations")) {
      if (!j.at("relations").is_array()) throw ConfigError("module.relations: expected an array");
      for (const auto& rel : j.at("relations")) {
        if (!rel.is_array() || static_cast<long long>(rel.size()) != r) {
          throw ConfigError("module.relations: each relation needs one polynomial per generator");
        }
        std::vector<AlgebraElt> row;
        for (const auto& x : rel) row.push_back(parse_polynomial(x, ring, vars));
        m.relations.push_back(std::move(row));
      }
    }
    return m;
  }
  if (type == "sum") {
    require_keys(j, {"type", "summands"}, "module");
    if (!j.contains("summands") || !j.at("summands").is_array() || j.at("summands").empty()) {
      throw ConfigError("module.summands: expected a non-empty array");
    }
    ModulePresentation m = parse_module(j.at("summands")[0], ring, vars);
    for (std::size_t i = 1; i < j.at("summands").size(); ++i) {
      m = direct_sum(m, parse_module(j.at("summands")[i], ring, vars));
    }
    return m;
  }
  throw ConfigError("module: unknown type \"" + type + "\"");
}

IntMatrix parse_matrix(const Json& j, const std::string& where) {
  if (!j.is_array() || j.empty()) throw ConfigError(where + ": expected a non-empty matrix");
  IntMatrix m;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != j.size()) throw ConfigError(where + ": matrix must be square");
    std::vector<std::int64_t> r;
    for (const auto& x : row) r.push_back(as_int(x, where));
    m.push_back(std::move(r));
  }
  return m;
}

Json load(const std::string& text) {
  Json j;
  try {
    j = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ConfigError(std::string("config is not valid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: expected an object");
  if (!j.contains("schema") || j.at("schema") != kSchema) {
    throw ConfigError(std::string("config: \"schema\" must be \"") + kSchema + "\"");
  }
  return j;
}

}  // namespace iwasawa::config
