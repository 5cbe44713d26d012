#include "iwasawa/cli.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>
#include <thread>

#include "iwasawa/error.hpp"
#include "iwasawa/homcount.hpp"

namespace iwasawa::cli {

using config::Json;

const std::vector<std::string>& laws() {
  static const std::vector<std::string> all{"mu-f",    "mu-e",        "l0-tensor",   "l0-norm",
                                            "uniform", "growth-theorem", "hom-identity"};
  return all;
}

namespace {

using Job = std::function<VerifyReport()>;

struct CsvRow {
  int n;
  int k;
  long long valuation;
  std::string fitted_c;
  double residual;
};

struct Plan {
  std::vector<Job> jobs;
  std::vector<CsvRow> csv;  // filled by the growth job
  bool wants_csv = false;
};

Json term(std::vector<int> exp, long long coeff, int pi = 0) {
  Json t{{"exp", exp}, {"coeff", coeff}};
  if (pi) t["pi"] = pi;
  return t;
}

Json ring_json(int p, int e, int f, int n = 8) { return Json{{"p", p}, {"e", e}, {"f", f}, {"N", n}}; }

// Lambda, Lambda/(pi), Lambda/(T1), Lambda/(pi^2) + Lambda
std::vector<Json> growth_modules(int l) {
  std::vector<int> t1(l, 0);
  t1[0] = 1;
  return {Json{{"type", "free"}, {"rank", 1}}, Json{{"type", "elementary"}, {"pi_exponents", {1}}},
          Json{{"type", "cyclic"}, {"h", Json::array({term(t1, 1)})}},
          Json{{"type", "elementary"}, {"pi_exponents", {2}}, {"free_rank", 1}}};
}

}  // namespace

Json default_cases(const std::string& law, std::uint64_t seed) {
  Json cases = Json::array();
  if (law == "mu-f") {
    for (int p : {2, 3})
      for (int e = 1; e <= 2; ++e)
        for (int f = 1; f <= 2; ++f)
          for (int l = 1; l <= 2; ++l)
            for (const auto& ex : std::vector<std::vector<int>>{{1}, {2}, {1, 1}, {2, 1}})
              cases.push_back({{"ring", ring_json(p, e, f)}, {"l", l}, {"exponents", ex}});
  } else if (law == "mu-e") {
    for (int e = 1; e <= 3; ++e)
      for (int n = 1; n <= 3; ++n) cases.push_back({{"p", 3}, {"e", e}, {"f", 1}, {"n", n}, {"l", 1}});
  } else if (law == "l0-tensor") {
    const int p = 3;
    std::vector<Json> hs{
        Json::array({term({1, 0}, 1), term({0, 0}, p)}),
        Json::array({term({1, 1}, 1), term({0, 0}, p)}),
        Json::array({term({1, 0}, 1), term({0, 1}, 1), term({1, 1}, 1), term({0, 0}, 2 * p)}),
        Json::array({term({2, 0}, 1), term({0, 0}, p)}),
        Json::array({term({1, 0}, 1)}),
        Json::array({term({1, 1}, 1)}),
        Json::array({term({2, 1}, 1), term({0, 1}, p), term({0, 0}, p)}),
        Json::array({term({1, 0}, 1), term({0, 1}, 1), term({1, 1}, p)}),
        Json::array({term({1, 0}, 1), term({0, 0}, 1)}),
        Json::array({term({3, 0}, 1), term({1, 1}, 1), term({0, 0}, p)}),
    };
    for (auto [e, f] : {std::pair{1, 2}, {2, 1}, {2, 2}})
      for (const auto& h : hs) cases.push_back({{"p", p}, {"e", e}, {"f", f}, {"l", 2}, {"h", h}});
  } else if (law == "l0-norm") {
    std::vector<Json> hs{Json::array({term({1, 0}, 1), term({0, 0}, 1, 1)}),
                         Json::array({term({1, 1}, 1), term({0, 0}, 1, 1)}),
                         Json::array({term({2, 0}, 1), term({0, 0}, 1, 1)})};
    for (auto [e, f] : {std::pair{2, 1}, {1, 2}, {2, 2}})
      for (const auto& h : hs) {
        cases.push_back({{"ring", ring_json(3, e, f, 20)}, {"l", 2}, {"h", h}, {"n", {1, 2, 3, 4}}, {"max_dim", 8192}});
      }
  } else if (law == "uniform") {
    for (int l = 1; l <= 2; ++l) {
      Json lattice = Json::array();
      for (int i = 0; i < l; ++i) {
        std::vector<int> row(l, 0);
        row[i] = 2;
        lattice.push_back(row);
      }
      for (const auto& m : growth_modules(l)) {
        cases.push_back({{"ring", ring_json(2, 1, 1)}, {"l", l}, {"module", m}, {"lattice", lattice}, {"k", {1, 2, 3}}});
      }
    }
  } else if (law == "growth-theorem") {
    for (int f = 1; f <= 2; ++f)
      for (int p : {2, 3})
        for (int l = 1; l <= 2; ++l)
          for (const auto& m : growth_modules(l))
            cases.push_back({{"ring", ring_json(p, 1, f)}, {"l", l}, {"module", m}, {"k", {1, 2, 3}}});
  } else if (law == "hom-identity") {
    std::mt19937_64 rng(seed);
    for (int i = 0; i < 100; ++i) {
      std::vector<int> xs;
      int m = static_cast<int>(rng() % 4);
      for (int j = 0; j < m; ++j) xs.push_back(1 + static_cast<int>(rng() % 4));
      cases.push_back({{"p", rng() % 2 ? 2 : 3},
                       {"e", 1 + i % 2},
                       {"f", 1 + (i / 2) % 2},
                       {"d", 1 + static_cast<int>(rng() % 3)},
                       {"k", 1 + static_cast<int>(rng() % 6)},
                       {"group", xs},
                       {"c_rank", 1 + static_cast<int>(rng() % 2)}});
    }
  } else {
    throw ConfigError("unknown law \"" + law + "\"");
  }
  return cases;
}

namespace {

Check info(std::string invariant, std::string method, Rational value) {
  Check c;
  c.invariant = std::move(invariant);
  c.method = std::move(method);
  c.value = value;
  return c;
}

Check compare(std::string invariant, std::string method, Rational value, Rational expected) {
  Check c = info(std::move(invariant), std::move(method), value);
  c.expected = expected;
  c.pass = value == expected;
  return c;
}

VerifyReport run_guarded(std::string law, std::string id, const std::function<void(VerifyReport&)>& body) {
  VerifyReport r;
  r.law = std::move(law);
  r.case_id = std::move(id);
  try {
    body(r);
  } catch (const ResourceCapError& e) {
    r.error = e.what();
    r.capped = true;
  } catch (const Error& e) {
    r.error = e.what();
  }
  return r;
}

int vars_of(const Json& c, const std::string& where) {
  long long l = config::get_int(c, "l", where, 1);
  if (l < 1 || l > 4) throw ConfigError(where + ".l: must be between 1 and 4");
  return static_cast<int>(l);
}

std::vector<int> positive_ints(const Json& c, const std::string& key, const std::string& where,
                               std::vector<int> fallback, int lo = 1) {
  auto v = config::get_ints(c, key, where, std::move(fallback));
  for (int x : v) {
    if (x < lo) throw ConfigError(where + "." + key + ": entries must be >= " + std::to_string(lo));
  }
  return v;
}

void check_ks(const std::vector<int>& ks, const LocalRing& r, const std::string& where) {
  for (int k : ks) {
    if (k > r.cap()) throw ConfigError(where + ".k: truncation level exceeds the ring precision");
  }
}

DivisibleSpec parse_spec(const Json& c, const std::string& where) {
  DivisibleSpec s;
  long long p = config::get_int(c, "p", where);
  if (p < 2 || p > (1 << 20)) throw ConfigError(where + ".p: out of range");
  s.p = static_cast<std::uint64_t>(p);
  s.e = static_cast<int>(config::get_int(c, "e", where, 1));
  s.f = static_cast<int>(config::get_int(c, "f", where, 1));
  s.d = static_cast<int>(config::get_int(c, "d", where, 1));
  s.k = static_cast<int>(config::get_int(c, "k", where, 1));
  try {
    validate(s);
  } catch (const InvalidArgument& e) {
    throw ConfigError(where + ": " + e.what());
  }
  if (s.e > 9 || s.f > 9 || s.k > 64 || s.d > 64) throw ConfigError(where + ": parameters out of range");
  return s;
}

FiniteAbelianPGroup parse_group(const Json& c, const std::string& where) {
  auto xs = positive_ints(c, "group", where, {});
  for (int x : xs) {
    if (x > 30) throw ConfigError(where + ".group: exponent too large");
  }
  return FiniteAbelianPGroup(xs);
}

std::string spec_id(const FiniteAbelianPGroup& y, const DivisibleSpec& s) {
  std::ostringstream o;
  o << "p=" << s.p << ",e=" << s.e << ",f=" << s.f << ",d=" << s.d << ",k=" << s.k << ",Y=[";
  for (std::size_t i = 0; i < y.exponents.size(); ++i) o << (i ? "," : "") << y.exponents[i];
  o << "]";
  return o.str();
}

void hom_checks(VerifyReport& r, const FiniteAbelianPGroup& y, const DivisibleSpec& s, int c_rank,
                std::uint64_t seed) {
  DivisibleSpec one = s;
  one.d = 1;
  long long hv = hom_valuation(y, s);
  long long tq = tensor_quotient_valuation(y, one);
  r.checks.push_back(compare("v_p|Hom(Y, A[pi^k])|", "formula", Rational(hv), Rational(s.d * tq)));
  double bits = static_cast<double>(hv) * std::log2(static_cast<double>(s.p));
  double ring_bits = static_cast<double>(s.f) * s.k * std::log2(static_cast<double>(s.p));
  if (bits <= 16.0 && ring_bits <= 20.0) {
    r.checks.push_back(compare("v_p|Hom(Y, A[pi^k])|", "brute force", Rational(hom_brute_force(y, s)), Rational(hv)));
  }
  DefectReport d = defect_bound_check(y, c_rank, s, seed);
  Check c = info("truncation defect", d.exhaustive ? "exhaustive" : "sampled", Rational(d.max_defect));
  c.expected = Rational(d.bound);
  c.pass = d.pass;
  c.certificate.push_back("subgroups=" + std::to_string(d.subgroups));
  c.certificate.push_back("bound=f*d*k*c_rank=" + std::to_string(d.bound));
  r.checks.push_back(std::move(c));
}

Job verify_job(const std::string& law, const Json& c, const std::string& where, std::uint64_t seed) {
  if (law == "mu-f") {
    config::require_keys(c, {"ring", "l", "exponents"}, where);
    if (!c.contains("ring")) throw ConfigError(where + ": missing \"ring\"");
    auto ring = config::parse_ring(c.at("ring"));
    int l = vars_of(c, where);
    auto ex = positive_ints(c, "exponents", where, {});
    for (int x : ex) {
      if (x + 2 > ring->cap()) throw ConfigError(where + ".exponents: exponent too large for the ring precision");
    }
    return [ring, l, ex] {
      VerifyReport a = verify_mu_f_scaling(ring, l, ex);
      VerifyReport b = verify_lemma22(ring, l, ex);
      for (auto& ch : b.checks) a.checks.push_back(std::move(ch));
      if (a.error.empty()) a.error = b.error;
      a.capped = a.capped || b.capped;
      return a;
    };
  }
  if (law == "mu-e") {
    config::require_keys(c, {"p", "e", "f", "n", "l", "asymptotic"}, where);
    long long p = config::get_int(c, "p", where);
    long long e = config::get_int(c, "e", where, 1), f = config::get_int(c, "f", where, 1);
    long long n = config::get_int(c, "n", where);
    int l = vars_of(c, where);
    bool asym = true;
    if (c.contains("asymptotic")) {
      if (!c.at("asymptotic").is_boolean()) throw ConfigError(where + ".asymptotic: expected a boolean");
      asym = c.at("asymptotic").get<bool>();
    }
    if (!is_prime(static_cast<std::uint64_t>(std::max(p, 0LL))) || e < 1 || e > 9 || f < 1 || f > 9 || n < 1 ||
        n > 12) {
      throw ConfigError(where + ": parameters out of range");
    }
    return [=] {
      return verify_mu_e_scaling(static_cast<std::uint64_t>(p), static_cast<int>(e), static_cast<int>(f),
                                 static_cast<int>(n), l, asym);
    };
  }
  if (law == "l0-tensor") {
    config::require_keys(c, {"p", "e", "f", "l", "h", "bound"}, where);
    long long p = config::get_int(c, "p", where);
    long long e = config::get_int(c, "e", where, 1), f = config::get_int(c, "f", where, 2);
    auto ring = config::parse_ring(Json{{"p", p}, {"e", e}, {"f", f}, {"N", 10}});
    auto base = share(ring->base());
    int l = vars_of(c, where);
    if (!c.contains("h")) throw ConfigError(where + ": missing \"h\"");
    auto h = config::parse_polynomial(c.at("h"), base, l);
    int bound = static_cast<int>(config::get_int(c, "bound", where, kDefaultTagBound));
    if (bound < 1 || bound > 10) throw ConfigError(where + ".bound: out of range");
    return [h, ring, bound] { return verify_l0_tensor(h, ring, bound); };
  }
  if (law == "l0-norm") {
    config::require_keys(c, {"ring", "l", "h", "n", "bound", "max_dim"}, where);
    if (!c.contains("ring")) throw ConfigError(where + ": missing \"ring\"");
    auto ring = config::parse_ring(c.at("ring"));
    int l = vars_of(c, where);
    if (!c.contains("h")) throw ConfigError(where + ": missing \"h\"");
    auto h = config::parse_polynomial(c.at("h"), ring, l);
    auto ns = positive_ints(c, "n", where, {});
    int bound = static_cast<int>(config::get_int(c, "bound", where, kDefaultTagBound));
    if (bound < 1 || bound > 10) throw ConfigError(where + ".bound: out of range");
    long long cap = config::get_int(c, "max_dim", where, 0);
    if (cap < 0 || cap > (1 << 24)) throw ConfigError(where + ".max_dim: out of range");
    return [h, ns, bound, cap] { return verify_l0_norm(h, ns, bound, static_cast<int>(cap)); };
  }
  if (law == "uniform") {
    config::require_keys(c, {"ring", "l", "module", "lattice", "k"}, where);
    if (!c.contains("ring") || !c.contains("module") || !c.contains("lattice")) {
      throw ConfigError(where + ": ring, module and lattice are required");
    }
    auto ring = config::parse_ring(c.at("ring"));
    int l = vars_of(c, where);
    auto m = config::parse_module(c.at("module"), ring, l);
    auto lattice = config::parse_matrix(c.at("lattice"), where + ".lattice");
    if (static_cast<int>(lattice.size()) != l) throw ConfigError(where + ".lattice: must be l x l");
    auto ks = positive_ints(c, "k", where, {1, 2, 3});
    check_ks(ks, *ring, where);
    return [m, lattice, ks] { return verify_uniform_scaling(m, lattice, ks); };
  }
  if (law == "growth-theorem") {
    config::require_keys(c, {"ring", "l", "module", "k", "n"}, where);
    if (!c.contains("ring") || !c.contains("module")) throw ConfigError(where + ": ring and module are required");
    auto ring = config::parse_ring(c.at("ring"));
    int l = vars_of(c, where);
    auto m = config::parse_module(c.at("module"), ring, l);
    auto ks = positive_ints(c, "k", where, {1, 2, 3});
    check_ks(ks, *ring, where);
    auto ns = positive_ints(c, "n", where, {}, 0);
    return [m, ks, ns] {
      std::vector<int> levels = ns;
      if (levels.empty()) {
        VerifyReport r;
        try {
          levels = default_levels(m);
        } catch (const ResourceCapError& e) {
          r.law = "growth-theorem";
          r.error = e.what();
          r.capped = true;
          return r;
        }
      }
      return verify_growth_theorem(m, ks, levels);
    };
  }
  if (law == "hom-identity") {
    config::require_keys(c, {"p", "e", "f", "d", "k", "group", "c_rank"}, where);
    auto s = parse_spec(c, where);
    auto y = parse_group(c, where);
    long long c_rank = config::get_int(c, "c_rank", where, 1);
    if (c_rank < 0 || c_rank > 4) throw ConfigError(where + ".c_rank: out of range");
    return [=] {
      return run_guarded("hom-identity", spec_id(y, s),
                         [&](VerifyReport& r) { hom_checks(r, y, s, static_cast<int>(c_rank), seed); });
    };
  }
  throw ConfigError("unknown law \"" + law + "\"");
}

struct Params {
  std::vector<int> ks;
  std::vector<int> ns;
  int bound = kDefaultTagBound;
};

Params parse_params(const Json& root) {
  Params p;
  if (!root.contains("params")) return p;
  const Json& j = root.at("params");
  config::require_keys(j, {"k", "n", "bound", "seed", "max_dim"}, "params");
  p.ks = positive_ints(j, "k", "params", {});
  p.ns = positive_ints(j, "n", "params", {}, 0);
  p.bound = static_cast<int>(config::get_int(j, "bound", "params", kDefaultTagBound));
  if (p.bound < 1 || p.bound > 10) throw ConfigError("params.bound: out of range");
  return p;
}

std::string ring_label(const LocalRing& r) {
  return "p=" + std::to_string(r.p()) + ",e=" + std::to_string(r.e()) + ",f=" + std::to_string(r.f());
}

Plan plan_invariants(const Json& root) {
  config::require_keys(root, {"schema", "ring", "l", "module", "params", "out"}, "config");
  if (!root.contains("ring") || !root.contains("module")) throw ConfigError("config: ring and module are required");
  auto ring = config::parse_ring(root.at("ring"));
  int l = vars_of(root, "config");
  auto m = config::parse_module(root.at("module"), ring, l);
  Params prm = parse_params(root);
  auto ks = prm.ks.empty() ? std::vector<int>{1, 2, 3} : prm.ks;
  check_ks(ks, *ring, "params");
  Plan plan;
  plan.jobs.push_back([=] {
    return run_guarded("invariants", ring_label(*ring) + ",l=" + std::to_string(l), [&](VerifyReport& r) {
      auto sym = symbolic_invariants(m);
      if (sym) {
        r.checks.push_back(info("rank", "symbolic", Rational(sym->rank)));
        r.checks.push_back(info("mu", "symbolic", Rational(sym->mu())));
      }
      auto est = mu_asymptotic(m, ks, prm.ns);
      Check rank = info("rank", "asymptotic", Rational(est.rank));
      if (sym) {
        rank.expected = Rational(sym->rank);
        rank.pass = est.rank == sym->rank;
      }
      r.checks.push_back(rank);
      for (int k : est.ks) {
        Check c = info("mu^(" + std::to_string(k) + ")", "asymptotic", Rational(est.mu_k.at(k)));
        c.residuals = est.fits.at(k).residuals;
        if (sym) {
          c.expected = Rational(sym->mu_k(k));
          c.pass = est.mu_k.at(k) == sym->mu_k(k);
        }
        r.checks.push_back(std::move(c));
      }
      Check sat = info("saturated", "asymptotic", Rational(est.saturated ? 1 : 0));
      r.checks.push_back(sat);
      if (m.kind == ShortcutKind::cyclic && !m.cyclic_generator->is_zero()) {
        auto d = l0_direct(*m.cyclic_generator, prm.bound);
        Check c = info("l0", "direct", Rational(d.l0));
        for (const auto& [t, v] : d.certificate) c.certificate.push_back(format_tag(t) + ":" + std::to_string(v));
        r.checks.push_back(std::move(c));
      }
    });
  });
  return plan;
}

std::string decimal(const Rational& r) {
  std::ostringstream o;
  o << std::setprecision(12) << boost::rational_cast<double>(r);
  return o.str();
}

Plan plan_growth(const Json& root, std::vector<CsvRow>* sink) {
  config::require_keys(root, {"schema", "ring", "l", "module", "params", "out"}, "config");
  if (!root.contains("ring") || !root.contains("module")) throw ConfigError("config: ring and module are required");
  auto ring = config::parse_ring(root.at("ring"));
  int l = vars_of(root, "config");
  auto m = config::parse_module(root.at("module"), ring, l);
  Params prm = parse_params(root);
  auto ks = prm.ks.empty() ? std::vector<int>{1} : prm.ks;
  check_ks(ks, *ring, "params");
  Plan plan;
  plan.wants_csv = true;
  plan.jobs.push_back([=] {
    return run_guarded("growth", ring_label(*ring) + ",l=" + std::to_string(l), [&](VerifyReport& r) {
      std::vector<int> ns = prm.ns;
      if (ns.empty()) {
        int top = std::min(max_feasible_level(m, ambient_dimension_cap()), 5);
        if (top < 0) throw ResourceCapError("level 0 exceeds the dimension cap");
        for (int n = 0; n <= top; ++n) ns.push_back(n);
      }
      auto series = growth_scans(m, ks, ns);
      auto sym = symbolic_invariants(m);
      for (std::size_t i = 0; i < ks.size(); ++i) {
        std::optional<GrowthFit> fit;
        if (series[i].points.size() >= 2) fit = fit_leading(series[i]);
        for (std::size_t j = 0; j < series[i].points.size(); ++j) {
          const auto& pt = series[i].points[j];
          sink->push_back({pt.n, pt.k, pt.valuation, fit ? decimal(fit->c) : "",
                           fit ? fit->residuals[j] : 0.0});
        }
        if (!fit) continue;
        Check c = info("leading coefficient k=" + std::to_string(ks[i]), "growth", fit->c);
        c.residuals = fit->residuals;
        c.certificate.push_back("c_raw=" + format_rational(fit->c_raw));
        if (sym) {
          c.expected = Rational(ring->f() * (sym->rank * ks[i] + sym->mu_k(ks[i])));
          c.pass = fit->rounds && Rational(fit->c_rounded) == *c.expected;
        }
        r.checks.push_back(std::move(c));
      }
    });
  });
  return plan;
}

Plan plan_l0(const Json& root) {
  config::require_keys(root, {"schema", "ring", "l", "h", "params", "out"}, "config");
  if (!root.contains("ring") || !root.contains("h")) throw ConfigError("config: ring and h are required");
  auto ring = config::parse_ring(root.at("ring"));
  int l = vars_of(root, "config");
  auto h = config::parse_polynomial(root.at("h"), ring, l);
  if (h.is_zero()) throw ConfigError("config.h: the zero series has no l0");
  Params prm = parse_params(root);
  Plan plan;
  plan.jobs.push_back([=] {
    return run_guarded("l0", h.format() + " over " + ring_label(*ring), [&](VerifyReport& r) {
      auto d = l0_direct(h, prm.bound);
      Check cd = info("l0", "direct", Rational(d.l0));
      for (const auto& [t, v] : d.certificate) cd.certificate.push_back(format_tag(t) + ":" + std::to_string(v));
      r.checks.push_back(cd);
      const long long ef = ring->degree();
      std::vector<int> ns = prm.ns;
      if (ns.empty()) {
        int top = std::min(max_feasible_level(ModulePresentation::cyclic(h), ambient_dimension_cap()), 3);
        if (top < 2) throw ResourceCapError("no two growth levels fit under the dimension cap");
        ns = {top - 1, top};
      }
      if (ring->degree() == 1) {
        Check cp = info("l0", "psi", Rational(0));
        try {
          auto e = l0_psi(h, ns.back(), prm.bound);
          cp.value = e.extrapolated;
          cp.expected = Rational(d.l0);
          cp.pass = e.rounds && e.rounded == d.l0;
          for (const auto& [n, s] : e.sums) cp.certificate.push_back("S(" + std::to_string(n) + ")=" + format_rational(s));
        } catch (const SpecialDivisorError& e) {
          cp.certificate.push_back(std::string("not applicable: ") + e.what());
        }
        r.checks.push_back(std::move(cp));
      }
      auto g = l0_growth(h, ns, prm.bound);
      Check cg = info("l0 (base normalization)", "growth", g.extrapolated);
      cg.expected = Rational(ef * d.l0);
      cg.pass = g.rounds && g.rounded == ef * d.l0;
      for (const auto& [n, v] : g.sums) cg.certificate.push_back("v(" + std::to_string(n) + ")=" + format_rational(v));
      r.checks.push_back(std::move(cg));
    });
  });
  return plan;
}

Plan plan_homcount(const Json& root, std::uint64_t seed) {
  config::require_keys(root, {"schema", "ring", "group", "d", "k", "c_rank", "params", "out"}, "config");
  if (!root.contains("ring")) throw ConfigError("config: ring is required");
  const Json& rj = root.at("ring");
  config::require_keys(rj, {"p", "e", "f", "N"}, "ring");
  Json flat{{"p", config::get_int(rj, "p", "ring")},
            {"e", config::get_int(rj, "e", "ring", 1)},
            {"f", config::get_int(rj, "f", "ring", 1)},
            {"d", config::get_int(root, "d", "config", 1)},
            {"k", config::get_int(root, "k", "config", 1)}};
  auto s = parse_spec(flat, "config");
  auto y = parse_group(root, "config");
  long long c_rank = config::get_int(root, "c_rank", "config", 1);
  if (c_rank < 0 || c_rank > 4) throw ConfigError("config.c_rank: out of range");
  parse_params(root);
  Plan plan;
  plan.jobs.push_back([=] {
    return run_guarded("homcount", spec_id(y, s), [&](VerifyReport& r) {
      DivisibleSpec one = s;
      one.d = 1;
      r.checks.push_back(info("v_p|(Y (x) O)/pi^k|", "formula", Rational(tensor_quotient_valuation(y, one))));
      hom_checks(r, y, s, static_cast<int>(c_rank), seed);
    });
  });
  return plan;
}

Plan plan_verify(const std::string& law, const Json& root, std::uint64_t seed) {
  config::require_keys(root, {"schema", "cases", "params", "out"}, "config");
  parse_params(root);
  if (std::find(laws().begin(), laws().end(), law) == laws().end()) throw ConfigError("unknown law \"" + law + "\"");
  Json cases = root.contains("cases") ? root.at("cases") : default_cases(law, seed);
  if (!cases.is_array()) throw ConfigError("config.cases: expected an array");
  Plan plan;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    plan.jobs.push_back(verify_job(law, cases[i], "cases[" + std::to_string(i) + "]", seed));
  }
  return plan;
}

Json rational_json(const Rational& r) { return format_rational(r); }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

std::vector<VerifyReport> execute(const std::vector<Job>& jobs, int n_threads) {
  std::vector<VerifyReport> out(jobs.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < jobs.size(); i = next++) out[i] = jobs[i]();
  };
  int n = std::max(1, std::min<int>(n_threads, static_cast<int>(jobs.size())));
  std::vector<std::thread> pool;
  for (int t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return out;
}

}  // namespace

Json report_json(const std::string& command, const std::string& law, std::uint64_t seed,
                 const std::vector<VerifyReport>& reports) {
  Json cases = Json::array();
  bool all = true;
  for (const auto& r : reports) {
    Json checks = Json::array();
    for (const auto& c : r.checks) {
      checks.push_back({{"invariant", c.invariant},
                        {"method", c.method},
                        {"value", rational_json(c.value)},
                        {"expected", c.expected ? Json(rational_json(*c.expected)) : Json(nullptr)},
                        {"certificate", c.certificate},
                        {"residuals", c.residuals},
                        {"pass", c.pass}});
    }
    Json entry{{"case", r.case_id}, {"pass", r.pass()}, {"checks", checks}};
    if (!r.error.empty()) entry["error"] = r.error;
    all = all && r.pass();
    cases.push_back(std::move(entry));
  }
  Json out{{"schema", kReportSchema}, {"command", command}};
  if (!law.empty()) out["law"] = law;
  out["seed"] = seed;
  out["pass"] = all;
  out["cases"] = std::move(cases);
  return out;
}

int run(const Options& opt, std::ostream& out, std::ostream& err) {
  Plan plan;
  std::vector<CsvRow> csv;
  std::uint64_t seed = 1;
  std::filesystem::path out_dir = ".";
  try {
    Json root{{"schema", config::kSchema}};
    if (!opt.config_path.empty()) {
      std::ifstream f(opt.config_path, std::ios::binary);
      if (!f) throw ConfigError("cannot read config " + opt.config_path);
      std::stringstream buf;
      buf << f.rdbuf();
      root = config::load(buf.str());
    } else if (opt.command != "verify") {
      throw ConfigError("--config is required for " + opt.command);
    }
    if (root.contains("params")) {
      const Json& p = root.at("params");
      if (p.is_object() && p.contains("seed")) {
        if (!p.at("seed").is_number_unsigned()) throw ConfigError("params.seed: expected a non-negative integer");
        seed = p.at("seed").get<std::uint64_t>();
      }
      if (p.is_object() && p.contains("max_dim")) {
        long long cap = config::get_int(p, "max_dim", "params");
        if (cap < 1 || cap > (1 << 24)) throw ConfigError("params.max_dim: out of range");
        setenv("IWASAWA_MAX_DIM", std::to_string(cap).c_str(), 0);
      }
    }
    if (opt.seed) seed = *opt.seed;
    if (root.contains("out")) {
      if (!root.at("out").is_string()) throw ConfigError("config.out: expected a string");
      out_dir = root.at("out").get<std::string>();
    }
    if (opt.out_dir) out_dir = *opt.out_dir;
    if (opt.jobs < 1) throw ConfigError("--jobs must be positive");

    if (opt.command == "invariants") {
      plan = plan_invariants(root);
    } else if (opt.command == "growth") {
      plan = plan_growth(root, &csv);
    } else if (opt.command == "l0") {
      plan = plan_l0(root);
    } else if (opt.command == "homcount") {
      plan = plan_homcount(root, seed);
    } else if (opt.command == "verify") {
      plan = plan_verify(opt.law, root, seed);
    } else {
      throw ConfigError("unknown command \"" + opt.command + "\"");
    }
  } catch (const Error& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const Json::exception& e) {
    err << "config error: " << e.what() << "\n";
    return kExitConfig;
  }

  auto reports = execute(plan.jobs, opt.jobs);
  Json report = report_json(opt.command, opt.law, seed, reports);
  try {
    std::filesystem::create_directories(out_dir);
    write_file(out_dir / "report.json", report.dump(2) + "\n");
    if (plan.wants_csv) {
      std::ostringstream c;
      c << "n,k,valuation,fitted_c,residual\n";
      for (const auto& row : csv) {
        c << row.n << "," << row.k << "," << row.valuation << "," << row.fitted_c << "," << std::setprecision(12)
          << row.residual << "\n";
      }
      write_file(out_dir / "growth.csv", c.str());
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitAssertion;
  }

  bool capped = false, failed = false;
  for (const auto& r : reports) {
    std::string status = r.pass() ? "PASS" : (r.capped ? "CAP " : "FAIL");
    out << std::left << std::setw(5) << status << " " << std::setw(16) << r.law << " " << r.case_id;
    if (!r.error.empty()) out << "  (" << r.error << ")";
    out << "\n";
    for (const auto& c : r.checks) {
      out << "      " << (c.pass ? "ok  " : "FAIL") << " " << c.invariant << " [" << c.method
          << "] = " << format_rational(c.value);
      if (c.expected) out << " (expected " << format_rational(*c.expected) << ")";
      out << "\n";
    }
    capped = capped || r.capped;
    failed = failed || !r.pass();
  }
  if (capped) return kExitResourceCap;
  return failed ? kExitAssertion : kExitOk;
}

}  // namespace iwasawa::cli
