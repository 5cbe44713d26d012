#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "iwasawa/error.hpp"
#include "iwasawa/invariants.hpp"

namespace iwasawa {

bool VerifyReport::pass() const {
  if (!error.empty() || checks.empty()) return false;
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

namespace {

Check exact(std::string invariant, std::string method, Rational value, Rational expected) {
  Check c;
  c.invariant = std::move(invariant);
  c.method = std::move(method);
  c.value = value;
  c.expected = expected;
  c.pass = value == expected;
  return c;
}

// Runs body, turning library errors into a failed report.
VerifyReport guarded(std::string law, std::string case_id, const std::function<void(VerifyReport&)>& body) {
  VerifyReport r;
  r.law = std::move(law);
  r.case_id = std::move(case_id);
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

std::string ring_id(const LocalRing& r) {
  std::ostringstream out;
  out << "p=" << r.p() << ",e=" << r.e() << ",f=" << r.f();
  return out.str();
}

std::string list_id(const std::vector<int>& v) {
  std::ostringstream out;
  out << "[";
  for (std::size_t i = 0; i < v.size(); ++i) out << (i ? "," : "") << v[i];
  out << "]";
  return out.str();
}

std::vector<int> k_range(int top) {
  std::vector<int> ks;
  for (int k = 1; k <= top; ++k) ks.push_back(k);
  return ks;
}

int max_of(const std::vector<int>& v) { return v.empty() ? 0 : *std::max_element(v.begin(), v.end()); }

long long sum_of(const std::vector<int>& v) {
  long long s = 0;
  for (int x : v) s += x;
  return s;
}

void add_fit_residuals(Check& c, const MuAsymptotic& a) {
  for (const auto& [k, fit] : a.fits) {
    c.residuals.push_back(fit.max_residual);
    if (!fit.bounded) c.pass = false;
  }
}

long long ipow(long long b, long long e) {
  long long r = 1;
  for (long long i = 0; i < e; ++i) r = checked_mul(r, b);
  return r;
}

}  // namespace

VerifyReport verify_mu_f_scaling(RingPtr ring, int l, const std::vector<int>& exponents) {
  std::string id = ring_id(*ring) + ",l=" + std::to_string(l) + ",e_i=" + list_id(exponents);
  return guarded("mu-f", id, [&](VerifyReport& r) {
    auto m = ModulePresentation::elementary(ring, l, exponents);
    long long mu_o = symbolic_invariants(m)->mu();
    auto res = restriction_of_scalars(m);
    // pi^a-torsion over O has p-exponent ceil(a/e) over Z_p
    int top = (max_of(exponents) + ring->e() - 1) / ring->e() + 2;
    auto est = mu_asymptotic(res, k_range(std::max(top, 3)));
    Check c = exact("mu_Zp", "asymptotic", Rational(est.mu()), Rational(ring->f() * mu_o));
    add_fit_residuals(c, est);
    c.certificate.push_back("mu_O=" + std::to_string(mu_o) + " (symbolic)");
    c.certificate.push_back("rank_Zp=" + std::to_string(est.rank));
    if (!est.saturated) {
      c.pass = false;
      c.certificate.push_back("truncated mu not saturated");
    }
    r.checks.push_back(exact("rank_Zp", "asymptotic", Rational(est.rank), Rational(0)));
    r.checks.push_back(std::move(c));
  });
}

VerifyReport verify_lemma22(RingPtr ring, int l, const std::vector<int>& exponents) {
  std::string id = ring_id(*ring) + ",l=" + std::to_string(l) + ",e_i=" + list_id(exponents);
  return guarded("lemma-2.2", id, [&](VerifyReport& r) {
    auto m = ModulePresentation::elementary(ring, l, exponents);
    auto over_o = mu_asymptotic(m, k_range(max_of(exponents) + 1));
    auto e_i = over_o.exponents();
    int top = (max_of(exponents) + ring->e() - 1) / ring->e() + 2;
    auto over_zp = mu_asymptotic(restriction_of_scalars(m), k_range(std::max(top, 3)));
    auto g_j = over_zp.exponents();
    Check c = exact("f*sum(e_i) = sum(g_j)", "asymptotic", Rational(sum_of(g_j)),
                    Rational(ring->f() * sum_of(e_i)));
    c.certificate.push_back("e_i=" + list_id(e_i));
    c.certificate.push_back("g_j=" + list_id(g_j));
    add_fit_residuals(c, over_o);
    add_fit_residuals(c, over_zp);
    r.checks.push_back(exact("e_i recovered", "asymptotic", Rational(sum_of(e_i)), Rational(sum_of(exponents))));
    r.checks.push_back(std::move(c));
  });
}

VerifyReport verify_mu_e_scaling(std::uint64_t p, int e, int f, int n, int l, bool asymptotic) {
  std::string id = "p=" + std::to_string(p) + ",e=" + std::to_string(e) + ",f=" + std::to_string(f) +
                   ",n=" + std::to_string(n) + ",l=" + std::to_string(l);
  return guarded("mu-e", id, [&](VerifyReport& r) {
    if (n < 1) throw InvalidArgument("mu-e needs n >= 1");
    auto ring = share(LocalRing::make(p, e, f, n + 4));
    auto base = share(ring->base());
    auto pn = static_cast<std::int64_t>(ipow(static_cast<long long>(p), n));
    auto m_base = ModulePresentation::cyclic(AlgebraElt::from_int(base, l, pn));
    auto m_ext = ModulePresentation::cyclic(AlgebraElt::from_int(ring, l, pn));
    long long mu_zp = symbolic_invariants(m_base)->mu();
    long long mu_o = symbolic_invariants(m_ext)->mu();
    r.checks.push_back(exact("mu_O(M (x) O)", "symbolic", Rational(mu_o), Rational(e * n)));
    r.checks.push_back(exact("mu_Zp(M)", "symbolic", Rational(mu_zp), Rational(mu_o, e)));
    if (asymptotic) {
      auto est = mu_asymptotic(m_ext, k_range(e * n + 1));
      Check c = exact("mu_O(M (x) O)", "asymptotic", Rational(est.mu()), Rational(e * n));
      add_fit_residuals(c, est);
      r.checks.push_back(std::move(c));
      auto est_b = mu_asymptotic(m_base, k_range(n + 1));
      Check cb = exact("mu_Zp(M)", "asymptotic", Rational(est_b.mu()), Rational(n));
      add_fit_residuals(cb, est_b);
      r.checks.push_back(std::move(cb));
    }
  });
}

namespace {

std::vector<std::string> certificate_lines(const L0Direct& d) {
  std::vector<std::string> out;
  for (const auto& [t, v] : d.certificate) out.push_back(format_tag(t) + ":" + std::to_string(v));
  return out;
}

}  // namespace

VerifyReport verify_l0_tensor(const AlgebraElt& h, RingPtr ring, int bound) {
  return guarded("l0-tensor", h.format() + " over " + ring_id(*ring), [&](VerifyReport& r) {
    auto base = l0_direct(h, bound);
    auto ext = l0_direct(extend_scalars(h, ring), bound);
    Check c = exact("l0", "direct", Rational(ext.l0), Rational(base.l0));
    for (auto& s : certificate_lines(base)) c.certificate.push_back("F_p " + s);
    for (auto& s : certificate_lines(ext)) c.certificate.push_back("F_q " + s);
    r.checks.push_back(std::move(c));
  });
}

VerifyReport verify_l0_norm(const AlgebraElt& h, const std::vector<int>& growth_levels, int bound, int dim_cap) {
  return guarded("l0-norm", h.format() + " over " + ring_id(h.ring()), [&](VerifyReport& r) {
    std::optional<ScopedDimensionCap> scope;
    if (dim_cap > 0) scope.emplace(dim_cap);
    const LocalRing& ring = h.ring();
    const long long ef = ring.degree();
    auto over_o = l0_direct(h, bound);
    AlgebraElt nh = norm_series(h);
    auto over_zp = l0_direct(nh, bound);
    Check c = exact("l0_Zp(N(h))", "direct", Rational(over_zp.l0), Rational(ef * over_o.l0));
    for (auto& s : certificate_lines(over_o)) c.certificate.push_back("O " + s);
    for (auto& s : certificate_lines(over_zp)) c.certificate.push_back("Zp " + s);
    c.certificate.push_back("N(h)=" + nh.format());
    r.checks.push_back(std::move(c));

    std::vector<int> ns = growth_levels;
    if (ns.empty()) {
      int top = max_feasible_level(ModulePresentation::cyclic(h), ambient_dimension_cap());
      if (top < 2) throw ResourceCapError("no two growth levels fit under the dimension cap");
      ns = top >= 4 ? std::vector<int>{1, 2, 3, 4} : std::vector<int>{top - 1, top};
    }
    auto g = l0_growth(h, ns, bound);
    Check cg;
    cg.invariant = "l0_Zp(restricted module)";
    cg.method = "growth";
    cg.value = g.extrapolated;
    cg.expected = Rational(over_zp.l0);
    cg.pass = g.rounds && g.rounded == over_zp.l0;
    for (const auto& [n, v] : g.sums) cg.certificate.push_back("v(" + std::to_string(n) + ")=" + format_rational(v));
    r.checks.push_back(std::move(cg));
  });
}

VerifyReport verify_uniform_scaling(const ModulePresentation& m, const IntMatrix& lattice, const std::vector<int>& ks) {
  std::ostringstream id;
  id << ring_id(*m.ring) << ",l=" << m.vars << ",rank=" << m.rank << ",B=[";
  for (std::size_t i = 0; i < lattice.size(); ++i) {
    id << (i ? ";" : "");
    for (std::size_t j = 0; j < lattice[i].size(); ++j) id << (j ? "," : "") << lattice[i][j];
  }
  id << "]";
  return guarded("uniform", id.str(), [&](VerifyReport& r) {
    const int l = m.vars;
    if (static_cast<int>(lattice.size()) != l) throw InvalidArgument("lattice matrix has the wrong size");
    auto sf = smith_form(lattice);
    std::vector<int> offsets(l);
    long long x = 1;
    for (int j = 0; j < l; ++j) {
      if (sf.diagonal[j] == 0) throw InvalidArgument("lattice matrix is singular");
      offsets[j] = valuation(static_cast<Residue>(std::llabs(sf.diagonal[j])), m.ring->p());
      x = checked_mul(x, ipow(static_cast<long long>(m.ring->p()), offsets[j]));
    }
    auto sub = transform(m, transpose(sf.u));
    auto whole = mu_asymptotic(m, ks);
    auto part = mu_asymptotic(sub, ks, {}, offsets);
    Check cr = exact("rank", "asymptotic", Rational(part.rank), Rational(x * whole.rank));
    cr.certificate.push_back("x=" + std::to_string(x));
    r.checks.push_back(std::move(cr));
    for (int k : whole.ks) {
      Check c = exact("mu^(" + std::to_string(k) + ")", "asymptotic", Rational(part.mu_k.at(k)),
                      Rational(x * whole.mu_k.at(k)));
      c.residuals = {whole.fits.at(k).max_residual, part.fits.at(k).max_residual};
      r.checks.push_back(std::move(c));
    }
  });
}

VerifyReport verify_growth_theorem(const ModulePresentation& m, const std::vector<int>& ks, const std::vector<int>& ns) {
  std::ostringstream id;
  id << ring_id(*m.ring) << ",l=" << m.vars << ",rank=" << m.rank;
  return guarded("growth-theorem", id.str(), [&](VerifyReport& r) {
    auto sym = symbolic_invariants(m);
    if (!sym) throw InvalidArgument("growth theorem check needs a module with known elementary data");
    auto series = growth_scans(m, ks, ns);
    const long long f = m.ring->f();
    for (std::size_t i = 0; i < ks.size(); ++i) {
      int k = ks[i];
      GrowthFit fit = fit_leading(series[i]);
      Check c;
      c.invariant = "leading coefficient k=" + std::to_string(k);
      c.method = "growth";
      c.value = fit.c;
      c.expected = Rational(f * (sym->rank * k + sym->mu_k(k)));
      c.residuals = fit.residuals;
      c.pass = fit.rounds && Rational(fit.c_rounded) == *c.expected && fit.bounded;
      c.certificate.push_back("max_residual=" + std::to_string(fit.max_residual));
      c.certificate.push_back("c_raw=" + format_rational(fit.c_raw));
      if (!fit.bounded) c.certificate.push_back("residuals grow at the top of the range");
      r.checks.push_back(std::move(c));
    }
  });
}

VerifyReport verify_psi_law(const AlgebraElt& h, const std::vector<Rational>& expected_sums, long long expected_l0) {
  return guarded("psi-sum", h.format() + " over " + ring_id(h.ring()), [&](VerifyReport& r) {
    if (expected_sums.empty()) throw InvalidArgument("no levels to check");
    const auto p = static_cast<long long>(h.ring().p());
    const int l = h.vars();
    std::vector<Rational> s{psi_sum(h, 0)};
    for (std::size_t n = 1; n <= expected_sums.size(); ++n) {
      s.push_back(psi_sum(h, static_cast<int>(n)));
      r.checks.push_back(exact("S(" + std::to_string(n) + ")", "psi", s.back(), expected_sums[n - 1]));
    }
    const int top = static_cast<int>(expected_sums.size());
    Rational ex = (s[top] - Rational(ipow(p, l - 1)) * s[top - 1]) / Rational(ipow(p, static_cast<long long>(top) * (l - 1)));
    double xd = boost::rational_cast<double>(ex);
    Check c;
    c.invariant = "l0";
    c.method = "psi extrapolation";
    c.value = ex;
    c.expected = Rational(expected_l0);
    c.pass = std::fabs(xd - static_cast<double>(expected_l0)) < kRoundingTolerance;
    r.checks.push_back(std::move(c));
  });
}

}  // namespace iwasawa
