#include "iwasawa/algebra.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include "iwasawa/error.hpp"

namespace iwasawa {

AlgebraElt::AlgebraElt(RingPtr ring, int vars) : ring_(std::move(ring)), vars_(vars) {
  if (!ring_) throw InvalidArgument("null ring");
  if (vars < 1) throw InvalidArgument("need at least one variable");
}

AlgebraElt AlgebraElt::constant(RingPtr ring, int vars, const RingElt& c) {
  return monomial(std::move(ring), vars, Exponent(vars, 0), c);
}

AlgebraElt AlgebraElt::from_int(RingPtr ring, int vars, std::int64_t c) {
  RingElt v = ring->from_int(c);
  return constant(std::move(ring), vars, v);
}

AlgebraElt AlgebraElt::variable(RingPtr ring, int vars, int i) {
  if (i < 0 || i >= vars) throw InvalidArgument("variable index out of range");
  Exponent e(vars, 0);
  e[i] = 1;
  RingElt one = ring->one();
  return monomial(std::move(ring), vars, std::move(e), one);
}

AlgebraElt AlgebraElt::monomial(RingPtr ring, int vars, Exponent exps, const RingElt& c) {
  AlgebraElt h(std::move(ring), vars);
  h.add_term(exps, c);
  return h;
}

int AlgebraElt::total_degree() const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, std::accumulate(e.begin(), e.end(), 0));
  return d;
}

int AlgebraElt::degree_in(int var) const {
  int d = -1;
  for (const auto& [e, c] : terms_) d = std::max(d, e[var]);
  return d;
}

RingElt AlgebraElt::coefficient(const Exponent& exps) const {
  auto it = terms_.find(exps);
  return it == terms_.end() ? ring_->zero() : it->second;
}

void AlgebraElt::add_term(const Exponent& exps, const RingElt& c) {
  if (static_cast<int>(exps.size()) != vars_) throw InvalidArgument("exponent length mismatch");
  for (int x : exps) {
    if (x < 0) throw InvalidArgument("negative exponent");
  }
  auto it = terms_.find(exps);
  if (it == terms_.end()) {
    if (!ring_->is_zero(c)) terms_.emplace(exps, ring_->add(ring_->zero(), c));
    return;
  }
  it->second = ring_->add(it->second, c);
  if (ring_->is_zero(it->second)) terms_.erase(it);
}

void AlgebraElt::check_compatible(const AlgebraElt& o) const {
  if (vars_ != o.vars_) throw InvalidArgument("variable count mismatch");
  if (ring_ == o.ring_) return;
  if (!ring_->same_tower(*o.ring_) || ring_->cap() != o.ring_->cap() ||
      ring_->precision() != o.ring_->precision()) {
    throw InvalidArgument("coefficient ring mismatch");
  }
}

AlgebraElt& AlgebraElt::operator+=(const AlgebraElt& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

AlgebraElt& AlgebraElt::operator-=(const AlgebraElt& o) {
  check_compatible(o);
  for (const auto& [e, c] : o.terms_) add_term(e, ring_->neg(c));
  return *this;
}

AlgebraElt AlgebraElt::operator+(const AlgebraElt& o) const {
  AlgebraElt r = *this;
  r += o;
  return r;
}

AlgebraElt AlgebraElt::operator-(const AlgebraElt& o) const {
  AlgebraElt r = *this;
  r -= o;
  return r;
}

AlgebraElt AlgebraElt::operator-() const {
  AlgebraElt r(ring_, vars_);
  for (const auto& [e, c] : terms_) r.terms_.emplace(e, ring_->neg(c));
  return r;
}

AlgebraElt AlgebraElt::operator*(const AlgebraElt& o) const {
  check_compatible(o);
  AlgebraElt r(ring_, vars_);
  Exponent e(vars_);
  for (const auto& [ea, ca] : terms_) {
    for (const auto& [eb, cb] : o.terms_) {
      for (int i = 0; i < vars_; ++i) e[i] = ea[i] + eb[i];
      r.add_term(e, ring_->mul(ca, cb));
    }
  }
  return r;
}

AlgebraElt AlgebraElt::scale(const RingElt& c) const {
  AlgebraElt r(ring_, vars_);
  for (const auto& [e, x] : terms_) r.add_term(e, ring_->mul(x, c));
  return r;
}

AlgebraElt AlgebraElt::pow(std::uint64_t exp) const {
  AlgebraElt result = from_int(ring_, vars_, 1);
  AlgebraElt base = *this;
  while (exp > 0) {
    if (exp & 1U) result = result * base;
    exp >>= 1U;
    if (exp > 0) base = base * base;
  }
  return result;
}

bool AlgebraElt::operator==(const AlgebraElt& o) const {
  if (vars_ != o.vars_) return false;
  return (*this - o).is_zero();
}

AlgebraElt AlgebraElt::convert(RingPtr target) const {
  AlgebraElt r(target, vars_);
  for (const auto& [e, c] : terms_) r.add_term(e, target->convert(*ring_, c));
  return r;
}

std::string AlgebraElt::format() const {
  if (terms_.empty()) return "0";
  std::ostringstream out;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    if (!first) out << " + ";
    first = false;
    out << "(" << ring_->format(it->second) << ")";
    for (int i = 0; i < vars_; ++i) {
      if (it->first[i] == 0) continue;
      out << "*T" << (i + 1);
      if (it->first[i] > 1) out << "^" << it->first[i];
    }
  }
  return out.str();
}

AlgebraElt one_plus_t_power(RingPtr ring, int vars, int i, std::uint64_t k) {
  AlgebraElt base = AlgebraElt::from_int(ring, vars, 1) + AlgebraElt::variable(ring, vars, i);
  return base.pow(k);
}

AlgebraElt omega(RingPtr ring, int n, int i, int vars) {
  if (n < 0) throw InvalidArgument("negative level");
  std::uint64_t pn = checked_power(ring->p(), n);
  return one_plus_t_power(ring, vars, i, pn) - AlgebraElt::from_int(ring, vars, 1);
}

int pi_content(const AlgebraElt& h) {
  if (h.is_zero()) throw InvalidArgument("content of zero");
  int v = h.ring().cap();
  for (const auto& [e, c] : h.terms()) {
    auto vc = h.ring().v_pi(c);
    if (vc) v = std::min(v, *vc);
  }
  return v;
}

AlgebraElt divide_by_pi_power(const AlgebraElt& h, int t) {
  AlgebraElt r(h.ring_ptr(), h.vars());
  for (const auto& [e, c] : h.terms()) r.add_term(e, h.ring().divide_by_pi_power(c, t));
  return r;
}

AlgebraElt reduce_mod_pi(const AlgebraElt& h) {
  RingPtr residue = share(h.ring().quotient(1));
  AlgebraElt r = h.convert(residue);
  if (r.is_zero()) throw InvalidArgument("polynomial vanishes modulo pi");
  return r;
}

std::optional<std::vector<std::int64_t>> normalize_tag(std::vector<std::int64_t> a) {
  std::int64_t g = 0;
  for (auto x : a) g = std::gcd(g, x);
  if (g == 0) return std::nullopt;
  for (auto& x : a) x /= g;
  auto first = std::find_if(a.begin(), a.end(), [](std::int64_t x) { return x != 0; });
  if (*first < 0) {
    for (auto& x : a) x = -x;
  }
  return a;
}

bool is_valid_tag(const std::vector<std::int64_t>& a, std::uint64_t p) {
  auto n = normalize_tag(a);
  if (!n || *n != a) return false;
  auto pp = static_cast<std::int64_t>(p);
  return std::any_of(a.begin(), a.end(), [pp](std::int64_t x) { return x % pp != 0; });
}

namespace {

AlgebraElt monomial_unit(const RingPtr& ring, int vars, const std::vector<std::int64_t>& pw) {
  AlgebraElt r = AlgebraElt::from_int(ring, vars, 1);
  for (int j = 0; j < vars; ++j) {
    if (pw[j] > 0) r = r * one_plus_t_power(ring, vars, j, static_cast<std::uint64_t>(pw[j]));
  }
  return r;
}

}  // namespace

AlgebraElt special_generator(RingPtr ring, const std::vector<std::int64_t>& a) {
  int vars = static_cast<int>(a.size());
  std::vector<std::int64_t> pos(vars, 0), neg(vars, 0);
  for (int i = 0; i < vars; ++i) (a[i] > 0 ? pos[i] : neg[i]) = std::llabs(a[i]);
  return monomial_unit(ring, vars, pos) - monomial_unit(ring, vars, neg);
}

std::vector<AlgebraElt> apply_automorphism(const std::vector<AlgebraElt>& hs, const IntMatrix& m,
                                           int degree_cap) {
  if (hs.empty()) return {};
  const RingPtr& ring = hs[0].ring_ptr();
  const int l = hs[0].vars();
  if (static_cast<int>(m.size()) != l) throw InvalidArgument("automorphism matrix has wrong size");
  for (const auto& row : m) {
    if (static_cast<int>(row.size()) != l) throw InvalidArgument("automorphism matrix has wrong size");
  }
  if (determinant(m) % static_cast<std::int64_t>(ring->p()) == 0) {
    throw InvalidArgument("automorphism matrix is not invertible mod p");
  }
  std::vector<int> max_deg(l, 0);
  for (const auto& h : hs) {
    for (int i = 0; i < l; ++i) max_deg[i] = std::max(max_deg[i], h.degree_in(i));
  }
  std::vector<AlgebraElt> diff, den;
  std::vector<int> deg_p(l, 0), deg_n(l, 0);
  for (int i = 0; i < l; ++i) {
    std::vector<std::int64_t> pos(l, 0), neg(l, 0);
    for (int j = 0; j < l; ++j) {
      if (m[i][j] > 0) {
        pos[j] = m[i][j];
        deg_p[i] += static_cast<int>(m[i][j]);
      } else {
        neg[j] = -m[i][j];
        deg_n[i] += static_cast<int>(-m[i][j]);
      }
    }
    AlgebraElt n = monomial_unit(ring, l, neg);
    diff.push_back(monomial_unit(ring, l, pos) - n);
    den.push_back(n);
  }
  for (const auto& h : hs) {
    for (const auto& [e, c] : h.terms()) {
      long long bound = 0;
      for (int i = 0; i < l; ++i) {
        bound += static_cast<long long>(e[i]) * std::max(deg_p[i], deg_n[i]) +
                 static_cast<long long>(max_deg[i] - e[i]) * deg_n[i];
      }
      if (bound > degree_cap) throw ResourceCapError("degree cap exceeded in coordinate change");
    }
  }
  // cached powers
  std::vector<std::vector<AlgebraElt>> diff_pow(l), den_pow(l);
  for (int i = 0; i < l; ++i) {
    diff_pow[i].push_back(AlgebraElt::from_int(ring, l, 1));
    den_pow[i].push_back(AlgebraElt::from_int(ring, l, 1));
    for (int d = 1; d <= max_deg[i]; ++d) {
      diff_pow[i].push_back(diff_pow[i].back() * diff[i]);
      den_pow[i].push_back(den_pow[i].back() * den[i]);
    }
  }
  std::vector<AlgebraElt> out;
  out.reserve(hs.size());
  for (const auto& h : hs) {
    AlgebraElt r(ring, l);
    for (const auto& [e, c] : h.terms()) {
      AlgebraElt t = AlgebraElt::constant(ring, l, c);
      for (int i = 0; i < l; ++i) {
        if (e[i] > 0) t = t * diff_pow[i][e[i]];
        if (max_deg[i] - e[i] > 0) t = t * den_pow[i][max_deg[i] - e[i]];
      }
      r += t;
    }
    out.push_back(std::move(r));
  }
  return out;
}

AlgebraElt apply_automorphism(const AlgebraElt& h, const IntMatrix& m, int degree_cap) {
  return apply_automorphism(std::vector<AlgebraElt>{h}, m, degree_cap).front();
}

std::vector<std::vector<AlgebraElt>> restriction_matrix(const AlgebraElt& h) {
  const LocalRing& o = h.ring();
  if (o.is_capped()) throw InvalidArgument("restriction of scalars needs an uncapped ring");
  RingPtr base = share(o.base());
  const int d = o.degree();
  std::vector<std::vector<AlgebraElt>> mat(d, std::vector<AlgebraElt>(d, AlgebraElt(base, h.vars())));
  for (const auto& [e, c] : h.terms()) {
    auto mm = o.multiplication_matrix(c);
    for (int i = 0; i < d; ++i) {
      for (int j = 0; j < d; ++j) {
        if (mm[i * d + j] != 0) mat[i][j].add_term(e, base->embed(mm[i * d + j]));
      }
    }
  }
  return mat;
}

AlgebraElt norm_series(const AlgebraElt& h) {
  if (h.is_zero()) throw InvalidArgument("norm of zero");
  auto mat = restriction_matrix(h);
  const int d = static_cast<int>(mat.size());
  RingPtr base = mat[0][0].ring_ptr();
  // Laplace expansion along rows, indexed by the set of used columns
  std::vector<std::optional<AlgebraElt>> dp(std::size_t{1} << d);
  dp[0] = AlgebraElt::from_int(base, h.vars(), 1);
  for (std::size_t mask = 0; mask < dp.size(); ++mask) {
    if (!dp[mask]) continue;
    int row = __builtin_popcountll(mask);
    if (row == d) continue;
    for (int j = 0; j < d; ++j) {
      if (mask & (std::size_t{1} << j)) continue;
      if (mat[row][j].is_zero()) continue;
      int above = __builtin_popcountll(mask >> (j + 1));
      AlgebraElt term = *dp[mask] * mat[row][j];
      if (above % 2) term = -term;
      auto& slot = dp[mask | (std::size_t{1} << j)];
      if (slot) *slot += term;
      else slot = std::move(term);
    }
  }
  auto& full = dp.back();
  AlgebraElt n = full ? *full : AlgebraElt(base, h.vars());
  if (n.is_zero()) throw PrecisionError("norm is indeterminate at this precision");
  return n;
}

AlgebraElt extend_scalars(const AlgebraElt& h, RingPtr target) {
  if (h.ring().degree() != 1) throw InvalidArgument("extend_scalars expects a polynomial over Z_p");
  if (h.ring().p() != target->p()) throw InvalidArgument("residue characteristic mismatch");
  AlgebraElt r(target, h.vars());
  for (const auto& [e, c] : h.terms()) r.add_term(e, target->embed(c.c[0]));
  return r;
}

Exponent leading_exponent(const AlgebraElt& h) {
  if (h.is_zero()) throw InvalidArgument("zero has no leading term");
  return h.terms().rbegin()->first;
}

std::optional<AlgebraElt> divide_exact(const AlgebraElt& h, const AlgebraElt& g) {
  const LocalRing& r = h.ring();
  Exponent lg = leading_exponent(g);
  RingElt lc = g.terms().rbegin()->second;
  if (!r.is_unit(lc)) throw InvalidArgument("divisor needs a unit leading coefficient");
  RingElt lc_inv = r.inverse(lc);
  AlgebraElt rem = h;
  AlgebraElt q(h.ring_ptr(), h.vars());
  const int l = h.vars();
  for (long step = 0; !rem.is_zero(); ++step) {
    if (step > 1000000) throw ResourceCapError("division did not terminate");
    const auto& [le, c] = *rem.terms().rbegin();
    Exponent shift(l);
    for (int i = 0; i < l; ++i) {
      shift[i] = le[i] - lg[i];
      if (shift[i] < 0) return std::nullopt;
    }
    AlgebraElt mono = AlgebraElt::monomial(h.ring_ptr(), l, shift, r.mul(c, lc_inv));
    q += mono;
    rem -= mono * g;
  }
  return q;
}

CycloElt psi_eval(const CycloRing& target, const AlgebraElt& h, const std::vector<int>& orders,
                  const std::vector<std::int64_t>& choices) {
  if (h.ring().degree() != 1) throw InvalidArgument("psi_eval expects a polynomial over Z_p");
  if (h.ring().p() != target.p()) throw InvalidArgument("residue characteristic mismatch");
  const int l = h.vars();
  if (static_cast<int>(orders.size()) != l || static_cast<int>(choices.size()) != l) {
    throw InvalidArgument("root-of-unity tuple has wrong length");
  }
  std::vector<std::vector<CycloElt>> powers(l);
  for (int i = 0; i < l; ++i) {
    if (orders[i] < 0 || orders[i] > target.level()) throw InvalidArgument("root order out of range");
    CycloElt lambda = target.zero();
    if (orders[i] > 0) {
      if (choices[i] % static_cast<std::int64_t>(target.p()) == 0) {
        throw InvalidArgument("root choice must be prime to p");
      }
      auto shift = static_cast<std::int64_t>(checked_power(target.p(), target.level() - orders[i]));
      lambda = target.sub(target.zeta_power(choices[i] * shift), target.one());
    }
    powers[i].push_back(target.one());
    for (int d = 1; d <= h.degree_in(i); ++d) powers[i].push_back(target.mul(powers[i].back(), lambda));
  }
  CycloElt acc = target.zero();
  for (const auto& [e, c] : h.terms()) {
    CycloElt t = target.from_residue(c.c[0]);
    for (int i = 0; i < l; ++i) {
      if (e[i] > 0) t = target.mul(t, powers[i][e[i]]);
    }
    acc = target.add(acc, t);
  }
  return acc;
}

}  // namespace iwasawa
