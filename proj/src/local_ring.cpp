#include "iwasawa/local_ring.hpp"

#include <algorithm>
#include <sstream>

#include "iwasawa/error.hpp"

namespace iwasawa {

namespace {

using FpPoly = std::vector<Residue>;  // low degree first, entries in [0, p)

void trim(FpPoly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

// remainder of a modulo monic g over F_p
FpPoly fp_rem(FpPoly a, const FpPoly& g, std::uint64_t p) {
  const std::size_t dg = g.size() - 1;
  trim(a);
  while (a.size() > dg) {
    Residue lead = a.back();
    std::size_t shift = a.size() - 1 - dg;
    for (std::size_t i = 0; i <= dg; ++i) {
      a[shift + i] = (a[shift + i] + p - (lead * g[i]) % p) % p;
    }
    trim(a);
  }
  return a;
}

FpPoly fp_mulmod(const FpPoly& a, const FpPoly& b, const FpPoly& g, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  FpPoly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  return fp_rem(std::move(out), g, p);
}

FpPoly fp_powmod_x(std::uint64_t exp, const FpPoly& g, std::uint64_t p) {
  FpPoly result = fp_rem({1}, g, p);
  FpPoly base = fp_rem({0, 1}, g, p);
  while (exp > 0) {
    if (exp & 1U) result = fp_mulmod(result, base, g, p);
    base = fp_mulmod(base, base, g, p);
    exp >>= 1U;
  }
  return result;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      out.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

bool is_primitive(const FpPoly& g, std::uint64_t p) {
  const int f = static_cast<int>(g.size()) - 1;
  std::uint64_t order = 1;
  for (int i = 0; i < f; ++i) order *= p;
  order -= 1;
  if (fp_powmod_x(order, g, p) != FpPoly{1}) return false;
  for (auto r : prime_factors(order)) {
    if (fp_powmod_x(order / r, g, p) == FpPoly{1}) return false;
  }
  return true;
}

bool is_irreducible(const FpPoly& g, std::uint64_t p) {
  const int f = static_cast<int>(g.size()) - 1;
  // trial division by every monic polynomial of degree <= f/2
  for (int d = 1; 2 * d <= f; ++d) {
    std::uint64_t count = 1;
    for (int i = 0; i < d; ++i) count *= p;
    for (std::uint64_t s = 0; s < count; ++s) {
      FpPoly h(d + 1, 0);
      std::uint64_t t = s;
      for (int i = 0; i < d; ++i) {
        h[i] = t % p;
        t /= p;
      }
      h[d] = 1;
      if (fp_rem(g, h, p).empty()) return false;
    }
  }
  return true;
}

int ceil_div(int a, int b) { return a <= 0 ? 0 : (a + b - 1) / b; }

}  // namespace

std::vector<Residue> find_unramified_polynomial(std::uint64_t p, int f) {
  if (f == 1) return {0, 1};
  std::uint64_t count = 1;
  for (int i = 0; i < f; ++i) count *= p;
  for (std::uint64_t s = 0; s < count; ++s) {
    FpPoly g(f + 1, 0);
    std::uint64_t t = s;
    for (int i = 0; i < f; ++i) {
      g[i] = t % p;
      t /= p;
    }
    g[f] = 1;
    if (g[0] != 0 && is_primitive(g, p)) return g;
  }
  throw Error("no primitive polynomial found");  // unreachable for prime p
}

LocalRing LocalRing::make(std::uint64_t p, int e, int f, int precision) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime");
  if (e < 1 || f < 1) throw InvalidArgument("e and f must be positive");
  if (e * f > kMaxRank) throw InvalidArgument("e*f > 9 is not supported");
  auto u = find_unramified_polynomial(p, f);
  std::vector<std::int64_t> unram(u.begin(), u.end());
  std::vector<std::vector<std::int64_t>> eis(e + 1, std::vector<std::int64_t>(f, 0));
  eis[0][0] = -static_cast<std::int64_t>(p);
  eis[e][0] = 1;
  return from_polynomials(p, precision, std::move(unram), std::move(eis));
}

LocalRing LocalRing::from_polynomials(std::uint64_t p, int precision,
                                      std::vector<std::int64_t> unram,
                                      std::vector<std::vector<std::int64_t>> eisenstein) {
  if (!is_prime(p)) throw InvalidArgument("p must be prime");
  if (precision < 1) throw InvalidArgument("precision must be positive");
  const int f = static_cast<int>(unram.size()) - 1;
  const int e = static_cast<int>(eisenstein.size()) - 1;
  if (f < 1 || e < 1) throw InvalidArgument("defining polynomials must have positive degree");
  if (e * f > kMaxRank) throw InvalidArgument("e*f > 9 is not supported");
  if (unram.back() != 1) throw InvalidArgument("unramified polynomial must be monic");
  const auto sp = static_cast<std::int64_t>(p);
  auto mod_p = [sp](std::int64_t v) { return static_cast<Residue>(((v % sp) + sp) % sp); };
  FpPoly ubar(f + 1);
  for (int i = 0; i <= f; ++i) ubar[i] = mod_p(unram[i]);
  if (!is_irreducible(ubar, p)) throw InvalidArgument("unramified polynomial is reducible mod p");

  for (auto& coeff : eisenstein) {
    if (static_cast<int>(coeff.size()) != f) {
      throw InvalidArgument("Eisenstein coefficients must have f coordinates");
    }
  }
  const auto& lead = eisenstein[e];
  if (lead[0] != 1 || std::any_of(lead.begin() + 1, lead.end(), [](auto v) { return v != 0; })) {
    throw InvalidArgument("Eisenstein polynomial must be monic");
  }
  for (int j = 0; j < e; ++j) {
    for (auto v : eisenstein[j]) {
      if (v % sp != 0) throw InvalidArgument("Eisenstein coefficients must be divisible by p");
    }
  }
  // constant term must be p times a unit of W
  bool unit = false;
  for (auto v : eisenstein[0]) unit = unit || ((v / sp) % sp != 0);
  if (!unit) throw InvalidArgument("Eisenstein constant term must be exactly divisible by p");

  LocalRing r;
  r.p_ = p;
  r.e_ = e;
  r.f_ = f;
  r.digits_ = precision;
  r.cap_ = e * precision;
  r.unram_int_ = std::move(unram);
  r.eisen_int_ = std::move(eisenstein);
  r.finalize();
  return r;
}

void LocalRing::finalize() {
  zn_ = PrimePowerRing(p_, digits_);
  const Modulus& md = zn_.mod();
  unram_.assign(f_ + 1, 0);
  for (int i = 0; i <= f_; ++i) unram_[i] = md.from_int(unram_int_[i]);
  coord_mod_.fill(1);
  for (int j = 0; j < e_; ++j) {
    int d = std::min(digits_, ceil_div(cap_ - j, e_));
    for (int i = 0; i < f_; ++i) coord_mod_[i + f_ * j] = checked_power(p_, d);
  }
  eisen_.assign(e_ + 1, RingElt{});
  for (int j = 0; j <= e_; ++j) {
    for (int i = 0; i < f_; ++i) eisen_[j].c[i] = md.from_int(eisen_int_[j][i]);
  }
  rho_ = RingElt{};
  if (e_ > 1) {
    // E(y) = y^e + sum a_j y^j with a_0 = p*eps gives p = y * rho,
    // rho = -eps^{-1} (y^{e-1} + sum_{j>=1} a_j y^{j-1}).
    const auto sp = static_cast<std::int64_t>(p_);
    RingElt eps{};
    for (int i = 0; i < f_; ++i) eps.c[i] = md.from_int(eisen_int_[0][i] / sp);
    RingElt t{};
    for (int j = 1; j <= e_; ++j) {
      for (int i = 0; i < f_; ++i) t.c[i + f_ * (j - 1)] = eisen_[j].c[i];
    }
    LocalRing full = *this;
    full.cap_ = e_ * digits_;
    full.finalize_moduli_only();
    rho_ = reduce(full.neg(full.mul(full.inverse(eps), t)));
  }
}

void LocalRing::finalize_moduli_only() {
  coord_mod_.fill(1);
  for (int j = 0; j < e_; ++j) {
    int d = std::min(digits_, ceil_div(cap_ - j, e_));
    for (int i = 0; i < f_; ++i) coord_mod_[i + f_ * j] = checked_power(p_, d);
  }
}

LocalRing LocalRing::quotient(int k) const {
  if (k < 1 || k > cap_) throw InvalidArgument("quotient level out of range");
  LocalRing r = *this;
  r.digits_ = ceil_div(k, e_);
  r.cap_ = k;
  r.finalize();
  return r;
}

LocalRing LocalRing::with_precision(int precision) const {
  if (precision < 1) throw InvalidArgument("precision must be positive");
  LocalRing r = *this;
  r.digits_ = precision;
  r.cap_ = e_ * precision;
  r.finalize();
  return r;
}

LocalRing LocalRing::base() const {
  return from_polynomials(p_, digits_, {0, 1}, {{-static_cast<std::int64_t>(p_)}, {1}});
}

std::uint64_t LocalRing::residue_field_size() const {
  std::uint64_t q = 1;
  for (int i = 0; i < f_; ++i) q *= p_;
  return q;
}

bool LocalRing::same_tower(const LocalRing& o) const {
  return p_ == o.p_ && e_ == o.e_ && f_ == o.f_ && unram_int_ == o.unram_int_ &&
         eisen_int_ == o.eisen_int_;
}

RingElt LocalRing::reduce(RingElt a) const {
  const int n = degree();
  for (int i = 0; i < n; ++i) a.c[i] %= coord_mod_[i];
  for (int i = n; i < kMaxRank; ++i) a.c[i] = 0;
  return a;
}

RingElt LocalRing::one() const { return from_int(1); }

RingElt LocalRing::from_int(std::int64_t v) const {
  RingElt a{};
  a.c[0] = zn_.mod().from_int(v);
  return reduce(a);
}

RingElt LocalRing::from_coords(const std::vector<std::int64_t>& coords) const {
  if (static_cast<int>(coords.size()) > degree()) {
    throw InvalidArgument("too many coordinates for ring element");
  }
  RingElt a{};
  for (std::size_t i = 0; i < coords.size(); ++i) a.c[i] = zn_.mod().from_int(coords[i]);
  return reduce(a);
}

RingElt LocalRing::basis(int index) const {
  RingElt a{};
  a.c[index] = 1;
  return reduce(a);
}

RingElt LocalRing::pi() const { return e_ == 1 ? from_int(static_cast<std::int64_t>(p_)) : basis(f_); }

RingElt LocalRing::x() const { return f_ == 1 ? zero() : basis(1); }

bool LocalRing::is_zero(const RingElt& a) const {
  for (int i = 0; i < degree(); ++i) {
    if (a.c[i] % coord_mod_[i] != 0) return false;
  }
  return true;
}

RingElt LocalRing::add(const RingElt& a, const RingElt& b) const {
  RingElt r{};
  const Modulus& md = zn_.mod();
  for (int i = 0; i < degree(); ++i) r.c[i] = md.add(a.c[i], b.c[i]);
  return reduce(r);
}

RingElt LocalRing::sub(const RingElt& a, const RingElt& b) const {
  RingElt r{};
  const Modulus& md = zn_.mod();
  for (int i = 0; i < degree(); ++i) r.c[i] = md.sub(a.c[i], b.c[i]);
  return reduce(r);
}

RingElt LocalRing::neg(const RingElt& a) const {
  RingElt r{};
  const Modulus& md = zn_.mod();
  for (int i = 0; i < degree(); ++i) r.c[i] = md.neg(a.c[i]);
  return reduce(r);
}

RingElt LocalRing::scale(const RingElt& a, Residue s) const {
  RingElt r{};
  const Modulus& md = zn_.mod();
  s %= md.m;
  for (int i = 0; i < degree(); ++i) r.c[i] = md.mul(a.c[i], s);
  return reduce(r);
}

void LocalRing::unram_mul(const Residue* a, const Residue* b, Residue* out) const {
  const Modulus& md = zn_.mod();
  if (f_ == 1) {
    out[0] = md.mul(a[0], b[0]);
    return;
  }
  std::array<Residue, 2 * kMaxRank> t{};
  for (int i = 0; i < f_; ++i) {
    if (a[i] == 0) continue;
    for (int j = 0; j < f_; ++j) t[i + j] = md.add(t[i + j], md.mul(a[i], b[j]));
  }
  for (int d = 2 * f_ - 2; d >= f_; --d) {
    Residue c = t[d];
    if (c == 0) continue;
    t[d] = 0;
    for (int i = 0; i < f_; ++i) t[d - f_ + i] = md.sub(t[d - f_ + i], md.mul(c, unram_[i]));
  }
  for (int i = 0; i < f_; ++i) out[i] = t[i];
}

RingElt LocalRing::mul(const RingElt& a, const RingElt& b) const {
  const Modulus& md = zn_.mod();
  if (degree() == 1) {
    RingElt r{};
    r.c[0] = md.mul(a.c[0], b.c[0]) % coord_mod_[0];
    return r;
  }
  // products in W of the y-coefficients, then fold y^e back down
  std::array<std::array<Residue, kMaxRank>, 2 * kMaxRank> prod{};
  std::array<Residue, kMaxRank> tmp{};
  for (int j = 0; j < e_; ++j) {
    for (int k = 0; k < e_; ++k) {
      unram_mul(&a.c[f_ * j], &b.c[f_ * k], tmp.data());
      for (int i = 0; i < f_; ++i) prod[j + k][i] = md.add(prod[j + k][i], tmp[i]);
    }
  }
  for (int d = 2 * e_ - 2; d >= e_; --d) {
    for (int j = 0; j < e_; ++j) {
      unram_mul(prod[d].data(), eisen_[j].c.data(), tmp.data());
      for (int i = 0; i < f_; ++i) prod[d - e_ + j][i] = md.sub(prod[d - e_ + j][i], tmp[i]);
    }
  }
  RingElt r{};
  for (int j = 0; j < e_; ++j) {
    for (int i = 0; i < f_; ++i) r.c[i + f_ * j] = prod[j][i];
  }
  return reduce(r);
}

RingElt LocalRing::pow(RingElt a, std::uint64_t exp) const {
  RingElt r = one();
  while (exp > 0) {
    if (exp & 1U) r = mul(r, a);
    a = mul(a, a);
    exp >>= 1U;
  }
  return r;
}

std::optional<int> LocalRing::v_pi(const RingElt& a) const {
  std::optional<int> best;
  for (int j = 0; j < e_; ++j) {
    for (int i = 0; i < f_; ++i) {
      Residue c = a.c[i + f_ * j] % coord_mod_[i + f_ * j];
      if (c == 0) continue;
      int v = e_ * valuation(c, p_) + j;
      if (!best || v < *best) best = v;
    }
  }
  return best;
}

RingElt LocalRing::divide_by_pi(const RingElt& a) const {
  if (is_zero(a)) return zero();
  auto v = v_pi(a);
  if (*v < 1) throw InvalidArgument("element is not divisible by pi");
  RingElt r{};
  if (e_ == 1) {
    for (int i = 0; i < f_; ++i) r.c[i] = a.c[i] / p_;
    return reduce(r);
  }
  RingElt a0{};
  for (int i = 0; i < f_; ++i) a0.c[i] = a.c[i] / p_;
  for (int j = 1; j < e_; ++j) {
    for (int i = 0; i < f_; ++i) r.c[i + f_ * (j - 1)] = a.c[i + f_ * j];
  }
  return add(reduce(r), mul(a0, rho_));
}

RingElt LocalRing::divide_by_pi_power(RingElt a, int t) const {
  for (int i = 0; i < t; ++i) a = divide_by_pi(a);
  return a;
}

RingElt LocalRing::inverse(const RingElt& u) const {
  if (!is_unit(u)) throw InvalidArgument("element is not a unit");
  if (degree() == 1) {
    RingElt r{};
    r.c[0] = zn_.inverse(u.c[0]) % coord_mod_[0];
    return r;
  }
  const auto n = static_cast<std::size_t>(degree());
  std::vector<Residue> rhs(n, 0);
  rhs[0] = 1;
  auto sol = zn_.solve(multiplication_matrix(u), std::move(rhs), n);
  RingElt r{};
  for (std::size_t i = 0; i < n; ++i) r.c[i] = sol[i];
  return reduce(r);
}

RingElt LocalRing::divide(const RingElt& a, const RingElt& b) const {
  auto vb = v_pi(b);
  if (!vb) throw InvalidArgument("division by zero");
  auto va = v_pi(a);
  if (!va) return zero();
  if (*va < *vb) throw InvalidArgument("inexact division");
  RingElt u = divide_by_pi_power(b, *vb);
  RingElt w = divide_by_pi_power(a, *vb);
  return mul(w, inverse(u));
}

std::vector<Residue> LocalRing::multiplication_matrix(const RingElt& a) const {
  // column j = a * basis(j), computed in O / p^N
  LocalRing full = *this;
  full.cap_ = e_ * digits_;
  full.finalize_moduli_only();
  const int n = degree();
  std::vector<Residue> m(static_cast<std::size_t>(n * n), 0);
  for (int j = 0; j < n; ++j) {
    RingElt b{};
    b.c[j] = 1;
    RingElt col = full.mul(a, b);
    for (int i = 0; i < n; ++i) m[static_cast<std::size_t>(i * n + j)] = col.c[i];
  }
  return m;
}

std::optional<Residue> LocalRing::norm_to_Zp(const RingElt& a) const {
  if (is_capped()) throw InvalidArgument("norm needs an uncapped ring");
  Residue d = zn_.determinant(multiplication_matrix(a), static_cast<std::size_t>(degree()));
  if (d == 0) return std::nullopt;
  return d;
}

RingElt LocalRing::embed(Residue base_value) const {
  RingElt a{};
  a.c[0] = base_value % zn_.mod().m;
  return reduce(a);
}

RingElt LocalRing::convert(const LocalRing& from, const RingElt& a) const {
  if (from.p_ != p_ || from.e_ != e_ || from.f_ != f_) {
    throw InvalidArgument("rings have different towers");
  }
  return reduce(a);
}

std::string LocalRing::describe() const {
  std::ostringstream os;
  os << "O(p=" << p_ << ", e=" << e_ << ", f=" << f_ << ", N=" << digits_;
  if (is_capped()) os << ", mod pi^" << cap_;
  os << ")";
  return os.str();
}

std::string LocalRing::format(const RingElt& a) const {
  std::ostringstream os;
  os << "[";
  for (int i = 0; i < degree(); ++i) os << (i ? "," : "") << a.c[i];
  os << "]";
  return os.str();
}

}  // namespace iwasawa
