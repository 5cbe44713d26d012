#include "iwasawa/cyclotomic.hpp"

#include "iwasawa/error.hpp"

namespace iwasawa {

CycloRing::CycloRing(std::uint64_t p, int level, int precision)
    : p_(p), level_(level), phi_(1), order_(1), step_(1), zn_(p, precision) {
  if (level < 0) throw InvalidArgument("negative cyclotomic level");
  for (int i = 0; i < level; ++i) {
    if (order_ > (std::uint64_t{1} << 20) / p) throw ResourceCapError("cyclotomic level too large");
    order_ *= p;
  }
  if (level > 0) {
    step_ = order_ / p;
    phi_ = static_cast<int>(step_ * (p - 1));
  }
}

CycloElt CycloRing::zero() const { return CycloElt{std::vector<Residue>(phi_, 0)}; }

CycloElt CycloRing::one() const { return from_residue(1 % zn_.mod().m); }

CycloElt CycloRing::from_int(std::int64_t v) const { return from_residue(zn_.mod().from_int(v)); }

CycloElt CycloRing::from_residue(Residue v) const {
  CycloElt a = zero();
  a.c[0] = v % zn_.mod().m;
  return a;
}

CycloElt CycloRing::zeta_power(std::int64_t u) const {
  auto n = static_cast<std::int64_t>(order_);
  std::int64_t r = ((u % n) + n) % n;
  std::vector<Residue> coeffs(static_cast<std::size_t>(r) + 1, 0);
  coeffs[r] = 1 % zn_.mod().m;
  return reduce(std::move(coeffs));
}

CycloElt CycloRing::reduce(std::vector<Residue> coeffs) const {
  const Modulus& md = zn_.mod();
  if (level_ == 0) {
    Residue s = 0;
    for (Residue v : coeffs) s = md.add(s, v % md.m);
    return from_residue(s);
  }
  // X^phi = -sum_{j<p-1} X^(j*step)
  for (std::size_t d = coeffs.size(); d-- > static_cast<std::size_t>(phi_);) {
    Residue v = coeffs[d] % md.m;
    coeffs[d] = 0;
    if (v == 0) continue;
    std::size_t base = d - phi_;
    for (std::uint64_t j = 0; j + 1 < p_; ++j) {
      Residue& t = coeffs[base + j * step_];
      t = md.sub(t % md.m, v);
    }
  }
  coeffs.resize(phi_, 0);
  for (Residue& v : coeffs) v %= md.m;
  return CycloElt{std::move(coeffs)};
}

bool CycloRing::is_zero(const CycloElt& a) const {
  for (Residue v : a.c) {
    if (v != 0) return false;
  }
  return true;
}

CycloElt CycloRing::add(const CycloElt& a, const CycloElt& b) const {
  CycloElt r = zero();
  for (int i = 0; i < phi_; ++i) r.c[i] = zn_.mod().add(a.c[i], b.c[i]);
  return r;
}

CycloElt CycloRing::sub(const CycloElt& a, const CycloElt& b) const {
  CycloElt r = zero();
  for (int i = 0; i < phi_; ++i) r.c[i] = zn_.mod().sub(a.c[i], b.c[i]);
  return r;
}

CycloElt CycloRing::mul(const CycloElt& a, const CycloElt& b) const {
  const Modulus& md = zn_.mod();
  std::vector<Residue> prod(2 * phi_ - 1, 0);
  for (int i = 0; i < phi_; ++i) {
    if (a.c[i] == 0) continue;
    for (int j = 0; j < phi_; ++j) {
      if (b.c[j] == 0) continue;
      prod[i + j] = md.add(prod[i + j], md.mul(a.c[i], b.c[j]));
    }
  }
  return reduce(std::move(prod));
}

CycloElt CycloRing::scale(const CycloElt& a, Residue s) const {
  CycloElt r = zero();
  for (int i = 0; i < phi_; ++i) r.c[i] = zn_.mod().mul(a.c[i], s);
  return r;
}

CycloElt CycloRing::conjugate(const CycloElt& a, std::int64_t u) const {
  if (level_ > 0 && ((u % static_cast<std::int64_t>(p_)) + p_) % p_ == 0) {
    throw InvalidArgument("Galois exponent must be prime to p");
  }
  auto n = static_cast<std::int64_t>(order_);
  std::int64_t ur = ((u % n) + n) % n;
  std::vector<Residue> coeffs(order_, 0);
  for (int i = 0; i < phi_; ++i) {
    std::size_t d = static_cast<std::size_t>((ur * i) % n);
    coeffs[d] = zn_.mod().add(coeffs[d], a.c[i]);
  }
  return reduce(std::move(coeffs));
}

Residue CycloRing::norm(const CycloElt& a) const {
  std::vector<Residue> m(static_cast<std::size_t>(phi_) * phi_, 0);
  CycloElt col = a;
  CycloElt zeta = zeta_power(1);
  for (int j = 0; j < phi_; ++j) {
    for (int i = 0; i < phi_; ++i) m[i * phi_ + j] = col.c[i];
    col = mul(col, zeta);
  }
  return zn_.determinant(std::move(m), phi_);
}

std::optional<Rational> CycloRing::vp(const CycloElt& a) const {
  if (is_zero(a)) return std::nullopt;
  auto v = zn_.val(norm(a));
  if (!v) return std::nullopt;
  return Rational(*v, phi_);
}

}  // namespace iwasawa
