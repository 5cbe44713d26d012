#include "iwasawa/module.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <string>
#include <unordered_set>

#include "iwasawa/error.hpp"

namespace iwasawa {

ModulePresentation ModulePresentation::free(RingPtr ring, int vars, int rank) {
  if (rank < 0) throw InvalidArgument("negative rank");
  return elementary(std::move(ring), vars, {}, {}, rank);
}

ModulePresentation ModulePresentation::zero(RingPtr ring, int vars) { return free(std::move(ring), vars, 0); }

ModulePresentation ModulePresentation::cyclic(const AlgebraElt& h) {
  ModulePresentation m;
  m.ring = h.ring_ptr();
  m.vars = h.vars();
  m.rank = 1;
  m.relations.push_back({h});
  m.kind = ShortcutKind::cyclic;
  m.cyclic_generator = h;
  return m;
}

ModulePresentation ModulePresentation::elementary(RingPtr ring, int vars, std::vector<int> pi_exponents,
                                                  std::vector<AlgebraElt> series, int free_rank) {
  if (free_rank < 0) throw InvalidArgument("negative rank");
  ModulePresentation m;
  m.ring = ring;
  m.vars = vars;
  m.rank = static_cast<int>(pi_exponents.size() + series.size()) + free_rank;
  m.free_rank = free_rank;
  m.kind = ShortcutKind::elementary;
  int idx = 0;
  for (int e : pi_exponents) {
    if (e < 1) throw InvalidArgument("elementary exponents must be positive");
    std::vector<AlgebraElt> rel(m.rank, AlgebraElt(ring, vars));
    rel[idx++] = AlgebraElt::constant(ring, vars, ring->pow(ring->pi(), static_cast<std::uint64_t>(e)));
    m.relations.push_back(std::move(rel));
  }
  for (const auto& f : series) {
    if (f.vars() != vars) throw InvalidArgument("series has wrong variable count");
    std::vector<AlgebraElt> rel(m.rank, AlgebraElt(ring, vars));
    rel[idx++] = f;
    m.relations.push_back(std::move(rel));
  }
  m.pi_exponents = std::move(pi_exponents);
  m.series = std::move(series);
  return m;
}

ModulePresentation direct_sum(const ModulePresentation& a, const ModulePresentation& b) {
  if (a.vars != b.vars) throw InvalidArgument("direct sum of modules over different algebras");
  ModulePresentation m;
  m.ring = a.ring;
  m.vars = a.vars;
  m.rank = a.rank + b.rank;
  AlgebraElt zero(a.ring, a.vars);
  for (const auto& rel : a.relations) {
    auto r = rel;
    r.resize(m.rank, zero);
    m.relations.push_back(std::move(r));
  }
  for (const auto& rel : b.relations) {
    std::vector<AlgebraElt> r(a.rank, zero);
    for (const auto& x : rel) r.push_back(x.convert(a.ring));
    m.relations.push_back(std::move(r));
  }
  auto as_elementary = [](const ModulePresentation& x) {
    if (x.kind == ShortcutKind::cyclic) {
      return ModulePresentation::elementary(x.ring, x.vars, {}, {*x.cyclic_generator});
    }
    return x;
  };
  if (a.kind != ShortcutKind::generic && b.kind != ShortcutKind::generic) {
    // keep the generator order torsion, series, free
    auto ea = as_elementary(a), eb = as_elementary(b);
    auto exps = ea.pi_exponents;
    exps.insert(exps.end(), eb.pi_exponents.begin(), eb.pi_exponents.end());
    auto series = ea.series;
    for (const auto& x : eb.series) series.push_back(x.convert(a.ring));
    return ModulePresentation::elementary(a.ring, a.vars, exps, series, ea.free_rank + eb.free_rank);
  }
  return m;
}

ModulePresentation restriction_of_scalars(const ModulePresentation& m) {
  const int d = m.ring->degree();
  ModulePresentation out;
  out.ring = share(m.ring->base());
  out.vars = m.vars;
  out.rank = m.rank * d;
  for (const auto& rel : m.relations) {
    std::vector<std::vector<std::vector<AlgebraElt>>> mats;
    for (const auto& x : rel) mats.push_back(restriction_matrix(x));
    for (int j = 0; j < d; ++j) {
      std::vector<AlgebraElt> r;
      r.reserve(out.rank);
      for (int g = 0; g < m.rank; ++g) {
        for (int i = 0; i < d; ++i) r.push_back(mats[g][i][j].convert(out.ring));
      }
      out.relations.push_back(std::move(r));
    }
  }
  return out;
}

ModulePresentation transform(const ModulePresentation& m, const IntMatrix& mat, int degree_cap) {
  ModulePresentation out = m;
  for (auto& rel : out.relations) rel = apply_automorphism(rel, mat, degree_cap);
  if (out.cyclic_generator) out.cyclic_generator = out.relations[0][0];
  for (auto& s : out.series) s = apply_automorphism(s, mat, degree_cap);
  return out;
}

namespace {
thread_local int scoped_cap = 0;
}

ScopedDimensionCap::ScopedDimensionCap(int cap) : previous_(scoped_cap) {
  if (cap < 1) throw InvalidArgument("dimension cap must be positive");
  scoped_cap = cap;
}

ScopedDimensionCap::~ScopedDimensionCap() { scoped_cap = previous_; }

int ambient_dimension_cap() {
  if (const char* env = std::getenv("IWASAWA_MAX_DIM")) {
    try {
      int v = std::stoi(env);
      if (v > 0) return v;
    } catch (const std::exception&) {
    }
    throw InvalidArgument("IWASAWA_MAX_DIM must be a positive integer");
  }
  return scoped_cap > 0 ? scoped_cap : 4096;
}

namespace {

struct DenseLayout {
  std::vector<int> sizes;    // p^levels[i]
  std::vector<int> strides;  // variable 0 fastest
  int block = 1;
  std::vector<std::vector<RingElt>> wrap;  // T_i^P = sum_j wrap[i][j] T_i^j
};

DenseLayout make_layout(const RingPtr& ring, int vars, const std::vector<int>& levels) {
  DenseLayout lay;
  long long block = 1;
  for (int i = 0; i < vars; ++i) {
    auto size = static_cast<long long>(checked_power(ring->p(), levels[i]));
    lay.strides.push_back(static_cast<int>(block));
    lay.sizes.push_back(static_cast<int>(size));
    block *= size;
    if (block > (1LL << 30)) throw ResourceCapError("coinvariant quotient too large");
    AlgebraElt w = omega(ring, levels[i], i, vars);
    std::vector<RingElt> coeffs(size);
    for (long long j = 0; j < size; ++j) {
      Exponent e(vars, 0);
      e[i] = static_cast<int>(j);
      coeffs[j] = ring->neg(w.coefficient(e));
    }
    lay.wrap.push_back(std::move(coeffs));
  }
  lay.block = static_cast<int>(block);
  return lay;
}

// vec <- T_i * vec, blockwise
void mul_t(const LocalRing& r, const DenseLayout& lay, int i, std::vector<RingElt>& vec) {
  std::vector<RingElt> out(vec.size(), r.zero());
  const int stride = lay.strides[i];
  const int size = lay.sizes[i];
  for (std::size_t idx = 0; idx < vec.size(); ++idx) {
    if (r.is_zero(vec[idx])) continue;
    int d = static_cast<int>((idx % lay.block) / stride) % size;
    if (d + 1 < size) {
      out[idx + stride] = r.add(out[idx + stride], vec[idx]);
      continue;
    }
    std::size_t base = idx - static_cast<std::size_t>(d) * stride;
    for (int j = 0; j < size; ++j) {
      const RingElt& w = lay.wrap[i][j];
      if (r.is_zero(w)) continue;
      out[base + j * stride] = r.add(out[base + j * stride], r.mul(w, vec[idx]));
    }
  }
  vec = std::move(out);
}

void add_polynomial(const LocalRing& r, const DenseLayout& lay, const AlgebraElt& h, int block_index,
                    std::vector<RingElt>& vec) {
  const int l = static_cast<int>(lay.sizes.size());
  const std::size_t offset = static_cast<std::size_t>(block_index) * lay.block;
  for (const auto& [e, c] : h.terms()) {
    RingElt cc = r.convert(h.ring(), c);
    bool direct = true;
    std::size_t idx = 0;
    for (int i = 0; i < l; ++i) {
      if (e[i] >= lay.sizes[i]) direct = false;
      idx += static_cast<std::size_t>(e[i]) * lay.strides[i];
    }
    if (direct) {
      vec[offset + idx] = r.add(vec[offset + idx], cc);
      continue;
    }
    std::vector<RingElt> tmp(lay.block, r.zero());
    tmp[0] = cc;
    for (int i = 0; i < l; ++i) {
      for (int d = 0; d < e[i]; ++d) mul_t(r, lay, i, tmp);
    }
    for (int j = 0; j < lay.block; ++j) vec[offset + j] = r.add(vec[offset + j], tmp[j]);
  }
}

SparseColumn to_sparse(const LocalRing& r, const std::vector<RingElt>& vec) {
  SparseColumn col;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (!r.is_zero(vec[i])) col.emplace_back(static_cast<int>(i), vec[i]);
  }
  return col;
}

}  // namespace

FinitePresentation coinvariant_presentation(const ModulePresentation& m, const std::vector<int>& levels) {
  if (static_cast<int>(levels.size()) != m.vars) throw InvalidArgument("level vector has wrong length");
  for (int a : levels) {
    if (a < 0) throw InvalidArgument("negative level");
  }
  long long dim = m.rank;
  for (int a : levels) {
    for (int j = 0; j < a; ++j) {
      dim *= static_cast<long long>(m.ring->p());
      if (dim > ambient_dimension_cap()) {
        throw ResourceCapError("ambient dimension exceeds cap " + std::to_string(ambient_dimension_cap()));
      }
    }
  }
  if (dim > ambient_dimension_cap()) {
    throw ResourceCapError("ambient dimension exceeds cap " + std::to_string(ambient_dimension_cap()));
  }
  const LocalRing& r = *m.ring;
  DenseLayout lay = make_layout(m.ring, m.vars, levels);
  FinitePresentation fp;
  fp.ring = m.ring;
  fp.rows = static_cast<int>(dim);
  for (const auto& rel : m.relations) {
    if (static_cast<int>(rel.size()) != m.rank) throw InvalidArgument("relation has wrong length");
    std::vector<RingElt> vec(dim, r.zero());
    for (int g = 0; g < m.rank; ++g) add_polynomial(r, lay, rel[g], g, vec);
    // all monomial multiples, variable 0 innermost
    std::function<void(int, std::vector<RingElt>)> walk = [&](int axis, std::vector<RingElt> v) {
      if (axis < 0) {
        auto col = to_sparse(r, v);
        if (!col.empty()) fp.columns.push_back(std::move(col));
        return;
      }
      for (int d = 0; d < lay.sizes[axis]; ++d) {
        if (d + 1 < lay.sizes[axis]) {
          walk(axis - 1, v);
          mul_t(r, lay, axis, v);
        } else {
          walk(axis - 1, std::move(v));
          break;
        }
      }
    };
    walk(m.vars - 1, std::move(vec));
  }
  return fp;
}

FinitePresentation coinvariant_presentation(const ModulePresentation& m, int n) {
  return coinvariant_presentation(m, std::vector<int>(m.vars, n));
}

namespace {

struct Entry {
  int row;
  RingElt value;
  int v;
};

class Eliminator {
 public:
  Eliminator(const LocalRing& r, const FinitePresentation& fp)
      : r_(r), rows_(fp.rows), row_cols_(fp.rows), row_alive_(fp.rows, 1), stamp_(0) {
    for (const auto& col : fp.columns) {
      std::vector<Entry> c;
      for (const auto& [row, val] : col) {
        if (row < 0 || row >= rows_) throw InvalidArgument("row index out of range");
        RingElt x = r_.convert(*fp.ring, val);
        auto v = r_.v_pi(x);
        if (v) c.push_back({row, x, *v});
      }
      std::sort(c.begin(), c.end(), [](const Entry& a, const Entry& b) { return a.row < b.row; });
      int id = static_cast<int>(cols_.size());
      for (const auto& e : c) row_cols_[e.row].push_back(id);
      cols_.push_back(std::move(c));
      col_alive_.push_back(1);
    }
    seen_.assign(cols_.size(), 0);
  }

  DiagonalForm run() {
    DiagonalForm out;
    out.cap = r_.cap();
    for (int t = 0; t < r_.cap(); ++t) {
      bool progress = true;
      while (progress) {
        progress = false;
        for (std::size_t c = 0; c < cols_.size(); ++c) {
          if (!col_alive_[c]) continue;
          const Entry* best = nullptr;
          for (const auto& e : cols_[c]) {
            if (e.v != t) continue;
            if (!best || row_cols_[e.row].size() < row_cols_[best->row].size()) best = &e;
          }
          if (!best) continue;
          pivot(static_cast<int>(c), best->row, best->value, t);
          out.pivots.push_back(t);
          progress = true;
        }
      }
    }
    for (int i = 0; i < rows_; ++i) out.free_rows += row_alive_[i];
    return out;
  }

 private:
  void pivot(int c, int row, RingElt value, int t) {
    RingElt unit_inv = r_.inverse(r_.divide_by_pi_power(value, t));
    std::vector<Entry> pcol = std::move(cols_[c]);
    cols_[c].clear();
    col_alive_[c] = 0;
    row_alive_[row] = 0;
    ++stamp_;
    std::vector<int> touched = row_cols_[row];
    for (int j : touched) {
      if (!col_alive_[j] || seen_[j] == stamp_) continue;
      seen_[j] = stamp_;
      auto& cj = cols_[j];
      auto it = std::lower_bound(cj.begin(), cj.end(), row, [](const Entry& e, int r) { return e.row < r; });
      if (it == cj.end() || it->row != row) continue;
      RingElt q = r_.mul(r_.divide_by_pi_power(it->value, t), unit_inv);
      cj = axpy(j, cj, q, pcol);
      if (cj.empty()) col_alive_[j] = 0;
    }
    row_cols_[row].clear();
  }

  // a - q*b, both sorted by row
  std::vector<Entry> axpy(int id, const std::vector<Entry>& a, const RingElt& q, const std::vector<Entry>& b) {
    std::vector<Entry> out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
      if (j == b.size() || (i < a.size() && a[i].row < b[j].row)) {
        out.push_back(a[i++]);
        continue;
      }
      RingElt x = r_.neg(r_.mul(q, b[j].value));
      bool fresh = true;
      if (i < a.size() && a[i].row == b[j].row) {
        x = r_.add(a[i].value, x);
        fresh = false;
        ++i;
      }
      int row = b[j].row;
      ++j;
      if (!row_alive_[row]) continue;
      auto v = r_.v_pi(x);
      if (!v) continue;
      if (fresh) row_cols_[row].push_back(id);
      out.push_back({row, x, *v});
    }
    return out;
  }

  const LocalRing& r_;
  int rows_;
  std::vector<std::vector<Entry>> cols_;
  std::vector<char> col_alive_;
  std::vector<std::vector<int>> row_cols_;
  std::vector<char> row_alive_;
  std::vector<long> seen_;
  long stamp_;
};

}  // namespace

DiagonalForm diagonal_form(const FinitePresentation& fp, int k) {
  if (k < 1) throw InvalidArgument("truncation level must be positive");
  if (k > fp.ring->cap()) throw PrecisionError("truncation level exceeds ring precision");
  LocalRing rk = fp.ring->quotient(k);
  return Eliminator(rk, fp).run();
}

long long quotient_valuation(const FinitePresentation& fp, int k) {
  DiagonalForm d = diagonal_form(fp, k);
  long long s = static_cast<long long>(d.free_rows) * k;
  for (int t : d.pivots) s += t;
  return s * fp.ring->f();
}

long long brute_force_valuation(const FinitePresentation& fp, int k) {
  LocalRing rk = fp.ring->quotient(k);
  const int deg = rk.degree();
  // mixed-radix code of a vector in (O/pi^k)^rows
  std::vector<Residue> radix;
  double log_size = 0;
  for (int row = 0; row < fp.rows; ++row) {
    for (int i = 0; i < deg; ++i) {
      radix.push_back(rk.coordinate_modulus(i));
      log_size += std::log2(static_cast<double>(rk.coordinate_modulus(i)));
    }
  }
  if (log_size > 20.0 + 1e-9) throw ResourceCapError("enumeration bound 2^20 exceeded");
  using Vec = std::vector<RingElt>;
  auto encode = [&](const Vec& v) {
    std::uint64_t code = 0;
    std::size_t pos = 0;
    for (int row = 0; row < fp.rows; ++row) {
      for (int i = 0; i < deg; ++i, ++pos) code = code * radix[pos] + v[row].c[i];
    }
    return code;
  };
  std::vector<Vec> gens;
  for (const auto& col : fp.columns) {
    Vec v(fp.rows, rk.zero());
    for (const auto& [row, val] : col) v[row] = rk.add(v[row], rk.convert(*fp.ring, val));
    for (int b = 0; b < deg; ++b) {
      Vec g(fp.rows);
      for (int row = 0; row < fp.rows; ++row) g[row] = rk.mul(v[row], rk.basis(b));
      gens.push_back(std::move(g));
    }
  }
  std::unordered_set<std::uint64_t> seen;
  std::vector<Vec> frontier{Vec(fp.rows, rk.zero())};
  seen.insert(encode(frontier[0]));
  while (!frontier.empty()) {
    std::vector<Vec> next;
    for (const auto& x : frontier) {
      for (const auto& g : gens) {
        Vec y(fp.rows);
        for (int row = 0; row < fp.rows; ++row) y[row] = rk.add(x[row], g[row]);
        if (seen.insert(encode(y)).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  long long image = valuation(seen.size(), rk.p());
  return static_cast<long long>(rk.f()) * k * fp.rows - image;
}

std::vector<GrowthSeries> growth_scans(const ModulePresentation& m, const std::vector<int>& ks,
                                       const std::vector<int>& ns, const std::vector<int>& offsets) {
  if (ks.empty()) throw InvalidArgument("no truncation levels given");
  int kmax = *std::max_element(ks.begin(), ks.end());
  GrowthSeries proto;
  proto.p = m.ring->p();
  proto.l = m.vars;
  proto.e = m.ring->e();
  proto.f = m.ring->f();
  std::vector<GrowthSeries> out(ks.size(), proto);
  std::vector<int> off = offsets.empty() ? std::vector<int>(m.vars, 0) : offsets;
  if (static_cast<int>(off.size()) != m.vars) throw InvalidArgument("offset vector has wrong length");
  int last = -1;
  for (int n : ns) {
    if (n <= last) throw InvalidArgument("levels must be strictly increasing");
    last = n;
    std::vector<int> levels(m.vars);
    for (int i = 0; i < m.vars; ++i) levels[i] = off[i] + n;
    auto d = diagonal_form(coinvariant_presentation(m, levels), kmax);
    for (std::size_t i = 0; i < ks.size(); ++i) {
      int k = ks[i];
      if (k < 1) throw InvalidArgument("truncation level must be positive");
      long long v = static_cast<long long>(d.free_rows) * k;
      for (int t : d.pivots) v += std::min(t, k);
      out[i].points.push_back({n, k, v * m.ring->f()});
    }
  }
  return out;
}

GrowthSeries growth_scan(const ModulePresentation& m, int k, const std::vector<int>& ns,
                         const std::vector<int>& offsets) {
  return growth_scans(m, {k}, ns, offsets).front();
}

GrowthFit fit_leading(const GrowthSeries& s) {
  if (s.points.size() < 2) throw EstimationError("need at least two levels to fit");
  const auto& top = s.points.back();
  const auto& prev = s.points[s.points.size() - 2];
  if (top.n != prev.n + 1) throw EstimationError("top two levels must be consecutive");
  const auto p = static_cast<long long>(s.p);
  auto pw = [p](long long e) {
    long long r = 1;
    for (long long i = 0; i < e; ++i) r = checked_mul(r, p);
    return r;
  };
  GrowthFit fit;
  long long pnl = pw(static_cast<long long>(top.n) * s.l);
  fit.c_raw = Rational(top.valuation, pnl);
  long long num = top.valuation - pw(s.l - 1) * prev.valuation;
  long long den = pnl / p * (p - 1);
  fit.c = Rational(num, den);
  double c = boost::rational_cast<double>(fit.c);
  fit.c_rounded = std::llround(c);
  fit.rounds = std::fabs(c - static_cast<double>(fit.c_rounded)) < 0.25;
  for (const auto& pt : s.points) {
    double lead = static_cast<double>(fit.c_rounded) * static_cast<double>(pw(static_cast<long long>(pt.n) * s.l));
    double scale = static_cast<double>(pt.k) * static_cast<double>(pw(static_cast<long long>(pt.n) * (s.l - 1)));
    double r = (static_cast<double>(pt.valuation) - lead) / scale;
    fit.residuals.push_back(r);
    fit.max_residual = std::max(fit.max_residual, std::fabs(r));
  }
  double rt = std::fabs(fit.residuals.back());
  double rp = std::fabs(fit.residuals[fit.residuals.size() - 2]);
  fit.bounded = rp == 0 ? rt == 0 : rt <= 2 * rp;
  return fit;
}

int max_feasible_level(const ModulePresentation& m, int cap, const std::vector<int>& offsets) {
  std::vector<int> off = offsets.empty() ? std::vector<int>(m.vars, 0) : offsets;
  int n = -1;
  for (int cand = 0; cand < 64; ++cand) {
    long double dim = std::max(m.rank, 1);
    for (int i = 0; i < m.vars; ++i) dim *= std::pow(static_cast<long double>(m.ring->p()), off[i] + cand);
    if (dim > cap) break;
    n = cand;
  }
  return n;
}

}  // namespace iwasawa
