#include "srn/lattice.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <stdexcept>

#include "srn/model.hpp"

namespace srn {

namespace {

using boost::multiprecision::abs;
using boost::multiprecision::denominator;
using boost::multiprecision::numerator;

bool is_zero(const IntVector& v) {
  return std::all_of(v.begin(), v.end(), [](auto x) { return x == 0; });
}

Integer gcd_integer(Integer a, Integer b) {
  a = abs(a);
  b = abs(b);
  while (b != 0) {
    Integer t = a % b;
    a = b;
    b = t;
  }
  return a;
}

// s*a + t*b = g = gcd(a, b) >= 0
void extended_gcd(const Integer& a, const Integer& b, Integer& g, Integer& s, Integer& t) {
  Integer old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
  while (r != 0) {
    Integer q = old_r / r;
    Integer tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s1;
    old_s = s1;
    s1 = tmp;
    tmp = old_t - q * t1;
    old_t = t1;
    t1 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

}  // namespace

IntVector PrimitiveDirection::step() const {
  IntVector s = vector;
  for (auto& x : s) x /= scalar;
  return s;
}

std::int64_t PrimitiveDirection::multiple_of(const IntVector& w) const {
  const std::size_t j = support.front();
  if (w[j] % vector[j] != 0) throw std::domain_error("vector is not a multiple of omega*");
  const std::int64_t n = w[j] / vector[j];
  for (std::size_t i = 0; i < w.size(); ++i)
    if (w[i] != n * vector[i]) throw std::domain_error("vector is not a multiple of omega*");
  return n;
}

std::optional<PrimitiveDirection> gcd_vector_set(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) throw std::invalid_argument("gcd of an empty vector set");
  for (const auto& v : vectors)
    if (is_zero(v)) throw std::invalid_argument("gcd of a set containing the zero vector");
  if (span_dimension(vectors) != 1) return std::nullopt;

  IntVector p = vectors.front();
  std::int64_t g = 0;
  for (auto x : p) g = std::gcd(g, x);
  for (auto& x : p) x /= g;
  auto first = std::find_if(p.begin(), p.end(), [](auto x) { return x != 0; });
  if (*first < 0)
    for (auto& x : p) x = -x;

  const std::size_t j = static_cast<std::size_t>(first - p.begin());
  std::int64_t n_gcd = 0;
  for (const auto& v : vectors) n_gcd = std::gcd(n_gcd, v[j] / p[j]);

  PrimitiveDirection dir;
  dir.scalar = n_gcd;
  dir.vector = p;
  for (auto& x : dir.vector) x *= n_gcd;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) dir.support.push_back(i);
  return dir;
}

std::vector<IntVector> minimal_set(const std::vector<IntVector>& points) {
  std::vector<IntVector> unique = points;
  std::sort(unique.begin(), unique.end());
  unique.erase(std::unique(unique.begin(), unique.end()), unique.end());
  std::vector<IntVector> result;
  for (std::size_t i = 0; i < unique.size(); ++i) {
    bool minimal = true;
    for (std::size_t k = 0; k < unique.size() && minimal; ++k)
      if (k != i && dominates(unique[i], unique[k])) minimal = false;
    if (minimal) result.push_back(unique[i]);
  }
  return result;
}

bool upward_contains(const std::vector<IntVector>& antichain, const IntVector& x) {
  return std::any_of(antichain.begin(), antichain.end(),
                     [&](const IntVector& y) { return dominates(x, y); });
}

std::size_t span_dimension(const std::vector<IntVector>& vectors) {
  if (vectors.empty()) return 0;
  return IntegerLattice(vectors).rank();
}

IntegerLattice::IntegerLattice(const std::vector<IntVector>& generators)
    : dim_(generators.empty() ? 0 : generators.front().size()) {
  for (const auto& g : generators) add(g);
}

void IntegerLattice::add(const IntVector& v_in) {
  std::vector<Integer> v(v_in.begin(), v_in.end());
  while (true) {
    auto first = std::find_if(v.begin(), v.end(), [](const Integer& x) { return x != 0; });
    if (first == v.end()) return;
    const std::size_t p = static_cast<std::size_t>(first - v.begin());
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), p) - pivots_.begin();
    if (pos == static_cast<std::ptrdiff_t>(pivots_.size()) || pivots_[pos] != p) {
      if (*first < 0)
        for (auto& x : v) x = -x;
      pivots_.insert(pivots_.begin() + pos, p);
      rows_.insert(rows_.begin() + pos, std::move(v));
      return;
    }
    // Unimodular combination of the pivot row and v clearing v[p].
    auto& b = rows_[pos];
    Integer g, s, t;
    extended_gcd(b[p], v[p], g, s, t);
    const Integer bp = b[p] / g, vp = v[p] / g;
    std::vector<Integer> nb(dim_), nv(dim_);
    for (std::size_t j = 0; j < dim_; ++j) {
      nb[j] = s * b[j] + t * v[j];
      nv[j] = bp * v[j] - vp * b[j];
    }
    b = std::move(nb);
    v = std::move(nv);
  }
}

bool IntegerLattice::contains(const IntVector& v_in) const {
  std::vector<Integer> v(v_in.begin(), v_in.end());
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    for (std::size_t j = (r == 0 ? 0 : pivots_[r - 1] + 1); j < p; ++j)
      if (v[j] != 0) return false;
    if (v[p] % rows_[r][p] != 0) return false;
    const Integer q = v[p] / rows_[r][p];
    for (std::size_t j = 0; j < dim_; ++j) v[j] -= q * rows_[r][j];
  }
  return std::all_of(v.begin(), v.end(), [](const Integer& x) { return x == 0; });
}

namespace {

struct FmRow {
  std::vector<Rational> a;
  Rational b;
  std::vector<Rational> mult;
};

bool all_zero(const std::vector<Rational>& a) {
  return std::all_of(a.begin(), a.end(), [](const Rational& x) { return x == 0; });
}

// Scale by a positive factor so the first nonzero coefficient has magnitude one.
void normalise(FmRow& row) {
  auto it = std::find_if(row.a.begin(), row.a.end(), [](const Rational& x) { return x != 0; });
  if (it == row.a.end()) return;
  const Rational f = abs(*it);
  if (f == 1) return;
  for (auto& x : row.a) x /= f;
  row.b /= f;
  for (auto& m : row.mult) m /= f;
}

constexpr std::size_t kMaxFmRows = 200000;

}  // namespace

FarkasResult solve_inequalities(const std::vector<std::vector<Rational>>& lhs,
                                const std::vector<Rational>& rhs) {
  const std::size_t m = lhs.size();
  const std::size_t n = m ? lhs.front().size() : 0;
  std::vector<FmRow> current;
  current.reserve(m);
  for (std::size_t i = 0; i < m; ++i) {
    FmRow row{lhs[i], rhs[i], std::vector<Rational>(m)};
    row.mult[i] = 1;
    current.push_back(std::move(row));
  }

  auto check_constant_rows = [](std::vector<FmRow>& rows) -> const FmRow* {
    std::vector<FmRow> kept;
    for (auto& r : rows) {
      if (all_zero(r.a)) {
        if (r.b > 0) {
          kept.push_back(r);
          rows.swap(kept);
          return &rows.back();
        }
        continue;  // 0 >= b with b <= 0 always holds
      }
      kept.push_back(std::move(r));
    }
    rows.swap(kept);
    return nullptr;
  };

  if (auto bad = check_constant_rows(current)) return {std::nullopt, bad->mult};

  std::vector<std::vector<FmRow>> levels(n);
  for (std::size_t step = 0; step < n; ++step) {
    const std::size_t k = n - 1 - step;
    levels[k] = current;
    std::vector<FmRow> pos, neg, next;
    for (auto& r : current) {
      if (r.a[k] > 0)
        pos.push_back(r);
      else if (r.a[k] < 0)
        neg.push_back(r);
      else
        next.push_back(r);
    }
    std::map<std::pair<std::vector<Rational>, Rational>, bool> seen;
    for (auto& r : next) seen[{r.a, r.b}] = true;
    for (const auto& p : pos) {
      for (const auto& q : neg) {
        const Rational fp = -q.a[k], fq = p.a[k];
        FmRow r{std::vector<Rational>(n), fp * p.b + fq * q.b, std::vector<Rational>(m)};
        for (std::size_t j = 0; j < n; ++j) r.a[j] = fp * p.a[j] + fq * q.a[j];
        r.a[k] = 0;
        for (std::size_t i = 0; i < m; ++i) r.mult[i] = fp * p.mult[i] + fq * q.mult[i];
        normalise(r);
        if (seen.emplace(std::make_pair(r.a, r.b), true).second) next.push_back(std::move(r));
      }
    }
    if (next.size() > kMaxFmRows) throw std::length_error("Fourier-Motzkin elimination exceeded its row cap");
    if (auto bad = check_constant_rows(next)) return {std::nullopt, bad->mult};
    current = std::move(next);
  }

  std::vector<Rational> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::optional<Rational> lower, upper;
    for (const auto& r : levels[k]) {
      if (r.a[k] == 0) continue;
      Rational rest = r.b;
      for (std::size_t j = 0; j < k; ++j) rest -= r.a[j] * x[j];
      const Rational bound = rest / r.a[k];
      if (r.a[k] > 0) {
        if (!lower || bound > *lower) lower = bound;
      } else {
        if (!upper || bound < *upper) upper = bound;
      }
    }
    if (lower)
      x[k] = *lower;
    else if (upper)
      x[k] = std::min(*upper, Rational(0));
    else
      x[k] = 0;
  }
  return {x, {}};
}

std::vector<Integer> primitive_integer_vector(const std::vector<Rational>& v) {
  Integer lcm = 1;
  for (const auto& x : v) {
    const Integer d = denominator(x);
    lcm = lcm / gcd_integer(lcm, d) * d;
  }
  std::vector<Integer> out(v.size());
  Integer g = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    out[i] = numerator(v[i]) * (lcm / denominator(v[i]));
    g = gcd_integer(g, out[i]);
  }
  if (g > 1)
    for (auto& x : out) x /= g;
  return out;
}

PositiveIndependence positively_linearly_independent(const std::vector<IntVector>& omegas) {
  if (omegas.empty()) throw std::invalid_argument("empty reaction vector set");
  const std::size_t d = omegas.front().size();
  // Gordan: either v.w >= 1 for all w is solvable, or a nonnegative
  // combination of the w vanishes.
  std::vector<std::vector<Rational>> lhs;
  std::vector<Rational> rhs;
  for (const auto& w : omegas) {
    lhs.emplace_back(w.begin(), w.end());
    rhs.emplace_back(1);
  }
  auto res = solve_inequalities(lhs, rhs);
  PositiveIndependence out;
  if (res.feasible()) {
    out.independent = true;
    out.separator = primitive_integer_vector(*res.solution);
    (void)d;
  } else {
    out.independent = false;
    out.witness = primitive_integer_vector(res.multipliers);
  }
  return out;
}

std::optional<std::vector<Integer>> conservation_law(const std::vector<IntVector>& omegas,
                                                     std::size_t dimension) {
  std::vector<std::vector<Rational>> lhs;
  std::vector<Rational> rhs;
  for (const auto& w : omegas) {
    std::vector<Rational> row(w.begin(), w.end()), neg(dimension);
    for (std::size_t j = 0; j < dimension; ++j) neg[j] = -row[j];
    lhs.push_back(row);
    rhs.emplace_back(0);
    lhs.push_back(neg);
    rhs.emplace_back(0);
  }
  for (std::size_t j = 0; j < dimension; ++j) {
    std::vector<Rational> row(dimension);
    row[j] = 1;
    lhs.push_back(row);
    rhs.emplace_back(1);
  }
  auto res = solve_inequalities(lhs, rhs);
  if (!res.feasible()) return std::nullopt;
  return primitive_integer_vector(*res.solution);
}

bool is_conservative(const ReactionNetwork& network) {
  auto js = jump_structure(network);
  return conservation_law(js.omegas, network.dimension()).has_value();
}

bool in_rational_cone(const std::vector<IntVector>& generators, const IntVector& target,
                      std::vector<Rational>* separator) {
  const std::size_t d = target.size();
  // Farkas: target lies outside the cone iff some v has v.g >= 0 for all g
  // and v.target <= -1.
  std::vector<std::vector<Rational>> lhs;
  std::vector<Rational> rhs;
  for (const auto& g : generators) {
    lhs.emplace_back(g.begin(), g.end());
    rhs.emplace_back(0);
  }
  std::vector<Rational> row(d);
  for (std::size_t j = 0; j < d; ++j) row[j] = -target[j];
  lhs.push_back(row);
  rhs.emplace_back(1);
  auto res = solve_inequalities(lhs, rhs);
  if (res.feasible()) {
    if (separator) *separator = *res.solution;
    return false;
  }
  return true;
}

}  // namespace srn
