#include "srn/onedim.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace srn {

namespace {

bool in_support(const PrimitiveDirection& d, std::size_t j) { return d.vector[j] != 0; }

// Species outside supp omega* whose count differs from c are irrelevant; a
// reaction fires somewhere on L_c iff c covers its catalyst part.
bool active_on(const PrimitiveDirection& d, const Reaction& r, const State& c) {
  for (std::size_t j = 0; j < c.size(); ++j)
    if (!in_support(d, j) && c[j] < r.reactant[j]) return false;
  return true;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

std::int64_t mod(std::int64_t a, std::int64_t m) { return ((a % m) + m) % m; }

// Smallest index k >= 0 with line.point(k) >= y, if any.
std::optional<std::int64_t> first_above(const LatticeLine& line, const Complex& y) {
  std::int64_t k = 0;
  for (std::size_t j = 0; j < y.size(); ++j) {
    if (line.step[j] == 0) {
      if (line.base[j] < y[j]) return std::nullopt;
    } else if (line.step[j] > 0) {
      k = std::max(k, ceil_div(y[j] - line.base[j], line.step[j]));
    } else if (line.base[j] < y[j]) {
      return std::nullopt;
    }
  }
  if (line.length && k > *line.length) return std::nullopt;
  return k;
}

std::optional<std::int64_t> first_above(const LatticeLine& line, const std::vector<Complex>& ys) {
  std::optional<std::int64_t> best;
  for (const auto& y : ys)
    if (auto k = first_above(line, y); k && (!best || *k < *best)) best = k;
  return best;
}

}  // namespace

std::int64_t support_norm(const PrimitiveDirection& direction, const IntVector& x) {
  std::int64_t s = 0;
  for (std::size_t j : direction.support) s += x[j] < 0 ? -x[j] : x[j];
  return s;
}

OneDimProfile profile(const ReactionNetwork& network) {
  require_valid(network);
  std::vector<IntVector> omegas;
  for (const auto& r : network.reactions()) omegas.push_back(r.vector());
  if (omegas.empty()) throw HypothesisError("not one-dimensional: the network has no reactions");
  auto direction = gcd_vector_set(omegas);
  if (!direction) throw HypothesisError("not one-dimensional: dim span of the reaction vectors is " +
                                        std::to_string(span_dimension(omegas)));
  OneDimProfile p;
  p.direction = *direction;
  const auto& d = p.direction;
  std::set<std::size_t> catalysts;
  for (std::size_t r = 0; r < network.size(); ++r) {
    const auto& reaction = network[r];
    for (std::size_t j = 0; j < network.dimension(); ++j)
      if (reaction.reactant[j] > 0 && reaction.reactant[j] == reaction.product[j]) catalysts.insert(j);
    const std::int64_t n = d.multiple_of(omegas[r]);
    const std::int64_t norm = support_norm(d, reaction.reactant);
    p.R = std::max(p.R, norm);
    if (n > 0) {
      p.positive.push_back(r);
      p.R_plus = std::max(p.R_plus, norm);
    } else {
      p.negative.push_back(r);
      p.R_minus = std::max(p.R_minus, norm);
    }
  }
  p.catalysts.assign(catalysts.begin(), catalysts.end());
  p.h3_ok = !p.positive.empty() && !p.negative.empty();
  p.h4_ok = std::all_of(d.vector.begin(), d.vector.end(), [](std::int64_t v) { return v >= 0; });
  p.h2_ok = d.vector[0] != 0 && !catalysts.count(0);
  if (!p.h2_ok) {
    std::optional<std::size_t> fix;
    for (std::size_t j : d.support)
      if (!catalysts.count(j)) {
        fix = j;
        break;
      }
    const std::string& first = network.species()[0];
    p.h2_message = "H2 violated: species " + first +
                   (d.vector[0] == 0 ? " is not moved by any reaction" : " is a catalyst");
    if (fix) p.h2_message += "; list species " + network.species()[*fix] + " first";
    else p.h2_message += "; no species ordering satisfies H2";
  }
  return p;
}

void require_h2_h4(const OneDimProfile& p) {
  if (!p.h2_ok) throw HypothesisError(p.h2_message);
  if (!p.h4_ok) throw HypothesisError("H4 violated: omega* = " + to_string(p.direction.vector) +
                                      " has a negative coordinate (the network is conservative)");
}

State LatticeLine::point(std::int64_t k) const {
  State x = base;
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += k * step[j];
  return x;
}

bool LatticeLine::contains(const State& x) const {
  if (x.size() != base.size()) return false;
  std::optional<std::int64_t> k;
  for (std::size_t j = 0; j < x.size(); ++j) {
    const std::int64_t diff = x[j] - base[j];
    if (step[j] == 0) {
      if (diff != 0) return false;
      continue;
    }
    if (diff % step[j] != 0) return false;
    const std::int64_t kj = diff / step[j];
    if (k && *k != kj) return false;
    k = kj;
  }
  const std::int64_t kk = k.value_or(0);
  return kk >= 0 && (!length || kk <= *length);
}

std::int64_t LatticeLine::index(const State& x) const {
  if (!contains(x)) throw std::invalid_argument("state " + to_string(x) + " is not on the lattice line");
  for (std::size_t j = 0; j < x.size(); ++j)
    if (step[j] != 0) return (x[j] - base[j]) / step[j];
  return 0;
}

LatticeLine lattice_line(const PrimitiveDirection& direction, const State& c) {
  if (c.size() != direction.vector.size()) throw std::invalid_argument("state has the wrong dimension");
  for (auto v : c)
    if (v < 0) throw std::invalid_argument("state " + to_string(c) + " has a negative entry");
  LatticeLine line;
  line.step = direction.step();
  line.omega_ss = direction.scalar;
  std::int64_t kmin = std::numeric_limits<std::int64_t>::min();
  std::optional<std::int64_t> kmax;
  for (std::size_t j = 0; j < c.size(); ++j) {
    const std::int64_t s = line.step[j];
    if (s > 0) kmin = std::max(kmin, -(c[j] / s));
    else if (s < 0) kmax = std::min(kmax.value_or(std::numeric_limits<std::int64_t>::max()), c[j] / -s);
  }
  // The sign normalisation of omega* guarantees a positive coordinate.
  line.base = c;
  for (std::size_t j = 0; j < c.size(); ++j) line.base[j] += kmin * line.step[j];
  if (kmax) line.length = *kmax - kmin;
  return line;
}

DirectionalPolynomials directional_polynomials(const ReactionNetwork& network, const State& c) {
  const OneDimProfile p = profile(network);
  require_h2_h4(p);
  if (c.size() != network.dimension()) throw std::invalid_argument("state has the wrong dimension");
  const auto& w = p.direction.vector;
  DirectionalPolynomials out;
  for (const auto& r : network.reactions()) {
    Polynomial term = Polynomial::constant(r.rate);
    for (std::size_t j = 0; j < network.dimension(); ++j) {
      if (r.reactant[j] == 0) continue;
      Rational slope = 0, offset = c[j];
      if (w[j] != 0) {
        slope = Rational(w[j], w[0]);
        offset = Rational(c[j]) - slope * c[0];
      }
      term *= Polynomial::falling_factorial(offset, slope, r.reactant[j]);
    }
    const std::int64_t delta = r.product[0] - r.reactant[0];
    out.drift += term * Rational(delta);
    out.second_moment += term * Rational(delta * delta);
  }
  return out;
}

ThresholdParams threshold_params(const ReactionNetwork& network, const State& c) {
  const OneDimProfile p = profile(network);
  require_h2_h4(p);
  auto polys = directional_polynomials(network, c);
  ThresholdParams t;
  bool any_plus = false, any_minus = false;
  for (std::size_t r = 0; r < network.size(); ++r) {
    if (!active_on(p.direction, network[r], c)) continue;
    t.active.push_back(r);
    const std::int64_t norm = support_norm(p.direction, network[r].reactant);
    t.R = std::max(t.R, norm);
    if (p.direction.multiple_of(network[r].vector()) > 0) {
      any_plus = true;
      t.R_plus = std::max(t.R_plus, norm);
    } else {
      any_minus = true;
      t.R_minus = std::max(t.R_minus, norm);
    }
  }
  t.h3_ok = any_plus && any_minus;
  t.drift = std::move(polys.drift);
  t.second_moment = std::move(polys.second_moment);
  t.alpha = t.drift.coefficient(t.R);
  t.gamma = t.drift.coefficient(t.R - 1);
  t.theta = t.second_moment.coefficient(t.R) / 2;
  t.beta = t.gamma - t.theta;
  return t;
}

StateLabel ClassGeometry::label(std::int64_t k) const {
  if (k < 0 || (line.length && k > *line.length)) throw std::out_of_range("index is not on the line");
  if (k < std::min(i, o)) return StateLabel::Neutral;
  if (trapping.contains(k)) return StateLabel::Trapping;
  if (escaping.contains(k)) return StateLabel::Escaping;
  return progressions[*class_of(k)].quasi ? StateLabel::QIC : StateLabel::PIC;
}

std::optional<std::size_t> ClassGeometry::class_of(std::int64_t k) const {
  if (k < c_lower) return std::nullopt;
  const std::int64_t residue = 1 + mod(k - c_index, line.omega_ss);
  for (std::size_t n = 0; n < progressions.size(); ++n)
    if (progressions[n].residue == residue) return n;
  return std::nullopt;
}

ClassGeometry class_geometry(const ReactionNetwork& network, const State& c) {
  const OneDimProfile p = profile(network);
  require_h2_h4(p);
  ClassGeometry g;
  g.line = lattice_line(p.direction, c);
  g.c_index = g.line.index(c);
  std::vector<Complex> all_in, all_out, plus_in, minus_out;
  bool any_plus = false, any_minus = false;
  for (std::size_t r = 0; r < network.size(); ++r) {
    const auto& reaction = network[r];
    if (!active_on(p.direction, reaction, c)) continue;
    all_in.push_back(reaction.reactant);
    all_out.push_back(reaction.product);
    if (p.direction.multiple_of(reaction.vector()) > 0) {
      any_plus = true;
      plus_in.push_back(reaction.reactant);
    } else {
      any_minus = true;
      minus_out.push_back(reaction.product);
    }
  }
  if (!any_plus || !any_minus)
    throw HypothesisError(std::string("H3 violated on the line through ") + to_string(c) + ": no " +
                          (any_plus ? "negative" : "positive") + " reaction can fire there");
  // Inactive reactions may change the spacing of the classes on L_c.
  std::vector<IntVector> active_omegas;
  for (std::size_t r = 0; r < network.size(); ++r)
    if (active_on(p.direction, network[r], c)) active_omegas.push_back(network[r].vector());
  g.line.omega_ss = gcd_vector_set(active_omegas)->scalar;
  g.i = *first_above(g.line, all_in);
  g.o = *first_above(g.line, all_out);
  g.i_plus = *first_above(g.line, plus_in);
  g.o_minus = *first_above(g.line, minus_out);
  g.c_lower = std::max(g.i_plus, g.o_minus);
  g.c_lower_state = g.line.point(g.c_lower);
  for (std::size_t j = 0; j < c.size(); ++j)
    g.c_upper.push_back(in_support(p.direction, j) ? std::nullopt : std::optional<std::int64_t>(c[j]));
  g.neutral = {0, std::min(g.i, g.o)};
  g.trapping = {g.o, g.i};
  g.escaping = {g.i, g.c_lower};
  const std::int64_t m = g.line.omega_ss;
  std::set<std::int64_t> plus;
  for (std::int64_t v = g.trapping.lo; v < g.trapping.hi && static_cast<std::int64_t>(plus.size()) < m; ++v)
    plus.insert(1 + mod(v - g.c_index, m));
  g.sigma_plus.assign(plus.begin(), plus.end());
  for (std::int64_t k = 1; k <= m; ++k)
    if (!plus.count(k)) g.sigma_minus.push_back(k);
  g.sigma_plus_count = std::min(m, std::max<std::int64_t>(0, g.i - g.o));
  for (std::int64_t k = 1; k <= m; ++k) {
    Progression pr;
    pr.residue = k;
    pr.stride = m;
    pr.first = g.c_lower + mod(k - 1 - mod(g.c_lower - g.c_index, m), m);
    pr.quasi = plus.count(k) > 0;
    g.progressions.push_back(pr);
  }
  g.has_qic = !g.sigma_plus.empty();
  g.has_pic = !g.sigma_minus.empty();
  return g;
}

std::string to_string(Explosivity v) { return v == Explosivity::Yes ? "yes" : "no"; }

std::string to_string(Recurrence v) {
  switch (v) {
    case Recurrence::Transient: return "transient";
    case Recurrence::NullRecurrent: return "null-recurrent";
    case Recurrence::PositiveRecurrent: return "positive-recurrent";
    case Recurrence::Undetermined: return "recurrent-positivity-undetermined";
    case Recurrence::NotApplicable: break;
  }
  return "n/a";
}

std::string to_string(ExpErgodicity v) {
  switch (v) {
    case ExpErgodicity::Yes: return "yes";
    case ExpErgodicity::NotImplied: return "not-implied";
    case ExpErgodicity::NotApplicable: break;
  }
  return "n/a";
}

std::string to_string(Extinction v) {
  switch (v) {
    case Extinction::Yes: return "yes";
    case Extinction::No: return "no";
    case Extinction::NotApplicable: break;
  }
  return "n/a";
}

std::string to_string(QuasiErgodicity v) {
  switch (v) {
    case QuasiErgodicity::UniformlyExponential: return "uniformly-exponentially";
    case QuasiErgodicity::NotQuasiErgodic: return "not-quasi-ergodic";
    case QuasiErgodicity::NotImplied: return "not-implied";
    case QuasiErgodicity::NotApplicable: break;
  }
  return "n/a";
}

std::string to_string(Tail v) {
  switch (v) {
    case Tail::CMPLike: return "CMP-like";
    case Tail::Geometric: return "geometric";
    case Tail::ZetaLike: return "Zeta-like";
    case Tail::NotApplicable: break;
  }
  return "n/a";
}

const char* const kNullRecurrenceConjecture =
    "alpha=0, beta=0, R=2 is not decided; conjectured: essential networks are always null recurrent "
    "in this case";

DynamicsVerdict classify_dynamics(const ThresholdParams& t, Tri has_pic, Tri has_qic) {
  const int a = sign(t.alpha), b = sign(t.beta), g = sign(t.gamma);
  const std::int64_t R = t.R;
  const bool a1 = a < 0;
  const bool a2 = a == 0 && b <= 0;
  const bool b1 = a == 0 && b <= 0 && R > 2;
  const bool b2 = a == 0 && b < 0 && R > 1;
  const bool b3 = a < 0 && R > 1;
  const bool c1 = a == 0 && b <= 0 && g > 0 && R == 1;

  DynamicsVerdict v;
  if (R > 1 && a > 0) v.explosive = {Explosivity::Yes, "R>1 & alpha>0"};
  else if (R > 2 && a == 0 && b > 0) v.explosive = {Explosivity::Yes, "R>2 & alpha=0 & beta>0"};
  else v.explosive = {Explosivity::No, "not (R>1 & alpha>0) and not (R>2 & alpha=0 & beta>0)"};

  if (has_pic == Tri::Yes) {
    if (!a1 && !a2) v.recurrence = {Recurrence::Transient, "not (alpha<0) and not (alpha=0 & beta<=0)"};
    else if (a1) v.recurrence = {Recurrence::PositiveRecurrent, "alpha<0"};
    else if (b1) v.recurrence = {Recurrence::PositiveRecurrent, "alpha=0 & beta<=0 & R>2"};
    else if (b2) v.recurrence = {Recurrence::PositiveRecurrent, "alpha=0 & beta<0 & R>1"};
    else if (c1) v.recurrence = {Recurrence::NullRecurrent, "alpha=0 & beta<=0 & gamma>0 & R=1"};
    else if (b == 0 && R == 2) {
      v.recurrence = {Recurrence::Undetermined, "alpha=0 & beta=0 & R=2"};
      v.notes.push_back(kNullRecurrenceConjecture);
    } else {
      v.recurrence = {Recurrence::Undetermined, "alpha=0 & beta<=0 without a positivity clause"};
    }
    if (a1) v.exp_ergodic = {ExpErgodicity::Yes, "alpha<0"};
    else if (b1) v.exp_ergodic = {ExpErgodicity::Yes, "alpha=0 & beta<=0 & R>2"};
    else v.exp_ergodic = {ExpErgodicity::NotImplied, "neither alpha<0 nor alpha=0 & beta<=0 & R>2"};
  }

  if (has_qic == Tri::Yes) {
    if (a1) v.extinction = {Extinction::Yes, "alpha<0"};
    else if (a2) v.extinction = {Extinction::Yes, "alpha=0 & beta<=0"};
    else v.extinction = {Extinction::No, "not (alpha<0) and not (alpha=0 & beta<=0)"};
    if (b1) v.quasi_ergodic = {QuasiErgodicity::UniformlyExponential, "alpha=0 & beta<=0 & R>2"};
    else if (b3) v.quasi_ergodic = {QuasiErgodicity::UniformlyExponential, "alpha<0 & R>1"};
    else if (c1) v.quasi_ergodic = {QuasiErgodicity::NotQuasiErgodic, "alpha=0 & beta<=0 & gamma>0 & R=1"};
    else if (!a1 && !a2)
      v.quasi_ergodic = {QuasiErgodicity::NotQuasiErgodic, "not (alpha<0) and not (alpha=0 & beta<=0)"};
    else v.quasi_ergodic = {QuasiErgodicity::NotImplied, "no quasi-ergodicity clause applies"};
  }
  return v;
}

DynamicsVerdict classify_dynamics(const ReactionNetwork& network, const State& c, Tri has_pic, Tri has_qic) {
  return classify_dynamics(threshold_params(network, c), has_pic, has_qic);
}

DynamicsVerdict classify_dynamics(const ReactionNetwork& network, const State& c) {
  const auto g = class_geometry(network, c);
  return classify_dynamics(network, c, g.has_pic ? Tri::Yes : Tri::No, g.has_qic ? Tri::Yes : Tri::No);
}

namespace {

Verdict<Tail> tail_of(const ThresholdParams& t) {
  if (t.R_plus < t.R_minus) return {Tail::CMPLike, "R_+<R_-"};
  const int a = sign(t.alpha);
  if (t.R_plus == t.R_minus && a < 0) return {Tail::Geometric, "R_+=R_- & alpha<0"};
  if (a == 0) return {Tail::ZetaLike, "alpha=0"};
  return {Tail::NotApplicable, "no tail clause applies"};
}

}  // namespace

TailVerdict tail_class(const ThresholdParams& t, bool has_pic, bool has_qic) {
  TailVerdict v;
  if (!t.h3_ok) return v;
  if (has_pic) v.stationary = tail_of(t);
  if (has_qic) {
    if (t.R > 1) {
      v.qsd = tail_of(t);
      if (v.qsd.value != Tail::NotApplicable) v.qsd.clause += " & R>1";
    } else {
      v.qsd = {Tail::NotApplicable, "R<=1"};
    }
  }
  return v;
}

TailVerdict tail_class(const ReactionNetwork& network, const State& c) {
  const auto g = class_geometry(network, c);
  return tail_class(threshold_params(network, c), g.has_pic, g.has_qic);
}

std::vector<std::string> endotactic_check(const ThresholdParams& t, const DynamicsVerdict& v, bool has_pic) {
  std::vector<std::string> failed;
  if (!(t.R_minus > t.R_plus)) failed.push_back("R_- > R_+");
  if (!(sign(t.alpha) < 0)) failed.push_back("alpha < 0");
  if (v.explosive.value != Explosivity::No) failed.push_back("non-explosive");
  if (has_pic) {
    if (v.recurrence.value != Recurrence::PositiveRecurrent) failed.push_back("positive recurrent");
    if (v.exp_ergodic.value != ExpErgodicity::Yes) failed.push_back("exponentially ergodic");
    if (tail_class(t, true, false).stationary.value != Tail::CMPLike) failed.push_back("CMP-like tail");
  }
  return failed;
}

std::vector<std::string> consistency_check(const ReactionNetwork& network, const OneDimProfile& profile,
                                           const ThresholdParams& t, const ClassGeometry* geometry) {
  std::vector<std::string> out;
  const int a = sign(t.alpha), g = sign(t.gamma), b = sign(t.beta);
  if (t.beta != t.gamma - t.theta) out.push_back("beta = gamma - theta");
  if (sign(t.theta) < 0) out.push_back("theta >= 0");
  if (t.drift.degree() > t.R) out.push_back("deg drift <= R");
  if ((t.drift.degree() == t.R) != (a != 0)) out.push_back("deg drift = R iff alpha != 0");
  if (t.h3_ok && t.R < 1) out.push_back("H3 => R >= 1");
  if (g <= 0 && !(b < 0)) out.push_back("gamma <= 0 => beta < 0");
  if (t.R == 0 && !(a > 0)) out.push_back("R = 0 => alpha > 0");
  if (a <= 0 && t.R < 1) out.push_back("alpha <= 0 => R >= 1");
  if (t.R == 1) {
    bool single = profile.direction.support == std::vector<std::size_t>{0};
    for (std::size_t r : t.active)
      for (std::size_t j = 1; j < network.dimension(); ++j)
        if (network[r].reactant[j] != network[r].product[j]) single = false;
    if (!single) out.push_back("R = 1 => supp omega* = {1} and all other species are catalysts");
    if (a == 0 && g < 0) out.push_back("R = 1 & alpha = 0 => gamma >= 0");
    if (g == 0) {
      // Restricted to R = 1: for R > 1 the implication fails on simple examples.
      bool one_each = true;
      for (std::size_t r : t.active)
        if (network[r].reactant[0] != 1) one_each = false;
      if (!one_each) out.push_back("gamma = 0 => every reactant has exactly one copy of species 1");
      if (geometry && one_each) {
        if (geometry->trapping.empty() || geometry->trapping.lo != 0)
          out.push_back("gamma = 0 => the first point of the line is trapping");
        if (geometry->has_pic) out.push_back("gamma = 0 => no PIC");
      }
    }
  }
  if (geometry) {
    if (static_cast<std::int64_t>(geometry->sigma_plus.size()) != geometry->sigma_plus_count)
      out.push_back("#Sigma+ closed form");
    if (geometry->c_lower < geometry->i || geometry->c_lower < geometry->o)
      out.push_back("c_* >= i and c_* >= o");
  }
  return out;
}

}  // namespace srn
