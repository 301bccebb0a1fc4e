#include "srn/sim.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <ostream>
#include <queue>
#include <stdexcept>
#include <thread>

#include "srn/lattice.hpp"

namespace srn {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::int64_t norm1(const State& x) {
  std::int64_t s = 0;
  for (auto v : x) s += v;
  return s;
}

std::size_t choose(const std::vector<double>& weights, double total, Rng& rng) {
  const double target = rng.uniform() * total;
  double acc = 0;
  std::size_t last = 0;
  for (std::size_t r = 0; r < weights.size(); ++r) {
    if (weights[r] <= 0) continue;
    acc += weights[r];
    last = r;
    if (target < acc) return r;
  }
  return last;
}

void apply(State& x, const IntVector& jump) {
  for (std::size_t j = 0; j < x.size(); ++j) x[j] += jump[j];
}

EmpiricalPMF normalised(std::map<std::int64_t, double> weights, std::uint64_t samples) {
  EmpiricalPMF pmf;
  double total = 0;
  for (const auto& [v, w] : weights) total += w;
  if (total > 0)
    for (const auto& [v, w] : weights)
      if (w > 0) pmf.probability[v] = w / total;
  pmf.sample_count = samples;
  return pmf;
}

}  // namespace

std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index) {
  std::uint64_t s = seed;
  const std::uint64_t a = splitmix64(s);
  std::uint64_t t = a ^ (index * 0xd1b54a32d192ed03ULL);
  return splitmix64(t);
}

double Rng::uniform() {
  // (k + 0.5) / 2^53 never hits 0 or 1.
  return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1p-53;
}

double Rng::exponential(double rate) { return -std::log(uniform()) / rate; }

std::size_t Rng::below(std::size_t n) { return std::min(n - 1, static_cast<std::size_t>(uniform() * n)); }

std::string to_string(TrajectoryOutcome::Kind kind) {
  switch (kind) {
    case TrajectoryOutcome::Kind::Absorbed: return "absorbed";
    case TrajectoryOutcome::Kind::Censored: return "censored";
    case TrajectoryOutcome::Kind::ExplosionSuspected: break;
  }
  return "explosion_suspected";
}

PropensityTable::PropensityTable(const ReactionNetwork& network) {
  for (const auto& r : network.reactions()) {
    reactants_.push_back(r.reactant);
    rates_.push_back(to_double(r.rate));
    jumps_.push_back(r.vector());
  }
}

double PropensityTable::evaluate(const State& x, std::vector<double>& out) const {
  out.resize(rates_.size());
  double total = 0;
  for (std::size_t r = 0; r < rates_.size(); ++r) {
    double a = rates_[r];
    const auto& y = reactants_[r];
    for (std::size_t j = 0; j < y.size() && a > 0; ++j)
      for (std::int64_t i = 0; i < y[j]; ++i) a *= static_cast<double>(x[j] - i);
    if (a < 0) a = 0;
    out[r] = a;
    total += a;
  }
  return total;
}

TrajectoryOutcome simulate(const ReactionNetwork& network, const State& x0, std::uint64_t seed,
                           const SimLimits& limits, const TrajectoryObserver& observer,
                           const AbsorbingSet& absorbing) {
  if (x0.size() != network.dimension()) throw std::invalid_argument("initial state has the wrong dimension");
  const PropensityTable table(network);
  Rng rng(seed);
  TrajectoryOutcome out;
  out.seed = seed;
  State x = x0;
  double t = 0, half_time = 0;
  const std::uint64_t half = limits.max_events / 2;
  std::vector<double> a;
  if (observer) observer(t, x);
  for (;;) {
    if (absorbing && absorbing(x)) {
      out.kind = TrajectoryOutcome::Kind::Absorbed;
      break;
    }
    const double total = table.evaluate(x, a);
    if (total <= 0) {
      out.kind = TrajectoryOutcome::Kind::Absorbed;
      break;
    }
    const double dt = rng.exponential(total);
    if (t + dt > limits.max_time) {
      t = limits.max_time;
      out.kind = TrajectoryOutcome::Kind::Censored;
      break;
    }
    t += dt;
    apply(x, table.jumps()[choose(a, total, rng)]);
    ++out.events;
    if (observer) observer(t, x);
    if (out.events == half) half_time = t;
    if (norm1(x) >= limits.max_state_norm) {
      out.kind = TrajectoryOutcome::Kind::ExplosionSuspected;
      break;
    }
    if (out.events >= limits.max_events) {
      const bool accelerating = t - half_time < half_time;
      const bool growing = norm1(x) >= norm1(x0);
      out.kind = accelerating && growing ? TrajectoryOutcome::Kind::ExplosionSuspected
                                         : TrajectoryOutcome::Kind::Censored;
      break;
    }
  }
  out.time = t;
  out.state = std::move(x);
  return out;
}

std::vector<TrajectoryOutcome> simulate_batch(const ReactionNetwork& network, const State& x0,
                                              std::uint64_t seed, std::size_t count, const SimLimits& limits,
                                              unsigned threads) {
  std::vector<TrajectoryOutcome> out(count);
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(count, 1)));
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < count;)
      out[i] = simulate(network, x0, stream_seed(seed, i), limits);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < threads; ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

double EmpiricalPMF::operator[](std::int64_t v) const {
  auto it = probability.find(v);
  return it == probability.end() ? 0.0 : it->second;
}

double EmpiricalPMF::mean() const {
  double m = 0;
  for (const auto& [v, p] : probability) m += static_cast<double>(v) * p;
  return m;
}

double EmpiricalPMF::total() const {
  double s = 0;
  for (const auto& [v, p] : probability) s += p;
  return s;
}

double total_variation(const EmpiricalPMF& a, const EmpiricalPMF& b) {
  double s = 0;
  for (const auto& [v, p] : a.probability) s += std::abs(p - b[v]);
  for (const auto& [v, p] : b.probability)
    if (!a.probability.count(v)) s += p;
  return s / 2;
}

EmpiricalPMF estimate_stationary(const ReactionNetwork& network, const State& x0, std::uint64_t seed,
                                 double burn_in, double horizon) {
  if (!(horizon > burn_in) || burn_in < 0) throw std::invalid_argument("need 0 <= burn_in < horizon");
  std::map<std::int64_t, double> weight;
  std::uint64_t events = 0;
  double last_t = 0;
  std::int64_t last_x = x0.at(0);
  auto accrue = [&](double t) {
    const double lo = std::max(last_t, burn_in), hi = std::min(t, horizon);
    if (hi > lo) weight[last_x] += hi - lo;
    last_t = t;
  };
  auto record = [&](double t, const State& x) {
    accrue(t);
    if (t > burn_in) ++events;
    last_x = x[0];
  };
  SimLimits limits;
  limits.max_time = horizon;
  limits.max_events = std::numeric_limits<std::uint64_t>::max();
  limits.max_state_norm = std::numeric_limits<std::int64_t>::max();
  const auto outcome = simulate(network, x0, seed, limits, record);
  (void)outcome;
  accrue(horizon);
  return normalised(std::move(weight), events);
}

EmpiricalPMF estimate_qsd(const ReactionNetwork& network, const State& x0, std::uint64_t seed,
                          const QsdOptions& options) {
  if (options.particles == 0) throw std::invalid_argument("need at least one particle");
  const PropensityTable table(network);
  Rng rng(seed);
  const std::size_t n = options.particles;
  std::vector<double> a;
  auto absorbed = [&](const State& x) {
    return (options.absorbing && options.absorbing(x)) || table.evaluate(x, a) <= 0;
  };
  if (absorbed(x0))
    throw std::runtime_error("all particles absorbed at once: the initial state is absorbing");
  std::vector<State> state(n, x0);
  std::vector<double> last(n, 0.0);
  std::map<std::int64_t, double> weight;
  const double avg_from = options.average_from.value_or(options.horizon);
  std::uint64_t events = 0;
  auto accrue = [&](std::size_t i, double t) {
    const double lo = std::max(last[i], avg_from), hi = std::min(t, options.horizon);
    if (options.average_from && hi > lo) weight[state[i][0]] += hi - lo;
    last[i] = t;
  };
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  auto schedule = [&](std::size_t i, double t) {
    const double total = table.evaluate(state[i], a);
    if (total > 0) queue.emplace(t + rng.exponential(total), i);
  };
  for (std::size_t i = 0; i < n; ++i) schedule(i, 0);
  while (!queue.empty()) {
    const auto [t, i] = queue.top();
    if (t > options.horizon) break;
    queue.pop();
    accrue(i, t);
    const double total = table.evaluate(state[i], a);
    apply(state[i], table.jumps()[choose(a, total, rng)]);
    if (t >= avg_from) ++events;
    if (absorbed(state[i])) {
      if (n == 1)
        throw std::runtime_error("all particles absorbed at once; use more particles");
      std::size_t j = rng.below(n - 1);
      if (j >= i) ++j;
      state[i] = state[j];
    }
    schedule(i, t);
  }
  if (options.average_from) {
    for (std::size_t i = 0; i < n; ++i) accrue(i, options.horizon);
    return normalised(std::move(weight), events);
  }
  for (std::size_t i = 0; i < n; ++i) weight[state[i][0]] += 1;
  return normalised(std::move(weight), n);
}

std::string to_string(TailShape s) {
  switch (s) {
    case TailShape::CMPLike: return "CMP-like";
    case TailShape::Geometric: return "geometric";
    case TailShape::PowerLaw: break;
  }
  return "power-law";
}

namespace {

// Ordinary least squares via normal equations with Gaussian elimination.
std::vector<double> least_squares(const std::vector<std::vector<double>>& cols, const std::vector<double>& y,
                                  double& rss) {
  const std::size_t k = cols.size(), m = y.size();
  std::vector<std::vector<double>> A(k, std::vector<double>(k + 1, 0.0));
  for (std::size_t p = 0; p < k; ++p) {
    for (std::size_t q = 0; q < k; ++q)
      for (std::size_t i = 0; i < m; ++i) A[p][q] += cols[p][i] * cols[q][i];
    for (std::size_t i = 0; i < m; ++i) A[p][k] += cols[p][i] * y[i];
  }
  for (std::size_t p = 0; p < k; ++p) {
    std::size_t piv = p;
    for (std::size_t q = p + 1; q < k; ++q)
      if (std::abs(A[q][p]) > std::abs(A[piv][p])) piv = q;
    std::swap(A[p], A[piv]);
    if (A[p][p] == 0) throw std::runtime_error("degenerate tail fit");
    for (std::size_t q = 0; q < k; ++q) {
      if (q == p) continue;
      const double f = A[q][p] / A[p][p];
      for (std::size_t r = p; r <= k; ++r) A[q][r] -= f * A[p][r];
    }
  }
  std::vector<double> beta(k);
  for (std::size_t p = 0; p < k; ++p) beta[p] = A[p][k] / A[p][p];
  rss = 0;
  for (std::size_t i = 0; i < m; ++i) {
    double fit = 0;
    for (std::size_t p = 0; p < k; ++p) fit += beta[p] * cols[p][i];
    rss += (y[i] - fit) * (y[i] - fit);
  }
  return beta;
}

}  // namespace

TailFit fit_tail(const EmpiricalPMF& pmf) {
  const double floor = std::max(1e-12, pmf.sample_count > 0 ? 10.0 / static_cast<double>(pmf.sample_count) : 0.0);
  const double total = pmf.total();
  std::vector<double> xs, ys;
  double survival = total;
  for (const auto& [v, p] : pmf.probability) {
    // survival holds P(X >= v) before subtracting p.
    if (v >= 1 && survival / total >= floor) {
      xs.push_back(static_cast<double>(v));
      ys.push_back(std::log(survival / total));
    }
    survival -= p;
  }
  if (xs.size() < 10)
    throw std::invalid_argument("insufficient support for a tail fit: " + std::to_string(xs.size()) +
                                " usable points, need 10");
  const std::size_t m = xs.size();
  std::vector<double> ones(m, 1.0), x(m), xlogx(m), logx(m);
  for (std::size_t i = 0; i < m; ++i) {
    x[i] = xs[i];
    logx[i] = std::log(xs[i]);
    xlogx[i] = xs[i] * logx[i];
  }
  auto bic = [&](double rss, std::size_t k) {
    return static_cast<double>(m) * std::log(std::max(rss / static_cast<double>(m), 1e-24)) +
           static_cast<double>(k) * std::log(static_cast<double>(m));
  };
  TailFit fit;
  fit.points = m;
  {
    TailModelFit f{TailShape::CMPLike};
    auto beta = least_squares({xlogx, x, ones}, ys, f.rss);
    f.a = -beta[0];
    f.b = beta[1];
    f.c = beta[2];
    f.valid = f.a > 0;
    f.bic = bic(f.rss, 3);
    fit.models.push_back(f);
  }
  {
    TailModelFit f{TailShape::Geometric};
    auto beta = least_squares({x, ones}, ys, f.rss);
    f.a = -beta[0];
    f.c = beta[1];
    f.valid = f.a > 0;
    f.bic = bic(f.rss, 2);
    fit.models.push_back(f);
  }
  {
    TailModelFit f{TailShape::PowerLaw};
    auto beta = least_squares({logx, ones}, ys, f.rss);
    f.a = -beta[0];
    f.c = beta[1];
    f.valid = f.a > 0;
    f.bic = bic(f.rss, 2);
    fit.models.push_back(f);
  }
  const TailModelFit* best = nullptr;
  for (const auto& f : fit.models)
    if (f.valid && (!best || f.bic < best->bic)) best = &f;
  if (!best) throw std::invalid_argument("no tail model with positive decay fits the data");
  fit.best = best->shape;
  fit.a = best->a;
  return fit;
}

EmpiricalPMF bdp_stationary_exact(const ReactionNetwork& network, const State& c, std::size_t max_terms) {
  std::vector<IntVector> omegas;
  for (const auto& r : network.reactions()) omegas.push_back(r.vector());
  if (omegas.empty()) throw std::invalid_argument("not a birth-death process: no reactions");
  const auto direction = gcd_vector_set(omegas);
  if (!direction) throw std::invalid_argument("not a birth-death process: not one-dimensional");
  if (c.size() != network.dimension()) throw std::invalid_argument("state has the wrong dimension");
  std::vector<int> step_of;
  for (const auto& w : omegas) {
    const std::int64_t k = direction->multiple_of(w) * direction->scalar;
    if (k != 1 && k != -1)
      throw std::invalid_argument("not a birth-death process: a reaction jumps " + std::to_string(k) +
                                  " lattice steps");
    step_of.push_back(static_cast<int>(k));
  }
  const IntVector step = direction->step();
  auto valid_point = [&](const State& x) {
    return std::all_of(x.begin(), x.end(), [](std::int64_t v) { return v >= 0; });
  };
  auto shift = [&](const State& x, std::int64_t k) {
    State y = x;
    for (std::size_t j = 0; j < y.size(); ++j) y[j] += k * step[j];
    return y;
  };
  auto rates = [&](const State& x) {
    double up = 0, down = 0;
    for (std::size_t r = 0; r < network.size(); ++r) {
      const double a = to_double(propensity(network[r], x));
      (step_of[r] > 0 ? up : down) += a;
    }
    return std::pair{up, down};
  };
  // Walk down to the bottom of the class of c.
  State bottom = c;
  for (;;) {
    const State below = shift(bottom, -1);
    if (!valid_point(below)) break;
    if (rates(bottom).second > 0 && rates(below).first > 0) bottom = below;
    else break;
  }
  if (rates(bottom).second > 0) throw std::invalid_argument("the class of the state is not closed");
  std::vector<std::pair<std::int64_t, double>> terms;
  double term = 1, sum = 0;
  State x = bottom;
  for (std::size_t n = 0;; ++n) {
    if (n >= max_terms) throw std::runtime_error("stationary tail not negligible within the term limit");
    terms.emplace_back(x[0], term);
    sum += term;
    const auto [up, down_here] = rates(x);
    (void)down_here;
    if (up <= 0) break;
    const State next = shift(x, 1);
    if (!valid_point(next)) break;
    const double down = rates(next).second;
    if (down <= 0) throw std::invalid_argument("the class of the state is not closed");
    const double ratio = up / down;
    term *= ratio;
    x = next;
    if (ratio < 1 && term * ratio / (1 - ratio) < 1e-15 * sum) {
      terms.emplace_back(x[0], term);
      sum += term;
      break;
    }
    if (sum > 1e250) {
      for (auto& [v, w] : terms) w /= 1e250;
      term /= 1e250;
      sum /= 1e250;
    }
  }
  std::map<std::int64_t, double> weight;
  for (const auto& [v, w] : terms) weight[v] += w;
  return normalised(std::move(weight), 0);
}

void write_pmf_csv(std::ostream& out, const EmpiricalPMF& pmf) {
  out << "value,probability\n";
  out.precision(17);
  for (const auto& [v, p] : pmf.probability) out << v << ',' << p << '\n';
}

void write_trajectory_csv_header(std::ostream& out, const std::vector<std::string>& species) {
  out << "time";
  for (const auto& s : species) out << ',' << s;
  out << '\n';
}

void write_trajectory_csv_row(std::ostream& out, double time, const State& x) {
  out.precision(17);
  out << time;
  for (auto v : x) out << ',' << v;
  out << '\n';
}

}  // namespace srn
