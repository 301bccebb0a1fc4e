#ifndef SRN_SIM_HPP
#define SRN_SIM_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "srn/model.hpp"

namespace srn {

/// Seed of the index-th independent stream derived from a master seed.
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t index);

/// mt19937_64 seeded through SplitMix64; uniform draws use the top 53 bits
/// so the sequence is identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  static Rng stream(std::uint64_t seed, std::uint64_t index) { return Rng(stream_seed(seed, index)); }
  /// Uniform on (0, 1).
  double uniform();
  double exponential(double rate);
  /// Uniform on {0, ..., n - 1}.
  std::size_t below(std::size_t n);

 private:
  std::mt19937_64 engine_;
};

struct SimLimits {
  std::uint64_t max_events = 1'000'000;
  double max_time = 1e3;
  std::int64_t max_state_norm = 1'000'000'000;
};

struct TrajectoryOutcome {
  enum class Kind { Absorbed, Censored, ExplosionSuspected };
  Kind kind = Kind::Censored;
  double time = 0;
  State state;
  std::uint64_t events = 0;
  std::uint64_t seed = 0;
};

std::string to_string(TrajectoryOutcome::Kind kind);

using AbsorbingSet = std::function<bool(const State&)>;
/// Called with (time, state) at the start and after every event.
using TrajectoryObserver = std::function<void(double, const State&)>;

/// Precomputed floating-point propensities.
class PropensityTable {
 public:
  explicit PropensityTable(const ReactionNetwork& network);
  /// Fills `out` with the propensity of every reaction; returns the total.
  double evaluate(const State& x, std::vector<double>& out) const;
  const std::vector<IntVector>& jumps() const { return jumps_; }

 private:
  std::vector<Complex> reactants_;
  std::vector<double> rates_;
  std::vector<IntVector> jumps_;
};

/// Gillespie direct method. Absorbed when no reaction can fire or the state
/// is in `absorbing`; censored at max_time; explosion is suspected when the
/// state norm reaches max_state_norm, or when max_events are used up before
/// max_time while events accelerate (the second half took less simulated
/// time than the first) and the state norm has not decreased.
TrajectoryOutcome simulate(const ReactionNetwork& network, const State& x0, std::uint64_t seed,
                           const SimLimits& limits = {}, const TrajectoryObserver& observer = {},
                           const AbsorbingSet& absorbing = {});

/// Trajectory i uses stream_seed(seed, i); results are ordered by i and do
/// not depend on the thread count.
std::vector<TrajectoryOutcome> simulate_batch(const ReactionNetwork& network, const State& x0,
                                              std::uint64_t seed, std::size_t count,
                                              const SimLimits& limits = {}, unsigned threads = 0);

/// Distribution of the first coordinate.
struct EmpiricalPMF {
  std::map<std::int64_t, double> probability;
  std::uint64_t sample_count = 0;

  double operator[](std::int64_t v) const;
  double mean() const;
  double total() const;
};

double total_variation(const EmpiricalPMF& a, const EmpiricalPMF& b);

/// Time-weighted occupation of the first coordinate over [burn_in, horizon].
/// sample_count is the number of events in that interval.
EmpiricalPMF estimate_stationary(const ReactionNetwork& network, const State& x0, std::uint64_t seed,
                                 double burn_in, double horizon);

struct QsdOptions {
  std::size_t particles = 1000;
  double horizon = 100;
  /// When set, the particle distribution is time-averaged over
  /// [average_from, horizon]; otherwise the final-time distribution is used.
  std::optional<double> average_from;
  AbsorbingSet absorbing;
};

/// Fleming-Viot particle estimate. Without reachable absorbing states it
/// degenerates into a many-particle stationary estimate. Throws
/// std::runtime_error if all particles are absorbed at once (always the case
/// for a single particle).
EmpiricalPMF estimate_qsd(const ReactionNetwork& network, const State& x0, std::uint64_t seed,
                          const QsdOptions& options = {});

enum class TailShape { CMPLike, Geometric, PowerLaw };

std::string to_string(TailShape s);

struct TailModelFit {
  TailShape shape;
  bool valid = false;      // decay coefficient a > 0
  double a = 0, b = 0, c = 0;  // log T = -a x log x + b x + c, -a x + c, or -a log x + c
  double rss = 0;
  double bic = 0;
};

struct TailFit {
  TailShape best;
  double a = 0;
  std::vector<TailModelFit> models;
  std::size_t points = 0;
};

/// Least-squares fit of the log survival function log P(X >= x), x >= 1, on
/// points where the survival is at least max(1e-12, 10 / sample_count).
/// The best valid model by BIC wins. Throws std::invalid_argument when fewer
/// than 10 points remain.
TailFit fit_tail(const EmpiricalPMF& pmf);

/// Exact stationary distribution of the first coordinate on the class of c,
/// for networks whose jumps are +-1 lattice steps along a one-dimensional
/// line. Throws std::invalid_argument on other structures or when the class
/// is not closed, and std::runtime_error if the tail does not become
/// negligible within max_terms.
EmpiricalPMF bdp_stationary_exact(const ReactionNetwork& network, const State& c,
                                  std::size_t max_terms = 10'000'000);

void write_pmf_csv(std::ostream& out, const EmpiricalPMF& pmf);
void write_trajectory_csv_header(std::ostream& out, const std::vector<std::string>& species);
void write_trajectory_csv_row(std::ostream& out, double time, const State& x);

}  // namespace srn

#endif  // SRN_SIM_HPP
