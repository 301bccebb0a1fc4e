#ifndef SRN_ONEDIM_HPP
#define SRN_ONEDIM_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "srn/lattice.hpp"
#include "srn/model.hpp"
#include "srn/polynomial.hpp"
#include "srn/reach.hpp"

namespace srn {

/// Raised when a one-dimensional operation is called on a network that does
/// not meet its hypotheses.
class HypothesisError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

struct OneDimProfile {
  PrimitiveDirection direction;
  std::vector<std::size_t> catalysts;  // species with y_j = y'_j > 0 in some reaction
  std::vector<std::size_t> positive;   // reactions with omega a positive multiple of omega*
  std::vector<std::size_t> negative;
  std::int64_t R = 0, R_plus = 0, R_minus = 0;
  bool h2_ok = false, h3_ok = false, h4_ok = false;
  std::string h2_message;  // empty when h2_ok; otherwise names a reordering that fixes it
};

/// Semi-norm sum_{j in supp} |x_j|.
std::int64_t support_norm(const PrimitiveDirection& direction, const IntVector& x);

/// Throws HypothesisError("not one-dimensional") if dim span Omega != 1.
OneDimProfile profile(const ReactionNetwork& network);

/// Throws HypothesisError naming the first failing hypothesis among H2, H4.
void require_h2_h4(const OneDimProfile& p);

/// The points c + k * step in N_0^d, k = 0 .. length, with point(0) the one of
/// smallest first coordinate. length is empty when the line is unbounded.
struct LatticeLine {
  State base;
  IntVector step;
  std::int64_t omega_ss = 1;
  std::optional<std::int64_t> length;

  State point(std::int64_t k) const;
  /// Throws std::invalid_argument if x is not on the line.
  std::int64_t index(const State& x) const;
  bool contains(const State& x) const;
};

LatticeLine lattice_line(const PrimitiveDirection& direction, const State& c);

struct DirectionalPolynomials {
  Polynomial drift;
  Polynomial second_moment;
};

/// Requires H2 and H4.
DirectionalPolynomials directional_polynomials(const ReactionNetwork& network, const State& c);

struct ThresholdParams {
  Rational alpha, gamma, theta, beta;
  Polynomial drift, second_moment;
  // Computed over the reactions that can fire somewhere on L_c.
  std::vector<std::size_t> active;
  std::int64_t R = 0, R_plus = 0, R_minus = 0;
  bool h3_ok = false;
};

/// Requires H2 and H4. Scaling the rates by t multiplies alpha..beta by t.
ThresholdParams threshold_params(const ReactionNetwork& network, const State& c);

/// Half-open range [lo, hi) of lattice indices; empty when hi <= lo.
struct IndexInterval {
  std::int64_t lo = 0, hi = 0;
  bool empty() const { return hi <= lo; }
  std::int64_t size() const { return empty() ? 0 : hi - lo; }
  bool contains(std::int64_t k) const { return lo <= k && k < hi; }
};

/// One class { first, first + stride, ... } inside K_c.
struct Progression {
  std::int64_t residue = 1;  // 1 .. omega**
  std::int64_t first = 0;
  std::int64_t stride = 1;
  bool quasi = false;  // QIC when true, PIC otherwise
};

struct ClassGeometry {
  LatticeLine line;
  std::int64_t c_index = 0;
  // Lattice indices of min_1 of L_c intersected with each upward closure.
  std::int64_t i = 0, i_plus = 0, o = 0, o_minus = 0;
  std::int64_t c_lower = 0;   // c_*
  State c_lower_state;
  // c^*: catalyst coordinates equal c_j, support coordinates are +infinity.
  std::vector<std::optional<std::int64_t>> c_upper;
  IndexInterval neutral, trapping, escaping;  // N_c, T_c, E_c
  std::vector<std::int64_t> sigma_plus, sigma_minus;
  std::vector<Progression> progressions;
  std::int64_t sigma_plus_count = 0;  // closed form min(omega**, max(0, i - o))
  bool has_pic = false, has_qic = false;

  /// Label of the k-th point of the line.
  StateLabel label(std::int64_t k) const;
  /// Progression containing index k, or nullopt outside K_c.
  std::optional<std::size_t> class_of(std::int64_t k) const;
};

/// Requires H1-H4 on L_c (H3 over the active reactions).
ClassGeometry class_geometry(const ReactionNetwork& network, const State& c);

enum class Explosivity { No, Yes };
enum class Recurrence { Transient, NullRecurrent, PositiveRecurrent, Undetermined, NotApplicable };
enum class ExpErgodicity { Yes, NotImplied, NotApplicable };
enum class Extinction { Yes, No, NotApplicable };
enum class QuasiErgodicity { UniformlyExponential, NotQuasiErgodic, NotImplied, NotApplicable };
enum class Tail { CMPLike, Geometric, ZetaLike, NotApplicable };

std::string to_string(Explosivity v);
std::string to_string(Recurrence v);
std::string to_string(ExpErgodicity v);
std::string to_string(Extinction v);
std::string to_string(QuasiErgodicity v);
std::string to_string(Tail v);

template <class T>
struct Verdict {
  T value;
  std::string clause;  // clause of the threshold or tail theorem that fired
};

struct DynamicsVerdict {
  Verdict<Explosivity> explosive{Explosivity::No, ""};
  Verdict<Recurrence> recurrence{Recurrence::NotApplicable, ""};
  Verdict<ExpErgodicity> exp_ergodic{ExpErgodicity::NotApplicable, ""};
  Verdict<Extinction> extinction{Extinction::NotApplicable, ""};
  Verdict<QuasiErgodicity> quasi_ergodic{QuasiErgodicity::NotApplicable, ""};
  std::vector<std::string> notes;
};

extern const char* const kNullRecurrenceConjecture;

/// Decision table of the threshold theorem. Fields conditional on PICs
/// (QICs) are n/a unless has_pic (has_qic) is Yes.
DynamicsVerdict classify_dynamics(const ThresholdParams& params, Tri has_pic, Tri has_qic);
DynamicsVerdict classify_dynamics(const ReactionNetwork& network, const State& c, Tri has_pic,
                                  Tri has_qic);
/// PIC/QIC presence taken from class_geometry.
DynamicsVerdict classify_dynamics(const ReactionNetwork& network, const State& c);

struct TailVerdict {
  Verdict<Tail> stationary{Tail::NotApplicable, ""};
  Verdict<Tail> qsd{Tail::NotApplicable, ""};
};

TailVerdict tail_class(const ThresholdParams& params, bool has_pic, bool has_qic);
TailVerdict tail_class(const ReactionNetwork& network, const State& c);

/// Endotactic consequences for a network supplied (or inferred via weak
/// reversibility) as endotactic. Returns the failed consequences.
std::vector<std::string> endotactic_check(const ThresholdParams& params, const DynamicsVerdict& verdict,
                                          bool has_pic);

/// Implications that every computed instance must satisfy. An entry in the
/// result indicates an implementation bug.
std::vector<std::string> consistency_check(const ReactionNetwork& network, const OneDimProfile& profile,
                                           const ThresholdParams& params,
                                           const ClassGeometry* geometry = nullptr);

}  // namespace srn

#endif  // SRN_ONEDIM_HPP
