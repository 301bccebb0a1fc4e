#ifndef SRN_MODEL_HPP
#define SRN_MODEL_HPP

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "srn/numeric.hpp"

namespace srn {

/// Species multiplicities of a complex, in species declaration order.
using Complex = IntVector;
/// Molecule counts, in species declaration order.
using State = IntVector;

struct Reaction {
  Complex reactant;
  Complex product;
  Rational rate;  // mass-action constant

  IntVector vector() const;
  bool operator==(const Reaction&) const = default;
};

/// Species plus mass-action reactions. Duplicate (reactant, product) pairs are
/// merged at construction by summing their rates; the merged reaction keeps
/// the position of the first occurrence.
class ReactionNetwork {
 public:
  ReactionNetwork() = default;
  /// Throws std::invalid_argument if a complex has the wrong length or a
  /// negative entry.
  ReactionNetwork(std::vector<std::string> species, std::vector<Reaction> reactions);

  const std::vector<std::string>& species() const { return species_; }
  const std::vector<Reaction>& reactions() const { return reactions_; }
  std::size_t dimension() const { return species_.size(); }
  std::size_t size() const { return reactions_.size(); }
  const Reaction& operator[](std::size_t i) const { return reactions_[i]; }

  std::optional<std::size_t> species_index(const std::string& name) const;

  /// Same species list, only the listed reactions (in the given order).
  ReactionNetwork subnetwork(const std::vector<std::size_t>& indices) const;

  /// Copy with every rate multiplied by `factor`.
  ReactionNetwork scaled(const Rational& factor) const;

  bool operator==(const ReactionNetwork&) const = default;

 private:
  std::vector<std::string> species_;
  std::vector<Reaction> reactions_;
};

struct Violation {
  enum class Kind { SelfLoop, OrphanSpecies, NonPositiveRate };
  Kind kind;
  std::size_t index;  // reaction index, or species index for OrphanSpecies
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
};

ValidationReport validate(const ReactionNetwork& network);

/// Throws std::invalid_argument listing the violations if the network is invalid.
void require_valid(const ReactionNetwork& network);

/// Reaction vectors and the minimal reactant/product sets attached to them.
struct JumpStructure {
  std::vector<IntVector> omegas;                       // first-appearance order
  std::vector<std::vector<std::size_t>> reactions_of;  // per omega
  std::vector<std::vector<Complex>> inputs_of;         // I_w, an antichain
  std::vector<std::vector<Complex>> outputs_of;        // O_w = I_w + w
  std::vector<Complex> inputs;                         // minimal set of all reactants
  std::vector<Complex> outputs;                        // minimal set of all products

  std::optional<std::size_t> omega_index(const IntVector& w) const;
};

JumpStructure jump_structure(const ReactionNetwork& network);

/// x^{\underline{y}} = prod_i x_i (x_i - 1) ... (x_i - y_i + 1); zero unless x >= y.
Integer falling_factorial(const State& x, const Complex& y);

/// Mass-action propensity, exact.
Rational propensity(const Reaction& reaction, const State& x);

/// True iff every reaction edge of the complex graph lies inside a strongly
/// connected component.
bool is_weakly_reversible(const ReactionNetwork& network);

bool dominates(const IntVector& x, const IntVector& y);  // x >= y componentwise

}  // namespace srn

#endif  // SRN_MODEL_HPP
