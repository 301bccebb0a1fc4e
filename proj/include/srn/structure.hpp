#ifndef SRN_STRUCTURE_HPP
#define SRN_STRUCTURE_HPP

#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "srn/model.hpp"
#include "srn/reach.hpp"

namespace srn {

struct StructureOptions {
  std::size_t budget = kDefaultBudget;  // expansions per reachability query
  std::int64_t radius = 100;            // window padding around the endpoints of a query
  std::int64_t sample_bound = 6;        // per-coordinate bound of the extinction sample window
  std::size_t sample_cap = 100'000;     // maximum number of sampled states
  std::size_t sample_budget = 10'000;   // expansions per sampled state
};

/// The set of trapping states is empty: every minimal product dominates a
/// minimal reactant.
bool trap_set_empty(const ReactionNetwork& network);

/// The set of trapping states is finite: the same dominance holds for every
/// minimal product after deleting any single coordinate.
bool trap_set_finite(const ReactionNetwork& network);

/// Whether every state that can jump by omega can jump back.
struct ReturnCheck {
  IntVector omega;
  Tri value = Tri::Unknown;
  std::string basis;  // "weakly-reversible", or the reachability basis of the deciding query
  /// Per minimal input x of omega: a path from x + omega back to x (Yes only).
  std::vector<std::pair<Complex, std::vector<std::size_t>>> returns;
  Complex failing;  // minimal input whose return is No or Unknown
};

/// One entry per reaction vector, in jump_structure order. Only the minimal
/// inputs of each omega are tested: a return path from x + omega to x replays
/// from x + z + omega to x + z for every z >= 0, because reactions stay active
/// when counts grow.
std::vector<ReturnCheck> omega_o(const ReactionNetwork& network, const StructureOptions& options = {});

struct ExtinctionEvidence {
  Tri value = Tri::Unknown;  // Yes: verified on the sample window (not a proof)
  std::size_t sampled = 0;   // states of the sample window
  std::size_t checked = 0;   // states that needed a path search
  std::size_t verified = 0;
  State witness;             // No: a state whose closed forward closure stays in P u Q;
                             // Unknown: the first undecided state
};

/// Structural decomposition of N_0^d into neutral (N), trapping (T),
/// escaping (E) states and states in non-singleton classes (P u Q).
///
/// The *_expr fields use a small set language: `all`, `empty`,
/// `up{(a,b),(c,d)}` for an upward closure, and the infix operators `|`
/// (union), `&` (intersection) and `\` (difference), left-associative with
/// parentheses for grouping. `ret((w))` is the set of x with x + w => x; it
/// appears only for reaction vectors whose return question is not settled
/// for the whole upward closure.
class ClassificationReport {
 public:
  std::vector<Complex> inputs;   // minimal reactants
  std::vector<Complex> outputs;  // minimal products
  JumpStructure jumps;
  std::vector<ReturnCheck> returns;  // omega-by-omega return answers
  bool positively_independent = false;
  bool trap_empty = false;
  bool trap_finite = false;
  Tri essential = Tri::Unknown;
  ExtinctionEvidence extinction;

  std::string n_expr, t_expr, pq_expr, e_expr;

  bool in_N(const State& x) const;
  bool in_T(const State& x) const;
  /// Yes if x sits in a non-singleton class. Undecided return questions are
  /// settled by a bounded reachability query.
  Tri in_PQ(const State& x) const;
  Tri in_E(const State& x) const;

 private:
  friend ClassificationReport classify(const ReactionNetwork&, const StructureOptions&);
  Tri pq_query(const State& x, std::size_t budget) const;

  struct Cache;
  ReactionNetwork network_;
  StructureOptions options_;
  std::shared_ptr<Cache> cache_;
};

ClassificationReport classify(const ReactionNetwork& network, const StructureOptions& options = {});

/// Set-language rendering of an upward closure.
std::string up_expr(const std::vector<Complex>& antichain);

struct Realization {
  std::size_t reaction = 0;  // index of the removed reaction in the full network
  Tri value = Tri::Unknown;
  std::vector<std::size_t> path;  // full-network indices of sub-network reactions
  std::string basis;
};

struct CoreCheck {
  Tri value = Tri::Unknown;
  std::vector<Realization> realizations;  // one per removed reaction
};

/// Whether the listed reactions form a core network: every removed reaction
/// y -> y' is realised by a path of kept reactions from y to y'. Throws
/// std::invalid_argument for an index outside the network.
CoreCheck is_core_network(const ReactionNetwork& network, const std::vector<std::size_t>& sub,
                          const StructureOptions& options = {});

struct MinimalCores {
  std::vector<std::vector<std::size_t>> cores;  // sorted reaction indices, smallest sets first
  bool complete = true;                         // false if some subset was undecided
  std::size_t subsets_checked = 0;
};

inline constexpr std::size_t kDefaultCoreCap = 16;

/// All inclusion-minimal core networks. Throws std::invalid_argument when the
/// network has more than `cap` reactions.
MinimalCores minimal_core_networks(const ReactionNetwork& network, const StructureOptions& options = {},
                                   std::size_t cap = kDefaultCoreCap);

}  // namespace srn

#endif  // SRN_STRUCTURE_HPP
