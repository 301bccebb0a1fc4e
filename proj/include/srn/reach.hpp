#ifndef SRN_REACH_HPP
#define SRN_REACH_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "srn/model.hpp"

namespace srn {

struct StateHash {
  std::size_t operator()(const State& x) const noexcept;
};

/// Box {0 <= x <= upper} in N_0^d.
struct Window {
  IntVector upper;

  static Window cube(std::size_t dimension, std::int64_t bound);
  /// Smallest box containing every point, enlarged by `margin` per coordinate.
  static Window around(const std::vector<State>& points, std::int64_t margin);

  std::size_t dimension() const { return upper.size(); }
  bool contains(const State& x) const;
  /// Number of lattice points; saturates at SIZE_MAX.
  std::size_t size() const;
  /// Mixed-radix index of a contained state and its inverse.
  std::size_t index(const State& x) const;
  State state(std::size_t index) const;
  bool interior(const State& x, std::int64_t margin) const;
};

inline constexpr std::size_t kDefaultBudget = 1'000'000;
inline constexpr std::int64_t kDefaultWindowBound = 1000;

/// One-step successors x + w for every reaction active at x, with the index
/// of one reaction realising each jump (the first in network order).
std::vector<std::pair<State, std::size_t>> successors(const ReactionNetwork& network, const State& x);

/// True when every step of `path` is active at the state it is applied to.
/// The final state is written to `end` when given.
bool replay(const ReactionNetwork& network, const State& start, const std::vector<std::size_t>& path,
            State* end = nullptr);

struct Reachability {
  Tri value = Tri::Unknown;
  std::vector<std::size_t> path;  // reaction indices, present when value == Yes
  /// How No was established: "no-reaction" (x cannot move or y is not
  /// above any product), "lattice", "cone" or "closed-closure";
  /// for Unknown: "budget" or "window".
  std::string basis;
  std::size_t expanded = 0;
};

struct ReachOptions {
  std::size_t budget = kDefaultBudget;
  std::optional<Window> window;  // default: cube of kDefaultWindowBound
};

/// Bounded breadth-first search for x => y. A certain No is returned when
/// no reaction is active at x, y dominates no product, y - x lies outside the
/// integer lattice or the rational cone spanned by the reaction vectors, or
/// when the forward closure of x inside the window never leaves the window
/// and misses y. Throws
/// std::invalid_argument if x or y is outside the window.
Reachability reachable(const ReactionNetwork& network, const State& x, const State& y,
                       const ReachOptions& options = {});

enum class StateLabel { Neutral, Trapping, Escaping, PIC, QIC, BoundaryUncertain };

std::string to_string(StateLabel label);

struct WindowDecomposition {
  Window window;
  std::vector<std::size_t> class_id;  // per window index, SCC of the truncated graph
  std::vector<StateLabel> label;      // sound label, BoundaryUncertain when undecided
  /// Label read off the truncated graph, ignoring edges that leave the
  /// window; agrees with `label` wherever that one is certain.
  std::vector<StateLabel> provisional;
  std::size_t class_count = 0;

  StateLabel label_of(const State& x) const { return label[window.index(x)]; }
  StateLabel provisional_of(const State& x) const { return provisional[window.index(x)]; }
  std::size_t class_of(const State& x) const { return class_id[window.index(x)]; }
};

/// Communicating-class decomposition of the window. Singleton absorbing
/// states are classified exactly (their in-edges are checked against the
/// whole network, not only the window). Any other class is certain only when
/// no state of its in-window forward closure has a transition leaving the
/// window; otherwise it is BoundaryUncertain. Throws std::length_error above
/// `max_states` states.
WindowDecomposition decompose_window(const ReactionNetwork& network, const Window& window,
                                     std::size_t max_states = 20'000'000);

}  // namespace srn

#endif  // SRN_REACH_HPP
