#include "srn/reach.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <stdexcept>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "srn/lattice.hpp"

namespace srn {

std::size_t StateHash::operator()(const State& x) const noexcept {
  return boost::hash_range(x.begin(), x.end());
}

Window Window::cube(std::size_t dimension, std::int64_t bound) {
  if (bound < 0) throw std::invalid_argument("window bound must be non-negative");
  return Window{IntVector(dimension, bound)};
}

Window Window::around(const std::vector<State>& points, std::int64_t margin) {
  if (points.empty()) throw std::invalid_argument("window needs at least one point");
  IntVector upper(points.front().size(), 0);
  for (const auto& p : points)
    for (std::size_t j = 0; j < p.size(); ++j) upper[j] = std::max(upper[j], p[j]);
  for (auto& u : upper) u += margin;
  return Window{upper};
}

bool Window::contains(const State& x) const {
  if (x.size() != upper.size()) return false;
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] < 0 || x[j] > upper[j]) return false;
  return true;
}

std::size_t Window::size() const {
  std::size_t n = 1;
  for (auto u : upper) {
    const auto side = static_cast<std::size_t>(u) + 1;
    if (n > std::numeric_limits<std::size_t>::max() / side) return std::numeric_limits<std::size_t>::max();
    n *= side;
  }
  return n;
}

std::size_t Window::index(const State& x) const {
  std::size_t idx = 0;
  for (std::size_t j = 0; j < upper.size(); ++j)
    idx = idx * static_cast<std::size_t>(upper[j] + 1) + static_cast<std::size_t>(x[j]);
  return idx;
}

State Window::state(std::size_t index) const {
  State x(upper.size(), 0);
  for (std::size_t j = upper.size(); j-- > 0;) {
    const auto side = static_cast<std::size_t>(upper[j] + 1);
    x[j] = static_cast<std::int64_t>(index % side);
    index /= side;
  }
  return x;
}

bool Window::interior(const State& x, std::int64_t margin) const {
  for (std::size_t j = 0; j < x.size(); ++j)
    if (x[j] > upper[j] - margin) return false;
  return true;
}

namespace {

bool active(const Reaction& r, const State& x) { return dominates(x, r.reactant); }

State add(const State& x, const IntVector& w) {
  State y(x);
  for (std::size_t j = 0; j < y.size(); ++j) y[j] += w[j];
  return y;
}

}  // namespace

std::vector<std::pair<State, std::size_t>> successors(const ReactionNetwork& network, const State& x) {
  std::vector<std::pair<State, std::size_t>> out;
  for (std::size_t i = 0; i < network.size(); ++i) {
    const auto& r = network[i];
    if (!active(r, x)) continue;
    State y = add(x, r.vector());
    if (std::none_of(out.begin(), out.end(), [&](const auto& p) { return p.first == y; }))
      out.emplace_back(std::move(y), i);
  }
  return out;
}

bool replay(const ReactionNetwork& network, const State& start, const std::vector<std::size_t>& path,
            State* end) {
  State x = start;
  for (auto i : path) {
    if (i >= network.size() || !active(network[i], x)) return false;
    x = add(x, network[i].vector());
  }
  if (end) *end = x;
  return true;
}

Reachability reachable(const ReactionNetwork& network, const State& x, const State& y,
                       const ReachOptions& options) {
  const Window window = options.window ? *options.window : Window::cube(network.dimension(), kDefaultWindowBound);
  if (!window.contains(x) || !window.contains(y))
    throw std::invalid_argument("reachability endpoints must lie in the window");

  Reachability result;
  if (x == y) {
    result.value = Tri::Yes;
    result.basis = "path";
    return result;
  }

  const auto js = jump_structure(network);
  IntVector diff(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) diff[j] = y[j] - x[j];
  // The last step of any path lands on a product plus a non-negative vector,
  // and the first one needs an active reaction.
  if (!upward_contains(js.outputs, y) || !upward_contains(js.inputs, x)) {
    result.value = Tri::No;
    result.basis = "no-reaction";
    return result;
  }
  if (!IntegerLattice(js.omegas).contains(diff)) {
    result.value = Tri::No;
    result.basis = "lattice";
    return result;
  }
  if (!in_rational_cone(js.omegas, diff)) {
    result.value = Tri::No;
    result.basis = "cone";
    return result;
  }

  std::vector<IntVector> vectors;
  for (const auto& r : network.reactions()) vectors.push_back(r.vector());

  struct Node {
    State state;
    std::size_t parent;
    std::size_t reaction;
  };
  std::vector<Node> nodes{{x, 0, 0}};
  std::unordered_map<State, std::size_t, StateHash> seen{{x, 0}};
  bool left_window = false;
  std::size_t head = 0;
  while (head < nodes.size()) {
    if (result.expanded >= options.budget) {
      result.value = Tri::Unknown;
      result.basis = "budget";
      return result;
    }
    const std::size_t cur = head++;
    ++result.expanded;
    for (std::size_t i = 0; i < network.size(); ++i) {
      if (!active(network[i], nodes[cur].state)) continue;
      State next = add(nodes[cur].state, vectors[i]);
      if (!window.contains(next)) {
        left_window = true;
        continue;
      }
      if (seen.count(next)) continue;
      seen.emplace(next, nodes.size());
      const bool hit = next == y;
      nodes.push_back({std::move(next), cur, i});
      if (hit) {
        for (std::size_t k = nodes.size() - 1; k != 0; k = nodes[k].parent) result.path.push_back(nodes[k].reaction);
        std::reverse(result.path.begin(), result.path.end());
        result.value = Tri::Yes;
        result.basis = "path";
        return result;
      }
    }
  }
  result.value = left_window ? Tri::Unknown : Tri::No;
  result.basis = left_window ? "window" : "closed-closure";
  return result;
}

std::string to_string(StateLabel label) {
  switch (label) {
    case StateLabel::Neutral:
      return "neutral";
    case StateLabel::Trapping:
      return "trapping";
    case StateLabel::Escaping:
      return "escaping";
    case StateLabel::PIC:
      return "PIC";
    case StateLabel::QIC:
      return "QIC";
    case StateLabel::BoundaryUncertain:
      return "boundary-uncertain";
  }
  return "boundary-uncertain";
}

WindowDecomposition decompose_window(const ReactionNetwork& network, const Window& window,
                                     std::size_t max_states) {
  if (window.dimension() != network.dimension())
    throw std::invalid_argument("window dimension does not match the network");
  const std::size_t n = window.size();
  if (n > max_states) throw std::length_error("window has too many states");

  std::vector<IntVector> vectors;
  for (const auto& r : network.reactions()) vectors.push_back(r.vector());

  // Forward graph in CSR form, edges restricted to the window.
  std::vector<std::size_t> offset(n + 1, 0);
  std::vector<std::size_t> target;
  std::vector<char> exits(n, 0), absorbing(n, 1);
  for (std::size_t v = 0; v < n; ++v) {
    const State x = window.state(v);
    const std::size_t first = target.size();
    for (std::size_t i = 0; i < network.size(); ++i) {
      if (!active(network[i], x)) continue;
      absorbing[v] = 0;
      const State y = add(x, vectors[i]);
      if (!window.contains(y)) {
        exits[v] = 1;
        continue;
      }
      const std::size_t u = window.index(y);
      if (std::find(target.begin() + static_cast<std::ptrdiff_t>(first), target.end(), u) == target.end())
        target.push_back(u);
    }
    offset[v + 1] = target.size();
  }

  // Iterative Tarjan.
  constexpr std::size_t kUnset = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> order(n, kUnset), low(n, 0), comp(n, kUnset);
  std::vector<char> on_stack(n, 0);
  std::vector<std::size_t> stack;
  std::vector<std::pair<std::size_t, std::size_t>> call;  // (vertex, next edge)
  std::size_t counter = 0, components = 0;
  for (std::size_t root = 0; root < n; ++root) {
    if (order[root] != kUnset) continue;
    call.emplace_back(root, offset[root]);
    order[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = 1;
    while (!call.empty()) {
      auto& [v, e] = call.back();
      if (e < offset[v + 1]) {
        const std::size_t u = target[e++];
        if (order[u] == kUnset) {
          order[u] = low[u] = counter++;
          stack.push_back(u);
          on_stack[u] = 1;
          call.emplace_back(u, offset[u]);
        } else if (on_stack[u]) {
          low[v] = std::min(low[v], order[u]);
        }
        continue;
      }
      const std::size_t done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
      if (low[done] == order[done]) {
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = 0;
          comp[w] = components;
        } while (w != done);
        ++components;
      }
    }
  }

  std::vector<std::size_t> comp_size(components, 0);
  std::vector<char> comp_out(components, 0);
  for (std::size_t v = 0; v < n; ++v) {
    ++comp_size[comp[v]];
    for (std::size_t e = offset[v]; e < offset[v + 1]; ++e)
      if (comp[target[e]] != comp[v]) comp_out[comp[v]] = 1;
  }

  // States whose in-window forward closure contains a window exit.
  std::vector<std::size_t> rev_offset(n + 1, 0), rev_target(target.size());
  for (std::size_t e = 0; e < target.size(); ++e) ++rev_offset[target[e] + 1];
  for (std::size_t v = 0; v < n; ++v) rev_offset[v + 1] += rev_offset[v];
  {
    std::vector<std::size_t> fill(rev_offset.begin(), rev_offset.end() - 1);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t e = offset[v]; e < offset[v + 1]; ++e) rev_target[fill[target[e]]++] = v;
  }
  std::vector<char> uncertain(exits);
  std::deque<std::size_t> queue;
  for (std::size_t v = 0; v < n; ++v)
    if (exits[v]) queue.push_back(v);
  while (!queue.empty()) {
    const std::size_t v = queue.front();
    queue.pop_front();
    for (std::size_t e = rev_offset[v]; e < rev_offset[v + 1]; ++e) {
      const std::size_t u = rev_target[e];
      if (!uncertain[u]) {
        uncertain[u] = 1;
        queue.push_back(u);
      }
    }
  }

  WindowDecomposition d;
  d.window = window;
  d.class_id = comp;
  d.class_count = components;
  d.label.resize(n);
  d.provisional.resize(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t c = comp[v];
    StateLabel prov;
    if (comp_size[c] == 1) {
      if (absorbing[v]) {
        // Predecessors are checked against the whole network: x - w must be
        // a state at which a reaction with vector w is active.
        const State x = window.state(v);
        bool reached = false;
        for (std::size_t i = 0; i < network.size() && !reached; ++i) {
          State pre(x);
          bool ok = true;
          for (std::size_t j = 0; j < pre.size(); ++j) {
            pre[j] -= vectors[i][j];
            ok = ok && pre[j] >= network[i].reactant[j];
          }
          reached = ok;
        }
        prov = reached ? StateLabel::Trapping : StateLabel::Neutral;
        d.label[v] = prov;
        d.provisional[v] = prov;
        continue;
      }
      prov = StateLabel::Escaping;
    } else {
      prov = comp_out[c] ? StateLabel::QIC : StateLabel::PIC;
    }
    d.provisional[v] = prov;
    d.label[v] = uncertain[v] ? StateLabel::BoundaryUncertain : prov;
  }
  return d;
}

}  // namespace srn
