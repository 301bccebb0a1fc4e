#include "srn/structure.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "srn/lattice.hpp"

namespace srn {

namespace {

IntVector add(const IntVector& a, const IntVector& b) {
  IntVector c(a);
  for (std::size_t j = 0; j < c.size(); ++j) c[j] += b[j];
  return c;
}

Window query_window(const State& a, const State& b, std::int64_t radius) { return Window::around({a, b}, radius); }

}  // namespace

bool trap_set_empty(const ReactionNetwork& network) {
  const auto js = jump_structure(network);
  return std::all_of(js.outputs.begin(), js.outputs.end(),
                     [&](const Complex& x) { return upward_contains(js.inputs, x); });
}

bool trap_set_finite(const ReactionNetwork& network) {
  const auto js = jump_structure(network);
  const std::size_t d = network.dimension();
  for (std::size_t j = 0; j < d; ++j) {
    for (const auto& x : js.outputs) {
      const bool covered = std::any_of(js.inputs.begin(), js.inputs.end(), [&](const Complex& y) {
        for (std::size_t k = 0; k < d; ++k)
          if (k != j && x[k] < y[k]) return false;
        return true;
      });
      if (!covered) return false;
    }
  }
  return true;
}

std::vector<ReturnCheck> omega_o(const ReactionNetwork& network, const StructureOptions& options) {
  const auto js = jump_structure(network);
  const bool wr = is_weakly_reversible(network);
  std::vector<ReturnCheck> out;
  for (std::size_t k = 0; k < js.omegas.size(); ++k) {
    ReturnCheck check;
    check.omega = js.omegas[k];
    if (wr) {
      check.value = Tri::Yes;
      check.basis = "weakly-reversible";
      out.push_back(std::move(check));
      continue;
    }
    check.value = Tri::Yes;
    check.basis = "path";
    for (const auto& x : js.inputs_of[k]) {
      const State from = add(x, check.omega);
      ReachOptions ro{options.budget, query_window(from, x, options.radius)};
      auto r = reachable(network, from, x, ro);
      if (r.value == Tri::Yes) {
        check.returns.emplace_back(x, std::move(r.path));
        continue;
      }
      // A No is final; an Unknown may still be overridden by a later No.
      if (check.value == Tri::Yes || r.value == Tri::No) {
        check.value = r.value;
        check.basis = r.basis;
        check.failing = x;
      }
      if (r.value == Tri::No) break;
    }
    if (check.value != Tri::Yes) check.returns.clear();
    out.push_back(std::move(check));
  }
  return out;
}

std::string up_expr(const std::vector<Complex>& antichain) {
  if (antichain.empty()) return "empty";
  std::string s = "up{";
  for (std::size_t i = 0; i < antichain.size(); ++i) s += (i ? "," : "") + to_string(antichain[i]);
  return s + "}";
}

struct ClassificationReport::Cache {
  std::mutex mutex;
  std::unordered_map<State, std::pair<Tri, std::size_t>, StateHash> pq;  // answer and budget used
};

bool ClassificationReport::in_N(const State& x) const {
  return !upward_contains(outputs, x) && !upward_contains(inputs, x);
}

bool ClassificationReport::in_T(const State& x) const {
  return upward_contains(outputs, x) && !upward_contains(inputs, x);
}

Tri ClassificationReport::pq_query(const State& x, std::size_t budget) const {
  if (!upward_contains(inputs, x) || !upward_contains(outputs, x)) return Tri::No;
  {
    std::lock_guard lock(cache_->mutex);
    auto it = cache_->pq.find(x);
    if (it != cache_->pq.end() && (it->second.first != Tri::Unknown || it->second.second >= budget))
      return it->second.first;
  }
  Tri answer = Tri::No;
  for (std::size_t k = 0; k < jumps.omegas.size() && answer != Tri::Yes; ++k) {
    if (!upward_contains(jumps.inputs_of[k], x)) continue;
    if (returns[k].value == Tri::Yes) {
      answer = Tri::Yes;
      break;
    }
    const State from = add(x, jumps.omegas[k]);
    ReachOptions ro{budget, query_window(from, x, options_.radius)};
    const Tri r = reachable(network_, from, x, ro).value;
    if (r == Tri::Yes) answer = Tri::Yes;
    else if (r == Tri::Unknown) answer = Tri::Unknown;
  }
  std::lock_guard lock(cache_->mutex);
  cache_->pq[x] = {answer, budget};
  return answer;
}

Tri ClassificationReport::in_PQ(const State& x) const { return pq_query(x, options_.budget); }

Tri ClassificationReport::in_E(const State& x) const {
  if (!upward_contains(inputs, x)) return Tri::No;
  switch (in_PQ(x)) {
    case Tri::Yes:
      return Tri::No;
    case Tri::No:
      return Tri::Yes;
    default:
      return Tri::Unknown;
  }
}

namespace {

// Searches, for each sampled state in P u Q, a path to a state outside P u Q.
ExtinctionEvidence check_extinction(const ReactionNetwork& network, const ClassificationReport& report,
                                    const StructureOptions& options,
                                    const std::function<Tri(const State&)>& pq) {
  ExtinctionEvidence ev;
  const std::size_t d = network.dimension();
  std::int64_t bound = options.sample_bound;
  while (bound > 0 && Window::cube(d, bound).size() > options.sample_cap) --bound;
  const Window sample = Window::cube(d, bound);
  ev.sampled = sample.size();
  ev.value = Tri::Yes;

  std::vector<IntVector> vectors;
  for (const auto& r : network.reactions()) vectors.push_back(r.vector());
  std::unordered_set<State, StateHash> verified;
  bool undecided = false;

  auto is_target = [&](const State& z, bool& unsure) {
    if (report.in_N(z) || report.in_T(z)) return true;
    const Tri t = pq(z);
    if (t == Tri::Unknown) unsure = true;
    return t == Tri::No;
  };

  for (std::size_t idx = 0; idx < ev.sampled; ++idx) {
    const State x = sample.state(idx);
    bool unsure = false;
    if (is_target(x, unsure)) continue;
    ++ev.checked;
    if (verified.count(x)) {
      ++ev.verified;
      continue;
    }
    // Breadth-first search for a target or an already verified state.
    std::vector<State> nodes{x};
    std::vector<std::size_t> parent{0};
    std::unordered_set<State, StateHash> seen{x};
    const Window win = Window::around({x}, options.radius);
    bool found = false, open = false;
    std::size_t head = 0, hit = 0;
    while (head < nodes.size() && !found) {
      if (head >= options.sample_budget) {
        open = true;
        break;
      }
      const std::size_t cur = head++;
      for (std::size_t i = 0; i < network.size() && !found; ++i) {
        if (!dominates(nodes[cur], network[i].reactant)) continue;
        State next = add(nodes[cur], vectors[i]);
        if (!win.contains(next)) {
          open = true;
          continue;
        }
        if (!seen.insert(next).second) continue;
        const bool done = verified.count(next) || is_target(next, unsure);
        nodes.push_back(std::move(next));
        parent.push_back(cur);
        if (done) {
          found = true;
          hit = nodes.size() - 1;
        }
      }
    }
    if (found) {
      for (std::size_t k = parent[hit]; ; k = parent[k]) {
        verified.insert(nodes[k]);
        if (k == 0) break;
      }
      ++ev.verified;
      continue;
    }
    if (!open && !unsure) {
      ev.value = Tri::No;
      ev.witness = x;
      return ev;
    }
    if (!undecided) ev.witness = x;
    undecided = true;
  }
  if (undecided) ev.value = Tri::Unknown;
  return ev;
}

}  // namespace

ClassificationReport classify(const ReactionNetwork& network, const StructureOptions& options) {
  ClassificationReport rep;
  rep.network_ = network;
  rep.options_ = options;
  rep.cache_ = std::make_shared<ClassificationReport::Cache>();
  rep.jumps = jump_structure(network);
  rep.inputs = rep.jumps.inputs;
  rep.outputs = rep.jumps.outputs;
  rep.returns = omega_o(network, options);
  rep.positively_independent =
      rep.jumps.omegas.empty() || positively_linearly_independent(rep.jumps.omegas).independent;
  rep.trap_empty = trap_set_empty(network);
  rep.trap_finite = trap_set_finite(network);

  rep.essential = Tri::Yes;
  for (const auto& r : rep.returns) {
    if (r.value == Tri::No) {
      rep.essential = Tri::No;
      break;
    }
    if (r.value == Tri::Unknown) rep.essential = Tri::Unknown;
  }

  const std::string up_i = up_expr(rep.inputs), up_o = up_expr(rep.outputs);
  rep.n_expr = rep.outputs.empty() ? (rep.inputs.empty() ? "all" : "all \\ " + up_i)
                                   : "all \\ (" + up_o + " | " + up_i + ")";
  rep.t_expr = rep.outputs.empty() ? "empty" : (rep.inputs.empty() ? up_o : up_o + " \\ " + up_i);

  std::vector<std::string> parts;
  for (std::size_t k = 0; k < rep.jumps.omegas.size(); ++k) {
    const std::string up = up_expr(rep.jumps.inputs_of[k]);
    if (rep.returns[k].value == Tri::Yes) parts.push_back(up);
    else parts.push_back("(" + up + " & ret(" + to_string(rep.jumps.omegas[k]) + "))");
  }
  rep.pq_expr.clear();
  for (std::size_t k = 0; k < parts.size(); ++k) rep.pq_expr += (k ? " | " : "") + parts[k];
  if (parts.empty()) rep.pq_expr = "empty";
  rep.e_expr = rep.inputs.empty() ? "empty" : (parts.empty() ? up_i : up_i + " \\ (" + rep.pq_expr + ")");

  const std::size_t small = std::min(options.sample_budget, options.budget);
  rep.extinction = check_extinction(network, rep, options,
                                    [&rep, small](const State& z) { return rep.pq_query(z, small); });
  return rep;
}

CoreCheck is_core_network(const ReactionNetwork& network, const std::vector<std::size_t>& sub,
                          const StructureOptions& options) {
  std::vector<char> kept(network.size(), 0);
  for (auto i : sub) {
    if (i >= network.size()) throw std::invalid_argument("sub-network index out of range");
    kept[i] = 1;
  }
  std::vector<std::size_t> order;
  for (std::size_t i = 0; i < network.size(); ++i)
    if (kept[i]) order.push_back(i);
  const ReactionNetwork core = network.subnetwork(order);

  CoreCheck out;
  out.value = Tri::Yes;
  for (std::size_t i = 0; i < network.size(); ++i) {
    if (kept[i]) continue;
    Realization real;
    real.reaction = i;
    const auto& r = network[i];
    ReachOptions ro{options.budget, query_window(r.reactant, r.product, options.radius)};
    auto res = reachable(core, r.reactant, r.product, ro);
    real.value = res.value;
    real.basis = res.basis;
    for (auto k : res.path) real.path.push_back(order[k]);
    if (res.value == Tri::No) out.value = Tri::No;
    else if (res.value == Tri::Unknown && out.value == Tri::Yes) out.value = Tri::Unknown;
    out.realizations.push_back(std::move(real));
  }
  return out;
}

MinimalCores minimal_core_networks(const ReactionNetwork& network, const StructureOptions& options,
                                   std::size_t cap) {
  const std::size_t m = network.size();
  if (m > cap)
    throw std::invalid_argument("network has " + std::to_string(m) + " reactions, above the core search cap of " +
                                std::to_string(cap));
  MinimalCores out;
  if (m == 0) {
    out.cores.push_back({});
    return out;
  }
  using Mask = std::uint32_t;
  const Mask full = (Mask{1} << m) - 1;

  // Removal order: largest reaction vectors first.
  std::vector<std::size_t> by_size(m);
  for (std::size_t i = 0; i < m; ++i) by_size[i] = i;
  auto norm = [&](std::size_t i) {
    std::int64_t s = 0;
    for (auto v : network[i].vector()) s += std::abs(v);
    return s;
  };
  std::stable_sort(by_size.begin(), by_size.end(), [&](auto a, auto b) { return norm(a) > norm(b); });

  std::map<std::pair<std::size_t, Mask>, Tri> realized;
  auto realize = [&](std::size_t i, Mask mask) {
    auto key = std::make_pair(i, mask);
    if (auto it = realized.find(key); it != realized.end()) return it->second;
    std::vector<std::size_t> idx;
    for (std::size_t k = 0; k < m; ++k)
      if (mask >> k & 1) idx.push_back(k);
    const ReactionNetwork core = network.subnetwork(idx);
    const auto& r = network[i];
    ReachOptions ro{options.budget, query_window(r.reactant, r.product, options.radius)};
    const Tri t = idx.empty() ? Tri::No : reachable(core, r.reactant, r.product, ro).value;
    realized[key] = t;
    return t;
  };
  std::unordered_map<Mask, Tri> verdict{{full, Tri::Yes}};
  auto is_core = [&](Mask mask) {
    if (auto it = verdict.find(mask); it != verdict.end()) return it->second;
    ++out.subsets_checked;
    Tri t = Tri::Yes;
    for (std::size_t i : by_size) {
      if (mask >> i & 1) continue;
      const Tri r = realize(i, mask);
      if (r == Tri::No) {
        t = Tri::No;
        break;
      }
      if (r == Tri::Unknown) t = Tri::Unknown;
    }
    verdict[mask] = t;
    return t;
  };

  std::vector<Mask> stack{full};
  std::unordered_set<Mask> expanded;
  std::vector<Mask> minimal;
  while (!stack.empty()) {
    const Mask s = stack.back();
    stack.pop_back();
    if (!expanded.insert(s).second) continue;
    bool has_core_child = false, has_unknown_child = false;
    for (std::size_t i : by_size) {
      if (!(s >> i & 1)) continue;
      const Mask child = s & ~(Mask{1} << i);
      const Tri t = is_core(child);
      if (t == Tri::Yes) {
        has_core_child = true;
        stack.push_back(child);
      } else if (t == Tri::Unknown) {
        has_unknown_child = true;
      }
    }
    if (has_unknown_child) out.complete = false;
    if (!has_core_child) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end());
  for (Mask s : minimal) {
    std::vector<std::size_t> set;
    for (std::size_t k = 0; k < m; ++k)
      if (s >> k & 1) set.push_back(k);
    out.cores.push_back(std::move(set));
  }
  std::sort(out.cores.begin(), out.cores.end(), [](const auto& a, const auto& b) {
    return a.size() != b.size() ? a.size() < b.size() : a < b;
  });
  return out;
}

}  // namespace srn
