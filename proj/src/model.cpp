#include "srn/model.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

#include "srn/lattice.hpp"

namespace srn {

IntVector Reaction::vector() const {
  IntVector w(reactant.size());
  for (std::size_t i = 0; i < w.size(); ++i) w[i] = product[i] - reactant[i];
  return w;
}

ReactionNetwork::ReactionNetwork(std::vector<std::string> species, std::vector<Reaction> reactions)
    : species_(std::move(species)) {
  const std::size_t d = species_.size();
  std::map<std::pair<Complex, Complex>, std::size_t> seen;
  for (auto& r : reactions) {
    if (r.reactant.size() != d || r.product.size() != d)
      throw std::invalid_argument("complex length does not match the species count");
    for (std::size_t i = 0; i < d; ++i)
      if (r.reactant[i] < 0 || r.product[i] < 0)
        throw std::invalid_argument("complex with a negative multiplicity");
    auto key = std::make_pair(r.reactant, r.product);
    if (auto it = seen.find(key); it != seen.end()) {
      reactions_[it->second].rate += r.rate;
      continue;
    }
    seen.emplace(std::move(key), reactions_.size());
    reactions_.push_back(std::move(r));
  }
}

std::optional<std::size_t> ReactionNetwork::species_index(const std::string& name) const {
  auto it = std::find(species_.begin(), species_.end(), name);
  if (it == species_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - species_.begin());
}

ReactionNetwork ReactionNetwork::subnetwork(const std::vector<std::size_t>& indices) const {
  std::vector<Reaction> rs;
  rs.reserve(indices.size());
  for (auto i : indices) rs.push_back(reactions_.at(i));
  return ReactionNetwork(species_, std::move(rs));
}

ReactionNetwork ReactionNetwork::scaled(const Rational& factor) const {
  ReactionNetwork copy = *this;
  for (auto& r : copy.reactions_) r.rate *= factor;
  return copy;
}

ValidationReport validate(const ReactionNetwork& network) {
  ValidationReport report;
  const auto& rs = network.reactions();
  for (std::size_t k = 0; k < rs.size(); ++k) {
    if (rs[k].reactant == rs[k].product)
      report.violations.push_back({Violation::Kind::SelfLoop, k,
                                   "reaction " + std::to_string(k + 1) + ": reactant equals product"});
    if (rs[k].rate <= 0)
      report.violations.push_back({Violation::Kind::NonPositiveRate, k,
                                   "reaction " + std::to_string(k + 1) + ": rate must be positive"});
  }
  for (std::size_t j = 0; j < network.dimension(); ++j) {
    bool used = std::any_of(rs.begin(), rs.end(), [j](const Reaction& r) {
      return r.reactant[j] > 0 || r.product[j] > 0;
    });
    if (!used)
      report.violations.push_back({Violation::Kind::OrphanSpecies, j,
                                   "orphan species " + network.species()[j]});
  }
  return report;
}

void require_valid(const ReactionNetwork& network) {
  auto report = validate(network);
  if (report.ok()) return;
  std::ostringstream os;
  os << "invalid network:";
  for (const auto& v : report.violations) os << ' ' << v.message << ';';
  throw std::invalid_argument(os.str());
}

std::optional<std::size_t> JumpStructure::omega_index(const IntVector& w) const {
  auto it = std::find(omegas.begin(), omegas.end(), w);
  if (it == omegas.end()) return std::nullopt;
  return static_cast<std::size_t>(it - omegas.begin());
}

JumpStructure jump_structure(const ReactionNetwork& network) {
  JumpStructure js;
  std::vector<Complex> all_in, all_out;
  std::vector<std::vector<Complex>> raw_inputs;
  for (std::size_t k = 0; k < network.size(); ++k) {
    const auto& r = network[k];
    IntVector w = r.vector();
    auto idx = js.omega_index(w);
    if (!idx) {
      js.omegas.push_back(w);
      js.reactions_of.emplace_back();
      raw_inputs.emplace_back();
      idx = js.omegas.size() - 1;
    }
    js.reactions_of[*idx].push_back(k);
    raw_inputs[*idx].push_back(r.reactant);
    all_in.push_back(r.reactant);
    all_out.push_back(r.product);
  }
  for (std::size_t i = 0; i < js.omegas.size(); ++i) {
    auto in = minimal_set(raw_inputs[i]);
    std::vector<Complex> out;
    out.reserve(in.size());
    for (const auto& y : in) {
      Complex o = y;
      for (std::size_t j = 0; j < o.size(); ++j) o[j] += js.omegas[i][j];
      out.push_back(std::move(o));
    }
    js.inputs_of.push_back(std::move(in));
    js.outputs_of.push_back(std::move(out));
  }
  if (!all_in.empty()) {
    js.inputs = minimal_set(all_in);
    js.outputs = minimal_set(all_out);
  }
  return js;
}

bool dominates(const IntVector& x, const IntVector& y) {
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] < y[i]) return false;
  return true;
}

Integer falling_factorial(const State& x, const Complex& y) {
  Integer value = 1;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] < y[i]) return 0;
    for (std::int64_t k = 0; k < y[i]; ++k) value *= (x[i] - k);
  }
  return value;
}

Rational propensity(const Reaction& reaction, const State& x) {
  return reaction.rate * Rational(falling_factorial(x, reaction.reactant));
}

bool is_weakly_reversible(const ReactionNetwork& network) {
  if (network.size() == 0) return false;
  std::map<Complex, std::size_t> node_of;
  auto node = [&](const Complex& c) {
    auto [it, inserted] = node_of.emplace(c, node_of.size());
    return it->second;
  };
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& r : network.reactions()) edges.emplace_back(node(r.reactant), node(r.product));
  const std::size_t n = node_of.size();
  std::vector<std::vector<std::size_t>> adj(n);
  for (auto [a, b] : edges) adj[a].push_back(b);

  // Tarjan, recursion depth bounded by the number of complexes.
  std::vector<int> index(n, -1), low(n, 0), comp(n, -1);
  std::vector<bool> on_stack(n, false);
  std::vector<std::size_t> stack;
  int counter = 0, components = 0;
  std::function<void(std::size_t)> strong = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (auto w : adj[v]) {
      if (index[w] < 0) {
        strong(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = components;
      } while (w != v);
      ++components;
    }
  };
  for (std::size_t v = 0; v < n; ++v)
    if (index[v] < 0) strong(v);
  return std::all_of(edges.begin(), edges.end(),
                     [&](const auto& e) { return comp[e.first] == comp[e.second]; });
}

}  // namespace srn
