#include "srn/cli.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"
#include "srn/lattice.hpp"
#include "srn/onedim.hpp"
#include "srn/parser.hpp"
#include "srn/reach.hpp"
#include "srn/sim.hpp"
#include "srn/structure.hpp"

namespace srn {

namespace {

using json = nlohmann::ordered_json;

// Input problems that map to exit code 2.
class InputError : public std::runtime_error {
 public:
  InputError(std::string kind, const std::string& message, json detail = json::object())
      : std::runtime_error(message), kind_(std::move(kind)), detail_(std::move(detail)) {}
  const std::string& kind() const { return kind_; }
  const json& detail() const { return detail_; }

 private:
  std::string kind_;
  json detail_;
};

json to_json(const std::vector<IntVector>& vs) {
  json a = json::array();
  for (const auto& v : vs) a.push_back(v);
  return a;
}

std::string tri(Tri t) { return to_string(t); }

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("io", "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::map<std::string, Rational> parse_kappa(const std::vector<std::string>& items) {
  std::map<std::string, Rational> out;
  for (const auto& item : items) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0)
      throw InputError("arguments", "--kappa expects NAME=VALUE, got '" + item + "'");
    try {
      out[item.substr(0, eq)] = parse_rational(item.substr(eq + 1));
    } catch (const std::exception&) {
      throw InputError("arguments", "bad value in --kappa " + item);
    }
  }
  return out;
}

State parse_state(const std::string& text, std::size_t dimension, const std::string& flag) {
  State x;
  std::stringstream ss(text);
  std::string part;
  while (std::getline(ss, part, ',')) {
    try {
      std::size_t used = 0;
      const long long v = std::stoll(part, &used);
      if (used != part.size() || v < 0) throw std::invalid_argument(part);
      x.push_back(v);
    } catch (const std::exception&) {
      throw InputError("arguments", flag + " expects comma-separated non-negative integers, got '" + text + "'");
    }
  }
  if (x.size() != dimension)
    throw InputError("arguments", flag + " has " + std::to_string(x.size()) + " entries, the network has " +
                                      std::to_string(dimension) + " species");
  return x;
}

std::size_t default_budget() {
  if (const char* env = std::getenv("SRN_BUDGET")) {
    try {
      const unsigned long long v = std::stoull(env);
      if (v > 0) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
  }
  return kDefaultBudget;
}

struct Options {
  std::string file;
  std::vector<std::string> kappa;
  std::size_t budget = 0;
  std::int64_t window = -1;
  std::int64_t radius = 100;
  std::size_t cap = kDefaultCoreCap;
  std::string check;
  std::string c;
  bool endotactic = false;
  std::string mode;
  std::string x0;
  std::uint64_t seed = 1;
  std::uint64_t events = 1'000'000;
  double time = 1e3;
  std::int64_t norm = 1'000'000'000;
  std::size_t runs = 1;
  std::string csv;
  double burn_in = 10;
  double horizon = 1e4;
  std::size_t particles = 1000;
  std::optional<double> average_from;
};

class Command {
 public:
  Command(std::string name, const std::vector<std::string>& argv, Options options)
      : name_(std::move(name)), options_(std::move(options)) {
    report_["schema_version"] = kSchemaVersion;
    report_["tool"] = {{"name", "srn"}, {"version", kToolVersion}};
    report_["command"] = {{"name", name_}, {"argv", argv}};
    report_["network"] = nullptr;
    report_["payload"] = json::object();
    report_["warnings"] = json::array();
  }

  int run(std::ostream& out) {
    int code = kExitOk;
    try {
      code = dispatch();
    } catch (const InputError& e) {
      code = fail(e.kind(), e.what(), e.detail());
    } catch (const ParseError& e) {
      code = fail(to_string(e.kind()), e.message(),
                  {{"line", e.span().line}, {"column", e.span().column}, {"length", e.span().length}});
    } catch (const HypothesisError& e) {
      code = fail("hypothesis", e.what());
    } catch (const std::invalid_argument& e) {
      code = fail("invalid-input", e.what());
    } catch (const std::length_error& e) {
      code = fail("too-large", e.what());
    } catch (const std::out_of_range& e) {
      code = fail("invalid-input", e.what());
    } catch (const std::runtime_error& e) {
      code = fail("runtime", e.what());
    } catch (const std::exception& e) {
      code = kExitInternal;
      report_["error"] = {{"kind", "internal"}, {"message", e.what()}};
    }
    static const char* const names[] = {"ok", "verdict-limited", "input-error", "internal-inconsistency"};
    report_["status"] = names[code];
    report_["exit_code"] = code;
    out << report_.dump(2) << '\n';
    return code;
  }

 private:
  int fail(const std::string& kind, const std::string& message, json detail = json::object()) {
    json e = {{"kind", kind}, {"message", message}};
    if (!detail.empty()) e["detail"] = std::move(detail);
    report_["error"] = std::move(e);
    return kExitInputError;
  }

  void warn(const std::string& w) { report_["warnings"].push_back(w); }

  json& payload() { return report_["payload"]; }

  void load() {
    const std::string text = read_file(options_.file);
    source_ = parse_source(text);
    const auto params = parse_kappa(options_.kappa);
    const auto used = source_.parameters();
    for (const auto& [k, v] : params)
      if (std::find(used.begin(), used.end(), k) == used.end()) warn("parameter " + k + " is not used by the network");
    if (name_ == "parse") {
      std::vector<std::string> unbound;
      for (const auto& k : used)
        if (!params.count(k)) unbound.push_back(k);
      if (!unbound.empty()) {
        std::string names;
        for (const auto& k : unbound) names += (names.empty() ? "" : ", ") + k;
        warn("unbound parameters " + names + "; network digest omitted");
        return;
      }
    }
    network_ = srn::bind(source_, params);
    bound_ = true;
    const auto report = validate(network_);
    if (network_.size() == 0 && name_ == "oracle") {
      warn("network has no reactions");
    } else if (!report.ok()) {
      json v = json::array();
      for (const auto& viol : report.violations) v.push_back(viol.message);
      throw InputError("invalid-network", report.violations.front().message, {{"violations", v}});
    }
    json reactions = json::array();
    for (std::size_t r = 0; r < network_.size(); ++r) {
      const auto& reaction = network_[r];
      reactions.push_back({{"index", r},
                           {"text", format_reaction(reaction, network_.species())},
                           {"reactant", reaction.reactant},
                           {"product", reaction.product},
                           {"rate", to_string(reaction.rate)}});
    }
    const auto jumps = jump_structure(network_);
    report_["network"] = {{"species", network_.species()},
                          {"reactions", reactions},
                          {"omegas", to_json(jumps.omegas)}};
  }

  StructureOptions structure_options() const {
    StructureOptions s;
    s.budget = options_.budget > 0 ? options_.budget : default_budget();
    s.radius = options_.radius;
    if (options_.window >= 0) s.sample_bound = options_.window;
    return s;
  }

  int dispatch() {
    load();
    if (name_ == "parse") return cmd_parse();
    if (name_ == "classify") return cmd_classify();
    if (name_ == "core") return cmd_core();
    if (name_ == "analyze1d") return cmd_analyze1d();
    if (name_ == "simulate") return cmd_simulate();
    if (name_ == "oracle") return cmd_oracle();
    throw std::logic_error("unknown command " + name_);
  }

  int cmd_parse() {
    payload()["canonical"] = serialize(source_);
    if (bound_ && !source_.parameters().empty()) payload()["bound"] = serialize(network_);
    payload()["parameters"] = source_.parameters();
    payload()["species_declared"] = source_.species_declared;
    return kExitOk;
  }

  int cmd_classify() {
    const auto options = structure_options();
    const auto report = classify(network_, options);
    bool unknown = report.essential == Tri::Unknown || report.extinction.value == Tri::Unknown;
    json omegas = json::array();
    for (std::size_t k = 0; k < report.returns.size(); ++k) {
      const auto& rc = report.returns[k];
      json entry = {{"omega", rc.omega},
                    {"reactions", report.jumps.reactions_of[k]},
                    {"inputs", to_json(report.jumps.inputs_of[k])},
                    {"returns", tri(rc.value)},
                    {"basis", rc.basis}};
      if (rc.value != Tri::Yes) entry["failing_input"] = rc.failing;
      unknown = unknown || rc.value == Tri::Unknown;
      omegas.push_back(entry);
    }
    auto& p = payload();
    p["inputs"] = to_json(report.inputs);
    p["outputs"] = to_json(report.outputs);
    p["omegas"] = omegas;
    p["positively_independent"] = report.positively_independent;
    p["trap_set_empty"] = report.trap_empty;
    p["trap_set_finite"] = report.trap_finite;
    p["essential"] = tri(report.essential);
    p["extinct_sufficient"] = {{"value", tri(report.extinction.value)},
                               {"sample_bound", options.sample_bound},
                               {"sampled", report.extinction.sampled},
                               {"checked", report.extinction.checked},
                               {"verified", report.extinction.verified},
                               {"witness", report.extinction.witness}};
    p["sets"] = {{"N", report.n_expr}, {"T", report.t_expr}, {"PQ", report.pq_expr}, {"E", report.e_expr}};
    if (options_.window >= 0) {
      const auto window = Window::cube(network_.dimension(), options_.window);
      if (window.size() > 50'000'000) throw InputError("too-large", "window has too many states to count");
      std::size_t n = 0, t = 0;
      for (std::size_t v = 0; v < window.size(); ++v) {
        const State x = window.state(v);
        n += report.in_N(x);
        t += report.in_T(x);
      }
      p["window_counts"] = {{"bound", options_.window},
                            {"states", window.size()},
                            {"N", n},
                            {"T", t},
                            {"other", window.size() - n - t}};
    }
    if (report.essential == Tri::Unknown) warn("essential is unknown within the search budget");
    if (report.extinction.value == Tri::Unknown) warn("extinct-sufficient is undecided on the sample window");
    return unknown ? kExitVerdictLimited : kExitOk;
  }

  json reaction_list(const std::vector<std::size_t>& rs) const {
    json texts = json::array();
    for (auto r : rs) texts.push_back(format_reaction(network_[r], network_.species()));
    return {{"reactions", rs}, {"text", texts}};
  }

  json core_check_json(const CoreCheck& check) const {
    json realizations = json::array();
    for (const auto& r : check.realizations)
      realizations.push_back({{"reaction", r.reaction}, {"value", tri(r.value)}, {"path", r.path}, {"basis", r.basis}});
    return {{"value", tri(check.value)}, {"realizations", realizations}};
  }

  int cmd_core() {
    const auto options = structure_options();
    const auto result = minimal_core_networks(network_, options, options_.cap);
    json cores = json::array();
    std::vector<std::size_t> uni;
    for (const auto& core : result.cores) {
      cores.push_back(reaction_list(core));
      uni.insert(uni.end(), core.begin(), core.end());
    }
    std::sort(uni.begin(), uni.end());
    uni.erase(std::unique(uni.begin(), uni.end()), uni.end());
    auto& p = payload();
    p["cores"] = cores;
    p["complete"] = result.complete;
    p["subsets_checked"] = result.subsets_checked;
    p["union"] = reaction_list(uni);
    bool unknown = !result.complete;
    if (!uni.empty()) {
      const auto check = is_core_network(network_, uni, options);
      p["union_is_core"] = tri(check.value);
      if (check.value == Tri::No) {
        warn("the union of the minimal cores is not a core network");
        return kExitInternal;
      }
      unknown = unknown || check.value == Tri::Unknown;
    }
    if (!options_.check.empty()) {
      std::vector<std::size_t> sub;
      std::stringstream ss(options_.check);
      std::string part;
      while (std::getline(ss, part, ',')) {
        try {
          sub.push_back(static_cast<std::size_t>(std::stoul(part)));
        } catch (const std::exception&) {
          throw InputError("arguments", "--check expects comma-separated reaction indices");
        }
      }
      const auto check = is_core_network(network_, sub, options);
      p["check"] = reaction_list(sub);
      p["check"]["core"] = core_check_json(check);
      unknown = unknown || check.value == Tri::Unknown;
    }
    if (!result.complete) warn("some subsets were undecided within the search budget");
    return unknown ? kExitVerdictLimited : kExitOk;
  }

  template <class V>
  static json verdict(const Verdict<V>& v) {
    return {{"value", to_string(v.value)}, {"clause", v.clause}};
  }

  json geometry_json(const ClassGeometry& g) const {
    auto states = [&](const IndexInterval& in) {
      json a = json::array();
      for (std::int64_t k = in.lo; k < in.hi; ++k) a.push_back(g.line.point(k));
      return a;
    };
    auto interval = [&](const IndexInterval& in) {
      return json{{"from_index", in.lo}, {"to_index", std::max(in.lo, in.hi)}, {"states", states(in)}};
    };
    json upper = json::array();
    for (const auto& v : g.c_upper) upper.push_back(v ? json(*v) : json("inf"));
    json progressions = json::array();
    for (const auto& pr : g.progressions)
      progressions.push_back({{"residue", pr.residue},
                              {"first_index", pr.first},
                              {"first_state", g.line.point(pr.first)},
                              {"stride", pr.stride},
                              {"label", pr.quasi ? "QIC" : "PIC"}});
    return {{"line",
             {{"base", g.line.base},
              {"step", g.line.step},
              {"omega_ss", g.line.omega_ss},
              {"length", g.line.length ? json(*g.line.length) : json(nullptr)}}},
            {"c_index", g.c_index},
            {"i", {{"index", g.i}, {"state", g.line.point(g.i)}}},
            {"i_plus", {{"index", g.i_plus}, {"state", g.line.point(g.i_plus)}}},
            {"o", {{"index", g.o}, {"state", g.line.point(g.o)}}},
            {"o_minus", {{"index", g.o_minus}, {"state", g.line.point(g.o_minus)}}},
            {"c_lower", {{"index", g.c_lower}, {"state", g.c_lower_state}}},
            {"c_upper", upper},
            {"N", interval(g.neutral)},
            {"T", interval(g.trapping)},
            {"E", interval(g.escaping)},
            {"K", {{"from_index", g.c_lower}, {"to_index", "inf"}}},
            {"sigma_plus", g.sigma_plus},
            {"sigma_minus", g.sigma_minus},
            {"sigma_plus_count", g.sigma_plus_count},
            {"progressions", progressions},
            {"has_pic", g.has_pic},
            {"has_qic", g.has_qic}};
  }

  int cmd_analyze1d() {
    auto& p = payload();
    const auto prof = profile(network_);
    p["profile"] = {{"omega_star", prof.direction.vector},
                    {"omega_ss", prof.direction.scalar},
                    {"support", prof.direction.support},
                    {"catalysts", prof.catalysts},
                    {"positive", prof.positive},
                    {"negative", prof.negative},
                    {"R", prof.R},
                    {"R_plus", prof.R_plus},
                    {"R_minus", prof.R_minus},
                    {"h2", prof.h2_ok},
                    {"h3", prof.h3_ok},
                    {"h4", prof.h4_ok}};
    if (!prof.h2_ok) p["profile"]["h2_message"] = prof.h2_message;
    require_h2_h4(prof);
    const State c = options_.c.empty() ? State(network_.dimension(), 0)
                                       : parse_state(options_.c, network_.dimension(), "--c");
    p["c"] = c;
    const auto t = threshold_params(network_, c);
    p["params"] = {{"R", t.R},
                   {"R_plus", t.R_plus},
                   {"R_minus", t.R_minus},
                   {"active", t.active},
                   {"h3", t.h3_ok},
                   {"alpha", to_string(t.alpha)},
                   {"gamma", to_string(t.gamma)},
                   {"theta", to_string(t.theta)},
                   {"beta", to_string(t.beta)},
                   {"drift", t.drift.to_string("x1")},
                   {"second_moment", t.second_moment.to_string("x1")}};
    if (!t.h3_ok) {
      warn("H3 fails on the line through c: the threshold theorems do not apply");
      p["geometry"] = nullptr;
      p["verdict"] = nullptr;
      p["tail"] = nullptr;
      p["consistency"] = consistency_check(network_, prof, t);
      return p["consistency"].empty() ? kExitVerdictLimited : kExitInternal;
    }
    const auto g = class_geometry(network_, c);
    p["geometry"] = geometry_json(g);
    const auto v = classify_dynamics(t, g.has_pic ? Tri::Yes : Tri::No, g.has_qic ? Tri::Yes : Tri::No);
    p["verdict"] = {{"explosive", verdict(v.explosive)},
                    {"recurrence", verdict(v.recurrence)},
                    {"exp_ergodic", verdict(v.exp_ergodic)},
                    {"extinction", verdict(v.extinction)},
                    {"quasi_ergodic", verdict(v.quasi_ergodic)},
                    {"notes", v.notes}};
    const auto tv = tail_class(t, g.has_pic, g.has_qic);
    p["tail"] = {{"stationary", verdict(tv.stationary)}, {"qsd", verdict(tv.qsd)}};
    const auto violations = consistency_check(network_, prof, t, &g);
    p["consistency"] = violations;
    int code = kExitOk;
    const bool weakly_reversible = is_weakly_reversible(network_);
    if (options_.endotactic || weakly_reversible) {
      const auto failed = endotactic_check(t, v, g.has_pic);
      p["endotactic"] = {{"source", options_.endotactic ? "flag" : "weakly-reversible"}, {"failed", failed}};
      for (const auto& f : failed) warn("endotactic consequence fails: " + f);
      if (!failed.empty() && weakly_reversible) code = kExitInternal;
    } else {
      p["endotactic"] = nullptr;
    }
    for (const auto& n : v.notes) warn(n);
    if (!violations.empty()) {
      for (const auto& f : violations) warn("internal inconsistency: " + f);
      return kExitInternal;
    }
    if (code == kExitOk && v.recurrence.value == Recurrence::Undetermined) code = kExitVerdictLimited;
    return code;
  }

  static json pmf_json(const EmpiricalPMF& pmf) {
    json support = json::array(), prob = json::array();
    for (const auto& [v, q] : pmf.probability) {
      support.push_back(v);
      prob.push_back(q);
    }
    return {{"support", support}, {"probability", prob}, {"sample_count", pmf.sample_count}, {"mean", pmf.mean()}};
  }

  static json outcome_json(const TrajectoryOutcome& o) {
    return {{"kind", to_string(o.kind)}, {"time", o.time}, {"state", o.state}, {"events", o.events}, {"seed", o.seed}};
  }

  std::ofstream open_csv() const {
    std::ofstream f(options_.csv);
    if (!f) throw InputError("io", "cannot write " + options_.csv);
    return f;
  }

  int cmd_simulate() {
    const State x0 = options_.x0.empty() ? State(network_.dimension(), 0)
                                         : parse_state(options_.x0, network_.dimension(), "--x0");
    SimLimits limits;
    limits.max_events = options_.events;
    limits.max_time = options_.time;
    limits.max_state_norm = options_.norm;
    if (options_.events == 0 || !(options_.time > 0) || options_.norm <= 0)
      throw InputError("arguments", "--events, --time and --norm must be positive");
    auto& p = payload();
    p["mode"] = options_.mode;
    p["x0"] = x0;
    p["seed"] = options_.seed;
    if (options_.mode == "traj") {
      p["limits"] = {{"max_events", limits.max_events},
                     {"max_time", limits.max_time},
                     {"max_state_norm", limits.max_state_norm}};
      if (options_.runs <= 1) {
        TrajectoryObserver observer;
        std::ofstream csv;
        if (!options_.csv.empty()) {
          csv = open_csv();
          write_trajectory_csv_header(csv, network_.species());
          observer = [&](double t, const State& x) { write_trajectory_csv_row(csv, t, x); };
        }
        p["outcome"] = outcome_json(simulate(network_, x0, options_.seed, limits, observer));
        if (!options_.csv.empty()) p["csv"] = options_.csv;
      } else {
        if (!options_.csv.empty()) throw InputError("arguments", "--csv records a single trajectory; drop --runs");
        const auto outs = simulate_batch(network_, x0, options_.seed, options_.runs, limits);
        json list = json::array();
        std::map<std::string, std::size_t> counts{{"absorbed", 0}, {"censored", 0}, {"explosion_suspected", 0}};
        for (const auto& o : outs) {
          list.push_back(outcome_json(o));
          ++counts[to_string(o.kind)];
        }
        p["counts"] = counts;
        p["outcomes"] = list;
      }
      return kExitOk;
    }
    if (!(options_.horizon > 0)) throw InputError("arguments", "--horizon must be positive");
    EmpiricalPMF pmf;
    if (options_.mode == "qsd") {
      QsdOptions q;
      q.particles = options_.particles;
      q.horizon = options_.horizon;
      q.average_from = options_.average_from;
      pmf = estimate_qsd(network_, x0, options_.seed, q);
      p["particles"] = options_.particles;
    } else {
      if (!(options_.burn_in < options_.horizon)) throw InputError("arguments", "--burn-in must be below --horizon");
      pmf = estimate_stationary(network_, x0, options_.seed, options_.burn_in, options_.horizon);
      p["burn_in"] = options_.burn_in;
    }
    p["horizon"] = options_.horizon;
    p["pmf"] = pmf_json(pmf);
    if (!options_.csv.empty()) {
      auto csv = open_csv();
      write_pmf_csv(csv, pmf);
      p["csv"] = options_.csv;
    }
    if (options_.mode == "tail") {
      try {
        const auto fit = fit_tail(pmf);
        json models = json::array();
        for (const auto& m : fit.models)
          models.push_back({{"shape", to_string(m.shape)},
                            {"valid", m.valid},
                            {"a", m.a},
                            {"b", m.b},
                            {"c", m.c},
                            {"rss", m.rss},
                            {"bic", m.bic}});
        p["fit"] = {{"best", to_string(fit.best)}, {"a", fit.a}, {"points", fit.points}, {"models", models}};
      } catch (const std::invalid_argument& e) {
        p["fit"] = nullptr;
        warn(e.what());
        return kExitVerdictLimited;
      }
    }
    return kExitOk;
  }

  int cmd_oracle() {
    const std::int64_t bound = options_.window >= 0 ? options_.window : 10;
    const auto window = Window::cube(network_.dimension(), bound);
    const auto d = decompose_window(network_, window);
    std::map<std::string, std::size_t> counts;
    std::vector<std::vector<std::size_t>> members(d.class_count);
    for (std::size_t v = 0; v < window.size(); ++v) {
      ++counts[to_string(d.label[v])];
      members[d.class_id[v]].push_back(v);
    }
    auto& p = payload();
    p["window"] = {{"upper", window.upper}, {"states", window.size()}};
    p["label_counts"] = counts;
    bool uncertain = counts.count("boundary-uncertain") > 0;
    json classes = json::array();
    for (std::size_t k = 0; k < members.size(); ++k) {
      if (members[k].size() < 2) continue;
      json states = json::array();
      for (std::size_t i = 0; i < members[k].size() && i < 200; ++i) states.push_back(window.state(members[k][i]));
      classes.push_back({{"id", k},
                         {"label", to_string(d.label[members[k][0]])},
                         {"provisional", to_string(d.provisional[members[k][0]])},
                         {"size", members[k].size()},
                         {"states", states}});
    }
    p["classes"] = classes;
    if (!options_.c.empty()) {
      const State c = parse_state(options_.c, network_.dimension(), "--c");
      if (!window.contains(c)) throw InputError("arguments", "--c lies outside the oracle window");
      std::vector<IntVector> omegas;
      for (const auto& r : network_.reactions()) omegas.push_back(r.vector());
      const std::size_t rank = omegas.empty() ? 0 : span_dimension(omegas);
      json by_label = {{"N", json::array()}, {"T", json::array()}, {"E", json::array()}, {"PQ", json::array()},
                       {"boundary-uncertain", json::array()}};
      json states = json::array();
      uncertain = false;
      for (std::size_t v = 0; v < window.size(); ++v) {
        const State x = window.state(v);
        IntVector diff(x.size());
        for (std::size_t j = 0; j < x.size(); ++j) diff[j] = x[j] - c[j];
        bool on_class = std::all_of(diff.begin(), diff.end(), [](std::int64_t z) { return z == 0; });
        if (!on_class && !omegas.empty()) {
          auto with = omegas;
          with.push_back(diff);
          on_class = span_dimension(with) == rank;
        }
        if (!on_class) continue;
        const StateLabel l = d.label[v];
        states.push_back({{"state", x}, {"label", to_string(l)}, {"provisional", to_string(d.provisional[v])},
                          {"class", d.class_id[v]}});
        switch (l) {
          case StateLabel::Neutral: by_label["N"].push_back(x); break;
          case StateLabel::Trapping: by_label["T"].push_back(x); break;
          case StateLabel::Escaping: by_label["E"].push_back(x); break;
          case StateLabel::PIC:
          case StateLabel::QIC: by_label["PQ"].push_back(x); break;
          case StateLabel::BoundaryUncertain:
            by_label["boundary-uncertain"].push_back(x);
            uncertain = true;
            break;
        }
      }
      p["restricted"] = {{"c", c}, {"sets", by_label}, {"states", states}};
    }
    if (uncertain) warn("some labels depend on states outside the window");
    return uncertain ? kExitVerdictLimited : kExitOk;
  }

  std::string name_;
  Options options_;
  json report_;
  NetworkSource source_;
  ReactionNetwork network_;
  bool bound_ = false;
};

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Stochastic reaction network analysis", "srn"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);
  Options o;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("file", o.file, "Network file")->required();
    sub->add_option("--kappa", o.kappa, "Rate parameter binding NAME=VALUE (repeatable)");
  };
  auto* parse_cmd = app.add_subcommand("parse", "Parse a network and print its canonical form");
  add_common(parse_cmd);

  auto* classify_cmd = app.add_subcommand("classify", "Classify states into N, T, E and P u Q");
  add_common(classify_cmd);
  classify_cmd->add_option("--budget", o.budget, "Expansions per reachability query (default $SRN_BUDGET or 1000000)");
  classify_cmd->add_option("--window", o.window, "Cube bound for the extinction sample and state counts");
  classify_cmd->add_option("--radius", o.radius, "Window margin around reachability queries");

  auto* core_cmd = app.add_subcommand("core", "Enumerate minimal core networks");
  add_common(core_cmd);
  core_cmd->add_option("--budget", o.budget, "Expansions per reachability query");
  core_cmd->add_option("--cap", o.cap, "Maximum number of reactions for the subset search");
  core_cmd->add_option("--radius", o.radius, "Window margin around reachability queries");
  core_cmd->add_option("--check", o.check, "Comma-separated reaction indices to test as a core network");

  auto* analyze_cmd = app.add_subcommand("analyze1d", "Threshold analysis of a one-dimensional network");
  add_common(analyze_cmd);
  analyze_cmd->add_option("--c", o.c, "Representative state of the line, comma-separated (default 0)");
  analyze_cmd->add_flag("--endotactic", o.endotactic, "Treat the network as endotactic");

  auto* sim_cmd = app.add_subcommand("simulate", "Stochastic simulation");
  sim_cmd->add_option("mode", o.mode, "traj, stationary, qsd or tail")
      ->required()
      ->check(CLI::IsMember({"traj", "stationary", "qsd", "tail"}));
  add_common(sim_cmd);
  sim_cmd->add_option("--x0", o.x0, "Initial state, comma-separated (default 0)");
  sim_cmd->add_option("--seed", o.seed, "Random seed");
  sim_cmd->add_option("--events", o.events, "Maximum number of events");
  sim_cmd->add_option("--time", o.time, "Maximum simulated time of a trajectory");
  sim_cmd->add_option("--norm", o.norm, "State norm that counts as explosion");
  sim_cmd->add_option("--runs", o.runs, "Number of trajectories (traj)");
  sim_cmd->add_option("--csv", o.csv, "Write trajectory or pmf CSV to this path");
  sim_cmd->add_option("--burn-in", o.burn_in, "Burn-in time (stationary, tail)");
  sim_cmd->add_option("--horizon", o.horizon, "Time horizon (stationary, qsd, tail)");
  sim_cmd->add_option("--particles", o.particles, "Particle count (qsd)");
  sim_cmd->add_option("--average-from", o.average_from, "Time-average the particles from this time (qsd)");

  auto* oracle_cmd = app.add_subcommand("oracle", "Brute-force class decomposition on a window");
  add_common(oracle_cmd);
  oracle_cmd->add_option("--window", o.window, "Cube bound of the window (default 10)");
  oracle_cmd->add_option("--c", o.c, "Restrict the listing to the compatibility class of this state");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, err, err);
    return code == 0 ? kExitOk : kExitInputError;
  }
  std::string name;
  for (auto* sub : app.get_subcommands()) name = sub->get_name();
  Command command(name, args, o);
  return command.run(out);
}

}  // namespace srn
