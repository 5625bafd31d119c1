#pragma once
#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "speclab/grid.hpp"
#include "speclab/interval_set.hpp"
#include "speclab/potential.hpp"
#include "speclab/rng.hpp"
#include "speclab/thickness.hpp"

namespace speclab {

using nlohmann::json;

// Configuration problems exit with code 1; failed mathematical invariants
// exit with code 2. Both always name the module and the offending value.
struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

namespace cfg {

inline void require_object(const json& j, const std::string& where) {
  if (!j.is_object()) throw ConfigError("config: section '" + where + "' must be an object");
}

inline void allow_keys(const json& j, const std::string& where,
                       std::initializer_list<const char*> allowed) {
  require_object(j, where);
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok)
      throw ConfigError("config: unknown key '" + it.key() + "' in section '" + where + "'");
  }
}

inline const json& need(const json& j, const std::string& where, const char* key) {
  const auto it = j.find(key);
  if (it == j.end())
    throw ConfigError("config: section '" + where + "' is missing required key '" + key + "'");
  return *it;
}

inline double num(const json& j, const std::string& where, const char* key) {
  const json& v = need(j, where, key);
  if (!v.is_number())
    throw ConfigError("config: key '" + std::string(key) + "' in '" + where +
                      "' must be a number, got " + v.dump());
  return v.get<double>();
}

inline double num_or(const json& j, const std::string& where, const char* key, double def) {
  return j.contains(key) ? num(j, where, key) : def;
}

inline long long integer(const json& j, const std::string& where, const char* key) {
  const json& v = need(j, where, key);
  if (!v.is_number_integer())
    throw ConfigError("config: key '" + std::string(key) + "' in '" + where +
                      "' must be an integer, got " + v.dump());
  return v.get<long long>();
}

inline long long integer_or(const json& j, const std::string& where, const char* key,
                            long long def) {
  return j.contains(key) ? integer(j, where, key) : def;
}

inline bool flag_or(const json& j, const std::string& where, const char* key, bool def) {
  if (!j.contains(key)) return def;
  const json& v = j.at(key);
  if (!v.is_boolean())
    throw ConfigError("config: key '" + std::string(key) + "' in '" + where +
                      "' must be a boolean, got " + v.dump());
  return v.get<bool>();
}

inline std::string str(const json& j, const std::string& where, const char* key) {
  const json& v = need(j, where, key);
  if (!v.is_string())
    throw ConfigError("config: key '" + std::string(key) + "' in '" + where +
                      "' must be a string, got " + v.dump());
  return v.get<std::string>();
}

inline std::string str_or(const json& j, const std::string& where, const char* key,
                          const std::string& def) {
  return j.contains(key) ? str(j, where, key) : def;
}

inline std::vector<double> num_list(const json& j, const std::string& where, const char* key) {
  const json& v = need(j, where, key);
  if (!v.is_array() || v.empty())
    throw ConfigError("config: key '" + std::string(key) + "' in '" + where +
                      "' must be a non-empty array of numbers");
  std::vector<double> out;
  for (const auto& e : v) {
    if (!e.is_number())
      throw ConfigError("config: key '" + std::string(key) + "' in '" + where +
                        "' must hold numbers only, got " + e.dump());
    out.push_back(e.get<double>());
  }
  return out;
}

inline std::vector<double> num_list_or(const json& j, const std::string& where, const char* key,
                                       std::vector<double> def) {
  return j.contains(key) ? num_list(j, where, key) : std::move(def);
}

}  // namespace cfg

// ---------------------------------------------------------------------------
// Loading, canonical hashing
// ---------------------------------------------------------------------------
inline json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("config: cannot open '" + path + "'");
  json j;
  try {
    j = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config: '" + path + "' is not valid JSON: " + e.what());
  }
  if (!j.is_object()) throw ConfigError("config: top level of '" + path + "' must be an object");
  return j;
}

inline std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

// Canonical content hash: nlohmann objects iterate in sorted key order, so
// dump() is insensitive to key order in the file; the seed is appended so a
// --seed override changes the identity.
inline std::string config_hash(const json& j, std::uint64_t seed) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx",
                static_cast<unsigned long long>(fnv1a64(j.dump() + "#" + std::to_string(seed))));
  return std::string(buf);
}

// ---------------------------------------------------------------------------
// Section builders
// ---------------------------------------------------------------------------
inline Potential potential_from_config(const json& top) {
  if (!top.contains("potential"))
    throw ConfigError("config: a 'potential' section is required for this command");
  const json& j = top.at("potential");
  cfg::require_object(j, "potential");
  const std::string kind = cfg::str(j, "potential", "kind");
  if (kind == "harmonic") {
    cfg::allow_keys(j, "potential", {"kind"});
    return make_harmonic();
  }
  if (kind == "power") {
    cfg::allow_keys(j, "potential", {"kind", "c", "beta"});
    return make_power(cfg::num(j, "potential", "c"), cfg::num(j, "potential", "beta"));
  }
  if (kind == "power_pair") {
    cfg::allow_keys(j, "potential", {"kind", "c1", "beta1", "c2", "beta2"});
    return make_power_pair(cfg::num(j, "potential", "c1"), cfg::num(j, "potential", "beta1"),
                           cfg::num(j, "potential", "c2"), cfg::num(j, "potential", "beta2"));
  }
  if (kind == "stretched_exp") {
    cfg::allow_keys(j, "potential", {"kind", "c1", "a1", "c2", "a2", "gamma"});
    return make_stretched_exp(cfg::num(j, "potential", "c1"), cfg::num(j, "potential", "a1"),
                              cfg::num(j, "potential", "c2"), cfg::num(j, "potential", "a2"),
                              cfg::num(j, "potential", "gamma"));
  }
  if (kind == "exp_log") {
    cfg::allow_keys(j, "potential", {"kind", "d1", "d2", "delta"});
    return make_exp_log(cfg::num(j, "potential", "d1"), cfg::num(j, "potential", "d2"),
                        cfg::num(j, "potential", "delta"));
  }
  if (kind == "log_power") {
    cfg::allow_keys(j, "potential", {"kind", "c1", "tau1", "c2", "tau2"});
    return make_log_power(cfg::num(j, "potential", "c1"), cfg::num(j, "potential", "tau1"),
                          cfg::num(j, "potential", "c2"), cfg::num(j, "potential", "tau2"));
  }
  if (kind == "table") {
    cfg::allow_keys(j, "potential", {"kind", "x", "v"});
    const std::vector<double> xs = cfg::num_list(j, "potential", "x");
    const std::vector<double> vs = cfg::num_list(j, "potential", "v");
    if (xs.size() != vs.size() || xs.size() < 2)
      throw ConfigError("config: table potential needs matching 'x' and 'v' arrays (>= 2 points)");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1]))
        throw ConfigError("config: table potential 'x' must be strictly increasing at index " +
                          std::to_string(i) + " (value " + std::to_string(xs[i]) + ")");
    for (double v : vs)
      if (!(v >= 0.0))
        throw ConfigError("config: table potential values must be nonnegative, got " +
                          std::to_string(v));
    Potential p;
    p.name = "table";
    p.V = [xs, vs](double x) {
      if (x <= xs.front()) return vs.front();
      if (x >= xs.back()) return vs.back();
      const auto it = std::upper_bound(xs.begin(), xs.end(), x);
      const std::size_t i = static_cast<std::size_t>(it - xs.begin());
      const double f = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
      return (1.0 - f) * vs[i - 1] + f * vs[i];
    };
    // Radial monotone step envelopes from the samples: the lower envelope at
    // radius t is the infimum of V beyond t, the upper one the supremum
    // within t. Steps bound the piecewise-linear interpolant pointwise.
    std::vector<std::pair<double, double>> rad;
    for (std::size_t i = 0; i < xs.size(); ++i) rad.emplace_back(std::fabs(xs[i]), vs[i]);
    std::sort(rad.begin(), rad.end());
    std::vector<double> rt, lo(rad.size()), hi(rad.size());
    for (const auto& [r, v] : rad) rt.push_back(r);
    {
      double run = 0.0;
      for (std::size_t i = 0; i < rad.size(); ++i) hi[i] = run = std::max(run, rad[i].second);
      run = rad.back().second;
      for (std::size_t i = rad.size(); i-- > 0;) lo[i] = run = std::min(run, rad[i].second);
    }
    p.phi = [rt, lo](double t) {
      const auto it = std::upper_bound(rt.begin(), rt.end(), t);
      if (it == rt.begin()) return lo.front();
      return lo[static_cast<std::size_t>(it - rt.begin()) - 1];
    };
    p.psi = [rt, hi](double t) {
      const auto it = std::lower_bound(rt.begin(), rt.end(), t);
      if (it == rt.end()) return hi.back();
      return hi[static_cast<std::size_t>(it - rt.begin())];
    };
    return p;
  }
  throw ConfigError("config: unknown potential kind '" + kind + "'");
}

inline Grid1D grid_from_config(const json& top, const Potential& pot) {
  if (!top.contains("grid"))
    throw ConfigError("config: a 'grid' section is required for this command");
  const json& j = top.at("grid");
  cfg::allow_keys(j, "grid", {"L", "n", "h", "auto_for_lambda", "extra"});
  const bool explicit_box = j.contains("L") && j.contains("n");
  const bool auto_box = j.contains("h") && j.contains("auto_for_lambda");
  if (explicit_box == auto_box)
    throw ConfigError("config: grid needs exactly one of {L, n} or {h, auto_for_lambda}");
  if (explicit_box) {
    const double L = cfg::num(j, "grid", "L");
    const long long n = cfg::integer(j, "grid", "n");
    if (n < 3 || n > 40000000)
      throw ConfigError("config: grid n = " + std::to_string(n) + " out of range [3, 4e7]");
    return make_grid(L, static_cast<int>(n));
  }
  const double h = cfg::num(j, "grid", "h");
  const double lam = cfg::num(j, "grid", "auto_for_lambda");
  const double extra = cfg::num_or(j, "grid", "extra", 0.0);
  if (!(h > 0.0) || !(h < 1.0))
    throw ConfigError("config: grid step h = " + std::to_string(h) + " must lie in (0, 1)");
  if (!(lam > 0.0))
    throw ConfigError("config: grid auto_for_lambda = " + std::to_string(lam) +
                      " must be positive");
  if (!(extra >= 0.0))
    throw ConfigError("config: grid extra = " + std::to_string(extra) + " must be nonnegative");
  const double L = choose_truncation(pot, lam) + extra;
  return make_grid_by_step(L, h);
}

inline double window_from_config(const json& top, const Grid1D* g) {
  if (top.contains("window")) {
    const json& v = top.at("window");
    if (!v.is_number())
      throw ConfigError("config: 'window' must be a number, got " + v.dump());
    const double W = v.get<double>();
    if (!(W > 0.0))
      throw ConfigError("config: window half-width " + std::to_string(W) + " must be positive");
    return W;
  }
  if (g != nullptr) return g->L;
  throw ConfigError("config: a 'window' value (or a grid to borrow it from) is required");
}

inline IntervalSet sensor_from_config(const json& top, double W, std::uint64_t fallback_seed) {
  if (!top.contains("sensor"))
    throw ConfigError("config: a 'sensor' section is required for this command");
  const json& j = top.at("sensor");
  cfg::require_object(j, "sensor");
  const std::string kind = cfg::str(j, "sensor", "kind");
  if (kind == "periodic") {
    cfg::allow_keys(j, "sensor", {"kind", "period", "delta"});
    return periodic_set(cfg::num(j, "sensor", "period"), cfg::num(j, "sensor", "delta"), W);
  }
  if (kind == "balls") {
    cfg::allow_keys(j, "sensor", {"kind", "tau"});
    return graded_ball_set(cfg::num(j, "sensor", "tau"), W);
  }
  if (kind == "random_thick") {
    cfg::allow_keys(j, "sensor", {"kind", "period", "delta", "seed"});
    const std::uint64_t seed = static_cast<std::uint64_t>(
        cfg::integer_or(j, "sensor", "seed", static_cast<long long>(fallback_seed)));
    Rng rng(seed);
    return random_thick_periodic(cfg::num(j, "sensor", "period"), cfg::num(j, "sensor", "delta"),
                                 W, rng);
  }
  if (kind == "explicit") {
    cfg::allow_keys(j, "sensor", {"kind", "intervals"});
    const json& arr = cfg::need(j, "sensor", "intervals");
    if (!arr.is_array() || arr.empty())
      throw ConfigError("config: sensor intervals must be a non-empty array of [a, b] pairs");
    std::vector<std::pair<double, double>> iv;
    for (const auto& e : arr) {
      if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw ConfigError("config: sensor interval " + e.dump() + " must be a [a, b] pair");
      iv.emplace_back(e[0].get<double>(), e[1].get<double>());
    }
    return IntervalSet(iv);
  }
  throw ConfigError("config: unknown sensor kind '" + kind + "'");
}

// Whole-file sweep: every section present anywhere in the file must pass its
// whitelist, so typos are rejected no matter which command runs.
inline void validate_config_shape(const json& top) {
  cfg::allow_keys(top, "top level",
                  {"potential", "grid", "sensor", "window", "seed", "jobs", "eig", "thick", "obs",
                   "sweep", "lift", "cauchy", "agmon"});
  if (top.contains("seed") && !top.at("seed").is_number_integer())
    throw ConfigError("config: 'seed' must be an integer, got " + top.at("seed").dump());
  if (top.contains("jobs")) {
    if (!top.at("jobs").is_number_integer() || top.at("jobs").get<long long>() < 1)
      throw ConfigError("config: 'jobs' must be an integer >= 1, got " + top.at("jobs").dump());
  }
  if (top.contains("eig")) cfg::allow_keys(top.at("eig"), "eig", {"lambda", "residual_tol"});
  if (top.contains("thick"))
    cfg::allow_keys(top.at("thick"), "thick",
                    {"mode", "s", "tau", "gamma", "D", "a", "gamma1", "n0", "step", "equivalence",
                     "multiplicity"});
  if (top.contains("obs")) cfg::allow_keys(top.at("obs"), "obs", {"lambda", "lambdas"});
  if (top.contains("sweep"))
    cfg::allow_keys(top.at("sweep"), "sweep", {"lambdas", "deltas", "delta_lambda", "s", "tau"});
  if (top.contains("lift"))
    cfg::allow_keys(top.at("lift"), "lift",
                    {"lambda", "coefficients", "Y", "ny", "dump_field", "rate_check"});
  if (top.contains("cauchy"))
    cfg::allow_keys(top.at("cauchy"), "cauchy",
                    {"lambdas", "measure", "c1", "chat", "shrink_lambda", "shrink_measures",
                     "three_ball", "probe", "multiplier", "stream"});
  if (top.contains("cauchy") && top.at("cauchy").contains("three_ball"))
    cfg::allow_keys(top.at("cauchy").at("three_ball"), "cauchy.three_ball",
                    {"num_polys", "max_degree", "measures"});
  if (top.contains("cauchy") && top.at("cauchy").contains("probe"))
    cfg::allow_keys(top.at("cauchy").at("probe"), "cauchy.probe", {"degree", "eps"});
  if (top.contains("cauchy") && top.at("cauchy").contains("multiplier"))
    cfg::allow_keys(top.at("cauchy").at("multiplier"), "cauchy.multiplier",
                    {"count", "mk_max"});
  if (top.contains("agmon"))
    cfg::allow_keys(top.at("agmon"), "agmon", {"lambdas", "r_list", "c0", "num_random"});
}

}  // namespace speclab
