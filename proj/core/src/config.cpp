#include "vvl/config.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "vvl/errors.hpp"

namespace vvl {

namespace {

enum class KeyType { integer, real, real_list, boolean, text };

struct KeySpec {
  const char* key;
  KeyType type;
  const char* default_value;  // nullptr = required
};

// The published schema. Order here is the canonical echo order.
constexpr KeySpec kSchema[] = {
    {"grid.n", KeyType::integer, nullptr},
    {"time.dt", KeyType::real, nullptr},
    {"time.T", KeyType::real, nullptr},
    {"physics.nu", KeyType::real_list, nullptr},
    {"physics.advection", KeyType::boolean, "on"},
    {"scenario.kind", KeyType::text, nullptr},
    {"scenario.seed", KeyType::integer, "1"},
    {"scenario.amplitude", KeyType::real, "1"},
    {"scenario.slope", KeyType::real, "2"},
    {"scenario.k_max", KeyType::integer, "0"},
    {"scenario.p", KeyType::real, "2"},
    {"scenario.q", KeyType::real, "1.5"},
    {"scenario.alpha", KeyType::real, "1"},
    {"forcing.kind", KeyType::text, nullptr},
    {"forcing.seed", KeyType::integer, "2"},
    {"forcing.amplitude", KeyType::real, "1"},
    {"forcing.slope", KeyType::real, "2"},
    {"forcing.k_max", KeyType::integer, "0"},
    {"output.dir", KeyType::text, nullptr},
    {"output.snapshot_stride", KeyType::integer, "10"},
    {"output.snapshots", KeyType::boolean, "on"},
    {"output.plots", KeyType::boolean, "on"},
    {"split.levels", KeyType::integer, "4"},
    {"split.dt0", KeyType::real, "0"},
    {"split.inner_dt", KeyType::real, "0"},
    {"split.samples_per_step", KeyType::integer, "1"},
    {"diagnose.s_samples", KeyType::integer, "32"},
    {"diagnose.delta", KeyType::real, "1"},
    {"diagnose.lorentz_q", KeyType::real, "2"},
    {"diagnose.llogl_alpha", KeyType::real, "1"},
    {"diagnose.r", KeyType::real, "0.5"},
};

const KeySpec* find_spec(const std::string& key) {
  for (const KeySpec& s : kSchema)
    if (key == s.key) return &s;
  return nullptr;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

struct RawEntry {
  std::string value;
  int line;
};

long parse_int(const std::string& key, const std::string& v, int line) {
  long out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError(key + ": expected integer, got '" + v + "' (line " +
                          std::to_string(line) + ")",
                      line);
  return out;
}

double parse_real(const std::string& key, const std::string& v, int line) {
  double out = 0;
  auto [p, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
  if (ec != std::errc() || p != v.data() + v.size())
    throw ConfigError(key + ": expected number, got '" + v + "' (line " +
                          std::to_string(line) + ")",
                      line);
  return out;
}

std::vector<double> parse_real_list(const std::string& key,
                                    const std::string& v, int line) {
  std::vector<double> out;
  std::string item;
  std::istringstream in(v);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (item.empty())
      throw ConfigError(key + ": empty list entry (line " +
                            std::to_string(line) + ")",
                        line);
    out.push_back(parse_real(key, item, line));
  }
  if (out.empty())
    throw ConfigError(key + ": empty list (line " + std::to_string(line) + ")",
                      line);
  return out;
}

bool parse_bool(const std::string& key, const std::string& v, int line) {
  if (v == "on" || v == "true" || v == "1") return true;
  if (v == "off" || v == "false" || v == "0") return false;
  throw ConfigError(key + ": expected on/off, got '" + v + "' (line " +
                        std::to_string(line) + ")",
                    line);
}

std::string format_real(double v) {
  char buf[32];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, p);
}

}  // namespace

ExperimentConfig parse_config_text(const std::string& text,
                                   const std::vector<std::string>& overrides) {
  std::map<std::string, RawEntry> raw;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError("expected 'section.key = value' (line " +
                            std::to_string(lineno) + "): " + line,
                        lineno);
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (!find_spec(key))
      throw ConfigError("unknown key '" + key + "' (line " +
                            std::to_string(lineno) + ")",
                        lineno);
    raw[key] = {value, lineno};
  }
  for (const std::string& ov : overrides) {
    const auto eq = ov.find('=');
    if (eq == std::string::npos)
      throw ConfigError("override must be key=value: " + ov);
    const std::string key = trim(ov.substr(0, eq));
    if (!find_spec(key)) throw ConfigError("unknown key '" + key + "'");
    raw[key] = {trim(ov.substr(eq + 1)), 0};
  }

  // Fill defaults and require the rest.
  for (const KeySpec& s : kSchema) {
    if (raw.count(s.key)) continue;
    if (s.default_value == nullptr)
      throw ConfigError(std::string("missing required key '") + s.key + "'");
    raw[s.key] = {s.default_value, 0};
  }

  const auto get = [&](const char* key) -> const RawEntry& {
    return raw.at(key);
  };

  ExperimentConfig cfg;
  {
    const RawEntry& e = get("grid.n");
    const long n = parse_int("grid.n", e.value, e.line);
    if (n < 8 || n % 2 != 0)
      throw ConfigError("grid.n: must be even and >= 8, got " + e.value +
                            (e.line ? " (line " + std::to_string(e.line) + ")"
                                    : ""),
                        e.line);
    cfg.n = static_cast<int>(n);
  }
  cfg.dt = parse_real("time.dt", get("time.dt").value, get("time.dt").line);
  cfg.T = parse_real("time.T", get("time.T").value, get("time.T").line);
  if (cfg.dt <= 0 || cfg.T <= 0 || cfg.dt > cfg.T)
    throw ConfigError("time: need 0 < dt <= T");
  cfg.nus = parse_real_list("physics.nu", get("physics.nu").value,
                            get("physics.nu").line);
  for (double nu : cfg.nus)
    if (nu < 0)
      throw ConfigError("physics.nu: viscosities must be >= 0");
  cfg.advection = parse_bool("physics.advection",
                             get("physics.advection").value,
                             get("physics.advection").line);

  const auto fill_ref = [&](const char* prefix) {
    ScenarioRef ref;
    ref.kind = get((std::string(prefix) + ".kind").c_str()).value;
    for (const char* p : {"seed", "amplitude", "slope", "k_max", "p", "q",
                          "alpha"}) {
      const std::string key = std::string(prefix) + "." + p;
      if (const KeySpec* s = find_spec(key)) {
        const RawEntry& e = raw.at(key);
        ref.params[p] = s->type == KeyType::integer
                            ? static_cast<double>(parse_int(key, e.value, e.line))
                            : parse_real(key, e.value, e.line);
      }
    }
    return ref;
  };
  cfg.scenario = fill_ref("scenario");
  cfg.forcing = fill_ref("forcing");

  static const char* kScenarioKinds[] = {"taylor_green", "counterexample",
                                         "lp_family", "lorentz_family",
                                         "llogl_family", "random_smooth",
                                         "zero"};
  if (std::find_if(std::begin(kScenarioKinds), std::end(kScenarioKinds),
                   [&](const char* k) { return cfg.scenario.kind == k; }) ==
      std::end(kScenarioKinds))
    throw ConfigError("scenario.kind: unknown kind '" + cfg.scenario.kind +
                      "'");
  static const char* kForcingKinds[] = {"zero", "taylor_green",
                                        "random_smooth", "counterexample"};
  if (std::find_if(std::begin(kForcingKinds), std::end(kForcingKinds),
                   [&](const char* k) { return cfg.forcing.kind == k; }) ==
      std::end(kForcingKinds))
    throw ConfigError("forcing.kind: unknown kind '" + cfg.forcing.kind + "'");

  cfg.output_dir = get("output.dir").value;
  if (cfg.output_dir.empty()) throw ConfigError("output.dir: must not be empty");
  cfg.snapshot_stride = static_cast<int>(
      parse_int("output.snapshot_stride", get("output.snapshot_stride").value,
                get("output.snapshot_stride").line));
  if (cfg.snapshot_stride < 1)
    throw ConfigError("output.snapshot_stride: must be >= 1");
  cfg.write_snapshots = parse_bool("output.snapshots",
                                   get("output.snapshots").value,
                                   get("output.snapshots").line);
  cfg.write_plots = parse_bool("output.plots", get("output.plots").value,
                               get("output.plots").line);

  cfg.split_levels = static_cast<int>(parse_int(
      "split.levels", get("split.levels").value, get("split.levels").line));
  cfg.split_dt0 = parse_real("split.dt0", get("split.dt0").value,
                             get("split.dt0").line);
  cfg.split_inner_dt = parse_real("split.inner_dt", get("split.inner_dt").value,
                                  get("split.inner_dt").line);
  cfg.split_samples_per_step = static_cast<int>(
      parse_int("split.samples_per_step", get("split.samples_per_step").value,
                get("split.samples_per_step").line));

  cfg.diag_s_samples = static_cast<int>(
      parse_int("diagnose.s_samples", get("diagnose.s_samples").value,
                get("diagnose.s_samples").line));
  cfg.diag_delta = parse_real("diagnose.delta", get("diagnose.delta").value,
                              get("diagnose.delta").line);
  cfg.diag_lorentz_q = parse_real("diagnose.lorentz_q",
                                  get("diagnose.lorentz_q").value,
                                  get("diagnose.lorentz_q").line);
  cfg.diag_llogl_alpha = parse_real("diagnose.llogl_alpha",
                                    get("diagnose.llogl_alpha").value,
                                    get("diagnose.llogl_alpha").line);
  cfg.diag_r = parse_real("diagnose.r", get("diagnose.r").value,
                          get("diagnose.r").line);
  return cfg;
}

ExperimentConfig parse_config(const std::string& path,
                              const std::vector<std::string>& overrides) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), overrides);
}

std::string ExperimentConfig::echo() const {
  std::string nu_list;
  for (size_t i = 0; i < nus.size(); ++i) {
    nu_list += format_real(nus[i]);
    if (i + 1 < nus.size()) nu_list += ",";
  }
  const auto refp = [](const ScenarioRef& r, const char* p) {
    return format_real(r.param(p, 0.0));
  };
  std::string out;
  out += "grid.n = " + std::to_string(n) + "\n";
  out += "time.dt = " + format_real(dt) + "\n";
  out += "time.T = " + format_real(T) + "\n";
  out += "physics.nu = " + nu_list + "\n";
  out += std::string("physics.advection = ") + (advection ? "on" : "off") + "\n";
  out += "scenario.kind = " + scenario.kind + "\n";
  out += "scenario.seed = " +
         std::to_string(static_cast<long>(scenario.param("seed", 1))) + "\n";
  out += "scenario.amplitude = " + refp(scenario, "amplitude") + "\n";
  out += "scenario.slope = " + refp(scenario, "slope") + "\n";
  out += "scenario.k_max = " +
         std::to_string(static_cast<long>(scenario.param("k_max", 0))) + "\n";
  out += "scenario.p = " + refp(scenario, "p") + "\n";
  out += "scenario.q = " + refp(scenario, "q") + "\n";
  out += "scenario.alpha = " + refp(scenario, "alpha") + "\n";
  out += "forcing.kind = " + forcing.kind + "\n";
  out += "forcing.seed = " +
         std::to_string(static_cast<long>(forcing.param("seed", 2))) + "\n";
  out += "forcing.amplitude = " + refp(forcing, "amplitude") + "\n";
  out += "forcing.slope = " + refp(forcing, "slope") + "\n";
  out += "forcing.k_max = " +
         std::to_string(static_cast<long>(forcing.param("k_max", 0))) + "\n";
  out += "output.dir = " + output_dir + "\n";
  out += "output.snapshot_stride = " + std::to_string(snapshot_stride) + "\n";
  out += std::string("output.snapshots = ") + (write_snapshots ? "on" : "off") +
         "\n";
  out += std::string("output.plots = ") + (write_plots ? "on" : "off") + "\n";
  out += "split.levels = " + std::to_string(split_levels) + "\n";
  out += "split.dt0 = " + format_real(split_dt0) + "\n";
  out += "split.inner_dt = " + format_real(split_inner_dt) + "\n";
  out += "split.samples_per_step = " + std::to_string(split_samples_per_step) +
         "\n";
  out += "diagnose.s_samples = " + std::to_string(diag_s_samples) + "\n";
  out += "diagnose.delta = " + format_real(diag_delta) + "\n";
  out += "diagnose.lorentz_q = " + format_real(diag_lorentz_q) + "\n";
  out += "diagnose.llogl_alpha = " + format_real(diag_llogl_alpha) + "\n";
  out += "diagnose.r = " + format_real(diag_r) + "\n";
  return out;
}

}  // namespace vvl
