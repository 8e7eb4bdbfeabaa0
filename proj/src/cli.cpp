#include "wormhole/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

#include "wormhole/errors.hpp"
#include "wormhole/metrology.hpp"

namespace wormhole::cli {
namespace {

using json = nlohmann::json;

std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string fmt_short(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

std::string join(const std::vector<double>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += ',';
    s += fmt17(v[i]);
  }
  return s;
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

bool parse_bool(std::string_view s) {
  if (s == "true" || s == "1" || s == "yes") return true;
  if (s == "false" || s == "0" || s == "no") return false;
  throw std::invalid_argument("expected a boolean, got '" + std::string(s) + "'");
}

template <typename Int>
Int parse_int(std::string_view s, const char* what) {
  const auto t = trim(s);
  Int v{};
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (ec != std::errc{} || ptr != t.data() + t.size() || t.empty()) {
    throw std::invalid_argument(std::string(what) + ": expected an integer, got '" + std::string(s) + "'");
  }
  return v;
}

// Mutually exclusive ways of fixing the same quantity. A layer that sets one
// clears the other inherited from lower layers.
const std::pair<const char*, const char*> kAlternatives[] = {{"r1", "r1_over_L"}, {"b0", "r1_over_b0"}};

void overlay(Settings& acc, const Settings& layer) {
  for (const auto& [a, b] : kAlternatives) {
    const bool has_a = layer.count(a) != 0;
    const bool has_b = layer.count(b) != 0;
    if (has_a && has_b) {
      throw std::invalid_argument(std::string("conflicting settings: '") + a + "' and '" + b +
                                  "' given together");
    }
    if (has_a) acc.erase(b);
    if (has_b) acc.erase(a);
  }
  for (const auto& [k, v] : layer) acc[k] = v;
}

void check_keys(const Settings& s, const std::string& origin) {
  const auto& keys = known_keys();
  for (const auto& [k, v] : s) {
    if (std::find(keys.begin(), keys.end(), k) == keys.end()) {
      throw std::invalid_argument("unknown key '" + k + "' in " + origin);
    }
  }
}

// Geometry defaults when no preset is named: the long-baseline (figure2) bundle.
Settings default_settings() { return preset_settings("figure2"); }

std::vector<double> log_grid(double lo, double hi, int count) {
  if (count < 1) throw std::invalid_argument("grid needs at least one point");
  if (!(lo > 0.0 && hi > 0.0)) throw std::invalid_argument("log grid bounds must be > 0");
  std::vector<double> out;
  const double a = std::log10(lo);
  const double b = std::log10(hi);
  for (int k = 0; k < count; ++k) {
    const double e = count == 1 ? a : a + (b - a) * k / (count - 1);
    out.push_back(std::pow(10.0, e));
  }
  return out;
}

Table table_for_curves(const std::vector<CurveData>& curves,
                       const std::vector<std::string>& suffixes) {
  Table t;
  t.columns.push_back(curves.front().axis_name);
  for (const auto& s : suffixes) {
    t.columns.push_back("qfi_sensitivity" + s);
    t.columns.push_back("fi_sensitivity" + s);
  }
  const auto& axis = curves.front().axis_values;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    std::vector<std::optional<double>> row{axis[i]};
    for (const auto& c : curves) {
      row.push_back(c.qfi_values[i]);
      row.push_back(c.fi_values[i]);
    }
    t.rows.push_back(std::move(row));
  }
  for (const auto& c : curves) {
    t.warnings.insert(t.warnings.end(), c.failures.begin(), c.failures.end());
  }
  return t;
}

Table run_figure(const RunConfig& cfg) {
  const auto grid = log_grid(cfg.n_min, cfg.n_max, cfg.n_points);
  std::vector<CurveData> curves{sweep(cfg.input, SweepAxis::NPhotons, grid)};
  std::vector<std::string> suffixes{""};
  if (cfg.L_alt) {
    const auto alt = with_axis_value(cfg.input, SweepAxis::L, *cfg.L_alt);
    curves.push_back(sweep(alt, SweepAxis::NPhotons, grid));
    suffixes.push_back("_alt");
  }
  return table_for_curves(curves, suffixes);
}

Table run_figure4(const RunConfig& cfg) {
  Table t;
  const auto grid = log_grid(cfg.n_min, cfg.n_max, cfg.n_points);
  const auto occupations = cfg.nT_grid.empty() ? std::vector<double>{cfg.input.n_T} : cfg.nT_grid;

  struct Variant {
    std::string name;
    SensitivityInput input;
  };
  std::vector<Variant> variants;
  SensitivityInput ideal = cfg.input;
  ideal.eta = 1.0;
  ideal.n_T = 0.0;
  variants.push_back({"ideal", ideal});
  for (auto model : {NoiseModel::AsPrinted, NoiseModel::FisherDerived}) {
    for (double nt : occupations) {
      SensitivityInput v = cfg.input;
      v.noise_model = model;
      v.n_T = nt;
      std::string name = model == NoiseModel::AsPrinted ? "as_printed" : "fisher_derived";
      variants.push_back({name + "_nT" + fmt_short(nt), v});
    }
  }

  t.columns.push_back("n_photons");
  for (const auto& v : variants) t.columns.push_back(v.name);
  for (double n : grid) {
    std::vector<std::optional<double>> row{n};
    for (const auto& v : variants) {
      try {
        row.push_back(relative_sensitivity(with_axis_value(v.input, SweepAxis::NPhotons, n)));
      } catch (const std::exception& e) {
        row.push_back(std::nullopt);
        t.warnings.push_back(v.name + " at n_photons=" + fmt_short(n) + ": " + e.what());
      }
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

Table run_sweep(const RunConfig& cfg) {
  return table_for_curves({sweep(cfg.input, cfg.axis, cfg.values)}, {""});
}

Table run_mc(const RunConfig& cfg) {
  const auto rep = mc_estimation_experiment(cfg.probe, cfg.theta, cfg.samples, cfg.trials, cfg.seed,
                                            cfg.threads);
  Table t;
  t.columns = {"theta_true", "trials", "samples_per_trial", "estimator_mean", "estimator_variance",
               "crb", "ratio", "clamp_count"};
  t.rows.push_back({rep.theta_true, static_cast<double>(rep.trials),
                    static_cast<double>(rep.samples_per_trial), rep.estimator_mean,
                    rep.estimator_variance, rep.crb, rep.ratio, static_cast<double>(rep.clamp_count)});
  if (rep.clamp_count > 0) {
    t.warnings.push_back(std::to_string(rep.clamp_count) + " trials clamped the arcsin argument");
  }
  return t;
}

Table run_threshold(const RunConfig& cfg) {
  const auto res = max_distance_ratio(cfg.input, cfg.tolerance);
  Table t;
  t.columns = {"tolerance", "r1", "r1_over_b0_max", "b0_min", "sensitivity"};
  t.rows.push_back({cfg.tolerance, cfg.input.scenario.r1, res.ratio, res.b0_min, res.sensitivity});
  return t;
}

Table run_mimicker(const RunConfig& cfg) {
  const auto& sc = cfg.input.scenario;
  const double r1 = mimicker_distance(sc.b0, cfg.delta_theta, sc.L, sc.lambda);
  Table t;
  t.columns = {"b0", "delta_theta", "L", "lambda", "r1_m", "r1_pc", "throat_scale"};
  t.rows.push_back({sc.b0, cfg.delta_theta, sc.L, sc.lambda, r1, r1 / kMetersPerParsec,
                    detectable_throat_scale(cfg.delta_theta, sc.L, sc.lambda)});
  return t;
}

Table run_validate(const RunConfig& cfg) {
  const auto& sc = cfg.input.scenario;
  const auto rep = regime_check(sc, cfg.input.phase.thresholds);
  if (!rep.ok) throw RegimeError(rep);
  const auto flat = flat_phase(sc.L, sc.lambda);
  const auto pert = metric_perturbation(sc.r1, sc.b0);
  Table t;
  t.columns = {"b0_over_r1", "L_over_r1", "lambda_over_L", "g_rr", "m", "on_operating_point", "ok"};
  t.rows.push_back({rep.b0_over_r1, rep.L_over_r1, rep.lambda_over_L, pert.g_rr, flat.m,
                    flat.on_operating_point ? 1.0 : 0.0, 1.0});
  if (!flat.on_operating_point) t.warnings.push_back("L/lambda is not an integer: theta_f is not a multiple of 2 pi");
  if (pert.strained) t.warnings.push_back("b0^2/r1^2 >= 1e-2: quasiflat assumption strained");
  return t;
}

}  // namespace

std::string_view to_string(Command c) {
  switch (c) {
    case Command::Figure2: return "figure2";
    case Command::Figure3: return "figure3";
    case Command::Figure4: return "figure4";
    case Command::Sweep: return "sweep";
    case Command::Mc: return "mc";
    case Command::Threshold: return "threshold";
    case Command::Mimicker: return "mimicker";
    case Command::Validate: return "validate";
  }
  return "?";
}

Command parse_command(std::string_view s) {
  for (auto c : {Command::Figure2, Command::Figure3, Command::Figure4, Command::Sweep, Command::Mc,
                 Command::Threshold, Command::Mimicker, Command::Validate}) {
    if (s == to_string(c)) return c;
  }
  throw std::invalid_argument("unknown command '" + std::string(s) +
                              "' (expected figure2 | figure3 | figure4 | sweep | mc | threshold | "
                              "mimicker | validate)");
}

const std::vector<std::string>& known_keys() {
  static const std::vector<std::string> keys = {
      "command", "preset",     "lambda",    "L",          "r1",          "b0",      "r1_over_b0",
      "r1_over_L", "n_photons", "eta",      "n_T",        "noise_model", "information", "budget",
      "n_min",   "n_max",      "n_points",  "L_alt",      "nT_grid",     "axis",    "values",
      "alpha",   "r",          "theta",     "samples",    "trials",      "tolerance", "delta_theta",
      "out",     "seed",       "format",    "threads",    "override_regime"};
  return keys;
}

std::vector<std::string> preset_names() {
  return {"figure2", "figure3", "figure4", "ligo", "lisa", "mimicker-ligo", "mimicker-lisa"};
}

Settings preset_settings(std::string_view name) {
  // Wavelength 10^3 nm throughout; photon budget 10^22 per second.
  const Settings common = {{"lambda", "1e-6"}, {"n_photons", "1e22"}, {"eta", "1"}, {"n_T", "0"},
                           {"noise_model", "as-printed"}, {"information", "qfi"}};
  Settings s = common;
  if (name == "figure2") {
    // Long-baseline bundle: r1/b0 = 1e11, r1/L = 1e2, L in the millions of km.
    s.insert({{"command", "figure2"}, {"L", "1e9"}, {"r1_over_b0", "1e11"}, {"r1_over_L", "1e2"}});
  } else if (name == "figure3") {
    // Kilometre-arm bundle: r1/b0 = 1e5, r1/L = 1e8, L = 1 km.
    s.insert({{"command", "figure3"}, {"L", "1e3"}, {"r1_over_b0", "1e5"}, {"r1_over_L", "1e8"}});
  } else if (name == "figure4") {
    // Losses and mixedness: r1/b0 = 1e7, r1/L = 1e5, L = 1e6 m, eta = 0.62.
    s.insert({{"command", "figure4"}, {"L", "1e6"}, {"r1_over_b0", "1e7"}, {"r1_over_L", "1e5"},
              {"nT_grid", "0,1,10"}});
    s["information"] = "homodyne-fi";
    s["eta"] = "0.62";
  } else if (name == "ligo") {
    // km arms with the figure3 geometry; largest r1/b0 at tolerance 0.1 Hz^-1/2.
    s.insert({{"command", "threshold"}, {"L", "1e3"}, {"r1_over_b0", "1e5"}, {"r1_over_L", "1e8"},
              {"tolerance", "0.1"}});
  } else if (name == "lisa") {
    // million-km arms with the figure2 geometry and r1 = 1e2 L.
    s.insert({{"command", "threshold"}, {"L", "1e9"}, {"r1_over_b0", "1e11"}, {"r1_over_L", "1e2"},
              {"tolerance", "0.1"}});
  } else if (name == "mimicker-ligo" || name == "mimicker-lisa") {
    // Black-hole mimicker: b0 ~ 200 km, smallest resolvable phase 1e-10 rad.
    const bool ligo = name == "mimicker-ligo";
    s.insert({{"command", "mimicker"}, {"b0", "2e5"}, {"delta_theta", "1e-10"},
              {"L", ligo ? "1e3" : "1e9"}, {"r1", ligo ? "1e11" : "1e15"}});
  } else {
    std::string names;
    for (const auto& n : preset_names()) names += (names.empty() ? "" : ", ") + n;
    throw std::invalid_argument("unknown preset '" + std::string(name) + "'; available: " + names);
  }
  return s;
}

RunConfig preset(std::string_view name) { return resolve(preset_settings(name), {}); }

double parse_real(std::string_view text) {
  const auto t = trim(text);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
  if (t.empty() || ec != std::errc{} || ptr != t.data() + t.size()) {
    throw std::invalid_argument("expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

double parse_length(std::string_view text) {
  const auto t = trim(text);
  static const std::pair<const char*, double> kUnits[] = {
      {"upc", 1e-6 * kMetersPerParsec}, {"pc", kMetersPerParsec}, {"nm", 1e-9}, {"um", 1e-6},
      {"mm", 1e-3},                     {"cm", 1e-2},             {"km", 1e3},  {"m", 1.0}};
  for (const auto& [suffix, scale] : kUnits) {
    const std::string_view sv(suffix);
    if (t.size() > sv.size() && t.compare(t.size() - sv.size(), sv.size(), sv) == 0) {
      const auto number = std::string_view(t).substr(0, t.size() - sv.size());
      // "1e3m" must not be read as "1e3" + "m" only when the prefix is numeric.
      const char last = number.back();
      if (std::isdigit(static_cast<unsigned char>(last)) || last == '.' || last == ' ') {
        return parse_real(number) * scale;
      }
    }
  }
  return parse_real(t);
}

std::vector<double> parse_real_list(std::string_view text) {
  const auto t = trim(text);
  std::vector<double> out;
  if (t.empty()) return out;
  if (t.rfind("log:", 0) == 0) {
    std::vector<std::string> parts;
    std::stringstream ss(t.substr(4));
    for (std::string p; std::getline(ss, p, ':');) parts.push_back(p);
    if (parts.size() != 3) throw std::invalid_argument("log grid syntax is log:START:STOP:COUNT");
    return log_grid(parse_real(parts[0]), parse_real(parts[1]), parse_int<int>(parts[2], "log grid count"));
  }
  std::stringstream ss(t);
  for (std::string p; std::getline(ss, p, ',');) out.push_back(parse_real(p));
  return out;
}

Settings read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open config file '" + path + "'");
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();
  Settings s;

  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && text[first] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::exception& e) {
      throw std::invalid_argument("config file '" + path + "' is not valid JSON: " + e.what());
    }
    // A previous run's output nests its settings under meta.settings.
    const json* obj = &j;
    if (j.contains("meta") && j["meta"].contains("settings")) obj = &j["meta"]["settings"];
    for (const auto& [k, v] : obj->items()) {
      s[k] = v.is_string() ? v.get<std::string>() : v.dump();
    }
  } else {
    std::istringstream lines(text);
    int lineno = 0;
    for (std::string line; std::getline(lines, line);) {
      ++lineno;
      const auto hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      if (trim(line).empty()) continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument(path + ":" + std::to_string(lineno) + ": expected 'key = value'");
      }
      s[trim(std::string_view(line).substr(0, eq))] = trim(std::string_view(line).substr(eq + 1));
    }
  }
  check_keys(s, "config file '" + path + "'");
  return s;
}

RunConfig resolve(const Settings& file, const Settings& flags) {
  check_keys(file, "config file");
  check_keys(flags, "command line");

  Settings user;
  overlay(user, file);
  overlay(user, flags);

  if (!user.count("command")) throw std::invalid_argument("no command given");
  const Command command = parse_command(user.at("command"));
  std::string preset_name;
  if (user.count("preset")) {
    preset_name = user.at("preset");
  } else if (command == Command::Figure2 || command == Command::Figure3 || command == Command::Figure4) {
    preset_name = std::string(to_string(command));
  }

  Settings s = preset_name.empty() ? default_settings() : preset_settings(preset_name);
  overlay(s, file);
  overlay(s, flags);

  auto get = [&](const char* key) -> std::optional<std::string> {
    const auto it = s.find(key);
    if (it == s.end()) return std::nullopt;
    return it->second;
  };

  RunConfig cfg;
  cfg.command = command;
  cfg.preset = preset_name;
  auto& in = cfg.input;
  auto& sc = in.scenario;

  try {
    if (auto v = get("lambda")) sc.lambda = parse_length(*v);
    if (auto v = get("L")) sc.L = parse_length(*v);
    if (auto v = get("r1")) {
      sc.r1 = parse_length(*v);
    } else if (auto ratio = get("r1_over_L")) {
      sc.r1 = parse_real(*ratio) * sc.L;
    }
    if (auto v = get("b0")) {
      sc.b0 = parse_length(*v);
    } else if (auto ratio = get("r1_over_b0")) {
      sc.b0 = sc.r1 / parse_real(*ratio);
    }
    if (auto v = get("n_photons")) in.n_photons = parse_real(*v);
    if (auto v = get("eta")) in.eta = parse_real(*v);
    if (auto v = get("n_T")) in.n_T = parse_real(*v);
    if (auto v = get("noise_model")) in.noise_model = parse_noise_model(*v);
    if (auto v = get("information")) in.information = parse_information(*v);
    if (auto v = get("budget")) {
      if (*v == "per-second") in.budget = PhotonBudget::PerSecond;
      else if (*v == "total") in.budget = PhotonBudget::Total;
      else throw std::invalid_argument("budget must be per-second | total");
    }
    if (auto v = get("override_regime")) in.phase.override_regime = parse_bool(*v);

    if (auto v = get("n_min")) cfg.n_min = parse_real(*v);
    if (auto v = get("n_max")) cfg.n_max = parse_real(*v);
    if (auto v = get("n_points")) cfg.n_points = parse_int<int>(*v, "n_points");
    if (auto v = get("L_alt"); v && !trim(*v).empty()) cfg.L_alt = parse_length(*v);
    if (auto v = get("nT_grid")) cfg.nT_grid = parse_real_list(*v);
    if (auto v = get("axis")) cfg.axis = parse_sweep_axis(*v);
    if (auto v = get("values")) cfg.values = parse_real_list(*v);

    if (auto v = get("alpha")) cfg.probe.alpha = parse_real(*v);
    if (auto v = get("r")) cfg.probe.r = parse_real(*v);
    cfg.probe.eta = in.eta;
    cfg.probe.n_T = in.n_T;
    if (auto v = get("theta")) cfg.theta = parse_real(*v);
    if (auto v = get("samples")) cfg.samples = parse_int<int>(*v, "samples");
    if (auto v = get("trials")) cfg.trials = parse_int<int>(*v, "trials");
    if (auto v = get("tolerance")) cfg.tolerance = parse_real(*v);
    if (auto v = get("delta_theta")) cfg.delta_theta = parse_real(*v);

    if (auto v = get("out")) cfg.output_path = *v;
    if (auto v = get("seed")) cfg.seed = parse_int<std::uint64_t>(*v, "seed");
    if (auto v = get("format")) {
      if (*v == "csv") cfg.format = Format::Csv;
      else if (*v == "json") cfg.format = Format::Json;
      else throw std::invalid_argument("format must be csv | json");
    }
    if (auto v = get("threads")) cfg.threads = parse_int<int>(*v, "threads");
  } catch (const std::invalid_argument& e) {
    throw std::invalid_argument(std::string("invalid setting: ") + e.what());
  }

  // Field validation against the consuming module's preconditions.
  if (cfg.threads < 1) throw std::invalid_argument("threads must be >= 1");
  if (cfg.n_points < 1) throw std::invalid_argument("n_points must be >= 1");
  switch (command) {
    case Command::Mc:
      cfg.probe.validate();
      break;
    case Command::Mimicker:
      if (!(sc.b0 > 0.0 && cfg.delta_theta > 0.0 && sc.L > 0.0 && sc.lambda > 0.0)) {
        throw std::invalid_argument("mimicker needs positive b0, delta_theta, L and lambda");
      }
      break;
    default:
      in.validate();
      break;
  }
  return cfg;
}

Settings RunConfig::to_settings() const {
  const auto& sc = input.scenario;
  Settings s;
  s["command"] = std::string(to_string(command));
  if (!preset.empty()) s["preset"] = preset;
  s["lambda"] = fmt17(sc.lambda);
  s["L"] = fmt17(sc.L);
  s["r1"] = fmt17(sc.r1);
  s["b0"] = fmt17(sc.b0);
  s["n_photons"] = fmt17(input.n_photons);
  s["eta"] = fmt17(input.eta);
  s["n_T"] = fmt17(input.n_T);
  s["noise_model"] = std::string(wormhole::to_string(input.noise_model));
  s["information"] = std::string(wormhole::to_string(input.information));
  s["budget"] = input.budget == PhotonBudget::PerSecond ? "per-second" : "total";
  s["override_regime"] = input.phase.override_regime ? "true" : "false";
  s["n_min"] = fmt17(n_min);
  s["n_max"] = fmt17(n_max);
  s["n_points"] = std::to_string(n_points);
  if (L_alt) s["L_alt"] = fmt17(*L_alt);
  s["nT_grid"] = join(nT_grid);
  s["axis"] = std::string(wormhole::to_string(axis));
  s["values"] = join(values);
  s["alpha"] = fmt17(probe.alpha);
  s["r"] = fmt17(probe.r);
  s["theta"] = fmt17(theta);
  s["samples"] = std::to_string(samples);
  s["trials"] = std::to_string(trials);
  s["tolerance"] = fmt17(tolerance);
  s["delta_theta"] = fmt17(delta_theta);
  s["seed"] = std::to_string(seed);
  s["format"] = format == Format::Csv ? "csv" : "json";
  s["threads"] = std::to_string(threads);
  return s;
}

Table execute(const RunConfig& cfg) {
  Table t;
  switch (cfg.command) {
    case Command::Figure2:
    case Command::Figure3: t = run_figure(cfg); break;
    case Command::Figure4: t = run_figure4(cfg); break;
    case Command::Sweep: t = run_sweep(cfg); break;
    case Command::Mc: t = run_mc(cfg); break;
    case Command::Threshold: t = run_threshold(cfg); break;
    case Command::Mimicker: t = run_mimicker(cfg); break;
    case Command::Validate: t = run_validate(cfg); break;
  }
  t.meta.emplace_back("artifact", "wormhole-metrology");
  t.meta.emplace_back("version", std::string(kVersion));
  t.meta.emplace_back("command", std::string(to_string(cfg.command)));
  t.meta.emplace_back("seed", std::to_string(cfg.seed));
  t.meta.emplace_back("unit", std::string(sensitivity_unit(cfg.input)));
  t.meta.emplace_back("warnings", std::to_string(t.warnings.size()));
  // Output location and format do not affect the data; keep them out of the echo
  // so that reruns into another file stay byte-identical.
  auto settings = cfg.to_settings();
  settings.erase("out");
  for (const auto& [k, v] : settings) t.meta.emplace_back("settings." + k, v);
  return t;
}

std::string render_csv(const Table& table) {
  std::ostringstream os;
  for (const auto& [k, v] : table.meta) os << "# " << k << ": " << v << '\n';
  for (const auto& w : table.warnings) os << "# warning: " << w << '\n';
  for (std::size_t i = 0; i < table.columns.size(); ++i) os << (i ? "," : "") << table.columns[i];
  os << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      if (i) os << ',';
      if (row[i]) os << fmt17(*row[i]);
    }
    os << '\n';
  }
  return os.str();
}

std::string render_json(const Table& table) {
  json meta = json::object();
  json settings = json::object();
  for (const auto& [k, v] : table.meta) {
    if (k.rfind("settings.", 0) == 0) {
      settings[k.substr(9)] = v;
    } else {
      meta[k] = v;
    }
  }
  meta["settings"] = settings;
  meta["warning_messages"] = table.warnings;
  json rows = json::array();
  for (const auto& row : table.rows) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell ? json(*cell) : json(nullptr));
    rows.push_back(std::move(r));
  }
  json j = {{"meta", meta}, {"columns", table.columns}, {"rows", rows}};
  return j.dump(2) + "\n";
}

int run_main(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum-metrology sensitivity to a distant Ellis wormhole", "wormhole-metrology"};
  app.set_version_flag("--version", std::string(kVersion));

  std::string command;
  std::string config_path;
  bool override_regime = false;
  app.add_option("command", command,
                 "figure2 | figure3 | figure4 | sweep | mc | threshold | mimicker | validate");
  app.add_option("--config", config_path, "flat key = value file, or a previous JSON output");
  app.add_flag("--override-regime", override_regime, "evaluate outside the quasiflat regime");

  struct Flag {
    const char* name;
    const char* key;
    const char* help;
  };
  static const Flag kFlags[] = {
      {"--preset", "preset", "figure2 | figure3 | figure4 | ligo | lisa | mimicker-ligo | mimicker-lisa"},
      {"--out", "out", "output path (default: stdout)"},
      {"--format", "format", "csv | json"},
      {"--seed", "seed", "64-bit seed"},
      {"--threads", "threads", "worker threads for Monte-Carlo trials"},
      {"--lambda", "lambda", "wavelength (m, or with unit suffix nm|um|mm|cm|km|pc|upc)"},
      {"--L", "L", "coordinate separation r2 - r1"},
      {"--r1", "r1", "emitter radial coordinate"},
      {"--b0", "b0", "throat radius"},
      {"--r1-over-b0", "r1_over_b0", "r1 / b0 (sets b0)"},
      {"--r1-over-L", "r1_over_L", "r1 / L (sets r1)"},
      {"--n-photons", "n_photons", "mean photon number (per second)"},
      {"--eta", "eta", "optical efficiency in (0, 1]"},
      {"--nT,--n-T", "n_T", "thermal occupation"},
      {"--noise-model", "noise_model", "as-printed | fisher-derived"},
      {"--information", "information", "qfi | homodyne-fi"},
      {"--budget", "budget", "per-second | total"},
      {"--n-min", "n_min", "figure grid start"},
      {"--n-max", "n_max", "figure grid stop"},
      {"--n-points", "n_points", "figure grid size"},
      {"--L-alt", "L_alt", "second separation for figure2/figure3"},
      {"--nT-grid", "nT_grid", "thermal occupations for figure4"},
      {"--axis", "axis", "n_photons | L | r1_over_b0 | eta | n_T"},
      {"--values", "values", "comma list or log:START:STOP:COUNT"},
      {"--alpha", "alpha", "coherent amplitude"},
      {"--r", "r", "squeezing parameter"},
      {"--theta", "theta", "true phase (rad)"},
      {"--samples", "samples", "homodyne shots per trial"},
      {"--trials", "trials", "Monte-Carlo trials"},
      {"--tolerance", "tolerance", "largest acceptable Delta b0 / b0"},
      {"--delta-theta", "delta_theta", "smallest resolvable phase (rad)"},
  };
  std::map<std::string, std::string> raw;
  std::vector<std::pair<CLI::Option*, const char*>> opts;
  for (const auto& f : kFlags) opts.emplace_back(app.add_option(f.name, raw[f.key], f.help), f.key);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kOk : kParseError;
  }

  RunConfig cfg;
  try {
    Settings file;
    if (!config_path.empty()) file = read_config_file(config_path);
    Settings flags;
    if (!command.empty()) flags["command"] = command;
    for (const auto& [opt, key] : opts) {
      if (opt->count() > 0) flags[key] = raw[key];
    }
    if (override_regime) flags["override_regime"] = "true";
    cfg = resolve(file, flags);
  } catch (const std::exception& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  }

  try {
    const auto table = execute(cfg);
    const auto text = cfg.format == Format::Csv ? render_csv(table) : render_json(table);
    if (cfg.output_path.empty()) {
      out << text;
    } else {
      std::ofstream file(cfg.output_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot write '" + cfg.output_path + "'");
      file << text;
    }
    if (!table.warnings.empty()) {
      err << "warning: " << table.warnings.size() << " point(s) reported issues\n";
      for (const auto& w : table.warnings) err << "  " << w << '\n';
    }
    return kOk;
  } catch (const RegimeError& e) {
    err << "regime error: " << e.report().describe() << '\n';
    return kRegimeError;
  } catch (const std::invalid_argument& e) {
    err << "parse error: " << e.what() << '\n';
    return kParseError;
  } catch (const std::exception& e) {
    err << "numeric error: " << e.what() << '\n';
    return kNumericError;
  }
}

}  // namespace wormhole::cli
