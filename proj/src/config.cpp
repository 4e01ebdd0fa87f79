// Copyright 2026 The holopi Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "holopi/config.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include <boost/property_tree/ini_parser.hpp>
#include <boost/property_tree/ptree.hpp>

namespace holopi::config {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::string lower(std::string_view s) {
  std::string out(s);
  for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

// Line numbers of `section.key` entries; property_tree does not keep them.
std::map<std::string, int> key_lines(std::string_view text) {
  std::map<std::string, int> out;
  std::string section;
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    const std::string_view line = trim(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (line.empty() || line.front() == ';' || line.front() == '#') continue;
    if (line.front() == '[' && line.back() == ']') {
      section = std::string(trim(line.substr(1, line.size() - 2)));
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) continue;
    const std::string key(trim(line.substr(0, eq)));
    out.emplace(section.empty() ? key : section + "." + key, line_no);
  }
  return out;
}

const std::vector<std::string> kKeys = {
    "experiment.mode",         "experiment.gate",
    "experiment.theta0",       "experiment.phi0",
    "experiment.gamma_plus",   "experiment.cphase_gamma",
    "experiment.initial",      "experiment.workers",
    "drive.omega_mhz",         "drive.ramp_ns",
    "drive.n_per_step",        "drive.pulse_mode",
    "drive.delta_ratio",       "drive.v12_mode",
    "drive.quantize_bursts",   "numerics.substep_ns",
    "numerics.refine_tol",     "numerics.trace_rows",
    "output.dir",              "sweep.axis",
    "sweep.values",            "adiabaticity.toy_tau_delta_e",
    "adiabaticity.ramp_tau_ns", "adiabaticity.ramp_omega_mhz",
    "adiabaticity.ramp_theta_start", "adiabaticity.ramp_theta_end",
};

class Reader {
 public:
  explicit Reader(const ConfigSource& src) : src_(src) {}

  [[noreturn]] void fail(const std::string& key, const std::string& what) const {
    const auto* e = src_.find(key);
    const std::string where = e ? e->origin + ": " : std::string();
    throw ConfigError(where + key + ": " + what);
  }

  const std::string* raw(const std::string& key) const {
    const auto* e = src_.find(key);
    return e ? &e->value : nullptr;
  }

  template <class F>
  auto convert(const std::string& key, F&& f) const {
    try {
      return f(*raw(key));
    } catch (const std::exception& ex) {
      fail(key, ex.what());
    }
  }

  void number(const std::string& key, double& out, double scale = 1.0) const {
    if (raw(key)) out = scale * convert(key, [](const std::string& v) { return parse_number(v); });
  }
  void angle(const std::string& key, double& out) const {
    if (raw(key)) out = convert(key, [](const std::string& v) { return parse_angle(v); });
  }
  void integer(const std::string& key, int& out) const {
    if (!raw(key)) return;
    const double v = convert(key, [](const std::string& s) { return parse_number(s); });
    if (v != std::floor(v) || std::abs(v) > 1e9) fail(key, "expected an integer");
    out = static_cast<int>(v);
  }
  void text(const std::string& key, std::string& out) const {
    if (raw(key)) out = *raw(key);
  }
  void flag(const std::string& key, bool& out) const {
    if (!raw(key)) return;
    const std::string v = lower(*raw(key));
    if (v == "true" || v == "yes" || v == "on" || v == "1") {
      out = true;
    } else if (v == "false" || v == "no" || v == "off" || v == "0") {
      out = false;
    } else {
      fail(key, "expected true or false, got '" + *raw(key) + "'");
    }
  }
  void numbers(const std::string& key, std::vector<double>& out, double scale, bool angles) const {
    if (!raw(key)) return;
    out.clear();
    for (const auto& item : split_list(*raw(key))) {
      out.push_back(scale * convert(key, [&](const std::string&) {
        return angles ? parse_angle(item) : parse_number(item);
      }));
    }
    if (out.empty()) fail(key, "list must not be empty");
  }

 private:
  const ConfigSource& src_;
};

}  // namespace

std::string_view to_string(Mode m) {
  switch (m) {
    case Mode::SingleQubit: return "single-qubit";
    case Mode::TwoQubitEffective: return "two-qubit-effective";
    case Mode::TwoQubitFull: return "two-qubit-full";
    case Mode::Toggling: return "toggling";
    case Mode::Adiabaticity: return "adiabaticity";
  }
  return "unknown";
}

ConfigSource ConfigSource::parse(std::string_view text, const std::string& name) {
  namespace pt = boost::property_tree;
  pt::ptree tree;
  std::istringstream in{std::string(text)};
  try {
    pt::ini_parser::read_ini(in, tree);
  } catch (const pt::ini_parser_error& e) {
    throw ConfigError(name + ":" + std::to_string(e.line()) + ": " + e.message());
  }
  const auto lines = key_lines(text);
  ConfigSource src;
  for (const auto& [head, node] : tree) {
    if (node.empty()) {
      src.set(head, node.data(), name + ":" + std::to_string(lines.count(head) ? lines.at(head) : 0));
      continue;
    }
    for (const auto& [key, leaf] : node) {
      const std::string full = head + "." + key;
      const int line = lines.count(full) ? lines.at(full) : 0;
      src.set(full, leaf.data(), name + ":" + std::to_string(line));
    }
  }
  return src;
}

ConfigSource ConfigSource::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError(path.string() + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), path.string());
}

void ConfigSource::set(std::string_view assignment, const std::string& origin) {
  const auto eq = assignment.find('=');
  if (eq == std::string_view::npos) {
    throw ConfigError(origin + ": expected section.key=value, got '" + std::string(assignment) + "'");
  }
  set(std::string(trim(assignment.substr(0, eq))), std::string(trim(assignment.substr(eq + 1))),
      origin);
}

void ConfigSource::set(const std::string& key, const std::string& value, const std::string& origin) {
  const auto& keys = known_keys();
  if (std::find(keys.begin(), keys.end(), key) == keys.end()) {
    throw ConfigError(origin + ": unknown key '" + key + "'");
  }
  entries_[key] = Entry{std::string(trim(value)), origin};
}

const ConfigSource::Entry* ConfigSource::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

const std::vector<std::string>& known_keys() { return kKeys; }

double parse_number(std::string_view text) {
  text = trim(text);
  double v = 0.0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  if (!text.empty() && *first == '+') ++first;
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (text.empty() || ec != std::errc{} || ptr != last || !std::isfinite(v)) {
    throw ConfigError("expected a number, got '" + std::string(text) + "'");
  }
  return v;
}

double parse_angle(std::string_view text) {
  const std::string t = lower(trim(text));
  const auto p = t.find("pi");
  if (p == std::string::npos) return parse_number(t);

  std::string coef(trim(std::string_view(t).substr(0, p)));
  if (!coef.empty() && coef.back() == '*') coef = std::string(trim(coef.substr(0, coef.size() - 1)));
  double value = kPi;
  if (coef == "-") {
    value = -kPi;
  } else if (!coef.empty() && coef != "+") {
    value = parse_number(coef) * kPi;
  }
  const std::string_view rest = trim(std::string_view(t).substr(p + 2));
  if (!rest.empty()) {
    if (rest.front() != '/') throw ConfigError("expected an angle, got '" + std::string(text) + "'");
    const double den = parse_number(rest.substr(1));
    if (den == 0.0) throw ConfigError("angle divides by zero");
    value /= den;
  }
  return value;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t end = std::min(text.find(',', pos), text.size());
    const auto item = trim(text.substr(pos, end - pos));
    if (!item.empty()) out.emplace_back(item);
    pos = end + 1;
  }
  return out;
}

ExperimentConfig build(const ConfigSource& source) {
  ExperimentConfig c;
  Reader r(source);

  if (const auto* m = r.raw("experiment.mode")) {
    const std::string v = lower(*m);
    if (v == "single-qubit") c.mode = Mode::SingleQubit;
    else if (v == "two-qubit-effective") c.mode = Mode::TwoQubitEffective;
    else if (v == "two-qubit-full") c.mode = Mode::TwoQubitFull;
    else if (v == "toggling") c.mode = Mode::Toggling;
    else if (v == "adiabaticity") c.mode = Mode::Adiabaticity;
    else r.fail("experiment.mode", "unknown mode '" + *m + "'");
  }
  const bool two_qubit = c.mode == Mode::TwoQubitEffective || c.mode == Mode::TwoQubitFull;
  if (two_qubit) c.gate = "CNOT";

  r.text("experiment.gate", c.gate);
  r.angle("experiment.theta0", c.theta0);
  r.angle("experiment.phi0", c.phi0);
  r.angle("experiment.gamma_plus", c.gamma_plus);
  r.angle("experiment.cphase_gamma", c.cphase_gamma);
  r.text("experiment.initial", c.initial);
  r.integer("experiment.workers", c.workers);

  const bool custom = lower(c.gate) == "custom";
  for (const char* k : {"experiment.theta0", "experiment.phi0", "experiment.gamma_plus"}) {
    if (!custom && r.raw(k)) r.fail(k, "only used with gate = custom");
  }
  if (custom && !r.raw("experiment.gamma_plus")) {
    throw ConfigError("experiment.gamma_plus: required when gate = custom");
  }
  if (c.theta0 < 0.0 || c.theta0 > kPi) r.fail("experiment.theta0", "must lie in [0, pi]");
  if (c.workers < 0) r.fail("experiment.workers", "must be non-negative");

  r.number("drive.omega_mhz", c.omega, mhz_to_rad_per_s(1.0));
  if (!(c.omega > 0.0)) r.fail("drive.omega_mhz", "must be positive");
  r.number("drive.ramp_ns", c.ramp_time, 1e-9);
  if (!(c.ramp_time > 0.0)) r.fail("drive.ramp_ns", "must be positive");
  if (r.raw("drive.n_per_step")) {
    std::vector<double> n;
    r.numbers("drive.n_per_step", n, 1.0, false);
    if (n.size() != 5) r.fail("drive.n_per_step", "expected five comma-separated counts");
    for (double v : n) {
      if (v != std::floor(v) || v < 0 || v > 1e6) r.fail("drive.n_per_step", "counts must be whole numbers");
      c.n_per_step.push_back(static_cast<int>(v));
    }
  }
  if (const auto* pm = r.raw("drive.pulse_mode")) {
    const std::string v = lower(*pm);
    if (v == "burst") c.pulse_mode = schedule::PulseMode::Burst;
    else if (v == "continuous") c.pulse_mode = schedule::PulseMode::Continuous;
    else r.fail("drive.pulse_mode", "expected burst or continuous");
  }
  r.number("drive.delta_ratio", c.delta_ratio);
  if (!(c.delta_ratio > 0.0)) r.fail("drive.delta_ratio", "must be positive");
  if (const auto* vm = r.raw("drive.v12_mode")) {
    const std::string v = lower(*vm);
    if (v == "tracking") c.v12_mode = rydberg::V12Mode::Tracking;
    else if (v == "fixed") c.v12_mode = rydberg::V12Mode::Fixed;
    else r.fail("drive.v12_mode", "expected tracking or fixed");
  }
  r.flag("drive.quantize_bursts", c.quantize_bursts);

  r.number("numerics.substep_ns", c.substep, 1e-9);
  if (c.substep < 0.0) r.fail("numerics.substep_ns", "must be non-negative");
  r.number("numerics.refine_tol", c.refine_tol);
  if (!(c.refine_tol > 0.0)) r.fail("numerics.refine_tol", "must be positive");
  r.integer("numerics.trace_rows", c.trace_rows);
  if (c.trace_rows < 0) r.fail("numerics.trace_rows", "must be non-negative");

  if (const auto* d = r.raw("output.dir")) {
    if (d->empty()) r.fail("output.dir", "must not be empty");
    c.output = *d;
  }

  r.text("sweep.axis", c.sweep_axis);
  if (r.raw("sweep.values")) c.sweep_values = split_list(*r.raw("sweep.values"));
  if (!c.sweep_axis.empty() || r.raw("sweep.values")) {
    if (c.sweep_axis.empty()) r.fail("sweep.values", "sweep.axis is not set");
    const auto& keys = known_keys();
    if (std::find(keys.begin(), keys.end(), c.sweep_axis) == keys.end() ||
        c.sweep_axis.starts_with("sweep.") || c.sweep_axis == "output.dir") {
      r.fail("sweep.axis", "cannot sweep '" + c.sweep_axis + "'");
    }
    if (c.sweep_values.empty()) {
      if (r.raw("sweep.values")) r.fail("sweep.values", "grid must not be empty");
      r.fail("sweep.axis", "sweep.values is missing");
    }
  }

  r.numbers("adiabaticity.toy_tau_delta_e", c.toy_tau_delta_e, 1.0, true);
  r.numbers("adiabaticity.ramp_tau_ns", c.ramp_tau, 1e-9, false);
  for (double v : c.ramp_tau) {
    if (!(v > 0.0)) r.fail("adiabaticity.ramp_tau_ns", "durations must be positive");
  }
  for (double v : c.toy_tau_delta_e) {
    if (!(v > 0.0)) r.fail("adiabaticity.toy_tau_delta_e", "values must be positive");
  }
  r.number("adiabaticity.ramp_omega_mhz", c.ramp_omega, mhz_to_rad_per_s(1.0));
  if (!(c.ramp_omega > 0.0)) r.fail("adiabaticity.ramp_omega_mhz", "must be positive");
  r.angle("adiabaticity.ramp_theta_start", c.ramp_theta_start);
  r.angle("adiabaticity.ramp_theta_end", c.ramp_theta_end);
  return c;
}

}  // namespace holopi::config
