#include "twoatom/scenario.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>
#include <utility>

#include "twoatom/errors.hpp"

namespace twoatom {
namespace {

constexpr std::array<std::pair<InitialKind, std::string_view>, 5> kInitialNames{{
    {InitialKind::kAtom1Excited, "atom1_excited"},
    {InitialKind::kBothExcited, "both_excited"},
    {InitialKind::kSymmetric, "symmetric"},
    {InitialKind::kAntisymmetric, "antisymmetric"},
    {InitialKind::kCustom, "custom"},
}};

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double parse_double(std::string_view key, std::string_view text) {
  std::string_view digits = text;
  if (!digits.empty() && digits.front() == '+') digits.remove_prefix(1);
  double value = 0.0;
  const auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), value);
  if (ec != std::errc() || end != digits.data() + digits.size() || !std::isfinite(value)) {
    throw ValidationError("scenario: key '" + std::string(key) + "' expects a finite number, got '" +
                          std::string(text) + "'");
  }
  return value;
}

std::size_t parse_count(std::string_view key, std::string_view text) {
  std::size_t value = 0;
  const auto [end, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || end != text.data() + text.size()) {
    throw ValidationError("scenario: key '" + std::string(key) +
                          "' expects a nonnegative integer, got '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(InitialKind kind) {
  for (const auto& [k, name] : kInitialNames) {
    if (k == kind) return name;
  }
  return "unknown";
}

InitialKind parse_initial_kind(std::string_view name) {
  for (const auto& [k, n] : kInitialNames) {
    if (n == name) return k;
  }
  throw ValidationError("scenario: unknown initial condition '" + std::string(name) +
                        "' (expected atom1_excited, both_excited, symmetric, antisymmetric or custom)");
}

BlockState InitialCondition::state() const {
  BlockState b;
  switch (kind) {
    case InitialKind::kAtom1Excited:
      b.r44 = 1.0;
      break;
    case InitialKind::kBothExcited:
      b.r22 = 1.0;
      break;
    case InitialKind::kSymmetric:
      b.r33 = b.r44 = 0.5;
      b.r34 = 0.5;
      break;
    case InitialKind::kAntisymmetric:
      b.r33 = b.r44 = 0.5;
      b.r34 = -0.5;
      break;
    case InitialKind::kCustom:
      b = custom;
      break;
  }
  return b;
}

OutputSet parse_output_set(std::string_view list) {
  OutputSet out{false, false, false, false, false};
  std::string_view rest = list;
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    const std::string_view item = trim(rest.substr(0, comma));
    rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    if (item.empty()) continue;
    if (item == "concurrence") {
      out.concurrence = true;
    } else if (item == "negativity") {
      out.negativity = true;
    } else if (item == "populations") {
      out.populations = true;
    } else if (item == "coherences") {
      out.coherences = true;
    } else if (item == "s_squared") {
      out.s_squared = true;
    } else {
      throw ValidationError("scenario: unknown output group '" + std::string(item) + "'");
    }
  }
  return out;
}

CouplingRates Scenario::rates() const {
  CouplingRates r;
  r.gamma = gamma;
  if (!gamma12_override || !omega12_override) {
    if (!geometry) {
      throw ValidationError("scenario '" + name +
                            "': geometry is required unless gamma12 and omega12 are both given");
    }
  }
  r.gamma12 = gamma12_override ? *gamma12_override : gamma * collective_damping(*geometry);
  r.omega12 = omega12_override ? *omega12_override : gamma * dipole_dipole_shift(*geometry);
  return r;
}

AtomPairParams Scenario::params() const { return AtomPairParams::from_rates(rates(), delta); }

void validate(const Scenario& s) {
  if (s.initial.kind == InitialKind::kCustom && !is_valid(s.initial.custom)) {
    throw DomainError("scenario '" + s.name +
                      "': custom initial state is not a valid density matrix "
                      "(unit trace and positive blocks required)");
  }
  if (!std::isfinite(s.gamma) || s.gamma <= 0.0) {
    throw DomainError("scenario '" + s.name + "': gamma must be > 0");
  }
  if (s.geometry) validate(*s.geometry);
  validate(s.params());
  validate(s.grid);
}

Scenario parse_scenario(std::string_view text) {
  std::map<std::string, std::string, std::less<>> entries;
  std::size_t line_no = 0;
  for (std::size_t pos = 0; pos <= text.size();) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? nl : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ValidationError("scenario line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ValidationError("scenario line " + std::to_string(line_no) + ": empty key");
    if (!entries.emplace(key, value).second) {
      throw ValidationError("scenario line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
    }
  }

  Scenario s;
  auto take = [&](std::string_view key) -> std::optional<std::string> {
    const auto it = entries.find(key);
    if (it == entries.end()) return std::nullopt;
    std::string v = it->second;
    entries.erase(it);
    return v;
  };
  auto take_double = [&](std::string_view key) -> std::optional<double> {
    const auto v = take(key);
    if (!v) return std::nullopt;
    return parse_double(key, *v);
  };

  if (auto v = take("name")) s.name = *v;
  if (auto v = take("initial")) s.initial.kind = parse_initial_kind(*v);

  bool any_custom = false;
  auto custom_real = [&](std::string_view key, double& field) {
    if (auto v = take_double(key)) {
      field = *v;
      any_custom = true;
    }
  };
  BlockState& c = s.initial.custom;
  custom_real("r11", c.r11);
  custom_real("r22", c.r22);
  custom_real("r33", c.r33);
  custom_real("r44", c.r44);
  double r12_re = 0.0, r12_im = 0.0, r34_re = 0.0, r34_im = 0.0;
  custom_real("r12_re", r12_re);
  custom_real("r12_im", r12_im);
  custom_real("r34_re", r34_re);
  custom_real("r34_im", r34_im);
  c.r12 = {r12_re, r12_im};
  c.r34 = {r34_re, r34_im};
  if (any_custom && s.initial.kind != InitialKind::kCustom) {
    throw ValidationError("scenario: matrix entries r11..r34_im require 'initial = custom'");
  }

  const auto x = take_double("x");
  const auto r_over_lambda = take_double("r_over_lambda");
  const auto mu_dot_r = take_double("mu_dot_r");
  if (x && r_over_lambda) throw ValidationError("scenario: give either 'x' or 'r_over_lambda', not both");
  s.gamma12_override = take_double("gamma12");
  s.omega12_override = take_double("omega12");
  if (x || r_over_lambda || mu_dot_r) {
    Geometry g = *s.geometry;
    if (x) g.x = *x;
    if (r_over_lambda) g.x = 2.0 * std::numbers::pi * *r_over_lambda;
    if (mu_dot_r) g.mu_dot_r = *mu_dot_r;
    s.geometry = g;
  } else if (s.gamma12_override && s.omega12_override) {
    s.geometry.reset();
  }

  if (auto v = take_double("gamma")) s.gamma = *v;
  if (auto v = take_double("delta")) s.delta = *v;
  if (auto v = take_double("t_start")) s.grid.t_start = *v;
  if (auto v = take_double("t_end")) s.grid.t_end = *v;
  if (auto v = take("points")) s.grid.n_points = parse_count("points", *v);
  if (auto v = take("outputs")) s.outputs = parse_output_set(*v);

  if (!entries.empty()) {
    throw ValidationError("scenario: unknown key '" + entries.begin()->first + "'");
  }
  validate(s);
  return s;
}

Scenario load_scenario(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open scenario file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario(buffer.str());
}

}  // namespace twoatom
