#pragma once

#include <filesystem>
#include <numbers>
#include <optional>
#include <string>
#include <string_view>

#include "twoatom/couplings.hpp"
#include "twoatom/dynamics.hpp"
#include "twoatom/statespace.hpp"

namespace twoatom {

enum class InitialKind { kAtom1Excited, kBothExcited, kSymmetric, kAntisymmetric, kCustom };

std::string_view to_string(InitialKind kind);
/// Throws ValidationError on an unknown name.
InitialKind parse_initial_kind(std::string_view name);

struct InitialCondition {
  InitialKind kind = InitialKind::kAtom1Excited;
  BlockState custom;  // used only for InitialKind::kCustom

  BlockState state() const;
};

/// Column groups emitted by `run`.
struct OutputSet {
  bool concurrence = true;
  bool negativity = true;
  bool populations = true;
  bool coherences = true;
  bool s_squared = true;
};

/// Parses a comma-separated list such as "concurrence, populations".
OutputSet parse_output_set(std::string_view list);

/// Initial condition, couplings and time grid of one simulation.
///
/// Couplings come from `geometry` unless overridden; when both overrides are
/// set the geometry may be absent.
struct Scenario {
  std::string name = "custom";
  InitialCondition initial;
  std::optional<Geometry> geometry = Geometry{std::numbers::pi / 6.0, 0.0};
  std::optional<double> gamma12_override;
  std::optional<double> omega12_override;
  double gamma = 1.0;
  double delta = 0.0;
  TimeGrid grid{0.0, 3.0, 3000};
  OutputSet outputs;

  CouplingRates rates() const;
  AtomPairParams params() const;
};

/// Throws ValidationError (malformed) or DomainError (unphysical values).
void validate(const Scenario& s);

/// Parses the flat `key = value` scenario format; `#` starts a comment.
///
/// Keys: name, initial, r11, r22, r33, r44, r12_re, r12_im, r34_re, r34_im,
/// x, r_over_lambda, mu_dot_r, gamma, gamma12, omega12, delta, t_start,
/// t_end, points, outputs.
Scenario parse_scenario(std::string_view text);
Scenario load_scenario(const std::filesystem::path& path);

}  // namespace twoatom
