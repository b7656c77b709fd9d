#pragma once

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "irp/eos.hpp"
#include "irp/polytropic.hpp"
#include "irp/solver.hpp"
#include "irp/tait.hpp"

namespace irp {

enum class EosModel { polytropic, tait };

struct EosConfig {
  EosModel model = EosModel::polytropic;
  PolytropicParams polytropic;
  TaitParams tait;
};

enum class InitialKind { riemann, preset };

struct InitialCondition {
  InitialKind kind = InitialKind::riemann;
  PrimitiveState left;
  PrimitiveState right;
  double x0 = 0.5;
  std::string preset;  ///< sod, double_shock, smooth_wave, tait_shock
};

struct OutputConfig {
  std::vector<double> times;  ///< empty means {t_final}
  std::string directory = ".";
  std::string prefix;         ///< empty means the config file stem
};

/// (s, v) box swept by eos-check; absent bounds default from the model.
struct SweepConfig {
  std::optional<double> s_min, s_max, v_min, v_max;
  int n_s = 41;
  int n_v = 41;
};

struct VerifyConfig {
  int samples = 1000;
  std::uint64_t seed = 1;
  double h = 3e-2;
};

/// A parsed run configuration. Sections are optional at parse time; each
/// subcommand checks for the ones it needs with `require_*`.
struct RunConfig {
  std::optional<EosConfig> eos;
  std::optional<Grid1D> grid;
  std::optional<SolverConfig> solver;
  std::optional<InitialCondition> initial_condition;
  std::optional<OutputConfig> output;
  std::optional<SweepConfig> sweep;
  std::optional<VerifyConfig> verify;

  const EosConfig& require_eos() const;
  const Grid1D& require_grid() const;
  const SolverConfig& require_solver() const;
  const InitialCondition& require_initial_condition() const;
};

/// INI-style text: `[section]` headers, `key = value` lines, `;` or `#`
/// comments. Every key is validated; unknown sections or keys and missing
/// required keys throw ConfigError naming `section.key`.
RunConfig parse_config(std::string_view text);
RunConfig load_config(const std::filesystem::path& path);

/// Canonical text form: fixed section and key order, all defaults spelled
/// out, reals with 17 significant digits.
std::string serialize(const RunConfig& config);

std::unique_ptr<Eos> make_eos(const EosConfig& config);

InitialData make_initial_data(const InitialCondition& ic);

/// The primitive left/right states and interface of a Riemann preset.
std::optional<InitialCondition> riemann_preset(std::string_view name);

}  // namespace irp
