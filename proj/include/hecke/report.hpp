#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "hecke/algebra.hpp"

namespace hecke {

/// Malformed or invalid input; carries the config line and field when known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(const std::string& what, std::string field = {}, int line = 0)
      : std::runtime_error(what), field_(std::move(field)), line_(line) {}
  const std::string& field() const noexcept { return field_; }
  int line() const noexcept { return line_; }

 private:
  std::string field_;
  int line_;
};

enum class CoefficientMode { exact, floating };

/// Resolved experiment settings. The config file is INI-style:
///
///   [general]   pair, length, seed, mode, out, radii, samples, tol, max_iter
///   [pair]      catalog parameters, passed through verbatim
///   [<command>] command-specific keys
struct ExperimentConfig {
  std::string pair = "dihedral";
  PairParams params;
  std::string length = "native";
  std::vector<double> radii;
  std::optional<std::uint64_t> seed;
  std::size_t samples = 200;
  double tol = 1e-10;
  int max_iter = 10000;
  std::filesystem::path out_dir = ".";
  CoefficientMode mode = CoefficientMode::exact;
  /// Keys of the command's own section.
  std::map<std::string, std::string> options;
  /// Directory of the config file; relative input paths resolve against it.
  std::filesystem::path base_dir = ".";
  /// Line numbers of "section.key" entries, for diagnostics.
  std::map<std::string, int> lines;
};

const std::vector<std::string>& command_names();

/// Parses config text for `command`. Throws ConfigError with line/field.
ExperimentConfig parse_config(std::string_view text, std::string_view command);
ExperimentConfig load_config(const std::filesystem::path& path, std::string_view command);

nlohmann::json to_json(const ExperimentConfig& config);

/// {"pair", "params", "terms": [{"key": [...], "re", "im"}]}. Exact
/// coefficients are rational strings, float ones are numbers.
template <class Scalar>
nlohmann::json element_to_json(const BasicHeckeElement<Scalar>& f);
template <class Scalar>
nlohmann::json vector_to_json(const BasicL2Vector<Scalar>& xi);
/// Keys are re-canonicalized on the given pair. Throws ConfigError.
template <class Scalar>
BasicHeckeElement<Scalar> element_from_json(const PairPtr& pair, const nlohmann::json& doc);
template <class Scalar>
BasicL2Vector<Scalar> vector_from_json(const PairPtr& pair, const nlohmann::json& doc);

/// Shortest round-trip decimal, locale independent.
std::string format_double(double x);

struct RunOutcome {
  int exit_code = 0;
  std::string summary;
  std::vector<std::filesystem::path> artifacts;
};

/// Executes a command: writes artifacts under config.out_dir and prints a
/// one-line summary to `out`. Exit 0 on success, 2 on invalid input (a failure
/// JSON line goes to `out` and to out_dir/failure.json), 1 on internal errors.
RunOutcome run(std::string_view command, const ExperimentConfig& config, std::ostream& out);

}  // namespace hecke
