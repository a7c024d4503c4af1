#pragma once

#include <cstdint>
#include <filesystem>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "speclab/error.hpp"

namespace speclab::cli {

enum ExitCode : int { kOk = 0, kCheckFailed = 1, kUsage = 2 };

/// Usage or configuration problem; maps to exit code 2.
class ConfigError : public Error {
 public:
  using Error::Error;
};

enum class ValueType { Real, Integer, Seed, Text, RealList, Flag };

struct OptionSpec {
  std::string key;  ///< flag is --key, config-file key is key
  ValueType type = ValueType::Text;
  std::string default_value;
  std::string help;
};

const std::vector<std::string>& subcommands();
/// Option table for a subcommand; throws ConfigError for unknown names.
const std::vector<OptionSpec>& options_for(const std::string& subcommand);

/// Resolved, validated string values for every option of a subcommand.
struct RunConfig {
  std::string subcommand;
  std::map<std::string, std::string> values;

  double real(const std::string& key) const;
  std::int64_t integer(const std::string& key) const;
  std::uint64_t seed(const std::string& key) const;
  const std::string& text(const std::string& key) const;
  std::vector<double> reals(const std::string& key) const;
  bool flag(const std::string& key) const;

  /// Flat `key = value` lines, sorted by key, starting with the subcommand.
  std::string to_text() const;
};

/// Flat config file: `key = value`, `#` comments, blank lines ignored.
/// Duplicate keys and malformed lines raise ConfigError.
std::map<std::string, std::string> read_config_text(const std::string& text);

/// Checks every value against its declared type and rejects unknown keys.
void validate(const RunConfig& config);

/// FNV-1a 64-bit digest as 16 hex digits.
std::string digest_hex(const std::string& bytes);

struct CheckOutcome {
  std::string name;
  bool pass = true;
};

struct CommandResult {
  std::vector<CheckOutcome> checks;
  /// relative file name -> payload, written in order
  std::vector<std::pair<std::string, std::string>> files;
};

/// Runs a validated subcommand and produces its payload files (no I/O).
CommandResult execute(const RunConfig& config);

/// Entry point: argv-style arguments without the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace speclab::cli
