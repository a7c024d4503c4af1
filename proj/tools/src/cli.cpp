#include <CLI11.hpp>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "speclab/cli.hpp"
#include "speclab/serialize.hpp"

#ifndef SPECLAB_VERSION
#define SPECLAB_VERSION "0.0.0"
#endif

namespace speclab::cli {

namespace {

namespace fs = std::filesystem;

std::string read_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const fs::path& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error("cannot write " + path.string());
  out << bytes;
  if (!out) throw Error("write failed for " + path.string());
}

std::string usage() {
  std::ostringstream os;
  os << "usage: speclab <subcommand> [--key value ...] [--config FILE]\n"
     << "subcommands:";
  for (const auto& s : subcommands()) os << ' ' << s;
  os << "\nrun `speclab <subcommand> --help` for its keys\n";
  return os.str();
}

// Pulls `--config FILE` / `--config=FILE` out of the argument list.
std::string take_config_path(std::vector<std::string>& args) {
  std::string path;
  for (std::size_t i = 0; i < args.size();) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw ConfigError("--config needs a file name");
      path = args[i + 1];
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i), args.begin() + static_cast<std::ptrdiff_t>(i + 2));
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      ++i;
    }
  }
  return path;
}

}  // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args = raw_args;
  RunConfig config;
  try {
    const std::string config_path = take_config_path(args);
    std::map<std::string, std::string> file_values;
    if (!config_path.empty()) file_values = read_config_text(read_file(config_path));

    if (!args.empty() && !args.front().empty() && args.front()[0] != '-') {
      config.subcommand = args.front();
      args.erase(args.begin());
    }
    if (const auto it = file_values.find("subcommand"); it != file_values.end()) {
      if (config.subcommand.empty()) config.subcommand = it->second;
      if (config.subcommand != it->second) {
        throw ConfigError("config file is for '" + it->second + "', not '" + config.subcommand + "'");
      }
      file_values.erase(it);
    }
    if (config.subcommand.empty()) {
      const bool help = !args.empty() && (args.front() == "--help" || args.front() == "-h");
      (help ? out : err) << usage();
      return help ? kOk : kUsage;
    }

    const auto& specs = options_for(config.subcommand);
    for (const auto& spec : specs) config.values[spec.key] = spec.default_value;
    for (const auto& [key, value] : file_values) {
      const auto it = config.values.find(key);
      if (it == config.values.end()) {
        throw ConfigError("unknown key '" + key + "' in config file for " + config.subcommand);
      }
      it->second = value;
    }

    CLI::App app{"speclab " + config.subcommand, "speclab " + config.subcommand};
    app.set_help_flag("--help", "print the keys of this subcommand");
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    for (const auto& spec : specs) {
      app.add_option("--" + spec.key, config.values[spec.key], spec.help + " [" + spec.default_value + "]");
    }
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
      app.parse(reversed);
    } catch (const CLI::CallForHelp& e) {
      out << app.help();
      return kOk;
    } catch (const CLI::ParseError& e) {
      err << "speclab: " << e.what() << '\n';
      return kUsage;
    }

    if (config.values["out"].empty()) {
      const char* env = std::getenv("SPECLAB_OUT");
      config.values["out"] = env && *env ? env : "speclab-out";
    }
    validate(config);
  } catch (const Error& e) {
    err << "speclab: " << e.what() << '\n';
    return kUsage;
  }

  const auto start = std::chrono::steady_clock::now();
  CommandResult result;
  try {
    result = execute(config);
  } catch (const NumericalError& e) {
    err << "speclab: numerical failure: " << e.what() << '\n';
    return kCheckFailed;
  } catch (const Error& e) {
    err << "speclab: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    err << "speclab: " << e.what() << '\n';
    return kCheckFailed;
  }
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

  const fs::path dir = config.values["out"];
  try {
    fs::create_directories(dir);
    const std::string config_name = config.subcommand + "-config.txt";
    result.files.emplace_back(config_name, config.to_text());
    json files = json::array();
    for (const auto& [name, bytes] : result.files) {
      write_file(dir / name, bytes);
      files.push_back({{"name", name}, {"bytes", bytes.size()}, {"fnv1a64", digest_hex(bytes)}});
    }
    json checks = json::array();
    for (const auto& c : result.checks) checks.push_back({{"name", c.name}, {"pass", c.pass}});
    json resolved(config.values);
    const json manifest{{"tool", "speclab"},
                        {"version", SPECLAB_VERSION},
                        {"subcommand", config.subcommand},
                        {"config", resolved},
                        {"seed", config.seed("seed")},
                        {"wall_clock_seconds", seconds},
                        {"checks", checks},
                        {"files", files}};
    write_file(dir / (config.subcommand + "-manifest.json"), manifest.dump(2) + "\n");
  } catch (const std::exception& e) {
    err << "speclab: " << e.what() << '\n';
    return kCheckFailed;
  }

  bool ok = true;
  for (const auto& c : result.checks) {
    out << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';
    if (!c.pass) {
      err << "speclab: check failed: " << c.name << '\n';
      ok = false;
    }
  }
  out << "wrote " << result.files.size() + 1 << " files to " << dir.string() << '\n';
  return ok ? kOk : kCheckFailed;
}

}  // namespace speclab::cli
