#include <algorithm>
#include <cctype>
#include <charconv>
#include <cstdio>
#include <sstream>

#include "speclab/cli.hpp"

namespace speclab::cli {

namespace {

using VT = ValueType;

std::vector<OptionSpec> with_common(std::vector<OptionSpec> specific) {
  specific.push_back({"seed", VT::Seed, "1", "master seed"});
  specific.push_back({"out", VT::Text, "", "output directory (default: $SPECLAB_OUT or ./speclab-out)"});
  return specific;
}

const std::map<std::string, std::vector<OptionSpec>>& tables() {
  static const std::map<std::string, std::vector<OptionSpec>> t = {
      {"spectrum",
       with_common({
           {"potential", VT::Text, "x1^2*x2^2", "potential expression"},
           {"nu", VT::Integer, "2", "dimension (1..3)"},
           {"L", VT::RealList, "6,8", "box half-widths, at least two"},
           {"h", VT::Real, "0.1", "grid spacing"},
           {"k", VT::Integer, "5", "eigenvalues per box (1..30)"},
           {"max-matvecs", VT::Integer, "20000", "Lanczos budget per solve"},
           {"shift-invert", VT::Flag, "true", "Lanczos on H^-1 via sparse LDL^T"},
           {"count-at", VT::RealList, "", "lambda values for N(lambda)"},
           {"gap-threshold", VT::Real, "1", "gap statistic uses eigenvalues >= this"},
           {"gap-count", VT::Integer, "5", "eigenvalues in the gap statistic"},
           {"drift-tol", VT::Real, "0.01", "stabilization threshold"},
           {"levels", VT::RealList, "", "truncation levels min(V,k) on the last box (inf allowed)"},
       })},
      {"sublevel",
       with_common({
           {"potential", VT::Text, "x1^2*x2^2", "potential expression"},
           {"nu", VT::Integer, "2", "dimension (1..3)"},
           {"M", VT::Real, "1", "sublevel M"},
           {"region", VT::Text, "ball", "ball or box"},
           {"center", VT::RealList, "", "region center (default origin)"},
           {"size", VT::RealList, "10", "radius, or box half-widths"},
           {"method", VT::Text, "mc", "mc or grid"},
           {"samples", VT::Integer, "1000000", "Monte Carlo samples or grid cells"},
           {"ell", VT::Real, "1", "local-measure radius"},
           {"point", VT::RealList, "", "point for omega_x^ell"},
           {"direction", VT::RealList, "", "ray for the decay fit"},
           {"distances", VT::RealList, "", "distances along the ray"},
           {"local-samples", VT::Integer, "200000", "samples per local measure"},
           {"growth-radii", VT::RealList, "", "radii for the sampled growth check"},
           {"probes", VT::Integer, "1000", "random probes per sphere"},
       })},
      {"thinness",
       with_common({
           {"potential", VT::Text, "x1^2*x2^2", "potential expression"},
           {"nu", VT::Integer, "2", "dimension (1..3)"},
           {"M", VT::Real, "1", "sublevel M"},
           {"r", VT::Real, "2", "exponent r"},
           {"ell", VT::Real, "1", "local-measure radius"},
           {"radii", VT::RealList, "10,20,40,80", "increasing radii R_j"},
           {"samples", VT::Integer, "200000", "uniform samples per shell"},
           {"inner-samples", VT::Integer, "2000", "samples per omega evaluation"},
           {"max-points", VT::Integer, "400", "omega evaluations per shell"},
       })},
      {"inequalities",
       with_common({
           {"trials", VT::Integer, "500", "random PSD pairs"},
           {"dim", VT::Integer, "8", "largest matrix dimension"},
           {"dim-min", VT::Integer, "2", "smallest matrix dimension"},
           {"wedge", VT::Flag, "true", "include compound-matrix checks"},
           {"trotter-pairs", VT::Integer, "20", "pairs for the Trotter chain (d <= 6)"},
           {"trotter-n", VT::Integer, "12", "Trotter doubling depth (<= 14)"},
       })},
      {"heat-diagnostics",
       with_common({
           {"potential", VT::Text, "x1^2*x2^2", "potential expression"},
           {"nu", VT::Integer, "2", "dimension (1..3)"},
           {"L", VT::Real, "8", "box half-width"},
           {"h", VT::Real, "0.25", "grid spacing"},
           {"s", VT::Real, "1", "heat time"},
           {"M", VT::Real, "1", "mask level for the HS diagnostics"},
           {"m", VT::RealList, "1,4,16", "split levels for C = C_m + D_m"},
           {"R", VT::Real, "5", "truncation radius for F_R"},
           {"n-max", VT::Integer, "40", "compactness proxy length"},
       })},
      {"kernel-power",
       with_common({
           {"potential", VT::Text, "x1^2*x2^2", "potential expression"},
           {"nu", VT::Integer, "2", "dimension (1..3)"},
           {"L", VT::Real, "4", "box half-width"},
           {"h", VT::Real, "0.25", "grid spacing"},
           {"s", VT::Real, "1", "heat time"},
           {"M", VT::Real, "1", "sublevel M"},
           {"R", VT::Real, "1", "radius R"},
           {"r", VT::Real, "2", "thinness exponent r (sets the default k)"},
           {"k", VT::Integer, "0", "power k (0: smallest with 2k-2 > r)"},
       })},
  };
  return t;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

bool parse_real(const std::string& s, double& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const char* begin = t.data();
  if (*begin == '+') ++begin;
  const auto res = std::from_chars(begin, t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

template <typename Int>
bool parse_int(const std::string& s, Int& out) {
  const std::string t = trim(s);
  if (t.empty()) return false;
  const auto res = std::from_chars(t.data(), t.data() + t.size(), out);
  return res.ec == std::errc() && res.ptr == t.data() + t.size();
}

std::vector<std::string> split(const std::string& s, char delim) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : s) {
    if (c == delim) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  parts.push_back(cur);
  return parts;
}

const OptionSpec& spec_for(const std::string& subcommand, const std::string& key) {
  for (const auto& s : options_for(subcommand)) {
    if (s.key == key) return s;
  }
  throw ConfigError("unknown key '" + key + "' for subcommand " + subcommand);
}

}  // namespace

const std::vector<std::string>& subcommands() {
  static const std::vector<std::string> names = {"spectrum",     "sublevel",         "thinness",
                                                 "inequalities", "heat-diagnostics", "kernel-power"};
  return names;
}

const std::vector<OptionSpec>& options_for(const std::string& subcommand) {
  const auto it = tables().find(subcommand);
  if (it == tables().end()) throw ConfigError("unknown subcommand '" + subcommand + "'");
  return it->second;
}

double RunConfig::real(const std::string& key) const {
  double v = 0.0;
  if (!parse_real(text(key), v)) throw ConfigError(key + ": expected a number, got '" + text(key) + "'");
  return v;
}

std::int64_t RunConfig::integer(const std::string& key) const {
  std::int64_t v = 0;
  if (!parse_int(text(key), v)) throw ConfigError(key + ": expected an integer, got '" + text(key) + "'");
  return v;
}

std::uint64_t RunConfig::seed(const std::string& key) const {
  std::uint64_t v = 0;
  if (!parse_int(text(key), v)) throw ConfigError(key + ": expected an unsigned integer, got '" + text(key) + "'");
  return v;
}

const std::string& RunConfig::text(const std::string& key) const {
  const auto it = values.find(key);
  if (it == values.end()) throw ConfigError("missing key '" + key + "'");
  return it->second;
}

std::vector<double> RunConfig::reals(const std::string& key) const {
  std::vector<double> out;
  const std::string t = trim(text(key));
  if (t.empty()) return out;
  for (const auto& part : split(t, ',')) {
    double v = 0.0;
    if (!parse_real(part, v)) throw ConfigError(key + ": expected a comma-separated list of numbers");
    out.push_back(v);
  }
  return out;
}

bool RunConfig::flag(const std::string& key) const {
  const std::string t = trim(text(key));
  if (t == "true" || t == "1" || t == "yes" || t == "on") return true;
  if (t == "false" || t == "0" || t == "no" || t == "off") return false;
  throw ConfigError(key + ": expected true or false, got '" + t + "'");
}

std::string RunConfig::to_text() const {
  std::ostringstream os;
  os << "subcommand = " << subcommand << '\n';
  for (const auto& [k, v] : values) os << k << " = " << v << '\n';
  return os.str();
}

std::map<std::string, std::string> read_config_text(const std::string& text) {
  std::map<std::string, std::string> out;
  std::istringstream in(text);
  std::string line;
  int number = 0;
  while (std::getline(in, line)) {
    ++number;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw ConfigError("config line " + std::to_string(number) + ": expected key = value");
    }
    const std::string key = trim(line.substr(0, eq));
    std::string value = trim(line.substr(eq + 1));
    if (value.size() >= 2 && value.front() == '"' && value.back() == '"') value = value.substr(1, value.size() - 2);
    if (key.empty()) throw ConfigError("config line " + std::to_string(number) + ": empty key");
    if (!out.emplace(key, value).second) throw ConfigError("config key '" + key + "' appears twice");
  }
  return out;
}

void validate(const RunConfig& config) {
  for (const auto& [key, value] : config.values) {
    const OptionSpec& spec = spec_for(config.subcommand, key);
    switch (spec.type) {
      case ValueType::Real: (void)config.real(key); break;
      case ValueType::Integer: (void)config.integer(key); break;
      case ValueType::Seed: (void)config.seed(key); break;
      case ValueType::RealList: (void)config.reals(key); break;
      case ValueType::Flag: (void)config.flag(key); break;
      case ValueType::Text: break;
    }
  }
  for (const auto& spec : options_for(config.subcommand)) {
    if (!config.values.count(spec.key)) throw ConfigError("missing key '" + spec.key + "'");
  }
}

std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

}  // namespace speclab::cli
