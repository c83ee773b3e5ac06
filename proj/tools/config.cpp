#include "config.hpp"

#include <cstdlib>
#include <fstream>
#include <sstream>

namespace vortwave::cli {

namespace {

std::string trim(const std::string &s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

RunConfig RunConfig::load(const std::filesystem::path &file) {
  std::ifstream in(file);
  if (!in) throw UsageError("cannot read config file " + file.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str(), file.string());
}

RunConfig RunConfig::parse(const std::string &text, const std::string &origin) {
  RunConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw UsageError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    if (key.empty()) throw UsageError(origin + ":" + std::to_string(lineno) + ": empty key");
    c.kv_[key] = trim(line.substr(eq + 1));
  }
  return c;
}

std::optional<std::string> RunConfig::str(const std::string &key) const {
  auto it = kv_.find(key);
  if (it == kv_.end()) return std::nullopt;
  return it->second;
}

double parse_double(const std::string &s, const std::string &what) {
  std::size_t pos = 0;
  double v;
  try {
    v = std::stod(s, &pos);
  } catch (const std::exception &) {
    throw UsageError(what + ": not a number: '" + s + "'");
  }
  if (pos != s.size()) throw UsageError(what + ": trailing characters in '" + s + "'");
  return v;
}

std::vector<double> parse_list(const std::string &s, const std::string &what) {
  std::vector<double> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(trim(item), what));
  if (out.empty()) throw UsageError(what + ": empty list");
  return out;
}

std::optional<double> RunConfig::num(const std::string &key) const {
  auto s = str(key);
  if (!s) return std::nullopt;
  return parse_double(*s, key);
}

std::optional<long> RunConfig::integer(const std::string &key) const {
  auto s = str(key);
  if (!s) return std::nullopt;
  std::size_t pos = 0;
  long v;
  try {
    v = std::stol(*s, &pos);
  } catch (const std::exception &) {
    throw UsageError(key + ": not an integer: '" + *s + "'");
  }
  if (pos != s->size()) throw UsageError(key + ": not an integer: '" + *s + "'");
  return v;
}

std::optional<std::vector<double>> RunConfig::list(const std::string &key) const {
  auto s = str(key);
  if (!s) return std::nullopt;
  return parse_list(*s, key);
}

std::filesystem::path output_root(const std::optional<std::string> &flag, const RunConfig &cfg) {
  if (flag) return *flag;
  if (const char *env = std::getenv("VORTWAVE_OUT"); env && *env) return env;
  if (auto o = cfg.str("out")) return *o;
  return "vortwave_out";
}

}  // namespace vortwave::cli
