#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace vortwave::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// key=value settings. Blank lines and '#' comments are ignored.
class RunConfig {
 public:
  static RunConfig load(const std::filesystem::path &file);
  static RunConfig parse(const std::string &text, const std::string &origin = "<string>");

  void set(const std::string &key, const std::string &value) { kv_[key] = value; }
  bool has(const std::string &key) const { return kv_.count(key) != 0; }

  std::optional<std::string> str(const std::string &key) const;
  std::optional<double> num(const std::string &key) const;
  std::optional<long> integer(const std::string &key) const;
  std::optional<std::vector<double>> list(const std::string &key) const;

 private:
  std::map<std::string, std::string> kv_;
};

double parse_double(const std::string &s, const std::string &what);
std::vector<double> parse_list(const std::string &s, const std::string &what);

/// Output root: --out, then VORTWAVE_OUT, then the config key `out`, then ./vortwave_out.
std::filesystem::path output_root(const std::optional<std::string> &flag, const RunConfig &cfg);

}  // namespace vortwave::cli
