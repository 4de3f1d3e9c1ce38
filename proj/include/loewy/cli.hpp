#pragma once

#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "loewy/rootsys.hpp"

namespace loewy::cli {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct RunConfig {
  std::string subcommand;  // roots, kl, phat, q, loewy, check, oracle
  std::string check = "all";
  std::string type;
  std::vector<int> I;  // 0-based
  std::optional<Weight> lambda;
  std::optional<Weight> mu;
  std::optional<std::string> alcove;  // alternative to lambda: the weight x.0 of the alcove x
  std::optional<std::string> x;
  std::optional<std::string> y;
  long long p = 0;
  std::string format = "text";
  std::string cache_dir;
  bool no_cache = false;
  int max_depth = 8;
  long long window_cap = 0;  // 0: unlimited

  bool operator==(const RunConfig&) const = default;
  /// Argument vector (without program name) that parses back to this config.
  std::vector<std::string> to_args() const;
  /// to_args() joined by spaces, with quoting where needed.
  std::string canonical() const;
};

/// Throws UsageError; `help` is set instead when --help was requested.
RunConfig parse_args(const std::vector<std::string>& args, std::string* help = nullptr);
RunConfig parse_canonical(const std::string& text);

/// Exit code 0 on success, 1 on a failed mathematical contract (with a JSON
/// failure record on `err`), 2 on a usage error.
int run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int main_entry(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

Weight parse_weight(const std::string& text);
/// "1,2" -> {0, 1}; empty text gives the empty subset.
std::vector<int> parse_subset(const std::string& text);

}  // namespace loewy::cli
