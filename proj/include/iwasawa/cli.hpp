#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "iwasawa/config.hpp"
#include "iwasawa/invariants.hpp"

namespace iwasawa::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitResourceCap = 3;

inline constexpr const char* kReportSchema = "iwasawa-report/1";

struct Options {
  std::string command;  // invariants, growth, l0, homcount, verify
  std::string law;      // verify only
  std::string config_path;
  std::optional<std::string> out_dir;
  int jobs = 1;
  std::optional<std::uint64_t> seed;
};

const std::vector<std::string>& laws();

// Default case list of a verification law (the acceptance grid).
config::Json default_cases(const std::string& law, std::uint64_t seed);

config::Json report_json(const std::string& command, const std::string& law, std::uint64_t seed,
                         const std::vector<VerifyReport>& reports);

int run(const Options& opt, std::ostream& out, std::ostream& err);

}  // namespace iwasawa::cli
