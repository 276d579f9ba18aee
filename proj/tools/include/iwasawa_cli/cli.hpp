#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace iwasawa::cli {

struct RunConfig {
  std::string command;
  unsigned p = 0;
  unsigned d = 1;
  std::optional<std::string> chi_file;
  std::optional<long> quadratic;    // fundamental discriminant
  std::optional<long> theta_omega;  // theta = omega^j (delta = j - 1)
  std::optional<long> delta;
  unsigned n = 2;
  unsigned m = 2;
  unsigned m_max = 2;
  std::vector<unsigned> ks;  // interp-check exponents; empty: three defaults
  unsigned threads = 0;
  std::string format = "json";
  std::optional<std::string> out;
  std::uint64_t seed = 0;
};

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitIndeterminate = 2;

struct DispatchResult {
  int exit_code = kExitOk;
  std::string report;  // serialized in the configured format
};

DispatchResult dispatch(const RunConfig& config);

// Parses argv, runs dispatch and writes the report to stdout or --out.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace iwasawa::cli
