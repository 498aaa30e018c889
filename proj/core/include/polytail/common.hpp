#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace polytail {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ParameterError : Error {
  using Error::Error;
};
struct DimensionMismatch : Error {
  using Error::Error;
};
struct UnsupportedMoment : Error {
  using Error::Error;
};
struct BudgetExceeded : Error {
  using Error::Error;
};
struct SizeLimit : Error {
  using Error::Error;
};
struct NonFiniteSupport : Error {
  using Error::Error;
};
struct MissingInput : Error {
  using Error::Error;
};
struct KimVuConditionViolated : Error {
  using Error::Error;
};

// Default work caps. Operations take an explicit cap parameter defaulting to
// these; the CLI --budget flag scales them.
namespace budget {
inline constexpr std::size_t kMuSubedges = 10'000'000;       // smoothness::mu
inline constexpr std::size_t kCenterSubedges = 10'000'000;   // moments::center
inline constexpr std::size_t kExpansionProfiles = 10'000'000;// moments::exact_moment_expansion
inline constexpr std::size_t kOracleOutcomes = std::size_t{1} << 24; // moments::enumerate_oracle
inline constexpr std::size_t kCensusRaw = 100'000'000;       // census::enumerate_S2
inline constexpr std::size_t kConvolutionSupport = 1'000'000;// lowerbounds exact tails
inline constexpr std::size_t kPolyTerms = 2'000'000;         // generator term caps
}  // namespace budget

inline constexpr int kDefaultMaxMomentOrder = 64;  // d_max for rv moments

}  // namespace polytail
