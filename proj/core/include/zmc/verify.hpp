#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "zmc/report.hpp"

// Named invariant checks over chebyshev, weierstrass, extension and analysis.

namespace zmc::verify {

// mt19937_64; uniform doubles are (x >> 11) * 2^-53, so sample sets are
// reproducible from the seed in any language with the same generator.
class SampleRng {
 public:
  explicit SampleRng(std::uint64_t seed);
  std::uint64_t next();
  double uniform();                  // [0, 1)
  double uniform(double a, double b);  // [a, b)
  int integer(int lo, int hi);       // [lo, hi]

 private:
  std::mt19937_64 engine_;
};

inline constexpr const char* kPrngName = "mt19937_64, uniform = (x >> 11) * 2^-53";

std::uint64_t fnv1a(const std::string& s);

struct VerifyConfig {
  int n = 3;
  std::uint64_t seed = 42;
  std::map<std::string, double> tolerance_overrides;
};

struct CheckContext {
  int n;
  double tolerance;
  SampleRng& rng;
};

struct CheckSpec {
  std::string name;
  std::string module;
  double default_tolerance;
  int min_n;  // checks needing a larger n are recorded as skipped
  std::function<std::vector<CheckRecord>(CheckContext&)> run;
};

const std::vector<CheckSpec>& registry();
const CheckSpec* find_check(const std::string& name);

// Runs one check; the RNG is seeded with seed ^ fnv1a(name).
std::vector<CheckRecord> run_check(const CheckSpec& spec, const VerifyConfig& cfg);

// Runs every registered check. Unknown override names throw InvalidArgument.
VerificationReport run_verify(const VerifyConfig& cfg);

}  // namespace zmc::verify
