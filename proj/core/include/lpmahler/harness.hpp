#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "lpmahler/isotropic.hpp"
#include "lpmahler/sliding.hpp"

namespace lpm {

/// Runs f(0..n-1) over a small thread pool; each index works on independent
/// data, so results are deterministic regardless of scheduling.
void parallel_cases(int n, const std::function<void(int)>& f);

enum class Generator { CIRCLE_HULL, GAUSS_HULL };

struct RandomSpec {
  std::uint64_t seed = 0;
  int vertex_count = 6;  // half count for symmetric bodies
  bool symmetric = false;
  Generator generator = Generator::CIRCLE_HULL;
};

/// Deterministic RNG: a seeded mt19937_64 with hand-rolled uniform/normal
/// draws so streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : eng_(mix(seed)) {}

  double uniform() { return static_cast<double>(eng_() >> 11) * 0x1.0p-53; }
  double uniform(double a, double b) { return a + (b - a) * uniform(); }
  std::uint64_t bits() { return eng_(); }
  std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
  double normal();

  /// Stable substream derivation (seed, k) -> child seed.
  static std::uint64_t derive(std::uint64_t seed, std::uint64_t k);

 private:
  static std::uint64_t mix(std::uint64_t x);
  std::mt19937_64 eng_;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

/// Hull of seeded random points; retries substreams until the requested
/// number of extreme vertices is reached and the aspect ratio (covariance
/// eigenvalue ratio) stays below 50.
Body random_body(const RandomSpec& spec);

struct VerifyFailure {
  std::uint64_t seed;
  std::string detail;
};

struct VerifyReport {
  std::string suite;
  int cases = 0;
  double worst_violation = 0.0;  // negative = inequality broken beyond tolerance
  double tolerance = 0.0;
  std::vector<VerifyFailure> failures;

  bool passed() const { return failures.empty(); }
};

/// Ball's theorem oracle: samples the hypothesis inequality on the
/// exp(-h_p) curves of a symmetric sliding family and the q = 2 conclusion
/// (midpoint convexity of the near norm).
VerifyReport check_ball_hypothesis(const SlidingFamily& fam, double p, int samples,
                                   const QuadConfig& q);

/// Borell-Brascamp-Lieb oracle: midpoint convexity of
/// x2 -> (int dz / f(z,x2)^2)^{-1} for random positive convex test functions.
VerifyReport check_bbl(int samples, std::uint64_t seed = 2024);

/// Named verification suites; see the CLI `verify` command for the list.
VerifyReport run_suite(const std::string& name, int cases, std::uint64_t seed,
                       const QuadConfig& q);

const std::vector<std::string>& suite_names();

}  // namespace lpm
