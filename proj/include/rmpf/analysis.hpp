#pragma once

#include <chrono>
#include <cstdint>
#include <iosfwd>
#include <limits>
#include <vector>

#include "rmpf/kap.hpp"

namespace rmpf::analysis {

/// kFull walks (lambda, omega) over [1, p-2]^2, lambda outer. kReduced
/// exploits that a token depends on the secrets only through
/// lambda * omega mod (p - 1) and walks c over [1, p-2] with omega = 1.
enum class SearchMode { kFull, kReduced };

const char* to_string(SearchMode mode);

struct AttackOptions {
  SearchMode mode = SearchMode::kFull;
  std::uint64_t budget = std::numeric_limits<std::uint64_t>::max();
  unsigned workers = 1;
};

struct AttackResult {
  bool found = false;
  std::uint64_t lambda = 0;
  std::uint64_t omega = 0;
  /// 1-based position of the hit in the search order, or the number of
  /// candidates evaluated when nothing matched.
  std::uint64_t trials = 0;
  std::chrono::nanoseconds elapsed{0};
};

/// Number of candidates the given mode enumerates. Full mode skips pairs
/// with lambda * omega = 0 mod (p - 1), which key generation never emits.
std::uint64_t search_space(const Modulus& mod, SearchMode mode);

/// Exhaustive search for secrets reproducing `target`. Stops at the first
/// hit in the deterministic search order; the result (including trials)
/// does not depend on the worker count.
AttackResult brute_force_recover(const PublicParams& params,
                                 const Token& target,
                                 const AttackOptions& options = {});

struct ModeCost {
  std::size_t found = 0;
  double mean_trials = 0;
  /// (p-2)^2 / 2 for kFull, (p-2) / 2 for kReduced: the mean for a
  /// uniformly placed unique preimage.
  double nominal_mean = 0;
};

/// One prime, both search modes.
struct CostRow {
  std::uint64_t p;
  std::size_t samples;
  ModeCost full;
  ModeCost reduced;
};

/// For each prime, draws `samples` random instances (params plus a
/// gen_private key) and records mean trials-to-recovery in both modes.
std::vector<CostRow> attack_cost_curve(const std::vector<std::uint64_t>& primes,
                                       Dims dims, std::size_t samples, Rng& rng,
                                       unsigned workers = 1);

void write_cost_csv(std::ostream& out, const std::vector<CostRow>& rows);

struct BenchProfile {
  unsigned p_bits = 64;
  Dims dims{5, 3};
};

struct BenchReport {
  unsigned p_bits;
  Dims dims;
  std::size_t iterations;
  std::chrono::nanoseconds token_median;
  std::chrono::nanoseconds derive_median;
  std::uint64_t modexp_factored;  // counted in one two-sided action
  std::uint64_t modexp_naive;
};

/// n^3 + m*n^2
std::uint64_t factored_modexp_formula(Dims dims);
/// m*n^3
std::uint64_t naive_modexp_formula(Dims dims);

/// Median make_token / derive_key timings plus instrumented modexp counts.
/// Throws Error if a count disagrees with its formula.
BenchReport bench(const BenchProfile& profile, std::size_t iterations,
                  Rng& rng);

void write_bench_csv(std::ostream& out, const std::vector<BenchReport>& rows);

}  // namespace rmpf::analysis
