#include "rmpf/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <ostream>
#include <thread>

#include "rmpf/error.hpp"

namespace rmpf::analysis {

namespace {

using Clock = std::chrono::steady_clock;

constexpr std::uint64_t kReducedChunk = 256;
constexpr std::uint64_t kNoHit = std::numeric_limits<std::uint64_t>::max();

// The search order is split into rows: one row per lambda in full mode,
// fixed-size chunks of c in reduced mode. Rows are the unit of work handed
// to workers; offsets give every candidate a global 1-based position.
struct SearchPlan {
  SearchMode mode;
  std::uint64_t q;
  std::vector<std::uint64_t> row_offset;  // candidates before row r
  std::uint64_t total = 0;

  SearchPlan(SearchMode m, std::uint64_t exp_mod) : mode(m), q(exp_mod) {
    const std::uint64_t rows =
        mode == SearchMode::kFull ? q - 1
                                  : (q - 1 + kReducedChunk - 1) / kReducedChunk;
    row_offset.reserve(rows + 1);
    for (std::uint64_t r = 0; r < rows; ++r) {
      row_offset.push_back(total);
      total += row_size(r);
    }
    row_offset.push_back(total);
  }

  std::uint64_t rows() const { return row_offset.size() - 1; }

  std::uint64_t row_size(std::uint64_t r) const {
    if (mode == SearchMode::kFull) {
      // omega in [1, q-1] with lambda*omega != 0 mod q: q - gcd(lambda, q).
      return q - std::gcd(r + 1, q);
    }
    const std::uint64_t first = r * kReducedChunk + 1;
    return std::min(kReducedChunk, q - first);
  }
};

struct Hit {
  std::uint64_t position = kNoHit;
  std::uint64_t lambda = 0;
  std::uint64_t omega = 0;
};

class SharedHit {
 public:
  std::uint64_t best() const { return best_.load(std::memory_order_acquire); }

  void offer(const Hit& hit) {
    std::lock_guard lock(mu_);
    if (hit.position < hit_.position) {
      hit_ = hit;
      best_.store(hit.position, std::memory_order_release);
    }
  }

  Hit get() const {
    std::lock_guard lock(mu_);
    return hit_;
  }

 private:
  mutable std::mutex mu_;
  Hit hit_;
  std::atomic<std::uint64_t> best_{kNoHit};
};

// Scans one row; returns the first hit within the budget, if any.
Hit scan_row(const PublicParams& params, const Token& target,
             const SearchPlan& plan, std::uint64_t row, std::uint64_t budget,
             const SharedHit& shared) {
  std::uint64_t position = plan.row_offset[row];
  auto try_candidate = [&](std::uint64_t lambda, std::uint64_t omega) -> bool {
    ++position;
    const Token t =
        make_token(params, PrivateKey::from_scalars(params, lambda, omega));
    return t == target;
  };

  if (plan.mode == SearchMode::kFull) {
    const std::uint64_t lambda = row + 1;
    for (std::uint64_t omega = 1; omega < plan.q; ++omega) {
      if (mod_mul(lambda, omega, plan.q) == 0) continue;
      if (position >= budget || position >= shared.best()) return {};
      if (try_candidate(lambda, omega)) return {position, lambda, omega};
    }
  } else {
    const std::uint64_t first = row * kReducedChunk + 1;
    const std::uint64_t last = first + plan.row_size(row);
    for (std::uint64_t c = first; c < last; ++c) {
      if (position >= budget || position >= shared.best()) return {};
      if (try_candidate(c, 1)) return {position, c, 1};
    }
  }
  return {};
}

}  // namespace

const char* to_string(SearchMode mode) {
  return mode == SearchMode::kFull ? "full" : "reduced";
}

std::uint64_t search_space(const Modulus& mod, SearchMode mode) {
  return SearchPlan(mode, mod.q()).total;
}

AttackResult brute_force_recover(const PublicParams& params,
                                 const Token& target,
                                 const AttackOptions& options) {
  if (!(target.matrix.dims() == params.dims()) ||
      !(target.matrix.modulus() == params.modulus())) {
    throw InvalidArgument("target token does not match the parameters");
  }
  const auto start = Clock::now();
  const SearchPlan plan(options.mode, params.modulus().q());
  SharedHit shared;
  std::atomic<std::uint64_t> next_row{0};

  auto worker = [&] {
    for (;;) {
      const std::uint64_t row = next_row.fetch_add(1);
      if (row >= plan.rows()) return;
      const std::uint64_t offset = plan.row_offset[row];
      if (offset >= options.budget || offset >= shared.best()) return;
      const Hit hit =
          scan_row(params, target, plan, row, options.budget, shared);
      if (hit.position != kNoHit) shared.offer(hit);
    }
  };

  const unsigned workers = std::max(1u, options.workers);
  if (workers == 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned i = 0; i < workers; ++i) pool.emplace_back(worker);
  }

  AttackResult result;
  const Hit hit = shared.get();
  if (hit.position != kNoHit) {
    result.found = true;
    result.lambda = hit.lambda;
    result.omega = hit.omega;
    result.trials = hit.position;
  } else {
    result.trials = std::min(options.budget, plan.total);
  }
  result.elapsed = Clock::now() - start;
  return result;
}

std::vector<CostRow> attack_cost_curve(const std::vector<std::uint64_t>& primes,
                                       Dims dims, std::size_t samples, Rng& rng,
                                       unsigned workers) {
  std::vector<CostRow> rows;
  for (std::uint64_t p : primes) {
    const Modulus mod(p);
    const double span = static_cast<double>(p - 2);
    CostRow row{p, samples, {}, {}};
    row.full.nominal_mean = span * span / 2;
    row.reduced.nominal_mean = span / 2;
    double full_sum = 0;
    double reduced_sum = 0;
    for (std::size_t s = 0; s < samples; ++s) {
      const PublicParams params = setup(mod, dims, rng);
      const PrivateKey secret = gen_private(params, rng);
      const Token target = make_token(params, secret);
      const AttackResult full = brute_force_recover(
          params, target, {SearchMode::kFull, kNoHit, workers});
      const AttackResult reduced = brute_force_recover(
          params, target, {SearchMode::kReduced, kNoHit, workers});
      row.full.found += full.found ? 1 : 0;
      row.reduced.found += reduced.found ? 1 : 0;
      full_sum += static_cast<double>(full.trials);
      reduced_sum += static_cast<double>(reduced.trials);
    }
    if (samples > 0) {
      row.full.mean_trials = full_sum / static_cast<double>(samples);
      row.reduced.mean_trials = reduced_sum / static_cast<double>(samples);
    }
    rows.push_back(row);
  }
  return rows;
}

void write_cost_csv(std::ostream& out, const std::vector<CostRow>& rows) {
  out << "p,samples,full_found,full_mean_trials,full_nominal_mean,"
         "reduced_found,reduced_mean_trials,reduced_nominal_mean\n";
  for (const auto& r : rows) {
    out << r.p << ',' << r.samples << ',' << r.full.found << ','
        << r.full.mean_trials << ',' << r.full.nominal_mean << ','
        << r.reduced.found << ',' << r.reduced.mean_trials << ','
        << r.reduced.nominal_mean << '\n';
  }
}

std::uint64_t factored_modexp_formula(Dims d) {
  return d.n * d.n * d.n + d.m * d.n * d.n;
}

std::uint64_t naive_modexp_formula(Dims d) { return d.m * d.n * d.n * d.n; }

BenchReport bench(const BenchProfile& profile, std::size_t iterations,
                  Rng& rng) {
  if (iterations == 0) throw InvalidArgument("bench needs at least one iteration");
  const PublicParams params = setup(profile.p_bits, profile.dims, rng);
  const PrivateKey alice = gen_private(params, rng);
  const PrivateKey bob = gen_private(params, rng);
  const Token peer = make_token(params, bob);

  BenchReport report{profile.p_bits, params.dims(), iterations, {}, {}, 0, 0};

  reset_modexp_count();
  (void)two_sided_action(alice.a(), params.base(), alice.b());
  report.modexp_factored = modexp_count();
  reset_modexp_count();
  (void)two_sided_action_naive(alice.a(), params.base(), alice.b());
  report.modexp_naive = modexp_count();
  if (report.modexp_factored != factored_modexp_formula(params.dims()) ||
      report.modexp_naive != naive_modexp_formula(params.dims())) {
    throw Error("modexp count disagrees with the cost formula");
  }

  auto median = [](std::vector<std::chrono::nanoseconds> v) {
    std::sort(v.begin(), v.end());
    return v[v.size() / 2];
  };
  std::vector<std::chrono::nanoseconds> token_times;
  std::vector<std::chrono::nanoseconds> derive_times;
  for (std::size_t i = 0; i < iterations; ++i) {
    auto t0 = Clock::now();
    const Token t = make_token(params, alice);
    auto t1 = Clock::now();
    const SharedKey k = derive_key(params, alice, peer);
    auto t2 = Clock::now();
    (void)t;
    (void)k;
    token_times.push_back(t1 - t0);
    derive_times.push_back(t2 - t1);
  }
  report.token_median = median(std::move(token_times));
  report.derive_median = median(std::move(derive_times));
  return report;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchReport>& rows) {
  out << "p_bits,m,n,iterations,token_median_ns,derive_median_ns,"
         "modexp_factored,modexp_naive\n";
  for (const auto& r : rows) {
    out << r.p_bits << ',' << r.dims.m << ',' << r.dims.n << ','
        << r.iterations << ',' << r.token_median.count() << ','
        << r.derive_median.count() << ',' << r.modexp_factored << ','
        << r.modexp_naive << '\n';
  }
}

}  // namespace rmpf::analysis
