// Command-line front end: parameter generation, offline demo, networked
// handshake, reference-vector replay, brute-force attack and benchmark.
//
// Exit codes: 0 ok, 2 usage, 3 I/O or parse, 4 protocol or network,
// 5 verification mismatch.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "rmpf/analysis.hpp"
#include "rmpf/error.hpp"
#include "rmpf/hex.hpp"
#include "rmpf/kap.hpp"
#include "rmpf/toy_example.hpp"
#include "rmpf/wire.hpp"

namespace {

using json = nlohmann::json;
using namespace rmpf;

enum ExitCode : int {
  kOk = 0,
  kUsage = 2,
  kIo = 3,
  kNetwork = 4,
  kMismatch = 5,
};

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Largest primes each attack mode will exhaust.
constexpr std::uint64_t kMaxFullSearchP = 1 << 13;
constexpr std::uint64_t kMaxReducedSearchP = 1 << 24;

struct Options {
  unsigned p_bits = 64;
  std::size_t rows = 5;
  std::size_t cols = 3;
  std::string dims;
  std::string seed;
  std::string params_path;
  std::string out_path;
  std::string host = "127.0.0.1";
  std::uint16_t port = 7420;
  int timeout_ms = 10'000;
  std::string format = "text";
  std::string mode = "full";
  std::size_t samples = 1;
  std::vector<std::uint64_t> primes;
  bool armor = false;
  bool toy = false;
  bool insecure_print_key = false;
  bool curve = false;
  std::size_t sessions = 0;
  unsigned workers = 1;
  std::size_t iterations = 101;
  std::string tamper_cell;
};

Dims resolve_dims(const Options& o) {
  std::size_t m = o.rows;
  std::size_t n = o.cols;
  if (!o.dims.empty()) {
    const auto x = o.dims.find('x');
    if (x == std::string::npos) throw UsageError("--dims expects ROWSxCOLS");
    try {
      m = std::stoul(o.dims.substr(0, x));
      n = std::stoul(o.dims.substr(x + 1));
    } catch (const std::exception&) {
      throw UsageError("--dims expects ROWSxCOLS");
    }
  }
  try {
    return Dims::checked(m, n);
  } catch (const InvalidArgument& e) {
    throw UsageError(e.what());
  }
}

Rng make_rng(const Options& o) {
  std::string hex = o.seed;
  if (hex.empty()) {
    if (const char* env = std::getenv("RMPF_SEED")) hex = env;
  }
  if (hex.empty()) return Rng::from_entropy();
  const auto seed = parse_seed(hex);
  if (!seed) throw UsageError("seed must be 64 hex digits (32 bytes)");
  return Rng(*seed);
}

Bytes read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  return Bytes(std::istreambuf_iterator<char>(in), {});
}

void write_file(const std::string& path, std::span<const std::uint8_t> data) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data.data()),
            static_cast<std::streamsize>(data.size()));
  if (!out) throw IoError("cannot write " + path);
}

PublicParams load_params_file(const std::string& path) {
  const Bytes data = read_file(path);
  try {
    return load_params(data);
  } catch (const Error& e) {
    throw IoError(path + ": " + e.what());
  }
}

json matrix_json(const detail::MatrixStorage& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.dims().m; ++i) {
    json r = json::array();
    for (std::size_t j = 0; j < m.dims().n; ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

void print_matrix(std::ostream& out, const std::string& name,
                  const detail::MatrixStorage& m) {
  out << name << ":\n";
  for (std::size_t i = 0; i < m.dims().m; ++i) {
    out << " ";
    for (std::size_t j = 0; j < m.dims().n; ++j) out << ' ' << m(i, j);
    out << '\n';
  }
}

std::string key_fingerprint(const SessionKey& key) {
  return to_hex(Sha256::hash(key));
}

// ---- gen-params ----------------------------------------------------------

int cmd_gen_params(const Options& o) {
  const Dims dims = resolve_dims(o);
  if (o.p_bits < 8 || o.p_bits > 64) throw UsageError("--p-bits must be in [8, 64]");
  Rng rng = make_rng(o);
  const PublicParams params = setup(o.p_bits, dims, rng);
  const std::string fp = to_hex(params_fingerprint(params));

  if (!o.out_path.empty()) {
    if (o.armor) {
      const std::string text = armor_params(params);
      write_file(o.out_path, std::span(reinterpret_cast<const std::uint8_t*>(
                                           text.data()),
                                       text.size()));
    } else {
      write_file(o.out_path, encode_params(params));
    }
  }

  if (o.format == "json") {
    json j{{"p", params.modulus().p()},
           {"rows", dims.m},
           {"cols", dims.n},
           {"fingerprint", fp}};
    if (o.out_path.empty()) j["params"] = armor_params(params);
    std::cout << j.dump(2) << '\n';
  } else {
    if (o.out_path.empty()) std::cout << armor_params(params);
    std::cout << "p = " << params.modulus().p() << '\n'
              << "dims = " << dims.m << 'x' << dims.n << '\n'
              << "fingerprint: " << fp << '\n';
  }
  return kOk;
}

// ---- vectors ---------------------------------------------------------------

toy::Fixture tampered_fixture(const std::string& cell) {
  toy::Fixture f = toy::fixture();
  if (cell.empty()) return f;
  std::istringstream in(cell);
  std::string name, row, col;
  if (!std::getline(in, name, ':') || !std::getline(in, row, ':') ||
      !std::getline(in, col)) {
    throw UsageError("--tamper-cell expects NAME:ROW:COL");
  }
  const std::map<std::string, toy::Grid*> grids{
      {"A1", &f.a1},         {"B1", &f.b1},         {"TokenA", &f.token_a},
      {"A2", &f.a2},         {"B2", &f.b2},         {"TokenB", &f.token_b},
      {"KeyA", &f.key_a},    {"KeyB", &f.key_b}};
  const auto it = grids.find(name);
  if (it == grids.end()) throw UsageError("unknown matrix " + name);
  const std::size_t r = std::stoul(row);
  const std::size_t c = std::stoul(col);
  if (r < 1 || r > toy::kRows || c < 1 || c > toy::kCols) {
    throw UsageError("cell out of range");
  }
  (*it->second)[(r - 1) * toy::kCols + (c - 1)] += 1;
  return f;
}

int report_checks(const std::vector<toy::CellCheck>& checks,
                  const std::string& format, bool verbose) {
  std::size_t failures = 0;
  json cells = json::array();
  for (const auto& c : checks) {
    if (!c.ok()) ++failures;
    if (format == "json") {
      cells.push_back({{"figure", c.figure},
                       {"row", c.row},
                       {"col", c.col},
                       {"expected", c.expected},
                       {"actual", c.actual},
                       {"ok", c.ok()}});
    } else if (verbose || !c.ok()) {
      std::cout << c.figure << " (" << c.row << ',' << c.col << "): ";
      if (c.ok()) {
        std::cout << c.actual << " OK\n";
      } else {
        std::cout << "expected " << c.expected << ", got " << c.actual
                  << " MISMATCH\n";
      }
    }
  }
  if (format == "json") {
    std::cout << json{{"cells", cells},
                      {"checked", checks.size()},
                      {"failures", failures},
                      {"result", failures == 0 ? "PASS" : "FAIL"}}
                     .dump(2)
              << '\n';
  } else {
    std::cout << checks.size() - failures << '/' << checks.size()
              << " cells OK: " << (failures == 0 ? "PASS" : "FAIL") << '\n';
  }
  return failures == 0 ? kOk : kMismatch;
}

int cmd_vectors(const Options& o) {
  const toy::Fixture f = tampered_fixture(o.tamper_cell);
  return report_checks(toy::verify(f), o.format, true);
}

// ---- demo ------------------------------------------------------------------

int cmd_demo(const Options& o) {
  if (o.toy == !o.params_path.empty()) {
    throw UsageError("demo needs exactly one of --toy or --params");
  }
  Rng rng = make_rng(o);
  const PublicParams params = o.toy ? toy::params() : load_params_file(o.params_path);

  const PrivateKey alice =
      o.toy ? PrivateKey::from_scalars(params, toy::fixture().lambda_a,
                                       toy::fixture().omega_a)
            : gen_private(params, rng);
  const PrivateKey bob =
      o.toy ? PrivateKey::from_scalars(params, toy::fixture().lambda_b,
                                       toy::fixture().omega_b)
            : gen_private(params, rng);
  const Token ta = make_token(params, alice);
  const Token tb = make_token(params, bob);
  const SharedKey ka = derive_key(params, alice, tb);
  const SharedKey kb = derive_key(params, bob, ta);
  const bool equal = ka.matrix == kb.matrix && ka.session_key == kb.session_key;

  std::vector<toy::CellCheck> checks;
  if (o.toy) checks = toy::verify();
  const bool cells_ok = std::all_of(checks.begin(), checks.end(),
                                    [](const auto& c) { return c.ok(); });
  const bool pass = equal && cells_ok;

  if (o.format == "json") {
    json j{{"p", params.modulus().p()},
           {"rows", params.dims().m},
           {"cols", params.dims().n},
           {"token_a", matrix_json(ta.matrix)},
           {"token_b", matrix_json(tb.matrix)},
           {"key_a", matrix_json(ka.matrix)},
           {"key_b", matrix_json(kb.matrix)},
           {"session_key_fingerprint", key_fingerprint(ka.session_key)},
           {"key_equality", equal ? "PASS" : "FAIL"}};
    if (o.toy) j["reference_cells"] = cells_ok ? "PASS" : "FAIL";
    j["result"] = pass ? "PASS" : "FAIL";
    std::cout << j.dump(2) << '\n';
  } else {
    std::cout << "p = " << params.modulus().p() << '\n'
              << "dims = " << params.dims().m << 'x' << params.dims().n << '\n';
    print_matrix(std::cout, "TokenA", ta.matrix);
    print_matrix(std::cout, "TokenB", tb.matrix);
    print_matrix(std::cout, "KeyA", ka.matrix);
    print_matrix(std::cout, "KeyB", kb.matrix);
    std::cout << "session key fingerprint: " << key_fingerprint(ka.session_key)
              << '\n'
              << "key equality: " << (equal ? "PASS" : "FAIL") << '\n';
    if (o.toy) {
      std::cout << "reference cells: " << (cells_ok ? "PASS" : "FAIL") << '\n';
      if (!cells_ok) report_checks(checks, "text", false);
    }
    std::cout << (pass ? "PASS" : "FAIL") << '\n';
  }
  return pass ? kOk : kMismatch;
}

// ---- serve / connect -------------------------------------------------------

void print_session(const Options& o, const std::string& who,
                   const SharedKey& key, std::mutex& out_mu) {
  std::lock_guard lock(out_mu);
  if (o.format == "json") {
    json j{{"session", who}, {"fingerprint", key_fingerprint(key.session_key)}};
    if (o.insecure_print_key) j["session_key"] = to_hex(key.session_key);
    std::cout << j.dump() << std::endl;
  } else {
    std::cout << who << " fingerprint: " << key_fingerprint(key.session_key)
              << '\n';
    if (o.insecure_print_key) {
      std::cout << who << " session key: " << to_hex(key.session_key) << '\n';
    }
    std::cout.flush();
  }
}

int cmd_serve(const Options& o) {
  Rng rng = make_rng(o);
  wire::SessionConfig config;
  config.timeout = std::chrono::milliseconds(o.timeout_ms);
  if (!o.params_path.empty()) config.pinned_params = load_params_file(o.params_path);

  TcpListener listener(o.host, o.port);
  std::mutex out_mu;
  {
    std::lock_guard lock(out_mu);
    if (o.format == "json") {
      std::cout << json{{"listening", o.host}, {"port", listener.port()}}.dump()
                << std::endl;
    } else {
      std::cout << "listening on " << o.host << ':' << listener.port()
                << std::endl;
    }
  }

  std::atomic<int> failures{0};
  std::vector<std::jthread> sessions;
  for (std::size_t k = 0; o.sessions == 0 || k < o.sessions; ++k) {
    auto conn = listener.accept();
    sessions.emplace_back([&, k, session_rng = rng.fork(),
                           c = std::move(conn)]() mutable {
      const std::string who = "session " + std::to_string(k + 1);
      try {
        const SharedKey key = wire::run_responder(*c, session_rng, config);
        print_session(o, who, key, out_mu);
      } catch (const Error& e) {
        ++failures;
        std::lock_guard lock(out_mu);
        std::cerr << who << " failed: " << e.what() << std::endl;
      }
    });
  }
  sessions.clear();
  return failures == 0 ? kOk : kNetwork;
}

int cmd_connect(const Options& o) {
  const Dims dims = resolve_dims(o);
  if (o.p_bits < 8 || o.p_bits > 64) throw UsageError("--p-bits must be in [8, 64]");
  Rng rng = make_rng(o);
  const PublicParams params = o.params_path.empty()
                                  ? setup(o.p_bits, dims, rng)
                                  : load_params_file(o.params_path);
  wire::SessionConfig config;
  config.timeout = std::chrono::milliseconds(o.timeout_ms);
  auto conn = tcp_connect(o.host, o.port, config.timeout);
  const SharedKey key = wire::run_initiator(*conn, params, rng, config);
  std::mutex out_mu;
  print_session(o, "initiator", key, out_mu);
  return kOk;
}

// ---- attack / bench ------------------------------------------------------

analysis::SearchMode parse_mode(const std::string& mode) {
  if (mode == "full") return analysis::SearchMode::kFull;
  if (mode == "reduced") return analysis::SearchMode::kReduced;
  throw UsageError("--mode must be full or reduced");
}

std::ostream& output_stream(const Options& o, std::ofstream& file) {
  if (o.out_path.empty()) return std::cout;
  file.open(o.out_path, std::ios::trunc);
  if (!file) throw IoError("cannot write " + o.out_path);
  return file;
}

int cmd_attack(const Options& o) {
  const Dims dims = resolve_dims(o);
  if (o.primes.empty()) throw UsageError("attack needs --p");
  const analysis::SearchMode mode = parse_mode(o.mode);
  for (std::uint64_t p : o.primes) {
    try {
      (void)Modulus(p);
    } catch (const InvalidModulus& e) {
      throw UsageError(e.what());
    }
    const bool full_needed = o.curve || mode == analysis::SearchMode::kFull;
    if (full_needed && p > kMaxFullSearchP) {
      throw UsageError("p = " + std::to_string(p) +
                       " is too large to exhaust in full mode (limit " +
                       std::to_string(kMaxFullSearchP) +
                       "); use --mode reduced or a smaller prime");
    }
    if (p > kMaxReducedSearchP) {
      throw UsageError("p = " + std::to_string(p) +
                       " is too large to exhaust (limit " +
                       std::to_string(kMaxReducedSearchP) + ")");
    }
  }
  Rng rng = make_rng(o);
  std::ofstream file;
  std::ostream& out = output_stream(o, file);

  if (o.curve) {
    const auto rows = analysis::attack_cost_curve(o.primes, dims, o.samples, rng,
                                                  o.workers);
    if (o.format == "json") {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"p", r.p},
                       {"samples", r.samples},
                       {"full_found", r.full.found},
                       {"full_mean_trials", r.full.mean_trials},
                       {"full_nominal_mean", r.full.nominal_mean},
                       {"reduced_found", r.reduced.found},
                       {"reduced_mean_trials", r.reduced.mean_trials},
                       {"reduced_nominal_mean", r.reduced.nominal_mean}});
      }
      out << arr.dump(2) << '\n';
    } else {
      analysis::write_cost_csv(out, rows);
    }
    return kOk;
  }

  json records = json::array();
  if (o.format != "json") {
    out << "sample,p,m,n,mode,found,lambda,omega,trials,secret_lambda,"
           "secret_omega,elapsed_us\n";
  }
  bool all_found = true;
  std::size_t sample = 0;
  for (std::uint64_t p : o.primes) {
    for (std::size_t s = 0; s < o.samples; ++s, ++sample) {
      const PublicParams params = setup(Modulus(p), dims, rng);
      const PrivateKey secret = gen_private(params, rng);
      const Token target = make_token(params, secret);
      const auto r = analysis::brute_force_recover(
          params, target, {mode, ~std::uint64_t{0}, o.workers});
      all_found = all_found && r.found;
      const auto us =
          std::chrono::duration_cast<std::chrono::microseconds>(r.elapsed).count();
      if (o.format == "json") {
        records.push_back({{"sample", sample + 1},
                           {"p", p},
                           {"m", dims.m},
                           {"n", dims.n},
                           {"mode", analysis::to_string(mode)},
                           {"found", r.found},
                           {"lambda", r.lambda},
                           {"omega", r.omega},
                           {"trials", r.trials},
                           {"secret_lambda", secret.lambda()},
                           {"secret_omega", secret.omega()},
                           {"elapsed_us", us}});
      } else {
        out << sample + 1 << ',' << p << ',' << dims.m << ',' << dims.n << ','
            << analysis::to_string(mode) << ',' << (r.found ? 1 : 0) << ','
            << r.lambda << ',' << r.omega << ',' << r.trials << ','
            << secret.lambda() << ',' << secret.omega() << ',' << us << '\n';
      }
    }
  }
  if (o.format == "json") out << records.dump(2) << '\n';
  return all_found ? kOk : kMismatch;
}

int cmd_bench(const Options& o) {
  const Dims dims = resolve_dims(o);
  if (o.p_bits < 8 || o.p_bits > 64) throw UsageError("--p-bits must be in [8, 64]");
  if (o.iterations == 0) throw UsageError("--iterations must be positive");
  Rng rng = make_rng(o);
  const auto report = analysis::bench({o.p_bits, dims}, o.iterations, rng);
  std::ofstream file;
  std::ostream& out = output_stream(o, file);
  if (o.format == "json") {
    out << json{{"p_bits", report.p_bits},
                {"m", report.dims.m},
                {"n", report.dims.n},
                {"iterations", report.iterations},
                {"token_median_ns", report.token_median.count()},
                {"derive_median_ns", report.derive_median.count()},
                {"modexp_factored", report.modexp_factored},
                {"modexp_naive", report.modexp_naive}}
                .dump(2)
        << '\n';
  } else {
    analysis::write_bench_csv(out, {report});
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rectangular matrix power function key agreement"};
  app.require_subcommand(1);
  Options o;

  auto add_dims = [&](CLI::App* sub) {
    sub->add_option("--rows", o.rows, "Matrix rows m (m > n)");
    sub->add_option("--cols", o.cols, "Matrix columns n");
  };
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", o.seed,
                    "32-byte hex seed (falls back to $RMPF_SEED, then entropy)");
  };
  auto add_format = [&](CLI::App* sub, std::vector<std::string> allowed) {
    sub->add_option("--format", o.format, "Output format")
        ->check(CLI::IsMember(allowed));
  };

  auto* gen = app.add_subcommand("gen-params", "Generate public parameters");
  gen->add_option("--p-bits", o.p_bits, "Prime size in bits [8, 64]");
  add_dims(gen);
  add_seed(gen);
  gen->add_option("--out", o.out_path, "Parameter file (binary blob)");
  gen->add_flag("--armor", o.armor, "Write the hex-armored text form");
  add_format(gen, {"text", "json"});

  auto* demo = app.add_subcommand("demo", "Run both roles in-process");
  demo->add_flag("--toy", o.toy, "Use the embedded 104729 / 5x3 example");
  demo->add_option("--params", o.params_path, "Parameter file");
  add_seed(demo);
  add_format(demo, {"text", "json"});

  auto* serve = app.add_subcommand("serve", "Responder: accept handshakes");
  serve->add_option("--host", o.host, "Listen address");
  serve->add_option("--port", o.port, "Listen port (0 = ephemeral)");
  serve->add_option("--params", o.params_path,
                    "Only accept this parameter set");
  serve->add_option("--sessions", o.sessions,
                    "Exit after this many sessions (0 = run forever)");
  serve->add_option("--timeout-ms", o.timeout_ms, "Per-read timeout");
  serve->add_flag("--insecure-print-key", o.insecure_print_key,
                  "Also print the raw session key");
  add_seed(serve);
  add_format(serve, {"text", "json"});

  auto* connect = app.add_subcommand("connect", "Initiator: run one handshake");
  connect->add_option("--host", o.host, "Responder host");
  connect->add_option("--port", o.port, "Responder port");
  connect->add_option("--params", o.params_path,
                      "Parameter file (default: generate fresh parameters)");
  connect->add_option("--p-bits", o.p_bits, "Prime size for fresh parameters");
  add_dims(connect);
  connect->add_option("--timeout-ms", o.timeout_ms, "Connect/read timeout");
  connect->add_flag("--insecure-print-key", o.insecure_print_key,
                    "Also print the raw session key");
  add_seed(connect);
  add_format(connect, {"text", "json"});

  auto* vectors = app.add_subcommand("vectors", "Replay the embedded example");
  add_format(vectors, {"text", "json"});
  vectors->add_option("--tamper-cell", o.tamper_cell,
                      "Test mode: perturb NAME:ROW:COL before checking")
      ->group("Testing");

  auto* attack = app.add_subcommand("attack", "Brute-force secret recovery");
  attack->footer(
      "CSV columns: sample,p,m,n,mode,found,lambda,omega,trials,"
      "secret_lambda,secret_omega,elapsed_us\n"
      "With --curve: p,samples,full_found,full_mean_trials,full_nominal_mean,"
      "reduced_found,reduced_mean_trials,reduced_nominal_mean");
  attack->add_option("--p", o.primes, "Prime(s) to attack")->delimiter(',');
  attack->add_option("--dims", o.dims, "Shape as ROWSxCOLS");
  attack->add_option("--rows", o.rows, "Matrix rows m");
  attack->add_option("--cols", o.cols, "Matrix columns n");
  attack->add_option("--mode", o.mode, "full or reduced");
  attack->add_option("--samples", o.samples, "Random instances per prime");
  attack->add_option("--workers", o.workers, "Search threads");
  attack->add_flag("--curve", o.curve, "Mean-trials table for both modes");
  attack->add_option("--out", o.out_path, "CSV destination (default stdout)");
  add_seed(attack);
  add_format(attack, {"csv", "json"});

  auto* bench = app.add_subcommand("bench", "Time token and key computation");
  bench->footer(
      "CSV columns: p_bits,m,n,iterations,token_median_ns,derive_median_ns,"
      "modexp_factored,modexp_naive");
  bench->add_option("--p-bits", o.p_bits, "Prime size in bits [8, 64]");
  add_dims(bench);
  bench->add_option("--iterations", o.iterations, "Timed repetitions");
  bench->add_option("--out", o.out_path, "CSV destination (default stdout)");
  add_seed(bench);
  add_format(bench, {"csv", "json"});

  // attack and bench default to small shapes and CSV output.
  const std::string first = argc > 1 ? argv[1] : "";
  if (first == "attack") {
    o.rows = 3;
    o.cols = 2;
    o.format = "csv";
  } else if (first == "bench") {
    o.format = "csv";
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen) return cmd_gen_params(o);
    if (*demo) return cmd_demo(o);
    if (*serve) return cmd_serve(o);
    if (*connect) return cmd_connect(o);
    if (*vectors) return cmd_vectors(o);
    if (*attack) return cmd_attack(o);
    if (*bench) return cmd_bench(o);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kIo;
  } catch (const ProtocolError& e) {
    std::cerr << "protocol error: " << e.what() << '\n';
    return kNetwork;
  } catch (const ConnectionError& e) {
    std::cerr << "network error: " << e.what() << '\n';
    return kNetwork;
  } catch (const Mismatch& e) {
    std::cerr << "mismatch: " << e.what() << '\n';
    return kMismatch;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
