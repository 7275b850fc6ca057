// twistcert: build and verify the three-involution certificates for a range
// of genera.

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <cstdint>
#include <fstream>
#include <future>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "twistcert/certificate_json.hpp"
#include "twistcert/certify.hpp"
#include "twistcert/report.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitFailed = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RunConfig {
  std::vector<int> genera;
  std::vector<std::int64_t> primes;
  std::optional<std::string> emit_path;
  int verbosity = 1;  // 0 quiet, 1 normal, 2 verbose
  std::size_t depth_bound = twistcert::kDefaultDepthBound;
};

long long parse_int(std::string_view s, const char* what) {
  long long v = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || end != s.data() + s.size()) {
    throw UsageError(std::string("malformed ") + what + ": '" +
                     std::string(s) + "'");
  }
  return v;
}

std::vector<int> parse_genus_range(const std::string& text) {
  long long lo = 0, hi = 0;
  if (auto dots = text.find(".."); dots != std::string::npos) {
    lo = parse_int(std::string_view(text).substr(0, dots), "genus range");
    hi = parse_int(std::string_view(text).substr(dots + 2), "genus range");
  } else {
    lo = hi = parse_int(text, "genus");
  }
  if (lo > hi) throw UsageError("malformed genus range: '" + text + "'");
  if (lo < 6) throw UsageError("genus must be ≥ 6");
  if (hi > 1000) throw UsageError("genus too large: " + std::to_string(hi));
  std::vector<int> out;
  for (long long g = lo; g <= hi; ++g) out.push_back(static_cast<int>(g));
  return out;
}

std::vector<std::int64_t> parse_primes(const std::string& csv) {
  std::vector<std::int64_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto p = parse_int(item, "prime");
    if (!twistcert::is_prime(p) || p > (std::int64_t{1} << 31)) {
      throw UsageError("not a usable prime: " + item);
    }
    out.push_back(p);
  }
  if (out.empty()) throw UsageError("empty prime list");
  return out;
}

struct GenusRun {
  std::optional<twistcert::Certificate> cert;
  twistcert::Report report;
  std::string error;  // construction failure
};

GenusRun run_genus(int n, const RunConfig& cfg) {
  GenusRun run;
  run.report.genus = n;
  try {
    const twistcert::Genus g(n);
    twistcert::validate_symmetry_formulas(g);
    auto cert = twistcert::build_theorem1(g, cfg.depth_bound);
    run.report = twistcert::verify_certificate(cert, cfg.primes,
                                               cfg.depth_bound);
    twistcert::apply_report(cert, run.report);
    run.cert = std::move(cert);
  } catch (const std::exception& e) {
    run.error = e.what();
  }
  return run;
}

void print_run(const GenusRun& run, const RunConfig& cfg) {
  if (!run.error.empty()) {
    std::cout << "FAIL genus=" << run.report.genus << ": " << run.error
              << '\n';
    return;
  }
  if (cfg.verbosity == 0) {
    const auto text = twistcert::render_report(run.report);
    const auto last = text.find_last_of('\n', text.size() - 2);
    std::cout << text.substr(last == std::string::npos ? 0 : last + 1);
  } else {
    std::cout << twistcert::render_report(run.report);
  }
  if (cfg.verbosity == 2) {
    for (const auto& s : run.report.steps)
      if (!s.detail.empty()) std::cout << "  " << s.name << ": " << s.detail << '\n';
    for (const auto& o : run.cert->outputs)
      std::cout << "  " << o.key << " length " << o.word.size() << '\n';
  }
  if (run.report.ok()) {
    const bool six = run.report.genus == 6;
    std::cout << (six ? "genus6" : "general") << " chain verified; "
              << (six ? "(ρ4F1)² = 1" : "(ρ3F1)² = 1") << '\n';
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Build and verify three-involution generating certificates"};
  std::string genus_text;
  std::string primes_text = "2,3,5";
  std::string emit;
  int depth = static_cast<int>(twistcert::kDefaultDepthBound);
  bool verbose = false, quiet = false;
  app.add_option("--genus", genus_text, "genus n or inclusive range n..m")
      ->required();
  app.add_option("--primes", primes_text, "comma-separated primes")
      ->capture_default_str();
  app.add_option("--emit-certificate", emit, "write JSON certificate(s)");
  app.add_option("--depth-bound", depth, "evaluator pending-stack bound")
      ->capture_default_str();
  auto* v = app.add_flag("--verbose", verbose);
  app.add_flag("--quiet", quiet)->excludes(v);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  RunConfig cfg;
  std::ofstream out;
  try {
    cfg.genera = parse_genus_range(genus_text);
    cfg.primes = parse_primes(primes_text);
    if (depth < 1) throw UsageError("depth bound must be >= 1");
    cfg.depth_bound = static_cast<std::size_t>(depth);
    cfg.verbosity = quiet ? 0 : verbose ? 2 : 1;
    if (!emit.empty()) {
      out.open(emit, std::ios::binary | std::ios::trunc);
      if (!out) throw UsageError("cannot write " + emit);
      cfg.emit_path = emit;
    }
  } catch (const UsageError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  // genera are verified concurrently in batches; output stays in order
  const std::size_t batch =
      std::max(1u, std::thread::hardware_concurrency());
  bool all_ok = true;
  std::vector<twistcert::Certificate> certs;
  for (std::size_t i = 0; i < cfg.genera.size(); i += batch) {
    std::vector<std::future<GenusRun>> jobs;
    for (std::size_t k = i; k < std::min(i + batch, cfg.genera.size()); ++k) {
      jobs.push_back(std::async(std::launch::async, run_genus, cfg.genera[k],
                                std::cref(cfg)));
    }
    for (auto& job : jobs) {
      auto run = job.get();
      print_run(run, cfg);
      all_ok = all_ok && run.error.empty() && run.report.ok();
      if (run.cert) certs.push_back(std::move(*run.cert));
    }
  }

  if (cfg.emit_path) {
    out << twistcert::certificates_to_json(certs);
    if (!out.flush()) {
      std::cerr << "cannot write " << *cfg.emit_path << '\n';
      return kExitUsage;
    }
  }
  return all_ok ? kExitOk : kExitFailed;
}
