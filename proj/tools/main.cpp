// collatz-lab: command-line front end for the collatz_lab library.
//
// Exit codes: 0 ok, 1 verification failure, 2 fuel exhausted / non-halting
// run, 3 input error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <sstream>

#include "collatz_lab/collatz_lab.hpp"

namespace cl = collatz_lab;

namespace {

constexpr int kOk = 0;
constexpr int kVerifyFailed = 1;
constexpr int kFuelExhausted = 2;
constexpr int kInputError = 3;

constexpr std::uint64_t kMaxHotelVertices = std::uint64_t{1} << 20;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::uint32_t depth_limit() {
  const char* env = std::getenv("COLLATZ_LAB_MAX_DEPTH");
  if (env == nullptr || *env == '\0') return cl::kDefaultMaxDepth;
  try {
    return static_cast<std::uint32_t>(std::stoul(env));
  } catch (const std::exception&) {
    throw InputError("COLLATZ_LAB_MAX_DEPTH is not a number: " + std::string(env));
  }
}

int outcome_code(const cl::RunOutcome& o) { return cl::halted(o) ? kOk : kFuelExhausted; }

std::string read_all(const std::string& path) {
  if (path == "-") return {std::istreambuf_iterator<char>(std::cin), {}};
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  return {std::istreambuf_iterator<char>(in), {}};
}

template <class T>
int print_trace(const cl::Trace<T>& trace, const std::string& format) {
  std::cout << (format == "json" ? cl::to_json(trace) + "\n" : cl::to_text(trace));
  return outcome_code(trace.outcome);
}

struct RunArgs {
  std::string algo = "cl";
  std::string domain = "standard";
  std::string n;
  std::string k;
  std::string w = "0/1";
  std::uint64_t fuel = 1'000'000;
  std::string format = "text";
};

int cmd_run(const RunArgs& a) {
  const cl::Algorithm algo = cl::parse_algorithm(a.algo);
  if (a.domain == "standard") {
    if (a.n.empty()) throw InputError("run: --n is required in the standard domain");
    return print_trace(cl::run_algorithm(algo, cl::Nat::parse(a.n), a.fuel), a.format);
  }
  if (a.domain == "jaskowski") {
    if (a.k.empty()) throw InputError("run: --k is required in the jaskowski domain");
    const cl::JElem start = cl::JElem::parse(a.k + "+" + a.w);
    return print_trace(cl::run_algorithm(algo, start, a.fuel), a.format);
  }
  throw InputError("run: unknown domain '" + a.domain + "'");
}

int cmd_certify(const std::string& n, std::uint64_t fuel) {
  const cl::CertifyResult r = cl::certify(cl::Nat::parse(n), fuel);
  if (!r.certificate) {
    std::cerr << "certify: " << cl::describe(r.trace.outcome) << "\n";
    return kFuelExhausted;
  }
  std::cout << cl::to_json(*r.certificate) << "\n";
  return kOk;
}

int cmd_verify_cert(const std::string& path) {
  const cl::Certificate cert = cl::certificate_from_json(read_all(path));
  const cl::VerifyReport report = cl::verify(cert);
  if (report) {
    std::cout << "valid\n";
    return kOk;
  }
  std::cout << "invalid: " << report.failed_clause << "\n";
  return kVerifyFailed;
}

int cmd_reverse(std::uint64_t x, const std::string& y, std::uint64_t z, std::uint64_t fuel) {
  const cl::ReverseRun run = cl::ic_run(x, cl::Nat::parse(y), z, fuel);
  for (const auto& s : run.states) std::cout << cl::to_json(s) << "\n";
  switch (run.status) {
    case cl::ReverseStatus::Reached: return kOk;
    case cl::ReverseStatus::Error: return kVerifyFailed;
    case cl::ReverseStatus::FuelExhausted: return kFuelExhausted;
  }
  return kVerifyFailed;
}

int cmd_tree(std::uint32_t depth, const std::string& format) {
  const cl::GraphFormat f = cl::parse_graph_format(format);
  std::cout << cl::export_tree(cl::build_tree(depth, depth_limit()), f);
  return kOk;
}

int cmd_strata(std::uint64_t max, std::uint64_t bound, const std::string& format) {
  if (format != "csv" && format != "json") throw InputError("strata: unsupported format '" + format + "'");
  const cl::StrataTable table = cl::build_strata_table(max, bound);
  std::cout << (format == "csv" ? cl::strata_csv(table) : cl::strata_json(table) + "\n");
  return table.exceeded.empty() ? kOk : kVerifyFailed;
}

int cmd_hotel(std::uint64_t max, const std::string& format) {
  const cl::GraphFormat f = cl::parse_graph_format(format);
  if (max > kMaxHotelVertices) throw InputError("hotel: --max above " + std::to_string(kMaxHotelVertices));
  std::cout << cl::export_hotel(cl::build_hotel(max), f);
  return kOk;
}

int cmd_sweep(const cl::SweepOptions& options, const std::string& format) {
  const cl::SweepReport report = cl::run_sweep(options);
  if (format == "json") {
    std::cout << cl::to_json(report) << "\n";
  } else {
    std::cout << "range " << report.from << ".." << report.to << "\n";
    for (const auto& t : report.tallies) {
      std::cout << cl::to_string(t.check) << " " << t.passed << "/" << t.checked;
      if (t.first_failure) std::cout << " first_failure=" << *t.first_failure << " (" << t.detail << ")";
      std::cout << "\n";
    }
    std::cout << "max_trajectory_length " << report.max_trajectory_length << " at n=" << report.max_trajectory_n
              << "\n";
  }
  std::cerr << "wall_seconds " << report.wall_seconds << "\n";
  return report.ok() ? kOk : kVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collatz trajectories, halting certificates, reverse walks and strata"};
  app.require_subcommand(1);

  RunArgs run;
  auto* run_cmd = app.add_subcommand("run", "Execute Cl/Gr/Gr1/Gr2/Gr3 and print the trace");
  run_cmd->add_option("--algo", run.algo, "cl | gr | gr1 | gr2 | gr3")->capture_default_str();
  run_cmd->add_option("--domain", run.domain, "standard | jaskowski")->capture_default_str();
  run_cmd->add_option("--n", run.n, "start value (standard domain), decimal");
  run_cmd->add_option("--k", run.k, "integer part k (jaskowski domain)");
  run_cmd->add_option("--w", run.w, "non-negative rational w as p/q (jaskowski domain)")->capture_default_str();
  run_cmd->add_option("--fuel", run.fuel, "primitive step budget")->capture_default_str();
  run_cmd->add_option("--format", run.format, "text | json")->capture_default_str();

  std::string cert_n;
  std::uint64_t cert_fuel = 1'000'000;
  auto* certify_cmd = app.add_subcommand("certify", "Emit the halting certificate of n as JSON");
  certify_cmd->add_option("--n", cert_n, "decimal n >= 1")->required();
  certify_cmd->add_option("--fuel", cert_fuel, "primitive step budget")->capture_default_str();

  std::string verify_path = "-";
  auto* verify_cmd = app.add_subcommand("verify-cert", "Check a certificate JSON (file or '-' for stdin)");
  verify_cmd->add_option("file", verify_path, "certificate file")->capture_default_str();

  std::uint64_t rev_x = 0;
  std::uint64_t rev_z = 0;
  std::string rev_y;
  std::uint64_t rev_fuel = 1'000'000;
  auto* reverse_cmd = app.add_subcommand("reverse", "Run the reverse walk on a triple, one JSON state per line");
  reverse_cmd->add_option("--x", rev_x)->required();
  reverse_cmd->add_option("--y", rev_y, "decimal")->required();
  reverse_cmd->add_option("--z", rev_z)->required();
  reverse_cmd->add_option("--fuel", rev_fuel)->capture_default_str();

  std::uint32_t tree_depth = 5;
  std::string tree_format = "dot";
  auto* tree_cmd = app.add_subcommand("tree", "Export the Collatz tree to a given depth");
  tree_cmd->add_option("--depth", tree_depth)->capture_default_str();
  tree_cmd->add_option("--format", tree_format, "dot | json")->capture_default_str();

  std::uint64_t strata_max = 64;
  std::uint64_t strata_bound = 100000;
  std::string strata_format = "csv";
  auto* strata_cmd = app.add_subcommand("strata", "Stratum table for 1..max");
  strata_cmd->add_option("--max", strata_max)->capture_default_str();
  strata_cmd->add_option("--bound", strata_bound, "largest stratum index searched")->capture_default_str();
  strata_cmd->add_option("--format", strata_format, "csv | json")->capture_default_str();

  std::uint64_t hotel_max = 16;
  std::string hotel_format = "dot";
  auto* hotel_cmd = app.add_subcommand("hotel", "Export the Hotel Collatz graph on 1..max");
  hotel_cmd->add_option("--max", hotel_max)->capture_default_str();
  hotel_cmd->add_option("--format", hotel_format, "dot | json")->capture_default_str();

  std::uint64_t sweep_from = 1;
  std::uint64_t sweep_to = 1000;
  std::uint64_t sweep_fuel = 1'000'000;
  std::string sweep_checks = "all";
  unsigned sweep_jobs = 0;
  std::string sweep_format = "text";
  auto* sweep_cmd = app.add_subcommand("sweep", "Run property checks over a range of n");
  sweep_cmd->add_option("--from", sweep_from)->capture_default_str();
  sweep_cmd->add_option("--to", sweep_to)->capture_default_str();
  sweep_cmd->add_option("--fuel", sweep_fuel)->capture_default_str();
  sweep_cmd->add_option("--checks", sweep_checks, "comma list or 'all'")->capture_default_str();
  sweep_cmd->add_option("--jobs", sweep_jobs, "worker threads, 0 = all cores")->capture_default_str();
  sweep_cmd->add_option("--format", sweep_format, "text | json")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kInputError;
  }

  try {
    if (*run_cmd) return cmd_run(run);
    if (*certify_cmd) return cmd_certify(cert_n, cert_fuel);
    if (*verify_cmd) return cmd_verify_cert(verify_path);
    if (*reverse_cmd) return cmd_reverse(rev_x, rev_y, rev_z, rev_fuel);
    if (*tree_cmd) return cmd_tree(tree_depth, tree_format);
    if (*strata_cmd) return cmd_strata(strata_max, strata_bound, strata_format);
    if (*hotel_cmd) return cmd_hotel(hotel_max, hotel_format);
    if (*sweep_cmd) {
      cl::SweepOptions options;
      options.from = sweep_from;
      options.to = sweep_to;
      options.fuel = sweep_fuel;
      options.checks = cl::parse_checks(sweep_checks);
      options.jobs = sweep_jobs;
      return cmd_sweep(options, sweep_format);
    }
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const cl::PreconditionError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  } catch (const cl::DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kInputError;
}
