// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fail.

#include <chrono>
#include <fstream>
#include <functional>
#include <iostream>
#include <iterator>
#include <map>
#include <random>
#include <sstream>

#include "cli_runner.hpp"
#include "collatz_lab/collatz_lab.hpp"

using namespace collatz_lab;

namespace {

struct Verdict {
  bool pass = false;
  std::string detail;
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string fmt_seconds(double s) {
  std::ostringstream o;
  o.precision(3);
  o << std::fixed << s << "s";
  return o.str();
}

std::vector<std::string> rendered(const std::vector<JElem>& xs, std::size_t count) {
  std::vector<std::string> out;
  for (std::size_t i = 0; i < count && i < xs.size(); ++i) out.push_back(xs[i].str());
  return out;
}

std::string first_sweep_failure(const SweepReport& r) {
  for (const auto& t : r.tallies) {
    if (!t.ok()) return to_string(t.check) + " fails at n=" + std::to_string(*t.first_failure) + " (" + t.detail + ")";
  }
  return {};
}

Verdict ac1_tree_node_triples() {
  struct Row {
    std::uint64_t n, x, y, z;
  };
  const Row rows[] = {{16, 0, 0, 4},   {5, 1, 1, 4},     {10, 1, 2, 5},    {20, 1, 4, 6},   {3, 2, 5, 5},
                      {6, 2, 10, 6},   {13, 2, 11, 7},   {21, 1, 1, 6},    {85, 1, 1, 8},   {341, 1, 1, 10},
                      {26, 2, 22, 8},  {52, 2, 44, 9},   {53, 2, 35, 9},   {17, 3, 53, 9},  {34, 3, 106, 10},
                      {11, 4, 133, 10}, {80, 1, 16, 8}};
  const auto t0 = Clock::now();
  for (const Row& r : rows) {
    const auto c = certify(Nat(r.n), 1'000'000).certificate;
    if (!c || c->x != r.x || !(c->y == Nat(r.y)) || c->z != r.z || !verify(*c)) {
      return {false, "triple mismatch at n=" + std::to_string(r.n)};
    }
  }
  const double s = seconds_since(t0);
  return {s < 1.0, "17/17 triples exact in " + fmt_seconds(s)};
}

Verdict ac2_finite_trace() {
  const auto t = run_cl(Nat(13), 1000);
  const std::vector<Nat> expected = {13, 40, 20, 10, 5, 16, 8, 4, 2, 1};
  if (t.values != expected || !halted(t.outcome)) return {false, "trace differs"};
  return {true, "13,40,20,10,5,16,8,4,2,1"};
}

Verdict ac3_infinite_traces() {
  // ⟨8,1/2⟩ as printed.
  const std::vector<std::string> eight = {"8+1/2",  "4+1/4", "2+1/8",  "1+1/16", "4+3/16",
                                          "2+3/32", "1+3/64", "4+9/64", "2+9/128"};
  // ⟨19,5⟩ with exact arithmetic. The printed listing agrees on every k; its
  // w values from index 14 on are exactly twice these (a halving dropped at
  // ⟨10,·⟩), checked separately below.
  const std::vector<std::string> nineteen = {
      "19+5/1",         "58+15/1",        "29+15/2",        "88+45/2",         "44+45/4",
      "22+45/8",        "11+45/16",       "34+135/16",      "17+135/32",       "52+405/32",
      "26+405/64",      "13+405/128",     "40+1215/128",    "20+1215/256",     "10+1215/512",
      "5+1215/1024",    "16+3645/1024",   "8+3645/2048",    "4+3645/4096",     "2+3645/8192",
      "1+3645/16384",   "4+10935/16384",  "2+10935/32768",  "1+10935/65536"};
  // The listing as printed, 25 states; w written in lowest terms.
  const std::vector<std::pair<long, std::string>> printed = {
      {19, "5/1"},        {58, "15/1"},        {29, "15/2"},        {88, "45/2"},        {44, "45/4"},
      {22, "45/8"},       {11, "45/16"},       {34, "135/16"},      {17, "135/32"},      {52, "405/32"},
      {26, "405/64"},     {13, "405/128"},     {40, "1215/128"},    {20, "1215/256"},    {10, "1215/256"},
      {5, "1215/512"},    {16, "3645/512"},    {8, "3645/1024"},    {4, "3645/2048"},    {2, "3645/4096"},
      {1, "3645/8192"},   {4, "10935/8192"},   {2, "10935/16384"},  {1, "10935/32768"},  {4, "32805/32768"}};
  const std::vector<std::string> gr_view = {"8+1/2", "4+1/4", "2+1/8", "1+1/16", "1+3/64", "1+9/256"};

  const JElem a = JElem::parse("8+1/2");
  const JElem b = JElem::parse("19+5/1");
  const auto ta = run_cl(a, eight.size() - 1);
  if (rendered(ta.values, eight.size()) != eight) return {false, "<8,1/2> prefix differs"};
  const auto tb = run_cl(b, nineteen.size() - 1);
  if (rendered(tb.values, nineteen.size()) != nineteen) return {false, "<19,5> prefix differs"};
  const auto tb_long = run_cl(b, printed.size() - 1);
  for (std::size_t i = 0; i < printed.size(); ++i) {
    const JElem& v = tb_long.values.at(i);
    if (v.k() != printed[i].first) return {false, "<19,5> k differs from listing at " + std::to_string(i)};
    const Rat shown = Rat::parse(printed[i].second);
    const Rat expect = i < 14 ? v.w() : v.w() + v.w();
    if (!(shown == expect)) return {false, "<19,5> listing w pattern broken at " + std::to_string(i)};
  }
  const auto gr = run_gr(a, 13);
  if (rendered(odd_level_view(gr), gr_view.size()) != gr_view) return {false, "Gr odd-level prefix differs"};

  const std::uint64_t fuel = 10'000;
  for (const JElem& s : {a, b}) {
    for (const auto& t : {run_cl(s, fuel), run_gr(s, fuel)}) {
      if (!std::holds_alternative<FuelExhausted>(t.outcome)) return {false, "run from " + s.str() + " stopped early"};
      for (const JElem& v : t.values) {
        if (v == JElem::one()) return {false, "run from " + s.str() + " reached 1"};
      }
    }
  }
  return {true, "9 + 24 states and 6-state Gr prefix exact; FuelExhausted through fuel 10^4"};
}

Verdict sweep_verdict(const char* checks, std::uint64_t to, double budget) {
  SweepOptions o;
  o.from = 1;
  o.to = to;
  o.checks = parse_checks(checks);
  const auto t0 = Clock::now();
  const auto r = run_sweep(o);
  const double s = seconds_since(t0);
  if (!r.ok()) return {false, first_sweep_failure(r)};
  const auto& t = r.tallies.front();
  return {s < budget, std::to_string(t.passed) + "/" + std::to_string(t.checked) + " in " + fmt_seconds(s)};
}

Verdict ac4_invariant() { return sweep_verdict("invariant", 100'000, 60.0); }

Verdict ac5_halting_equivalence() { return sweep_verdict("halting-equivalence", 100'000, 1e9); }

Verdict ac6_reverse() {
  const Verdict walk = sweep_verdict("reverse-roundtrip", 10'000, 1e9);
  if (!walk.pass) return walk;
  // +1 on one of x, y, z for 1000 sampled odd n.
  std::mt19937_64 rng(0x1CF00D);
  std::uniform_int_distribution<std::uint64_t> pick_n(0, 4999);
  std::uniform_int_distribution<int> pick_field(0, 2);
  std::map<std::string, int> taxonomy;
  const int total = 1000;
  for (int i = 0; i < total; ++i) {
    const Nat n(2 * pick_n(rng) + 1);
    const Certificate c = *certify(n, 1'000'000).certificate;
    ++taxonomy[to_string(classify_perturbation(c, static_cast<CertField>(pick_field(rng)), 1'000'000))];
  }
  const int rejected = total - taxonomy["accepted"];
  std::string tally;
  for (const auto& [verdict, count] : taxonomy) tally += (tally.empty() ? "" : " ") + verdict + "=" + std::to_string(count);
  return {rejected >= 990, walk.detail + " odd n; perturbations rejected " + std::to_string(rejected) + "/" +
                               std::to_string(total) + " [" + tally + "]"};
}

Verdict ac7_strata_tree() {
  const std::uint64_t range = std::uint64_t{1} << 16;
  const Verdict strata = sweep_verdict("strata-consistency", range, 1e9);
  if (!strata.pass) return strata;
  const auto props = check_strata_properties(range);
  for (const auto& c : props.checks) {
    if (!c.ok()) return {false, "strata property '" + c.name + "' fails at " + std::to_string(c.witness.value_or(0))};
  }
  const auto tree = build_tree(20);
  const auto shape = check_tree_structure(tree);
  if (!shape || tree.duplicates() != 0) return {false, "tree to depth 20 is not a tree"};
  for (std::uint32_t d = 0; d <= tree.max_depth(); ++d) {
    for (const Nat& v : tree.level(d)) {
      const auto path = tree_path(v, 1000);
      if (run_cl(v, 1000).outcome != RunOutcome(Halted{d}) || !path || path->size() != d + 1u) {
        return {false, "depth differs from trajectory length at " + v.str()};
      }
    }
  }
  return {true, strata.detail + "; " + std::to_string(props.checks.size()) + " strata properties; tree of " +
                    std::to_string(shape.nodes) + " nodes acyclic and connected"};
}

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

Verdict ac8_certificate_format() {
  using cli_test::data_file;
  using cli_test::run_cli;
  const std::string golden = data_file("cert_13.json");
  if (run_cli("certify --n 13").out != slurp(golden)) return {false, "certify output differs from golden bytes"};
  const auto ok = run_cli("verify-cert " + golden);
  if (ok.code != 0) return {false, "golden rejected"};
  for (const char* bad : {"cert_13_bad_y.json", "cert_13_bad_z.json", "cert_13_bad_k.json"}) {
    if (run_cli(std::string("verify-cert ") + data_file(bad)).code != 1) return {false, std::string(bad) + " not exit 1"};
  }
  return {true, "golden accepted, 3/3 corruptions exit 1"};
}

void rec1(std::uint64_t n, std::vector<std::uint64_t>& out) {
  out.push_back(n);
  if (n != 1) rec1(n % 2 == 0 ? n / 2 : 3 * n + 1, out);
}

Verdict ac9_oracle() {
  for (std::uint64_t n = 1; n <= 10'000; ++n) {
    std::vector<std::uint64_t> expected;
    rec1(n, expected);
    const auto t = run_cl(Nat(n), 1'000'000);
    if (!halted(t.outcome) || t.values.size() != expected.size()) return {false, "length differs at " + std::to_string(n)};
    for (std::size_t i = 0; i < expected.size(); ++i) {
      if (!(t.values[i] == Nat(expected[i]))) return {false, "value differs at " + std::to_string(n)};
    }
  }
  return {true, "10000/10000 agree"};
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"AC1 tree-node triple vector", ac1_tree_node_triples},
      {"AC2 finite trace of 13", ac2_finite_trace},
      {"AC3 non-standard traces", ac3_infinite_traces},
      {"AC4 invariant 1..1e5", ac4_invariant},
      {"AC5 halting equivalence 1..1e5", ac5_halting_equivalence},
      {"AC6 reverse walk round trip", ac6_reverse},
      {"AC7 strata and tree", ac7_strata_tree},
      {"AC8 certificate format", ac8_certificate_format},
      {"AC9 naive oracle 1..1e4", ac9_oracle},
  };
  int failures = 0;
  for (const auto& [name, check] : criteria) {
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    if (!v.pass) ++failures;
    std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
