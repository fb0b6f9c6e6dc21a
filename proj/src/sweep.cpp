#include "collatz_lab/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include <json.hpp>

#include "collatz_lab/certificates.hpp"
#include "collatz_lab/collatz_tree.hpp"
#include "collatz_lab/reverse.hpp"
#include "collatz_lab/trajectories.hpp"

namespace collatz_lab {

namespace {

constexpr SweepCheck kAllChecks[] = {SweepCheck::HaltingEquivalence, SweepCheck::Invariant,
                                     SweepCheck::CertificateRoundTrip, SweepCheck::ReverseRoundTrip,
                                     SweepCheck::StrataConsistency};

std::vector<std::pair<std::uint64_t, Nat>> km_sequence(const Trace<Nat>& t) {
  std::vector<std::pair<std::uint64_t, Nat>> out;
  out.reserve(t.odd_steps.size());
  for (const auto& r : t.odd_steps) out.emplace_back(r.k, r.m);
  return out;
}

std::string halting_equivalence(const Nat& n, std::uint64_t fuel) {
  const Trace<Nat> cl = run_cl(n, fuel);
  const Trace<Nat> gr = run_gr(n, fuel);
  const Trace<Nat> gr1 = run_gr1(n, fuel);
  const Trace<Nat> gr2 = run_gr2(n, fuel);
  const Trace<Nat> gr3 = run_gr3(n, fuel);
  for (const Trace<Nat>* t : {&gr, &gr1, &gr2, &gr3}) {
    if (halted(t->outcome) != halted(cl.outcome)) return to_string(t->algo) + " halting differs from cl";
    if (t->ops != cl.ops) return to_string(t->algo) + " primitive steps differ from cl";
  }
  const auto km = km_sequence(gr1);
  for (const Trace<Nat>* t : {&gr, &gr2, &gr3}) {
    if (km_sequence(*t) != km) return to_string(t->algo) + " (k, m) sequence differs from gr1";
  }
  if (halted(cl.outcome)) {
    const auto& last = gr3.odd_steps.back();
    if (cl.ops.size() != last.X + last.Z) return "step count differs from x + z";
  }
  return {};
}

std::string invariant(const Nat& n, std::uint64_t fuel) {
  for (const Trace<Nat>& t : {run_gr2(n, fuel), run_gr3(n, fuel)}) {
    const InvariantReport r = check_invariant(t);
    if (!r) return to_string(t.algo) + " step " + std::to_string(*r.first_failure) + ": " + r.clause;
    for (std::size_t i = 1; i < t.odd_steps.size(); ++i) {
      const auto& a = t.odd_steps[i - 1];
      const auto& b = t.odd_steps[i];
      if (!(a.Y < b.Y) || !(a.Z < b.Z) || !(a.X < b.X)) {
        return to_string(t.algo) + " triples not increasing at " + std::to_string(i);
      }
    }
  }
  return {};
}

std::string certificate_round_trip(const Nat& n, std::uint64_t fuel) {
  const CertifyResult result = certify(n, fuel);
  if (!result.certificate) return "certify: fuel exhausted";
  const Certificate& c = *result.certificate;
  if (const VerifyReport v = verify(c); !v) return "verify: " + v.failed_clause;
  if (!(recover_n(c.x, c.y, c.z) == n)) return "recover_n differs from n";
  if (c.x >= 1 && n.is_even() != c.y.is_even()) return "parity of n and y differ";
  // No earlier index balances the equation.
  Nat n_pow3 = n;
  const auto& steps = result.trace.odd_steps;
  for (std::size_t i = 0; i + 1 < steps.size(); ++i) {
    if (n_pow3 + steps[i].Y == pow2(steps[i].Z)) return "x not minimal: balances at " + std::to_string(i);
    n_pow3 = n_pow3 * Nat(3);
  }
  return {};
}

std::string reverse_round_trip(const Nat& n, std::uint64_t fuel) {
  const RoundtripReport r = roundtrip_check(n, fuel);
  return r ? std::string() : r.failure;
}

std::string strata_consistency(const Nat& n, std::uint64_t fuel) {
  const CertifyResult result = certify(n, fuel);
  if (!result.certificate) return "certify: fuel exhausted";
  if (stratum(n) != result.certificate->x) return "stratum differs from certificate x";
  if (!in_stratum(n, result.certificate->x)) return "unrolled membership disagrees";
  return {};
}

struct Partial {
  std::vector<CheckTally> tallies;
  std::uint64_t max_len = 0;
  std::uint64_t max_n = 0;
};

}  // namespace

std::string to_string(SweepCheck c) {
  switch (c) {
    case SweepCheck::HaltingEquivalence: return "halting-equivalence";
    case SweepCheck::Invariant: return "invariant";
    case SweepCheck::CertificateRoundTrip: return "certificate-roundtrip";
    case SweepCheck::ReverseRoundTrip: return "reverse-roundtrip";
    case SweepCheck::StrataConsistency: return "strata-consistency";
  }
  return "?";
}

std::vector<SweepCheck> all_checks() { return {std::begin(kAllChecks), std::end(kAllChecks)}; }

std::vector<SweepCheck> parse_checks(std::string_view list) {
  if (list == "all") return all_checks();
  std::vector<SweepCheck> out;
  while (!list.empty()) {
    const auto comma = list.find(',');
    const std::string_view name = list.substr(0, comma);
    const auto it = std::find_if(std::begin(kAllChecks), std::end(kAllChecks),
                                 [&](SweepCheck c) { return to_string(c) == name; });
    if (it == std::end(kAllChecks)) throw PreconditionError("unknown check '" + std::string(name) + "'");
    if (std::find(out.begin(), out.end(), *it) == out.end()) out.push_back(*it);
    if (comma == std::string_view::npos) break;
    list.remove_prefix(comma + 1);
  }
  if (out.empty()) throw PreconditionError("no checks selected");
  return out;
}

std::string run_check(SweepCheck check, std::uint64_t u, std::uint64_t fuel) {
  const Nat n(u);
  try {
    switch (check) {
      case SweepCheck::HaltingEquivalence: return halting_equivalence(n, fuel);
      case SweepCheck::Invariant: return invariant(n, fuel);
      case SweepCheck::CertificateRoundTrip: return certificate_round_trip(n, fuel);
      case SweepCheck::ReverseRoundTrip: return reverse_round_trip(n, fuel);
      case SweepCheck::StrataConsistency: return strata_consistency(n, fuel);
    }
  } catch (const std::exception& e) {
    return std::string("exception: ") + e.what();
  }
  return "unknown check";
}

bool SweepReport::ok() const {
  return std::all_of(tallies.begin(), tallies.end(), [](const CheckTally& t) { return t.ok(); });
}

const CheckTally& SweepReport::tally(SweepCheck c) const {
  for (const auto& t : tallies) {
    if (t.check == c) return t;
  }
  throw PreconditionError("check not part of this sweep: " + to_string(c));
}

SweepReport run_sweep(const SweepOptions& options) {
  if (options.from == 0) throw PreconditionError("sweep range must start at 1 or above");
  if (options.from > options.to) throw PreconditionError("sweep range is empty (from > to)");
  const auto started = std::chrono::steady_clock::now();

  const std::uint64_t count = options.to - options.from + 1;
  unsigned jobs = options.jobs ? options.jobs : std::max(1u, std::thread::hardware_concurrency());
  // Fine-grained chunks keep workers balanced; merge order is by chunk index.
  const std::uint64_t chunks = std::min<std::uint64_t>(count, std::uint64_t{jobs} * 16);
  const std::uint64_t chunk_len = (count + chunks - 1) / chunks;
  std::vector<Partial> partials(chunks);

  auto work_chunk = [&](std::uint64_t c) {
    Partial& p = partials[c];
    for (SweepCheck check : options.checks) p.tallies.push_back(CheckTally{check, 0, 0, std::nullopt, {}});
    const std::uint64_t offset = c * chunk_len;
    if (offset >= count) return;
    const std::uint64_t lo = options.from + offset;
    const std::uint64_t hi = lo + std::min(chunk_len, count - offset) - 1;
    for (std::uint64_t n = lo;; ++n) {
      const Trace<Nat> cl = run_cl(Nat(n), options.fuel);
      if (const auto* h = std::get_if<Halted>(&cl.outcome); h && h->steps > p.max_len) {
        p.max_len = h->steps;
        p.max_n = n;
      }
      for (CheckTally& t : p.tallies) {
        if (t.check == SweepCheck::ReverseRoundTrip && n % 2 == 0) continue;
        ++t.checked;
        std::string failure = run_check(t.check, n, options.fuel);
        if (failure.empty()) {
          ++t.passed;
        } else if (!t.first_failure) {
          t.first_failure = n;
          t.detail = std::move(failure);
        }
      }
      if (n == hi) break;
    }
  };

  std::atomic<std::uint64_t> next{0};
  std::vector<std::thread> workers;
  jobs = static_cast<unsigned>(std::min<std::uint64_t>(jobs, chunks));
  for (unsigned w = 0; w < jobs; ++w) {
    workers.emplace_back([&] {
      for (std::uint64_t c = next++; c < chunks; c = next++) work_chunk(c);
    });
  }
  for (auto& t : workers) t.join();

  SweepReport report;
  report.from = options.from;
  report.to = options.to;
  for (SweepCheck check : options.checks) report.tallies.push_back(CheckTally{check, 0, 0, std::nullopt, {}});
  for (const Partial& p : partials) {
    for (std::size_t i = 0; i < p.tallies.size(); ++i) {
      CheckTally& total = report.tallies[i];
      total.checked += p.tallies[i].checked;
      total.passed += p.tallies[i].passed;
      if (!total.first_failure && p.tallies[i].first_failure) {
        total.first_failure = p.tallies[i].first_failure;
        total.detail = p.tallies[i].detail;
      }
    }
    if (p.max_len > report.max_trajectory_length) {
      report.max_trajectory_length = p.max_len;
      report.max_trajectory_n = p.max_n;
    }
  }
  report.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

std::string to_json(const SweepReport& report) {
  nlohmann::ordered_json j;
  j["from"] = std::to_string(report.from);
  j["to"] = std::to_string(report.to);
  j["ok"] = report.ok();
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();
  for (const auto& t : report.tallies) {
    nlohmann::ordered_json o;
    o["check"] = to_string(t.check);
    o["checked"] = t.checked;
    o["passed"] = t.passed;
    o["first_failure"] = t.first_failure ? nlohmann::ordered_json(std::to_string(*t.first_failure)) : nullptr;
    if (!t.detail.empty()) o["detail"] = t.detail;
    checks.push_back(std::move(o));
  }
  j["checks"] = std::move(checks);
  j["max_trajectory_length"] = report.max_trajectory_length;
  j["max_trajectory_n"] = std::to_string(report.max_trajectory_n);
  return j.dump();
}

}  // namespace collatz_lab
