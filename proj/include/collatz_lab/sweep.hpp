#ifndef COLLATZ_LAB_SWEEP_HPP
#define COLLATZ_LAB_SWEEP_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace collatz_lab {

enum class SweepCheck {
  HaltingEquivalence,    // Cl, Gr, Gr1, Gr2, Gr3 agree on outcome, ops and (k, m)
  Invariant,             // check_invariant on Gr2 and Gr3 traces
  CertificateRoundTrip,  // verify(certify(n)) and recover_n(certify(n)) = n
  ReverseRoundTrip,      // roundtrip_check, odd n only
  StrataConsistency,     // stratum by definition = certify(n).x
};

std::string to_string(SweepCheck c);
/// Accepts the names above in kebab case ("halting-equivalence", ...) or "all".
std::vector<SweepCheck> parse_checks(std::string_view list);
std::vector<SweepCheck> all_checks();

struct SweepOptions {
  std::uint64_t from = 1;
  std::uint64_t to = 1;
  std::uint64_t fuel = 1'000'000;
  std::vector<SweepCheck> checks = all_checks();
  unsigned jobs = 0;  // 0 = hardware concurrency
};

struct CheckTally {
  SweepCheck check = SweepCheck::HaltingEquivalence;
  std::uint64_t checked = 0;
  std::uint64_t passed = 0;
  std::optional<std::uint64_t> first_failure;
  std::string detail;

  bool ok() const { return checked == passed; }
};

struct SweepReport {
  std::uint64_t from = 0;
  std::uint64_t to = 0;
  std::vector<CheckTally> tallies;
  std::uint64_t max_trajectory_length = 0;
  std::uint64_t max_trajectory_n = 0;
  double wall_seconds = 0.0;

  bool ok() const;
  const CheckTally& tally(SweepCheck c) const;
};

/// Outcome of one check on one n: empty string means pass.
std::string run_check(SweepCheck check, std::uint64_t n, std::uint64_t fuel);

/// Partitions [from, to] across workers; results are merged in n order so the
/// report does not depend on scheduling. Throws PreconditionError if from > to
/// or from = 0.
SweepReport run_sweep(const SweepOptions& options);

/// Deterministic JSON rendering (wall time excluded).
std::string to_json(const SweepReport& report);

}  // namespace collatz_lab

#endif  // COLLATZ_LAB_SWEEP_HPP
