#ifndef COLLATZ_LAB_CERTIFICATES_HPP
#define COLLATZ_LAB_CERTIFICATES_HPP

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "collatz_lab/numdomain.hpp"
#include "collatz_lab/trajectories.hpp"

namespace collatz_lab {

/// Halting certificate n·3^x + y = 2^z where k = (k_0, ..., k_x) are the
/// halving counts of the odd-step recurrence, z = Σk_j and
/// y = Σ_{j<x} 3^{x-1-j}·2^{k_0+...+k_j}.
struct Certificate {
  Nat n;
  std::uint64_t x = 0;
  Nat y;
  std::uint64_t z = 0;
  std::vector<std::uint64_t> k;

  friend bool operator==(const Certificate&, const Certificate&) = default;
};

struct CertifyResult {
  std::optional<Certificate> certificate;
  /// The Gr3 run the certificate came from; partial on fuel exhaustion.
  Trace<Nat> trace;
};

/// Runs Gr3 and reads the certificate off its final state. x is the first
/// index at which the guard equation balances.
CertifyResult certify(const Nat& n, std::uint64_t fuel);

struct VerifyReport {
  bool valid = true;
  std::string failed_clause;

  explicit operator bool() const { return valid; }
};

/// Recomputes z and y from k twice (direct double sum and nested Horner
/// form) and checks both against the stored fields and the main equation.
VerifyReport verify(const Certificate& cert);

/// Σ_{j<x} 3^{x-1-j}·2^{k_0+...+k_j} evaluated term by term.
Nat history_sum_direct(std::span<const std::uint64_t> k, std::uint64_t x);
/// Same sum as 2^{k_0}·(3^{x-1} + 2^{k_1}·(3^{x-2} + ... + 2^{k_{x-1}}·3^0)).
Nat history_sum_horner(std::span<const std::uint64_t> k, std::uint64_t x);

/// The solution of n·3^x + y = 2^z that any n has without running anything:
/// x = 0, least z with 2^z >= n. It does not describe a Collatz run.
struct TrivialTriple {
  std::uint64_t x = 0;
  Nat y;
  std::uint64_t z = 0;
  static constexpr bool is_collatz_certificate = false;
};

TrivialTriple trivial_certificate(const Nat& n);

/// (2^z − y) / 3^x. Throws PreconditionError if 2^z <= y or the division is
/// inexact.
Nat recover_n(std::uint64_t x, const Nat& y, std::uint64_t z);

/// {"n":"13","x":2,"y":"11","z":7,"k":[0,3,4]} with exactly this field order.
std::string to_json(const Certificate& cert);

/// Strict parse of the certificate schema. Throws PreconditionError on any
/// structural problem (missing field, wrong type, malformed decimal string).
Certificate certificate_from_json(std::string_view text);

}  // namespace collatz_lab

#endif  // COLLATZ_LAB_CERTIFICATES_HPP
