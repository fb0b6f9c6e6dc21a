#ifndef COLLATZ_LAB_REVERSE_HPP
#define COLLATZ_LAB_REVERSE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "collatz_lab/certificates.hpp"
#include "collatz_lab/numdomain.hpp"

namespace collatz_lab {

/// State of the reverse walk on certificate triples.
struct ReverseState {
  std::uint64_t x = 0;
  Nat y;
  std::uint64_t z = 0;
  bool err = false;
  std::string err_reason;
  /// One k per completed step, in walk order.
  std::vector<std::uint64_t> consumed_ks;
  /// Filled by ic_run on success: 1, m_{x-1}, ..., m_0.
  std::vector<Nat> recovered_ms;

  bool at_origin() const { return x == 0 && y.is_zero() && z == 0; }
};

/// One Tr block:
///   if odd(y) and (x = 0 or y < 3^{x-1}) -> err
///   x := x-1; y := y - 3^x; k := expo(y); y := y / 2^k; z := z - k
/// When y reaches 0 the step consumes the whole remaining z (k := z), the only
/// place where expo(0) is given a meaning. Underflow of x, y or z sets err.
/// Throws PreconditionError when called at (0,0,0) or with err already set.
ReverseState ic_step(ReverseState s);

enum class ReverseStatus { Reached, Error, FuelExhausted };

struct ReverseRun {
  ReverseStatus status = ReverseStatus::FuelExhausted;
  std::uint64_t steps = 0;
  /// Every state visited, starting with the input triple.
  std::vector<ReverseState> states;

  const ReverseState& final_state() const { return states.back(); }
};

ReverseRun ic_run(std::uint64_t x, const Nat& y, std::uint64_t z, std::uint64_t fuel);

/// Rebuilds the odd chain from 1 by m <- (m·2^k − 1)/3 over ks taken in
/// reverse. nullopt as soon as a division is inexact.
std::optional<std::vector<Nat>> reconstruct_chain(const std::vector<std::uint64_t>& consumed_ks);

struct RoundtripReport {
  bool ok = true;
  std::string failure;
  std::optional<std::size_t> first_mismatch;
  /// Certificate of the odd part of n (the form the reverse walk expects).
  Certificate certificate;
  ReverseRun run;

  explicit operator bool() const { return ok; }
};

/// certify -> ic_run -> compare. Even n are first reduced to their odd part
/// n/2^expo(n); the stripped halvings are checked separately.
RoundtripReport roundtrip_check(const Nat& n, std::uint64_t fuel);

enum class CertField { X, Y, Z };

enum class PerturbationVerdict {
  IcError,        // the walk hit its guard or underflowed
  MissedOrigin,   // walk did not reach (0,0,0) within fuel
  NotIntegral,    // reached (0,0,0) but (2^z - y)/3^x is not an integer
  WrongNumber,    // (2^z - y)/3^x is an integer other than the certified n
  ChainMismatch,  // reached and integral, but the recovered n certifies differently
  Accepted,
};

std::string to_string(PerturbationVerdict v);

/// Shifts the chosen field of cert's triple by delta and classifies what the
/// reverse walk and recovery make of it. Throws PreconditionError on delta = 0
/// or when the shifted field would be negative.
PerturbationVerdict classify_perturbation(const Certificate& cert, CertField field, std::uint64_t fuel,
                                          std::int64_t delta = 1);

std::string to_json(const ReverseState& s);

}  // namespace collatz_lab

#endif  // COLLATZ_LAB_REVERSE_HPP
