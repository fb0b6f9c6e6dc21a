#include "collatz_lab/reverse.hpp"

#include <json.hpp>

namespace collatz_lab {

ReverseState ic_step(ReverseState s) {
  if (s.err) throw PreconditionError("ic_step: error flag already set");
  if (s.at_origin()) throw PreconditionError("ic_step: already at (0,0,0)");

  const auto fail = [&](std::string reason) {
    s.err = true;
    s.err_reason = std::move(reason);
    return s;
  };

  if (s.y.is_odd() && (s.x == 0 || s.y < pow3(s.x - 1))) return fail("guard: odd(y) and (x = 0 or y < 3^(x-1))");
  if (s.x == 0) return fail("x underflow");
  s.x -= 1;
  const Nat p = pow3(s.x);
  if (s.y < p) return fail("y underflow");
  s.y = s.y - p;

  std::uint64_t k = 0;
  if (s.y.is_zero()) {
    k = s.z;
  } else {
    k = expo(s.y);
    s.y = s.y.shr_exact(k);
    if (s.z < k) return fail("z underflow");
  }
  s.z -= k;
  s.consumed_ks.push_back(k);
  return s;
}

std::optional<std::vector<Nat>> reconstruct_chain(const std::vector<std::uint64_t>& consumed_ks) {
  std::vector<Nat> chain{Nat::one()};
  for (auto it = consumed_ks.rbegin(); it != consumed_ks.rend(); ++it) {
    const Nat lifted = chain.back().shl(*it);
    if (lifted.is_zero()) return std::nullopt;
    const Nat numerator = lifted - Nat::one();
    if (!mpz_divisible_ui_p(numerator.big().get_mpz_t(), 3)) return std::nullopt;
    BigInt q;
    mpz_divexact_ui(q.get_mpz_t(), numerator.big().get_mpz_t(), 3);
    chain.emplace_back(std::move(q));
  }
  return chain;
}

ReverseRun ic_run(std::uint64_t x, const Nat& y, std::uint64_t z, std::uint64_t fuel) {
  ReverseRun run;
  ReverseState s;
  s.x = x;
  s.y = y;
  s.z = z;
  run.states.push_back(s);
  while (!run.states.back().at_origin()) {
    if (run.steps == fuel) {
      run.status = ReverseStatus::FuelExhausted;
      return run;
    }
    ReverseState next = ic_step(run.states.back());
    ++run.steps;
    const bool err = next.err;
    run.states.push_back(std::move(next));
    if (err) {
      run.status = ReverseStatus::Error;
      return run;
    }
  }
  run.status = ReverseStatus::Reached;
  ReverseState& last = run.states.back();
  if (auto chain = reconstruct_chain(last.consumed_ks)) last.recovered_ms = std::move(*chain);
  return run;
}

RoundtripReport roundtrip_check(const Nat& n, std::uint64_t fuel) {
  RoundtripReport report;
  const auto fail = [&](std::string why, std::optional<std::size_t> at = std::nullopt) {
    report.ok = false;
    report.failure = std::move(why);
    report.first_mismatch = at;
    return report;
  };
  if (n.is_zero()) throw PreconditionError("roundtrip_check requires n >= 1");

  const std::uint64_t k0 = expo(n);
  const Nat m0 = n.shr_exact(k0);
  CertifyResult forward = certify(m0, fuel);
  if (!forward.certificate) return fail("certify: fuel exhausted");
  report.certificate = *forward.certificate;
  const Certificate& cert = report.certificate;

  report.run = ic_run(cert.x, cert.y, cert.z, fuel);
  if (report.run.status == ReverseStatus::Error) return fail("ic_run: " + report.run.final_state().err_reason);
  if (report.run.status == ReverseStatus::FuelExhausted) return fail("ic_run: fuel exhausted");
  if (report.run.steps != cert.x) return fail("ic_run: step count differs from x");

  const ReverseState& last = report.run.final_state();
  std::uint64_t consumed = 0;
  for (std::uint64_t k : last.consumed_ks) consumed += k;
  if (consumed != cert.z) return fail("ic_run: consumed k-mass differs from z");
  // The walk consumes k_1..k_x in forward order; the last step is the corner.
  for (std::size_t j = 0; j < last.consumed_ks.size(); ++j) {
    if (last.consumed_ks[j] != cert.k[j + 1]) return fail("consumed k differs from forward k", j);
  }

  const auto& forward_steps = forward.trace.odd_steps;
  if (last.recovered_ms.size() != forward_steps.size()) return fail("recovered chain length");
  for (std::size_t j = 0; j < forward_steps.size(); ++j) {
    if (!(last.recovered_ms[j] == forward_steps[forward_steps.size() - 1 - j].m)) {
      return fail("recovered chain differs from reversed forward chain", j);
    }
  }
  if (!(last.recovered_ms.back().shl(k0) == n)) return fail("restoring the stripped halvings does not give n");
  return report;
}

std::string to_string(PerturbationVerdict v) {
  switch (v) {
    case PerturbationVerdict::IcError: return "ic_error";
    case PerturbationVerdict::MissedOrigin: return "missed_origin";
    case PerturbationVerdict::NotIntegral: return "not_integral";
    case PerturbationVerdict::WrongNumber: return "wrong_number";
    case PerturbationVerdict::ChainMismatch: return "chain_mismatch";
    case PerturbationVerdict::Accepted: return "accepted";
  }
  return "?";
}

PerturbationVerdict classify_perturbation(const Certificate& cert, CertField field, std::uint64_t fuel,
                                          std::int64_t delta) {
  if (delta == 0) throw PreconditionError("perturbation delta must be non-zero");
  const std::uint64_t mag = delta < 0 ? 0 - static_cast<std::uint64_t>(delta) : static_cast<std::uint64_t>(delta);
  auto shift = [&](std::uint64_t v) {
    if (delta < 0 && v < mag) throw PreconditionError("perturbation would make a field negative");
    return delta < 0 ? v - mag : v + mag;
  };
  std::uint64_t x = cert.x;
  Nat y = cert.y;
  std::uint64_t z = cert.z;
  switch (field) {
    case CertField::X: x = shift(x); break;
    case CertField::Y:
      if (delta < 0 && y < Nat(mag)) throw PreconditionError("perturbation would make a field negative");
      y = delta < 0 ? y - Nat(mag) : y + Nat(mag);
      break;
    case CertField::Z: z = shift(z); break;
  }
  const ReverseRun run = ic_run(x, y, z, fuel);
  if (run.status == ReverseStatus::Error) return PerturbationVerdict::IcError;
  if (run.status == ReverseStatus::FuelExhausted) return PerturbationVerdict::MissedOrigin;
  Nat recovered;
  try {
    recovered = recover_n(x, y, z);
  } catch (const PreconditionError&) {
    return PerturbationVerdict::NotIntegral;
  }
  if (recovered.is_zero()) return PerturbationVerdict::NotIntegral;
  // n·3^x = (3n)·3^(x-1), so a shifted triple can be a genuine certificate of
  // a different number.
  if (!(recovered == cert.n)) return PerturbationVerdict::WrongNumber;
  const CertifyResult again = certify(recovered, fuel);
  if (!again.certificate || again.certificate->x != x || !(again.certificate->y == y) || again.certificate->z != z) {
    return PerturbationVerdict::ChainMismatch;
  }
  return PerturbationVerdict::Accepted;
}

std::string to_json(const ReverseState& s) {
  nlohmann::ordered_json j;
  j["x"] = s.x;
  j["y"] = s.y.str();
  j["z"] = s.z;
  j["err"] = s.err;
  if (s.err) j["reason"] = s.err_reason;
  j["consumed_ks"] = s.consumed_ks;
  if (!s.recovered_ms.empty()) {
    std::vector<std::string> ms;
    for (const Nat& m : s.recovered_ms) ms.push_back(m.str());
    j["recovered_ms"] = ms;
  }
  return j.dump();
}

}  // namespace collatz_lab
