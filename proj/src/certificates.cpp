#include "collatz_lab/certificates.hpp"

#include <json.hpp>

namespace collatz_lab {

using ordered_json = nlohmann::ordered_json;

CertifyResult certify(const Nat& n, std::uint64_t fuel) {
  if (n.is_zero()) throw PreconditionError("certify requires n >= 1");
  CertifyResult result{std::nullopt, run_gr3(n, fuel)};
  if (!halted(result.trace.outcome)) return result;

  const auto& steps = result.trace.odd_steps;
  const auto& last = steps.back();
  Certificate cert;
  cert.n = n;
  cert.x = last.X;
  cert.y = last.Y;
  cert.z = last.Z;
  cert.k.reserve(steps.size());
  for (const auto& r : steps) cert.k.push_back(r.k);
  result.certificate = std::move(cert);
  return result;
}

Nat history_sum_direct(std::span<const std::uint64_t> k, std::uint64_t x) {
  if (k.size() < x) throw PreconditionError("history sum: k shorter than x");
  Nat sum;
  std::uint64_t prefix = 0;
  for (std::uint64_t j = 0; j < x; ++j) {
    prefix += k[j];
    sum += pow3(x - 1 - j) * pow2(prefix);
  }
  return sum;
}

Nat history_sum_horner(std::span<const std::uint64_t> k, std::uint64_t x) {
  if (k.size() < x) throw PreconditionError("history sum: k shorter than x");
  Nat acc;
  for (std::uint64_t j = x; j-- > 0;) acc = (pow3(x - 1 - j) + acc).shl(k[j]);
  return acc;
}

VerifyReport verify(const Certificate& cert) {
  const auto fail = [](std::string clause) { return VerifyReport{false, std::move(clause)}; };
  if (cert.n.is_zero()) return fail("n >= 1");
  if (cert.k.size() != cert.x + 1) return fail("|k| = x + 1");
  if (cert.k[0] != expo(cert.n)) return fail("k_0 = expo(n)");
  for (std::size_t j = 1; j < cert.k.size(); ++j) {
    if (cert.k[j] == 0) return fail("k_j >= 1 for j >= 1");
  }
  std::uint64_t z = 0;
  for (std::uint64_t kj : cert.k) z += kj;
  if (z != cert.z) return fail("z = sum k_j");
  const Nat direct = history_sum_direct(cert.k, cert.x);
  if (!(direct == cert.y)) return fail("y = direct double sum");
  const Nat horner = history_sum_horner(cert.k, cert.x);
  if (!(horner == cert.y)) return fail("y = nested Horner form");
  if (!(cert.n * pow3(cert.x) + cert.y == pow2(cert.z))) return fail("n*3^x + y = 2^z");
  return {};
}

TrivialTriple trivial_certificate(const Nat& n) {
  if (n.is_zero()) throw PreconditionError("trivial_certificate requires n >= 1");
  // Least z with 2^z >= n.
  std::uint64_t z = mpz_sizeinbase(n.big().get_mpz_t(), 2);
  if (is_power_of_two(n)) --z;
  return TrivialTriple{0, pow2(z) - n, z};
}

Nat recover_n(std::uint64_t x, const Nat& y, std::uint64_t z) {
  const Nat power = pow2(z);
  if (!(y < power)) throw PreconditionError("recover_n: 2^z <= y, no preimage");
  const Nat diff = power - y;
  const Nat divisor = pow3(x);
  if (!mpz_divisible_p(diff.big().get_mpz_t(), divisor.big().get_mpz_t())) {
    throw PreconditionError("recover_n: 3^x does not divide 2^z - y");
  }
  BigInt q;
  mpz_divexact(q.get_mpz_t(), diff.big().get_mpz_t(), divisor.big().get_mpz_t());
  return Nat(std::move(q));
}

std::string to_json(const Certificate& cert) {
  ordered_json j;
  j["n"] = cert.n.str();
  j["x"] = cert.x;
  j["y"] = cert.y.str();
  j["z"] = cert.z;
  j["k"] = cert.k;
  return j.dump();
}

namespace {

const ordered_json& field(const ordered_json& j, const char* name) {
  const auto it = j.find(name);
  if (it == j.end()) throw PreconditionError(std::string("certificate: missing field '") + name + "'");
  return *it;
}

std::uint64_t unsigned_field(const ordered_json& v, const char* name) {
  if (!v.is_number_unsigned()) throw PreconditionError(std::string("certificate: '") + name + "' must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Nat decimal_field(const ordered_json& v, const char* name) {
  if (!v.is_string()) throw PreconditionError(std::string("certificate: '") + name + "' must be a decimal string");
  try {
    return Nat::parse(v.get<std::string>());
  } catch (const DomainError& e) {
    throw PreconditionError(std::string("certificate: '") + name + "': " + e.what());
  }
}

}  // namespace

Certificate certificate_from_json(std::string_view text) {
  ordered_json j;
  try {
    j = ordered_json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw PreconditionError(std::string("certificate: invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw PreconditionError("certificate: expected a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key != "n" && key != "x" && key != "y" && key != "z" && key != "k") {
      throw PreconditionError("certificate: unexpected field '" + key + "'");
    }
  }
  Certificate cert;
  cert.n = decimal_field(field(j, "n"), "n");
  cert.x = unsigned_field(field(j, "x"), "x");
  cert.y = decimal_field(field(j, "y"), "y");
  cert.z = unsigned_field(field(j, "z"), "z");
  const ordered_json& k = field(j, "k");
  if (!k.is_array()) throw PreconditionError("certificate: 'k' must be an array");
  for (const auto& e : k) cert.k.push_back(unsigned_field(e, "k[]"));
  return cert;
}

}  // namespace collatz_lab
