#include "collatz_lab/numdomain.hpp"

#include <algorithm>
#include <cctype>
#include <limits>

namespace collatz_lab {

namespace {

bool all_digits(std::string_view s) {
  return !s.empty() && std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); });
}

BigInt parse_signed(std::string_view s, const char* what) {
  std::string_view digits = s;
  if (!digits.empty() && digits.front() == '-') digits.remove_prefix(1);
  if (!all_digits(digits)) throw DomainError(std::string(what) + ": malformed integer '" + std::string(s) + "'");
  return BigInt(std::string(s), 10);
}

std::strong_ordering to_ordering(int c) {
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

}  // namespace

// ---- Nat -------------------------------------------------------------------

Nat::Nat(BigInt v) : value_(std::move(v)) {
  if (sgn(value_) < 0) throw DomainError("Nat: negative value");
}

Nat Nat::parse(std::string_view text) {
  if (!all_digits(text)) throw DomainError("Nat: malformed decimal '" + std::string(text) + "'");
  return Nat(BigInt(std::string(text), 10));
}

bool Nat::fits_u64() const {
  return mpz_sizeinbase(value_.get_mpz_t(), 2) <= 64;
}

std::uint64_t Nat::to_u64() const {
  if (!fits_u64()) throw DomainError("Nat: value exceeds 64 bits");
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  return mpz_get_ui(value_.get_mpz_t());
}

Nat operator-(const Nat& a, const Nat& b) {
  if (a.value_ < b.value_) throw DomainError("Nat: subtraction below zero");
  return Nat(BigInt(a.value_ - b.value_));
}

Nat Nat::shl(std::uint64_t bits) const {
  BigInt r;
  mpz_mul_2exp(r.get_mpz_t(), value_.get_mpz_t(), bits);
  return Nat(std::move(r));
}

Nat Nat::shr_exact(std::uint64_t bits) const {
  if (bits > 0 && !is_zero() && mpz_scan1(value_.get_mpz_t(), 0) < bits) {
    throw PreconditionError("Nat: inexact shift");
  }
  BigInt r;
  mpz_tdiv_q_2exp(r.get_mpz_t(), value_.get_mpz_t(), bits);
  return Nat(std::move(r));
}

// ---- Rat -------------------------------------------------------------------

Rat::Rat(mpq_class q) : value_(std::move(q)) { value_.canonicalize(); }

Rat::Rat(BigInt num, BigInt den) {
  if (sgn(den) == 0) throw DomainError("Rat: zero denominator");
  value_ = mpq_class(num, den);
  value_.canonicalize();
}

Rat Rat::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Rat(parse_signed(text, "Rat"));
  BigInt num = parse_signed(text.substr(0, slash), "Rat");
  std::string_view den_text = text.substr(slash + 1);
  if (!all_digits(den_text)) throw DomainError("Rat: malformed denominator '" + std::string(den_text) + "'");
  return Rat(std::move(num), BigInt(std::string(den_text), 10));
}

std::string Rat::str() const { return num().get_str() + "/" + den().get_str(); }

Rat operator/(const Rat& a, unsigned long d) {
  if (d == 0) throw DomainError("Rat: division by zero");
  mpq_class r = a.value_;
  mpz_mul_ui(r.get_den_mpz_t(), r.get_den_mpz_t(), d);
  return Rat(std::move(r));
}

// ---- JElem -----------------------------------------------------------------

JElem::JElem(BigInt k, Rat w) : k_(std::move(k)), w_(std::move(w)) {
  if (w_.sign() < 0) throw DomainError("JElem: negative w");
  if (w_.is_zero() && sgn(k_) < 0) throw DomainError("JElem: w = 0 requires k >= 0");
}

JElem JElem::parse(std::string_view text) {
  // The k part may itself start with '-', so search for '+' after position 0.
  const auto plus = text.find('+', 1);
  if (plus == std::string_view::npos) throw DomainError("JElem: expected 'k+num/den', got '" + std::string(text) + "'");
  BigInt k = parse_signed(text.substr(0, plus), "JElem");
  std::string_view w_text = text.substr(plus + 1);
  if (!w_text.empty() && w_text.front() == '-') throw DomainError("JElem: negative w");
  return JElem(std::move(k), Rat::parse(w_text));
}

std::string JElem::str() const { return k_.get_str() + "+" + w_.str(); }

JElem jadd(const JElem& a, const JElem& b) {
  return JElem(BigInt(a.k() + b.k()), a.w() + b.w());
}

JElem jdiv2(const JElem& a) {
  if (!is_even(a)) throw PreconditionError("jdiv2: k is odd in " + a.str());
  BigInt half;
  mpz_divexact_ui(half.get_mpz_t(), a.k().get_mpz_t(), 2);
  return JElem(std::move(half), a.w() / 2);
}

std::strong_ordering compare(const JElem& a, const JElem& b) {
  if (auto c = a.w() <=> b.w(); c != 0) return c;
  return to_ordering(cmp(a.k(), b.k()));
}

// ---- helpers ---------------------------------------------------------------

std::uint64_t expo(const Nat& x) {
  if (x.is_zero()) throw DomainError("expo: undefined at 0");
  return mpz_scan1(x.big().get_mpz_t(), 0);
}

Nat odd_part(const Nat& x) { return x.shr_exact(expo(x)); }

bool is_power_of_two(const Nat& x) {
  return !x.is_zero() && mpz_popcount(x.big().get_mpz_t()) == 1;
}

Nat pow2(std::uint64_t e) { return Nat::one().shl(e); }

Nat pow3(std::uint64_t e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 3, e);
  return Nat(std::move(r));
}

Nat p2(std::uint64_t x) {
  Nat r = Nat::one();
  for (std::uint64_t i = 0; i < x; ++i) r = r + r;
  return r;
}

Nat p3(const Nat& y, std::uint64_t x) {
  Nat r = y;
  for (std::uint64_t i = 0; i < x; ++i) r = r + r + r;
  return r;
}

Nat div2(const Nat& a) {
  if (!a.is_even()) throw PreconditionError("div2: odd value " + a.str());
  return a.shr_exact(1);
}

// ---- DomainElement ---------------------------------------------------------

namespace {

template <class F>
DomainElement same_domain(const DomainElement& a, const DomainElement& b, F&& f) {
  if (a.index() != b.index()) throw DomainError("cross-domain operation");
  return std::visit(
      [&](const auto& x) -> DomainElement {
        using T = std::decay_t<decltype(x)>;
        return f(x, std::get<T>(b));
      },
      a);
}

}  // namespace

DomainElement add(const DomainElement& a, const DomainElement& b) {
  return same_domain(a, b, [](const auto& x, const auto& y) -> DomainElement { return add(x, y); });
}

bool is_even(const DomainElement& a) {
  return std::visit([](const auto& x) { return is_even(x); }, a);
}

DomainElement div2(const DomainElement& a) {
  return std::visit([](const auto& x) -> DomainElement { return div2(x); }, a);
}

DomainElement times3plus1(const DomainElement& a) {
  return std::visit([](const auto& x) -> DomainElement { return times3plus1(x); }, a);
}

bool is_reachable(const DomainElement& a) {
  return std::visit([](const auto& x) { return is_reachable(x); }, a);
}

std::strong_ordering compare(const DomainElement& a, const DomainElement& b) {
  if (a.index() != b.index()) throw DomainError("cross-domain comparison");
  return std::visit(
      [&](const auto& x) {
        using T = std::decay_t<decltype(x)>;
        return compare(x, std::get<T>(b));
      },
      a);
}

std::string render(const DomainElement& a) {
  return std::visit([](const auto& x) { return render(x); }, a);
}

}  // namespace collatz_lab

std::size_t std::hash<collatz_lab::Nat>::operator()(const collatz_lab::Nat& n) const noexcept {
  const mpz_srcptr z = n.big().get_mpz_t();
  std::size_t h = static_cast<std::size_t>(mpz_size(z));
  for (std::size_t i = 0; i < mpz_size(z); ++i) {
    h ^= mpz_getlimbn(z, static_cast<mp_size_t>(i)) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}
