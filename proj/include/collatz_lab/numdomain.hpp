#ifndef COLLATZ_LAB_NUMDOMAIN_HPP
#define COLLATZ_LAB_NUMDOMAIN_HPP

#include <gmpxx.h>

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>

namespace collatz_lab {

/// Raised when a value leaves its domain (negative Nat, expo(0), a JElem with
/// w = 0 and k < 0, cross-domain comparisons).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised when an operation is called outside its stated precondition.
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using BigInt = mpz_class;

/// Arbitrary-precision non-negative integer.
class Nat {
 public:
  Nat() = default;

  template <std::integral I>
  Nat(I v) {  // NOLINT(google-explicit-constructor): literals read naturally
    if constexpr (std::is_signed_v<I>) {
      if (v < 0) throw DomainError("Nat: negative value");
      value_ = static_cast<long>(v);
    } else {
      value_ = static_cast<unsigned long>(v);
    }
  }

  explicit Nat(BigInt v);

  /// Parses a non-empty string of decimal digits. No sign, no whitespace.
  static Nat parse(std::string_view text);
  static Nat one() { return Nat(1u); }

  std::string str() const { return value_.get_str(10); }
  const BigInt& big() const { return value_; }

  bool is_zero() const { return sgn(value_) == 0; }
  bool is_even() const { return mpz_even_p(value_.get_mpz_t()) != 0; }
  bool is_odd() const { return !is_even(); }
  bool fits_u64() const;
  std::uint64_t to_u64() const;

  Nat& operator+=(const Nat& o) {
    value_ += o.value_;
    return *this;
  }
  Nat& operator*=(const Nat& o) {
    value_ *= o.value_;
    return *this;
  }

  friend Nat operator+(const Nat& a, const Nat& b) { return Nat(BigInt(a.value_ + b.value_)); }
  friend Nat operator*(const Nat& a, const Nat& b) { return Nat(BigInt(a.value_ * b.value_)); }
  /// Throws DomainError when b > a.
  friend Nat operator-(const Nat& a, const Nat& b);

  Nat shl(std::uint64_t bits) const;
  /// Exact shift; throws PreconditionError when low bits would be lost.
  Nat shr_exact(std::uint64_t bits) const;

  friend bool operator==(const Nat& a, const Nat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Nat& a, const Nat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  BigInt value_;
};

/// Exact rational, always in lowest terms with a positive denominator.
class Rat {
 public:
  Rat() = default;
  Rat(BigInt num, BigInt den);
  explicit Rat(BigInt integral) : value_(integral) {}

  /// Accepts "p/q" or "p" (optional leading '-').
  static Rat parse(std::string_view text);

  BigInt num() const { return value_.get_num(); }
  BigInt den() const { return value_.get_den(); }
  bool is_zero() const { return sgn(value_) == 0; }
  int sign() const { return sgn(value_); }
  const mpq_class& q() const { return value_; }

  /// Always "num/den", even for integral values.
  std::string str() const;

  friend Rat operator+(const Rat& a, const Rat& b) { return Rat(mpq_class(a.value_ + b.value_)); }
  friend Rat operator/(const Rat& a, unsigned long d);

  friend bool operator==(const Rat& a, const Rat& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rat& a, const Rat& b) {
    const int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
  }

 private:
  explicit Rat(mpq_class q);
  mpq_class value_;
};

/// Element k + i·w of Jaśkowski's non-standard model of addition: k ∈ ℤ,
/// w ∈ ℚ, w ≥ 0, and w = 0 forces k ≥ 0. The w = 0 elements are the
/// reachable (standard) naturals.
class JElem {
 public:
  JElem() = default;
  JElem(BigInt k, Rat w);

  static JElem zero() { return JElem(BigInt(0), Rat()); }
  static JElem one() { return JElem(BigInt(1), Rat()); }
  static JElem from_nat(const Nat& n) { return JElem(n.big(), Rat()); }
  /// Parses the "k+num/den" form, e.g. "8+1/2" or "-10+3/4".
  static JElem parse(std::string_view text);

  const BigInt& k() const { return k_; }
  const Rat& w() const { return w_; }
  bool reachable() const { return w_.is_zero(); }
  std::string str() const;

  friend bool operator==(const JElem& a, const JElem& b) { return a.k_ == b.k_ && a.w_ == b.w_; }

 private:
  BigInt k_;
  Rat w_;
};

/// Largest l with 2^l | x. Throws DomainError on x = 0.
std::uint64_t expo(const Nat& x);
/// x / 2^expo(x). Throws DomainError on x = 0.
Nat odd_part(const Nat& x);
bool is_power_of_two(const Nat& x);

Nat pow2(std::uint64_t e);
Nat pow3(std::uint64_t e);

/// 2^x built only from addition: P2(0)=1, P2(x+1)=P2(x)+P2(x).
Nat p2(std::uint64_t x);
/// y·3^x built only from addition: P3(y,0)=y, P3(y,x+1)=3 copies of P3(y,x) summed.
Nat p3(const Nat& y, std::uint64_t x);

// Jaśkowski operations. Both re-check the structure invariant.
JElem jadd(const JElem& a, const JElem& b);
/// ⟨k,w⟩ ↦ ⟨k/2, w/2⟩; requires even k.
JElem jdiv2(const JElem& a);

// Uniform domain interface. times3plus1 is add(add(add(x,x),x),one) in both
// domains, mirroring the class-based construction of 3x+1 from addition.
inline Nat add(const Nat& a, const Nat& b) { return a + b; }
inline JElem add(const JElem& a, const JElem& b) { return jadd(a, b); }

inline bool is_even(const Nat& a) { return a.is_even(); }
inline bool is_even(const JElem& a) { return mpz_even_p(a.k().get_mpz_t()) != 0; }

Nat div2(const Nat& a);
inline JElem div2(const JElem& a) { return jdiv2(a); }

inline Nat times3plus1(const Nat& a) { return add(add(add(a, a), a), Nat::one()); }
inline JElem times3plus1(const JElem& a) { return add(add(add(a, a), a), JElem::one()); }

inline bool is_reachable(const Nat&) { return true; }
inline bool is_reachable(const JElem& a) { return a.reachable(); }

inline std::strong_ordering compare(const Nat& a, const Nat& b) { return a <=> b; }
/// Lexical order: height w first, then horizontal position k.
std::strong_ordering compare(const JElem& a, const JElem& b);

inline std::string render(const Nat& a) { return a.str(); }
inline std::string render(const JElem& a) { return a.str(); }

template <class T>
concept CollatzDomain = std::equality_comparable<T> && requires(const T& a) {
  { T::one() } -> std::same_as<T>;
  { add(a, a) } -> std::same_as<T>;
  { is_even(a) } -> std::same_as<bool>;
  { div2(a) } -> std::same_as<T>;
  { times3plus1(a) } -> std::same_as<T>;
  { compare(a, a) } -> std::same_as<std::strong_ordering>;
  { is_reachable(a) } -> std::same_as<bool>;
  { render(a) } -> std::same_as<std::string>;
};

static_assert(CollatzDomain<Nat>);
static_assert(CollatzDomain<JElem>);

/// Runtime-tagged element for code paths (the CLI) that pick the domain late.
using DomainElement = std::variant<Nat, JElem>;

DomainElement add(const DomainElement& a, const DomainElement& b);
bool is_even(const DomainElement& a);
DomainElement div2(const DomainElement& a);
DomainElement times3plus1(const DomainElement& a);
bool is_reachable(const DomainElement& a);
/// Throws DomainError when the operands live in different domains.
std::strong_ordering compare(const DomainElement& a, const DomainElement& b);
std::string render(const DomainElement& a);

}  // namespace collatz_lab

template <>
struct std::hash<collatz_lab::Nat> {
  std::size_t operator()(const collatz_lab::Nat& n) const noexcept;
};

#endif  // COLLATZ_LAB_NUMDOMAIN_HPP
