#ifndef COLLATZ_LAB_TRAJECTORIES_HPP
#define COLLATZ_LAB_TRAJECTORIES_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "collatz_lab/numdomain.hpp"

namespace collatz_lab {

enum class StepOp : char { Div2 = 'D', TimesThreePlusOne = 'T' };

enum class Algorithm { Cl, Gr, Gr1, Gr2, Gr3 };

std::string to_string(Algorithm a);
/// "cl", "gr", "gr1", "gr2", "gr3". Throws PreconditionError otherwise.
Algorithm parse_algorithm(std::string_view name);

struct Halted {
  std::uint64_t steps = 0;
  friend bool operator==(const Halted&, const Halted&) = default;
};
struct FuelExhausted {
  std::uint64_t fuel = 0;
  friend bool operator==(const FuelExhausted&, const FuelExhausted&) = default;
};
/// values[entry] == values[entry + period].
struct CycleDetected {
  std::uint64_t entry = 0;
  std::uint64_t period = 0;
  friend bool operator==(const CycleDetected&, const CycleDetected&) = default;
};

using RunOutcome = std::variant<Halted, FuelExhausted, CycleDetected>;

inline bool halted(const RunOutcome& o) { return std::holds_alternative<Halted>(o); }
std::string describe(const RunOutcome& o);

/// One division burst of the Gr family: after record i the running value is
/// the odd number m, k is the number of halvings that produced it.
/// X, Z are always filled; Y is only accumulated by Gr2 and Gr3 and stays 0
/// for Gr/Gr1 traces.
template <class T>
struct OddStepRecord {
  std::uint64_t i = 0;
  std::uint64_t k = 0;
  T m;
  std::uint64_t X = 0;
  Nat Y;
  std::uint64_t Z = 0;
};

template <class T>
struct Trace {
  Algorithm algo = Algorithm::Cl;
  T start;
  std::vector<StepOp> ops;
  /// values.front() == start, values[t + 1] == apply(ops[t], values[t]).
  std::vector<T> values;
  std::vector<OddStepRecord<T>> odd_steps;
  RunOutcome outcome = FuelExhausted{};

  const T& final_value() const { return values.back(); }
};

template <CollatzDomain T>
T apply(StepOp op, const T& v) {
  return op == StepOp::Div2 ? div2(v) : times3plus1(v);
}

namespace detail {

/// Appends one primitive step to the trace. Returns false when the new value
/// equals the old one (a period-1 cycle, e.g. 0 -> 0) and records the outcome.
template <CollatzDomain T>
bool push_step(Trace<T>& trace, StepOp op) {
  T next = apply(op, trace.values.back());
  const bool fixed = next == trace.values.back();
  trace.ops.push_back(op);
  trace.values.push_back(std::move(next));
  if (fixed) {
    trace.outcome = CycleDetected{trace.values.size() - 2, 1};
    return false;
  }
  return true;
}

enum class Instrument { KM, History, HistoryEquationGuard };

/// Shared odd-step engine behind Gr, Gr1, Gr2 and Gr3. Fuel is measured in
/// primitive Cl steps; an incomplete burst at exhaustion is not recorded.
template <CollatzDomain T>
Trace<T> run_odd_steps(const T& n, std::uint64_t fuel, Algorithm algo, Instrument inst);

}  // namespace detail

/// Cl: while n != 1 { n even ? n/2 : 3n+1 }.
template <CollatzDomain T>
Trace<T> run_cl(const T& n, std::uint64_t fuel) {
  Trace<T> trace;
  trace.algo = Algorithm::Cl;
  trace.start = n;
  trace.values.push_back(n);
  const T one = T::one();
  std::uint64_t steps = 0;
  while (!(trace.values.back() == one)) {
    if (steps == fuel) {
      trace.outcome = FuelExhausted{fuel};
      return trace;
    }
    const StepOp op = is_even(trace.values.back()) ? StepOp::Div2 : StepOp::TimesThreePlusOne;
    ++steps;
    if (!detail::push_step(trace, op)) return trace;
  }
  trace.outcome = Halted{steps};
  return trace;
}

/// Gr: strip the powers of two, then repeat (3n+1, strip) until n = 1.
template <CollatzDomain T>
Trace<T> run_gr(const T& n, std::uint64_t fuel) {
  return detail::run_odd_steps(n, fuel, Algorithm::Gr, detail::Instrument::KM);
}

/// Gr1: Gr with the k_i / m_i arrays of the (k, m) recurrence exposed.
template <CollatzDomain T>
Trace<T> run_gr1(const T& n, std::uint64_t fuel) {
  return detail::run_odd_steps(n, fuel, Algorithm::Gr1, detail::Instrument::KM);
}

/// Gr2: also accumulates x = i, z = Σk_j, y = 3y + 2^{z_prev}. Requires n >= 1.
Trace<Nat> run_gr2(const Nat& n, std::uint64_t fuel);

/// Gr3: as Gr2, but the loop guard is the certificate equation
/// n·3^i + Y_i != 2^{Z_i} evaluated exactly. Requires n >= 1.
Trace<Nat> run_gr3(const Nat& n, std::uint64_t fuel);

/// Runtime dispatch used by the CLI.
Trace<Nat> run_algorithm(Algorithm algo, const Nat& n, std::uint64_t fuel);
/// Gr2/Gr3 are standard-domain algorithms; throws PreconditionError for them.
Trace<JElem> run_algorithm(Algorithm algo, const JElem& n, std::uint64_t fuel);

/// The Gr-level view of a trace: the initial halving burst followed by each
/// completed odd value m_1, m_2, ...
template <class T>
std::vector<T> odd_level_view(const Trace<T>& trace) {
  std::vector<T> view;
  if (trace.odd_steps.empty()) return trace.values;
  const std::uint64_t k0 = trace.odd_steps.front().k;
  for (std::uint64_t t = 0; t <= k0 && t < trace.values.size(); ++t) view.push_back(trace.values[t]);
  for (std::size_t i = 1; i < trace.odd_steps.size(); ++i) view.push_back(trace.odd_steps[i].m);
  return view;
}

// ---- invariant checking ----------------------------------------------------

struct InvariantReport {
  bool ok = true;
  std::optional<std::size_t> first_failure;
  std::string clause;
  std::size_t steps_checked = 0;

  explicit operator bool() const { return ok; }
};

/// Per odd step of a Gr2/Gr3 trace: X_i = i, Z_i = Σk_j, the Y recurrence,
/// n·3^i + Y_i = m_i·2^{Z_i}, and exact recovery n = (m_i·2^{Z_i} − Y_i)/3^i.
InvariantReport check_invariant(const Trace<Nat>& trace);

// ---- cycles and domain closure ---------------------------------------------

struct ProjectedCycle {
  std::uint64_t entry = 0;
  std::uint64_t period = 0;
};

struct CycleReport {
  RunOutcome outcome;
  /// Set for Jaśkowski inputs whose k-projection cycles while full values never repeat.
  std::optional<ProjectedCycle> projected;
};

namespace detail {

template <class T, class F, class Stop>
RunOutcome brent(const T& x0, F&& f, Stop&& stop, std::uint64_t fuel) {
  if (stop(x0)) return Halted{0};
  if (fuel == 0) return FuelExhausted{0};
  std::uint64_t power = 1;
  std::uint64_t lam = 1;
  std::uint64_t idx = 1;
  T tortoise = x0;
  T hare = f(x0);
  while (!(tortoise == hare)) {
    if (stop(hare)) return Halted{idx};
    if (idx >= fuel) return FuelExhausted{fuel};
    if (power == lam) {
      tortoise = hare;
      power *= 2;
      lam = 0;
    }
    hare = f(hare);
    ++lam;
    ++idx;
  }
  std::uint64_t mu = 0;
  tortoise = x0;
  hare = x0;
  for (std::uint64_t i = 0; i < lam; ++i) hare = f(hare);
  while (!(tortoise == hare)) {
    tortoise = f(tortoise);
    hare = f(hare);
    ++mu;
  }
  return CycleDetected{mu, lam};
}

}  // namespace detail

/// Brent cycle detection on the exact Cl value sequence.
template <CollatzDomain T>
CycleReport detect_cycle(const T& n, std::uint64_t fuel) {
  const T one = T::one();
  auto step = [](const T& v) { return is_even(v) ? div2(v) : times3plus1(v); };
  CycleReport report{detail::brent(n, step, [&](const T& v) { return v == one; }, fuel), std::nullopt};
  if constexpr (std::is_same_v<T, JElem>) {
    if (std::holds_alternative<FuelExhausted>(report.outcome)) {
      auto kstep = [](const BigInt& k) -> BigInt {
        if (mpz_even_p(k.get_mpz_t())) {
          BigInt h;
          mpz_divexact_ui(h.get_mpz_t(), k.get_mpz_t(), 2);
          return h;
        }
        return BigInt(3 * k + 1);
      };
      auto projected = detail::brent(n.k(), kstep, [](const BigInt&) { return false; }, fuel);
      if (const auto* c = std::get_if<CycleDetected>(&projected)) {
        report.projected = ProjectedCycle{c->entry, c->period};
      }
    }
  }
  return report;
}

/// True iff every value in the trace shares the start's reachability.
template <CollatzDomain T>
bool domain_closure_check(const Trace<T>& trace) {
  const bool r = is_reachable(trace.start);
  for (const T& v : trace.values) {
    if (is_reachable(v) != r) return false;
  }
  return true;
}

inline std::vector<BigInt> k_projection(const Trace<JElem>& trace) {
  std::vector<BigInt> ks;
  ks.reserve(trace.values.size());
  for (const JElem& v : trace.values) ks.push_back(v.k());
  return ks;
}

// ---- serialization ---------------------------------------------------------

/// "D"/"T" per primitive step.
template <class T>
std::string ops_string(const Trace<T>& trace) {
  std::string s;
  s.reserve(trace.ops.size());
  for (StepOp op : trace.ops) s.push_back(static_cast<char>(op));
  return s;
}

std::string to_text(const Trace<Nat>& trace);
std::string to_text(const Trace<JElem>& trace);
/// Compact JSON: start, algo, outcome, ops, values, odd_steps (big values as
/// decimal strings).
std::string to_json(const Trace<Nat>& trace);
std::string to_json(const Trace<JElem>& trace);

// ---- engine ----------------------------------------------------------------

namespace detail {

template <CollatzDomain T>
Trace<T> run_odd_steps(const T& n, std::uint64_t fuel, Algorithm algo, Instrument inst) {
  Trace<T> trace;
  trace.algo = algo;
  trace.start = n;
  trace.values.push_back(n);
  const T one = T::one();
  std::uint64_t steps = 0;

  // Halves the current value until odd. Returns false if the run stopped.
  auto burst = [&](std::uint64_t& k) {
    while (is_even(trace.values.back())) {
      if (steps == fuel) {
        trace.outcome = FuelExhausted{fuel};
        return false;
      }
      ++steps;
      if (!push_step(trace, StepOp::Div2)) return false;
      ++k;
    }
    return true;
  };

  std::uint64_t k0 = 0;
  if (!burst(k0)) return trace;

  const bool history = inst != Instrument::KM;
  OddStepRecord<T> rec{0, k0, trace.values.back(), 0, Nat(), k0};
  // Used by the equation guard only: n·3^i, kept incrementally.
  Nat n_times_pow3;
  if constexpr (std::is_same_v<T, Nat>) n_times_pow3 = n;
  trace.odd_steps.push_back(rec);

  auto keep_going = [&]() -> bool {
    const OddStepRecord<T>& r = trace.odd_steps.back();
    if constexpr (std::is_same_v<T, Nat>) {
      if (inst == Instrument::HistoryEquationGuard) return !(n_times_pow3 + r.Y == pow2(r.Z));
    }
    return !(r.m == one);
  };

  while (keep_going()) {
    if (steps == fuel) {
      trace.outcome = FuelExhausted{fuel};
      return trace;
    }
    ++steps;
    if (!push_step(trace, StepOp::TimesThreePlusOne)) return trace;
    std::uint64_t k = 0;
    if (!burst(k)) return trace;
    const OddStepRecord<T>& prev = trace.odd_steps.back();
    OddStepRecord<T> next;
    next.i = prev.i + 1;
    next.k = k;
    next.m = trace.values.back();
    next.X = next.i;
    next.Z = prev.Z + k;
    if (history) next.Y = prev.Y + prev.Y + prev.Y + pow2(prev.Z);
    if constexpr (std::is_same_v<T, Nat>) {
      if (inst == Instrument::HistoryEquationGuard) n_times_pow3 = n_times_pow3 + n_times_pow3 + n_times_pow3;
    }
    trace.odd_steps.push_back(std::move(next));
  }
  trace.outcome = Halted{steps};
  return trace;
}

}  // namespace detail

}  // namespace collatz_lab

#endif  // COLLATZ_LAB_TRAJECTORIES_HPP
