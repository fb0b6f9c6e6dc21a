#include "collatz_lab/trajectories.hpp"

#include <json.hpp>
#include <sstream>

namespace collatz_lab {

using ordered_json = nlohmann::ordered_json;

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::Cl: return "cl";
    case Algorithm::Gr: return "gr";
    case Algorithm::Gr1: return "gr1";
    case Algorithm::Gr2: return "gr2";
    case Algorithm::Gr3: return "gr3";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view name) {
  for (Algorithm a : {Algorithm::Cl, Algorithm::Gr, Algorithm::Gr1, Algorithm::Gr2, Algorithm::Gr3}) {
    if (name == to_string(a)) return a;
  }
  throw PreconditionError("unknown algorithm '" + std::string(name) + "'");
}

std::string describe(const RunOutcome& o) {
  struct {
    std::string operator()(const Halted& h) const { return "halted steps=" + std::to_string(h.steps); }
    std::string operator()(const FuelExhausted& f) const { return "fuel_exhausted fuel=" + std::to_string(f.fuel); }
    std::string operator()(const CycleDetected& c) const {
      return "cycle entry=" + std::to_string(c.entry) + " period=" + std::to_string(c.period);
    }
  } visitor;
  return std::visit(visitor, o);
}

Trace<Nat> run_gr2(const Nat& n, std::uint64_t fuel) {
  if (n.is_zero()) throw PreconditionError("Gr2 requires n >= 1");
  return detail::run_odd_steps(n, fuel, Algorithm::Gr2, detail::Instrument::History);
}

Trace<Nat> run_gr3(const Nat& n, std::uint64_t fuel) {
  if (n.is_zero()) throw PreconditionError("Gr3 requires n >= 1");
  return detail::run_odd_steps(n, fuel, Algorithm::Gr3, detail::Instrument::HistoryEquationGuard);
}

Trace<Nat> run_algorithm(Algorithm algo, const Nat& n, std::uint64_t fuel) {
  switch (algo) {
    case Algorithm::Cl: return run_cl(n, fuel);
    case Algorithm::Gr: return run_gr(n, fuel);
    case Algorithm::Gr1: return run_gr1(n, fuel);
    case Algorithm::Gr2: return run_gr2(n, fuel);
    case Algorithm::Gr3: return run_gr3(n, fuel);
  }
  throw PreconditionError("unknown algorithm");
}

Trace<JElem> run_algorithm(Algorithm algo, const JElem& n, std::uint64_t fuel) {
  switch (algo) {
    case Algorithm::Cl: return run_cl(n, fuel);
    case Algorithm::Gr: return run_gr(n, fuel);
    case Algorithm::Gr1: return run_gr1(n, fuel);
    case Algorithm::Gr2:
    case Algorithm::Gr3: break;
  }
  throw PreconditionError(to_string(algo) + " runs over the standard domain only");
}

InvariantReport check_invariant(const Trace<Nat>& trace) {
  InvariantReport report;
  const Nat& n = trace.start;
  std::uint64_t z_sum = 0;
  Nat pow3_i = Nat::one();
  const auto fail = [&](std::size_t i, std::string clause) {
    report.ok = false;
    report.first_failure = i;
    report.clause = std::move(clause);
    return report;
  };
  for (std::size_t idx = 0; idx < trace.odd_steps.size(); ++idx) {
    const auto& r = trace.odd_steps[idx];
    z_sum += r.k;
    if (idx > 0) pow3_i = pow3_i * Nat(3);
    if (r.i != idx || r.X != idx) return fail(idx, "X_i = i");
    if (r.Z != z_sum) return fail(idx, "Z_i = sum k_j");
    if (idx == 0 ? !r.Y.is_zero() : !(r.Y == Nat(3) * trace.odd_steps[idx - 1].Y + pow2(trace.odd_steps[idx - 1].Z))) {
      return fail(idx, "Y_i = 3 Y_{i-1} + 2^{Z_{i-1}}");
    }
    const Nat rhs = r.m.shl(r.Z);
    if (!(n * pow3_i + r.Y == rhs)) return fail(idx, "n*3^i + Y_i = m_i*2^Z_i");
    if (rhs < r.Y) return fail(idx, "recovery: m_i*2^Z_i >= Y_i");
    const BigInt diff = (rhs - r.Y).big();
    if (!mpz_divisible_p(diff.get_mpz_t(), pow3_i.big().get_mpz_t())) return fail(idx, "recovery: 3^i divides");
    BigInt quotient;
    mpz_divexact(quotient.get_mpz_t(), diff.get_mpz_t(), pow3_i.big().get_mpz_t());
    if (!(Nat(quotient) == n)) return fail(idx, "recovery: quotient = n");
    ++report.steps_checked;
  }
  return report;
}

namespace {

ordered_json outcome_json(const RunOutcome& o) {
  struct {
    ordered_json operator()(const Halted& h) const { return {{"kind", "halted"}, {"steps", h.steps}}; }
    ordered_json operator()(const FuelExhausted& f) const { return {{"kind", "fuel_exhausted"}, {"fuel", f.fuel}}; }
    ordered_json operator()(const CycleDetected& c) const {
      return {{"kind", "cycle"}, {"entry", c.entry}, {"period", c.period}};
    }
  } visitor;
  return std::visit(visitor, o);
}

template <class T>
std::string trace_json(const Trace<T>& trace) {
  ordered_json j;
  j["algo"] = to_string(trace.algo);
  j["start"] = render(trace.start);
  j["outcome"] = outcome_json(trace.outcome);
  j["ops"] = ops_string(trace);
  ordered_json values = ordered_json::array();
  for (const T& v : trace.values) values.push_back(render(v));
  j["values"] = std::move(values);
  ordered_json odd = ordered_json::array();
  for (const auto& r : trace.odd_steps) {
    odd.push_back({{"i", std::to_string(r.i)},
                   {"k", std::to_string(r.k)},
                   {"m", render(r.m)},
                   {"X", std::to_string(r.X)},
                   {"Y", r.Y.str()},
                   {"Z", std::to_string(r.Z)}});
  }
  j["odd_steps"] = std::move(odd);
  return j.dump();
}

template <class T>
std::string trace_text(const Trace<T>& trace) {
  std::ostringstream out;
  out << "algo " << to_string(trace.algo) << "\n";
  out << "start " << render(trace.start) << "\n";
  for (std::size_t t = 0; t < trace.values.size(); ++t) {
    out << "value " << t << " " << render(trace.values[t]);
    if (t < trace.ops.size()) out << " " << static_cast<char>(trace.ops[t]);
    out << "\n";
  }
  for (const auto& r : trace.odd_steps) {
    out << "odd " << r.i << " k=" << r.k << " m=" << render(r.m) << " X=" << r.X << " Y=" << r.Y.str()
        << " Z=" << r.Z << "\n";
  }
  out << "outcome " << describe(trace.outcome) << "\n";
  return out.str();
}

}  // namespace

std::string to_text(const Trace<Nat>& trace) { return trace_text(trace); }
std::string to_text(const Trace<JElem>& trace) { return trace_text(trace); }
std::string to_json(const Trace<Nat>& trace) { return trace_json(trace); }
std::string to_json(const Trace<JElem>& trace) { return trace_json(trace); }

}  // namespace collatz_lab
