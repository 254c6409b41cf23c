#include "itrm/accelerator.hpp"

#include <algorithm>
#include <optional>
#include <sstream>

namespace itrm {

namespace {

// Value of a + d*k + n for k >= 1, kept as a term list in which the
// coefficient of each term is base + slope*k. At most one term has a slope.
struct AffineTerm {
  Ordinal exponent;
  Natural base;
  Natural slope;
};
using Affine = std::vector<AffineTerm>;

Affine affine(const Ordinal& a, const Ordinal& d, std::uint64_t n) {
  Affine out;
  if (d.is_zero()) {
    const Ordinal value = add(a, Ordinal(n));
    for (const auto& t : value.terms()) out.push_back(AffineTerm{t.exponent, t.coefficient, 0});
    return out;
  }
  const Ordinal& e = d.leading_exponent();
  Natural a_e = 0;
  for (const auto& t : a.terms()) {
    if (t.exponent > e) out.push_back(AffineTerm{t.exponent, t.coefficient, 0});
    else if (t.exponent == e) a_e = t.coefficient;
  }
  out.push_back(AffineTerm{e, a_e, d.leading_coefficient()});
  for (std::size_t i = 1; i < d.terms().size(); ++i) {
    out.push_back(AffineTerm{d.terms()[i].exponent, d.terms()[i].coefficient, 0});
  }
  if (n > 0) {
    if (out.back().exponent.is_zero()) out.back().base += n;
    else out.push_back(AffineTerm{Ordinal{}, Natural(n), 0});
  }
  return out;
}

enum class Solutions { None, All, Some };

// For which k >= 1 do f(k) and g(k) agree?
Solutions solve_equal(const Affine& f, const Affine& g) {
  if (f.size() != g.size()) return Solutions::None;
  bool all = true;
  std::optional<Natural> only;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i].exponent != g[i].exponent) return Solutions::None;
    if (f[i].slope == g[i].slope) {
      if (f[i].base != g[i].base) return Solutions::None;
      continue;
    }
    // base1 + slope1*k = base2 + slope2*k
    Natural num = g[i].base - f[i].base;
    Natural den = f[i].slope - g[i].slope;
    if (den < 0) num = -num, den = -den;
    if (num <= 0 || num % den != 0) return Solutions::None;
    const Natural k = num / den;
    if (only && *only != k) return Solutions::None;
    only = k;
    all = false;
  }
  return all ? Solutions::All : Solutions::Some;
}

Ordinal evaluate(const SymbolicValue& v, const Configuration& start, const std::vector<Ordinal>& deltas,
                 std::uint64_t k) {
  if (v.source == 0) return v.constant;
  const Ordinal grown = add(start.reg(v.source), mul(deltas[v.source - 1], Ordinal(k)));
  return add(grown, Ordinal(v.offset));
}

Affine affine_of(const SymbolicValue& v, const Configuration& start, const std::vector<Ordinal>& deltas) {
  if (v.source == 0) return affine(v.constant, Ordinal{}, 0);
  return affine(start.reg(v.source), deltas[v.source - 1], v.offset);
}

bool is_stable(const SymbolicValue& v, const std::vector<Ordinal>& deltas) {
  return v.source == 0 || deltas[v.source - 1].is_zero();
}

std::vector<Ordinal> deltas_of(const std::vector<RegisterBehavior>& regs) {
  std::vector<Ordinal> out;
  for (const auto& r : regs) {
    if (const auto* inc = std::get_if<IncreasingBehavior>(&r)) out.push_back(inc->delta);
    else out.emplace_back();
  }
  return out;
}

std::optional<LoopCertificate> try_period(const Program& prog, const std::vector<Configuration>& w,
                                          std::size_t period) {
  const std::size_t n = prog.register_count;
  const std::size_t s = w.size() - 1 - 3 * period;
  for (std::size_t i = s; i + period < w.size(); ++i) {
    if (w[i].line != w[i + period].line) return std::nullopt;
  }

  // Per-period deltas must agree over three periods.
  std::vector<Ordinal> deltas(n);
  for (std::size_t r = 1; r <= n; ++r) {
    std::optional<Ordinal> d;
    for (std::size_t k = 0; k < 3; ++k) {
      const Ordinal& lo = w[s + k * period].reg(r);
      const Ordinal& hi = w[s + (k + 1) * period].reg(r);
      if (hi < lo) return std::nullopt;
      Ordinal step = left_sub(hi, lo);
      if (d && *d != step) return std::nullopt;
      d = std::move(step);
    }
    deltas[r - 1] = std::move(*d);
  }

  // One period of symbolic execution along the observed lines.
  const Configuration& start = w[s];
  std::vector<SymbolicValue> state(n);
  for (std::size_t r = 1; r <= n; ++r) state[r - 1] = SymbolicValue{r, Ordinal{}, 0};
  LoopCertificate cert;
  cert.period = period;
  cert.start_step = s;
  cert.start = start;
  cert.oracle_stable = true;
  for (std::size_t p = 0; p < period; ++p) {
    cert.phases.push_back(state);
    const std::size_t line = w[s + p].line;
    const std::size_t next = w[s + p + 1].line;
    cert.line_cycle.push_back(line);
    bool ok = true;
    std::visit(
        [&](const auto& ins) {
          using T = std::decay_t<decltype(ins)>;
          if constexpr (std::is_same_v<T, Inc>) {
            SymbolicValue& v = state[ins.reg - 1];
            if (v.source == 0) v.constant = add(v.constant, Ordinal(1));
            else ++v.offset;
          } else if constexpr (std::is_same_v<T, Copy>) {
            state[ins.dst - 1] = state[ins.src - 1];
          } else if constexpr (std::is_same_v<T, JumpEq>) {
            const std::size_t fallthrough = line == prog.size() ? 1 : line + 1;
            if (ins.target == fallthrough) return;
            const bool jumped = next == ins.target;
            const Solutions sol = solve_equal(affine_of(state[ins.lhs - 1], start, deltas),
                                              affine_of(state[ins.rhs - 1], start, deltas));
            ok = jumped ? sol == Solutions::All : sol == Solutions::None;
          } else if constexpr (std::is_same_v<T, OracleQuery>) {
            SymbolicValue& v = state[ins.reg - 1];
            if (!is_stable(v, deltas)) {
              cert.oracle_stable = false;
              ok = false;
              return;
            }
            v = SymbolicValue{0, w[s + p + 1].reg(ins.reg), 0};
          } else {
            ok = false;
          }
        },
        prog.at(line));
    if (!ok) return std::nullopt;
  }

  // The end-of-period state must reproduce the per-register progression.
  for (std::size_t r = 1; r <= n; ++r) {
    const SymbolicValue& v = state[r - 1];
    if (v.source == 0) {
      if (!deltas[r - 1].is_zero()) return std::nullopt;
    } else if (deltas[v.source - 1] != deltas[r - 1]) {
      return std::nullopt;
    }
    // R_r(k+1) = R_src(k) + offset against R_r(0) + delta*(k+1), for all k.
    const Affine lhs = affine_of(v, start, deltas);
    const Affine rhs = affine(add(start.reg(r), deltas[r - 1]), deltas[r - 1], 0);
    if (evaluate(v, start, deltas, 0) != w[s + period].reg(r)) return std::nullopt;
    if (solve_equal(lhs, rhs) != Solutions::All) return std::nullopt;
  }

  for (std::size_t r = 1; r <= n; ++r) {
    if (deltas[r - 1].is_zero()) cert.registers.emplace_back(ConstantBehavior{start.reg(r)});
    else cert.registers.emplace_back(IncreasingBehavior{deltas[r - 1]});
  }

  // Every phase expression must match all observed periods.
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t p = 0; p < period; ++p) {
      const Configuration& c = w[s + k * period + p];
      for (std::size_t r = 1; r <= n; ++r) {
        if (evaluate(cert.phases[p][r - 1], start, deltas, k) != c.reg(r)) return std::nullopt;
      }
    }
  }
  return cert;
}

}  // namespace

std::optional<LoopCertificate> detect_cycle(const Program& prog, const std::vector<Configuration>& window,
                                            const AcceleratorConfig& config) {
  if (window.size() < 4) return std::nullopt;
  for (const auto& c : window) {
    if (c.halted) return std::nullopt;
  }
  const std::size_t limit = std::min(config.max_period, (window.size() - 1) / 3);
  for (std::size_t period = 1; period <= limit; ++period) {
    if (auto cert = try_period(prog, window, period)) return cert;
  }
  return std::nullopt;
}

LimitCrossing apply_certificate(const MachineSpec& spec, const Program& prog, const LoopCertificate& cert,
                                const Configuration& c) {
  if (c != cert.start) throw StaleCertificateError("configuration differs from the certified start");
  const std::vector<Ordinal> deltas = deltas_of(cert.registers);

  Configuration live = c;
  for (std::size_t k = 0; k < 3; ++k) {
    for (std::size_t p = 0; p < cert.period; ++p) {
      if (live.halted || live.line != cert.line_cycle[p]) {
        throw StaleCertificateError("replay left the certified line cycle");
      }
      for (std::size_t r = 1; r <= prog.register_count; ++r) {
        if (evaluate(cert.phases[p][r - 1], cert.start, deltas, k) != live.reg(r)) {
          throw StaleCertificateError("replay disagrees with the certified register values");
        }
      }
      live = step(spec, prog, live);
    }
  }

  const Ordinal omega = Ordinal::omega();
  LimitHistory h;
  std::vector<Ordinal> lines;
  for (std::size_t l : cert.line_cycle) lines.emplace_back(static_cast<std::uint64_t>(l));
  h.line = SequenceDescriptor{omega, {DigitTrend{Ordinal{}, OscillatingDigit{lines}}}};

  for (std::size_t r = 1; r <= prog.register_count; ++r) {
    // Each phase converges; the liminf over all times is the least phase limit.
    std::optional<Ordinal> best;
    std::optional<SequenceDescriptor> best_desc;
    for (std::size_t p = 0; p < cert.period; ++p) {
      const SymbolicValue& v = cert.phases[p][r - 1];
      Ordinal limit;
      SequenceDescriptor desc;
      if (is_stable(v, deltas)) {
        limit = evaluate(v, cert.start, deltas, 0);
        desc = constant_sequence(limit, omega);
      } else {
        const Ordinal& a = cert.start.reg(v.source);
        const Ordinal& d = deltas[v.source - 1];
        desc.base = omega;
        for (const auto& t : a.terms()) {
          if (t.exponent > d.leading_exponent()) {
            desc.digits.push_back(DigitTrend{t.exponent, ConstantDigit{Ordinal(t.coefficient)}});
          }
        }
        desc.digits.push_back(DigitTrend{d.leading_exponent(), IncreasingDigit{omega}});
        limit = add(a, mul(d, omega));
      }
      if (!best || limit < *best) {
        best = std::move(limit);
        best_desc = std::move(desc);
      }
    }
    h.registers.push_back(std::move(*best_desc));
  }
  return LimitCrossing{omega, limit_config(spec, prog, h)};
}

std::vector<std::pair<std::string, std::uint64_t>> RepetitionCensus::sorted() const {
  std::vector<std::pair<std::string, std::uint64_t>> out(counts.begin(), counts.end());
  std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
  return out;
}

std::string RepetitionCensus::report() const {
  std::ostringstream out;
  for (const auto& [config, count] : sorted()) out << count << "\t" << config << "\n";
  return out.str();
}

RepetitionCensus repetition_census(const std::vector<Configuration>& trace) {
  RepetitionCensus census;
  for (const auto& c : trace) {
    const std::uint64_t n = ++census.counts[canonical_form(c)];
    if (n > census.max_count) {
      census.max_count = n;
      census.most_repeated = canonical_form(c);
    }
  }
  return census;
}

}  // namespace itrm
