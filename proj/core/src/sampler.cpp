#include "magvac/sampler.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "magvac/detail/quadrature.hpp"
#include "magvac/errors.hpp"
#include "magvac/rng.hpp"
#include "magvac/specfun.hpp"

namespace magvac::sampler {

namespace {

constexpr double kHalfPi = 0.5 * M_PI;

// Inverse CDF of one line over theta in [theta_min, pi/2]; the mirror half
// (pi - theta, negative k_par) is chosen by a separate bit.
struct LineTable {
  double theta_min = 0.0;
  double cell = 0.0;
  std::vector<double> cdf;  // cdf[0] = 0, cdf.back() = mass of one half
  double mass() const { return cdf.empty() ? 0.0 : cdf.back(); }

  double invert(double u) const {
    const double target = u * cdf.back();
    auto it = std::upper_bound(cdf.begin() + 1, cdf.end(), target);
    if (it == cdf.end()) --it;
    const auto j = static_cast<std::size_t>(it - cdf.begin()) - 1;
    const double width = cdf[j + 1] - cdf[j];
    const double frac = width > 0.0 ? (target - cdf[j]) / width : 0.5;
    return theta_min + cell * (static_cast<double>(j) + std::clamp(frac, 0.0, 1.0));
  }
};

LineTable build_line_table(const vacuum::FermionSpecies& sp, int n0, double eB,
                           double k_par_max, const units::PhysicalConstants& c,
                           emission::Measure measure, std::size_t grid) {
  const emission::LineGeometry g(n0, sp.mass_eV, eB);
  LineTable t;
  t.theta_min = g.theta_at_k_par(k_par_max);
  t.cell = (kHalfPi - t.theta_min) / static_cast<double>(grid);
  t.cdf.assign(grid + 1, 0.0);
  auto density = [&](double theta) {
    return emission::line_density(sp, n0, eB, theta, c, measure);
  };
  for (std::size_t j = 0; j < grid; ++j) {
    const double a = t.theta_min + t.cell * static_cast<double>(j);
    const auto panel = detail::gk15::evaluate(density, a, a + t.cell);
    t.cdf[j + 1] = t.cdf[j] + panel.value;
  }
  return t;
}

}  // namespace

PoissonSampler::PoissonSampler(double n_bar) : n_bar_(n_bar) {
  if (!(n_bar >= 0.0) || !std::isfinite(n_bar)) {
    throw DomainError("poisson mean must be finite and >= 0");
  }
  const auto n_max = static_cast<std::size_t>(
      std::ceil(n_bar + 40.0 * std::sqrt(n_bar + 1.0) + 10.0));
  cdf_.reserve(n_max + 1);
  double acc = 0.0;
  for (std::size_t n = 0; n <= n_max; ++n) {
    acc += emission::poisson_probability(n_bar, static_cast<long long>(n));
    cdf_.push_back(acc);
  }
}

std::uint64_t PoissonSampler::operator()(double u) const {
  const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
  if (it != cdf_.end()) return static_cast<std::uint64_t>(it - cdf_.begin());
  // beyond the table (probability < 1e-12): continue the sum directly
  double acc = cdf_.back();
  auto n = static_cast<long long>(cdf_.size());
  while (true) {
    const double p = emission::poisson_probability(n_bar_, n);
    acc += p;
    if (acc > u || p == 0.0) return static_cast<std::uint64_t>(n);
    ++n;
  }
}

std::uint64_t sample_count(double n_bar, std::uint64_t seed,
                           std::uint64_t draw) {
  const PoissonSampler sampler(n_bar);
  return sampler(rng::Stream(seed, kCountStream).uniforms(draw)[0]);
}

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DomainError("alias weights must be finite and >= 0");
    }
    total += w;
  }
  if (!(total > 0.0)) throw DomainError("alias table needs a positive weight");

  prob_.assign(n, 0.0);
  alias_.assign(n, 0);
  std::vector<double> scaled(n);
  std::vector<std::size_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    scaled[i] = weights[i] * static_cast<double>(n) / total;
    (scaled[i] < 1.0 ? small : large).push_back(i);
  }
  while (!small.empty() && !large.empty()) {
    const std::size_t s = small.back();
    small.pop_back();
    const std::size_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  for (std::size_t i : large) prob_[i] = 1.0;
  for (std::size_t i : small) prob_[i] = weights[i] > 0.0 ? 1.0 : 0.0;
  // zero-weight columns left over by rounding must never be returned
  for (std::size_t i = 0; i < n; ++i) {
    if (weights[i] == 0.0 && prob_[i] > 0.0) prob_[i] = 0.0;
  }
}

std::size_t AliasTable::sample(double u) const {
  const double x = u * static_cast<double>(prob_.size());
  const auto column = std::min(static_cast<std::size_t>(x), prob_.size() - 1);
  const double coin = x - static_cast<double>(column);
  return coin < prob_[column] ? column : alias_[column];
}

SampleRun sample_events(const emission::SpectrumTable& table,
                        std::size_t count, std::uint64_t seed,
                        const units::PhysicalConstants& c,
                        const SamplerOptions& opt) {
  if (table.meta.mode != emission::SpectrumMode::lines) {
    throw DomainError("sampling needs a line-resolved spectrum");
  }
  if (opt.grid < 1) throw ConfigError("sampler grid must be >= 1");
  const double eB = table.meta.eB;
  double positive = 0.0;
  for (const auto& l : table.lines) positive += std::max(0.0, l.weight);
  if (table.lines.empty() || !(positive > 0.0)) {
    throw DomainError("spectrum has no line with positive weight");
  }

  SampleRun run;
  run.seed = seed;
  run.stream = opt.stream;
  run.source = table;
  run.k_par_max = opt.k_par_max > 0.0 ? opt.k_par_max : 3.0 * std::sqrt(eB);
  run.k_par_max = std::min(run.k_par_max, table.meta.k_par_max);

  // Line probabilities follow the table weights; each is scaled by the part
  // of its line that survives the |k_par| cut. The angular shape comes from
  // line_density.
  std::vector<LineTable> lines(table.lines.size());
  std::vector<double> masses(table.lines.size(), 0.0);
  for (std::size_t i = 0; i < table.lines.size(); ++i) {
    const auto& l = table.lines[i];
    if (!(l.weight > 0.0)) continue;
    const auto& sp = table.fermions[l.species];
    lines[i] = build_line_table(sp, l.n0, eB, run.k_par_max, c,
                                table.meta.measure, opt.grid);
    const emission::LineGeometry g(l.n0, sp.mass_eV, eB);
    const double theta_table = g.theta_at_k_par(table.meta.k_par_max);
    double kept = 1.0;
    if (lines[i].theta_min > theta_table) {
      auto density = [&](double theta) {
        return emission::line_density(sp, l.n0, eB, theta, c, table.meta.measure);
      };
      detail::QuadOptions q;
      q.rel_tol = 1e-12;
      q.abs_tol = 1e-300;
      const double lost = detail::integrate(density, theta_table, lines[i].theta_min, q).value;
      const double full = lost + lines[i].mass();
      kept = full > 0.0 ? lines[i].mass() / full : 0.0;
    }
    masses[i] = l.weight * kept;
  }
  double kept = 0.0;
  for (double m : masses) kept += m;
  if (!(kept > 0.0)) throw DomainError("no line weight survives the k_par cut");
  run.truncation_fraction = std::max(0.0, 1.0 - kept / positive);
  run.line_probabilities.resize(masses.size());
  for (std::size_t i = 0; i < masses.size(); ++i) {
    run.line_probabilities[i] = masses[i] / kept;
  }
  const AliasTable alias(masses);
  const rng::Stream stream(seed, opt.stream);

  run.events.resize(count);
  auto draw = [&](std::size_t i) {
    const auto u = stream.uniforms(i);
    const std::size_t li = alias.sample(u[0]);
    const auto& line = table.lines[li];
    const auto& sp = table.fermions[line.species];
    // one bit of u[1] picks the hemisphere, the rest the angle
    const bool forward = u[1] < 0.5;
    const double v = forward ? 2.0 * u[1] : 2.0 * u[1] - 1.0;
    const emission::LineGeometry g(line.n0, sp.mass_eV, eB);
    const double theta = lines[li].invert(v);
    const double k_par_abs = g.k_par(theta);
    const double k_perp =
        emission::solve_k_perp(line.n0, k_par_abs, sp.mass_eV, eB).value_or(0.0);
    PhotonEvent& e = run.events[i];
    e.n0 = line.n0;
    e.species = line.species;
    e.k_par = forward ? k_par_abs : -k_par_abs;
    e.k_perp = k_perp;
    e.omega = std::hypot(k_perp, k_par_abs);
  };

  const unsigned workers =
      std::max(1u, std::min<unsigned>(opt.workers, static_cast<unsigned>(std::max<std::size_t>(count, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < count; ++i) draw(i);
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        const std::size_t lo = count * w / workers;
        const std::size_t hi = count * (w + 1) / workers;
        for (std::size_t i = lo; i < hi; ++i) draw(i);
      });
    }
  }
  return run;
}

std::string jsonl_header(const SampleRun& run) {
  using json = nlohmann::ordered_json;
  const auto& m = run.source.meta;
  json names = json::array();
  for (const auto& f : run.source.fermions.species()) names.push_back(f.name);
  const json header = {
      {"type", "header"},
      {"schema_version", 1},
      {"seed", run.seed},
      {"stream", run.stream},
      {"rng", std::string(rng::Philox4x32::kAlgorithm)},
      {"events", run.events.size()},
      {"n_bar_used", run.n_bar_used},
      {"k_par_max_eV", run.k_par_max},
      {"truncation_fraction", run.truncation_fraction},
      {"field_gauss", m.B_gauss},
      {"eB_eV2", m.eB},
      {"constants_mode", std::string(units::to_string(m.constants_mode))},
      {"measure", std::string(emission::to_string(m.measure))},
      {"n0_max", m.n0_max},
      {"species", names},
  };
  return header.dump();
}

void write_event_lines(std::ostream& out, const SampleRun& run) {
  using json = nlohmann::ordered_json;
  for (const auto& e : run.events) {
    json line = {{"n0", e.n0},
                 {"species", run.source.fermions[e.species].name},
                 {"omega_eV", e.omega},
                 {"k_perp_eV", e.k_perp},
                 {"k_par_eV", e.k_par}};
    out << line.dump() << '\n';
  }
}

void write_jsonl(std::ostream& out, const SampleRun& run) {
  out << jsonl_header(run) << '\n';
  write_event_lines(out, run);
}

}  // namespace magvac::sampler
