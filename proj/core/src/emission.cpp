#include "magvac/emission.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <ostream>
#include <thread>

#include "json.hpp"
#include "magvac/detail/quadrature.hpp"
#include "magvac/errors.hpp"
#include "magvac/specfun.hpp"

namespace magvac::emission {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kHalfPi = 0.5 * M_PI;
constexpr double kMeasureNorm = 1.0 / (8.0 * M_PI * M_PI);  // 1/((2pi)^2 2)

void require_field(double eB) {
  if (!(eB > 0.0)) throw DomainError("emission requires eB > 0");
}

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index writes
// only its own slot, so callers merge in index order afterwards.
void for_each_index(std::size_t n, unsigned workers,
                    const std::function<void(std::size_t)>& fn) {
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  if (workers <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::jthread> pool;
  pool.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) fn(i);
    });
  }
}

struct LineKey {
  std::size_t species;
  int n0;
};

std::vector<LineKey> enumerate_lines(const vacuum::FermionSet& fermions,
                                     int n0_max) {
  std::vector<LineKey> keys;
  for (std::size_t s = 0; s < fermions.size(); ++s) {
    for (int n0 = 1; n0 <= n0_max; ++n0) keys.push_back({s, n0});
  }
  return keys;
}

struct Integral {
  double value = 0.0;
  double error = 0.0;
};

Integral& operator+=(Integral& a, const Integral& b) {
  a.value += b.value;
  a.error += b.error;
  return a;
}

template <class F>
Integral quad(F&& f, double a, double b, double rel_tol) {
  if (!(b > a)) return {};
  detail::QuadOptions opt;
  opt.rel_tol = rel_tol;
  opt.abs_tol = 1e-300;
  const auto r = detail::integrate(std::forward<F>(f), a, b, opt);
  return {r.value, r.error};
}

// Number (or energy, with_energy) carried by both mirror halves of a line
// between polar angles theta_lo < theta_hi <= pi/2.
Integral line_segment(const vacuum::FermionSpecies& sp, int n0, double eB,
                      const units::PhysicalConstants& c, Measure measure,
                      double theta_lo, double theta_hi, bool with_energy,
                      double rel_tol) {
  const LineGeometry g(n0, sp.mass_eV, eB);
  auto f = [&](double theta) {
    const double d = line_density(sp, n0, eB, theta, c, measure);
    return with_energy ? d * g.momentum(theta) : d;
  };
  Integral r = quad(f, theta_lo, theta_hi, rel_tol);
  r.value *= 2.0;
  r.error *= 2.0;
  return r;
}

// Profile density per unit k_perp for line n0 after integrating
// |k_par| <= k_par_cut.
double profile_density(double k_perp, int n0,
                       const vacuum::FermionSet& fermions, double eB,
                       const units::PhysicalConstants& c, Measure measure,
                       double k_par_cut, bool with_energy) {
  const double kernel = rate_kernel(k_perp, n0, fermions, eB, c);
  if (kernel == 0.0) return 0.0;
  if (measure == Measure::paper) {
    const double n = kernel * 2.0 * k_par_cut * kMeasureNorm;
    return with_energy ? n * k_perp : n;
  }
  // exact measure carries k_perp / omega; integrate over k_par analytically
  if (with_energy) return kernel * 2.0 * k_par_cut * k_perp * kMeasureNorm;
  if (k_perp == 0.0) return 0.0;
  return kernel * 2.0 * k_perp * std::asinh(k_par_cut / k_perp) * kMeasureNorm;
}

double resolve_k_par_cut(const SpectrumOptions& opt, double eB) {
  if (opt.k_par_max > 0.0) return opt.k_par_max;
  return opt.mode == SpectrumMode::profile ? 3.0 * std::sqrt(eB) : kInf;
}

void validate_common(const vacuum::FermionSet& fermions, int n0_max) {
  if (n0_max < 1) throw ConfigError("n0_max must be >= 1");
  if (n0_max > specfun::kDefaultHermiteMax) {
    throw LimitError("n0_max exceeds the Hermite order limit");
  }
  if (fermions.empty()) throw ConfigError("fermion set is empty");
}

}  // namespace

double PhotonMode::omega() const { return std::hypot(k_perp, k_par); }

double quantization_n0(const PhotonMode& mode, double m, double eB) {
  require_field(eB);
  return (mode.k_perp * mode.k_perp + 2.0 * mode.omega() * m) / (2.0 * eB);
}

bool is_on_shell(const PhotonMode& mode, double m, double eB, double tol) {
  const double n0 = quantization_n0(mode, m, eB);
  const double nearest = std::round(n0);
  if (nearest < 1.0) return false;
  return std::abs(n0 - nearest) <= tol * nearest;
}

double species_kernel(double k_perp, int n0,
                      const vacuum::FermionSpecies& species, double eB,
                      const units::PhysicalConstants& c) {
  require_field(eB);
  if (n0 < 1) throw DomainError("emission lines start at n0 = 1");
  if (species.charge == 0.0) return 0.0;
  const double x = k_perp / std::sqrt(eB);
  const auto h = specfun::hermite_log(n0, x);
  if (h.sign == 0) return 0.0;
  // (1/pi) * 2pi = 2
  const double prefactor = 2.0 * c.charge_squared() * species.colors *
                           species.charge * species.charge *
                           (species.mass_eV / eB);
  return std::exp(std::log(prefactor) - specfun::log_weight(n0) +
                  2.0 * h.log_abs - x * x);
}

double rate_kernel(double k_perp, int n0, const vacuum::FermionSet& fermions,
                   double eB, const units::PhysicalConstants& c) {
  double sum = 0.0;
  for (const auto& f : fermions.species()) {
    sum += species_kernel(k_perp, n0, f, eB, c);
  }
  return sum;
}

double rate_kernel_first_line(double k_perp,
                              const vacuum::FermionSet& fermions, double eB,
                              const units::PhysicalConstants& c) {
  require_field(eB);
  double qm = 0.0;
  for (const auto& f : fermions.species()) {
    qm += f.colors * f.charge * f.charge * f.mass_eV;
  }
  return 4.0 * c.charge_squared() * std::exp(-k_perp * k_perp / eB) * k_perp *
         k_perp * qm / (eB * eB);
}

LineGeometry::LineGeometry(int n0, double m, double eB)
    : n0_(n0), m_(m), eB_(eB) {
  require_field(eB);
  if (n0 < 1) throw DomainError("emission lines start at n0 = 1");
  if (!(m > 0.0)) throw DomainError("line geometry requires m > 0");
}

double LineGeometry::momentum(double theta) const {
  const double s = std::sin(theta);
  const double two_eBn = 2.0 * eB_ * n0_;
  return two_eBn / (m_ + std::sqrt(m_ * m_ + two_eBn * s * s));
}

double LineGeometry::k_perp(double theta) const {
  return momentum(theta) * std::abs(std::sin(theta));
}

double LineGeometry::k_par(double theta) const {
  return momentum(theta) * std::cos(theta);
}

double LineGeometry::k_perp_max() const { return momentum(kHalfPi); }

double LineGeometry::k_par_max() const { return eB_ * n0_ / m_; }

double LineGeometry::jacobian(double theta) const {
  const double s = std::sin(theta);
  return eB_ / (momentum(theta) * s * s + m_);
}

double LineGeometry::theta_at_k_perp(double k_perp) const {
  if (k_perp <= 0.0) return 0.0;
  if (k_perp >= k_perp_max()) return kHalfPi;
  // on shell: 2 m |k| = 2 eB n0 - k_perp^2
  const double k = (2.0 * eB_ * n0_ - k_perp * k_perp) / (2.0 * m_);
  return std::asin(std::min(1.0, k_perp / k));
}

double LineGeometry::theta_at_k_par(double k_par) const {
  if (!(k_par < k_par_max())) return 0.0;
  if (k_par <= 0.0) return kHalfPi;
  // |k|^2 + 2 m |k| = k_par^2 + 2 eB n0
  const double rhs = k_par * k_par + 2.0 * eB_ * n0_;
  const double k = rhs / (m_ + std::sqrt(m_ * m_ + rhs));
  return std::acos(std::min(1.0, k_par / k));
}

std::optional<double> solve_k_perp(int n0, double k_par, double m, double eB,
                                   double rel_tol) {
  require_field(eB);
  if (n0 < 1) throw DomainError("emission lines start at n0 = 1");
  const double target = 2.0 * eB * n0;
  auto f = [&](double kp) {
    return kp * kp + 2.0 * m * std::hypot(kp, k_par) - target;
  };
  double lo = 0.0;
  double hi = std::sqrt(target);
  if (f(lo) > 0.0) return std::nullopt;
  for (int it = 0; it < 400; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    (f(mid) > 0.0 ? hi : lo) = mid;
    if (hi - lo <= rel_tol * lo) break;
  }
  return 0.5 * (lo + hi);
}

std::string_view to_string(Measure m) {
  return m == Measure::paper ? "paper" : "exact";
}

std::string_view to_string(SpectrumMode m) {
  return m == SpectrumMode::lines ? "lines" : "profile";
}

double SpectrumTable::total_number_rate() const {
  double s = 0.0;
  for (const auto& b : bins) s += b.number_rate;
  return s;
}

double SpectrumTable::total_energy_rate() const {
  double s = 0.0;
  for (const auto& b : bins) s += b.energy_rate;
  return s;
}

double line_density(const vacuum::FermionSpecies& species, int n0, double eB,
                    double theta, const units::PhysicalConstants& c,
                    Measure measure) {
  const LineGeometry g(n0, species.mass_eV, eB);
  const double k = g.momentum(theta);
  const double s = std::abs(std::sin(theta));
  const double d = k * g.jacobian(theta) *
                   species_kernel(k * s, n0, species, eB, c) * kMeasureNorm;
  return measure == Measure::exact ? d * s : d;
}

SpectrumTable spectrum(const units::FieldStrength& B,
                       const vacuum::FermionSet& fermions, int n0_max,
                       const Binning& binning,
                       const units::PhysicalConstants& c,
                       const SpectrumOptions& opt) {
  if (binning.bins <= 0) throw ConfigError("spectrum needs bins > 0");
  if (binning.k_perp_max < 0.0) throw ConfigError("k_perp_max must be >= 0");
  validate_common(fermions, n0_max);

  SpectrumTable table;
  table.fermions = fermions;
  auto& meta = table.meta;
  meta.B_gauss = B.gauss();
  meta.eB = B.eB();
  meta.constants_mode = c.mode;
  meta.n0_max = n0_max;
  meta.mode = opt.mode;
  meta.measure = opt.measure;
  const double eB = B.eB();
  if (eB == 0.0) return table;

  for (const auto& f : fermions.species()) {
    if (eB / (f.mass_eV * f.mass_eV) > 0.1) meta.light_species.push_back(f.name);
  }
  const double k_par_cut = resolve_k_par_cut(opt, eB);
  meta.k_par_max = k_par_cut;

  if (opt.mode == SpectrumMode::profile) {
    const double top = binning.k_perp_max > 0.0
                           ? binning.k_perp_max
                           : std::sqrt(eB) * (std::sqrt(2.0 * n0_max + 1.0) + 7.0);
    const auto nb = static_cast<std::size_t>(binning.bins);
    std::vector<SpectrumBin> bins(nb);
    for_each_index(nb, opt.workers, [&](std::size_t i) {
      auto& b = bins[i];
      b.k_perp_lo = top * static_cast<double>(i) / static_cast<double>(nb);
      b.k_perp_hi = top * static_cast<double>(i + 1) / static_cast<double>(nb);
      for (int n0 = 1; n0 <= n0_max; ++n0) {
        for (bool energy : {false, true}) {
          const auto r = quad(
              [&](double kp) {
                return profile_density(kp, n0, fermions, eB, c, opt.measure,
                                       k_par_cut, energy);
              },
              b.k_perp_lo, b.k_perp_hi, opt.rel_tol);
          (energy ? b.energy_rate : b.number_rate) += r.value;
        }
      }
    });
    table.bins = std::move(bins);
    return table;
  }

  // Line spectrum
  const auto keys = enumerate_lines(fermions, n0_max);
  double top = binning.k_perp_max;
  if (top == 0.0) {
    for (const auto& key : keys) {
      const LineGeometry g(key.n0, fermions[key.species].mass_eV, eB);
      top = std::max(top, g.k_perp_max());
    }
  }
  const auto nb = static_cast<std::size_t>(binning.bins);
  std::vector<double> edges(nb + 1);
  for (std::size_t i = 0; i <= nb; ++i) {
    edges[i] = top * static_cast<double>(i) / static_cast<double>(nb);
  }

  struct LineResult {
    PhotonLine line;
    std::vector<std::pair<std::size_t, SpectrumBin>> bins;
  };
  std::vector<LineResult> results(keys.size());
  for_each_index(keys.size(), opt.workers, [&](std::size_t i) {
    const auto& key = keys[i];
    const auto& sp = fermions[key.species];
    const LineGeometry g(key.n0, sp.mass_eV, eB);
    const double theta_min = g.theta_at_k_par(k_par_cut);
    auto& out = results[i];
    out.line.n0 = key.n0;
    out.line.species = key.species;
    out.line.weight = line_segment(sp, key.n0, eB, c, opt.measure, theta_min,
                                   kHalfPi, false, opt.rel_tol).value;
    out.line.energy_weight = line_segment(sp, key.n0, eB, c, opt.measure,
                                          theta_min, kHalfPi, true, opt.rel_tol).value;
    out.line.omega = out.line.weight > 0.0
                         ? out.line.energy_weight / out.line.weight
                         : g.momentum(kHalfPi);
    for (std::size_t b = 0; b < nb; ++b) {
      const double lo = std::max(theta_min, g.theta_at_k_perp(edges[b]));
      const double hi = g.theta_at_k_perp(edges[b + 1]);
      if (!(hi > lo)) continue;
      SpectrumBin bin{edges[b], edges[b + 1], 0.0, 0.0};
      bin.number_rate =
          line_segment(sp, key.n0, eB, c, opt.measure, lo, hi, false, opt.rel_tol).value;
      bin.energy_rate =
          line_segment(sp, key.n0, eB, c, opt.measure, lo, hi, true, opt.rel_tol).value;
      out.bins.emplace_back(b, bin);
    }
  });

  table.bins.resize(nb);
  for (std::size_t b = 0; b < nb; ++b) {
    table.bins[b].k_perp_lo = edges[b];
    table.bins[b].k_perp_hi = edges[b + 1];
  }
  for (const auto& r : results) {
    table.lines.push_back(r.line);
    for (const auto& [b, bin] : r.bins) {
      table.bins[b].number_rate += bin.number_rate;
      table.bins[b].energy_rate += bin.energy_rate;
    }
  }
  return table;
}

double mean_photon_number(const units::FieldStrength& B,
                          const vacuum::FermionSet& fermions, int n0_max,
                          const Cutoffs& cutoffs,
                          const units::PhysicalConstants& c,
                          const SpectrumOptions& opt) {
  validate_common(fermions, n0_max);
  if (!(cutoffs.k_perp_max > 0.0) || !(cutoffs.k_par_max > 0.0)) {
    throw ConfigError("cutoffs must be positive");
  }
  const double eB = B.eB();
  if (eB == 0.0) return 0.0;

  Integral total;
  if (opt.mode == SpectrumMode::profile) {
    if (!std::isfinite(cutoffs.k_perp_max) || !std::isfinite(cutoffs.k_par_max)) {
      throw ConfigError("profile mode needs finite k_perp and k_par cutoffs");
    }
    std::vector<Integral> per_line(static_cast<std::size_t>(n0_max));
    for_each_index(per_line.size(), opt.workers, [&](std::size_t i) {
      const int n0 = static_cast<int>(i) + 1;
      per_line[i] = quad(
          [&](double kp) {
            return profile_density(kp, n0, fermions, eB, c, opt.measure,
                                   cutoffs.k_par_max, false);
          },
          0.0, cutoffs.k_perp_max, opt.rel_tol);
    });
    for (const auto& p : per_line) total += p;
  } else {
    const double k_par_cut =
        std::min(cutoffs.k_par_max, resolve_k_par_cut(opt, eB));
    const auto keys = enumerate_lines(fermions, n0_max);
    std::vector<Integral> per_line(keys.size());
    for_each_index(keys.size(), opt.workers, [&](std::size_t i) {
      const auto& sp = fermions[keys[i].species];
      const LineGeometry g(keys[i].n0, sp.mass_eV, eB);
      per_line[i] = line_segment(sp, keys[i].n0, eB, c, opt.measure,
                                 g.theta_at_k_par(k_par_cut),
                                 g.theta_at_k_perp(cutoffs.k_perp_max), false,
                                 opt.rel_tol);
    });
    for (const auto& p : per_line) total += p;
  }
  if (total.error > 1e-6 * std::abs(total.value)) {
    throw AccuracyError("mean_photon_number quadrature error above 1e-6");
  }
  return total.value;
}

double poisson_probability(double n_bar, long long n) {
  if (!(n_bar >= 0.0)) throw DomainError("poisson mean must be >= 0");
  if (n < 0) throw DomainError("poisson count must be >= 0");
  if (n_bar == 0.0) return n == 0 ? 1.0 : 0.0;
  return std::exp(static_cast<double>(n) * std::log(n_bar) - n_bar -
                  specfun::log_factorial(n));
}

FourierHermiteResult fourier_hermite_check(int n, double k_x, double eB,
                                           double p_y) {
  require_field(eB);
  if (n < 0) throw DomainError("hermite order must be >= 0");
  const double root = std::sqrt(eB);
  const double scale = std::sqrt(2.0 * M_PI / eB);
  const double x0 = p_y / eB;
  // exp(-xi^2/2) H_n(xi) is below 1e-40 of its peak past this |xi|
  const double xi_max = 14.0 + 2.0 * std::sqrt(2.0 * n + 1.0);

  auto integrand = [&](double x, bool imag) {
    const double xi = root * (x - x0);
    const double envelope = std::exp(-0.5 * xi * xi) * specfun::hermite(n, xi);
    const double phase = -k_x * x;
    return envelope * (imag ? std::sin(phase) : std::cos(phase));
  };
  detail::QuadOptions qopt;
  qopt.rel_tol = 1e-12;
  qopt.abs_tol = 1e-14 * scale;
  const double a = x0 - xi_max / root;
  const double b = x0 + xi_max / root;
  const auto re = detail::integrate([&](double x) { return integrand(x, false); }, a, b, qopt);
  const auto im = detail::integrate([&](double x) { return integrand(x, true); }, a, b, qopt);
  if (!re.converged || !im.converged) {
    throw AccuracyError("fourier_hermite_check quadrature did not converge");
  }

  FourierHermiteResult r;
  r.lhs = {re.value, im.value};
  const double kappa = k_x / root;
  std::complex<double> minus_i_pow{1.0, 0.0};
  for (int j = 0; j < n; ++j) minus_i_pow *= std::complex<double>(0.0, -1.0);
  r.rhs = minus_i_pow * scale * std::polar(1.0, -k_x * x0) *
          specfun::hermite(n, kappa) * std::exp(-0.5 * kappa * kappa);
  const double diff = std::abs(r.lhs - r.rhs);
  if (std::abs(r.rhs) > 1e-12 * scale) {
    r.residual = diff / std::abs(r.rhs);
  } else {
    r.residual = diff;
    r.absolute = true;
  }
  return r;
}

void write_csv(std::ostream& out, const SpectrumTable& table) {
  out << "k_perp_lo_eV,k_perp_hi_eV,number_rate,energy_rate\n";
  char buf[160];
  for (const auto& b : table.bins) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g\n", b.k_perp_lo,
                  b.k_perp_hi, b.number_rate, b.energy_rate);
    out << buf;
  }
}

std::string to_json(const SpectrumTable& table, int indent) {
  using nlohmann::json;
  const auto& m = table.meta;
  json species = json::array();
  for (const auto& f : table.fermions.species()) {
    species.push_back({{"name", f.name}, {"Q", f.charge},
                       {"mass_eV", f.mass_eV}, {"colors", f.colors}});
  }
  json meta = {
      {"field_gauss", m.B_gauss},
      {"eB_eV2", m.eB},
      {"constants_mode", std::string(units::to_string(m.constants_mode))},
      {"n0_range", {m.n0_min, m.n0_max}},
      {"mode", std::string(to_string(m.mode))},
      {"measure", std::string(to_string(m.measure))},
      {"k_par_max_eV", std::isfinite(m.k_par_max) ? json(m.k_par_max) : json(nullptr)},
      {"species", species},
      {"light_species", m.light_species},
      {"normalization", "kernel-normalized"},
  };
  json bins = json::array();
  for (const auto& b : table.bins) {
    bins.push_back({{"k_perp_lo_eV", b.k_perp_lo},
                    {"k_perp_hi_eV", b.k_perp_hi},
                    {"number_rate", b.number_rate},
                    {"energy_rate", b.energy_rate}});
  }
  json lines = json::array();
  for (const auto& l : table.lines) {
    lines.push_back({{"n0", l.n0},
                     {"species", table.fermions[l.species].name},
                     {"omega_eV", l.omega},
                     {"number_rate", l.weight},
                     {"energy_rate", l.energy_weight}});
  }
  json doc = {{"metadata", meta}, {"bins", bins}, {"lines", lines}};
  return doc.dump(indent);
}

}  // namespace magvac::emission
