#include "magvac/vacuum.hpp"

#include <cmath>
#include <fstream>
#include <functional>
#include <thread>

#include "json.hpp"
#include "magvac/errors.hpp"
#include "magvac/specfun.hpp"

namespace magvac::vacuum {

namespace {

constexpr double kPi2 = M_PI * M_PI;

void validate(const FermionSpecies& s) {
  if (!(s.mass_eV > 0.0) || !std::isfinite(s.mass_eV)) {
    throw ConfigError("species '" + s.name + "': mass must be > 0");
  }
  if (!(std::abs(s.charge) <= 1.0)) {
    throw ConfigError("species '" + s.name + "': |Q| must be <= 1");
  }
  if (s.colors != 1 && s.colors != 3) {
    throw ConfigError("species '" + s.name + "': colors must be 1 or 3");
  }
}

// Splits [0, n) into `workers` contiguous chunks and sums fn over each.
// Integer partial sums make the total independent of the partition.
std::uint64_t partitioned_sum(std::int64_t n, unsigned workers,
                              const std::function<std::uint64_t(std::int64_t)>& fn) {
  if (n <= 0) return 0;
  workers = std::max(1u, std::min<unsigned>(workers, static_cast<unsigned>(n)));
  std::vector<std::uint64_t> partial(workers, 0);
  auto run = [&](unsigned w) {
    const std::int64_t lo = n * w / workers;
    const std::int64_t hi = n * (w + 1) / workers;
    std::uint64_t acc = 0;
    for (std::int64_t i = lo; i < hi; ++i) acc += fn(i);
    partial[w] = acc;
  };
  if (workers == 1) {
    run(0);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run, w);
  }
  std::uint64_t total = 0;
  for (auto p : partial) total += p;
  return total;
}

// Number of integers k with (2 pi k / L)^2 <= r2, boundary inclusive.
std::uint64_t lattice_points(double r2, double L) {
  if (r2 < 0.0) return 0;
  const double kmax = std::floor(L * std::sqrt(r2) / (2.0 * M_PI));
  return 2 * static_cast<std::uint64_t>(kmax) + 1;
}

}  // namespace

FermionSet::FermionSet(std::vector<FermionSpecies> species)
    : species_(std::move(species)) {
  for (const auto& s : species_) validate(s);
}

FermionSet FermionSet::standard_model() {
  // PDG 2022 masses (MS-bar for light quarks at 2 GeV).
  return FermionSet({
      {"e", -1.0, 0.51099895000e6, 1},
      {"mu", -1.0, 105.6583755e6, 1},
      {"tau", -1.0, 1776.86e6, 1},
      {"u", 2.0 / 3.0, 2.16e6, 3},
      {"c", 2.0 / 3.0, 1.27e9, 3},
      {"t", 2.0 / 3.0, 172.69e9, 3},
      {"d", -1.0 / 3.0, 4.67e6, 3},
      {"s", -1.0 / 3.0, 93.4e6, 3},
      {"b", -1.0 / 3.0, 4.18e9, 3},
  });
}

FermionSet FermionSet::electron_only(const units::PhysicalConstants& c) {
  return FermionSet({{"e", -1.0, c.m_e_eV, 1}});
}

double FermionSet::sum_charge_squared() const {
  double s = 0.0;
  for (const auto& f : species_) s += f.colors * f.charge * f.charge;
  return s;
}

FermionSet load_fermion_set(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open fermion set " + path.string());
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("fermion set " + path.string() +
                      " is not valid JSON: " + e.what());
  }
  const nlohmann::json& list =
      doc.is_object() && doc.contains("species") ? doc["species"] : doc;
  if (!list.is_array() || list.empty()) {
    throw ConfigError("fermion set must be a non-empty array of species");
  }
  std::vector<FermionSpecies> out;
  for (const auto& e : list) {
    try {
      FermionSpecies s;
      s.name = e.at("name").get<std::string>();
      s.charge = e.at("Q").get<double>();
      s.mass_eV = e.at("mass_eV").get<double>();
      s.colors = e.value("colors", 1);
      out.push_back(std::move(s));
    } catch (const nlohmann::json::exception& ex) {
      throw ConfigError(std::string("bad species entry: ") + ex.what());
    }
  }
  return FermionSet(std::move(out));
}

RegularizedEnergy operator-(const RegularizedEnergy& a,
                            const RegularizedEnergy& b) {
  return {a.label, a.mass_term - b.mass_term, a.cross_term - b.cross_term,
          a.field_term - b.field_term};
}

double free_energy_level(const std::array<double, 3>& p, double m) {
  return -std::hypot(std::hypot(p[0], p[1]), std::hypot(p[2], m));
}

double landau_energy(const LandauLevel& level, double m, double eB) {
  if (eB < 0.0) throw DomainError("landau_energy requires eB >= 0");
  if (level.n < 0) throw DomainError("Landau index must be >= 0");
  if (level.helicity != 1 && level.helicity != -1) {
    throw DomainError("helicity must be +1 or -1");
  }
  const double transverse = eB * (2.0 * level.n + 1.0 - level.helicity);
  return -std::sqrt(level.p_z * level.p_z + m * m + transverse);
}

double landau_degeneracy_per_area(double eB) { return eB / (2.0 * M_PI); }

RegularizedEnergy regularized_energy_free(double m, double volume) {
  if (m < 0.0) throw DomainError("mass must be >= 0");
  if (!(volume > 0.0)) throw DomainError("volume must be > 0");
  // V pi m^4 / (2 pi)^3
  return {RegularizedEnergy::Vacuum::initial,
          volume * m * m * m * m / (8.0 * kPi2), 0.0, 0.0};
}

RegularizedEnergy regularized_energy_landau(double m, double eB,
                                            double volume) {
  if (m < 0.0) throw DomainError("mass must be >= 0");
  if (eB < 0.0) throw DomainError("eB must be >= 0");
  if (eB == 0.0) {
    auto e = regularized_energy_free(m, volume);
    e.label = RegularizedEnergy::Vacuum::final;
    return e;
  }
  if (!(volume > 0.0)) throw DomainError("volume must be > 0");

  // Helicity sum: zeta(-1,q) + zeta(-1,q+1) = -[B2(q) + B2(q+1)] / 2, a
  // quadratic in q. Shift B2 by one and add coefficientwise.
  const auto b = specfun::bernoulli2_coefficients();
  const std::array<double, 3> shifted = {b[0] + b[1] + b[2], b[1] + 2.0 * b[2],
                                         b[2]};
  std::array<double, 3> s{};
  for (int i = 0; i < 3; ++i) s[i] = -0.5 * (b[i] + shifted[i]);

  // E_n = -(2 (eB)^2 V / 4 pi^2) Gamma [s0 + s1 q + s2 q^2], q = m^2 / 2eB.
  // Each power of q is folded into the prefactor before multiplying, so no
  // division by eB appears.
  const double m2 = m * m;
  RegularizedEnergy e;
  e.label = RegularizedEnergy::Vacuum::final;
  e.field_term = -2.0 * eB * eB * volume / (4.0 * kPi2) * s[0];
  e.cross_term = -eB * m2 * volume / (4.0 * kPi2) * s[1];
  // same rounding as the free vacuum, so the m^4 terms cancel bit for bit
  e.mass_term = -s[2] * regularized_energy_free(m, volume).mass_term;
  return e;
}

DeltaE delta_e(const units::FieldStrength& B, const units::Volume& V,
               const FermionSet& fermions,
               const units::PhysicalConstants& c) {
  const double b_hl = units::gauss_to_heaviside_lorentz(B.gauss(), c);
  const double e_r = std::sqrt(c.charge_squared());
  const auto gamma = specfun::gamma_at_minus_half_eps();

  double pole_sum = 0.0;
  for (const auto& f : fermions.species()) {
    const double eB_f = std::abs(f.charge) * e_r * b_hl;
    const auto diff = regularized_energy_landau(f.mass_eV, eB_f, V.natural()) -
                      regularized_energy_free(f.mass_eV, V.natural());
    pole_sum += f.colors * diff.pole_coeff();
  }

  DeltaE out;
  out.delta_e_eV = gamma.sign_after_absorption() * pole_sum + 0.0;  // no -0
  out.delta_e_erg = units::natural_to_erg(out.delta_e_eV, c);
  out.field_energy_eV = 0.5 * b_hl * b_hl * V.natural();
  out.field_energy_erg = units::natural_to_erg(out.field_energy_eV, c);
  out.ratio = out.field_energy_eV > 0.0
                  ? std::abs(out.delta_e_eV) / out.field_energy_eV
                  : 0.0;
  out.sum_charge_squared = fermions.sum_charge_squared();
  return out;
}

double screening_factor_squared(const units::PhysicalConstants& c,
                                const FermionSet& fermions) {
  const double f2 =
      1.0 - 2.0 * c.alpha * fermions.sum_charge_squared() / (3.0 * M_PI);
  if (f2 < 0.0) {
    throw DomainError("screened field is imaginary: alpha sum Q^2 >= 3pi/2");
  }
  return f2;
}

units::FieldStrength screened_field(const units::FieldStrength& B,
                                    const units::PhysicalConstants& c,
                                    const FermionSet& fermions) {
  const double factor = std::sqrt(screening_factor_squared(c, fermions));
  return units::FieldStrength::from_gauss(B.gauss() * factor, c);
}

ZetaReductionResult zeta_reduction_check(double m, double eB, double z,
                                         std::int64_t n_terms) {
  if (!(z < -1.0)) {
    throw DomainError("zeta_reduction_check needs z < -1 (series diverges)");
  }
  if (!(eB > 0.0) || !(m > 0.0)) {
    throw DomainError("zeta_reduction_check needs m > 0 and eB > 0");
  }
  if (n_terms < 1) throw DomainError("n_terms must be >= 1");

  const double b = 2.0 * eB;
  const double m2 = m * m;
  auto level_pair = [&](double n) {
    return std::pow(m2 + b * n, z) + std::pow(m2 + b * (n + 1.0), z);
  };
  double head = 0.0;
  for (std::int64_t n = n_terms; n-- > 0;) {
    head += level_pair(static_cast<double>(n));
  }

  // Euler-Maclaurin tail of sum_{n>=N} (a + b n)^z for both offsets
  auto tail_of = [&](double a) {
    const double x = a + b * static_cast<double>(n_terms);
    const double integral = -std::pow(x, z + 1.0) / (b * (z + 1.0));
    const double d1 = z * b * std::pow(x, z - 1.0);
    const double d3 = z * (z - 1.0) * (z - 2.0) * b * b * b * std::pow(x, z - 3.0);
    return integral + 0.5 * std::pow(x, z) - d1 / 12.0 + d3 / 720.0;
  };
  ZetaReductionResult r;
  r.tail = tail_of(m2) + tail_of(m2 + b);
  r.direct = head + r.tail;

  const double q = m2 / b;
  r.via_zeta = std::pow(b, z) *
               (specfun::hurwitz_zeta(-z, q) + specfun::hurwitz_zeta(-z, q + 1.0));
  r.residual = std::abs(r.direct - r.via_zeta) / std::abs(r.via_zeta);
  return r;
}

double count_free_states(const Box& box, double m, double cutoff,
                         unsigned workers) {
  const double r2 = cutoff * cutoff - m * m;
  if (r2 < 0.0) return 0.0;
  const auto kx_max = static_cast<std::int64_t>(
      std::floor(box.Lx * std::sqrt(r2) / (2.0 * M_PI)));
  const auto ky_max = static_cast<std::int64_t>(
      std::floor(box.Ly * std::sqrt(r2) / (2.0 * M_PI)));
  const std::uint64_t n = partitioned_sum(
      2 * kx_max + 1, workers, [&](std::int64_t ix) -> std::uint64_t {
        const double px = 2.0 * M_PI * static_cast<double>(ix - kx_max) / box.Lx;
        std::uint64_t acc = 0;
        for (std::int64_t iy = -ky_max; iy <= ky_max; ++iy) {
          const double py = 2.0 * M_PI * static_cast<double>(iy) / box.Ly;
          acc += lattice_points(r2 - px * px - py * py, box.Lz);
        }
        return acc;
      });
  return 2.0 * static_cast<double>(n);  // two spin states
}

double count_landau_states(const Box& box, double m, double eB, double cutoff,
                           unsigned workers) {
  if (!(eB > 0.0)) throw DomainError("count_landau_states requires eB > 0");
  const double r2 = cutoff * cutoff - m * m;
  if (r2 < 0.0) return 0.0;
  // transverse energy eB(2n + 1 - alpha) takes the values 2 eB j, j >= 0
  const auto n_levels = static_cast<std::int64_t>(std::floor(r2 / (2.0 * eB))) + 1;
  const std::uint64_t n = partitioned_sum(
      n_levels, workers, [&](std::int64_t n_idx) -> std::uint64_t {
        std::uint64_t acc = 0;
        for (int helicity : {+1, -1}) {
          const double transverse =
              eB * (2.0 * static_cast<double>(n_idx) + 1.0 - helicity);
          acc += lattice_points(r2 - transverse, box.Lz);
        }
        return acc;
      });
  return landau_degeneracy_per_area(eB) * box.area() * static_cast<double>(n);
}

}  // namespace magvac::vacuum
