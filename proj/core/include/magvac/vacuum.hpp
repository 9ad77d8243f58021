#ifndef MAGVAC_VACUUM_HPP
#define MAGVAC_VACUUM_HPP

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "magvac/units.hpp"

namespace magvac::vacuum {

struct FermionSpecies {
  std::string name;
  double charge = 0.0;   // Q_f in units of |e|
  double mass_eV = 0.0;  // m_f
  int colors = 1;
};

/// Ordered set of charged species. The default set is the charged fermion
/// content of the standard model, with sum colors * Q^2 = 8.
class FermionSet {
 public:
  FermionSet() = default;
  explicit FermionSet(std::vector<FermionSpecies> species);

  static FermionSet standard_model();
  static FermionSet electron_only(const units::PhysicalConstants& c);

  const std::vector<FermionSpecies>& species() const noexcept {
    return species_;
  }
  std::size_t size() const noexcept { return species_.size(); }
  bool empty() const noexcept { return species_.empty(); }
  const FermionSpecies& operator[](std::size_t i) const { return species_[i]; }

  /// sum_f colors_f Q_f^2
  double sum_charge_squared() const;

 private:
  std::vector<FermionSpecies> species_;
};

/// Reads a JSON array of {name, Q, mass_eV, colors}; a top-level object
/// with a "species" array is accepted too. Throws ConfigError.
FermionSet load_fermion_set(const std::filesystem::path& path);

struct LandauLevel {
  int n = 0;
  int helicity = +1;  // alpha = +1 or -1
  double p_z = 0.0;   // eV
};

/// Coefficient of Gamma(-eps/2) in a dimensionally regularized vacuum
/// energy, kept per monomial so that equal mass content cancels exactly:
///   pole_coeff = mass_term + cross_term + field_term
/// with mass_term ~ V m^4, cross_term ~ V m^2 eB, field_term ~ V (eB)^2.
struct RegularizedEnergy {
  enum class Vacuum { initial, final };

  Vacuum label = Vacuum::initial;
  double mass_term = 0.0;
  double cross_term = 0.0;
  double field_term = 0.0;

  double pole_coeff() const { return mass_term + cross_term + field_term; }
};

/// Termwise difference a - b. The label of the result is a's.
RegularizedEnergy operator-(const RegularizedEnergy& a,
                            const RegularizedEnergy& b);

/// -sqrt(|p|^2 + m^2), the negative free branch.
double free_energy_level(const std::array<double, 3>& p, double m);

/// -sqrt(p_z^2 + m^2 + eB(2n+1) - eB alpha).
double landau_energy(const LandauLevel& level, double m, double eB);

/// States per Landau level per unit transverse area, eB / 2pi.
double landau_degeneracy_per_area(double eB);

/// V m^4 / (8 pi^2) (free, B = 0).
RegularizedEnergy regularized_energy_free(double m, double volume);

/// V [(eB)^2 / (12 pi^2) + m^4 / (8 pi^2)], derived by summing helicities,
/// writing the level sum as (2eB)^z [zeta(-z,q) + zeta(-z,q+1)] with
/// q = m^2 / 2eB, and continuing to z = 1 through B_2(q).
RegularizedEnergy regularized_energy_landau(double m, double eB,
                                            double volume);

struct DeltaE {
  double delta_e_eV = 0.0;
  double delta_e_erg = 0.0;
  double field_energy_eV = 0.0;   // B_HL^2 V / 2
  double field_energy_erg = 0.0;  // equals B^2 V / 8pi in cgs
  double ratio = 0.0;             // |delta_e| / field energy
  double sum_charge_squared = 0.0;
};

/// Renormalized energy released when the field is switched on:
/// -sum_f colors Q_f^2 e_r^2 B^2 V / (12 pi^2). The Gamma pole is absorbed
/// into Z_3 symbolically.
DeltaE delta_e(const units::FieldStrength& B, const units::Volume& V,
               const FermionSet& fermions,
               const units::PhysicalConstants& c);

/// 1 - 2 alpha sum(Q^2) / 3pi, the ratio B'^2 / B^2. Throws DomainError if
/// negative.
double screening_factor_squared(const units::PhysicalConstants& c,
                                const FermionSet& fermions);

/// B' = B sqrt(1 - 16 alpha / 3pi) for the standard-model set.
units::FieldStrength screened_field(
    const units::FieldStrength& B, const units::PhysicalConstants& c,
    const FermionSet& fermions = FermionSet::standard_model());

struct ZetaReductionResult {
  double direct = 0.0;    // partial sum + tail estimate
  double tail = 0.0;      // tail estimate alone
  double via_zeta = 0.0;  // (2eB)^z [zeta(-z,q) + zeta(-z,q+1)]
  double residual = 0.0;  // |direct - via_zeta| / |via_zeta|
};

/// Checks the helicity-summed level series against its Hurwitz form where
/// the series converges (z < -1). Throws DomainError for z >= -1.
ZetaReductionResult zeta_reduction_check(double m, double eB, double z,
                                         std::int64_t n_terms = 100000);

/// Periodic box with transverse area S = Lx Ly and length Lz (eV^-1).
struct Box {
  double Lx = 1.0;
  double Ly = 1.0;
  double Lz = 1.0;
  double area() const { return Lx * Ly; }
  double volume() const { return Lx * Ly * Lz; }
};

/// Negative-energy states with |energy| <= cutoff, both spins, periodic
/// momenta 2 pi k / L.
double count_free_states(const Box& box, double m, double cutoff,
                         unsigned workers = 1);

/// Same count in the Landau spectrum, each level carrying eB S / 2pi
/// states. Independent of `workers`.
double count_landau_states(const Box& box, double m, double eB, double cutoff,
                           unsigned workers = 1);

}  // namespace magvac::vacuum

#endif  // MAGVAC_VACUUM_HPP
