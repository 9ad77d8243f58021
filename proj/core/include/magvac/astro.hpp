#ifndef MAGVAC_ASTRO_HPP
#define MAGVAC_ASTRO_HPP

#include <string_view>

#include "magvac/units.hpp"
#include "magvac/vacuum.hpp"

namespace magvac::astro {

enum class VolumeModel { cube_of_radius, sphere };

std::string_view to_string(VolumeModel m);
VolumeModel volume_model_from_string(std::string_view name);

struct CompactObject {
  double radius_cm = 1e6;
  double mass_g = 0.0;
  double B_surface_gauss = 0.0;
  VolumeModel volume_model = VolumeModel::cube_of_radius;

  /// Throws DomainError unless radius > 0, mass > 0 and B >= 0.
  void validate() const;
  double volume_cm3() const;
};

/// Order-of-magnitude figures quoted for neutron stars, used only as anchors.
struct Anchors {
  static constexpr double release_band_lo_erg = 1e42;
  static constexpr double release_band_hi_erg = 1e46;
  static constexpr double gravity_force_N = 2e-12;
  static constexpr double magnetic_force_N = 5.0;
  static constexpr double magnetic_force_field_gauss = 1e13;
};

struct ReleaseEstimate {
  double volume_cm3 = 0.0;
  double field_energy_erg = 0.0;  // B^2 V / 8pi
  double delta_e_erg = 0.0;       // signed, <= 0
  double ratio = 0.0;             // |delta_e| / field energy
  // log10(value / nearest band edge); 0 inside the band
  double log10_dev_field_energy = 0.0;
  double log10_dev_delta_e = 0.0;
};

ReleaseEstimate release_estimate(const CompactObject& obj,
                                 const vacuum::FermionSet& fermions,
                                 const units::PhysicalConstants& c);

struct ForceComparison {
  double F_grav_N = 0.0;
  double F_mag_N = 0.0;
  double log10_dev_grav = 0.0;  // log10(F / anchor); nan when F == 0
  double log10_dev_mag = 0.0;
};

/// F_grav = G M m / R^2 and F_mag = e v B for a probe of one elementary
/// charge. Throws DomainError for speed fractions outside [0, 1].
ForceComparison force_comparison(const CompactObject& obj, double probe_mass_g,
                                 double speed_fraction_c,
                                 const units::PhysicalConstants& c);

/// Distance in decades from [lo, hi]; 0 inside, nan for x <= 0.
double log10_band_deviation(double x, double lo, double hi);

}  // namespace magvac::astro

#endif  // MAGVAC_ASTRO_HPP
