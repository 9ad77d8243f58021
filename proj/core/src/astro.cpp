#include "magvac/astro.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "magvac/errors.hpp"

namespace magvac::astro {

namespace {
constexpr double kDynePerNewton = 1e5;
constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

double log10_ratio(double x, double anchor) {
  return x > 0.0 ? std::log10(x / anchor) : kNaN;
}
}  // namespace

std::string_view to_string(VolumeModel m) {
  return m == VolumeModel::sphere ? "sphere" : "cube_of_radius";
}

VolumeModel volume_model_from_string(std::string_view name) {
  if (name == "cube_of_radius" || name == "cube") return VolumeModel::cube_of_radius;
  if (name == "sphere") return VolumeModel::sphere;
  throw ConfigError("unknown volume model: " + std::string(name));
}

void CompactObject::validate() const {
  if (!(radius_cm > 0.0) || !std::isfinite(radius_cm)) {
    throw DomainError("radius must be > 0");
  }
  if (!(mass_g > 0.0) || !std::isfinite(mass_g)) {
    throw DomainError("mass must be > 0");
  }
  if (!(B_surface_gauss >= 0.0) || !std::isfinite(B_surface_gauss)) {
    throw DomainError("surface field must be >= 0");
  }
}

double CompactObject::volume_cm3() const {
  const double r3 = radius_cm * radius_cm * radius_cm;
  return volume_model == VolumeModel::sphere ? 4.0 * M_PI / 3.0 * r3 : r3;
}

double log10_band_deviation(double x, double lo, double hi) {
  if (!(x > 0.0)) return kNaN;
  if (x < lo) return std::log10(x / lo);
  if (x > hi) return std::log10(x / hi);
  return 0.0;
}

ReleaseEstimate release_estimate(const CompactObject& obj,
                                 const vacuum::FermionSet& fermions,
                                 const units::PhysicalConstants& c) {
  obj.validate();
  ReleaseEstimate r;
  r.volume_cm3 = obj.volume_cm3();
  const double B = obj.B_surface_gauss;
  r.field_energy_erg = B * B / (8.0 * M_PI) * r.volume_cm3;
  const auto de = vacuum::delta_e(units::FieldStrength::from_gauss(B, c),
                                  units::Volume::from_cm3(r.volume_cm3, c),
                                  fermions, c);
  r.delta_e_erg = de.delta_e_erg;
  r.ratio = de.ratio;
  r.log10_dev_field_energy =
      log10_band_deviation(r.field_energy_erg, Anchors::release_band_lo_erg,
                           Anchors::release_band_hi_erg);
  r.log10_dev_delta_e =
      log10_band_deviation(std::abs(r.delta_e_erg), Anchors::release_band_lo_erg,
                           Anchors::release_band_hi_erg);
  return r;
}

ForceComparison force_comparison(const CompactObject& obj, double probe_mass_g,
                                 double speed_fraction_c,
                                 const units::PhysicalConstants& c) {
  obj.validate();
  if (!(speed_fraction_c >= 0.0 && speed_fraction_c <= 1.0)) {
    throw DomainError("speed fraction must lie in [0, 1]");
  }
  if (!(probe_mass_g >= 0.0)) throw DomainError("probe mass must be >= 0");
  ForceComparison f;
  const double R = obj.radius_cm;
  f.F_grav_N = c.G_cgs * obj.mass_g * probe_mass_g / (R * R) / kDynePerNewton;
  // Gaussian units: F = q (v/c) B in dyn
  f.F_mag_N = c.e_esu * speed_fraction_c * obj.B_surface_gauss / kDynePerNewton;
  f.log10_dev_grav = log10_ratio(f.F_grav_N, Anchors::gravity_force_N);
  f.log10_dev_mag = log10_ratio(f.F_mag_N, Anchors::magnetic_force_N);
  return f;
}

}  // namespace magvac::astro
