#ifndef MAGVAC_UNITS_HPP
#define MAGVAC_UNITS_HPP

#include <filesystem>
#include <string_view>

namespace magvac {

/// Library version, e.g. "0.3.0".
const char* version() noexcept;

}  // namespace magvac

namespace magvac::units {

/// Which fine-structure constant is active: "paper" is the historical
/// alpha = 1/137, modern mode uses CODATA 2018. Every other constant is shared.
enum class ConstantsMode { paper, modern };

std::string_view to_string(ConstantsMode mode);
ConstantsMode constants_mode_from_string(std::string_view name);

/// The single constants table of the project. All physics modules work in
/// natural units (hbar = c = 1, energies in eV); conversions go through here.
struct PhysicalConstants {
  ConstantsMode mode = ConstantsMode::paper;
  double alpha = 0.0;              // active fine-structure constant
  double m_e_eV = 0.0;             // electron mass
  double B_c_gauss = 0.0;          // electron critical field m_e^2 c^3 / (e hbar)
  double erg_per_eV = 0.0;
  double cm_per_inverse_eV = 0.0;  // hbar c
  double s_per_inverse_eV = 0.0;   // hbar
  // cgs quantities used by the astrophysical estimators
  double G_cgs = 0.0;              // cm^3 g^-1 s^-2
  double c_cm_per_s = 0.0;
  double e_esu = 0.0;              // elementary charge, statcoulomb
  double m_e_g = 0.0;
  double M_sun_g = 0.0;

  static PhysicalConstants paper();
  static PhysicalConstants modern();
  static PhysicalConstants for_mode(ConstantsMode mode);

  /// Heaviside-Lorentz renormalized charge squared, e_r^2 = 4 pi alpha.
  double charge_squared() const;
  /// One Gauss expressed in eV^2 with the cgs energy density B^2/8pi
  /// (alpha independent): sqrt((hbar c)^3 / erg_per_eV).
  double gauss_in_eV2() const;
};

/// CODATA 2018 fine-structure constant, independent of the active mode.
inline constexpr double kCodataAlpha = 1.0 / 137.035999084;
/// alpha of the "paper" constants mode.
inline constexpr double kAlphaRounded = 1.0 / 137.0;

/// Loads a constants table from JSON. Recognised keys: alpha, m_e_eV,
/// B_c_gauss, erg_per_eV (all optional, unknown keys rejected). Missing
/// keys keep the built-in value of `mode`. An empty path returns defaults.
PhysicalConstants load_constants(const std::filesystem::path& path,
                                 ConstantsMode mode);

/// Magnetic field. Gauss is the external representation, eB in eV^2 (per
/// unit charge |e|) the internal one; both are stored and kept consistent.
class FieldStrength {
 public:
  FieldStrength() = default;

  static FieldStrength from_gauss(double gauss, const PhysicalConstants& c);
  static FieldStrength from_natural(double eB_eV2, const PhysicalConstants& c);

  double gauss() const noexcept { return gauss_; }
  double eB() const noexcept { return eB_; }

 private:
  FieldStrength(double gauss, double eB) : gauss_(gauss), eB_(eB) {}
  double gauss_ = 0.0;
  double eB_ = 0.0;
};

/// Spatial volume; cm^3 outside, eV^-3 inside.
class Volume {
 public:
  static Volume from_cm3(double cm3, const PhysicalConstants& c);
  static Volume from_natural(double inverse_eV3, const PhysicalConstants& c);

  double cm3() const noexcept { return cm3_; }
  double natural() const noexcept { return natural_; }

 private:
  Volume(double cm3, double natural) : cm3_(cm3), natural_(natural) {}
  double cm3_;
  double natural_;
};

// eB = m_e^2 B / B_c. Throws DomainError for B < 0.
double gauss_to_natural(double gauss, const PhysicalConstants& c);
double natural_to_gauss(double eB_eV2, const PhysicalConstants& c);

double natural_to_erg(double eV, const PhysicalConstants& c);
double erg_to_natural(double erg, const PhysicalConstants& c);

double cm3_to_natural(double cm3, const PhysicalConstants& c);
double natural_to_cm3(double inverse_eV3, const PhysicalConstants& c);

/// Heaviside-Lorentz field strength in eV^2 for a field given in Gauss,
/// fixed by B_HL^2 / 2 = B^2 / 8pi.
double gauss_to_heaviside_lorentz(double gauss, const PhysicalConstants& c);

}  // namespace magvac::units

#endif  // MAGVAC_UNITS_HPP
