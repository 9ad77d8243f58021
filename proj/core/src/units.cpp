#include "magvac/units.hpp"

#include <cmath>
#include <fstream>
#include <string>

#include "json.hpp"
#include "magvac/errors.hpp"

namespace magvac {
const char* version() noexcept { return MAGVAC_VERSION; }
}  // namespace magvac

namespace magvac::units {

namespace {

// CODATA 2018 unless stated otherwise.
constexpr double kElectronMass_eV = 0.51099895000e6;
constexpr double kCriticalField_G = 4.414005e13;     // m_e^2 c^3 / (e hbar)
constexpr double kErgPerEv = 1.602176634e-12;        // exact since 2019 SI
constexpr double kHbarC_cm = 1.973269804e-5;         // hbar c in eV cm
constexpr double kHbar_s = 6.582119569e-16;          // hbar in eV s
constexpr double kNewtonG_cgs = 6.67430e-8;
constexpr double kSpeedOfLight_cm_s = 2.99792458e10;  // exact
constexpr double kElementaryCharge_esu = 4.803204713e-10;
constexpr double kElectronMass_g = 9.1093837015e-28;
constexpr double kSolarMass_g = 1.98847e33;           // IAU 2015 / G

PhysicalConstants base_table(ConstantsMode mode) {
  PhysicalConstants c;
  c.mode = mode;
  c.alpha = mode == ConstantsMode::paper ? kAlphaRounded : kCodataAlpha;
  c.m_e_eV = kElectronMass_eV;
  c.B_c_gauss = kCriticalField_G;
  c.erg_per_eV = kErgPerEv;
  c.cm_per_inverse_eV = kHbarC_cm;
  c.s_per_inverse_eV = kHbar_s;
  c.G_cgs = kNewtonG_cgs;
  c.c_cm_per_s = kSpeedOfLight_cm_s;
  c.e_esu = kElementaryCharge_esu;
  c.m_e_g = kElectronMass_g;
  c.M_sun_g = kSolarMass_g;
  return c;
}

void require_positive(double value, const char* what) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw ConfigError(std::string("constant '") + what +
                      "' must be finite and positive");
  }
}

}  // namespace

std::string_view to_string(ConstantsMode mode) {
  return mode == ConstantsMode::paper ? "paper" : "modern";
}

ConstantsMode constants_mode_from_string(std::string_view name) {
  if (name == "paper") return ConstantsMode::paper;
  if (name == "modern") return ConstantsMode::modern;
  throw ConfigError("unknown constants mode '" + std::string(name) +
                    "' (expected paper or modern)");
}

PhysicalConstants PhysicalConstants::paper() {
  return base_table(ConstantsMode::paper);
}

PhysicalConstants PhysicalConstants::modern() {
  return base_table(ConstantsMode::modern);
}

PhysicalConstants PhysicalConstants::for_mode(ConstantsMode mode) {
  return base_table(mode);
}

double PhysicalConstants::charge_squared() const {
  return 4.0 * M_PI * alpha;
}

double PhysicalConstants::gauss_in_eV2() const {
  const double l = cm_per_inverse_eV;
  return std::sqrt(l * l * l / erg_per_eV);
}

PhysicalConstants load_constants(const std::filesystem::path& path,
                                 ConstantsMode mode) {
  PhysicalConstants c = base_table(mode);
  if (path.empty()) return c;

  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open constants file " + path.string());

  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("constants file " + path.string() +
                      " is not valid JSON: " + e.what());
  }
  if (!doc.is_object()) {
    throw ConfigError("constants file must hold a JSON object");
  }

  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) {
      throw ConfigError("constant '" + key + "' must be a number");
    }
    const double v = value.get<double>();
    if (key == "alpha") {
      c.alpha = v;
    } else if (key == "m_e_eV") {
      c.m_e_eV = v;
    } else if (key == "B_c_gauss") {
      c.B_c_gauss = v;
    } else if (key == "erg_per_eV") {
      c.erg_per_eV = v;
    } else {
      throw ConfigError("unknown constant '" + key + "'");
    }
  }
  require_positive(c.alpha, "alpha");
  require_positive(c.m_e_eV, "m_e_eV");
  require_positive(c.B_c_gauss, "B_c_gauss");
  require_positive(c.erg_per_eV, "erg_per_eV");
  return c;
}

double gauss_to_natural(double gauss, const PhysicalConstants& c) {
  if (!(gauss >= 0.0)) {
    throw DomainError("magnetic field must be >= 0 Gauss");
  }
  return c.m_e_eV * c.m_e_eV * (gauss / c.B_c_gauss);
}

double natural_to_gauss(double eB_eV2, const PhysicalConstants& c) {
  if (!(eB_eV2 >= 0.0)) throw DomainError("eB must be >= 0");
  return c.B_c_gauss * (eB_eV2 / (c.m_e_eV * c.m_e_eV));
}

double natural_to_erg(double eV, const PhysicalConstants& c) {
  return eV * c.erg_per_eV;
}

double erg_to_natural(double erg, const PhysicalConstants& c) {
  return erg / c.erg_per_eV;
}

double cm3_to_natural(double cm3, const PhysicalConstants& c) {
  const double l = c.cm_per_inverse_eV;
  return cm3 / (l * l * l);
}

double natural_to_cm3(double inverse_eV3, const PhysicalConstants& c) {
  const double l = c.cm_per_inverse_eV;
  return inverse_eV3 * (l * l * l);
}

double gauss_to_heaviside_lorentz(double gauss, const PhysicalConstants& c) {
  if (!(gauss >= 0.0)) {
    throw DomainError("magnetic field must be >= 0 Gauss");
  }
  return gauss * c.gauss_in_eV2() / std::sqrt(4.0 * M_PI);
}

FieldStrength FieldStrength::from_gauss(double gauss,
                                        const PhysicalConstants& c) {
  return FieldStrength(gauss, gauss_to_natural(gauss, c));
}

FieldStrength FieldStrength::from_natural(double eB_eV2,
                                          const PhysicalConstants& c) {
  return FieldStrength(natural_to_gauss(eB_eV2, c), eB_eV2);
}

Volume Volume::from_cm3(double cm3, const PhysicalConstants& c) {
  if (!(cm3 > 0.0)) throw DomainError("volume must be > 0");
  return Volume(cm3, cm3_to_natural(cm3, c));
}

Volume Volume::from_natural(double inverse_eV3, const PhysicalConstants& c) {
  if (!(inverse_eV3 > 0.0)) throw DomainError("volume must be > 0");
  return Volume(natural_to_cm3(inverse_eV3, c), inverse_eV3);
}

}  // namespace magvac::units
