#ifndef MAGVAC_EMISSION_HPP
#define MAGVAC_EMISSION_HPP

#include <complex>
#include <cstddef>
#include <iosfwd>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "magvac/units.hpp"
#include "magvac/vacuum.hpp"

namespace magvac::emission {

/// Relative tolerance for "n0 is an integer".
inline constexpr double kLineTolerance = 1e-9;

/// Photon momentum split along (k_par) and across (k_perp) the field.
struct PhotonMode {
  double k_perp = 0.0;
  double k_par = 0.0;
  double omega() const;  // |k|
};

/// (k_perp^2 + 2|k| m) / (2 eB); emission lines sit at integer values >= 1.
double quantization_n0(const PhotonMode& mode, double m, double eB);

/// True when quantization_n0 is an integer >= 1 within `tol` (relative).
bool is_on_shell(const PhotonMode& mode, double m, double eB,
                 double tol = kLineTolerance);

/// Contribution of one species to the rate kernel (colors included).
double species_kernel(double k_perp, int n0,
                      const vacuum::FermionSpecies& species, double eB,
                      const units::PhysicalConstants& c);

/// Emission rate kernel per unit time and phase-space element:
///   e_r^2 / (2^n0 n0! pi) exp(-k_perp^2/eB) H_n0^2(k_perp/sqrt(eB))
///     * 2pi * sum_f colors Q_f^2 m_f / eB.
/// Evaluated in log space; independent of k_par.
double rate_kernel(double k_perp, int n0, const vacuum::FermionSet& fermions,
                   double eB, const units::PhysicalConstants& c);

/// Closed form of the first line (n0 = 1):
///   4 e_r^2 exp(-k_perp^2/eB) k_perp^2 sum_f colors Q_f^2 m_f / (eB)^2.
double rate_kernel_first_line(double k_perp,
                              const vacuum::FermionSet& fermions, double eB,
                              const units::PhysicalConstants& c);

/// On-shell curve of line n0 for a fermion of mass m, parametrized by the
/// polar angle theta between k and the field (0..pi).
class LineGeometry {
 public:
  LineGeometry(int n0, double m, double eB);

  int n0() const noexcept { return n0_; }
  double mass() const noexcept { return m_; }
  double eB() const noexcept { return eB_; }

  double momentum(double theta) const;  // |k|
  double k_perp(double theta) const;
  double k_par(double theta) const;
  double k_perp_max() const;  // theta = pi/2
  double k_par_max() const;   // theta = 0, eB n0 / m

  /// 1 / |d n0 / d|k|| at fixed theta; converts the line constraint into a
  /// density along |k|.
  double jacobian(double theta) const;

  /// theta in [0, pi/2] where k_perp(theta) == k_perp (clamped).
  double theta_at_k_perp(double k_perp) const;
  /// theta in [0, pi/2] where |k_par(theta)| == k_par (clamped).
  double theta_at_k_par(double k_par) const;

 private:
  int n0_;
  double m_;
  double eB_;
};

/// Solves the line condition for k_perp >= 0 at given k_par by bisection on
/// [0, sqrt(2 eB n0)]. Empty when |k_par| is beyond the line.
std::optional<double> solve_k_perp(int n0, double k_par, double m, double eB,
                                   double rel_tol = 1e-12);

/// Phase-space measure: the small-k_par form dk_par dk_perp / ((2pi)^2 2)
/// or the full d^3k / ((2pi)^3 2 omega).
enum class Measure { paper, exact };

/// lines: exact on-shell line spectrum. profile: the kernel as a continuous
/// k_perp profile with omega ~ k_perp over |k_par| <= k_par_max.
enum class SpectrumMode { lines, profile };

std::string_view to_string(Measure m);
std::string_view to_string(SpectrumMode m);

struct SpectrumOptions {
  SpectrumMode mode = SpectrumMode::lines;
  Measure measure = Measure::paper;
  /// |k_par| cut in eV. 0 selects the default: none for lines, 3 sqrt(eB)
  /// for profile.
  double k_par_max = 0.0;
  double rel_tol = 1e-10;
  unsigned workers = 1;
};

struct Binning {
  int bins = 0;
  /// Upper edge in eV; 0 selects the natural range of the spectrum.
  double k_perp_max = 0.0;
};

struct PhotonLine {
  int n0 = 0;
  std::size_t species = 0;     // index into the fermion set
  double omega = 0.0;          // mean line energy, eV
  double weight = 0.0;         // number rate carried by the line
  double energy_weight = 0.0;  // energy rate carried by the line
};

struct SpectrumBin {
  double k_perp_lo = 0.0;
  double k_perp_hi = 0.0;
  double number_rate = 0.0;
  double energy_rate = 0.0;
};

struct SpectrumMetadata {
  double B_gauss = 0.0;
  double eB = 0.0;
  units::ConstantsMode constants_mode = units::ConstantsMode::paper;
  int n0_min = 1;
  int n0_max = 0;
  SpectrumMode mode = SpectrumMode::lines;
  Measure measure = Measure::paper;
  double k_par_max = 0.0;  // applied cut (inf for none)
  std::vector<std::string> light_species;  // eB / m^2 > 0.1
};

struct SpectrumTable {
  std::vector<SpectrumBin> bins;
  std::vector<PhotonLine> lines;  // empty in profile mode
  vacuum::FermionSet fermions;
  SpectrumMetadata meta;

  bool empty() const { return bins.empty() && lines.empty(); }
  double total_number_rate() const;
  double total_energy_rate() const;
};

/// Number and energy spectrum binned in k_perp. B = 0 gives an empty table.
/// Throws ConfigError for bins <= 0.
SpectrumTable spectrum(const units::FieldStrength& B,
                       const vacuum::FermionSet& fermions, int n0_max,
                       const Binning& binning,
                       const units::PhysicalConstants& c,
                       const SpectrumOptions& opt = {});

/// Number density of line (species, n0) per unit polar angle, theta in
/// [0, pi], with the chosen measure.
double line_density(const vacuum::FermionSpecies& species, int n0, double eB,
                    double theta, const units::PhysicalConstants& c,
                    Measure measure);

struct Cutoffs {
  double k_perp_max = std::numeric_limits<double>::infinity();
  double k_par_max = std::numeric_limits<double>::infinity();
};

/// Mean photon number (per unit switching time in the kernel's
/// normalization) summed over lines n0 = 1..n0_max. Profile mode requires a
/// finite k_par cut. Throws AccuracyError above 1e-6 relative error.
double mean_photon_number(const units::FieldStrength& B,
                          const vacuum::FermionSet& fermions, int n0_max,
                          const Cutoffs& cutoffs,
                          const units::PhysicalConstants& c,
                          const SpectrumOptions& opt = {});

/// n_bar^n e^-n_bar / n!.
double poisson_probability(double n_bar, long long n);

struct FourierHermiteResult {
  std::complex<double> lhs;  // quadrature
  std::complex<double> rhs;  // closed form
  double residual = 0.0;     // relative, or absolute when rhs == 0
  bool absolute = false;
};

/// int dx exp(-i k_x x) exp(-xi^2/2) H_n(xi), xi = sqrt(eB)(x - p_y/eB), by
/// adaptive quadrature versus
/// (-i)^n sqrt(2pi/eB) exp(-i k_x p_y/eB) H_n(k_x/sqrt(eB)) exp(-k_x^2/2eB).
FourierHermiteResult fourier_hermite_check(int n, double k_x, double eB,
                                           double p_y);

void write_csv(std::ostream& out, const SpectrumTable& table);
/// Table plus metadata as a JSON document.
std::string to_json(const SpectrumTable& table, int indent = 2);

}  // namespace magvac::emission

#endif  // MAGVAC_EMISSION_HPP
