#ifndef MAGVAC_SAMPLER_HPP
#define MAGVAC_SAMPLER_HPP

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "magvac/emission.hpp"
#include "magvac/units.hpp"

namespace magvac::sampler {

/// Stream indices reserved for each kind of draw.
inline constexpr std::uint64_t kCountStream = 0x436f756e74ull;  // "Count"
inline constexpr std::uint64_t kEventStream = 0;

/// Poisson inversion sampler over a cumulative table built from the
/// log-space pmf, covering n <= n_bar + 40 sqrt(n_bar + 1) + 10.
class PoissonSampler {
 public:
  explicit PoissonSampler(double n_bar);

  double mean() const noexcept { return n_bar_; }
  /// Smallest n with CDF(n) > u.
  std::uint64_t operator()(double u) const;

 private:
  double n_bar_;
  std::vector<double> cdf_;
};

/// One Poisson draw, addressed by (seed, draw).
std::uint64_t sample_count(double n_bar, std::uint64_t seed,
                           std::uint64_t draw = 0);

/// Walker/Vose alias table.
class AliasTable {
 public:
  /// Throws DomainError when no weight is positive or any is negative.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const noexcept { return prob_.size(); }
  /// u in [0, 1): the integer part of u * n picks the column, the
  /// fractional part flips the coin.
  std::size_t sample(double u) const;

 private:
  std::vector<double> prob_;
  std::vector<std::size_t> alias_;
};

struct PhotonEvent {
  int n0 = 0;
  std::size_t species = 0;
  double omega = 0.0;
  double k_perp = 0.0;
  double k_par = 0.0;
};

struct SamplerOptions {
  /// |k_par| support; 0 selects 3 sqrt(eB).
  double k_par_max = 0.0;
  /// Polar-angle cells per line for the inverse CDF.
  std::size_t grid = 1024;
  unsigned workers = 1;
  std::uint64_t stream = kEventStream;
};

struct SampleRun {
  std::uint64_t seed = 0;
  std::uint64_t stream = 0;
  std::vector<PhotonEvent> events;
  double n_bar_used = 0.0;
  double k_par_max = 0.0;
  double truncation_fraction = 0.0;
  std::vector<double> line_probabilities;  // per table line, after truncation
  emission::SpectrumTable source;           // metadata and species
};

/// Draws `count` events from a line-resolved table: line by alias method,
/// then k_par from the line's marginal, then k_perp by bisection on the
/// line condition. Event i depends only on (seed, stream, i).
SampleRun sample_events(const emission::SpectrumTable& table,
                        std::size_t count, std::uint64_t seed,
                        const units::PhysicalConstants& c,
                        const SamplerOptions& opt = {});

/// Run header (seed, rng, metadata) as a single-line JSON object.
std::string jsonl_header(const SampleRun& run);
/// One JSON object per event, keys n0, species, omega_eV, k_perp_eV, k_par_eV.
void write_event_lines(std::ostream& out, const SampleRun& run);
/// Header line followed by the event lines.
void write_jsonl(std::ostream& out, const SampleRun& run);

}  // namespace magvac::sampler

#endif  // MAGVAC_SAMPLER_HPP
