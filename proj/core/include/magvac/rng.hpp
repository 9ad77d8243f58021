#ifndef MAGVAC_RNG_HPP
#define MAGVAC_RNG_HPP

#include <array>
#include <cstdint>
#include <string_view>

namespace magvac::rng {

/// Philox4x32-10 counter-based generator (Salmon et al., SC'11). Stateless:
/// the output is a pure function of (counter, key).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr std::string_view kAlgorithm = "philox4x32-10";

  static Counter generate(Counter counter, Key key);
};

/// Random stream addressed by (seed, stream, draw index). Draw i of a stream
/// is independent of how many draws other streams made.
class Stream {
 public:
  Stream(std::uint64_t seed, std::uint64_t stream) noexcept;

  /// The 128-bit block for draw `index`.
  Philox4x32::Counter block(std::uint64_t index) const;

  /// Two independent uniforms in [0, 1) from draw `index`, 53 bits each.
  std::array<double, 2> uniforms(std::uint64_t index) const;

 private:
  Philox4x32::Key key_;
  std::uint64_t stream_;
};

/// 53-bit uniform in [0, 1) from two 32-bit words.
double to_unit_interval(std::uint32_t hi, std::uint32_t lo) noexcept;

}  // namespace magvac::rng

#endif  // MAGVAC_RNG_HPP
