#ifndef MTC_RNG_HPP
#define MTC_RNG_HPP

#include <cstdint>
#include <limits>
#include <random>

namespace mtc {

// Counter-based splittable stream. Output i of a stream with key k is a
// SplitMix64 finalizer applied to k + (i+1)*golden, so substreams derived with
// split() are independent of how work is scheduled.
class Rng {
public:
  using result_type = std::uint64_t;

  explicit Rng(std::uint64_t seed = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();

  // Uniform on the open interval (0, 1).
  double uniform();
  double normal();

  // Independent child stream; does not advance this stream.
  Rng split(std::uint64_t stream) const;

  std::uint64_t seed() const { return seed_; }

private:
  Rng(std::uint64_t seed, std::uint64_t key);

  std::uint64_t seed_;
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::normal_distribution<double> normal_;
};

}  // namespace mtc

#endif
