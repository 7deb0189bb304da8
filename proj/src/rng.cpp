#include "mtc/rng.hpp"

namespace mtc {

namespace {

constexpr std::uint64_t golden = 0x9e3779b97f4a7c15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t seed) : Rng(seed, mix64(seed + golden)) {}

Rng::Rng(std::uint64_t seed, std::uint64_t key) : seed_(seed), key_(key) {}

Rng::result_type Rng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * golden);
}

double Rng::uniform() {
  return (static_cast<double>((*this)() >> 11) + 0.5) * 0x1.0p-53;
}

double Rng::normal() { return normal_(*this); }

Rng Rng::split(std::uint64_t stream) const {
  return Rng(seed_, mix64(key_ ^ mix64(stream * golden + 0x632be59bd9b4e019ULL)));
}

}  // namespace mtc
