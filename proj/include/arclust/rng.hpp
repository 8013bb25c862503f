#ifndef ARCLUST_RNG_HPP
#define ARCLUST_RNG_HPP

#include <cmath>
#include <cstdint>
#include <random>
#include <stdexcept>

namespace arclust {

// splitmix64; used to derive independent stream seeds from a user seed.
inline std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    std::uint64_t s = seed;
    std::uint64_t a = splitmix64(s);
    s = a ^ (stream * 0x9e3779b97f4a7c15ULL + 0x2545f4914f6cdd1dULL);
    return splitmix64(s);
}

// Deterministic generator: mt19937_64 with hand-rolled uniform/normal
// transforms, so identical seeds give identical streams on every platform
// (the std distributions are not pinned by the standard).
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed), seed_(seed) {}

    std::uint64_t seed() const { return seed_; }

    std::uint64_t bits() { return gen_(); }

    // uniform in [0, 1), 53-bit resolution
    double uniform() {
        return static_cast<double>(gen_() >> 11) * 0x1.0p-53;
    }

    double uniform(double a, double b) { return a + (b - a) * uniform(); }

    // standard normal via Box-Muller (pair cached)
    double normal() {
        if (have_spare_) {
            have_spare_ = false;
            return spare_;
        }
        double u1 = 0.0;
        while (u1 == 0.0) u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 6.283185307179586476925286766559 * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta);
    }

    // uniform index in [0, n), rejection sampling so the draw is exact
    std::size_t index(std::size_t n) {
        if (n == 0) throw std::invalid_argument("Rng::index: empty range");
        std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        std::uint64_t x;
        do {
            x = gen_();
        } while (x >= limit);
        return static_cast<std::size_t>(x % n);
    }

    Rng split(std::uint64_t stream) const { return Rng(derive_seed(seed_, stream)); }

  private:
    std::mt19937_64 gen_;
    std::uint64_t seed_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

}  // namespace arclust

#endif
