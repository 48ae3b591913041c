#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "fanowb/scalar.hpp"

namespace fanowb {

/// SplitMix64 finalizer; used to derive independent child seeds.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
    return mix_seed(seed ^ mix_seed(stream + 0x632be59bd9b4e019ull));
}

/// Seeded generator. Bounded draws use rejection sampling on the raw
/// mt19937_64 stream so results do not depend on the standard library's
/// distribution implementations.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : seed_(seed), eng_(seed) {}

    std::uint64_t seed() const { return seed_; }
    std::uint64_t next() { return eng_(); }

    std::uint64_t below(std::uint64_t n) {
        if (n <= 1) return 0;
        std::uint64_t limit = ~0ull - (~0ull % n);
        std::uint64_t x;
        do x = eng_();
        while (x >= limit);
        return x % n;
    }

    Fp element(const PrimeField& f) { return f.element(below(f.size())); }
    Fp nonzero_element(const PrimeField& f) { return f.element(1 + below(f.size() - 1)); }

    /// Small integers in [-bound, bound] for rational-mode sampling.
    Rational element(const RationalField&, std::int64_t bound = 9) {
        return Rational(static_cast<std::int64_t>(below(2 * bound + 1)) - bound);
    }
    Rational nonzero_element(const RationalField& f, std::int64_t bound = 9) {
        Rational r;
        do r = element(f, bound);
        while (r == 0);
        return r;
    }

    template <class F>
    std::vector<typename F::value_type> vector(const F& f, int n) {
        std::vector<typename F::value_type> v;
        v.reserve(n);
        for (int i = 0; i < n; ++i) v.push_back(element(f));
        return v;
    }

    template <class F>
    std::vector<typename F::value_type> nonzero_vector(const F& f, int n) {
        for (;;) {
            auto v = vector(f, n);
            for (const auto& x : v)
                if (!is_zero(x)) return v;
        }
    }

private:
    std::uint64_t seed_;
    std::mt19937_64 eng_;
};

}  // namespace fanowb
