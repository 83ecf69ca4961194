#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace nstrat {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// A configured resource limit was exceeded (enumeration size, census size, ...).
struct cap_exceeded : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A mathematical invariant that must hold was observed to fail.
struct invariant_violation : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Floor/ceil division for int64 with positive divisor; exact for negative
// numerators as well.
inline long long floor_div(long long a, long long b) {
    long long q = a / b;
    long long r = a % b;
    return (r != 0 && r < 0) ? q - 1 : q;
}

inline long long ceil_div(long long a, long long b) {
    return -floor_div(-a, b);
}

inline std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

inline std::uint64_t powmod_u64(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    base %= m;
    while (exp) {
        if (exp & 1) r = mulmod_u64(r, base, m);
        base = mulmod_u64(base, base, m);
        exp >>= 1;
    }
    return r;
}

/// Deterministic Miller-Rabin, valid for all 64-bit inputs.
bool is_prime_u64(std::uint64_t n);

/// x = a^{-1} mod m for gcd(a, m) = 1; throws std::domain_error otherwise.
std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m);

/// Multiplicity of p in n (n != 0). v_p(0) has no finite value; callers
/// handle zero before calling.
long long vp_of(const BigInt& n, const BigInt& p);

/// Modular inverse for BigInt (extended Euclid); throws std::domain_error
/// when gcd(a, m) != 1.
BigInt invmod_big(const BigInt& a, const BigInt& m);

// SplitMix64. Every seeded search/sample in the project goes through this
// generator so that results are reproducible across platforms (the standard
// library distributions are not portable).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
        return z ^ (z >> 31);
    }

    /// Uniform value in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) throw std::invalid_argument("Rng::below: n must be positive");
        std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        std::uint64_t v;
        do {
            v = next();
        } while (v >= limit);
        return v % n;
    }

private:
    std::uint64_t state_;
};

}  // namespace nstrat
