#include "nstrat/common.hpp"

#include <array>

namespace nstrat {

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n % q == 0) return n == q;
    }
    std::uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    // This base set is a proven deterministic witness set for n < 2^64.
    for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        std::uint64_t x = powmod_u64(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod_u64(x, x, n);
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

std::uint64_t invmod_u64(std::uint64_t a, std::uint64_t m) {
    BigInt r = invmod_big(BigInt(a), BigInt(m));
    return static_cast<std::uint64_t>(r);
}

long long vp_of(const BigInt& n, const BigInt& p) {
    if (n == 0) throw std::invalid_argument("vp_of: n must be nonzero");
    BigInt a = abs(n);
    long long v = 0;
    BigInt q, r;
    for (;;) {
        divide_qr(a, p, q, r);
        if (r != 0) break;
        a = q;
        ++v;
    }
    return v;
}

BigInt invmod_big(const BigInt& a, const BigInt& m) {
    BigInt old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    BigInt old_s = 1, s = 0;
    while (r != 0) {
        BigInt q = old_r / r;
        BigInt tmp = old_r - q * r;
        old_r = r;
        r = tmp;
        tmp = old_s - q * s;
        old_s = s;
        s = tmp;
    }
    if (old_r != 1) throw std::domain_error("invmod_big: argument not invertible");
    old_s %= m;
    if (old_s < 0) old_s += m;
    return old_s;
}

}  // namespace nstrat
