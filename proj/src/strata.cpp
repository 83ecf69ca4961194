#include "nstrat/strata.hpp"

#include <algorithm>
#include <numeric>

namespace nstrat {

StratumParams::StratumParams(long long d, long long p) : d_(d), p_(p) {
    if (d < 2) throw std::invalid_argument("StratumParams: d must be >= 2");
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("StratumParams: p must be prime");
    if (std::gcd(d, p) != 1)
        throw std::invalid_argument("StratumParams: p must not divide d");
}

Permutation::Permutation(std::vector<int> imgs) : images(std::move(imgs)) {
    int n = static_cast<int>(images.size());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    for (int v : images) {
        if (v < 1 || v > n || seen[static_cast<std::size_t>(v)])
            throw std::invalid_argument("Permutation: images must be a bijection of 1..n");
        seen[static_cast<std::size_t>(v)] = true;
    }
    int inversions = 0;
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j)
            if (images[static_cast<std::size_t>(i)] > images[static_cast<std::size_t>(j)]) ++inversions;
    sign = (inversions % 2 == 0) ? 1 : -1;
}

int residue_j(const StratumParams& params, int i) {
    if (i < 1 || i > params.d() - 1)
        throw std::invalid_argument("residue_j: i out of range 1..d-1");
    long long r = (params.p() % params.d()) * i % params.d();
    // r = 0 would need d | p*i, impossible for coprime p and 1 <= i <= d-1.
    if (r == 0) throw invariant_violation("residue_j: p*i divisible by d");
    return static_cast<int>(r);
}

std::set<int> b_set(const StratumParams& params, int n) {
    if (n < 1 || n > params.d() - 1)
        throw std::invalid_argument("b_set: n out of range 1..d-1");
    std::set<int> b;
    for (int i = 1; i <= n; ++i)
        if (residue_j(params, i) <= n) b.insert(i);
    return b;
}

long long y_n(const StratumParams& params, int n) {
    if (n == 0) return 0;
    if (n < 0 || n > params.d() - 1)
        throw std::invalid_argument("y_n: n out of range 0..d-1");
    long long total = 0;
    for (int k = 1; k <= n; ++k) total += ceil_div(params.p() * k, params.d());
    return total - static_cast<long long>(b_set(params, n).size());
}

long long y_n_bruteforce(const StratumParams& params, int n, int cap) {
    if (n < 1 || n > params.d() - 1)
        throw std::invalid_argument("y_n_bruteforce: n out of range 1..d-1");
    if (n > cap) throw cap_exceeded("y_n_bruteforce: n exceeds the permutation cap");
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    long long best = -1;
    do {
        long long s = 0;
        for (int k = 1; k <= n; ++k)
            s += ceil_div(params.p() * k - perm[static_cast<std::size_t>(k) - 1], params.d());
        if (best < 0 || s < best) best = s;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

std::vector<Permutation> sigma_set(const StratumParams& params, int n) {
    std::set<int> b = b_set(params, n);
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    std::vector<Permutation> result;
    do {
        bool ok = true;
        for (int i : b) {
            if (perm[static_cast<std::size_t>(i) - 1] < residue_j(params, i)) {
                ok = false;
                break;
            }
        }
        if (ok) result.emplace_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (result.empty()) throw invariant_violation("sigma_set: Sigma_n came out empty");
    return result;
}

std::vector<Permutation> sigma_plus(const StratumParams& params, int n) {
    std::set<int> b = b_set(params, n);
    std::vector<Permutation> result;
    for (const Permutation& sigma : sigma_set(params, n)) {
        bool ok = true;
        for (int i : b) {
            if (sigma(i) != residue_j(params, i)) {
                ok = false;
                break;
            }
        }
        if (ok) result.push_back(sigma);
    }
    if (result.empty()) throw invariant_violation("sigma_plus: Sigma_n^+ came out empty");
    return result;
}

Permutation sigma_zero(const StratumParams& params, int n) {
    if (n < 1 || n > params.d() - 1)
        throw std::invalid_argument("sigma_zero: n out of range 1..d-1");
    std::set<int> b = b_set(params, n);
    std::vector<int> images(static_cast<std::size_t>(n), 0);
    std::set<int> free_images;
    for (int v = 1; v <= n; ++v) free_images.insert(v);
    for (int i : b) {
        int j = residue_j(params, i);
        images[static_cast<std::size_t>(i) - 1] = j;
        free_images.erase(j);
    }
    // Outside B_n the j_i are > n and pairwise distinct, so "j_i maximal"
    // picks a unique index at every step.
    std::vector<int> rest;
    for (int i = 1; i <= n; ++i)
        if (!b.count(i)) rest.push_back(i);
    std::sort(rest.begin(), rest.end(), [&](int a, int c) {
        return residue_j(params, a) > residue_j(params, c);
    });
    for (int i : rest) {
        images[static_cast<std::size_t>(i) - 1] = *free_images.begin();
        free_images.erase(free_images.begin());
    }
    return Permutation(std::move(images));
}

}  // namespace nstrat
