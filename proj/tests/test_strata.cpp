#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>

#include "nstrat/strata.hpp"

using namespace nstrat;

namespace {

// Independent minimizer enumeration: all of S_n, straight from the defining sum.
std::pair<long long, std::vector<std::vector<int>>> minimizers(long long d, long long p, int n) {
    std::vector<int> perm(static_cast<std::size_t>(n));
    std::iota(perm.begin(), perm.end(), 1);
    long long best = -1;
    std::vector<std::vector<int>> arg;
    do {
        long long s = 0;
        for (int k = 1; k <= n; ++k) {
            long long a = p * k - perm[static_cast<std::size_t>(k) - 1];
            s += (a + d - 1) / d;  // a > 0 here, plain ceiling
        }
        if (best < 0 || s < best) {
            best = s;
            arg.clear();
        }
        if (s == best) arg.push_back(perm);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return {best, arg};
}

int sign_by_cycles(const std::vector<int>& images) {
    int n = static_cast<int>(images.size());
    std::vector<bool> seen(static_cast<std::size_t>(n) + 1, false);
    int sign = 1;
    for (int i = 1; i <= n; ++i) {
        if (seen[static_cast<std::size_t>(i)]) continue;
        int len = 0, j = i;
        while (!seen[static_cast<std::size_t>(j)]) {
            seen[static_cast<std::size_t>(j)] = true;
            j = images[static_cast<std::size_t>(j) - 1];
            ++len;
        }
        if (len % 2 == 0) sign = -sign;
    }
    return sign;
}

std::vector<long long> small_primes_coprime_to(long long d, long long limit) {
    std::vector<long long> out;
    for (long long p = 2; p < limit; ++p)
        if (is_prime_u64(static_cast<std::uint64_t>(p)) && std::gcd(p, d) == 1) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("StratumParams validation and tiers") {
    CHECK_THROWS_AS(StratumParams(1, 5), std::invalid_argument);
    CHECK_THROWS_AS(StratumParams(3, 9), std::invalid_argument);   // not prime
    CHECK_THROWS_AS(StratumParams(3, 3), std::invalid_argument);   // p | d
    CHECK_THROWS_AS(StratumParams(6, 3), std::invalid_argument);
    StratumParams low(3, 5);
    CHECK_FALSE(low.tier_congruence());
    CHECK_FALSE(low.tier_theorem());
    StratumParams mid(3, 7);
    CHECK(mid.tier_congruence());
    CHECK_FALSE(mid.tier_theorem());
    StratumParams high(3, 11);
    CHECK(high.tier_theorem());
}

TEST_CASE("residue_j") {
    CHECK(residue_j(StratumParams(3, 13), 2) == 2);
    CHECK(residue_j(StratumParams(3, 11), 1) == 2);
    CHECK(residue_j(StratumParams(4, 19), 1) == 3);
    CHECK_THROWS_AS(residue_j(StratumParams(3, 11), 0), std::invalid_argument);
    CHECK_THROWS_AS(residue_j(StratumParams(3, 11), 3), std::invalid_argument);

    // i -> j_i is a bijection of 1..d-1
    for (long long d : {2, 3, 4, 5, 6, 7, 8}) {
        for (long long p : small_primes_coprime_to(d, 60)) {
            StratumParams params(d, p);
            std::set<int> image;
            for (int i = 1; i <= d - 1; ++i) image.insert(residue_j(params, i));
            CHECK(image.size() == static_cast<std::size_t>(d - 1));
            CHECK(*image.begin() == 1);
            CHECK(*image.rbegin() == static_cast<int>(d - 1));
        }
    }
}

TEST_CASE("b_set") {
    CHECK(b_set(StratumParams(3, 13), 1) == std::set<int>{1});
    CHECK(b_set(StratumParams(3, 11), 1) == std::set<int>{});
    CHECK(b_set(StratumParams(3, 11), 2) == std::set<int>{1, 2});
    CHECK(b_set(StratumParams(4, 19), 2) == std::set<int>{2});
    CHECK_THROWS_AS(b_set(StratumParams(3, 11), 3), std::invalid_argument);
}

TEST_CASE("y_n closed form examples") {
    CHECK(y_n(StratumParams(3, 13), 1) == 4);
    CHECK(y_n(StratumParams(3, 11), 2) == 10);
    CHECK(y_n(StratumParams(3, 11), 0) == 0);
    CHECK(y_n(StratumParams(5, 17), 0) == 0);
    CHECK(y_n(StratumParams(4, 19), 1) == 5);
    CHECK(y_n(StratumParams(4, 19), 2) == 14);
    CHECK(y_n(StratumParams(4, 19), 3) == 27);
}

TEST_CASE("y_n_bruteforce examples and cap") {
    CHECK(y_n_bruteforce(StratumParams(3, 11), 1) == 4);
    CHECK(y_n_bruteforce(StratumParams(4, 19), 2) == 14);
    CHECK(y_n_bruteforce(StratumParams(3, 13), 2) == 12);
    CHECK_THROWS_AS(y_n_bruteforce(StratumParams(11, 13), 9), cap_exceeded);
}

TEST_CASE("closed form matches brute force") {
    for (long long d : {2, 3, 4, 5, 6, 7, 8}) {
        for (long long p : small_primes_coprime_to(d, 40)) {
            StratumParams params(d, p);
            for (int n = 1; n <= d - 1; ++n) CHECK(y_n(params, n) == y_n_bruteforce(params, n));
        }
    }
}

TEST_CASE("sigma_set examples") {
    CHECK(sigma_set(StratumParams(3, 13), 1) == std::vector<Permutation>{Permutation({1})});
    CHECK(sigma_set(StratumParams(3, 11), 2) == std::vector<Permutation>{Permutation({2, 1})});
    CHECK(sigma_set(StratumParams(4, 19), 2) == std::vector<Permutation>{Permutation({1, 2})});
}

TEST_CASE("sigma_set equals the brute-force minimizer set and attains Y_n") {
    for (long long d : {3, 4, 5, 6, 7}) {
        for (long long p : small_primes_coprime_to(d, 40)) {
            StratumParams params(d, p);
            for (int n = 1; n <= d - 1; ++n) {
                auto [best, arg] = minimizers(d, p, n);
                CHECK(best == y_n(params, n));
                std::vector<std::vector<int>> got;
                for (const Permutation& s : sigma_set(params, n)) got.push_back(s.images);
                CHECK(got == arg);
            }
        }
    }
}

TEST_CASE("sigma_plus examples and containment") {
    CHECK(sigma_plus(StratumParams(3, 13), 1) == std::vector<Permutation>{Permutation({1})});
    CHECK(sigma_plus(StratumParams(3, 11), 2) == std::vector<Permutation>{Permutation({2, 1})});

    StratumParams params(4, 19);
    auto plus = sigma_plus(params, 3);
    CHECK(!plus.empty());
    auto b = b_set(params, 3);
    for (const Permutation& s : plus)
        for (int i : b) CHECK(s(i) == residue_j(params, i));

    for (long long d : {3, 5, 6}) {
        for (long long p : small_primes_coprime_to(d, 40)) {
            StratumParams prm(d, p);
            for (int n = 1; n <= d - 1; ++n) {
                auto all = sigma_set(prm, n);
                for (const Permutation& s : sigma_plus(prm, n))
                    CHECK(std::find(all.begin(), all.end(), s) != all.end());
            }
        }
    }
}

TEST_CASE("sigma_zero examples and membership") {
    CHECK(sigma_zero(StratumParams(3, 13), 2) == Permutation({1, 2}));
    CHECK(sigma_zero(StratumParams(3, 11), 1) == Permutation({1}));

    StratumParams params(5, 17);
    Permutation s0 = sigma_zero(params, 2);
    auto plus = sigma_plus(params, 2);
    CHECK(std::find(plus.begin(), plus.end(), s0) != plus.end());

    for (long long d : {3, 4, 5, 6, 7}) {
        for (long long p : small_primes_coprime_to(d, 40)) {
            StratumParams prm(d, p);
            for (int n = 1; n <= d - 1; ++n) {
                Permutation z = sigma_zero(prm, n);
                auto sp = sigma_plus(prm, n);
                CHECK(std::find(sp.begin(), sp.end(), z) != sp.end());
            }
        }
    }
}

TEST_CASE("split case p = 1 mod d") {
    for (auto [d, p] : std::vector<std::pair<long long, long long>>{{3, 13}, {4, 13}, {5, 11}, {6, 13}}) {
        StratumParams params(d, p);
        for (int i = 1; i <= d - 1; ++i) CHECK(residue_j(params, i) == i);
        for (int n = 1; n <= d - 1; ++n) {
            std::set<int> expect;
            for (int i = 1; i <= n; ++i) expect.insert(i);
            CHECK(b_set(params, n) == expect);
            std::vector<int> id(static_cast<std::size_t>(n));
            std::iota(id.begin(), id.end(), 1);
            CHECK(sigma_set(params, n) == std::vector<Permutation>{Permutation(id)});
            long long expect_y = -n;
            for (int k = 1; k <= n; ++k) expect_y += ceil_div(p * k, d);
            CHECK(y_n(params, n) == expect_y);
            CHECK(y_n(params, n) == (p - 1) * n * (n + 1) / (2 * d));
        }
    }
}

TEST_CASE("Y_n is nondecreasing with the forced symmetric endpoint") {
    for (long long d : {2, 3, 4, 5, 6, 7, 8}) {
        for (long long p : small_primes_coprime_to(d, 60)) {
            if (p < 3) continue;
            StratumParams params(d, p);
            long long prev = 0;
            for (int n = 1; n <= d - 1; ++n) {
                long long y = y_n(params, n);
                CHECK(y >= prev);
                prev = y;
            }
            CHECK(y_n(params, static_cast<int>(d - 1)) == (d - 1) * (p - 1) / 2);
        }
    }
}

TEST_CASE("permutation sign against a cycle-structure oracle") {
    CHECK_THROWS_AS(Permutation({1, 1}), std::invalid_argument);
    CHECK_THROWS_AS(Permutation({0, 1}), std::invalid_argument);
    std::vector<int> perm{1, 2, 3, 4, 5, 6};
    do {
        CHECK(Permutation(perm).sign == sign_by_cycles(perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
}
