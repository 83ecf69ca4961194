#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "nstrat/dwork.hpp"

using namespace nstrat;

namespace {

TruncatedCyc random_truncated(long long p, long long n, Rng& rng) {
    std::vector<BigInt> coords(static_cast<std::size_t>(p - 1));
    for (auto& c : coords) c = static_cast<long long>(rng.below(1000));
    return TruncatedCyc::from_lambda_coords(p, n, std::move(coords));
}

}  // namespace

TEST_CASE("truncated ring structure") {
    const long long p = 11, N = 30;
    TruncatedCyc lam = TruncatedCyc::lambda(p, N);
    TruncatedCyc one = TruncatedCyc::scalar(p, N, 1);

    CHECK(lam.valuation_capped() == 1);
    CHECK(one.valuation_capped() == 0);
    CHECK(TruncatedCyc::scalar(p, N, p).valuation_capped() == p - 1);
    CHECK(TruncatedCyc(p, N).valuation_capped() == N);

    // E(lambda) = 0: lambda^{p-1} + sum_k C(p,k+1) lambda^k vanishes
    TruncatedCyc acc = lam.pow(BigInt(p - 1));
    BigInt binom = p;
    TruncatedCyc lpow = one;
    for (long long k = 0; k <= p - 2; ++k) {
        acc = acc + lpow.scaled(binom);
        binom = binom * (p - k - 1) / (k + 2);
        lpow = lpow * lam;
    }
    CHECK(acc.valuation_capped() == N);

    Rng rng(3);
    for (int iter = 0; iter < 20; ++iter) {
        TruncatedCyc x = random_truncated(p, N, rng);
        TruncatedCyc y = random_truncated(p, N, rng);
        TruncatedCyc z = random_truncated(p, N, rng);
        CHECK((x * y).congruent(y * x));
        CHECK(((x * y) * z).congruent(x * (y * z)));
        CHECK((x * (y + z)).congruent(x * y + x * z));
    }
}

TEST_CASE("valuation respects products against the exact ring") {
    Rng rng(17);
    const long long p = 13, N = 26;
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<BigInt> coords(static_cast<std::size_t>(p - 1));
        for (auto& c : coords) c = static_cast<long long>(rng.below(50));
        CycInt exact = CycInt::from_coords(p, coords);
        TruncatedCyc trunc = TruncatedCyc::from_cyc(exact, N);
        auto v = exact.pi_valuation();
        if (v && *v < N)
            CHECK(trunc.valuation_capped() == *v);
        else
            CHECK(trunc.valuation_capped() == N);
    }
}

TEST_CASE("inverse of a unit") {
    const long long p = 11, N = 25;
    Rng rng(8);
    const TruncatedCyc one = TruncatedCyc::scalar(p, N, 1);
    for (int iter = 0; iter < 20; ++iter) {
        TruncatedCyc x = random_truncated(p, N, rng) + one.scaled(1 + static_cast<long long>(rng.below(9)));
        if (!x.is_unit()) continue;
        CHECK((x * x.inverse()).congruent(one));
    }
    CHECK_THROWS_AS(TruncatedCyc::lambda(p, N).inverse(), std::domain_error);
}

TEST_CASE("dwork_pi") {
    const long long p = 11, N = 30;
    TruncatedCyc pi = dwork_pi(p, N);

    // the residual check is built into the operation; assert it here too
    TruncatedCyc residual = pi.pow(BigInt(p - 1)) + TruncatedCyc::scalar(p, N, p);
    CHECK(residual.valuation_capped() == N);

    CHECK(pi.valuation_capped() == 1);

    // branch: pi = lambda mod lambda^2
    CHECK((pi - TruncatedCyc::lambda(p, N)).valuation_capped() >= 2);

    CHECK_THROWS_AS(dwork_pi(11, 1), std::invalid_argument);

    for (long long q : {13ll, 17ll, 19ll}) {
        TruncatedCyc piq = dwork_pi(q, q + 3);
        CHECK(piq.valuation_capped() == 1);
    }
}

TEST_CASE("precision coherence") {
    const long long p = 11;
    TruncatedCyc hi = dwork_pi(p, 45);
    TruncatedCyc lo = dwork_pi(p, 30);
    CHECK(hi.truncated(30).congruent(lo));

    Rng rng(21);
    for (int iter = 0; iter < 20; ++iter) {
        TruncatedCyc x = random_truncated(p, 45, rng);
        TruncatedCyc y = random_truncated(p, 45, rng);
        CHECK((x * y).truncated(30).congruent(x.truncated(30) * y.truncated(30)));
    }
    CHECK_THROWS_AS(lo.truncated(45), std::invalid_argument);
}

TEST_CASE("teichmuller lifts") {
    const long long p = 13, N = p + 1;
    const long long b = ceil_div(N, p - 1) + 1;
    BigInt pb = pow(BigInt(p), static_cast<unsigned>(b));

    CHECK(teichmuller_int(p, b, 0) == 0);
    CHECK(teichmuller_int(p, b, 1) == 1);
    for (long long a = 1; a < p; ++a) {
        BigInt w = teichmuller_int(p, b, a);
        CHECK(w % p == a);
        CHECK(powm(w, BigInt(p), pb) == w);
        CHECK(powm(w, BigInt(p - 1), pb) == 1);
        for (long long c = 1; c < p; ++c)
            CHECK(teichmuller_int(p, b, a) * teichmuller_int(p, b, c) % pb ==
                  teichmuller_int(p, b, a * c % p));
    }
    CHECK(teichmuller(p, 5, N).coords()[0] == teichmuller_int(p, b, 5));
}

TEST_CASE("trace congruence examples") {
    CongruenceReport r1 = trace_congruence_check({1, 0, 1}, 11, 12);  // X^3 + X
    CHECK(r1.pass);
    CHECK(r1.valuation_of_difference >= 11);

    CongruenceReport r2 = trace_congruence_check({0, 0, 1}, 11, 12);  // X^3: S_1 = 0
    CHECK(r2.pass);
    for (const BigInt& c : r2.lhs_coords) CHECK(c == 0);

    // hypothesis and precision validation
    CHECK_THROWS_AS(trace_congruence_check({1, 0, 0, 1}, 5, 6), std::domain_error);       // p < d+3
    CHECK_THROWS_AS(trace_congruence_check({1, 0, 1}, 11, 11), std::invalid_argument);    // N < p+1
    CHECK_THROWS_AS(trace_congruence_check({1, 0, 0}, 11, 12), std::invalid_argument);    // a_d = 0
}

TEST_CASE("trace congruence on seeded random polynomials") {
    Rng rng(31);
    for (auto [d, p] : std::vector<std::pair<long long, long long>>{{3, 13}, {4, 13}, {5, 17}}) {
        for (int iter = 0; iter < 8; ++iter) {
            std::vector<long long> coeffs;
            for (long long j = 1; j <= d; ++j)
                coeffs.push_back(static_cast<long long>(rng.below(static_cast<std::uint64_t>(p))));
            if (coeffs.back() == 0) coeffs.back() = 1;
            CongruenceReport rep = trace_congruence_check(coeffs, p, p + 1);
            CHECK(rep.pass);
        }
    }
}

TEST_CASE("congruence check at a higher precision than required") {
    CongruenceReport rep = trace_congruence_check({4, 2, 1}, 11, 24);
    CHECK(rep.pass);
    CHECK(rep.valuation_of_difference >= 11);
}
