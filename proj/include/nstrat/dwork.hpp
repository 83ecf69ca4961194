#pragma once

#include <vector>

#include "nstrat/common.hpp"
#include "nstrat/cyclotomic.hpp"

namespace nstrat {

/// Element of Z_p[zeta_p] known modulo pi^N, stored as p-1 coordinates in
/// the lambda-basis (lambda = zeta - 1) with entries reduced mod p^B,
/// B = ceil(N/(p-1)) + 1. Two representatives are equal when their
/// difference has valuation >= N; the extra power of p keeps every reduced
/// coordinate inside the v >= N lattice.
class TruncatedCyc {
public:
    TruncatedCyc(long long p, long long precision);
    static TruncatedCyc scalar(long long p, long long precision, const BigInt& n);
    static TruncatedCyc lambda(long long p, long long precision);
    static TruncatedCyc from_lambda_coords(long long p, long long precision, std::vector<BigInt> coords);
    static TruncatedCyc from_cyc(const CycInt& x, long long precision);

    long long p() const { return p_; }
    long long precision() const { return n_; }
    long long coeff_exponent() const { return b_; }
    const BigInt& coeff_modulus() const { return pb_; }
    const std::vector<BigInt>& coords() const { return coords_; }

    TruncatedCyc operator+(const TruncatedCyc& o) const;
    TruncatedCyc operator-(const TruncatedCyc& o) const;
    TruncatedCyc operator*(const TruncatedCyc& o) const;
    TruncatedCyc operator-() const;
    TruncatedCyc scaled(const BigInt& c) const;
    TruncatedCyc pow(const BigInt& e) const;

    /// Valuation of this representative, saturating at the precision (any
    /// value >= N is reported as N, where it is indistinguishable from 0).
    long long valuation_capped() const;

    /// Equality modulo pi^N.
    bool congruent(const TruncatedCyc& o) const;

    bool is_unit() const { return valuation_capped() == 0; }

    /// Multiplicative inverse of a unit, by Newton iteration.
    TruncatedCyc inverse() const;

    /// The same class viewed at a lower precision.
    TruncatedCyc truncated(long long precision) const;

private:
    void require_compatible(const TruncatedCyc& o) const;
    BigInt reduce(const BigInt& v) const;

    long long p_;
    long long n_;
    long long b_;
    BigInt pb_;
    std::vector<BigInt> coords_;
};

/// Dwork's pi: the root of X^{p-1} + p with pi = lambda mod lambda^2,
/// constructed by Newton iteration on the unit u = pi/lambda and verified by
/// checking v(pi^{p-1} + p) >= N. Requires N >= 2.
TruncatedCyc dwork_pi(long long p, long long precision);

/// Teichmuller lift of a mod p as an integer mod p^B: the fixed point of
/// t -> t^p with t = a mod p.
BigInt teichmuller_int(long long p, long long b_exponent, long long a);

/// The same lift as a (scalar) truncated element.
TruncatedCyc teichmuller(long long p, long long a, long long precision);

/// Outcome of the trace congruence check
///   S_1(f) = - sum_{k=ceil((p-1)/d)}^{p-1} sum_{i=1}^{d-1} {g^k}_{(p-1)i} pi^k / k!   (mod p*pi)
/// for f over the prime field with f(0) = 0, g the Teichmuller lift of f.
/// The sum expands the trace of the Frobenius matrix; S_1 is minus that
/// trace, being the T-coefficient of det(1 - T Frob).
struct CongruenceReport {
    long long p = 0;
    long long d = 0;
    long long precision = 0;
    std::vector<long long> f_coeffs;         // a_1..a_d
    std::vector<BigInt> lhs_coords;          // lambda-basis, mod p^B
    std::vector<BigInt> rhs_coords;
    long long valuation_of_difference = 0;   // capped at the precision
    bool pass = false;                       // valuation >= p on the default branch
    std::vector<long long> passing_branches; // probed only if the default branch fails:
                                             // residues a with pi_a = pi * omega(a) passing
};

/// Runs the check for f = a_1 X + ... + a_d X^d (coefficients mod p, a_d != 0).
/// Requires p >= d + 3 and precision >= p + 1.
CongruenceReport trace_congruence_check(const std::vector<long long>& f_coeffs, long long p,
                                        long long precision);

}  // namespace nstrat
