#include "nstrat/dwork.hpp"

#include <algorithm>
#include <map>

namespace nstrat {

namespace {

// Lower coefficients of the Eisenstein minimal polynomial of lambda:
// E(lambda) = Phi_p(1 + lambda) = lambda^{p-1} + sum_{k<p-1} C(p, k+1) lambda^k.
const std::vector<BigInt>& eisenstein_lower(long long p) {
    static thread_local std::map<long long, std::vector<BigInt>> cache;
    auto it = cache.find(p);
    if (it != cache.end()) return it->second;
    std::vector<BigInt> c(static_cast<std::size_t>(p - 1));
    BigInt binom = p;  // C(p, 1)
    for (long long k = 0; k < p - 1; ++k) {
        c[static_cast<std::size_t>(k)] = binom;
        binom = binom * (p - k - 1) / (k + 2);  // C(p, k+2)
    }
    return cache.emplace(p, std::move(c)).first->second;
}

long long precision_exponent(long long p, long long n) {
    return ceil_div(n, p - 1) + 1;
}

}  // namespace

TruncatedCyc::TruncatedCyc(long long p, long long precision)
    : p_(p), n_(precision), b_(precision_exponent(p, precision)) {
    if (p < 3 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("TruncatedCyc: p must be an odd prime");
    if (precision < 1) throw std::invalid_argument("TruncatedCyc: precision must be >= 1");
    pb_ = boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(b_));
    coords_.assign(static_cast<std::size_t>(p - 1), BigInt(0));
}

BigInt TruncatedCyc::reduce(const BigInt& v) const {
    BigInt r = v % pb_;
    if (r < 0) r += pb_;
    return r;
}

TruncatedCyc TruncatedCyc::scalar(long long p, long long precision, const BigInt& n) {
    TruncatedCyc x(p, precision);
    x.coords_[0] = x.reduce(n);
    return x;
}

TruncatedCyc TruncatedCyc::lambda(long long p, long long precision) {
    TruncatedCyc x(p, precision);
    x.coords_[1] = 1;
    return x;
}

TruncatedCyc TruncatedCyc::from_lambda_coords(long long p, long long precision,
                                              std::vector<BigInt> coords) {
    TruncatedCyc x(p, precision);
    if (coords.size() != static_cast<std::size_t>(p - 1))
        throw std::invalid_argument("TruncatedCyc: expected p-1 coordinates");
    for (std::size_t i = 0; i < coords.size(); ++i) x.coords_[i] = x.reduce(coords[i]);
    return x;
}

TruncatedCyc TruncatedCyc::from_cyc(const CycInt& x, long long precision) {
    return from_lambda_coords(x.p(), precision, x.lambda_coords());
}

void TruncatedCyc::require_compatible(const TruncatedCyc& o) const {
    if (p_ != o.p_ || n_ != o.n_)
        throw std::invalid_argument("TruncatedCyc: prime or precision mismatch");
}

TruncatedCyc TruncatedCyc::operator+(const TruncatedCyc& o) const {
    require_compatible(o);
    TruncatedCyc r(p_, n_);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = reduce(coords_[i] + o.coords_[i]);
    return r;
}

TruncatedCyc TruncatedCyc::operator-(const TruncatedCyc& o) const {
    require_compatible(o);
    TruncatedCyc r(p_, n_);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = reduce(coords_[i] - o.coords_[i]);
    return r;
}

TruncatedCyc TruncatedCyc::operator-() const {
    TruncatedCyc r(p_, n_);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = reduce(-coords_[i]);
    return r;
}

TruncatedCyc TruncatedCyc::scaled(const BigInt& c) const {
    TruncatedCyc r(p_, n_);
    BigInt cr = reduce(c);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = reduce(coords_[i] * cr);
    return r;
}

TruncatedCyc TruncatedCyc::operator*(const TruncatedCyc& o) const {
    require_compatible(o);
    const std::size_t n = coords_.size();  // p - 1
    std::vector<BigInt> conv(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (o.coords_[j] == 0) continue;
            conv[i + j] += coords_[i] * o.coords_[j];
        }
    }
    const std::vector<BigInt>& e = eisenstein_lower(p_);
    for (std::size_t k = 2 * n - 2; k >= n; --k) {
        BigInt c = conv[k] % pb_;
        if (c == 0) continue;
        for (std::size_t j = 0; j < n; ++j) conv[k - n + j] -= c * e[j];
    }
    TruncatedCyc r(p_, n_);
    for (std::size_t i = 0; i < n; ++i) r.coords_[i] = reduce(conv[i]);
    return r;
}

TruncatedCyc TruncatedCyc::pow(const BigInt& e) const {
    if (e < 0) throw std::invalid_argument("TruncatedCyc::pow: negative exponent");
    TruncatedCyc result = scalar(p_, n_, 1);
    if (e == 0) return result;
    TruncatedCyc acc = *this;
    const int bits = static_cast<int>(msb(e));
    for (int i = bits; i >= 0; --i) {
        result = result * result;
        if (bit_test(e, static_cast<unsigned>(i))) result = result * acc;
    }
    return result;
}

long long TruncatedCyc::valuation_capped() const {
    long long best = n_;
    for (std::size_t j = 0; j < coords_.size(); ++j) {
        if (coords_[j] == 0) continue;
        long long v = (p_ - 1) * vp_of(coords_[j], BigInt(p_)) + static_cast<long long>(j);
        best = std::min(best, v);
    }
    return best;
}

bool TruncatedCyc::congruent(const TruncatedCyc& o) const {
    return (*this - o).valuation_capped() >= n_;
}

TruncatedCyc TruncatedCyc::inverse() const {
    if (!is_unit()) throw std::domain_error("TruncatedCyc::inverse: not a unit");
    TruncatedCyc z = scalar(p_, n_, invmod_big(coords_[0], pb_));
    const TruncatedCyc one = scalar(p_, n_, 1);
    const TruncatedCyc two = scalar(p_, n_, 2);
    for (int iter = 0; iter < 64; ++iter) {
        TruncatedCyc t = *this * z;
        if (t.congruent(one)) return z;
        z = z * (two - t);
    }
    throw invariant_violation("TruncatedCyc::inverse: Newton iteration did not converge");
}

TruncatedCyc TruncatedCyc::truncated(long long precision) const {
    if (precision > n_)
        throw std::invalid_argument("TruncatedCyc::truncated: cannot raise precision");
    return from_lambda_coords(p_, precision, coords_);
}

TruncatedCyc dwork_pi(long long p, long long precision) {
    if (precision < 2) throw std::invalid_argument("dwork_pi: precision must be >= 2");
    TruncatedCyc lam = TruncatedCyc::lambda(p, precision);

    // lambda^{p-1} = -p * A(lambda) with A = sum_k (C(p, k+1)/p) lambda^k, a
    // unit with constant term 1. The sought root is pi = lambda * u where
    // u^{p-1} A = 1 and u = 1 mod lambda, found by Newton iteration (the
    // derivative (p-1) u^{p-2} A is a unit, so the iteration is supple).
    const std::vector<BigInt>& e = eisenstein_lower(p);
    std::vector<BigInt> a_coords(static_cast<std::size_t>(p - 1));
    for (std::size_t k = 0; k < a_coords.size(); ++k) a_coords[k] = e[k] / p;
    const TruncatedCyc a = TruncatedCyc::from_lambda_coords(p, precision, std::move(a_coords));

    const TruncatedCyc one = TruncatedCyc::scalar(p, precision, 1);
    TruncatedCyc u = one;
    bool converged = false;
    for (int iter = 0; iter < 64; ++iter) {
        TruncatedCyc u_pm2 = u.pow(BigInt(p - 2));
        TruncatedCyc g = u_pm2 * u * a - one;
        if (g.valuation_capped() >= precision) {
            converged = true;
            break;
        }
        TruncatedCyc gprime = u_pm2.scaled(BigInt(p - 1)) * a;
        u = u - g * gprime.inverse();
    }
    if (!converged) throw invariant_violation("dwork_pi: Newton iteration did not converge");

    TruncatedCyc pi = lam * u;
    TruncatedCyc residual = pi.pow(BigInt(p - 1)) + TruncatedCyc::scalar(p, precision, p);
    if (residual.valuation_capped() < precision)
        throw invariant_violation("dwork_pi: residual check pi^{p-1} + p = 0 failed");
    return pi;
}

BigInt teichmuller_int(long long p, long long b_exponent, long long a) {
    BigInt pb = pow(BigInt(p), static_cast<unsigned>(b_exponent));
    BigInt t = a % p;
    if (t < 0) t += p;
    for (long long iter = 0; iter <= b_exponent + 2; ++iter) {
        BigInt next = powm(t, BigInt(p), pb);
        if (next == t) return t;
        t = next;
    }
    throw invariant_violation("teichmuller_int: iteration did not stabilize");
}

TruncatedCyc teichmuller(long long p, long long a, long long precision) {
    return TruncatedCyc::scalar(p, precision, teichmuller_int(p, precision_exponent(p, precision), a));
}

namespace {

// Principal-part expansion sum_{k=ceil((p-1)/d)}^{p-1} sum_i {g^k}_{(p-1)i} pi^k / k!
// of the Frobenius trace, for a given branch pi of the root of X^{p-1} + p.
// S_1(f) is congruent to the NEGATIVE of this sum: S_1 equals the degree-one
// coefficient of a characteristic polynomial det(1 - T Frob), which is minus
// the trace. (Verified exhaustively; the positive sign fails whenever
// S_1 != 0, on every branch.)
TruncatedCyc frobenius_trace_expansion(const std::vector<long long>& f_coeffs, long long p,
                                       long long precision, const TruncatedCyc& pi) {
    const long long d = static_cast<long long>(f_coeffs.size());
    const long long b = ceil_div(precision, p - 1) + 1;
    const BigInt pb = pow(BigInt(p), static_cast<unsigned>(b));

    std::vector<BigInt> lifts(static_cast<std::size_t>(d));  // omega(a_i), i = 1..d
    for (long long i = 0; i < d; ++i)
        lifts[static_cast<std::size_t>(i)] = teichmuller_int(p, b, f_coeffs[static_cast<std::size_t>(i)]);

    const long long maxdeg = (p - 1) * (d - 1);
    const long long kmin = ceil_div(p - 1, d);

    // Running power g^k of g(X) = sum omega(a_i) X^i, truncated at degree
    // maxdeg, coefficients mod p^B.
    std::vector<BigInt> cur(static_cast<std::size_t>(maxdeg) + 1);
    cur[0] = 1;
    TruncatedCyc rhs(p, precision);
    TruncatedCyc pi_pow = TruncatedCyc::scalar(p, precision, 1);
    BigInt factorial = 1;
    for (long long k = 1; k <= p - 1; ++k) {
        std::vector<BigInt> next(static_cast<std::size_t>(maxdeg) + 1);
        for (long long e = 0; e <= maxdeg; ++e) {
            if (cur[static_cast<std::size_t>(e)] == 0) continue;
            for (long long i = 1; i <= d && e + i <= maxdeg; ++i) {
                if (lifts[static_cast<std::size_t>(i - 1)] == 0) continue;
                BigInt& slot = next[static_cast<std::size_t>(e + i)];
                slot = (slot + cur[static_cast<std::size_t>(e)] * lifts[static_cast<std::size_t>(i - 1)]) % pb;
            }
        }
        cur = std::move(next);
        pi_pow = pi_pow * pi;
        factorial = factorial * k % pb;
        if (k < kmin) continue;
        BigInt s = 0;
        for (long long i = 1; i <= d - 1; ++i) s += cur[static_cast<std::size_t>((p - 1) * i)];
        s %= pb;
        if (s == 0) continue;
        rhs = rhs + pi_pow.scaled(s * invmod_big(factorial, pb) % pb);
    }
    return rhs;
}

}  // namespace

CongruenceReport trace_congruence_check(const std::vector<long long>& f_coeffs, long long p,
                                        long long precision) {
    const long long d = static_cast<long long>(f_coeffs.size());
    if (d < 2) throw std::invalid_argument("trace_congruence_check: degree must be >= 2");
    if (!is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("trace_congruence_check: p must be prime");
    if (p < d + 3) throw std::domain_error("trace_congruence_check: requires p >= d + 3");
    if (precision < p + 1)
        throw std::invalid_argument("trace_congruence_check: precision must be >= p + 1");
    if (f_coeffs.back() % p == 0)
        throw std::invalid_argument("trace_congruence_check: leading coefficient vanishes");

    CongruenceReport report;
    report.p = p;
    report.d = d;
    report.precision = precision;
    report.f_coeffs = f_coeffs;
    for (long long& c : report.f_coeffs) {
        c %= p;
        if (c < 0) c += p;
    }

    // Exact S_1(f) over the prime field, then reduced into the truncation.
    Field::Ptr fp = Field::prime_field(p);
    FqPoly f{fp, {}};
    f.coeffs.push_back(fp->zero());
    for (long long c : report.f_coeffs) f.coeffs.push_back(fp->from_residue(c));
    TruncatedCyc lhs = TruncatedCyc::from_cyc(exp_sum(f, fp), precision);

    TruncatedCyc pi = dwork_pi(p, precision);
    TruncatedCyc rhs = -frobenius_trace_expansion(report.f_coeffs, p, precision, pi);

    report.lhs_coords = lhs.coords();
    report.rhs_coords = rhs.coords();
    report.valuation_of_difference = (lhs - rhs).valuation_capped();
    report.pass = report.valuation_of_difference >= p;

    if (!report.pass) {
        // The congruence does not pin the root of X^{p-1} + p; if the
        // classical branch fails, probe all of them and record the survivors
        // instead of silently switching.
        const long long b = ceil_div(precision, p - 1) + 1;
        for (long long a = 1; a <= p - 1; ++a) {
            TruncatedCyc pi_a = pi.scaled(teichmuller_int(p, b, a));
            TruncatedCyc rhs_a = -frobenius_trace_expansion(report.f_coeffs, p, precision, pi_a);
            if ((lhs - rhs_a).valuation_capped() >= p) report.passing_branches.push_back(a);
        }
    }
    return report;
}

}  // namespace nstrat
