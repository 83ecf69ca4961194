#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "nstrat/common.hpp"
#include "nstrat/finite_field.hpp"
#include "nstrat/strata.hpp"

namespace nstrat {

/// Term order used everywhere a canonical ordering is needed: total degree
/// ascending, ties broken lexicographically with the larger exponent on the
/// earlier variable first.
struct GradedLexLess {
    bool operator()(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) const;
};

/// Sparse multivariate polynomial over F_p in variables X_1..X_nvars.
/// No zero coefficients are stored; coefficients live in 0..p-1.
class FpMultiPoly {
public:
    using Exponents = std::vector<std::uint32_t>;
    using TermMap = std::map<Exponents, std::uint32_t, GradedLexLess>;

    FpMultiPoly(long long p, int nvars);
    static FpMultiPoly constant(long long p, int nvars, long long c);
    static FpMultiPoly variable(long long p, int nvars, int index);  // 1-based

    long long p() const { return p_; }
    int nvars() const { return nvars_; }
    const TermMap& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    /// Total degree; empty optional is the degree of the zero polynomial.
    std::optional<long long> total_degree() const;
    bool is_homogeneous() const;

    std::uint32_t coefficient(const Exponents& e) const;
    void add_term(const Exponents& e, long long c);

    FpMultiPoly operator+(const FpMultiPoly& o) const;
    FpMultiPoly operator-(const FpMultiPoly& o) const;
    FpMultiPoly operator*(const FpMultiPoly& o) const;
    FpMultiPoly scaled(long long c) const;
    bool operator==(const FpMultiPoly& o) const;
    bool operator!=(const FpMultiPoly& o) const { return !(*this == o); }

    /// Substitute the last variable by a constant; the result has one
    /// variable fewer.
    FpMultiPoly substitute_last(long long value) const;

    /// Canonical text form: graded-lex sorted terms "c*X1^e1*..." joined by
    /// '+'; unit exponents lose the '^1', zero exponents drop the variable,
    /// the zero polynomial prints "0".
    std::string to_string() const;

    /// Value at a point with coordinates in an extension field of the same
    /// characteristic; coefficients are lifted through the prime subfield.
    /// The field is passed explicitly so that polynomials in zero variables
    /// (constants) still know where to land.
    FieldElement evaluate(const Field::Ptr& field, const std::vector<FieldElement>& point) const;

private:
    void require_compatible(const FpMultiPoly& o) const;

    long long p_;
    int nvars_;
    TermMap terms_;
};

/// {g^k}_n for the generic polynomial g = X_1 T + X_2 T^2 + ... + X_d T^d:
/// the degree-n coefficient of g^k as a polynomial in X_1..X_d over F_p,
/// computed by truncated power series products in T.
FpMultiPoly power_coefficient(const StratumParams& params, long long k, long long n);

/// P_n = sum over Sigma_n of sgn(sigma) * prod_i {g^ceil((pi-sigma(i))/d)}_{pi-sigma(i)}.
FpMultiPoly hasse_P_n(const StratumParams& params, int n);

/// P_{d,p} = P_1 * ... * P_{floor(d/2)}.
FpMultiPoly hasse_product(const StratumParams& params);

/// G_{d,p}(X_1..X_{d-1}) = P_{d,p}(X_1..X_{d-1}, 1).
FpMultiPoly hasse_G(const StratumParams& params);

/// H_{d,p}(X_1..X_{d-2}) = P_{d,p}(X_1..X_{d-2}, 0, 1).
FpMultiPoly hasse_H(const StratumParams& params);

/// The monomial of P_n singled out by sigma_0 together with its predicted
/// coefficient: X_d^{sum floor(pi/d)} * prod_{i not in B_n} X_{j_i - sigma_0(i)},
/// coefficient sgn(sigma_0) * prod_{i not in B_n} ceil((pi - sigma_0(i))/d) mod p.
/// Assembled from the combinatorial data only, for cross-checking P_n.
std::pair<FpMultiPoly::Exponents, std::uint32_t> sigma_zero_witness(const StratumParams& params, int n);

}  // namespace nstrat
