#pragma once

#include <mutex>
#include <optional>
#include <unordered_map>
#include <vector>

#include "nstrat/common.hpp"
#include "nstrat/finite_field.hpp"
#include "nstrat/polygon.hpp"

namespace nstrat {

/// Exact element of Z[zeta_p], stored as p-1 integer coordinates in the
/// power basis zeta^0..zeta^{p-2}; zeta^{p-1} reduces to -(1+zeta+...+zeta^{p-2}).
class CycInt {
public:
    explicit CycInt(long long p);
    static CycInt from_coords(long long p, std::vector<BigInt> coords);
    static CycInt integer(long long p, const BigInt& n);
    static CycInt zeta_pow(long long p, long long t);
    /// sum_t counts[t] * zeta^t for t = 0..p-1.
    static CycInt from_residue_counts(long long p, const std::vector<std::uint64_t>& counts);

    long long p() const { return p_; }
    const std::vector<BigInt>& coords() const { return coords_; }
    bool is_zero() const;

    CycInt operator+(const CycInt& o) const;
    CycInt operator-(const CycInt& o) const;
    CycInt operator*(const CycInt& o) const;
    CycInt operator-() const;
    bool operator==(const CycInt& o) const { return p_ == o.p_ && coords_ == o.coords_; }
    bool operator!=(const CycInt& o) const { return !(*this == o); }

    CycInt scaled(const BigInt& c) const;

    /// Exact division by a nonzero integer; throws invariant_violation if any
    /// coordinate is not divisible.
    CycInt divided_by(const BigInt& k) const;

    /// Galois action zeta -> zeta^t for t not divisible by p.
    CycInt galois(long long t) const;

    /// Coordinates in the basis lambda^0..lambda^{p-2}, lambda = zeta - 1
    /// (exact binomial change of basis; no reduction is needed since degrees
    /// are preserved).
    std::vector<BigInt> lambda_coords() const;

    /// v_pi normalized by v_pi(pi) = 1; empty optional for the zero element.
    /// Computed as min over nonzero lambda coordinates of (p-1)*v_p(b_j) + j,
    /// which is attained uniquely because the candidates are pairwise
    /// distinct mod p-1.
    std::optional<long long> pi_valuation() const;

private:
    long long p_;
    std::vector<BigInt> coords_;
};

/// Polynomial over a fixed field handle, coefficients a_0..a_deg.
struct FqPoly {
    Field::Ptr field;
    std::vector<FieldElement> coeffs;

    int degree() const { return static_cast<int>(coeffs.size()) - 1; }
};

/// Lazily built chain of extensions F_{q^r} over a base field, with moduli
/// derived deterministically from one seed. level(1) is the base itself.
/// When a cache directory is given, found moduli are stored there and reused
/// on later runs.
class ExtensionTower {
public:
    explicit ExtensionTower(Field::Ptr base, std::uint64_t seed = 0, std::string cache_dir = {});

    const Field::Ptr& base() const { return base_; }
    Field::Ptr level(int r) const;

private:
    Field::Ptr base_;
    std::uint64_t seed_;
    std::string cache_dir_;
    mutable std::mutex mu_;
    mutable std::unordered_map<int, Field::Ptr> levels_;
};

/// S(f over F_{q^r}) = sum over x in ext of zeta_p^{Tr(f(x))}, exact. ext
/// must lie in a tower over f's field.
CycInt exp_sum(const FqPoly& f, const Field::Ptr& ext,
               std::uint64_t enum_cap = kDefaultEnumCap, int threads = 1);

/// S_r(f) with the degree-r extension taken from the given tower.
CycInt exp_sum(const FqPoly& f, const ExtensionTower& tower, int r,
               std::uint64_t enum_cap = kDefaultEnumCap, int threads = 1);

/// L(f, T) as a degree-(d-1) polynomial with constant term 1 over Z[zeta_p];
/// coeffs[n] multiplies T^n.
struct LPolynomial {
    long long p = 0;
    long long d = 0;
    long long m = 0;  // extension degree of q over p
    std::vector<CycInt> coeffs;
};

/// L-function from the sums S_1..S_{d-1} via Newton's identities in the form
/// k*c_k = sum_{i=1}^{k} S_i c_{k-i}; every division by k is checked exact.
LPolynomial l_function_from_sums(long long p, long long m, const std::vector<CycInt>& sums);

/// Computes S_1..S_{d-1} over the tower and assembles L(f, T); f must be of
/// degree d with gcd(d, p) = 1.
LPolynomial l_function(const FqPoly& f, const ExtensionTower& tower, int d,
                       std::uint64_t enum_cap = kDefaultEnumCap, int threads = 1);

/// Power sums recovered back from the coefficients (the inverse of the
/// Newton recurrence); count values S_1..S_count.
std::vector<CycInt> power_sums_from_l(const LPolynomial& l, int count);

/// NP_q(f): hull of (n, v_pi(c_n)/((p-1) m)), vanishing coefficients giving
/// +infinity ordinates.
NewtonPolygon newton_polygon_of_l(const LPolynomial& l);

}  // namespace nstrat
