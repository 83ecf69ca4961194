#pragma once

#include <set>
#include <vector>

#include "nstrat/common.hpp"

namespace nstrat {

/// The pair (d, p) indexing a stratum family: degree d >= 2 and a prime p
/// coprime to d. Construction accepts any such pair; operations that rely on
/// a lower bound on p check the corresponding tier themselves.
class StratumParams {
public:
    StratumParams(long long d, long long p);

    long long d() const { return d_; }
    long long p() const { return p_; }

    /// p >= d + 3, the hypothesis of the trace congruence.
    bool tier_congruence() const { return p_ >= d_ + 3; }
    /// p >= 3d, the hypothesis of the stratum theorem.
    bool tier_theorem() const { return p_ >= 3 * d_; }

private:
    long long d_;
    long long p_;
};

/// A permutation of {1..n}; images[i-1] = sigma(i), values 1-based.
struct Permutation {
    std::vector<int> images;
    int sign = 1;

    explicit Permutation(std::vector<int> imgs);
    Permutation() = default;

    int n() const { return static_cast<int>(images.size()); }
    int operator()(int i) const { return images[static_cast<std::size_t>(i) - 1]; }

    bool operator==(const Permutation& other) const { return images == other.images; }
    bool operator<(const Permutation& other) const { return images < other.images; }
};

/// j_i: least positive integer congruent to p*i mod d; a bijection of
/// {1..d-1} since gcd(p, d) = 1.
int residue_j(const StratumParams& params, int i);

/// B_n = { 1 <= i <= n : j_i <= n }.
std::set<int> b_set(const StratumParams& params, int n);

/// Y_n by the closed form sum_{k<=n} ceil(pk/d) - #B_n, with Y_0 = 0.
long long y_n(const StratumParams& params, int n);

/// Y_n by minimizing sum_k ceil((pk - sigma(k))/d) over all of S_n.
/// Test oracle; refuses n above the cap (default 8, i.e. 8! permutations).
long long y_n_bruteforce(const StratumParams& params, int n, int cap = 8);

/// Sigma_n: permutations with sigma(i) >= j_i for every i in B_n. These are
/// exactly the minimizers of the Y_n sum; returned in lexicographic order.
std::vector<Permutation> sigma_set(const StratumParams& params, int n);

/// Sigma_n^+: members of Sigma_n with sigma(i) = j_i for every i in B_n.
std::vector<Permutation> sigma_plus(const StratumParams& params, int n);

/// The distinguished member sigma_0 of Sigma_n^+: j_i on B_n, then greedily
/// the unassigned i outside B_n with j_i maximal gets the least remaining
/// image. Deterministic and unique.
Permutation sigma_zero(const StratumParams& params, int n);

}  // namespace nstrat
