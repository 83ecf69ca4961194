#include "nstrat/fp_multipoly.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace nstrat {

bool GradedLexLess::operator()(const std::vector<std::uint32_t>& a,
                               const std::vector<std::uint32_t>& b) const {
    long long da = std::accumulate(a.begin(), a.end(), 0ll);
    long long db = std::accumulate(b.begin(), b.end(), 0ll);
    if (da != db) return da < db;
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i)
        if (a[i] != b[i]) return a[i] > b[i];
    return false;
}

FpMultiPoly::FpMultiPoly(long long p, int nvars) : p_(p), nvars_(nvars) {
    if (p < 2) throw std::invalid_argument("FpMultiPoly: modulus must be >= 2");
    if (nvars < 0) throw std::invalid_argument("FpMultiPoly: negative variable count");
}

FpMultiPoly FpMultiPoly::constant(long long p, int nvars, long long c) {
    FpMultiPoly f(p, nvars);
    f.add_term(Exponents(static_cast<std::size_t>(nvars), 0), c);
    return f;
}

FpMultiPoly FpMultiPoly::variable(long long p, int nvars, int index) {
    if (index < 1 || index > nvars) throw std::invalid_argument("FpMultiPoly: variable index out of range");
    FpMultiPoly f(p, nvars);
    Exponents e(static_cast<std::size_t>(nvars), 0);
    e[static_cast<std::size_t>(index) - 1] = 1;
    f.add_term(e, 1);
    return f;
}

std::optional<long long> FpMultiPoly::total_degree() const {
    if (terms_.empty()) return std::nullopt;
    // The term map is graded, so the last term has maximal total degree.
    const Exponents& e = terms_.rbegin()->first;
    return std::accumulate(e.begin(), e.end(), 0ll);
}

bool FpMultiPoly::is_homogeneous() const {
    if (terms_.empty()) return true;
    long long d0 = std::accumulate(terms_.begin()->first.begin(), terms_.begin()->first.end(), 0ll);
    long long d1 = std::accumulate(terms_.rbegin()->first.begin(), terms_.rbegin()->first.end(), 0ll);
    return d0 == d1;
}

std::uint32_t FpMultiPoly::coefficient(const Exponents& e) const {
    auto it = terms_.find(e);
    return it == terms_.end() ? 0u : it->second;
}

void FpMultiPoly::add_term(const Exponents& e, long long c) {
    if (e.size() != static_cast<std::size_t>(nvars_))
        throw std::invalid_argument("FpMultiPoly: exponent vector length mismatch");
    long long v = c % p_;
    if (v < 0) v += p_;
    if (v == 0) return;
    auto [it, inserted] = terms_.emplace(e, static_cast<std::uint32_t>(v));
    if (!inserted) {
        std::uint64_t s = it->second + static_cast<std::uint64_t>(v);
        if (s >= static_cast<std::uint64_t>(p_)) s -= static_cast<std::uint64_t>(p_);
        if (s == 0)
            terms_.erase(it);
        else
            it->second = static_cast<std::uint32_t>(s);
    }
}

void FpMultiPoly::require_compatible(const FpMultiPoly& o) const {
    if (p_ != o.p_ || nvars_ != o.nvars_)
        throw std::invalid_argument("FpMultiPoly: modulus or variable count mismatch");
}

FpMultiPoly FpMultiPoly::operator+(const FpMultiPoly& o) const {
    require_compatible(o);
    FpMultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, c);
    return r;
}

FpMultiPoly FpMultiPoly::operator-(const FpMultiPoly& o) const {
    require_compatible(o);
    FpMultiPoly r = *this;
    for (const auto& [e, c] : o.terms_) r.add_term(e, p_ - c);
    return r;
}

FpMultiPoly FpMultiPoly::operator*(const FpMultiPoly& o) const {
    require_compatible(o);
    FpMultiPoly r(p_, nvars_);
    Exponents e(static_cast<std::size_t>(nvars_));
    for (const auto& [ea, ca] : terms_) {
        for (const auto& [eb, cb] : o.terms_) {
            for (std::size_t i = 0; i < e.size(); ++i) e[i] = ea[i] + eb[i];
            r.add_term(e, static_cast<long long>(static_cast<std::uint64_t>(ca) * cb % static_cast<std::uint64_t>(p_)));
        }
    }
    return r;
}

FpMultiPoly FpMultiPoly::scaled(long long c) const {
    FpMultiPoly r(p_, nvars_);
    long long v = c % p_;
    if (v < 0) v += p_;
    for (const auto& [e, coeff] : terms_)
        r.add_term(e, static_cast<long long>(static_cast<std::uint64_t>(coeff) * static_cast<std::uint64_t>(v) %
                                             static_cast<std::uint64_t>(p_)));
    return r;
}

bool FpMultiPoly::operator==(const FpMultiPoly& o) const {
    return p_ == o.p_ && nvars_ == o.nvars_ && terms_ == o.terms_;
}

FpMultiPoly FpMultiPoly::substitute_last(long long value) const {
    if (nvars_ == 0) throw std::invalid_argument("FpMultiPoly: no variable left to substitute");
    long long v = value % p_;
    if (v < 0) v += p_;
    FpMultiPoly r(p_, nvars_ - 1);
    for (const auto& [e, c] : terms_) {
        std::uint32_t k = e.back();
        std::uint64_t factor = powmod_u64(static_cast<std::uint64_t>(v), k, static_cast<std::uint64_t>(p_));
        if (factor == 0) continue;
        Exponents reduced(e.begin(), e.end() - 1);
        r.add_term(reduced, static_cast<long long>(factor * c % static_cast<std::uint64_t>(p_)));
    }
    return r;
}

std::string FpMultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (const auto& [e, c] : terms_) {
        if (!first) os << "+";
        first = false;
        os << c;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            os << "*X" << (i + 1);
            if (e[i] > 1) os << "^" << e[i];
        }
    }
    return os.str();
}

FieldElement FpMultiPoly::evaluate(const Field::Ptr& field, const std::vector<FieldElement>& point) const {
    if (!field) throw std::invalid_argument("FpMultiPoly::evaluate: null field");
    if (field->p() != p_)
        throw std::invalid_argument("FpMultiPoly::evaluate: field characteristic mismatch");
    if (point.size() != static_cast<std::size_t>(nvars_))
        throw std::invalid_argument("FpMultiPoly::evaluate: point length mismatch");
    for (const FieldElement& x : point)
        if (x.field().get() != field.get())
            throw std::invalid_argument("FpMultiPoly::evaluate: point not in the given field");

    FieldElement acc = field->zero();
    for (const auto& [e, c] : terms_) {
        FieldElement term = field->from_residue(static_cast<long long>(c));
        for (std::size_t i = 0; i < e.size(); ++i)
            if (e[i] != 0) term = term * point[i].pow(BigInt(e[i]));
        acc = acc + term;
    }
    return acc;
}

FpMultiPoly power_coefficient(const StratumParams& params, long long k, long long n) {
    if (k < 0 || n < 0) throw std::invalid_argument("power_coefficient: k and n must be nonnegative");
    const long long p = params.p();
    const int d = static_cast<int>(params.d());
    if (n > k * d || n < k) return FpMultiPoly(p, d);

    // Truncated series in the auxiliary degree variable T: slot t holds the
    // coefficient of T^t. Degrees that can no longer reach n are dropped.
    std::vector<FpMultiPoly> series(static_cast<std::size_t>(n) + 1, FpMultiPoly(p, d));
    series[0] = FpMultiPoly::constant(p, d, 1);
    for (long long step = 0; step < k; ++step) {
        std::vector<FpMultiPoly> next(static_cast<std::size_t>(n) + 1, FpMultiPoly(p, d));
        long long remaining = k - step - 1;
        for (long long t = n; t >= 0; --t) {
            if (t + remaining * d < n) break;
            FpMultiPoly acc(p, d);
            for (int i = 1; i <= d && i <= t; ++i) {
                const FpMultiPoly& prev = series[static_cast<std::size_t>(t - i)];
                if (prev.is_zero()) continue;
                for (const auto& [e, c] : prev.terms()) {
                    FpMultiPoly::Exponents shifted = e;
                    ++shifted[static_cast<std::size_t>(i) - 1];
                    acc.add_term(shifted, c);
                }
            }
            next[static_cast<std::size_t>(t)] = std::move(acc);
        }
        series = std::move(next);
    }
    return series[static_cast<std::size_t>(n)];
}

FpMultiPoly hasse_P_n(const StratumParams& params, int n) {
    const long long p = params.p();
    const long long d = params.d();
    if (n < 1 || n > d - 1) throw std::invalid_argument("hasse_P_n: n out of range 1..d-1");

    std::map<std::pair<int, int>, FpMultiPoly> factor_cache;
    auto factor = [&](int i, int j) -> const FpMultiPoly& {
        auto it = factor_cache.find({i, j});
        if (it == factor_cache.end()) {
            long long m = p * i - j;
            it = factor_cache.emplace(std::make_pair(i, j), power_coefficient(params, ceil_div(m, d), m)).first;
        }
        return it->second;
    };

    FpMultiPoly result(p, static_cast<int>(d));
    for (const Permutation& sigma : sigma_set(params, n)) {
        FpMultiPoly term = FpMultiPoly::constant(p, static_cast<int>(d), sigma.sign);
        for (int i = 1; i <= n; ++i) term = term * factor(i, sigma(i));
        result = result + term;
    }
    return result;
}

FpMultiPoly hasse_product(const StratumParams& params) {
    FpMultiPoly prod = FpMultiPoly::constant(params.p(), static_cast<int>(params.d()), 1);
    for (int i = 1; i <= params.d() / 2; ++i) prod = prod * hasse_P_n(params, i);
    return prod;
}

FpMultiPoly hasse_G(const StratumParams& params) {
    return hasse_product(params).substitute_last(1);
}

FpMultiPoly hasse_H(const StratumParams& params) {
    return hasse_product(params).substitute_last(1).substitute_last(0);
}

std::pair<FpMultiPoly::Exponents, std::uint32_t> sigma_zero_witness(const StratumParams& params, int n) {
    const long long p = params.p();
    const long long d = params.d();
    Permutation s0 = sigma_zero(params, n);
    std::set<int> b = b_set(params, n);

    FpMultiPoly::Exponents e(static_cast<std::size_t>(d), 0);
    long long xd_exp = 0;
    for (int i = 1; i <= n; ++i) xd_exp += floor_div(p * i, d);
    e[static_cast<std::size_t>(d) - 1] = static_cast<std::uint32_t>(xd_exp);

    std::uint64_t coeff = static_cast<std::uint64_t>(s0.sign == 1 ? 1 : p - 1);
    for (int i = 1; i <= n; ++i) {
        if (b.count(i)) continue;
        int var = residue_j(params, i) - s0(i);
        ++e[static_cast<std::size_t>(var) - 1];
        long long c = ceil_div(p * i - s0(i), d) % p;
        coeff = coeff * static_cast<std::uint64_t>(c) % static_cast<std::uint64_t>(p);
    }
    return {e, static_cast<std::uint32_t>(coeff)};
}

}  // namespace nstrat
