#include "nstrat/cyclotomic.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

namespace nstrat {

CycInt::CycInt(long long p) : p_(p), coords_(static_cast<std::size_t>(p - 1)) {
    if (p < 3 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("CycInt: p must be an odd prime");
}

CycInt CycInt::from_coords(long long p, std::vector<BigInt> coords) {
    CycInt x(p);
    if (coords.size() != static_cast<std::size_t>(p - 1))
        throw std::invalid_argument("CycInt: expected p-1 coordinates");
    x.coords_ = std::move(coords);
    return x;
}

CycInt CycInt::integer(long long p, const BigInt& n) {
    CycInt x(p);
    x.coords_[0] = n;
    return x;
}

CycInt CycInt::zeta_pow(long long p, long long t) {
    CycInt x(p);
    long long e = t % p;
    if (e < 0) e += p;
    if (e == p - 1) {
        for (auto& c : x.coords_) c = -1;
    } else {
        x.coords_[static_cast<std::size_t>(e)] = 1;
    }
    return x;
}

CycInt CycInt::from_residue_counts(long long p, const std::vector<std::uint64_t>& counts) {
    if (counts.size() != static_cast<std::size_t>(p))
        throw std::invalid_argument("CycInt: expected p residue counts");
    CycInt x(p);
    BigInt top = counts[static_cast<std::size_t>(p - 1)];
    for (long long t = 0; t < p - 1; ++t)
        x.coords_[static_cast<std::size_t>(t)] = BigInt(counts[static_cast<std::size_t>(t)]) - top;
    return x;
}

bool CycInt::is_zero() const {
    return std::all_of(coords_.begin(), coords_.end(), [](const BigInt& c) { return c == 0; });
}

CycInt CycInt::operator+(const CycInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("CycInt: modulus mismatch");
    CycInt r(p_);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = coords_[i] + o.coords_[i];
    return r;
}

CycInt CycInt::operator-(const CycInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("CycInt: modulus mismatch");
    CycInt r(p_);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = coords_[i] - o.coords_[i];
    return r;
}

CycInt CycInt::operator-() const {
    CycInt r(p_);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = -coords_[i];
    return r;
}

CycInt CycInt::operator*(const CycInt& o) const {
    if (p_ != o.p_) throw std::invalid_argument("CycInt: modulus mismatch");
    const std::size_t n = coords_.size();  // p - 1
    std::vector<BigInt> conv(2 * n - 1);
    for (std::size_t i = 0; i < n; ++i) {
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (o.coords_[j] == 0) continue;
            conv[i + j] += coords_[i] * o.coords_[j];
        }
    }
    CycInt r(p_);
    for (std::size_t e = 0; e < n; ++e) r.coords_[e] = conv[e];
    // zeta^{p-1} = -(1 + ... + zeta^{p-2}); zeta^e = zeta^{e-p} for e >= p.
    for (std::size_t e = n; e < conv.size(); ++e) {
        if (conv[e] == 0) continue;
        if (e == n) {
            for (std::size_t i = 0; i < n; ++i) r.coords_[i] -= conv[e];
        } else {
            r.coords_[e - n - 1] += conv[e];
        }
    }
    return r;
}

CycInt CycInt::scaled(const BigInt& c) const {
    CycInt r(p_);
    for (std::size_t i = 0; i < coords_.size(); ++i) r.coords_[i] = coords_[i] * c;
    return r;
}

CycInt CycInt::divided_by(const BigInt& k) const {
    if (k == 0) throw std::invalid_argument("CycInt: division by zero");
    CycInt r(p_);
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        BigInt q, rem;
        divide_qr(coords_[i], k, q, rem);
        if (rem != 0) throw invariant_violation("CycInt: inexact integer division");
        r.coords_[i] = q;
    }
    return r;
}

CycInt CycInt::galois(long long t) const {
    long long e0 = t % p_;
    if (e0 < 0) e0 += p_;
    if (e0 == 0) throw std::invalid_argument("CycInt::galois: t must be prime to p");
    CycInt r(p_);
    for (long long i = 0; i < p_ - 1; ++i) {
        const BigInt& c = coords_[static_cast<std::size_t>(i)];
        if (c == 0) continue;
        long long e = (i * e0) % p_;
        if (e == p_ - 1) {
            for (auto& rc : r.coords_) rc -= c;
        } else {
            r.coords_[static_cast<std::size_t>(e)] += c;
        }
    }
    return r;
}

std::vector<BigInt> CycInt::lambda_coords() const {
    const std::size_t n = coords_.size();
    // zeta^i = (1 + lambda)^i; b_j = sum_{i >= j} C(i, j) c_i.
    std::vector<BigInt> b(n);
    std::vector<BigInt> binom(n, 0);  // row i of Pascal's triangle, prefix
    binom[0] = 1;
    for (std::size_t i = 0; i < n; ++i) {
        if (i > 0)
            for (std::size_t j = i; j > 0; --j) binom[j] += binom[j - 1];
        if (coords_[i] == 0) continue;
        for (std::size_t j = 0; j <= i; ++j) b[j] += binom[j] * coords_[i];
    }
    return b;
}

std::optional<long long> CycInt::pi_valuation() const {
    std::vector<BigInt> b = lambda_coords();
    std::optional<long long> best;
    for (std::size_t j = 0; j < b.size(); ++j) {
        if (b[j] == 0) continue;
        long long v = (p_ - 1) * vp_of(b[j], BigInt(p_)) + static_cast<long long>(j);
        if (!best || v < *best) best = v;
    }
    return best;
}

ExtensionTower::ExtensionTower(Field::Ptr base, std::uint64_t seed, std::string cache_dir)
    : base_(std::move(base)), seed_(seed), cache_dir_(std::move(cache_dir)) {
    if (!base_) throw std::invalid_argument("ExtensionTower: null base");
}

namespace {

std::string modulus_cache_path(const std::string& dir, const Field& base, int r, std::uint64_t seed) {
    std::ostringstream os;
    os << dir << "/modulus_p" << base.p() << "_base" << base.absolute_degree() << "_r" << r
       << "_seed" << seed << ".txt";
    return os.str();
}

std::optional<std::vector<std::vector<std::uint32_t>>> load_modulus(const std::string& path,
                                                                    const Field& base, int r) {
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::vector<std::vector<std::uint32_t>> blocks;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::istringstream ls(line);
        std::vector<std::uint32_t> block;
        std::uint32_t v;
        while (ls >> v) block.push_back(v);
        blocks.push_back(std::move(block));
    }
    if (blocks.size() != static_cast<std::size_t>(r)) return std::nullopt;
    for (const auto& b : blocks)
        if (b.size() != static_cast<std::size_t>(base.absolute_degree())) return std::nullopt;
    return blocks;
}

void store_modulus(const std::string& path, const std::vector<std::vector<std::uint32_t>>& blocks) {
    std::ofstream out(path);
    if (!out) return;  // cache is an optimization; failures to write are not fatal
    for (const auto& b : blocks) {
        for (std::size_t i = 0; i < b.size(); ++i) out << (i ? " " : "") << b[i];
        out << "\n";
    }
}

}  // namespace

Field::Ptr ExtensionTower::level(int r) const {
    if (r < 1) throw std::invalid_argument("ExtensionTower: r must be >= 1");
    if (r == 1) return base_;
    std::lock_guard<std::mutex> lock(mu_);
    auto it = levels_.find(r);
    if (it != levels_.end()) return it->second;

    Field::Ptr f;
    if (!cache_dir_.empty()) {
        std::string path = modulus_cache_path(cache_dir_, *base_, r, seed_);
        if (auto blocks = load_modulus(path, *base_, r)) {
            f = Field::extend_with_modulus(base_, std::move(*blocks));
        } else {
            f = Field::extend(base_, r, seed_ + static_cast<std::uint64_t>(r));
            store_modulus(path, f->modulus());
        }
    } else {
        f = Field::extend(base_, r, seed_ + static_cast<std::uint64_t>(r));
    }
    levels_.emplace(r, f);
    return f;
}

namespace {

void sum_range(const Field& ext, const std::vector<std::uint32_t>& coeffs_flat, int deg,
               std::uint64_t lo, std::uint64_t hi, std::vector<std::uint64_t>& hist) {
    const int s = ext.absolute_degree();
    std::vector<std::uint32_t> x(static_cast<std::size_t>(s));
    std::vector<std::uint32_t> acc(static_cast<std::size_t>(s));
    const std::uint32_t* cs = coeffs_flat.data();
    for (std::uint64_t idx = lo; idx < hi; ++idx) {
        ext.element_coords(idx, x.data());
        std::copy(cs + deg * s, cs + (deg + 1) * s, acc.begin());
        for (int k = deg - 1; k >= 0; --k) {
            ext.mul(acc.data(), x.data(), acc.data());
            ext.add(acc.data(), cs + k * s, acc.data());
        }
        ++hist[ext.trace(acc.data())];
    }
}

}  // namespace

CycInt exp_sum(const FqPoly& f, const Field::Ptr& ext, std::uint64_t enum_cap, int threads) {
    if (!ext) throw std::invalid_argument("exp_sum: null field");
    if (f.degree() < 0) throw std::invalid_argument("exp_sum: empty polynomial");
    const long long p = ext->p();
    if (ext->cardinality() > BigInt(enum_cap))
        throw cap_exceeded("exp_sum: field too large to enumerate under the cap");
    const std::uint64_t size = ext->cardinality_u64();
    const int deg = f.degree();
    const int s = ext->absolute_degree();

    std::vector<std::uint32_t> coeffs_flat(static_cast<std::size_t>((deg + 1) * s));
    for (int k = 0; k <= deg; ++k) {
        FieldElement e = embed(f.coeffs[static_cast<std::size_t>(k)], ext);
        std::copy(e.coords().begin(), e.coords().end(), coeffs_flat.begin() + k * s);
    }

    std::vector<std::uint64_t> hist(static_cast<std::size_t>(p), 0);
    int nt = std::max(1, threads);
    if (nt == 1 || size < 4096) {
        sum_range(*ext, coeffs_flat, deg, 0, size, hist);
    } else {
        std::vector<std::vector<std::uint64_t>> hists(static_cast<std::size_t>(nt),
                                                      std::vector<std::uint64_t>(static_cast<std::size_t>(p), 0));
        std::vector<std::thread> workers;
        for (int t = 0; t < nt; ++t) {
            std::uint64_t lo = size / static_cast<std::uint64_t>(nt) * static_cast<std::uint64_t>(t);
            std::uint64_t hi = (t == nt - 1) ? size : size / static_cast<std::uint64_t>(nt) * static_cast<std::uint64_t>(t + 1);
            workers.emplace_back([&, lo, hi, t] { sum_range(*ext, coeffs_flat, deg, lo, hi, hists[static_cast<std::size_t>(t)]); });
        }
        for (auto& w : workers) w.join();
        for (const auto& h : hists)
            for (std::size_t i = 0; i < hist.size(); ++i) hist[i] += h[i];
    }
    return CycInt::from_residue_counts(p, hist);
}

CycInt exp_sum(const FqPoly& f, const ExtensionTower& tower, int r, std::uint64_t enum_cap, int threads) {
    if (tower.base().get() != f.field.get())
        throw std::invalid_argument("exp_sum: tower base differs from the coefficient field");
    return exp_sum(f, tower.level(r), enum_cap, threads);
}

LPolynomial l_function_from_sums(long long p, long long m, const std::vector<CycInt>& sums) {
    LPolynomial l;
    l.p = p;
    l.m = m;
    l.d = static_cast<long long>(sums.size()) + 1;
    l.coeffs.reserve(static_cast<std::size_t>(l.d));
    l.coeffs.push_back(CycInt::integer(p, 1));
    for (std::size_t k = 1; k < static_cast<std::size_t>(l.d); ++k) {
        CycInt acc(p);
        for (std::size_t i = 1; i <= k; ++i) acc = acc + sums[i - 1] * l.coeffs[k - i];
        l.coeffs.push_back(acc.divided_by(BigInt(k)));
    }
    return l;
}

LPolynomial l_function(const FqPoly& f, const ExtensionTower& tower, int d,
                       std::uint64_t enum_cap, int threads) {
    if (f.degree() != d) throw std::invalid_argument("l_function: degree mismatch");
    const long long p = f.field->p();
    if (d < 1 || d % p == 0) throw std::invalid_argument("l_function: requires deg f >= 1 prime to p");
    std::vector<CycInt> sums;
    for (int r = 1; r <= d - 1; ++r) sums.push_back(exp_sum(f, tower, r, enum_cap, threads));
    return l_function_from_sums(p, f.field->absolute_degree(), sums);
}

std::vector<CycInt> power_sums_from_l(const LPolynomial& l, int count) {
    std::vector<CycInt> sums;
    for (int k = 1; k <= count; ++k) {
        CycInt acc = l.coeffs.at(static_cast<std::size_t>(k)).scaled(BigInt(k));
        for (int i = 1; i < k; ++i)
            acc = acc - sums[static_cast<std::size_t>(i - 1)] * l.coeffs[static_cast<std::size_t>(k - i)];
        sums.push_back(acc);
    }
    return sums;
}

NewtonPolygon newton_polygon_of_l(const LPolynomial& l) {
    std::vector<PolygonPoint> pts;
    const Rational unit = Rational(1) / Rational((l.p - 1) * l.m);
    for (std::size_t n = 0; n < l.coeffs.size(); ++n) {
        std::optional<long long> v = l.coeffs[n].pi_valuation();
        PolygonPoint pt;
        pt.x = static_cast<long long>(n);
        if (v) pt.y = Rational(*v) * unit;
        pts.push_back(std::move(pt));
    }
    return lower_convex_hull(pts);
}

}  // namespace nstrat
