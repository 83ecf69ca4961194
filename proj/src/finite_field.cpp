#include "nstrat/finite_field.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>

namespace nstrat {

namespace {

constexpr int kMaxAbsoluteDegree = 32;
constexpr long long kMaxFieldPrime = 1ll << 27;  // keeps u64 convolution accumulators exact

using Block = std::vector<std::uint32_t>;
// Dense polynomial over a base field; coefficient i is a flat base element.
using BPoly = std::vector<Block>;

Block zero_block(const Field& base) {
    return Block(static_cast<std::size_t>(base.absolute_degree()), 0);
}

bool poly_is_zero(const Field& base, const BPoly& a) {
    for (const Block& c : a)
        if (!base.is_zero(c.data())) return false;
    return true;
}

int poly_degree(const Field& base, const BPoly& a) {
    for (int i = static_cast<int>(a.size()) - 1; i >= 0; --i)
        if (!base.is_zero(a[static_cast<std::size_t>(i)].data())) return i;
    return -1;
}

// a mod b for nonzero b, long division over the base field.
BPoly poly_mod(const Field& base, BPoly a, const BPoly& b) {
    int db = poly_degree(base, b);
    if (db < 0) throw std::invalid_argument("poly_mod: division by zero polynomial");
    Block lead_inv = zero_block(base);
    base.inv(b[static_cast<std::size_t>(db)].data(), lead_inv.data());
    Block factor = zero_block(base), tmp = zero_block(base);
    for (int da = poly_degree(base, a); da >= db; da = poly_degree(base, a)) {
        base.mul(a[static_cast<std::size_t>(da)].data(), lead_inv.data(), factor.data());
        int shift = da - db;
        for (int j = 0; j <= db; ++j) {
            base.mul(factor.data(), b[static_cast<std::size_t>(j)].data(), tmp.data());
            base.sub(a[static_cast<std::size_t>(j + shift)].data(), tmp.data(),
                     a[static_cast<std::size_t>(j + shift)].data());
        }
    }
    return a;
}

// Product reduced by the monic modulus with given lower coefficients
// (degree r); inputs have degree < r, output is dense of size r.
BPoly poly_mulmod(const Field& base, const BPoly& a, const BPoly& b,
                  const BPoly& mod_lower) {
    const int r = static_cast<int>(mod_lower.size());
    BPoly conv(static_cast<std::size_t>(2 * r - 1), zero_block(base));
    Block tmp = zero_block(base);
    for (int i = 0; i < r; ++i) {
        if (base.is_zero(a[static_cast<std::size_t>(i)].data())) continue;
        for (int j = 0; j < r; ++j) {
            base.mul(a[static_cast<std::size_t>(i)].data(), b[static_cast<std::size_t>(j)].data(), tmp.data());
            base.add(conv[static_cast<std::size_t>(i + j)].data(), tmp.data(),
                     conv[static_cast<std::size_t>(i + j)].data());
        }
    }
    for (int k = 2 * r - 2; k >= r; --k) {
        Block c = conv[static_cast<std::size_t>(k)];
        if (base.is_zero(c.data())) continue;
        for (int j = 0; j < r; ++j) {
            base.mul(c.data(), mod_lower[static_cast<std::size_t>(j)].data(), tmp.data());
            base.sub(conv[static_cast<std::size_t>(k - r + j)].data(), tmp.data(),
                     conv[static_cast<std::size_t>(k - r + j)].data());
        }
    }
    conv.resize(static_cast<std::size_t>(r));
    return conv;
}

BPoly poly_powmod(const Field& base, const BPoly& a, const BigInt& e, const BPoly& mod_lower) {
    const int r = static_cast<int>(mod_lower.size());
    BPoly result(static_cast<std::size_t>(r), zero_block(base));
    result[0][0] = 1;
    if (e == 0) return result;
    BPoly acc = a;
    const unsigned bits = msb(e);
    for (int i = static_cast<int>(bits); i >= 0; --i) {
        result = poly_mulmod(base, result, result, mod_lower);
        if (bit_test(e, static_cast<unsigned>(i)))
            result = poly_mulmod(base, result, acc, mod_lower);
    }
    return result;
}

BPoly poly_gcd(const Field& base, BPoly a, BPoly b) {
    while (!poly_is_zero(base, b)) {
        BPoly rem = poly_mod(base, a, b);
        a = std::move(b);
        b = std::move(rem);
    }
    return a;
}

std::vector<int> prime_factors(int n) {
    std::vector<int> fs;
    for (int q = 2; q * q <= n; ++q) {
        if (n % q == 0) {
            fs.push_back(q);
            while (n % q == 0) n /= q;
        }
    }
    if (n > 1) fs.push_back(n);
    return fs;
}

// Deterministic irreducibility test for a monic degree-r polynomial given by
// its lower coefficients: x^{Q^r} = x mod f, and x^{Q^{r/l}} - x coprime to f
// for every prime l | r (Q the base cardinality).
bool is_irreducible(const Field& base, const BPoly& mod_lower) {
    const int r = static_cast<int>(mod_lower.size());
    if (r == 1) return true;
    const BigInt Q = base.cardinality();

    BPoly x(static_cast<std::size_t>(r), zero_block(base));
    x[1][0] = 1;

    std::vector<BPoly> frob(static_cast<std::size_t>(r) + 1);
    frob[1] = poly_powmod(base, x, Q, mod_lower);
    for (int j = 2; j <= r; ++j)
        frob[static_cast<std::size_t>(j)] =
            poly_powmod(base, frob[static_cast<std::size_t>(j) - 1], Q, mod_lower);

    if (poly_degree(base, frob[static_cast<std::size_t>(r)]) != 1 ||
        !std::equal(frob[static_cast<std::size_t>(r)].begin(), frob[static_cast<std::size_t>(r)].end(),
                    x.begin()))
        return false;

    BPoly full = mod_lower;
    full.push_back(zero_block(base));
    full.back()[0] = 1;

    for (int l : prime_factors(r)) {
        BPoly diff = frob[static_cast<std::size_t>(r / l)];
        base.sub(diff[1].data(), x[1].data(), diff[1].data());
        BPoly g = poly_gcd(base, full, diff);
        if (poly_degree(base, g) != 0) return false;
    }
    return true;
}

}  // namespace

Field::Ptr Field::prime_field(long long p) {
    if (p < 2 || !is_prime_u64(static_cast<std::uint64_t>(p)))
        throw std::invalid_argument("Field: p must be prime");
    if (p >= kMaxFieldPrime)
        throw std::invalid_argument("Field: prime too large for this representation");
    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = p;
    f->rel_deg_ = 1;
    f->abs_deg_ = 1;
    f->depth_ = 0;
    f->card_ = p;
    f->finish_setup();
    return f;
}

Field::Ptr Field::build(long long p, int s, std::uint64_t seed) {
    Ptr fp = prime_field(p);
    if (s < 1) throw std::invalid_argument("Field::build: s must be >= 1");
    if (s == 1) return fp;
    return extend(fp, s, seed);
}

Field::Ptr Field::extend(Ptr base, int r, std::uint64_t seed) {
    if (!base) throw std::invalid_argument("Field::extend: null base");
    if (r < 1) throw std::invalid_argument("Field::extend: r must be >= 1");
    if (r == 1) return base;
    if (base->abs_deg_ * r > kMaxAbsoluteDegree)
        throw std::invalid_argument("Field::extend: absolute degree too large");

    Rng rng(seed);
    const long long p = base->p_;
    const int b_abs = base->abs_deg_;
    BPoly lower(static_cast<std::size_t>(r), Block(static_cast<std::size_t>(b_abs), 0));
    for (;;) {
        for (auto& block : lower)
            for (auto& c : block) c = static_cast<std::uint32_t>(rng.below(static_cast<std::uint64_t>(p)));
        if (is_irreducible(*base, lower)) break;
    }
    return extend_with_modulus(std::move(base), std::move(lower));
}

Field::Ptr Field::extend_with_modulus(Ptr base, std::vector<std::vector<std::uint32_t>> modulus_lower) {
    if (!base) throw std::invalid_argument("Field: null base");
    const int r = static_cast<int>(modulus_lower.size());
    if (r < 2) throw std::invalid_argument("Field: modulus degree must be >= 2");
    if (base->abs_deg_ * r > kMaxAbsoluteDegree)
        throw std::invalid_argument("Field: absolute degree too large");
    for (const auto& block : modulus_lower) {
        if (block.size() != static_cast<std::size_t>(base->abs_deg_))
            throw std::invalid_argument("Field: modulus coefficient length mismatch");
        for (std::uint32_t c : block)
            if (c >= static_cast<std::uint32_t>(base->p_))
                throw std::invalid_argument("Field: modulus coefficient out of range");
    }
    if (!is_irreducible(*base, modulus_lower))
        throw std::invalid_argument("Field: supplied modulus is reducible");

    auto f = std::shared_ptr<Field>(new Field());
    f->p_ = base->p_;
    f->rel_deg_ = r;
    f->abs_deg_ = base->abs_deg_ * r;
    f->depth_ = base->depth_ + 1;
    f->card_ = boost::multiprecision::pow(BigInt(f->p_), static_cast<unsigned>(f->abs_deg_));
    f->base_ = std::move(base);
    f->modulus_ = std::move(modulus_lower);
    f->finish_setup();
    return f;
}

void Field::finish_setup() {
    card_fits_ = card_ <= BigInt(~std::uint64_t{0});
    trace_basis_.assign(static_cast<std::size_t>(abs_deg_), 0);
    std::vector<std::uint32_t> basis(static_cast<std::size_t>(abs_deg_), 0);
    std::vector<std::uint32_t> cur(static_cast<std::size_t>(abs_deg_), 0);
    std::vector<std::uint32_t> acc(static_cast<std::size_t>(abs_deg_), 0);
    for (int j = 0; j < abs_deg_; ++j) {
        std::fill(basis.begin(), basis.end(), 0u);
        basis[static_cast<std::size_t>(j)] = 1;
        acc = basis;
        cur = basis;
        for (int i = 1; i < abs_deg_; ++i) {
            pow(cur.data(), BigInt(p_), cur.data());
            add(acc.data(), cur.data(), acc.data());
        }
        for (int k = 1; k < abs_deg_; ++k)
            if (acc[static_cast<std::size_t>(k)] != 0)
                throw invariant_violation("Field: basis trace left the prime subfield");
        trace_basis_[static_cast<std::size_t>(j)] = acc[0];
    }
}

std::uint64_t Field::cardinality_u64() const {
    if (!card_fits_) throw cap_exceeded("Field: cardinality exceeds 64 bits");
    return static_cast<std::uint64_t>(card_);
}

std::string Field::describe_modulus() const {
    if (!base_) return "GF(" + std::to_string(p_) + ")";
    std::ostringstream os;
    os << base_->describe_modulus() << "[t" << depth_ << "]/(t" << depth_ << "^" << rel_deg_;
    for (int j = rel_deg_ - 1; j >= 0; --j) {
        const Block& c = modulus_[static_cast<std::size_t>(j)];
        if (base_->is_zero(c.data())) continue;
        os << " + ";
        FieldElement ce(base_, c);
        bool composite_coeff = base_->absolute_degree() > 1;
        os << (composite_coeff ? "(" : "") << ce.to_string() << (composite_coeff ? ")" : "");
        if (j > 0) {
            os << "*t" << depth_;
            if (j > 1) os << "^" << j;
        }
    }
    os << ")";
    return os.str();
}

void Field::add(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const {
    const std::uint32_t p = static_cast<std::uint32_t>(p_);
    for (int i = 0; i < abs_deg_; ++i) {
        std::uint32_t s = a[i] + b[i];
        out[i] = s >= p ? s - p : s;
    }
}

void Field::sub(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const {
    const std::uint32_t p = static_cast<std::uint32_t>(p_);
    for (int i = 0; i < abs_deg_; ++i)
        out[i] = a[i] >= b[i] ? a[i] - b[i] : a[i] + p - b[i];
}

void Field::neg(const std::uint32_t* a, std::uint32_t* out) const {
    const std::uint32_t p = static_cast<std::uint32_t>(p_);
    for (int i = 0; i < abs_deg_; ++i) out[i] = a[i] == 0 ? 0 : p - a[i];
}

bool Field::is_zero(const std::uint32_t* a) const {
    for (int i = 0; i < abs_deg_; ++i)
        if (a[i] != 0) return false;
    return true;
}

std::uint32_t Field::trace(const std::uint32_t* a) const {
    std::uint64_t acc = 0;
    for (int i = 0; i < abs_deg_; ++i)
        acc += static_cast<std::uint64_t>(a[i]) * trace_basis_[static_cast<std::size_t>(i)];
    return static_cast<std::uint32_t>(acc % static_cast<std::uint64_t>(p_));
}

void Field::mul(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const {
    const std::uint64_t p = static_cast<std::uint64_t>(p_);
    if (!base_) {
        out[0] = static_cast<std::uint32_t>(static_cast<std::uint64_t>(a[0]) * b[0] % p);
        return;
    }
    const int r = rel_deg_;
    if (base_->depth_ == 0 && !base_->base_) {
        // Extension directly over the prime field: one u64 convolution.
        static thread_local std::vector<std::uint64_t> conv;
        conv.assign(static_cast<std::size_t>(2 * r - 1), 0);
        for (int i = 0; i < r; ++i) {
            if (a[i] == 0) continue;
            const std::uint64_t ai = a[i];
            for (int j = 0; j < r; ++j) conv[static_cast<std::size_t>(i + j)] += ai * b[j];
        }
        for (int k = 2 * r - 2; k >= r; --k) {
            std::uint64_t c = conv[static_cast<std::size_t>(k)] % p;
            if (c == 0) continue;
            for (int j = 0; j < r; ++j) {
                std::uint64_t m = modulus_[static_cast<std::size_t>(j)][0];
                if (m) conv[static_cast<std::size_t>(k - r + j)] += c * (p - m);
            }
        }
        for (int j = 0; j < r; ++j) out[j] = static_cast<std::uint32_t>(conv[static_cast<std::size_t>(j)] % p);
        return;
    }

    // General tower step: blockwise convolution over the base field. Scratch
    // is per tower depth so that the recursive base calls use their own.
    const int bs = base_->abs_deg_;
    static thread_local std::vector<std::vector<std::uint32_t>> scratch_by_depth;
    if (scratch_by_depth.size() <= static_cast<std::size_t>(depth_))
        scratch_by_depth.resize(static_cast<std::size_t>(depth_) + 1);
    std::vector<std::uint32_t>& buf = scratch_by_depth[static_cast<std::size_t>(depth_)];
    buf.assign(static_cast<std::size_t>((2 * r - 1) * bs + 2 * bs), 0);
    std::uint32_t* conv = buf.data();
    std::uint32_t* tmp = buf.data() + (2 * r - 1) * bs;
    std::uint32_t* ctop = tmp + bs;

    for (int i = 0; i < r; ++i) {
        if (base_->is_zero(a + i * bs)) continue;
        for (int j = 0; j < r; ++j) {
            base_->mul(a + i * bs, b + j * bs, tmp);
            base_->add(conv + (i + j) * bs, tmp, conv + (i + j) * bs);
        }
    }
    for (int k = 2 * r - 2; k >= r; --k) {
        std::memcpy(ctop, conv + k * bs, sizeof(std::uint32_t) * static_cast<std::size_t>(bs));
        if (base_->is_zero(ctop)) continue;
        for (int j = 0; j < r; ++j) {
            base_->mul(ctop, modulus_[static_cast<std::size_t>(j)].data(), tmp);
            base_->sub(conv + (k - r + j) * bs, tmp, conv + (k - r + j) * bs);
        }
    }
    std::memcpy(out, conv, sizeof(std::uint32_t) * static_cast<std::size_t>(r * bs));
}

void Field::pow(const std::uint32_t* a, const BigInt& e, std::uint32_t* out) const {
    if (e < 0) throw std::invalid_argument("Field::pow: negative exponent");
    std::vector<std::uint32_t> result(static_cast<std::size_t>(abs_deg_), 0);
    result[0] = 1;
    if (e != 0) {
        std::vector<std::uint32_t> acc(a, a + abs_deg_);
        const int bits = static_cast<int>(msb(e));
        for (int i = bits; i >= 0; --i) {
            mul(result.data(), result.data(), result.data());
            if (bit_test(e, static_cast<unsigned>(i))) mul(result.data(), acc.data(), result.data());
        }
    }
    std::copy(result.begin(), result.end(), out);
}

void Field::inv(const std::uint32_t* a, std::uint32_t* out) const {
    if (is_zero(a)) throw std::domain_error("Field::inv: zero element");
    pow(a, card_ - 2, out);
}

void Field::element_coords(std::uint64_t idx, std::uint32_t* out) const {
    const std::uint64_t p = static_cast<std::uint64_t>(p_);
    for (int k = abs_deg_ - 1; k >= 0; --k) {
        out[k] = static_cast<std::uint32_t>(idx % p);
        idx /= p;
    }
}

FieldElement Field::zero() const {
    return FieldElement(shared_from_this(), std::vector<std::uint32_t>(static_cast<std::size_t>(abs_deg_), 0));
}

FieldElement Field::one() const {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(abs_deg_), 0);
    c[0] = 1;
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement Field::from_residue(long long r) const {
    long long v = r % p_;
    if (v < 0) v += p_;
    std::vector<std::uint32_t> c(static_cast<std::size_t>(abs_deg_), 0);
    c[0] = static_cast<std::uint32_t>(v);
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement Field::element(std::vector<std::uint32_t> coords) const {
    return FieldElement(shared_from_this(), std::move(coords));
}

FieldElement Field::element_at(std::uint64_t idx) const {
    std::vector<std::uint32_t> c(static_cast<std::size_t>(abs_deg_), 0);
    element_coords(idx, c.data());
    return FieldElement(shared_from_this(), std::move(c));
}

FieldElement::FieldElement(Field::Ptr field, std::vector<std::uint32_t> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
    if (!field_) throw std::invalid_argument("FieldElement: null field");
    if (coords_.size() != static_cast<std::size_t>(field_->absolute_degree()))
        throw std::invalid_argument("FieldElement: coordinate length mismatch");
    for (std::uint32_t c : coords_)
        if (c >= static_cast<std::uint32_t>(field_->p()))
            throw std::invalid_argument("FieldElement: coordinate out of range");
}

void FieldElement::require_same_field(const FieldElement& o) const {
    if (field_.get() != o.field_.get())
        throw std::invalid_argument("FieldElement: field mismatch");
}

FieldElement FieldElement::operator+(const FieldElement& o) const {
    require_same_field(o);
    std::vector<std::uint32_t> out(coords_.size());
    field_->add(coords_.data(), o.coords_.data(), out.data());
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator-(const FieldElement& o) const {
    require_same_field(o);
    std::vector<std::uint32_t> out(coords_.size());
    field_->sub(coords_.data(), o.coords_.data(), out.data());
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator*(const FieldElement& o) const {
    require_same_field(o);
    std::vector<std::uint32_t> out(coords_.size());
    field_->mul(coords_.data(), o.coords_.data(), out.data());
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::operator-() const {
    std::vector<std::uint32_t> out(coords_.size());
    field_->neg(coords_.data(), out.data());
    return FieldElement(field_, std::move(out));
}

bool FieldElement::operator==(const FieldElement& o) const {
    return field_.get() == o.field_.get() && coords_ == o.coords_;
}

FieldElement FieldElement::pow(const BigInt& e) const {
    std::vector<std::uint32_t> out(coords_.size());
    field_->pow(coords_.data(), e, out.data());
    return FieldElement(field_, std::move(out));
}

FieldElement FieldElement::inverse() const {
    std::vector<std::uint32_t> out(coords_.size());
    field_->inv(coords_.data(), out.data());
    return FieldElement(field_, std::move(out));
}

std::string FieldElement::to_string() const {
    std::string s;
    for (std::size_t i = 0; i < coords_.size(); ++i) {
        if (i) s += ':';
        s += std::to_string(coords_[i]);
    }
    return s;
}

FieldElement embed(const FieldElement& x, const Field::Ptr& target) {
    if (x.field().get() == target.get()) return x;
    if (!target || !target->base())
        throw std::invalid_argument("embed: no embedding recorded into target");
    FieldElement in_base = embed(x, target->base());
    std::vector<std::uint32_t> out(static_cast<std::size_t>(target->absolute_degree()), 0);
    std::copy(in_base.coords().begin(), in_base.coords().end(), out.begin());
    return FieldElement(target, std::move(out));
}

ElementRange::ElementRange(Field::Ptr field, std::uint64_t cap) : field_(std::move(field)) {
    if (!field_) throw std::invalid_argument("ElementRange: null field");
    if (field_->cardinality() > BigInt(cap))
        throw cap_exceeded("ElementRange: field too large to enumerate under the cap");
    size_ = field_->cardinality_u64();
}

FieldElement ElementRange::iterator::operator*() const {
    return field_->element_at(idx_);
}

}  // namespace nstrat
