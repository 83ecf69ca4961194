#pragma once

#include <memory>
#include <string>
#include <vector>

#include "nstrat/common.hpp"

namespace nstrat {

class FieldElement;

/// A finite field F_{p^s}, either the prime field itself or an extension of
/// a base field by a monic irreducible modulus. Extensions of extensions
/// form towers; elements are always stored flat, as vectors of s residues
/// mod p (blocks of base-field coordinates in the power basis of the tower
/// generator). Field handles are immutable and shared.
class Field : public std::enable_shared_from_this<Field> {
public:
    using Ptr = std::shared_ptr<const Field>;

    static Ptr prime_field(long long p);

    /// F_{p^s} with a deterministically chosen modulus: candidates are drawn
    /// from the seeded generator and the first irreducible one wins.
    /// s = 1 yields the prime field.
    static Ptr build(long long p, int s, std::uint64_t seed);

    /// Degree-r tower extension of an existing field, seeded modulus search
    /// over the base. r = 1 returns the base itself.
    static Ptr extend(Ptr base, int r, std::uint64_t seed);

    /// Extension by an explicitly given monic modulus (lower coefficients as
    /// flat base elements); irreducibility is verified and rejected loudly.
    static Ptr extend_with_modulus(Ptr base, std::vector<std::vector<std::uint32_t>> modulus_lower);

    long long p() const { return p_; }
    int absolute_degree() const { return abs_deg_; }
    int degree_over_base() const { return rel_deg_; }
    const Ptr& base() const { return base_; }
    int tower_depth() const { return depth_; }
    const BigInt& cardinality() const { return card_; }
    bool cardinality_fits_u64() const { return card_fits_; }
    std::uint64_t cardinality_u64() const;

    /// Modulus over the base field: rel_deg_ coefficients c_0..c_{r-1}, each
    /// a flat base-field element; the generator t satisfies
    /// t^r = -(c_{r-1} t^{r-1} + ... + c_0). Empty for the prime field.
    const std::vector<std::vector<std::uint32_t>>& modulus() const { return modulus_; }

    /// Modulus chain rendered innermost-first, for reproducibility records.
    std::string describe_modulus() const;

    // Flat-coordinate operations; all spans have length absolute_degree().
    void add(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const;
    void sub(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const;
    void neg(const std::uint32_t* a, std::uint32_t* out) const;
    void mul(const std::uint32_t* a, const std::uint32_t* b, std::uint32_t* out) const;
    void pow(const std::uint32_t* a, const BigInt& e, std::uint32_t* out) const;
    void inv(const std::uint32_t* a, std::uint32_t* out) const;
    bool is_zero(const std::uint32_t* a) const;

    /// Absolute trace down to F_p (an F_p-linear form, cached on the basis).
    std::uint32_t trace(const std::uint32_t* a) const;

    /// Coordinates of the idx-th element in lexicographic order (coordinate 0
    /// most significant).
    void element_coords(std::uint64_t idx, std::uint32_t* out) const;

    FieldElement zero() const;
    FieldElement one() const;
    FieldElement from_residue(long long r) const;
    FieldElement element(std::vector<std::uint32_t> coords) const;
    FieldElement element_at(std::uint64_t idx) const;

private:
    Field() = default;

    void finish_setup();

    long long p_ = 0;
    int rel_deg_ = 1;
    int abs_deg_ = 1;
    int depth_ = 0;
    bool card_fits_ = false;
    BigInt card_;
    Ptr base_;
    std::vector<std::vector<std::uint32_t>> modulus_;
    std::vector<std::uint32_t> trace_basis_;
};

/// Value-semantic element of a specific field handle.
class FieldElement {
public:
    FieldElement(Field::Ptr field, std::vector<std::uint32_t> coords);

    const Field::Ptr& field() const { return field_; }
    const std::vector<std::uint32_t>& coords() const { return coords_; }
    bool is_zero() const { return field_->is_zero(coords_.data()); }

    FieldElement operator+(const FieldElement& o) const;
    FieldElement operator-(const FieldElement& o) const;
    FieldElement operator*(const FieldElement& o) const;
    FieldElement operator-() const;
    bool operator==(const FieldElement& o) const;
    bool operator!=(const FieldElement& o) const { return !(*this == o); }

    FieldElement pow(const BigInt& e) const;
    FieldElement inverse() const;
    std::uint32_t trace() const { return field_->trace(coords_.data()); }

    /// Coordinates joined by ':' (single residue for the prime field).
    std::string to_string() const;

private:
    void require_same_field(const FieldElement& o) const;

    Field::Ptr field_;
    std::vector<std::uint32_t> coords_;
};

/// Image of x under the canonical tower embedding into target (x's field
/// must appear in target's tower chain). Throws std::invalid_argument when
/// no embedding is recorded.
FieldElement embed(const FieldElement& x, const Field::Ptr& target);

inline constexpr std::uint64_t kDefaultEnumCap = 100'000'000ull;

/// All p^s elements in lexicographic coordinate order.
class ElementRange {
public:
    explicit ElementRange(Field::Ptr field, std::uint64_t cap = kDefaultEnumCap);

    class iterator {
    public:
        iterator(const Field* field, std::uint64_t idx) : field_(field), idx_(idx) {}
        FieldElement operator*() const;
        iterator& operator++() {
            ++idx_;
            return *this;
        }
        bool operator!=(const iterator& o) const { return idx_ != o.idx_; }

    private:
        const Field* field_;
        std::uint64_t idx_;
    };

    iterator begin() const { return iterator(field_.get(), 0); }
    iterator end() const { return iterator(field_.get(), size_); }
    std::uint64_t size() const { return size_; }

private:
    Field::Ptr field_;
    std::uint64_t size_;
};

}  // namespace nstrat
