#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "nstrat/finite_field.hpp"

using namespace nstrat;

namespace {

// Degree 2 and 3 moduli are irreducible exactly when they have no roots;
// checked here straight from the definition, independent of the library test.
bool has_root_in_prime_field(const Field& field) {
    const long long p = field.p();
    for (long long x = 0; x < p; ++x) {
        long long acc = 1;  // monic leading term
        for (int j = field.degree_over_base() - 1; j >= 0; --j)
            acc = (acc * x + field.modulus()[static_cast<std::size_t>(j)][0]) % p;
        if (acc == 0) return true;
    }
    return false;
}

FieldElement random_element(const Field::Ptr& field, Rng& rng) {
    return field->element_at(rng.below(field->cardinality_u64()));
}

}  // namespace

TEST_CASE("build_field basics") {
    Field::Ptr f11 = Field::build(11, 1, 0);
    CHECK(f11->absolute_degree() == 1);
    CHECK(f11->cardinality() == 11);
    CHECK(f11->describe_modulus() == "GF(11)");

    Field::Ptr f121 = Field::build(11, 2, 0);
    CHECK(f121->cardinality() == 121);
    CHECK_FALSE(has_root_in_prime_field(*f121));

    Field::Ptr f2197 = Field::build(13, 3, 0);
    CHECK(f2197->cardinality() == 2197);
    CHECK_FALSE(has_root_in_prime_field(*f2197));

    CHECK_THROWS_AS(Field::build(12, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(Field::build(11, 0, 0), std::invalid_argument);

    // same seed, same modulus; the search is deterministic
    CHECK(Field::build(11, 2, 7)->modulus() == Field::build(11, 2, 7)->modulus());
}

TEST_CASE("explicit modulus construction rejects reducible input") {
    Field::Ptr f11 = Field::prime_field(11);
    // x^2 - 1 = (x-1)(x+1)
    CHECK_THROWS_AS(Field::extend_with_modulus(f11, {{10}, {0}}), std::invalid_argument);
    // x^2 + 1 is irreducible over F_11 (-1 is not a square mod 11)
    Field::Ptr fi = Field::extend_with_modulus(f11, {{1}, {0}});
    FieldElement i = fi->element({0, 1});
    CHECK(i * i == -fi->one());
}

TEST_CASE("prime field arithmetic") {
    Field::Ptr f = Field::prime_field(7);
    CHECK(f->from_residue(3) + f->from_residue(5) == f->from_residue(1));
    CHECK(f->from_residue(3) * f->from_residue(5) == f->from_residue(1));
    CHECK(f->from_residue(-1) == f->from_residue(6));
    CHECK(f->from_residue(3).inverse() == f->from_residue(5));
    CHECK(f->from_residue(3).pow(6) == f->one());
    CHECK_THROWS_AS(f->zero().inverse(), std::domain_error);
}

TEST_CASE("extension arithmetic satisfies the field axioms on seeded samples") {
    Rng rng(42);
    for (Field::Ptr field : {Field::build(11, 2, 0), Field::build(13, 3, 0), Field::build(3, 4, 1)}) {
        for (int iter = 0; iter < 50; ++iter) {
            FieldElement a = random_element(field, rng);
            FieldElement b = random_element(field, rng);
            FieldElement c = random_element(field, rng);
            CHECK(a * b == b * a);
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            if (!a.is_zero()) {
                CHECK(a * a.inverse() == field->one());
                CHECK(a.pow(field->cardinality() - 1) == field->one());
            }
        }
    }
}

TEST_CASE("absolute trace") {
    Field::Ptr f121 = Field::build(11, 2, 0);
    CHECK(f121->one().trace() == 2);
    CHECK(f121->zero().trace() == 0);

    // the generator is a root of x^2 + c1 x + c0: its trace is -c1
    FieldElement t = f121->element({0, 1});
    long long c1 = f121->modulus()[1][0];
    CHECK(t.trace() == (11 - c1) % 11);

    Field::Ptr f2197 = Field::build(13, 3, 0);
    CHECK(f2197->one().trace() == 3);
    FieldElement u = f2197->element({0, 1, 0});
    long long d2 = f2197->modulus()[2][0];
    CHECK(u.trace() == (13 - d2) % 13);
}

TEST_CASE("trace is additive, Frobenius-invariant, and onto") {
    Rng rng(7);
    for (Field::Ptr field : {Field::build(11, 2, 0), Field::build(13, 3, 0), Field::build(17, 4, 0)}) {
        const long long p = field->p();
        for (int iter = 0; iter < 40; ++iter) {
            FieldElement a = random_element(field, rng);
            FieldElement b = random_element(field, rng);
            CHECK((a + b).trace() == (a.trace() + b.trace()) % p);
            CHECK(a.pow(p).trace() == a.trace());
        }
        std::set<std::uint32_t> values;
        for (std::uint64_t i = 0; i < std::min<std::uint64_t>(field->cardinality_u64(), 2000); ++i)
            values.insert(field->element_at(i).trace());
        CHECK(values.size() == static_cast<std::size_t>(p));
    }
}

TEST_CASE("Frobenius fixes exactly the prime subfield") {
    for (Field::Ptr field : {Field::build(11, 2, 0), Field::build(3, 3, 0), Field::build(13, 3, 5)}) {
        const long long p = field->p();
        std::uint64_t fixed = 0;
        for (const FieldElement& x : ElementRange(field)) {
            if (x.pow(p) == x) ++fixed;
        }
        CHECK(fixed == static_cast<std::uint64_t>(p));
    }
}

TEST_CASE("tower embedding is a ring homomorphism") {
    Field::Ptr f121 = Field::build(11, 2, 0);
    Field::Ptr up = Field::extend(f121, 2, 3);
    CHECK(up->absolute_degree() == 4);
    CHECK(up->base().get() == f121.get());

    CHECK(embed(f121->zero(), up) == up->zero());
    CHECK(embed(f121->one(), up) == up->one());

    Rng rng(11);
    for (int iter = 0; iter < 100; ++iter) {
        FieldElement a = random_element(f121, rng);
        FieldElement b = random_element(f121, rng);
        CHECK(embed(a * b, up) == embed(a, up) * embed(b, up));
        CHECK(embed(a + b, up) == embed(a, up) + embed(b, up));
    }

    // chain embedding F_11 -> F_121 -> F_121^2
    Field::Ptr f11 = f121->base();
    CHECK(embed(f11->from_residue(5), up) == up->from_residue(5));

    Field::Ptr stranger = Field::prime_field(13);
    CHECK_THROWS_AS(embed(stranger->one(), up), std::invalid_argument);
}

TEST_CASE("enumeration") {
    CHECK(ElementRange(Field::prime_field(11)).size() == 11);
    CHECK(ElementRange(Field::build(11, 2, 0)).size() == 121);
    CHECK(ElementRange(Field::build(17, 4, 0)).size() == 83521);

    Field::Ptr f121 = Field::build(11, 2, 0);
    std::set<std::vector<std::uint32_t>> seen;
    for (const FieldElement& x : ElementRange(f121)) seen.insert(x.coords());
    CHECK(seen.size() == 121);

    // lexicographic order, first coordinate most significant
    CHECK(f121->element_at(0).coords() == std::vector<std::uint32_t>{0, 0});
    CHECK(f121->element_at(1).coords() == std::vector<std::uint32_t>{0, 1});
    CHECK(f121->element_at(11).coords() == std::vector<std::uint32_t>{1, 0});

    CHECK_THROWS_AS(ElementRange(f121, 100), cap_exceeded);
}

TEST_CASE("tower trace transitivity") {
    Field::Ptr f121 = Field::build(11, 2, 0);
    Field::Ptr up = Field::extend(f121, 2, 3);
    Rng rng(23);
    for (int iter = 0; iter < 60; ++iter) {
        FieldElement x = random_element(up, rng);
        FieldElement rel = x + x.pow(f121->cardinality());  // Tr_{F_{q^2}/F_q}
        // the relative trace lands in the base field: upper block must vanish
        std::vector<std::uint32_t> low(rel.coords().begin(), rel.coords().begin() + 2);
        for (std::size_t i = 2; i < rel.coords().size(); ++i) CHECK(rel.coords()[i] == 0);
        CHECK(f121->element(low).trace() == x.trace());
    }
}

TEST_CASE("element serialization") {
    Field::Ptr f121 = Field::build(11, 2, 0);
    CHECK(f121->element({3, 1}).to_string() == "3:1");
    CHECK(Field::prime_field(11)->from_residue(7).to_string() == "7");
}
