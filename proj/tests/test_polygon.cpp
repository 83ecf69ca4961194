#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include "nstrat/polygon.hpp"

using namespace nstrat;

namespace {

PolygonPoint pt(long long x, long long num, long long den) {
    return {x, Rational(num) / Rational(den)};
}

PolygonPoint inf_pt(long long x) {
    return {x, std::nullopt};
}

std::vector<long long> primes_between(long long lo, long long hi) {
    std::vector<long long> out;
    for (long long p = lo; p < hi; ++p)
        if (is_prime_u64(static_cast<std::uint64_t>(p))) out.push_back(p);
    return out;
}

}  // namespace

TEST_CASE("hodge polygon") {
    CHECK(hodge_polygon(2).vertices() ==
          std::vector<NewtonPolygon::Vertex>{{0, 0}, {1, Rational(1) / 2}});
    CHECK(hodge_polygon(3).vertices() ==
          std::vector<NewtonPolygon::Vertex>{{0, 0}, {1, Rational(1) / 3}, {2, 1}});
    CHECK(hodge_polygon(4).vertices() ==
          std::vector<NewtonPolygon::Vertex>{
              {0, 0}, {1, Rational(1) / 4}, {2, Rational(3) / 4}, {3, Rational(3) / 2}});
    CHECK_THROWS_AS(hodge_polygon(1), std::invalid_argument);
}

TEST_CASE("generic polygon examples") {
    CHECK(generic_polygon(StratumParams(3, 13)) == hodge_polygon(3));
    CHECK(generic_polygon(StratumParams(3, 11)).vertices() ==
          std::vector<NewtonPolygon::Vertex>{{0, 0}, {1, Rational(2) / 5}, {2, 1}});

    auto slopes = generic_polygon(StratumParams(4, 19)).slopes();
    REQUIRE(slopes.size() == 3);
    CHECK(slopes[0] == std::pair<Rational, long long>{Rational(5) / 18, 1});
    CHECK(slopes[1] == std::pair<Rational, long long>{Rational(1) / 2, 1});
    CHECK(slopes[2] == std::pair<Rational, long long>{Rational(13) / 18, 1});

    CHECK_THROWS_AS(generic_polygon(StratumParams(3, 7)), std::domain_error);
}

TEST_CASE("lower convex hull") {
    NewtonPolygon drop = lower_convex_hull({pt(0, 0, 1), pt(1, 1, 1), pt(2, 1, 1)});
    CHECK(drop.vertices() == std::vector<NewtonPolygon::Vertex>{{0, 0}, {2, 1}});

    NewtonPolygon keep = lower_convex_hull({pt(0, 0, 1), pt(1, 2, 5), pt(2, 1, 1)});
    CHECK(keep.vertices().size() == 3);

    NewtonPolygon gap = lower_convex_hull({pt(0, 0, 1), inf_pt(1), pt(2, 1, 1)});
    CHECK(gap.vertices() == std::vector<NewtonPolygon::Vertex>{{0, 0}, {2, 1}});

    // collinear interior points are not vertices
    NewtonPolygon flat = lower_convex_hull({pt(0, 0, 1), pt(1, 1, 2), pt(2, 1, 1)});
    CHECK(flat.vertices() == std::vector<NewtonPolygon::Vertex>{{0, 0}, {2, 1}});

    CHECK_THROWS_AS(lower_convex_hull({pt(0, 0, 1), pt(1, 1, 2), inf_pt(2)}), std::domain_error);
    CHECK_THROWS_AS(lower_convex_hull({pt(1, 0, 1), pt(2, 1, 1)}), std::invalid_argument);
    CHECK_THROWS_AS(lower_convex_hull({pt(0, 1, 1), pt(2, 1, 1)}), std::invalid_argument);
    CHECK_THROWS_AS(lower_convex_hull({pt(0, 0, 1), pt(0, 1, 1)}), std::invalid_argument);
}

TEST_CASE("hull idempotence") {
    for (const NewtonPolygon& poly :
         {hodge_polygon(5), generic_polygon(StratumParams(3, 11)), generic_polygon(StratumParams(4, 19))}) {
        std::vector<PolygonPoint> pts;
        for (const auto& [x, y] : poly.vertices()) pts.push_back({x, y});
        CHECK(lower_convex_hull(pts) == poly);
    }
}

TEST_CASE("lies_above") {
    NewtonPolygon gnp = generic_polygon(StratumParams(3, 11));
    NewtonPolygon hp = hodge_polygon(3);
    CHECK(lies_above(gnp, hp));
    CHECK(lies_above(gnp, gnp));
    CHECK_FALSE(lies_above(hp, gnp));
    CHECK_THROWS_AS(lies_above(gnp, hodge_polygon(4)), std::invalid_argument);
}

TEST_CASE("is_symmetric") {
    CHECK(is_symmetric(generic_polygon(StratumParams(4, 19))));
    for (long long d = 2; d <= 10; ++d) CHECK(is_symmetric(hodge_polygon(d)));
    NewtonPolygon lopsided({{0, 0}, {2, Rational(2) / 3}});  // single slope 1/3
    CHECK_FALSE(is_symmetric(lopsided));
}

TEST_CASE("polygon constructor validation") {
    CHECK_THROWS_AS(NewtonPolygon({}), std::invalid_argument);
    CHECK_THROWS_AS(NewtonPolygon({{1, 0}}), std::invalid_argument);
    CHECK_THROWS_AS(NewtonPolygon({{0, 0}, {1, Rational(1) / 2}, {2, 1}}), std::invalid_argument);  // collinear
    CHECK_THROWS_AS(NewtonPolygon({{0, 0}, {2, 1}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("value_at") {
    NewtonPolygon gnp = generic_polygon(StratumParams(4, 19));
    CHECK(gnp.value_at(0) == 0);
    CHECK(gnp.value_at(2) == Rational(14) / 18);
    CHECK(gnp.value_at(3) == Rational(3) / 2);
    CHECK_THROWS_AS(gnp.value_at(4), std::invalid_argument);
}

TEST_CASE("GNP lies above HP with equality exactly in the split case") {
    for (long long d = 2; d <= 7; ++d) {
        for (long long p : primes_between(3 * d, 60)) {
            if (std::gcd(p, d) != 1) continue;
            StratumParams params(d, p);
            NewtonPolygon gnp = generic_polygon(params);
            NewtonPolygon hp = hodge_polygon(d);
            CHECK(lies_above(gnp, hp));
            CHECK((gnp == hp) == (p % d == 1));
            CHECK(is_symmetric(gnp));
            CHECK(gnp.x_max() == d - 1);
            CHECK(gnp.value_at(d - 1) == Rational(d - 1) / 2);
        }
    }
}

TEST_CASE("tsv emission") {
    CHECK(hodge_polygon(3).to_tsv() == "0\t0/1\n1\t1/3\n2\t1/1\n");
}
