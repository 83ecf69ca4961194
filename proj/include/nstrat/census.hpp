#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nstrat/cyclotomic.hpp"
#include "nstrat/dwork.hpp"
#include "nstrat/fp_multipoly.hpp"
#include "nstrat/polygon.hpp"

namespace nstrat {

/// Monic degree-d polynomial with zero constant term and zero coefficient in
/// degree d-1, identified by its middle coefficients a_1..a_{d-2}.
struct NormalizedPoly {
    Field::Ptr field;
    long long d = 0;
    std::vector<FieldElement> middle;  // a_1 .. a_{d-2}

    FqPoly to_poly() const;
    /// Comma-joined coefficient serializations.
    std::string coeffs_string() const;
};

/// Kills the degree-(d-1) term of a monic polynomial via x -> x + t with
/// t = -a_{d-1}/d, and drops the constant: returns g(x) = f(x+t) - f(t)
/// together with the shift t. Requires gcd(p, d) = 1 and a monic input.
std::pair<NormalizedPoly, FieldElement> normalize(const FqPoly& f);

inline constexpr std::uint64_t kDefaultCensusCap = 1'000'000ull;

struct CensusOptions {
    long long d = 0;
    long long p = 0;
    long long m = 1;
    bool exhaustive = true;
    std::uint64_t sample_size = 0;  // sample mode only
    std::uint64_t seed = 0;
    bool with_congruence = false;
    long long congruence_precision = 0;  // 0 means p + 1
    std::uint64_t enum_cap = kDefaultEnumCap;
    std::uint64_t census_cap = kDefaultCensusCap;
    int threads = 1;
    std::string cache_dir;  // field modulus cache; empty disables caching
};

struct CensusRecord {
    std::vector<std::string> coeffs;  // a_1..a_{d-2}
    std::string hasse_value;
    bool hasse_nonzero = false;
    std::optional<NewtonPolygon> np;
    bool is_generic = false;      // np == gnp, from the L-function side only
    bool lies_above_gnp = false;  // np above gnp
    bool symmetric = false;
    bool endpoint_ok = false;  // terminal vertex is (d-1, (d-1)/2)
    std::vector<std::vector<std::string>> l_coeffs;  // CycInt coordinate vectors
    std::optional<CongruenceReport> congruence;
};

struct CensusSummary {
    std::uint64_t total = 0;
    std::uint64_t generic = 0;
    std::uint64_t non_generic = 0;
    bool iff_ok = false;         // is_generic == (hasse_value != 0) everywhere
    bool lies_above_ok = false;  // every np above gnp, and gnp above hodge
    bool symmetry_ok = false;    // every np and the gnp symmetric with the right endpoint
    bool congruence_ok = true;   // all attached congruence reports passed

    bool ok() const { return iff_ok && lies_above_ok && symmetry_ok && congruence_ok; }
};

struct CensusResult {
    CensusOptions options;
    std::string base_field;                   // modulus chain of F_q
    std::vector<std::string> tower_fields;    // F_{q^r}, r = 2..d-1
    std::optional<NewtonPolygon> gnp;
    std::optional<NewtonPolygon> hodge;
    std::string hasse_H;
    std::vector<CensusRecord> records;
    CensusSummary summary;
};

/// Runs the stratum census: for every normalized polynomial (all of them, or
/// a seeded sample), computes the exact L-function and its polygon on one
/// side and the Hasse polynomial value on the other, and compares. The two
/// sides stay independent; agreement is what the summary certifies.
CensusResult run_census(const CensusOptions& options);

nlohmann::ordered_json census_to_json(const CensusResult& result);

nlohmann::ordered_json congruence_to_json(const CongruenceReport& report);

/// TSV block per polygon: a `# label` line, then `x<TAB>num/den` vertices.
std::string census_to_tsv(const CensusResult& result);

std::string polygon_to_json_label(const NewtonPolygon& polygon);  // [[x,"num/den"],...] as text

nlohmann::ordered_json polygon_to_json(const NewtonPolygon& polygon);

}  // namespace nstrat
