#include "nstrat/census.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

namespace nstrat {

FqPoly NormalizedPoly::to_poly() const {
    FqPoly f{field, {}};
    f.coeffs.reserve(static_cast<std::size_t>(d) + 1);
    f.coeffs.push_back(field->zero());
    for (const FieldElement& a : middle) f.coeffs.push_back(a);
    f.coeffs.push_back(field->zero());  // a_{d-1}
    f.coeffs.push_back(field->one());
    return f;
}

std::string NormalizedPoly::coeffs_string() const {
    std::string s;
    for (std::size_t i = 0; i < middle.size(); ++i) {
        if (i) s += ',';
        s += middle[i].to_string();
    }
    return s;
}

std::pair<NormalizedPoly, FieldElement> normalize(const FqPoly& f) {
    const long long d = f.degree();
    if (d < 2) throw std::invalid_argument("normalize: degree must be >= 2");
    const Field::Ptr& field = f.field;
    if (d % field->p() == 0)
        throw std::invalid_argument("normalize: degree divisible by the characteristic");
    if (f.coeffs.back() != field->one())
        throw std::invalid_argument("normalize: polynomial must be monic");

    FieldElement t = (-f.coeffs[static_cast<std::size_t>(d) - 1]) *
                     field->from_residue(d).inverse();

    // Taylor shift: coefficients of f(x + t) via binomials (d is tiny).
    std::vector<std::vector<long long>> binom(static_cast<std::size_t>(d) + 1);
    for (long long j = 0; j <= d; ++j) {
        binom[static_cast<std::size_t>(j)].assign(static_cast<std::size_t>(j) + 1, 1);
        for (long long k = 1; k < j; ++k)
            binom[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)] =
                (binom[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(k) - 1] +
                 binom[static_cast<std::size_t>(j) - 1][static_cast<std::size_t>(k)]) %
                field->p();
    }
    std::vector<FieldElement> shifted(static_cast<std::size_t>(d) + 1, field->zero());
    for (long long j = 0; j <= d; ++j) {
        FieldElement tp = field->one();
        for (long long k = j; k >= 0; --k) {
            // contribution a_j * C(j, k) * t^{j-k} to degree k; tp = t^{j-k}
            FieldElement contrib = f.coeffs[static_cast<std::size_t>(j)] *
                                   field->from_residue(binom[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]) * tp;
            shifted[static_cast<std::size_t>(k)] = shifted[static_cast<std::size_t>(k)] + contrib;
            if (k > 0) tp = tp * t;
        }
    }
    if (!shifted[static_cast<std::size_t>(d) - 1].is_zero())
        throw invariant_violation("normalize: degree d-1 coefficient survived the shift");

    NormalizedPoly g{field, d, {}};
    g.middle.assign(shifted.begin() + 1, shifted.begin() + static_cast<long long>(d) - 1);
    return {std::move(g), std::move(t)};
}

namespace {

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

std::vector<std::vector<std::string>> l_to_strings(const LPolynomial& l) {
    std::vector<std::vector<std::string>> out;
    for (const CycInt& c : l.coeffs) {
        std::vector<std::string> coords;
        coords.reserve(c.coords().size());
        for (const BigInt& v : c.coords()) coords.push_back(v.str());
        out.push_back(std::move(coords));
    }
    return out;
}

NormalizedPoly poly_from_index(const Field::Ptr& field, long long d, std::uint64_t index) {
    const std::uint64_t q = field->cardinality_u64();
    NormalizedPoly g{field, d, {}};
    std::vector<std::uint64_t> digits(static_cast<std::size_t>(d - 2), 0);
    for (std::size_t i = digits.size(); i-- > 0;) {
        digits[i] = index % q;
        index /= q;
    }
    for (std::uint64_t digit : digits) g.middle.push_back(field->element_at(digit));
    return g;
}

}  // namespace

CensusResult run_census(const CensusOptions& options) {
    StratumParams params(options.d, options.p);
    if (!params.tier_theorem())
        throw std::domain_error("run_census: requires p >= 3d");
    if (options.m < 1) throw std::invalid_argument("run_census: m must be >= 1");
    if (options.with_congruence && options.m != 1)
        throw std::invalid_argument("run_census: the congruence check needs polynomials over the prime field");

    const long long d = options.d;
    const long long p = options.p;

    CensusResult result;
    result.options = options;

    Field::Ptr fq = Field::build(p, static_cast<int>(options.m), options.seed);
    ExtensionTower tower(fq, options.seed, options.cache_dir);
    result.base_field = fq->describe_modulus();
    for (int r = 2; r <= d - 1; ++r) result.tower_fields.push_back(tower.level(r)->describe_modulus());

    result.gnp = generic_polygon(params);
    result.hodge = hodge_polygon(d);
    FpMultiPoly hasse = hasse_H(params);
    result.hasse_H = hasse.to_string();

    // Polynomial selection: exhaustive index range, or seeded sample indices.
    BigInt space = pow(BigInt(fq->cardinality()), static_cast<unsigned>(d - 2));
    std::vector<std::uint64_t> indices;
    if (options.exhaustive) {
        if (space > BigInt(options.census_cap))
            throw cap_exceeded("run_census: exhaustive space exceeds the census cap");
        std::uint64_t n = static_cast<std::uint64_t>(space);
        indices.resize(n);
        for (std::uint64_t i = 0; i < n; ++i) indices[i] = i;
    } else {
        if (options.sample_size == 0)
            throw std::invalid_argument("run_census: sample mode needs a positive sample size");
        Rng rng(options.seed);
        BigInt cap = std::min(space, BigInt(~std::uint64_t{0}));
        std::uint64_t bound = static_cast<std::uint64_t>(cap);
        for (std::uint64_t i = 0; i < options.sample_size; ++i) indices.push_back(rng.below(bound));
        std::sort(indices.begin(), indices.end());
    }

    const Rational endpoint_y = Rational(d - 1) / 2;
    const long long congruence_precision =
        options.congruence_precision > 0 ? options.congruence_precision : p + 1;

    result.records.resize(indices.size());
    std::atomic<std::size_t> cursor{0};
    std::atomic<bool> failed{false};
    std::string first_error;
    std::mutex error_mu;

    auto worker = [&]() {
        for (;;) {
            std::size_t slot = cursor.fetch_add(1);
            if (slot >= indices.size() || failed.load()) return;
            try {
                NormalizedPoly g = poly_from_index(fq, d, indices[slot]);
                CensusRecord rec;
                for (const FieldElement& a : g.middle) rec.coeffs.push_back(a.to_string());

                LPolynomial l = l_function(g.to_poly(), tower, static_cast<int>(d), options.enum_cap, 1);
                rec.l_coeffs = l_to_strings(l);
                NewtonPolygon np = newton_polygon_of_l(l);
                rec.is_generic = (np == *result.gnp);
                rec.lies_above_gnp = lies_above(np, *result.gnp);
                rec.symmetric = is_symmetric(np);
                rec.endpoint_ok = (np.x_max() == d - 1 && np.value_at(d - 1) == endpoint_y);

                FieldElement h = hasse.evaluate(fq, g.middle);
                rec.hasse_value = h.to_string();
                rec.hasse_nonzero = !h.is_zero();

                if (options.with_congruence) {
                    std::vector<long long> coeffs;  // a_1..a_d over the prime field
                    for (const FieldElement& a : g.middle) coeffs.push_back(a.coords()[0]);
                    coeffs.push_back(0);
                    coeffs.push_back(1);
                    rec.congruence = trace_congruence_check(coeffs, p, congruence_precision);
                }

                rec.np = std::move(np);
                result.records[slot] = std::move(rec);
            } catch (const std::exception& ex) {
                std::lock_guard<std::mutex> lock(error_mu);
                if (!failed.exchange(true)) first_error = ex.what();
            }
        }
    };

    int nt = std::max(1, options.threads);
    if (nt == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    if (failed.load()) throw std::runtime_error("run_census: " + first_error);

    CensusSummary& s = result.summary;
    s.total = result.records.size();
    s.iff_ok = true;
    s.lies_above_ok = lies_above(*result.gnp, *result.hodge);
    s.symmetry_ok = is_symmetric(*result.gnp) && result.gnp->x_max() == d - 1 &&
                    result.gnp->value_at(d - 1) == endpoint_y;
    for (const CensusRecord& rec : result.records) {
        if (rec.is_generic)
            ++s.generic;
        else
            ++s.non_generic;
        if (rec.is_generic != rec.hasse_nonzero) s.iff_ok = false;
        if (!rec.lies_above_gnp) s.lies_above_ok = false;
        if (!rec.symmetric || !rec.endpoint_ok) s.symmetry_ok = false;
        if (rec.congruence && !rec.congruence->pass) s.congruence_ok = false;
    }
    return result;
}

nlohmann::ordered_json polygon_to_json(const NewtonPolygon& polygon) {
    nlohmann::ordered_json j = nlohmann::ordered_json::array();
    for (const auto& [x, y] : polygon.vertices()) j.push_back({x, rational_str(y)});
    return j;
}

std::string polygon_to_json_label(const NewtonPolygon& polygon) {
    return polygon_to_json(polygon).dump();
}

nlohmann::ordered_json congruence_to_json(const CongruenceReport& report) {
    nlohmann::ordered_json j;
    j["p"] = report.p;
    j["d"] = report.d;
    j["precision"] = report.precision;
    j["f_coeffs"] = report.f_coeffs;
    auto coords = [](const std::vector<BigInt>& v) {
        std::vector<std::string> out;
        out.reserve(v.size());
        for (const BigInt& c : v) out.push_back(c.str());
        return out;
    };
    j["lhs_lambda_coords"] = coords(report.lhs_coords);
    j["rhs_lambda_coords"] = coords(report.rhs_coords);
    j["valuation_of_difference"] = report.valuation_of_difference;
    j["pass"] = report.pass;
    if (!report.pass) j["passing_branches"] = report.passing_branches;
    return j;
}

nlohmann::ordered_json census_to_json(const CensusResult& result) {
    nlohmann::ordered_json j;
    j["schema_version"] = 1;
    j["kind"] = "census";
    j["d"] = result.options.d;
    j["p"] = result.options.p;
    j["m"] = result.options.m;
    j["mode"] = result.options.exhaustive ? "exhaustive" : "sample";
    if (!result.options.exhaustive) j["sample_size"] = result.options.sample_size;
    j["seed"] = result.options.seed;
    j["base_field"] = result.base_field;
    j["tower_fields"] = result.tower_fields;
    j["hodge_vertices"] = polygon_to_json(*result.hodge);
    j["gnp_vertices"] = polygon_to_json(*result.gnp);
    j["hasse_H"] = result.hasse_H;

    nlohmann::ordered_json records = nlohmann::ordered_json::array();
    for (const CensusRecord& rec : result.records) {
        nlohmann::ordered_json r;
        r["d"] = result.options.d;
        r["p"] = result.options.p;
        r["m"] = result.options.m;
        r["coeffs"] = rec.coeffs;
        r["hasse_value"] = rec.hasse_value;
        r["np_vertices"] = polygon_to_json(*rec.np);
        r["gnp_vertices"] = polygon_to_json(*result.gnp);
        r["is_generic"] = rec.is_generic;
        r["lies_above"] = rec.lies_above_gnp;
        r["symmetric"] = rec.symmetric;
        r["endpoint_ok"] = rec.endpoint_ok;
        r["l_coeffs"] = rec.l_coeffs;
        if (rec.congruence) r["congruence"] = congruence_to_json(*rec.congruence);
        records.push_back(std::move(r));
    }
    j["records"] = std::move(records);

    nlohmann::ordered_json s;
    s["total"] = result.summary.total;
    s["generic"] = result.summary.generic;
    s["non_generic"] = result.summary.non_generic;
    s["iff_ok"] = result.summary.iff_ok;
    s["lies_above_ok"] = result.summary.lies_above_ok;
    s["symmetry_ok"] = result.summary.symmetry_ok;
    s["congruence_ok"] = result.summary.congruence_ok;
    s["ok"] = result.summary.ok();
    j["summary"] = std::move(s);
    return j;
}

std::string census_to_tsv(const CensusResult& result) {
    std::ostringstream os;
    os << "# HP(" << result.options.d << ")\n" << result.hodge->to_tsv();
    os << "# GNP(" << result.options.d << "," << result.options.p << ")\n" << result.gnp->to_tsv();
    for (const CensusRecord& rec : result.records) {
        os << "# NP coeffs=(";
        for (std::size_t i = 0; i < rec.coeffs.size(); ++i) os << (i ? "," : "") << rec.coeffs[i];
        os << ") generic=" << (rec.is_generic ? 1 : 0) << "\n";
        os << rec.np->to_tsv();
    }
    return os.str();
}

}  // namespace nstrat
