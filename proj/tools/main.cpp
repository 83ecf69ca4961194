// nstrat: Newton polygons, Hasse polynomials, and exact L-function censuses
// for additive exponential sums attached to one-variable polynomials over
// finite fields.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "nstrat/census.hpp"
#include "nstrat/cyclotomic.hpp"
#include "nstrat/dwork.hpp"
#include "nstrat/fp_multipoly.hpp"
#include "nstrat/polygon.hpp"
#include "nstrat/svg.hpp"

namespace {

using namespace nstrat;

std::string rational_str(const Rational& r) {
    std::ostringstream os;
    os << numerator(r) << "/" << denominator(r);
    return os.str();
}

std::vector<std::uint32_t> parse_element(const std::string& text, const Field::Ptr& field) {
    std::vector<std::uint32_t> coords(static_cast<std::size_t>(field->absolute_degree()), 0);
    std::stringstream ss(text);
    std::string part;
    std::size_t i = 0;
    while (std::getline(ss, part, ':')) {
        if (i >= coords.size()) throw CLI::ValidationError("coefficient has too many coordinates: " + text);
        long long v = std::stoll(part);
        v %= field->p();
        if (v < 0) v += field->p();
        coords[i++] = static_cast<std::uint32_t>(v);
    }
    if (i == 0) throw CLI::ValidationError("empty coefficient");
    return coords;
}

std::vector<FieldElement> parse_coeff_list(const std::string& text, const Field::Ptr& field,
                                           std::size_t expected) {
    std::vector<FieldElement> out;
    if (!text.empty()) {
        std::stringstream ss(text);
        std::string part;
        while (std::getline(ss, part, ',')) out.push_back(field->element(parse_element(part, field)));
    }
    if (out.size() != expected) {
        throw CLI::ValidationError("expected " + std::to_string(expected) +
                                   " comma-separated coefficients, got " + std::to_string(out.size()));
    }
    return out;
}

void apply_config_file(const std::string& path, std::uint64_t& enum_cap, std::uint64_t& census_cap,
                       const CLI::App* cmd) {
    if (path.empty()) return;
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("cannot read config file " + path);
    nlohmann::json cfg = nlohmann::json::parse(in);
    // explicit flags win over the config file
    if (cfg.contains("enum_cap") && cmd->count("--enum-cap") == 0)
        enum_cap = cfg["enum_cap"].get<std::uint64_t>();
    if (cfg.contains("census_cap") && cmd->count("--census-cap") == 0)
        census_cap = cfg["census_cap"].get<std::uint64_t>();
}

std::string default_cache_dir() {
    const char* env = std::getenv("NSTRAT_CACHE_DIR");
    return env ? std::string(env) : std::string();
}

void print_lfunction(const LPolynomial& l, const NewtonPolygon& np) {
    for (std::size_t n = 0; n < l.coeffs.size(); ++n) {
        std::cout << "c_" << n << " =";
        for (const BigInt& c : l.coeffs[n].coords()) std::cout << " " << c;
        std::cout << "\n";
    }
    for (std::size_t n = 0; n < l.coeffs.size(); ++n) {
        auto v = l.coeffs[n].pi_valuation();
        std::cout << "v_pi(c_" << n << ") = " << (v ? std::to_string(*v) : "inf");
        if (v)
            std::cout << "  v_q = " << rational_str(Rational(*v) / Rational((l.p - 1) * l.m));
        std::cout << "\n";
    }
    std::cout << "polygon:\n" << np.to_tsv();
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Generic Newton polygons and Hasse polynomials for L-functions of additive "
                 "exponential sums, with exact verification censuses"};
    app.require_subcommand(1);

    // hodge
    long long hodge_d = 0;
    CLI::App* cmd_hodge = app.add_subcommand("hodge", "Hodge polygon HP(d) as TSV vertices");
    cmd_hodge->add_option("--d", hodge_d, "degree d >= 2")->required();
    cmd_hodge->callback([&] { std::cout << hodge_polygon(hodge_d).to_tsv(); });

    // gnp
    long long gnp_d = 0, gnp_p = 0;
    CLI::App* cmd_gnp = app.add_subcommand("gnp", "generic Newton polygon GNP(d,p) as TSV vertices");
    cmd_gnp->add_option("--d", gnp_d, "degree d >= 2")->required();
    cmd_gnp->add_option("--p", gnp_p, "prime p >= 3d, coprime to d")->required();
    cmd_gnp->callback([&] { std::cout << generic_polygon(StratumParams(gnp_d, gnp_p)).to_tsv(); });

    // hasse
    long long hs_d = 0, hs_p = 0;
    std::string hs_which = "H";
    CLI::App* cmd_hasse = app.add_subcommand("hasse", "Hasse polynomial in canonical text form");
    cmd_hasse->add_option("--d", hs_d)->required();
    cmd_hasse->add_option("--p", hs_p)->required();
    cmd_hasse->add_option("--which", hs_which, "P (product P_{d,p}), G, or H (default H)")
        ->check(CLI::IsMember({"P", "G", "H"}));
    cmd_hasse->callback([&] {
        StratumParams params(hs_d, hs_p);
        FpMultiPoly poly = hs_which == "P"   ? hasse_product(params)
                           : hs_which == "G" ? hasse_G(params)
                                             : hasse_H(params);
        std::cout << poly.to_string() << "\n";
    });

    // lfunction / np share flags
    struct LArgs {
        long long d = 0, p = 0, m = 1;
        std::string coeffs;
        std::uint64_t seed = 0;
        std::uint64_t enum_cap = kDefaultEnumCap;
        int threads = 0;
    };
    auto add_l_flags = [](CLI::App* cmd, LArgs& a) {
        cmd->add_option("--d", a.d, "degree of the normalized polynomial")->required();
        cmd->add_option("--p", a.p, "characteristic")->required();
        cmd->add_option("--m", a.m, "extension degree of q = p^m over p");
        cmd->add_option("--coeffs", a.coeffs,
                        "a_1..a_{d-2} of f = x^d + a_{d-2}x^{d-2} + ... + a_1 x, comma-separated; "
                        "extension-field coordinates joined by ':'");
        cmd->add_option("--seed", a.seed, "seed for the field modulus search");
        cmd->add_option("--enum-cap", a.enum_cap, "largest field enumerated");
        cmd->add_option("--threads", a.threads, "0 = hardware concurrency");
    };
    auto compute_l = [](const LArgs& a) {
        Field::Ptr fq = Field::build(a.p, static_cast<int>(a.m), a.seed);
        ExtensionTower tower(fq, a.seed, default_cache_dir());
        NormalizedPoly g{fq, a.d, parse_coeff_list(a.coeffs, fq, static_cast<std::size_t>(a.d - 2))};
        int threads = a.threads > 0 ? a.threads : static_cast<int>(std::thread::hardware_concurrency());
        return l_function(g.to_poly(), tower, static_cast<int>(a.d), a.enum_cap, std::max(1, threads));
    };

    LArgs lf_args;
    CLI::App* cmd_lf = app.add_subcommand("lfunction", "exact L(f,T): coefficients, valuations, polygon");
    add_l_flags(cmd_lf, lf_args);
    cmd_lf->callback([&] {
        LPolynomial l = compute_l(lf_args);
        print_lfunction(l, newton_polygon_of_l(l));
    });

    LArgs np_args;
    CLI::App* cmd_np = app.add_subcommand("np", "Newton polygon NP_q(f) as TSV vertices");
    add_l_flags(cmd_np, np_args);
    cmd_np->callback([&] { std::cout << newton_polygon_of_l(compute_l(np_args)).to_tsv(); });

    // census
    CensusOptions census_opts;
    std::string census_mode = "exhaustive";
    std::string census_json, census_svg, census_config;
    bool census_tsv = false;
    CLI::App* cmd_census = app.add_subcommand("census", "stratum census verifying NP == GNP iff H != 0");
    cmd_census->add_option("--d", census_opts.d)->required();
    cmd_census->add_option("--p", census_opts.p)->required();
    cmd_census->add_option("--m", census_opts.m, "extension degree (default 1)");
    cmd_census->add_option("--mode", census_mode)->check(CLI::IsMember({"exhaustive", "sample"}));
    cmd_census->add_option("--samples", census_opts.sample_size, "sample size for sample mode");
    cmd_census->add_option("--seed", census_opts.seed);
    cmd_census->add_flag("--with-congruence", census_opts.with_congruence,
                         "attach the trace congruence report to each record (m = 1 only)");
    cmd_census->add_option("--precision", census_opts.congruence_precision,
                           "pi-adic precision of the congruence check (default p+1)");
    cmd_census->add_option("--json", census_json, "write the census as JSON to this file");
    cmd_census->add_flag("--tsv", census_tsv, "dump all polygons as TSV to stdout");
    cmd_census->add_option("--svg", census_svg, "write an overlay plot (GNP vs HP vs observed NPs)");
    cmd_census->add_option("--enum-cap", census_opts.enum_cap);
    cmd_census->add_option("--census-cap", census_opts.census_cap);
    cmd_census->add_option("--threads", census_opts.threads, "0 = hardware concurrency");
    cmd_census->add_option("--config", census_config, "JSON config file with enum_cap / census_cap");
    cmd_census->add_option("--cache-dir", census_opts.cache_dir,
                           "field modulus cache directory (default $NSTRAT_CACHE_DIR)");
    cmd_census->callback([&] {
        apply_config_file(census_config, census_opts.enum_cap, census_opts.census_cap, cmd_census);
        census_opts.exhaustive = (census_mode == "exhaustive");
        if (census_opts.threads <= 0)
            census_opts.threads = std::max(1u, std::thread::hardware_concurrency());
        if (census_opts.cache_dir.empty()) census_opts.cache_dir = default_cache_dir();

        CensusResult result = run_census(census_opts);

        if (!census_json.empty()) {
            std::ofstream out(census_json);
            if (!out) throw CLI::ValidationError("cannot write " + census_json);
            out << census_to_json(result).dump(2) << "\n";
        }
        if (census_tsv) std::cout << census_to_tsv(result);
        if (!census_svg.empty()) {
            std::vector<std::pair<std::string, NewtonPolygon>> plots;
            plots.emplace_back("HP(" + std::to_string(census_opts.d) + ")", *result.hodge);
            plots.emplace_back("GNP", *result.gnp);
            std::map<std::string, std::pair<NewtonPolygon, std::uint64_t>> distinct;
            for (const CensusRecord& rec : result.records) {
                auto [it, fresh] = distinct.try_emplace(polygon_to_json_label(*rec.np), *rec.np, 0);
                ++it->second.second;
            }
            for (const auto& [label, entry] : distinct)
                plots.emplace_back("NP x" + std::to_string(entry.second), entry.first);
            std::ofstream out(census_svg);
            if (!out) throw CLI::ValidationError("cannot write " + census_svg);
            out << render_polygons_svg(plots);
        }

        const CensusSummary& s = result.summary;
        std::cout << "census d=" << census_opts.d << " p=" << census_opts.p << " m=" << census_opts.m
                  << ": total=" << s.total << " generic=" << s.generic
                  << " non_generic=" << s.non_generic << " iff_ok=" << s.iff_ok
                  << " lies_above_ok=" << s.lies_above_ok << " symmetry_ok=" << s.symmetry_ok
                  << " congruence_ok=" << s.congruence_ok << "\n";
        if (!s.ok()) throw invariant_violation("census: a stratum invariant failed; see the records");
    });

    // congruence
    long long cg_d = 0, cg_p = 0, cg_precision = 0, cg_random = 0;
    std::uint64_t cg_seed = 0;
    std::string cg_coeffs;
    CLI::App* cmd_cong = app.add_subcommand("congruence", "trace congruence check for S_1(f)");
    cmd_cong->add_option("--d", cg_d, "degree (needed with --random)");
    cmd_cong->add_option("--p", cg_p)->required();
    cmd_cong->add_option("--coeffs", cg_coeffs, "a_1..a_d of f over F_p, comma-separated");
    cmd_cong->add_option("--random", cg_random, "check this many seeded random degree-d polynomials");
    cmd_cong->add_option("--seed", cg_seed);
    cmd_cong->add_option("--precision", cg_precision, "pi-adic precision (default p+1)");
    cmd_cong->callback([&] {
        long long precision = cg_precision > 0 ? cg_precision : cg_p + 1;
        std::vector<std::vector<long long>> polys;
        if (!cg_coeffs.empty()) {
            std::vector<long long> coeffs;
            std::stringstream ss(cg_coeffs);
            std::string part;
            while (std::getline(ss, part, ',')) coeffs.push_back(std::stoll(part));
            polys.push_back(std::move(coeffs));
        } else if (cg_random > 0) {
            if (cg_d < 2) throw CLI::ValidationError("--random needs --d");
            Rng rng(cg_seed);
            for (long long i = 0; i < cg_random; ++i) {
                std::vector<long long> coeffs;
                for (long long j = 1; j <= cg_d; ++j)
                    coeffs.push_back(static_cast<long long>(rng.below(static_cast<std::uint64_t>(cg_p))));
                if (coeffs.back() == 0) coeffs.back() = 1;
                polys.push_back(std::move(coeffs));
            }
        } else {
            throw CLI::ValidationError("give --coeffs or --random N");
        }
        bool all_pass = true;
        for (const auto& coeffs : polys) {
            CongruenceReport rep = trace_congruence_check(coeffs, cg_p, precision);
            std::cout << (rep.pass ? "pass" : "FAIL") << " v(lhs-rhs)=" << rep.valuation_of_difference
                      << " (need >= " << cg_p << ") f:";
            for (std::size_t i = 0; i < coeffs.size(); ++i)
                std::cout << " a_" << (i + 1) << "=" << rep.f_coeffs[i];
            if (!rep.pass) {
                std::cout << " passing_branches=[";
                for (std::size_t i = 0; i < rep.passing_branches.size(); ++i)
                    std::cout << (i ? "," : "") << rep.passing_branches[i];
                std::cout << "]";
                all_pass = false;
            }
            std::cout << "\n";
        }
        if (!all_pass) throw invariant_violation("congruence: at least one check failed");
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const cap_exceeded& e) {
        std::cerr << "error (resource cap): " << e.what() << "\n";
        return 4;
    } catch (const invariant_violation& e) {
        std::cerr << "error (invariant): " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error (bad arguments): " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error (bad arguments): " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    }
    return 0;
}
