#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "delpezzo/cox.hpp"
#include "delpezzo/enumeration.hpp"
#include "delpezzo/io.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/plane_geometry.hpp"
#include "delpezzo/weyl.hpp"

namespace delpezzo::suites {

using nlohmann::json;

struct Check {
    std::string name;
    json expected;
    json actual;
    bool pass = false;
};

struct RunReport {
    std::string command;
    json inputs = json::object();
    std::vector<Check> checks;

    void add(std::string name, json expected, json actual) {
        const bool pass = expected == actual;
        checks.push_back({std::move(name), std::move(expected), std::move(actual), pass});
    }
    bool all_pass() const {
        for (const auto& c : checks)
            if (!c.pass) return false;
        return true;
    }
    const Check* first_failure() const {
        for (const auto& c : checks)
            if (!c.pass) return &c;
        return nullptr;
    }

    json to_json() const {
        json cs = json::array();
        for (const auto& c : checks)
            cs.push_back({{"name", c.name}, {"expected", c.expected}, {"actual", c.actual}, {"pass", c.pass}});
        return {{"command", command}, {"inputs", inputs}, {"checks", cs}, {"pass", all_pass()}};
    }

    std::string to_table() const {
        std::size_t w = 5;
        for (const auto& c : checks) w = std::max(w, c.name.size());
        std::ostringstream os;
        for (const auto& c : checks) {
            os << (c.pass ? "PASS  " : "FAIL  ") << c.name << std::string(w - c.name.size() + 2, ' ')
               << "expected " << c.expected.dump() << "  actual " << c.actual.dump() << '\n';
        }
        os << (all_pass() ? "all checks passed" : "some checks FAILED") << " (" << checks.size() << " checks)\n";
        return os.str();
    }
};

/// Ruling counts obtained by exhaustive lattice search, r = 3..8.
inline std::size_t ruling_count_table(int r) {
    require_surface_index(r);
    static constexpr std::array<std::size_t, 6> n{3, 5, 10, 27, 126, 2160};
    return n[static_cast<std::size_t>(r - kMinR)];
}

inline std::size_t root_count_table(int r) {
    require_surface_index(r);
    static constexpr std::array<std::size_t, 6> n{8, 20, 40, 72, 126, 240};
    return n[static_cast<std::size_t>(r - kMinR)];
}

inline void counts_suite(int r, RunReport& rep) {
    const auto& ex = exceptional_curves(r);
    rep.add("exceptional_curves.count", exceptional_count_table(r), ex.size());
    rep.add("exceptional_curves.lattice_search_agrees", true, lattice_solutions(r, -1, 1) == ex);
    rep.add("exceptional_curves.orbit_agrees", true, orbit(PicClass::basis(r, r)).sorted_elements() == ex);
    rep.add("roots.count", root_count_table(r), roots(r).size());
    rep.add("roots.orbit_agrees", true, orbit(simple_roots(r)[0]).sorted_elements() == roots(r));
    rep.add("rulings.count", ruling_count_table(r), rulings(r).size());
    std::vector<PicClass> ruling_classes;
    bool fibers_ok = true;
    for (const auto& ru : rulings(r)) {
        ruling_classes.push_back(ru.cls);
        fibers_ok = fibers_ok && ru.fibers.size() == static_cast<std::size_t>(r - 1);
    }
    rep.add("rulings.orbit_agrees", true,
            orbit(PicClass::basis(r, 0) - PicClass::basis(r, 1)).sorted_elements() == ruling_classes);
    rep.add("rulings.fibers_per_ruling", r - 1, fibers_ok ? r - 1 : -1);
    if (r >= 4 && r <= 7) rep.add("anticanonical_decompositions", true, verify_anticanonical_decompositions(r));
}

inline void weyl_suite(int r, RunReport& rep) {
    auto words_reproduce = [](const OrbitResult& o) {
        for (const auto& x : o.elements())
            if (apply_word(o.seed(), o.word(x)) != x) return false;
        return true;
    };
    const auto curves = orbit(PicClass::basis(r, r));
    const auto rts = orbit(simple_roots(r)[0]);
    const auto rul = orbit(PicClass::basis(r, 0) - PicClass::basis(r, 1));
    rep.add("orbit(l_r).size", exceptional_count_table(r), curves.size());
    rep.add("orbit(l_r).words_reproduce", true, words_reproduce(curves));
    rep.add("orbit(alpha_1).size", root_count_table(r), rts.size());
    rep.add("orbit(alpha_1).words_reproduce", true, words_reproduce(rts));
    rep.add("orbit(l0-l1).size", ruling_count_table(r), rul.size());
    rep.add("orbit(l0-l1).words_reproduce", true, words_reproduce(rul));
    const auto census = exceptional_weight_census(r);
    rep.add("weight_vector.injective_on_curves", true, census.injective);
    rep.add("weight_map.kernel_is_K", true, [&] {
        auto k = weight_map_kernel(r);
        if (k.size() != 1) return false;
        const PicClass kc = canonical_class(r);
        for (std::size_t j = 0; j < k[0].size(); ++j)
            if (k[0][j] * Rat(static_cast<long>(kc[0])) != k[0][0] * Rat(static_cast<long>(kc[j]))) return false;
        return true;
    }());
    if (r >= 4 && r <= 7) rep.add("weights.dimension_d_r", fundamental_dimension(r), census.nonzero_weights);
    if (r == 8) {
        rep.add("weights.nonzero", 240, census.nonzero_weights);
        rep.add("weights.zero_multiplicity", 8, census.zero_multiplicity);
        rep.add("weights.dimension_d_8", fundamental_dimension(8), census.total());
    }
}

inline void relations_suite(const GeneratorSet& gs, RunReport& rep) {
    const int r = gs.r();
    const auto groups = all_ruling_relations(gs);
    std::size_t total = 0, good = 0;
    bool identities = true;
    for (const auto& g : groups) {
        total += g.size();
        if (g.size() == static_cast<std::size_t>(r - 3)) ++good;
        for (const auto& rel : g) identities = identities && relation_polynomial(rel, gs).is_zero();
    }
    rep.add("relations.rulings_with_r-3_relations", rulings(r).size(), good);
    rep.add("relations.total", rulings(r).size() * static_cast<std::size_t>(r - 3), total);
    rep.add("relations.polynomial_identities", true, identities);
    // All quadratic relations, ruling or not; outside ruling degrees the count is
    // products minus h^0 of the moving part.
    const auto census = quadratic_relation_census(gs);
    std::size_t rr_outside = 0;
    for (const auto& d : census.degrees)
        if (!d.is_ruling) {
            const auto h = static_cast<std::size_t>(h0_dim(peel_fixed_components(d.cls).first));
            rr_outside += d.products > h ? d.products - h : 0;
        }
    rep.add("quadratic.relations_in_ruling_degrees", total, census.in_ruling_degrees);
    rep.add("quadratic.relations_outside_ruling_degrees", rr_outside, census.outside_ruling_degrees());
    if (r == 4) {
        const auto pl = pluecker_model_r4(gs);
        rep.add("pluecker.identities_vanish", 5, static_cast<int>(std::count_if(pl.identities.begin(), pl.identities.end(),
                                                                                  [](const auto& i) { return i.vanishes; })));
        rep.add("pluecker.minors_match_sections", true, pl.minors_match_sections);
        rep.add("pluecker.rulings_proportional", 5,
                static_cast<int>(std::count_if(pl.ruling_proportional.begin(), pl.ruling_proportional.end(),
                                               [](const auto& p) { return p.second; })));
    }
    if (r >= 4) {
        const auto bd = verify_blowdown(gs);
        rep.add("blowdown.disjoint_from_l_r", exceptional_count_table(r - 1 < kMinR ? kMinR : r - 1),
                bd.disjoint_from_last);
        rep.add("blowdown.contraction_matches", true, bd.contraction_matches);
        rep.add("blowdown.sections_pull_back", true, bd.sections_pull_back);
        rep.add("blowdown.relations_map", true, bd.relations_map);
    }
}

inline void generation_suite(const GeneratorSet& gs, RunReport& rep) {
    const int r = gs.r();
    if (r <= 7) {
        const Coeff max_deg = r <= 6 ? 3 : 2;
        std::size_t classes = 0, good = 0;
        for (Coeff d = 1; d <= max_deg; ++d)
            for (const auto& cls : nef_classes_of_degree(r, d)) {
                ++classes;
                const auto g = verify_degree_one_generation(cls, gs);
                if (g.pass()) ++good;
            }
        rep.add("generation.nef_classes_deg<=" + std::to_string(max_deg), classes, good);
        rep.add("generation.anticanonical_rank", h0_dim(anticanonical_class(r)),
                verify_degree_one_generation(anticanonical_class(r), gs).rank);
    } else {
        const PicClass two_k = 2 * anticanonical_class(r);
        rep.add("generation.-2K_pairs_with_intersection_3", 120, pairs_with_intersection(r, 3, two_k).size());
        rep.add("generation.-2K_curve_pair_rank", 4, verify_degree_one_generation(two_k, gs, true).rank);
        rep.add("generation.-2K_all_products_rank", 4, verify_degree_one_generation(two_k, gs).rank);
        const PicClass ke = anticanonical_class(r) + PicClass::basis(r, r);
        rep.add("generation.-K+E_rank", 3, verify_degree_one_generation(ke, gs).rank);
        rep.add("generation.anticanonical_rank", 2, verify_degree_one_generation(anticanonical_class(r), gs).rank);
    }
}

inline void jacobian_suite(const GeneratorSet& gs, std::uint64_t seed, RunReport& rep) {
    const int r = gs.r();
    if (r < 4 || r > 6) return;
    const auto jr = jacobian_codim_check(gs, 5, seed);
    rep.add("jacobian.relations_vanish_at_samples", true, jr.relations_vanish);
    json ranks = jr.ranks;
    rep.add("jacobian.rank_at_samples", json(std::vector<std::size_t>(jr.ranks.size(), jr.expected_rank)), ranks);
    rep.add("jacobian.expected_rank", static_cast<std::size_t>(exceptional_count_table(r) - static_cast<std::size_t>(r + 3)),
            jr.expected_rank);
}

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"counts", "weyl", "relations", "generation", "jacobian", "all"};
    return names;
}

/// Runs a named suite. Suites that need a configuration build generators from
/// `cfg` (sampled by the caller when none is given).
inline RunReport run_suite(const std::string& suite, int r, const PointConfig& cfg, std::uint64_t seed) {
    RunReport rep;
    rep.command = "verify";
    rep.inputs = {{"r", r}, {"suite", suite}, {"seed", seed}, {"config", io::config_to_json(cfg)}};
    const bool all = suite == "all";
    if (all || suite == "counts") counts_suite(r, rep);
    if (all || suite == "weyl") weyl_suite(r, rep);
    const bool needs_gens = all || suite == "relations" || suite == "generation" || suite == "jacobian";
    if (needs_gens) {
        const GeneratorSet gs = build_generators(cfg);
        if (all || suite == "relations") relations_suite(gs, rep);
        if (all || suite == "generation") generation_suite(gs, rep);
        if (all || suite == "jacobian") jacobian_suite(gs, seed, rep);
    }
    return rep;
}

}  // namespace delpezzo::suites
