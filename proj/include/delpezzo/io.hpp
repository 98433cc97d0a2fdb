#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "delpezzo/cox.hpp"
#include "delpezzo/errors.hpp"
#include "delpezzo/lattice.hpp"
#include "delpezzo/plane_geometry.hpp"
#include "delpezzo/rational.hpp"

namespace delpezzo::io {

using nlohmann::json;

// Integers stay bare; everything else becomes an "a/b" string.
inline json rat_to_json(const Rat& q) {
    if (q.get_den() == 1 && q.get_num().fits_slong_p()) return q.get_num().get_si();
    return to_string(q);
}

inline Rat rat_from_json(const json& j) {
    if (j.is_number_integer()) return Rat(std::to_string(j.get<long long>()));
    if (j.is_number_unsigned()) return Rat(std::to_string(j.get<unsigned long long>()));
    if (j.is_string()) return parse_rat(j.get<std::string>());
    if (j.is_number_float()) throw InputError("floating-point coordinate " + j.dump() + " rejected; use \"a/b\"");
    throw InputError("expected an integer or \"a/b\" string, got " + j.dump());
}

inline json class_to_json(const PicClass& c) { return json(c.coeffs()); }

inline PicClass class_from_json(const json& j) {
    if (!j.is_array() || j.size() < 4) throw InputError("class must be an integer array of length r+1");
    std::vector<Coeff> c;
    for (const auto& x : j) {
        if (!x.is_number_integer()) throw InputError("class coefficients must be integers");
        c.push_back(x.get<Coeff>());
    }
    const int r = static_cast<int>(c.size()) - 1;
    return PicClass(r, std::move(c));
}

/// {"r": int, "points": [[c, c, c], ...], "seed": int (optional)}
inline json config_to_json(const PointConfig& cfg) {
    json pts = json::array();
    for (const auto& p : cfg.points()) pts.push_back({rat_to_json(p[0]), rat_to_json(p[1]), rat_to_json(p[2])});
    json j{{"r", cfg.r()}, {"points", pts}};
    if (cfg.seed()) j["seed"] = *cfg.seed();
    return j;
}

inline PointConfig config_from_json(const json& j) {
    if (!j.is_object() || !j.contains("r") || !j.contains("points"))
        throw InputError("configuration needs \"r\" and \"points\"");
    if (!j["r"].is_number_integer()) throw InputError("\"r\" must be an integer");
    const int r = j["r"].get<int>();
    std::vector<PlanePoint> pts;
    for (const auto& p : j["points"]) {
        if (!p.is_array() || p.size() != 3) throw InputError("each point needs three coordinates");
        pts.push_back({rat_from_json(p[0]), rat_from_json(p[1]), rat_from_json(p[2])});
    }
    std::optional<std::uint64_t> seed;
    if (j.contains("seed")) seed = j["seed"].get<std::uint64_t>();
    return PointConfig(r, std::move(pts), seed);
}

inline PointConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open configuration file " + path);
    json j;
    try {
        in >> j;
    } catch (const json::parse_error& e) {
        throw InputError(std::string("malformed configuration JSON: ") + e.what());
    }
    return config_from_json(j);
}

inline void save_config(const PointConfig& cfg, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot write " + path);
    out << config_to_json(cfg).dump(2) << '\n';
}

/// {"ruling": [...], "terms": [{"c": "a/b", "pair": [[...], [...]]}, ...]}
inline json relation_to_json(const QuadraticRelation& rel, const GeneratorSet& gs) {
    json terms = json::array();
    for (const auto& t : rel.terms) {
        json pair = json::array();
        for (std::size_t g : {t.a, t.b}) {
            if (gs[g].family)
                pair.push_back(class_to_json(gs[g].cls));
            else
                pair.push_back(gs[g].label);
        }
        terms.push_back({{"c", to_string(t.coeff)}, {"pair", pair}});
    }
    return {{"ruling", class_to_json(rel.ruling)}, {"terms", terms}};
}

inline json poly_to_json(const PlanePoly& p) {
    json terms = json::array();
    for (const auto& [m, c] : p.terms()) terms.push_back({{"exp", {m[0], m[1], m[2]}}, {"c", to_string(c)}});
    return {{"degree", p.degree()}, {"terms", terms}, {"text", p.to_string()}};
}

}  // namespace delpezzo::io
