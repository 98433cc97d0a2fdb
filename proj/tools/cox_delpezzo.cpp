// cox-delpezzo: enumeration dumps, generator sections, ruling relations and
// verification suites for del Pezzo surfaces X_r, 3 <= r <= 8.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "delpezzo/delpezzo.hpp"
#include "delpezzo/io.hpp"
#include "delpezzo/suites.hpp"

using namespace delpezzo;
using nlohmann::json;

namespace {

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

std::string join_coeffs(const PicClass& c, char sep) {
    std::string s;
    for (std::size_t i = 0; i < c.size(); ++i) s += (i ? std::string(1, sep) : "") + std::to_string(c[i]);
    return s;
}

std::string pad(std::string s, std::size_t w) {
    if (s.size() < w) s.append(w - s.size(), ' ');
    return s;
}

int dump_curves(int r, const std::string& format) {
    const auto& ex = exceptional_curves(r);
    if (format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < ex.size(); ++i)
            arr.push_back({{"index", i + 1},
                           {"class", io::class_to_json(ex[i])},
                           {"text", ex[i].to_string()},
                           {"family", classify_family(ex[i]).to_string()}});
        std::cout << json{{"r", r}, {"count", ex.size()}, {"curves", arr}}.dump(2) << '\n';
    } else if (format == "csv") {
        std::cout << "index,class,coefficients,family\n";
        for (std::size_t i = 0; i < ex.size(); ++i)
            std::cout << i + 1 << ',' << ex[i].to_string() << ",\"" << join_coeffs(ex[i], ' ') << "\",\""
                      << classify_family(ex[i]).to_string() << "\"\n";
    } else {
        std::cout << pad("#", 5) << pad("class", 34) << "family\n";
        for (std::size_t i = 0; i < ex.size(); ++i)
            std::cout << pad(std::to_string(i + 1), 5) << pad(ex[i].to_string(), 34)
                      << classify_family(ex[i]).to_string() << '\n';
    }
    return 0;
}

int dump_roots(int r, const std::string& format) {
    const auto& rs = roots(r);
    if (format == "json") {
        json arr = json::array();
        for (const auto& a : rs) arr.push_back(io::class_to_json(a));
        std::cout << json{{"r", r}, {"count", rs.size()}, {"roots", arr}}.dump(2) << '\n';
    } else if (format == "csv") {
        std::cout << "index,class,coefficients\n";
        for (std::size_t i = 0; i < rs.size(); ++i)
            std::cout << i + 1 << ',' << rs[i].to_string() << ",\"" << join_coeffs(rs[i], ' ') << "\"\n";
    } else {
        for (std::size_t i = 0; i < rs.size(); ++i)
            std::cout << pad(std::to_string(i + 1), 5) << rs[i].to_string() << '\n';
    }
    return 0;
}

int dump_rulings(int r, const std::string& format) {
    const auto& rs = rulings(r);
    if (format == "json") {
        json arr = json::array();
        for (std::size_t i = 0; i < rs.size(); ++i) {
            json fibers = json::array();
            for (const auto& f : rs[i].fibers)
                fibers.push_back({io::class_to_json(f.first), io::class_to_json(f.second)});
            arr.push_back({{"index", i + 1}, {"class", io::class_to_json(rs[i].cls)}, {"fibers", fibers}});
        }
        std::cout << json{{"r", r}, {"count", rs.size()}, {"rulings", arr}}.dump(2) << '\n';
    } else {
        for (std::size_t i = 0; i < rs.size(); ++i) {
            std::cout << pad(std::to_string(i + 1), 6) << pad(rs[i].cls.to_string(), 30);
            for (std::size_t k = 0; k < rs[i].fibers.size(); ++k)
                std::cout << (k ? "  " : "") << '(' << rs[i].fibers[k].first.to_string() << " + "
                          << rs[i].fibers[k].second.to_string() << ')';
            std::cout << '\n';
        }
    }
    return 0;
}

int dump_sections(const PointConfig& cfg, const std::string& format) {
    const GeneratorSet gs = build_generators(cfg);
    if (format == "json") {
        json arr = json::array();
        for (const auto& g : gs.gens())
            arr.push_back({{"label", g.label},
                           {"class", io::class_to_json(g.cls)},
                           {"family", g.family ? g.family->to_string() : "Anticanonical"},
                           {"poly", io::poly_to_json(g.poly)}});
        std::cout << json{{"config", io::config_to_json(cfg)}, {"generators", arr}}.dump(2) << '\n';
    } else {
        for (const auto& g : gs.gens())
            std::cout << pad(g.label, 34) << pad(g.family ? g.family->to_string() : "Anticanonical", 32)
                      << g.poly.to_string() << '\n';
    }
    return 0;
}

std::string relation_text(const QuadraticRelation& rel, const GeneratorSet& gs) {
    std::ostringstream os;
    for (std::size_t k = 0; k < rel.terms.size(); ++k) {
        const auto& t = rel.terms[k];
        const Rat mag = abs(t.coeff);
        os << (sgn(t.coeff) < 0 ? (k ? " - " : "-") : (k ? " + " : ""));
        if (mag != 1) os << to_string(mag) << '*';
        os << gs[t.a].label << '*' << gs[t.b].label;
    }
    return os.str() + " = 0";
}

int dump_relations(const PointConfig& cfg, std::optional<std::size_t> ruling_index, const std::string& format) {
    const GeneratorSet gs = build_generators(cfg);
    const auto& rs = rulings(cfg.r());
    std::vector<std::size_t> which;
    if (ruling_index) {
        if (*ruling_index < 1 || *ruling_index > rs.size())
            throw InputError("--ruling must lie in [1, " + std::to_string(rs.size()) + "]");
        which.push_back(*ruling_index - 1);
    } else {
        for (std::size_t i = 0; i < rs.size(); ++i) which.push_back(i);
    }
    std::vector<std::vector<QuadraticRelation>> groups(which.size());
    parallel_for(which.size(), [&](std::size_t k) { groups[k] = ruling_relations(rs[which[k]], gs); });
    if (format == "json") {
        json arr = json::array();
        for (const auto& g : groups)
            for (const auto& rel : g) arr.push_back(io::relation_to_json(rel, gs));
        std::cout << json{{"config", io::config_to_json(cfg)}, {"relations", arr}}.dump(2) << '\n';
    } else {
        for (std::size_t k = 0; k < which.size(); ++k) {
            std::cout << "ruling " << which[k] + 1 << "  " << rs[which[k]].cls.to_string() << '\n';
            for (const auto& rel : groups[k]) std::cout << "  " << relation_text(rel, gs) << '\n';
        }
    }
    return 0;
}

int dump_pluecker(const PointConfig& cfg, const std::string& format) {
    const GeneratorSet gs = build_generators(cfg);
    const auto rep = pluecker_model_r4(gs);
    auto triple = [](const ColumnTriple& t) {
        return "M" + std::to_string(t[0]) + std::to_string(t[1]) + std::to_string(t[2]);
    };
    if (format == "json") {
        json minors = json::array();
        for (const auto& [t, m] : rep.minors) minors.push_back({{"columns", t}, {"poly", io::poly_to_json(m)}});
        json ids = json::array();
        for (const auto& id : rep.identities) {
            json terms = json::array();
            for (const auto& t : id.terms) terms.push_back({{"sign", t.sign}, {"left", t.left}, {"right", t.right}});
            ids.push_back({{"common", id.common}, {"terms", terms}, {"vanishes", id.vanishes}});
        }
        json scal = json::array();
        for (const auto& [cls, s] : rep.scalars) scal.push_back({{"class", io::class_to_json(cls)}, {"scalar", to_string(s)}});
        json prop = json::array();
        for (const auto& [cls, p] : rep.ruling_proportional)
            prop.push_back({{"ruling", io::class_to_json(cls)}, {"proportional", p}});
        std::cout << json{{"config", io::config_to_json(cfg)},
                          {"minors", minors},
                          {"scalars", scal},
                          {"minors_match_sections", rep.minors_match_sections},
                          {"identities", ids},
                          {"rulings", prop},
                          {"note", rep.deviation_note},
                          {"pass", rep.ok()}}
                         .dump(2)
                  << '\n';
    } else {
        for (const auto& [t, m] : rep.minors) std::cout << pad(triple(t), 6) << m.to_string() << '\n';
        for (const auto& id : rep.identities) {
            std::cout << (id.vanishes ? "PASS  " : "FAIL  ");
            for (std::size_t k = 0; k < id.terms.size(); ++k)
                std::cout << (id.terms[k].sign < 0 ? " - " : (k ? " + " : "")) << triple(id.terms[k].left) << '*'
                          << triple(id.terms[k].right);
            std::cout << " = 0\n";
        }
        for (const auto& [cls, p] : rep.ruling_proportional)
            std::cout << (p ? "PASS  " : "FAIL  ") << "ruling " << cls.to_string() << " relation is a Pluecker quadric\n";
        std::cout << "note: " << rep.deviation_note << '\n';
    }
    return rep.ok() ? 0 : kExitFail;
}

int run_verify(int r, const std::string& config_path, std::uint64_t seed, int bound, const std::string& suite,
               const std::string& format) {
    const PointConfig cfg = config_path.empty() ? random_config(r, seed, bound) : io::load_config(config_path);
    if (cfg.r() != r) throw InputError("configuration has r=" + std::to_string(cfg.r()) + ", expected " + std::to_string(r));
    auto rep = suites::run_suite(suite, r, cfg, seed);
    if (!config_path.empty()) rep.inputs["config_path"] = config_path;
    if (format == "json")
        std::cout << rep.to_json().dump(2) << '\n';
    else
        std::cout << rep.to_table();
    if (const auto* f = rep.first_failure()) {
        std::cerr << "check failed: " << f->name << '\n';
        return kExitFail;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Cox rings of del Pezzo surfaces: exceptional curves, generators and ruling relations"};
    app.require_subcommand(1);
    const std::vector<std::string> all_formats{"table", "json", "csv"};
    const std::vector<std::string> table_json{"table", "json"};

    int r = 0;
    std::string format = "table";
    std::string config_path;
    std::string out_path;
    std::uint64_t seed = 1;
    int bound = 20;
    std::optional<std::size_t> ruling_index;
    std::string suite;

    auto add_r = [&](CLI::App* sub) { sub->add_option("--r", r, "number of blown-up points")->required()->check(CLI::Range(3, 8)); };
    auto add_format = [&](CLI::App* sub, const std::vector<std::string>& allowed) {
        sub->add_option("--format", format, "output format")->check(CLI::IsMember(allowed));
    };
    auto add_config = [&](CLI::App* sub, bool required) {
        auto* opt = sub->add_option("--config", config_path, "point configuration JSON");
        if (required) opt->required();
    };

    auto* curves = app.add_subcommand("curves", "list the exceptional curves of X_r");
    add_r(curves);
    add_format(curves, all_formats);
    auto* roots_cmd = app.add_subcommand("roots", "list the roots of X_r");
    add_r(roots_cmd);
    add_format(roots_cmd, all_formats);
    auto* rulings_cmd = app.add_subcommand("rulings", "list the rulings of X_r with their fibers");
    add_r(rulings_cmd);
    add_format(rulings_cmd, table_json);

    auto* sample = app.add_subcommand("sample-config", "draw a configuration in general position");
    add_r(sample);
    sample->add_option("--seed", seed, "random seed");
    sample->add_option("--bound", bound, "coordinate bound")->check(CLI::Range(3, 1000000));
    sample->add_option("--out", out_path, "output file (stdout if omitted)");

    auto* sections = app.add_subcommand("sections", "generator equations for a configuration");
    add_config(sections, true);
    add_format(sections, table_json);
    auto* relations = app.add_subcommand("relations", "ruling relations for a configuration");
    add_config(relations, true);
    relations->add_option("--ruling", ruling_index, "1-based ruling index (all rulings if omitted)");
    add_format(relations, table_json);
    auto* pluecker = app.add_subcommand("pluecker", "the Grassmannian model at r = 4");
    add_config(pluecker, true);
    add_format(pluecker, table_json);

    auto* verify = app.add_subcommand("verify", "run verification suites");
    add_r(verify);
    add_config(verify, false);
    verify->add_option("--seed", seed, "seed for sampled configurations and torsor points");
    verify->add_option("--bound", bound, "coordinate bound for sampled configurations")->check(CLI::Range(3, 1000000));
    verify->add_option("--suite", suite, "suite to run")->required()->check(CLI::IsMember(suites::suite_names()));
    add_format(verify, table_json);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*curves) return dump_curves(r, format);
        if (*roots_cmd) return dump_roots(r, format);
        if (*rulings_cmd) return dump_rulings(r, format);
        if (*sample) {
            const auto cfg = random_config(r, seed, bound);
            if (out_path.empty())
                std::cout << io::config_to_json(cfg).dump(2) << '\n';
            else
                io::save_config(cfg, out_path);
            return 0;
        }
        if (*sections) return dump_sections(io::load_config(config_path), format);
        if (*relations) return dump_relations(io::load_config(config_path), ruling_index, format);
        if (*pluecker) return dump_pluecker(io::load_config(config_path), format);
        if (*verify) return run_verify(r, config_path, seed, bound, suite, format);
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const Error& e) {
        std::cerr << "check failed: " << e.what() << '\n';
        return kExitFail;
    }
    return kExitUsage;
}
