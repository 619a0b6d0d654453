#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "valfan/commands.hpp"
#include "valfan/fanio.hpp"
#include "valfan/fixtures.hpp"
#include "valfan/reduction.hpp"
#include "valfan/render.hpp"
#include "valfan/toric.hpp"

namespace valfan {

using nlohmann::json;

namespace {

std::string err_json(const std::string& code, const std::string& what) {
    return json{{"error", code}, {"detail", what}}.dump(2) + "\n";
}

template <class F> CommandResult guard(F&& f) {
    try {
        return f();
    } catch (const CompletionEngineExhausted& e) {
        return {2, err_json("engine-exhausted", e.what())};
    } catch (const OracleStall& e) {
        return {2, err_json("oracle-stall", e.what())};
    } catch (const ParseError& e) {
        return {3, err_json("parse-error", e.what())};
    } catch (const SemanticError& e) {
        return {3, err_json("semantic-error", e.what())};
    } catch (const Error& e) {
        return {3, err_json("input-error", e.what())};
    }
}

std::vector<SymbolSpec> sqrt_symbols(std::vector<std::pair<std::string, unsigned long>> specs) {
    std::vector<SymbolSpec> out;
    for (auto& [name, n] : specs) {
        SymbolSpec s;
        s.name = name;
        s.kind = SymbolSpec::Kind::Sqrt;
        s.sqrt_arg = n;
        out.push_back(std::move(s));
    }
    return out;
}

json intvec_json(const IntVec& v) {
    json out = json::array();
    for (const auto& x : v) out.push_back(x.get_str());
    return out;
}

IntVec intvec_from(const json& j) {
    IntVec out;
    for (const auto& e : j) out.push_back(Int(e.get<std::string>()));
    return out;
}

json scalarvec_json(const ScalarVec& v) {
    json out = json::array();
    for (const auto& s : v) out.push_back(s.str());
    return out;
}

json trace_json(const std::vector<CompletionStep>& trace) {
    json out = json::array();
    for (const auto& step : trace) {
        json added = json::array();
        for (const auto& c : step.added) {
            json rays = json::array(), lines = json::array();
            for (const auto& r : c.rays) rays.push_back(intvec_json(r));
            for (const auto& l : c.lines) lines.push_back(intvec_json(l));
            added.push_back(json{{"rays", std::move(rays)}, {"lines", std::move(lines)}});
        }
        out.push_back(json{{"strategy", step.strategy},
                           {"ray", intvec_json(step.ray)},
                           {"added", std::move(added)}});
    }
    return out;
}

std::vector<CompletionStep> trace_from_json(const json& j, std::size_t ambient) {
    if (!j.is_array()) throw SemanticError("trace must be an array of steps");
    std::vector<CompletionStep> out;
    for (const auto& s : j) {
        CompletionStep step;
        step.strategy = s.value("strategy", "");
        step.ray = intvec_from(s.value("ray", json::array()));
        for (const auto& c : s.value("added", json::array())) {
            std::vector<RatVec> rays, lines;
            for (const auto& r : c.value("rays", json::array()))
                rays.push_back(to_rat(intvec_from(r)));
            for (const auto& l : c.value("lines", json::array()))
                lines.push_back(to_rat(intvec_from(l)));
            for (const auto& v : rays)
                if (v.size() != ambient) throw SemanticError("trace ray of wrong length");
            step.added.push_back(cone_from_rays(ambient, rays, lines));
        }
        out.push_back(std::move(step));
    }
    return out;
}

EngineConfig engine_config(std::size_t cap, const std::string& strategies, std::uint64_t seed) {
    EngineConfig cfg;
    if (cap) cfg.cap = cap;
    cfg.seed = seed;
    if (!strategies.empty()) {
        cfg.order.clear();
        std::stringstream ss(strategies);
        std::string item;
        while (std::getline(ss, item, ',')) {
            if (item == "star-join") cfg.order.push_back(Strategy::StarJoin);
            else if (item == "contact-fill") cfg.order.push_back(Strategy::ContactFill);
            else if (item == "sliver-fill") cfg.order.push_back(Strategy::SliverFill);
            else throw SemanticError("unknown strategy: " + item);
        }
        if (cfg.order.empty()) throw SemanticError("empty strategy list");
    }
    return cfg;
}

bool same_max_cones(const RationalFan& a, const RationalFan& b) {
    if (a.max.size() != b.max.size()) return false;
    for (const auto& c : a.max) {
        bool found = false;
        for (const auto& d : b.max)
            if (d == c) found = true;
        if (!found) return false;
    }
    return true;
}

json presentation_json(const AlgebraPresentation& p) {
    auto gens_json = [](const std::vector<AlgebraGenerator>& gens) {
        json out = json::array();
        for (const auto& g : gens)
            out.push_back(json{{"u", intvec_json(g.u)}, {"valuation", g.valuation.str()}});
        return out;
    };
    json out;
    json verts = json::array();
    for (const auto& v : p.vertices) verts.push_back(scalarvec_json(v));
    out["vertices"] = std::move(verts);
    json per = json::array();
    for (const auto& gens : p.per_vertex) per.push_back(gens_json(gens));
    out["per_vertex"] = std::move(per);
    out["height_zero"] = gens_json(p.height_zero);
    return out;
}

} // namespace

CommandResult cmd_fixture(const std::string& name, std::size_t n, unsigned long r, std::size_t m) {
    return guard([&]() -> CommandResult {
        FanDocument doc;
        if (name == "dart") {
            auto d = fixtures::dart();
            doc = document_from_fan(d.fan, d.basis, sqrt_symbols({{"alpha", 3}, {"beta", 2}}),
                                    d.gamma);
        } else if (name == "dart-lift") {
            doc = document_from_rational(fixtures::dart_lift());
        } else if (name == "dart-completion") {
            auto d = fixtures::dart();
            doc = document_from_fan(fixtures::dart_completion(d), d.basis,
                                    sqrt_symbols({{"alpha", 3}, {"beta", 2}}), d.gamma);
        } else if (name == "badnorm") {
            auto bn = fixtures::badnorm(n ? n : 2, r ? r : 2);
            doc = document_from_fan(bn.fan, bn.basis, sqrt_symbols({{"sqrt2", 2}}), bn.gamma);
        } else if (name == "thm45") {
            auto t = fixtures::thm45();
            std::vector<SymbolSpec> syms(1);
            syms[0].name = "omega";
            doc = document_from_fan(t.fan, t.basis, std::move(syms), t.gamma);
            doc.oracle = OracleKind::Lexicographic;
        } else if (name == "model") {
            auto d = fixtures::dart();
            std::size_t nn = n ? n : 2, mm = m ? m : 1;
            if (mm > nn) throw SemanticError("model needs m <= n");
            Fan fan = Fan::from_max(nn, {fixtures::model_cone(mm, nn, d.alpha)});
            doc = document_from_fan(fan, d.basis, sqrt_symbols({{"alpha", 3}, {"beta", 2}}),
                                    ValueGroup::make({d.alpha}));
        } else {
            throw SemanticError("unknown fixture: " + name);
        }
        return {0, emit_fan_document(doc)};
    });
}

CommandResult cmd_check(const std::string& text, const std::string& against_text) {
    return guard([&]() -> CommandResult {
        FanDocument doc = parse_fan_document(text);
        json report;
        report["kind"] = doc.kind;

        if (!against_text.empty()) {
            FanDocument sub = parse_fan_document(against_text);
            if (sub.kind != doc.kind)
                throw SemanticError("cannot compare a " + sub.kind + " subfan against a " +
                                    doc.kind + " document");
            CompletionVerdict v = doc.fan ? verify_completion(*sub.fan, *doc.fan)
                                          : verify_completion(*sub.rational, *doc.rational);
            report["completes"] = v.ok;
            if (!v.ok) report["detail"] = v.detail;
            return {v.ok ? 0 : 1, report.dump(2) + "\n"};
        }

        bool negative = false;
        if (doc.fan) {
            auto comp = is_complete(*doc.fan);
            report["complete"] = comp.complete;
            if (!comp.complete) report["completeness_detail"] = comp.detail;
            if (doc.group) {
                auto adm = is_admissible_fan(*doc.fan, *doc.group);
                report["admissible"] = adm.verdict;
                if (!adm.verdict) {
                    report["admissibility_detail"] = adm.detail;
                    negative = true;
                }
                auto ft = finite_type(*doc.fan, *doc.group);
                json wit = json::array();
                for (const auto& w : ft.witnesses) wit.push_back(scalarvec_json(w));
                report["finite_type"] = json{{"verdict", ft.verdict}, {"witnesses", wit}};
            } else {
                report["admissible"] = nullptr; // no value group declared
            }
        } else {
            auto comp = is_complete(*doc.rational);
            report["complete"] = comp.complete;
            if (!comp.complete) report["completeness_detail"] = comp.detail;
        }
        report["fan_axiom"] = true; // parsing already verified it
        return {negative ? 1 : 0, report.dump(2) + "\n"};
    });
}

CommandResult cmd_reduce(const std::string& text) {
    return guard([&]() -> CommandResult {
        FanDocument doc = parse_fan_document(text);
        if (!doc.fan) throw SemanticError("reduce needs a half-space document");
        if (!doc.group) throw SemanticError("reduce needs a value group");
        ReductionResult r = reduce(*doc.fan, *doc.group);
        FanDocument out = document_from_rational(r.lifted);
        out.metadata["k"] = r.k;
        out.metadata["gamma_bar"] = scalarvec_json(r.gamma_bar);
        out.metadata["correspondence"] = r.correspondence;
        out.metadata["source_names"] = doc.names;
        return {0, emit_fan_document(out)};
    });
}

CommandResult cmd_complete(const std::string& text, std::size_t cap, const std::string& strategies,
                           std::uint64_t seed, const std::string& replay_text) {
    return guard([&]() -> CommandResult {
        FanDocument doc = parse_fan_document(text);
        EngineConfig cfg = engine_config(cap, strategies, seed);

        if (!replay_text.empty()) {
            if (!doc.rational) throw SemanticError("replay needs a full-kind input");
            FanDocument recorded = parse_fan_document(replay_text);
            if (!recorded.rational || !recorded.metadata.contains("trace"))
                throw SemanticError("replay document carries no trace");
            auto steps = trace_from_json(recorded.metadata.at("trace"), doc.ambient);
            RationalFan got = replay(*doc.rational, steps);
            FanDocument out = document_from_rational(got);
            out.metadata["trace"] = recorded.metadata.at("trace");
            out.metadata["replayed"] = true;
            if (!same_max_cones(got, *recorded.rational))
                return {1, err_json("replay-mismatch",
                                    "the replayed trace does not reproduce the recorded fan")};
            return {0, emit_fan_document(out)};
        }

        if (doc.fan) {
            if (!doc.group) throw SemanticError("completion needs a value group");
            Fan completed = complete_admissible(*doc.fan, *doc.group, cfg);
            FanDocument out = document_from_fan(completed, doc.basis, doc.symbols, doc.group);
            out.oracle = doc.oracle;
            out.metadata["complete"] = true;
            out.metadata["verified"] = true;
            return {0, emit_fan_document(out)};
        }

        CompletionReport report = complete_rational(*doc.rational, cfg);
        FanDocument out = document_from_rational(report.fan);
        out.metadata["trace"] = trace_json(report.trace);
        out.metadata["complete"] = report.complete;
        if (!report.complete)
            return {2, err_json("engine-exhausted",
                                "cap of " + std::to_string(cfg.cap) + " steps hit")};
        return {0, emit_fan_document(out)};
    });
}

CommandResult cmd_toric_report(const std::string& text) {
    return guard([&]() -> CommandResult {
        FanDocument doc = parse_fan_document(text);
        if (!doc.fan) throw SemanticError("toric-report needs a half-space document");
        if (!doc.group) throw SemanticError("toric-report needs a value group");
        const Fan& fan = *doc.fan;
        const ValueGroup& g = *doc.group;

        json report;
        auto ft = finite_type(fan, g);
        json wit = json::array();
        for (const auto& w : ft.witnesses) wit.push_back(scalarvec_json(w));
        report["finite_type"] = json{{"verdict", ft.verdict}, {"witnesses", wit}};

        SemistabilityReport ss = semistable_necessary(fan, g);
        json sj{{"verdict", ss.verdict}, {"necessary_ok", ss.necessary_ok}};
        if (ss.witness) sj["witness_face"] = *ss.witness;
        report["semistable"] = std::move(sj);

        json faces = json::array();
        for (const auto& f : ss.complex.faces) {
            json verts = json::array();
            for (const auto& v : f.vertices) verts.push_back(scalarvec_json(v));
            faces.push_back(json{{"dim", f.dim}, {"vertices", verts}, {"subfaces", f.subfaces}});
        }
        report["dual_complex"] = std::move(faces);

        json cones = json::array();
        const auto& max = fan.max_cones();
        for (std::size_t i = 0; i < max.size(); ++i) {
            json cj;
            cj["name"] = i < doc.names.size() ? doc.names[i] : "sigma" + std::to_string(i + 1);
            if (i < ss.models.size() && ss.models[i])
                cj["segment_model"] = json{{"length", ss.models[i]->length.str()},
                                           {"torus_rank", ss.models[i]->torus_rank}};
            else
                cj["segment_model"] = nullptr;
            try {
                cj["presentation"] = presentation_json(algebra_presentation(max[i], g));
            } catch (const NotFiniteType& e) {
                cj["presentation"] = json{{"error", "not-finite-type"}, {"detail", e.what()}};
            } catch (const DimensionTooLarge& e) {
                cj["presentation"] = json{{"error", "dimension-too-large"}, {"detail", e.what()}};
            }
            cones.push_back(std::move(cj));
        }
        report["cones"] = std::move(cones);
        return {0, report.dump(2) + "\n"};
    });
}

CommandResult cmd_render(const std::string& text, int depth) {
    return guard([&]() -> CommandResult {
        FanDocument doc = parse_fan_document(text);
        if (!doc.fan) throw SemanticError("render needs a half-space document");
        return {0, render_svg(*doc.fan, depth)};
    });
}

namespace {

/// "-" means stdin. Missing files surface as exit 3.
std::optional<std::string> slurp(const std::string& path) {
    if (path == "-") {
        std::ostringstream ss;
        ss << std::cin.rdbuf();
        return ss.str();
    }
    std::ifstream in(path);
    if (!in) return std::nullopt;
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

int deliver(const CommandResult& result, const std::string& out_path) {
    if (result.exit_code >= 2) {
        std::cerr << result.output;
        return result.exit_code;
    }
    if (out_path.empty() || out_path == "-") {
        std::cout << result.output;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << err_json("io-error", "cannot write " + out_path);
            return 3;
        }
        out << result.output;
    }
    return result.exit_code;
}

} // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"exact fans over rank-one value groups: admissibility, "
                 "noetherian reduction, completion, toric reports"};
    app.require_subcommand(1);

    std::string input = "-", against, replay_path, out_path, strategies, fixture_name;
    std::size_t cap = 0, fix_n = 0, fix_m = 0;
    unsigned long fix_r = 0;
    std::uint64_t seed = 0x5EED;
    int depth = 24;

    auto* fixture = app.add_subcommand("fixture", "emit a built-in fan document");
    fixture->add_option("name", fixture_name,
                        "dart | dart-lift | dart-completion | badnorm | thm45 | model")
        ->required();
    fixture->add_option("--n", fix_n, "ambient dimension (badnorm, model)");
    fixture->add_option("--r", fix_r, "ramification order (badnorm)");
    fixture->add_option("--m", fix_m, "slab dimension (model)");
    fixture->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* check = app.add_subcommand("check", "admissibility / completeness report");
    check->add_option("file", input, "fan document, - for stdin");
    check->add_option("--against", against, "verify this document completes the given subfan");
    check->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* reduce_cmd = app.add_subcommand("reduce", "noetherian reduction to a rational lift");
    reduce_cmd->add_option("file", input, "fan document, - for stdin");
    reduce_cmd->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* complete = app.add_subcommand("complete", "admissible completion");
    complete->add_option("file", input, "fan document, - for stdin");
    complete->add_option("--engine-cap", cap, "max engine steps (default 10000)");
    complete->add_option("--strategy", strategies,
                         "comma list of star-join, contact-fill, sliver-fill");
    complete->add_option("--seed", seed, "sampling seed for facet selection");
    complete->add_option("--replay", replay_path, "re-commit the trace of this completion");
    complete->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* toric = app.add_subcommand("toric-report", "coordinate algebras and dual complex");
    toric->add_option("file", input, "fan document, - for stdin");
    toric->add_option("-o,--output", out_path, "output file (default stdout)");

    auto* render = app.add_subcommand("render", "SVG of the height-one complex");
    render->add_option("file", input, "fan document, - for stdin");
    render->add_option("--render-depth", depth, "enclosure refinement depth (default 24)");
    render->add_option("-o,--output", out_path, "output file (default stdout)");

    try {
        std::vector<std::string> rev(args.rbegin(), args.rend());
        app.parse(rev); // CLI11 consumes reversed argv without the program name
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    if (fixture->parsed()) return deliver(cmd_fixture(fixture_name, fix_n, fix_r, fix_m), out_path);

    auto text = slurp(input);
    if (!text) {
        std::cerr << err_json("io-error", "cannot read " + input);
        return 3;
    }
    if (check->parsed()) {
        std::string against_text;
        if (!against.empty()) {
            auto sub = slurp(against);
            if (!sub) {
                std::cerr << err_json("io-error", "cannot read " + against);
                return 3;
            }
            against_text = *sub;
        }
        return deliver(cmd_check(*text, against_text), out_path);
    }
    if (reduce_cmd->parsed()) return deliver(cmd_reduce(*text), out_path);
    if (complete->parsed()) {
        std::string replay_text;
        if (!replay_path.empty()) {
            auto rec = slurp(replay_path);
            if (!rec) {
                std::cerr << err_json("io-error", "cannot read " + replay_path);
                return 3;
            }
            replay_text = *rec;
        }
        return deliver(cmd_complete(*text, cap, strategies, seed, replay_text), out_path);
    }
    if (toric->parsed()) return deliver(cmd_toric_report(*text), out_path);
    if (render->parsed()) return deliver(cmd_render(*text, depth), out_path);
    return 3;
}

} // namespace valfan
