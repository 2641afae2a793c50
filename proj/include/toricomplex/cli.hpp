#pragma once

// Command-line frontend.  Every command assembles a JSON report; the text
// format is a rendering of the same report, so both carry the same values.
//
// Exit codes: 0 success, 1 validation error, 2 a checked property failed on
// the instance, 3 I/O or parse error.

#include "adjunction.hpp"
#include "conecox.hpp"
#include "io.hpp"
#include "suites.hpp"

#include <CLI11.hpp>

namespace toricomplex::cli {

enum Exit : int { Ok = 0, Validation = 1, CheckFailed = 2, InputError = 3 };

inline int exit_code(ErrorKind k) {
    switch (k) {
    case ErrorKind::ParseError:
    case ErrorKind::IoError: return InputError;
    case ErrorKind::TheoremCheckFailed: return CheckFailed;
    default: return Validation;
    }
}

struct JobSpec {
    std::string command;  // "complexity", "check contract", ...
    std::string input;
    std::string format = "text";
    std::string mode;     // override: projective | local[:k] | birational
    unsigned orbifold_cap = 12;
    unsigned partition_limit = 16;
    unsigned threads = 0;
    bool torsion_cover = false;
    std::optional<std::size_t> center;
    std::string vector;
    bool dual = false;
    std::size_t cone = 0;

    MinimizeOptions minimize_options() const { return MinimizeOptions{orbifold_cap, partition_limit, threads}; }
};

struct Outcome {
    std::string headline;
    Json report;
    int code = Ok;
};

// ---- text rendering ------------------------------------------------------------

namespace detail {

inline std::string scalar_text(const Json& j) {
    if (j.is_string()) return j.get<std::string>();
    return j.dump();
}

inline bool is_decomposition(const Json& j) {
    return j.is_object() && j.size() == 2 && j.contains("decomposition") && j.contains("orbifold");
}

// "D0 + 1/2 D1 + (D2 + D3)  [orbifold 0:2]"
inline std::string formula(const Json& d) {
    std::string s;
    for (const auto& part : d["decomposition"]) {
        std::string b = part["b"].get<std::string>();
        const Json& sup = part["support"];
        std::string body;
        for (const auto& [ray, c] : sup.items()) {
            std::string cs = c.get<std::string>();
            body += (body.empty() ? "" : " + ") + (cs == "1" ? "" : cs + " ") + "D" + ray;
        }
        bool prime = sup.size() == 1 && sup.begin()->get<std::string>() == "1";
        std::string term = (b == "1" ? "" : b + " ") + (prime ? body : "(" + body + ")");
        s += (s.empty() ? "" : " + ") + term;
    }
    if (s.empty()) s = "0";
    if (!d["orbifold"].empty()) {
        std::string o;
        for (const auto& [ray, n] : d["orbifold"].items()) o += (o.empty() ? "" : ", ") + ray + ":" + scalar_text(n);
        s += "  [orbifold " + o + "]";
    }
    return s;
}

inline std::string inline_text(const Json& j) {
    if (!j.is_array()) return scalar_text(j);
    std::string s = "[";
    for (std::size_t k = 0; k < j.size(); ++k) s += (k ? ", " : "") + inline_text(j[k]);
    return s + "]";
}

inline bool has_objects(const Json& j) {
    return std::any_of(j.begin(), j.end(), [](const Json& x) { return x.is_object(); });
}

inline void render(const Json& j, int depth, std::ostream& out) {
    std::string pad(static_cast<std::size_t>(depth) * 2, ' ');
    for (const auto& [key, val] : j.items()) {
        if (is_decomposition(val)) {
            out << pad << key << ": " << formula(val) << "\n";
        } else if (val.is_object()) {
            out << pad << key << ":\n";
            render(val, depth + 1, out);
        } else if (val.is_array() && has_objects(val)) {
            out << pad << key << ":\n";
            for (const auto& item : val) {
                if (item.is_object()) {
                    out << pad << "  -\n";
                    render(item, depth + 2, out);
                } else {
                    out << pad << "  - " << inline_text(item) << "\n";
                }
            }
        } else {
            out << pad << key << ": " << inline_text(val) << "\n";
        }
    }
}

}  // namespace detail

inline void emit(const Outcome& o, const std::string& format, std::ostream& out) {
    if (format == "json") {
        out << dump(o.report);
        return;
    }
    out << o.headline << "\n";
    detail::render(o.report, 1, out);
}

// ---- inputs ---------------------------------------------------------------------

namespace detail {

inline Mode apply_mode_override(const std::string& flag, const Mode& from_doc) {
    if (flag.empty()) return from_doc;
    if (flag == "projective") return Mode::projective();
    if (flag == "birational") {
        if (from_doc.kind != ModeKind::Birational)
            fail(ErrorKind::InvalidArgument, "--mode birational needs mode.base in the input document");
        return from_doc;
    }
    if (flag == "local") return from_doc.kind == ModeKind::Local ? from_doc : Mode::local(0);
    if (flag.rfind("local:", 0) == 0) {
        std::string k = flag.substr(6);
        if (k.empty() || !std::all_of(k.begin(), k.end(), [](char c) { return c >= '0' && c <= '9'; }) || k.size() > 9)
            fail(ErrorKind::InvalidArgument, "--mode local:<cone index> expects a cone index, got '" + k + "'");
        return Mode::local(static_cast<std::size_t>(std::stoul(k)));
    }
    fail(ErrorKind::InvalidArgument, "unknown --mode '" + flag + "' (projective, local[:k], birational)");
}

inline PairData load_pair(const Json& doc, const JobSpec& spec) {
    PairData p = pair_from_json(doc);
    p.mode = apply_mode_override(spec.mode, p.mode);
    return p;
}

inline IntVec parse_vector(const std::string& s) {
    IntVec v;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) v.push_back(parse_rat(item).get_num());
    return v;
}

// Prime components of B through the fixed point / fiber.
inline OrbifoldDecomposition default_sigma(const Fan& f, const InvariantDivisor& b, const Mode& mode) {
    return prime_decomposition(make_context(f, mode), b);
}

inline Json values_json(const SideValues& v) {
    Json j{{"c_orb", io::to_json(v.c_orb)}};
    if (v.c) j["c"] = io::to_json(*v.c);
    if (v.c_fine) j["c_fine"] = io::to_json(*v.c_fine);
    return j;
}

inline std::string triple(const Rat& c, const Rat& cf, const Rat& co) {
    return "(c, c_fine, c_orb) = (" + to_string(c) + ", " + to_string(cf) + ", " + to_string(co) + ")";
}

}  // namespace detail

// ---- commands --------------------------------------------------------------------

inline Outcome cmd_validate(const Json& doc, const JobSpec& spec) {
    PairData p = detail::load_pair(doc, spec);
    auto issues = check_pair(p);
    Outcome o;
    Json list = Json::array();
    for (const auto& i : issues) list.push_back(Json{{"kind", kind_name(i.kind)}, {"message", i.message}});
    if (issues.empty()) {
        auto sigma = decomposition_from_json(doc, p.fan.num_rays());
        if (sigma) {
            try {
                validate_decomposition(make_context(p.fan, p.mode), p.boundary, *sigma, true);
            } catch (const Error& e) {
                list.push_back(Json{{"kind", kind_name(e.kind())}, {"message", e.what()}});
            }
        }
    }
    o.report = Json{{"command", "validate"}, {"valid", list.empty()}, {"issues", list}, {"mode", to_json(p.mode)}};
    if (list.empty()) {
        ToricPair tp = build_pair(p);
        o.report["log_cy"] = tp.log_cy;
        o.report["simplicial"] = is_simplicial(p.fan);
        o.report["smooth"] = is_smooth(p.fan);
        o.report["complete"] = is_complete(p.fan);
    }
    o.headline = list.empty() ? "valid" : "invalid: " + std::to_string(list.size()) + " issue(s)";
    o.code = list.empty() ? Ok : Validation;
    return o;
}

inline Outcome cmd_classgroup(const Json& doc, const JobSpec&) {
    require_schema(doc);
    Fan f = fan_from_json(doc, "document");
    require_valid(f);
    auto g = class_group(f);
    Json classes = Json::array();
    for (std::size_t i = 0; i < f.num_rays(); ++i) {
        IntVec unit(f.num_rays(), Int(0));
        unit[i] = 1;
        classes.push_back(io::to_json(g.class_of(unit)));
    }
    Json local = Json::array();
    for (std::size_t c = 0; c < f.max_cones.size(); ++c) {
        if (!is_full_dimensional(f, f.max_cones[c])) continue;
        auto lg = local_class_group(f, c);
        local.push_back(Json{{"cone", c},
                             {"rays", io::index_json(lg.rays)},
                             {"group", lg.group.describe()},
                             {"free_rank", lg.group.free_rank},
                             {"torsion", io::to_json(lg.group.torsion)}});
    }
    Outcome o;
    o.report = Json{{"command", "classgroup"},  {"group", g.describe()}, {"free_rank", g.free_rank},
                    {"torsion", io::to_json(g.torsion)}, {"ray_classes", classes}, {"local", local}};
    o.headline = "Cl = " + g.describe();
    return o;
}

inline Outcome complexity_outcome(const Json& doc, const JobSpec& spec, bool full) {
    PairData p = detail::load_pair(doc, spec);
    ToricPair tp = build_pair(p);
    auto rep = minimize(tp, spec.minimize_options());
    Outcome o;
    o.report = Json{{"command", full ? "minimize" : "complexity"},
                    {"claim", "complexity-inequality-chain"},
                    {"search_space", "invariant"},
                    {"mode", to_json(tp.mode)},
                    {"log_cy", tp.log_cy},
                    {"dim", rep.dim},
                    {"class_rank", rep.class_rank},
                    {"c", io::to_json(rep.c)},
                    {"c_fine", io::to_json(rep.c_fine)},
                    {"c_orb", io::to_json(rep.c_orb)},
                    {"sigma", to_json(rep.sigma_orb)}};
    if (full) {
        o.report["sigma_c"] = to_json(rep.sigma_c);
        o.report["sigma_fine"] = to_json(rep.sigma_fine);
        o.report["span_fine"] = rep.span_fine;
        o.report["span_orb"] = rep.span_orb;
        o.report["orbifold_cap"] = spec.orbifold_cap;
    }
    if (auto given = decomposition_from_json(doc, tp.fan.num_rays())) {
        auto ctx = make_context(tp);
        SideValues v;
        v.c_orb = orbifold_complexity(ctx, tp.boundary, *given);
        if (given->trivial_orbifold()) {
            v.c = complexity(ctx, tp.boundary, *given);
            v.c_fine = fine_complexity(ctx, tp.boundary, *given);
        }
        o.report["given"] = detail::values_json(v);
        if (v.c_orb < rep.c_orb) fail(ErrorKind::TheoremCheckFailed, "given decomposition beats the computed orbifold minimum");
    }
    o.headline = detail::triple(rep.c, rep.c_fine, rep.c_orb);
    return o;
}

inline Outcome cmd_adjoin(const Json& doc, const JobSpec& spec) {
    PairData p = detail::load_pair(doc, spec);
    ToricPair tp = build_pair(p);
    std::size_t rho;
    if (spec.center) rho = *spec.center;
    else if (doc.contains("center")) rho = io::index_from_json(doc["center"], "center");
    else fail(ErrorKind::InvalidArgument, "adjoin needs --center or \"center\" in the input");
    auto sigma = decomposition_from_json(doc, tp.fan.num_rays());
    auto r = adjoin(tp, sigma ? *sigma : detail::default_sigma(tp.fan, tp.boundary, tp.mode), rho);
    auto d = equality_diagnostics(r, spec.minimize_options());
    Outcome o;
    o.report = Json{{"command", "adjoin"},
                    {"claim", "adjunction-does-not-increase-orbifold-complexity"},
                    {"center", rho},
                    {"mode_on_center", to_json(r.mode)},
                    {"center_fan", to_json(r.star.fan)},
                    {"partner", io::index_json(r.star.partner)},
                    {"different", io::to_json(r.different)},
                    {"nef_trace", io::to_json(r.nef_trace)},
                    {"orbifold_on_center", io::to_json(r.orbifold.index)},
                    {"special_points", io::index_json(r.orbifold.special)},
                    {"normalized", r.normalized},
                    {"sigma", to_json(r.source)},
                    {"sigma_center", to_json(r.sigma)},
                    {"c_orb_input", io::to_json(r.c_orb_source_input)},
                    {"c_orb", io::to_json(r.c_orb_source)},
                    {"c_orb_center", io::to_json(r.c_orb_center)},
                    {"equality", Json{{"equal", d.equality},
                                      {"minimal", d.minimal},
                                      {"full_span", d.full_span},
                                      {"sigma_equals_different", d.sigma_equals_different},
                                      {"special_empty", d.special_empty},
                                      {"holds", d.holds()}}}};
    o.headline = "c_orb(E) = " + to_string(r.c_orb_center) + " <= c_orb(X) = " + to_string(r.c_orb_source);
    if (!d.holds()) {
        o.headline += "; equality diagnostics FAILED";
        o.code = CheckFailed;
    }
    return o;
}

namespace detail {

inline IntVec negated(IntVec u) {
    for (auto& x : u) x = -x;
    return u;
}

inline bool opposite_pairs(const Fan& f) {
    if (f.rank != 2 || f.num_rays() != 4 || !is_smooth(f)) return false;
    for (const auto& u : f.rays)
        if (!find_ray(f, negated(u))) return false;
    return true;
}

// "P1, O(2)" style names for the polarized exceptional divisor when it is a
// projective space or P1xP1.
inline std::pair<std::string, std::string> polarized_name(const Fan& e, const InvariantDivisor& d) {
    Rat deg = 0;
    for (const auto& x : d) deg += x;
    if (e.num_rays() == e.rank + 1 && is_smooth(e))
        return {"P" + std::to_string(e.rank), "O(" + to_string(deg) + ")"};
    if (opposite_pairs(e)) {
        std::size_t a = *find_ray(e, negated(e.rays[0]));
        Rat first = d[0] + d[a], second = deg - first;
        return {"P1xP1", "O(" + to_string(first) + "," + to_string(second) + ")"};
    }
    return {"E", "-E|_E = " + to_string(d)};
}

}  // namespace detail

inline Outcome cmd_cone(const Json& doc, const JobSpec& spec) {
    require_schema(doc);
    Fan x = fan_from_json(doc, "document");
    IntVec v;
    if (!spec.vector.empty()) v = detail::parse_vector(spec.vector);
    else if (doc.contains("vector")) v = io::intvec_from_json(doc["vector"], "vector");
    else fail(ErrorKind::InvalidArgument, "cone needs --vector or \"vector\" in the input");
    auto rep = verify_cone_iso(x, v, spec.torsion_cover ? TorsionPolicy::Cover : TorsionPolicy::Reject);
    std::size_t rank_x = class_group(x).free_rank, rank_y = rep.data.group.free_rank;
    bool step = rank_y == rank_x + 1;
    std::string name = doc.contains("name") && doc["name"].is_string() ? doc["name"].get<std::string>() : "X";
    auto [e, pol] = detail::polarized_name(rep.star.fan, rep.polarization);

    Json gens = Json::array();
    for (std::size_t k = 0; k < rep.monoid.generators.size(); ++k)
        gens.push_back(Json{{"exponents", io::to_json(rep.monoid.generators[k])}, {"grading", io::to_json(rep.monoid.grading[k])}});
    Json map = Json::array();
    for (std::size_t i = 0; i < rep.map.rows(); ++i) map.push_back(io::to_json(rep.map.row(i)));
    Outcome o;
    o.report = Json{{"command", "cone"},
                    {"claim", "complexity-zero-germ-is-an-orbifold-cone"},
                    {"isomorphic", rep.isomorphic},
                    {"vector", io::to_json(primitive(v))},
                    {"input_torsion", io::to_json(rep.data.input_torsion)},
                    {"cover_index", io::to_json(rep.data.cover_index)},
                    {"class_group_x", class_group(rep.data.x).describe()},
                    {"class_group_y", rep.data.group.describe()},
                    {"rank_step", Json{{"rank_x", rank_x}, {"rank_y", rank_y}, {"holds", step}}},
                    {"degrees", io::to_json(rep.data.degrees)},
                    {"monoid", gens},
                    {"exceptional_fan", to_json(rep.star.fan)},
                    {"polarization", io::to_json(rep.polarization)},
                    {"cone_over", to_json(rep.cone)},
                    {"witness", Json{{"map", map}, {"m0", io::to_json(rep.m0)}, {"divisor_match", io::index_json(rep.divisor_match)}}},
                    {"checks", Json{{"rays", rep.rays_match}, {"vertex", rep.vertex_match}, {"monoid", rep.monoid_match}, {"grading", rep.grading_match}}}};
    std::string iso = name + " ≅ Cone(" + e + ", " + pol + ")";
    o.headline = (rep.isomorphic ? "iso verified: " : "iso FAILED: ") + iso;
    if (!step) o.headline += "; class-group rank step FAILED";
    o.code = rep.isomorphic && step ? Ok : CheckFailed;
    return o;
}

inline Json surgery_json(const SurgeryReport& r) {
    Json fails = Json::array();
    for (const auto& f : r.failures) fails.push_back(f);
    Json j{{"kind", surgery_name(r.kind)},
           {"claim", r.claim},
           {"holds", r.holds()},
           {"failures", fails},
           {"source_fan", to_json(r.source.fan)},
           {"target_fan", to_json(r.target.fan)},
           {"sigma_source", to_json(r.sigma_source)},
           {"sigma_target", to_json(r.sigma_target)},
           {"before", detail::values_json(r.before)},
           {"after", detail::values_json(r.after)},
           {"log_discrepancies", io::to_json(r.log_discrepancies)}};
    if (r.kind == SurgeryKind::Contraction) j["contracted_weight"] = io::to_json(r.contracted_weight);
    return j;
}

inline Outcome cmd_check(const Json& doc, const JobSpec& spec, SurgeryKind kind) {
    PairData p = detail::load_pair(doc, spec);
    FanSurgery s = surgery_from_json(doc, kind);
    InvariantDivisor m = p.nef_trace ? *p.nef_trace : zero_divisor(p.fan);
    if (p.boundary.size() != p.fan.num_rays() || m.size() != p.fan.num_rays())
        fail(ErrorKind::InvalidArgument, "boundary length does not match the fan");
    auto sigma = decomposition_from_json(doc, p.fan.num_rays());
    OrbifoldDecomposition sg = sigma ? *sigma : detail::default_sigma(p.fan, p.boundary, relative_mode(p.fan, p.mode));
    SurgeryReport r = kind == SurgeryKind::Contraction ? check_contraction(s, p.boundary, m, p.mode, sg)
                      : kind == SurgeryKind::SmallModification ? check_small(s, p.boundary, m, p.mode, sg)
                                                               : check_extraction(s, p.boundary, m, p.mode, sg);
    Outcome o;
    o.report = surgery_json(r);
    o.report["command"] = std::string("check ") + (kind == SurgeryKind::Contraction ? "contract" : kind == SurgeryKind::SmallModification ? "small" : "extract");
    std::string bef = r.before.c ? detail::triple(*r.before.c, *r.before.c_fine, r.before.c_orb) : "c_orb = " + to_string(r.before.c_orb);
    std::string aft = r.after.c ? detail::triple(*r.after.c, *r.after.c_fine, r.after.c_orb) : "c_orb = " + to_string(r.after.c_orb);
    const bool x_first = kind == SurgeryKind::Extraction;
    o.headline = std::string(surgery_name(kind)) + ": " + (r.holds() ? "holds" : "FAILED") + "; " + (x_first ? "X " : "source ") + bef +
                 " -> " + (x_first ? "Y " : "target ") + aft;
    o.code = r.holds() ? Ok : CheckFailed;
    return o;
}

inline Outcome cmd_suite(const JobSpec&) {
    auto cases = mmp_suite();
    Json list = Json::array();
    std::size_t passed = 0;
    for (const auto& c : cases) {
        passed += c.ok();
        Json j = surgery_json(c.report);
        j["name"] = c.name;
        j["expectation"] = c.expectation;
        j["ok"] = c.ok();
        list.push_back(j);
    }
    Outcome o;
    o.report = Json{{"command", "check suite"}, {"cases", list}, {"passed", passed}, {"total", cases.size()}};
    o.headline = "surgery suite: " + std::to_string(passed) + "/" + std::to_string(cases.size()) + " passed";
    o.code = passed == cases.size() ? Ok : CheckFailed;
    return o;
}

inline Outcome cmd_hilbert(const Json& doc, const JobSpec& spec) {
    require_schema(doc);
    RationalCone c;
    if (doc.contains("generators")) {
        c.dim = io::index_from_json(io::field(doc, "rank", "document"), "rank");
        c.generators = io::vectors_from_json(doc["generators"], c.dim, "generators");
    } else {
        Fan f = fan_from_json(doc, "document");
        require_valid(f);
        if (spec.cone >= f.max_cones.size()) fail(ErrorKind::InvalidArgument, "cone index " + std::to_string(spec.cone) + " out of range");
        c = f.rational_cone(f.max_cones[spec.cone]);
    }
    if (c.generators.empty()) fail(ErrorKind::InvalidArgument, "the cone has no generators");
    RationalCone target = spec.dual ? dual_cone(c) : c;
    if (!is_pointed(target)) fail(ErrorKind::NotPointed, std::string(spec.dual ? "dual cone" : "cone") + " contains a line");
    auto hb = hilbert_basis(target);
    Outcome o;
    o.report = Json{{"command", "hilbert"}, {"dual", spec.dual}, {"generators", io::to_json(target.generators)}, {"hilbert_basis", io::to_json(hb)}};
    o.headline = std::to_string(hb.size()) + " Hilbert basis element(s)";
    return o;
}

// ---- driver -----------------------------------------------------------------------

inline Outcome dispatch(const JobSpec& spec, std::istream& in) {
    if (spec.command == "check suite") return cmd_suite(spec);
    Json doc = read_json_file(spec.input, in);
    if (spec.command == "validate") return cmd_validate(doc, spec);
    if (spec.command == "classgroup") return cmd_classgroup(doc, spec);
    if (spec.command == "complexity") return complexity_outcome(doc, spec, false);
    if (spec.command == "minimize") return complexity_outcome(doc, spec, true);
    if (spec.command == "adjoin") return cmd_adjoin(doc, spec);
    if (spec.command == "cone") return cmd_cone(doc, spec);
    if (spec.command == "hilbert") return cmd_hilbert(doc, spec);
    if (spec.command == "check contract") return cmd_check(doc, spec, SurgeryKind::Contraction);
    if (spec.command == "check small") return cmd_check(doc, spec, SurgeryKind::SmallModification);
    if (spec.command == "check extract") return cmd_check(doc, spec, SurgeryKind::Extraction);
    fail(ErrorKind::InvalidArgument, "unknown command '" + spec.command + "'");
}

inline void check_ranges(const JobSpec& spec) {
    if (spec.format != "text" && spec.format != "json") fail(ErrorKind::InvalidArgument, "--format must be text or json");
    if (spec.orbifold_cap < 1 || spec.orbifold_cap > 64) fail(ErrorKind::InvalidArgument, "--orbifold-cap must lie in [1, 64]");
    if (spec.partition_limit < 1 || spec.partition_limit > 64) fail(ErrorKind::InvalidArgument, "--partition-limit must lie in [1, 64]");
    if (spec.threads > 1024) fail(ErrorKind::InvalidArgument, "--threads must lie in [0, 1024]");
}

// args excludes the program name.
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Complexity of invariant log pairs on toric varieties"};
    app.name("toricomplex");
    app.require_subcommand(1);
    JobSpec spec;
    std::size_t center = 0;

    auto common = [&](CLI::App* sc, bool needs_input) {
        auto* opt = sc->add_option("-i,--input", spec.input, "input JSON document (- for stdin)");
        if (needs_input) opt->required();
        sc->add_option("-f,--format", spec.format, "text or json")->capture_default_str();
        sc->add_option("--orbifold-cap", spec.orbifold_cap, "largest orbifold index searched (1..64)")->capture_default_str();
        sc->add_option("--partition-limit", spec.partition_limit, "largest number of boundary rays searched exhaustively (1..64)")
            ->capture_default_str();
        sc->add_option("--threads", spec.threads, "worker threads (0: TORICOMPLEX_THREADS or all cores)")->capture_default_str();
    };
    auto pair_cmd = [&](const char* name, const char* help) {
        auto* sc = app.add_subcommand(name, help);
        common(sc, true);
        sc->add_option("--mode", spec.mode, "override the mode: projective, local[:k], birational");
        return sc;
    };

    pair_cmd("validate", "check a pair document and report every violated invariant");
    common(app.add_subcommand("classgroup", "class group and local class groups of a fan"), true);
    pair_cmd("complexity", "complexity, fine and orbifold complexity with a realizing decomposition");
    pair_cmd("minimize", "minimizing decompositions for all three invariants");
    auto* adj = pair_cmd("adjoin", "adjunction to an invariant divisor of coefficient one");
    auto* center_opt = adj->add_option("--center", center, "ray index of the divisor");
    auto* cone = app.add_subcommand("cone", "Cox-degree monoid of a star subdivision and the orbifold cone isomorphism");
    common(cone, true);
    cone->add_option("--vector", spec.vector, "interior vector, comma separated");
    cone->add_flag("--torsion-cover", spec.torsion_cover, "pass to the lattice spanned by the rays when Cl has torsion");
    auto* hil = app.add_subcommand("hilbert", "Hilbert basis of a cone or its dual");
    common(hil, true);
    hil->add_flag("--dual", spec.dual, "use the dual cone");
    hil->add_option("--cone", spec.cone, "maximal cone of the fan (when no generators are given)");
    auto* check = app.add_subcommand("check", "complexity under toric surgeries");
    check->require_subcommand(1);
    auto add_check = [&](const char* name, const char* help, bool needs_input) {
        auto* sc = check->add_subcommand(name, help);
        common(sc, needs_input);
        sc->add_option("--mode", spec.mode, "override the mode: projective, local[:k], birational");
    };
    add_check("contract", "divisorial contraction (one ray removed)", true);
    add_check("small", "small modification (same rays)", true);
    add_check("extract", "extraction of lc places (star subdivisions)", true);
    add_check("suite", "built-in surgery examples", false);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Ok : InputError;
    }
    for (auto* sc : app.get_subcommands()) {
        spec.command = sc->get_name();
        for (auto* sub : sc->get_subcommands()) spec.command += " " + sub->get_name();
    }
    if (center_opt->count() > 0) spec.center = center;

    try {
        check_ranges(spec);
        Outcome o = dispatch(spec, in);
        emit(o, spec.format, out);
        return o.code;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        if (spec.format == "json") out << dump(Json{{"error", Json{{"kind", kind_name(e.kind())}, {"message", e.what()}}}});
        return exit_code(e.kind());
    } catch (const Json::exception& e) {
        err << "error: ParseError: " << e.what() << "\n";
        return InputError;
    }
}

inline int run(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cin, std::cout, std::cerr);
}

}  // namespace toricomplex::cli
