#pragma once

// JSON documents (schema 1).  Rationals travel as "p/q" strings so that
// nothing is rounded; integers as JSON numbers, or strings when they do not
// fit in 64 bits.

#include "birational.hpp"

#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace toricomplex {

using Json = nlohmann::json;

inline constexpr int kSchemaVersion = 1;

namespace io {

[[noreturn]] inline void bad(const std::string& where, const std::string& what) { fail(ErrorKind::ParseError, where + ": " + what); }

inline const Json& field(const Json& j, const char* key, const std::string& where) {
    if (!j.is_object()) bad(where, "expected an object");
    auto it = j.find(key);
    if (it == j.end()) bad(where, std::string("missing \"") + key + "\"");
    return *it;
}

inline Int int_from_json(const Json& j, const std::string& where) {
    if (j.is_number_integer()) return j.is_number_unsigned() ? Int(std::to_string(j.get<std::uint64_t>())) : Int(std::to_string(j.get<std::int64_t>()));
    if (j.is_string()) {
        Rat q = parse_rat(j.get<std::string>());
        if (q.get_den() != 1) bad(where, "expected an integer");
        return q.get_num();
    }
    bad(where, "expected an integer");
}

inline Json to_json(const Int& x) {
    if (x.fits_slong_p()) return Json(static_cast<std::int64_t>(x.get_si()));
    return Json(x.get_str());
}

inline Rat rat_from_json(const Json& j, const std::string& where) {
    if (j.is_string()) {
        try {
            return parse_rat(j.get<std::string>());
        } catch (const Error&) {
            bad(where, "not a rational number: '" + j.get<std::string>() + "'");
        }
    }
    if (j.is_number_integer()) return Rat(int_from_json(j, where));
    bad(where, "expected a rational as a \"p/q\" string");
}

inline Json to_json(Rat q) {
    q.canonicalize();
    return Json(to_string(q));
}

inline std::size_t index_from_json(const Json& j, const std::string& where) {
    if (!j.is_number_unsigned()) bad(where, "expected a non-negative index");
    return j.get<std::size_t>();
}

inline std::size_t index_from_key(const std::string& key, const std::string& where) {
    if (key.empty() || key.size() > 9 || !std::all_of(key.begin(), key.end(), [](char c) { return c >= '0' && c <= '9'; }))
        bad(where, "key '" + key + "' is not a ray index");
    return static_cast<std::size_t>(std::stoul(key));
}

inline IntVec intvec_from_json(const Json& j, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of integers");
    IntVec v;
    for (std::size_t k = 0; k < j.size(); ++k) v.push_back(int_from_json(j[k], where + "[" + std::to_string(k) + "]"));
    return v;
}

inline Json to_json(const IntVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline std::vector<IntVec> vectors_from_json(const Json& j, std::size_t rank, const std::string& where) {
    if (!j.is_array()) bad(where, "expected an array of vectors");
    std::vector<IntVec> out;
    for (std::size_t k = 0; k < j.size(); ++k) {
        std::string w = where + "[" + std::to_string(k) + "]";
        out.push_back(intvec_from_json(j[k], w));
        if (out.back().size() != rank) bad(w, "expected " + std::to_string(rank) + " entries");
    }
    return out;
}

inline Json to_json(const std::vector<IntVec>& vs) {
    Json a = Json::array();
    for (const auto& v : vs) a.push_back(to_json(v));
    return a;
}

inline Json to_json(const RatVec& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

inline Json index_json(const std::vector<std::size_t>& v) { return Json(v); }

}  // namespace io

// ---- documents ---------------------------------------------------------------

inline Json read_json(std::istream& in, const std::string& name) {
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        fail(ErrorKind::ParseError, name + ": " + e.what());
    }
}

// "-" reads standard input.
inline Json read_json_file(const std::string& path, std::istream& stdin_stream = std::cin) {
    if (path == "-") return read_json(stdin_stream, "<stdin>");
    std::ifstream f(path);
    if (!f) fail(ErrorKind::IoError, "cannot open '" + path + "'");
    return read_json(f, path);
}

inline void require_schema(const Json& doc) {
    int v = static_cast<int>(io::int_from_json(io::field(doc, "schema", "document"), "schema").get_si());
    if (v != kSchemaVersion) fail(ErrorKind::ParseError, "unsupported schema " + std::to_string(v) + " (expected 1)");
}

inline Fan fan_from_json(const Json& j, const std::string& where = "fan") {
    Fan f;
    f.rank = io::index_from_json(io::field(j, "rank", where), where + ".rank");
    f.rays = io::vectors_from_json(io::field(j, "rays", where), f.rank, where + ".rays");
    const Json& mc = io::field(j, "max_cones", where);
    if (!mc.is_array()) io::bad(where + ".max_cones", "expected an array of index lists");
    for (std::size_t c = 0; c < mc.size(); ++c) {
        std::string w = where + ".max_cones[" + std::to_string(c) + "]";
        if (!mc[c].is_array()) io::bad(w, "expected an array of ray indices");
        Cone cone;
        for (std::size_t k = 0; k < mc[c].size(); ++k) cone.push_back(io::index_from_json(mc[c][k], w));
        f.max_cones.push_back(cone);
    }
    return f;
}

inline Json to_json(const Fan& f) {
    Json cones = Json::array();
    for (const auto& c : f.max_cones) cones.push_back(io::index_json(c));
    return Json{{"rank", f.rank}, {"rays", io::to_json(f.rays)}, {"max_cones", cones}};
}

inline Mode mode_from_json(const Json& j, std::size_t rank) {
    const std::string where = "mode";
    const Json& k = io::field(j, "kind", where);
    if (!k.is_string()) io::bad(where + ".kind", "expected a string");
    std::string kind = k.get<std::string>();
    if (kind == "projective") return Mode::projective();
    if (kind == "local") return Mode::local(io::index_from_json(io::field(j, "cone", where), where + ".cone"));
    if (kind == "birational") return Mode::birational(io::vectors_from_json(io::field(j, "base", where), rank, where + ".base"));
    io::bad(where + ".kind", "unknown mode '" + kind + "' (projective, local, birational)");
}

inline Json to_json(const Mode& m) {
    Json j{{"kind", mode_name(m.kind)}};
    if (m.kind == ModeKind::Local) j["cone"] = m.cone;
    if (m.kind == ModeKind::Birational) j["base"] = io::to_json(m.base);
    return j;
}

// Dense array of n rationals, or a sparse object {"ray": "p/q"}.
inline InvariantDivisor divisor_from_json(const Json& j, std::size_t n, const std::string& where) {
    InvariantDivisor d(n, Rat(0));
    if (j.is_array()) {
        if (j.size() != n) io::bad(where, "expected " + std::to_string(n) + " coefficients, got " + std::to_string(j.size()));
        for (std::size_t i = 0; i < n; ++i) d[i] = io::rat_from_json(j[i], where + "[" + std::to_string(i) + "]");
        return d;
    }
    if (!j.is_object()) io::bad(where, "expected an array or a {ray: coefficient} object");
    for (const auto& [key, val] : j.items()) {
        std::size_t i = io::index_from_key(key, where);
        if (i >= n) fail(ErrorKind::InvalidDecomposition, where + ": ray index " + key + " out of range (" + std::to_string(n) + " rays)");
        d[i] = io::rat_from_json(val, where + "." + key);
    }
    return d;
}

inline Json sparse_json(const InvariantDivisor& d) {
    Json j = Json::object();
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] != 0) j[std::to_string(i)] = io::to_json(d[i]);
    return j;
}

// Reads "orbifold" and "decomposition" from a document; nullopt when the
// document carries no decomposition.
inline std::optional<OrbifoldDecomposition> decomposition_from_json(const Json& doc, std::size_t n) {
    if (!doc.contains("decomposition")) {
        if (doc.contains("orbifold")) io::bad("orbifold", "an orbifold structure needs a decomposition");
        return std::nullopt;
    }
    OrbifoldDecomposition s;
    if (doc.contains("orbifold")) {
        const Json& o = doc["orbifold"];
        if (!o.is_object()) io::bad("orbifold", "expected a {ray: index} object");
        s.orbifold.assign(n, Int(1));
        for (const auto& [key, val] : o.items()) {
            std::size_t i = io::index_from_key(key, "orbifold");
            if (i >= n) fail(ErrorKind::IncompatibleOrbifold, "orbifold: ray index " + key + " out of range");
            Int idx = io::int_from_json(val, "orbifold." + key);
            if (idx < 1) fail(ErrorKind::IncompatibleOrbifold, "orbifold index at ray " + key + " must be at least 1");
            s.orbifold[i] = idx;
        }
    }
    const Json& parts = doc["decomposition"];
    if (!parts.is_array()) io::bad("decomposition", "expected an array of parts");
    for (std::size_t j = 0; j < parts.size(); ++j) {
        std::string w = "decomposition[" + std::to_string(j) + "]";
        Part p;
        p.b = io::rat_from_json(io::field(parts[j], "b", w), w + ".b");
        p.divisor = divisor_from_json(io::field(parts[j], "support", w), n, w + ".support");
        s.parts.push_back(p);
    }
    return s;
}

inline Json to_json(const OrbifoldDecomposition& s) {
    Json orb = Json::object();
    for (std::size_t i = 0; i < s.orbifold.size(); ++i)
        if (s.orbifold[i] != 1) orb[std::to_string(i)] = io::to_json(s.orbifold[i]);
    Json parts = Json::array();
    for (const auto& p : s.parts) parts.push_back(Json{{"b", io::to_json(p.b)}, {"support", sparse_json(p.divisor)}});
    return Json{{"orbifold", orb}, {"decomposition", parts}};
}

inline PairData pair_from_json(const Json& doc) {
    require_schema(doc);
    PairData p;
    p.fan = fan_from_json(doc, "document");
    const std::size_t n = p.fan.num_rays();
    p.boundary = divisor_from_json(io::field(doc, "boundary", "document"), n, "boundary");
    if (doc.contains("nef_trace") && !doc["nef_trace"].is_null()) p.nef_trace = divisor_from_json(doc["nef_trace"], n, "nef_trace");
    p.mode = doc.contains("mode") ? mode_from_json(doc["mode"], p.fan.rank) : Mode::projective();
    return p;
}

inline Json to_json(const PairData& p, const std::optional<OrbifoldDecomposition>& sigma = std::nullopt) {
    Json doc = to_json(p.fan);
    doc["schema"] = kSchemaVersion;
    Json b = Json::array();
    for (const auto& x : p.boundary) b.push_back(io::to_json(x));
    doc["boundary"] = b;
    if (p.nef_trace) doc["nef_trace"] = io::to_json(*p.nef_trace);
    doc["mode"] = to_json(p.mode);
    if (sigma) {
        Json s = to_json(*sigma);
        if (!s["orbifold"].empty()) doc["orbifold"] = s["orbifold"];
        doc["decomposition"] = s["decomposition"];
    }
    return doc;
}

// Surgery documents carry the pair on the side the checker expects (source
// for contractions and small modifications, the base X for extractions) plus
// "target": {"rays", "max_cones"} or "extract": [[...]].
inline FanSurgery surgery_from_json(const Json& doc, SurgeryKind kind) {
    Fan main = fan_from_json(doc, "document");
    if (kind == SurgeryKind::Extraction)
        return extraction(main, io::vectors_from_json(io::field(doc, "extract", "document"), main.rank, "extract"));
    Json t = io::field(doc, "target", "document");
    if (t.is_object() && !t.contains("rank")) t["rank"] = main.rank;
    Fan target = fan_from_json(t, "target");
    return kind == SurgeryKind::Contraction ? contraction(main, target) : small_modification(main, target);
}

inline std::string dump(const Json& j) { return j.dump(2) + "\n"; }

}  // namespace toricomplex
