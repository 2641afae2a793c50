#pragma once

// Invariant (generalized) pairs over one of three bases: the germ of a
// torus-fixed point, a point (complete fan), or an affine toric base refined by
// the fan.

#include "divisor.hpp"

namespace toricomplex {

enum class ModeKind { Local, Projective, Birational };

inline const char* mode_name(ModeKind k) {
    switch (k) {
    case ModeKind::Local: return "local";
    case ModeKind::Projective: return "projective";
    case ModeKind::Birational: return "birational";
    }
    return "?";
}

struct Mode {
    ModeKind kind = ModeKind::Projective;
    std::size_t cone = 0;           // local: maximal cone of the fixed point
    std::vector<IntVec> base;       // birational: generators of the base cone

    static Mode local(std::size_t cone) { return Mode{ModeKind::Local, cone, {}}; }
    static Mode projective() { return Mode{ModeKind::Projective, 0, {}}; }
    static Mode birational(std::vector<IntVec> base) { return Mode{ModeKind::Birational, 0, std::move(base)}; }
};

struct PairData {
    Fan fan;
    InvariantDivisor boundary;
    std::optional<InvariantDivisor> nef_trace;
    Mode mode;
};

struct ToricPair {
    Fan fan;
    InvariantDivisor boundary;
    InvariantDivisor nef_trace;  // zero when absent
    Mode mode;
    bool log_cy = false;

    std::size_t dim() const { return fan.rank; }

    // Maximal cones over which K+B+M must be Q-Cartier.
    std::vector<std::size_t> relevant_cones() const {
        std::vector<std::size_t> out;
        if (mode.kind == ModeKind::Local) return {mode.cone};
        for (std::size_t c = 0; c < fan.max_cones.size(); ++c) out.push_back(c);
        return out;
    }

    // Rays whose divisors pass through the fiber (local: rays of the cone).
    Cone central_rays() const {
        if (mode.kind == ModeKind::Local) return fan.max_cones[mode.cone];
        Cone all(fan.num_rays());
        std::iota(all.begin(), all.end(), 0);
        return all;
    }

    InvariantDivisor log_canonical_divisor() const { return add(add(canonical_divisor(fan), boundary), nef_trace); }
};

struct PairIssue {
    ErrorKind kind;
    std::string message;
};

namespace detail {

inline bool globally_linear(const InvariantDivisor& d, const Fan& f) {
    Cone all(f.num_rays());
    std::iota(all.begin(), all.end(), 0);
    return local_support_function(d, f, all).has_value();
}

}  // namespace detail

// Checks every invariant and collects all failures (empty when valid).
inline std::vector<PairIssue> check_pair(const PairData& raw) {
    std::vector<PairIssue> issues;
    auto fd = validate(raw.fan);
    if (!fd.valid) {
        issues.push_back({fd.kind, fd.invariant + ": " + fd.message});
        return issues;
    }
    const Fan& f = raw.fan;
    if (raw.boundary.size() != f.num_rays()) {
        issues.push_back({ErrorKind::InvalidArgument, "boundary has " + std::to_string(raw.boundary.size()) + " coefficients for " +
                                                          std::to_string(f.num_rays()) + " rays"});
        return issues;
    }
    if (raw.nef_trace && raw.nef_trace->size() != f.num_rays()) {
        issues.push_back({ErrorKind::InvalidArgument, "nef trace has the wrong number of coefficients"});
        return issues;
    }
    for (std::size_t i = 0; i < f.num_rays(); ++i) {
        if (raw.boundary[i] < 0) issues.push_back({ErrorKind::InvalidArgument, "boundary is not effective at ray " + std::to_string(i)});
        if (raw.boundary[i] > 1)
            issues.push_back({ErrorKind::NotLogCanonical, "boundary coefficient " + to_string(raw.boundary[i]) + " > 1 at ray " + std::to_string(i)});
    }
    // mode
    std::vector<std::size_t> cones;
    switch (raw.mode.kind) {
    case ModeKind::Local:
        if (raw.mode.cone >= f.max_cones.size()) {
            issues.push_back({ErrorKind::InvalidArgument, "mode cone index " + std::to_string(raw.mode.cone) + " out of range"});
            return issues;
        }
        if (!is_full_dimensional(f, f.max_cones[raw.mode.cone]))
            issues.push_back({ErrorKind::NotFullDimensional, "cone " + std::to_string(raw.mode.cone) + " has no torus-fixed point"});
        cones.push_back(raw.mode.cone);
        break;
    case ModeKind::Projective:
        if (!is_complete(f)) issues.push_back({ErrorKind::InvalidFan, "complete: projective mode needs a complete fan"});
        break;
    case ModeKind::Birational: {
        RationalCone base{f.rank, raw.mode.base};
        for (const auto& g : raw.mode.base)
            if (g.size() != f.rank) {
                issues.push_back({ErrorKind::InvalidArgument, "base cone generator has the wrong length"});
                return issues;
            }
        auto bd = describe(base);
        if (!bd.pointed) issues.push_back({ErrorKind::NotPointed, "base cone contains a line"});
        else if (bd.span_dim != f.rank) issues.push_back({ErrorKind::NotFullDimensional, "base cone is not full-dimensional"});
        else if (!is_refinement_of(f, base)) issues.push_back({ErrorKind::InvalidFan, "refinement: fan support is not the base cone"});
        break;
    }
    }
    if (cones.empty())
        for (std::size_t c = 0; c < f.max_cones.size(); ++c) cones.push_back(c);
    InvariantDivisor m = raw.nef_trace ? *raw.nef_trace : zero_divisor(f);
    InvariantDivisor kbm = add(add(canonical_divisor(f), raw.boundary), m);
    for (auto c : cones)
        if (!cartier_index(kbm, f, f.max_cones[c]))
            issues.push_back({ErrorKind::NotQCartier, "K+B+M is not Q-Cartier on cone " + std::to_string(c) + " " + index_list(f.max_cones[c])});
    if (raw.nef_trace) {
        for (auto c : cones)
            if (!cartier_index(m, f, f.max_cones[c]))
                issues.push_back({ErrorKind::NotQCartier, "nef trace is not Q-Cartier on cone " + std::to_string(c)});
        bool all_qc = std::all_of(cones.begin(), cones.end(), [&](std::size_t c) { return cartier_index(m, f, f.max_cones[c]).has_value(); });
        if (all_qc && raw.mode.kind != ModeKind::Local && !is_nef(m, f))
            issues.push_back({ErrorKind::NotNef, "nef trace fails convexity across a wall"});
    }
    return issues;
}

inline bool is_log_cy(const ToricPair& p) {
    InvariantDivisor kbm = p.log_canonical_divisor();
    if (p.mode.kind == ModeKind::Local) return cartier_index(kbm, p.fan, p.fan.max_cones[p.mode.cone]).has_value();
    return detail::globally_linear(kbm, p.fan);
}

inline ToricPair build_pair(const PairData& raw) {
    auto issues = check_pair(raw);
    if (!issues.empty()) {
        std::string msg;
        for (std::size_t k = 0; k < issues.size(); ++k)
            msg += k == 0 ? issues[k].message : "; " + std::string(kind_name(issues[k].kind)) + ": " + issues[k].message;
        throw Error(issues.front().kind, msg);
    }
    ToricPair p{raw.fan, raw.boundary, raw.nef_trace ? *raw.nef_trace : zero_divisor(raw.fan), raw.mode, false};
    p.log_cy = is_log_cy(p);
    return p;
}

}  // namespace toricomplex
