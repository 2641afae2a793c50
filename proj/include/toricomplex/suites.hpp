#pragma once

// Fixed surgery examples with known outcomes, shared by `check suite` and the
// acceptance run.

#include "birational.hpp"
#include "catalog.hpp"

namespace toricomplex {

struct SuiteCase {
    std::string name;
    SurgeryReport report;
    bool expected = false;  // the outcome specific to this example
    std::string expectation;

    bool ok() const { return expected && report.holds(); }
};

namespace detail {

inline OrbifoldDecomposition prime_parts(const Fan& f, const InvariantDivisor& b) {
    OrbifoldDecomposition s;
    for (std::size_t i = 0; i < b.size(); ++i)
        if (b[i] > 0) s.parts.push_back(Part{b[i], prime_divisor(f, i)});
    return s;
}

}  // namespace detail

inline std::vector<SuiteCase> mmp_suite() {
    namespace cat = catalog;
    std::vector<SuiteCase> out;
    auto add = [&](std::string name, SurgeryReport r, bool expected, std::string what) {
        out.push_back(SuiteCase{std::move(name), std::move(r), expected, std::move(what)});
    };

    // Blow-down of the exceptional curve of Bl_pt P^2, full boundary.
    auto blow = contraction(cat::blowup_p2(), cat::projective_space(2));
    const std::size_t e = blow.exceptional().front();
    InvariantDivisor b4(4, Rat(1)), z4(4, Rat(0));
    auto full = detail::prime_parts(blow.source, b4);
    {
        auto r = check_contraction(blow, b4, z4, Mode::projective(), full);
        bool eq = r.before.c && *r.after.c == *r.before.c;
        add("contract Bl_pt P2, E coefficient 1", r, eq, "c equal");
    }
    {
        auto half = full;
        for (auto& p : half.parts)
            if (p.divisor[e] != 0) p.b = rat(1, 2);
        auto r = check_contraction(blow, b4, z4, Mode::projective(), half);
        bool lt = r.before.c && *r.after.c < *r.before.c;
        add("contract Bl_pt P2, E coefficient 1/2", r, lt, "c drops");
    }
    {
        OrbifoldDecomposition absent;
        for (const auto& p : full.parts)
            if (p.divisor[e] == 0) absent.parts.push_back(p);
        auto r = check_contraction(blow, b4, z4, Mode::projective(), absent);
        bool lt = r.before.c && *r.after.c < *r.before.c;
        add("contract Bl_pt P2, E absent", r, lt, "c drops");
    }

    // Atiyah flop over the conifold.
    {
        auto s = small_modification(cat::conifold_resolution_a(), cat::conifold_resolution_b());
        auto r = check_small(s, b4, z4, Mode::birational(cat::conifold().rays), detail::prime_parts(s.source, b4));
        bool eq = r.before.c && *r.after.c == *r.before.c && *r.after.c_fine == *r.before.c_fine && r.after.c_orb == r.before.c_orb;
        add("Atiyah flop, full boundary", r, eq, "c, fine and orbifold complexity equal");
    }

    // Extractions of lc places over P^2 with the toric boundary.
    Fan p2 = cat::projective_space(2);
    InvariantDivisor b3(3, Rat(1)), z3(3, Rat(0));
    for (const auto& v : {ints({1, 1}), ints({2, 1})}) {
        auto r = check_extraction(extraction(p2, {v}), b3, z3, Mode::projective(), detail::prime_parts(p2, b3));
        bool ok = r.log_discrepancies == std::vector<Rat>{Rat(0)} && r.before.c_fine && *r.after.c_fine == *r.before.c_fine;
        add("extract " + to_string(v) + " over P2", r, ok, "log discrepancy 0 and fine complexity preserved");
    }
    return out;
}

}  // namespace toricomplex
