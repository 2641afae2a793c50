#pragma once

#include <gmpxx.h>

#include <algorithm>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace toricomplex {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

enum class ErrorKind {
    // input validation
    InvalidFan,
    OverlappingCones,
    NotPointed,
    NotFullDimensional,
    RayOutsideSupport,
    NotQCartier,
    NotLogCanonical,
    NotNef,
    NotAmple,
    NotInterior,
    InvalidDecomposition,
    IncompatibleOrbifold,
    NotDivisorialCenter,
    HypothesisViolation,
    CorrespondenceMismatch,
    NotLcPlace,
    TorsionObstruction,
    LcViolation,
    InvalidArgument,
    // a property that should hold on valid data failed
    TheoremCheckFailed,
    // I/O
    ParseError,
    IoError,
};

inline const char* kind_name(ErrorKind k) {
    switch (k) {
    case ErrorKind::InvalidFan: return "InvalidFan";
    case ErrorKind::OverlappingCones: return "OverlappingCones";
    case ErrorKind::NotPointed: return "NotPointed";
    case ErrorKind::NotFullDimensional: return "NotFullDimensional";
    case ErrorKind::RayOutsideSupport: return "RayOutsideSupport";
    case ErrorKind::NotQCartier: return "NotQCartier";
    case ErrorKind::NotLogCanonical: return "NotLogCanonical";
    case ErrorKind::NotNef: return "NotNef";
    case ErrorKind::NotAmple: return "NotAmple";
    case ErrorKind::NotInterior: return "NotInterior";
    case ErrorKind::InvalidDecomposition: return "InvalidDecomposition";
    case ErrorKind::IncompatibleOrbifold: return "IncompatibleOrbifold";
    case ErrorKind::NotDivisorialCenter: return "NotDivisorialCenter";
    case ErrorKind::HypothesisViolation: return "HypothesisViolation";
    case ErrorKind::CorrespondenceMismatch: return "CorrespondenceMismatch";
    case ErrorKind::NotLcPlace: return "NotLcPlace";
    case ErrorKind::TorsionObstruction: return "TorsionObstruction";
    case ErrorKind::LcViolation: return "LcViolation";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::TheoremCheckFailed: return "TheoremCheckFailed";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::IoError: return "IoError";
    }
    return "Unknown";
}

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& msg)
        : std::runtime_error(std::string(kind_name(kind)) + ": " + msg), kind_(kind) {}
    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& msg) { throw Error(kind, msg); }

// ---- scalars -------------------------------------------------------------

inline Int gcd(const Int& a, const Int& b) {
    Int g;
    mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
}

inline Int lcm(const Int& a, const Int& b) {
    Int l;
    mpz_lcm(l.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return l;
}

// Floor division and the matching non-negative remainder.
inline Int floor_div(const Int& a, const Int& b) {
    Int q;
    mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return q;
}

inline Int mod_floor(const Int& a, const Int& b) {
    Int r;
    mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return r;
}

inline Int floor_rat(const Rat& q) { return floor_div(q.get_num(), q.get_den()); }

inline Rat frac(const Rat& q) { return q - Rat(floor_rat(q)); }

inline bool is_integer(const Rat& q) { return q.get_den() == 1; }

inline std::string to_string(const Int& v) { return v.get_str(); }

inline std::string to_string(const Rat& v) {
    if (v.get_den() == 1) return v.get_num().get_str();
    return v.get_num().get_str() + "/" + v.get_den().get_str();
}

// Parses "p", "-p", "p/q". Canonicalizes.
inline Rat parse_rat(const std::string& s) {
    auto bad = [&]() -> Rat { fail(ErrorKind::ParseError, "not a rational number: '" + s + "'"); };
    if (s.empty()) return bad();
    auto slash = s.find('/');
    auto valid_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '-' || t[0] == '+') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };
    std::string num = s.substr(0, slash);
    std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (!valid_int(num) || !valid_int(den) || den[0] == '-' || den[0] == '+') return bad();
    if (num[0] == '+') num.erase(0, 1);
    Int d(den);
    if (d == 0) return bad();
    Rat q(Int(num), d);
    q.canonicalize();
    return q;
}

inline Int abs_int(const Int& a) { return a < 0 ? Int(-a) : a; }

// num/den in lowest terms (mpq_class's two-argument constructor does not reduce).
inline Rat rat(const Int& num, const Int& den) {
    Rat q(num, den);
    q.canonicalize();
    return q;
}

// ---- vectors -------------------------------------------------------------

inline Int dot(const IntVec& a, const IntVec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const RatVec& a, const IntVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Rat dot(const RatVec& a, const RatVec& b) {
    Rat s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline Int content(const IntVec& v) {
    Int g = 0;
    for (const auto& x : v) g = gcd(g, x);
    return g;
}

inline bool is_zero(const IntVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Int& x) { return x == 0; });
}

inline bool is_zero(const RatVec& v) {
    return std::all_of(v.begin(), v.end(), [](const Rat& x) { return x == 0; });
}

inline bool is_primitive(const IntVec& v) { return content(v) == 1; }

inline IntVec primitive(const IntVec& v) {
    Int g = content(v);
    if (g == 0) return v;
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i] / g;
    return out;
}

// Smallest positive integer multiple of a rational vector.
inline IntVec clear_denominators(const RatVec& v) {
    Int l = 1;
    for (const auto& x : v) l = lcm(l, x.get_den());
    IntVec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        Rat t = v[i] * l;
        out[i] = t.get_num();
    }
    return primitive(out);
}

inline RatVec to_rat(const IntVec& v) { return RatVec(v.begin(), v.end()); }

inline IntVec add(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
    return r;
}

inline IntVec sub(const IntVec& a, const IntVec& b) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
    return r;
}

inline IntVec scale(const IntVec& a, const Int& k) {
    IntVec r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * k;
    return r;
}

inline IntVec ints(std::initializer_list<long> xs) {
    IntVec v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

inline std::string to_string(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += v[i].get_str();
    }
    return s + ")";
}

inline std::string to_string(const RatVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += to_string(v[i]);
    }
    return s + ")";
}

template <class T>
std::string index_list(const std::vector<T>& v) {
    std::string s = "{";
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(v[i]);
    }
    return s + "}";
}

}  // namespace toricomplex
