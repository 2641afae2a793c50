#pragma once

// Complexity, fine complexity and orbifold complexity of decompositions of an
// invariant boundary, and an exact minimizer over invariant decompositions.

#include "pair.hpp"

#include <cstdlib>
#include <mutex>
#include <thread>
#include <unordered_map>

namespace toricomplex {

struct Part {
    Rat b;
    InvariantDivisor divisor;
};

// Orbifold structure (index per ray; empty means trivial) plus weighted parts.
struct OrbifoldDecomposition {
    std::vector<Int> orbifold;
    std::vector<Part> parts;

    Int index(std::size_t rho) const { return rho < orbifold.size() ? orbifold[rho] : Int(1); }

    bool trivial_orbifold() const {
        return std::all_of(orbifold.begin(), orbifold.end(), [](const Int& n) { return n == 1; });
    }

    Rat norm() const {
        Rat s = 0;
        for (const auto& p : parts) s += p.b;
        return s;
    }

    // Σ_rho (1 - 1/n_rho) D_rho + Σ_j b_j B_j
    InvariantDivisor total(std::size_t num_rays) const {
        InvariantDivisor t(num_rays, Rat(0));
        for (std::size_t i = 0; i < num_rays; ++i) t[i] = 1 - Rat(1) / Rat(index(i));
        for (const auto& p : parts)
            for (std::size_t i = 0; i < num_rays; ++i) t[i] += p.b * p.divisor[i];
        return t;
    }
};

using Decomposition = OrbifoldDecomposition;  // with trivial orbifold

// Class-group data of the working mode.
struct ComplexityContext {
    std::size_t dim = 0;
    std::size_t num_rays = 0;
    ModeKind kind = ModeKind::Projective;
    Cone central;                      // rays passing through the fixed point / fiber
    AbelianGroupPresentation group;    // generated by the central rays (local) or all rays

    std::size_t class_rank() const { return group.free_rank; }

    RatVec restrict(const InvariantDivisor& d) const {
        if (kind != ModeKind::Local) return d;
        RatVec r;
        for (auto i : central) r.push_back(d[i]);
        return r;
    }

    RatVec rational_class(const InvariantDivisor& d) const { return group.rational_class(restrict(d)); }

    bool supported(const InvariantDivisor& d) const {
        if (kind != ModeKind::Local) return !is_zero(d);
        return std::any_of(central.begin(), central.end(), [&](std::size_t i) { return d[i] != 0; });
    }
};

inline ComplexityContext make_context(const Fan& f, const Mode& mode) {
    ComplexityContext ctx;
    ctx.dim = f.rank;
    ctx.num_rays = f.num_rays();
    ctx.kind = mode.kind;
    if (mode.kind == ModeKind::Local) {
        auto lcg = local_class_group(f, mode.cone);
        ctx.central = lcg.rays;
        ctx.group = lcg.group;
    } else {
        ctx.central.resize(f.num_rays());
        std::iota(ctx.central.begin(), ctx.central.end(), 0);
        ctx.group = class_group(f);
    }
    return ctx;
}

inline ComplexityContext make_context(const ToricPair& p) { return make_context(p.fan, p.mode); }

inline void validate_decomposition(const ComplexityContext& ctx, const InvariantDivisor& b, const OrbifoldDecomposition& s,
                                   bool allow_orbifold) {
    const std::size_t n = ctx.num_rays;
    if (b.size() != n) fail(ErrorKind::InvalidArgument, "boundary has the wrong number of coefficients");
    if (!s.orbifold.empty() && s.orbifold.size() != n) fail(ErrorKind::InvalidDecomposition, "orbifold structure has the wrong length");
    for (std::size_t i = 0; i < n; ++i) {
        Int k = s.index(i);
        if (k < 1) fail(ErrorKind::InvalidDecomposition, "orbifold index at ray " + std::to_string(i) + " is below 1");
        if (k == 1) continue;
        if (!allow_orbifold) fail(ErrorKind::InvalidDecomposition, "nontrivial orbifold index at ray " + std::to_string(i) + " where a plain decomposition is required");
        if (b[i] == 0) fail(ErrorKind::IncompatibleOrbifold, "orbifold index at ray " + std::to_string(i) + " outside the support of B");
        if (b[i] < 1 - Rat(1) / Rat(k))
            fail(ErrorKind::IncompatibleOrbifold, "coefficient " + to_string(b[i]) + " of B at ray " + std::to_string(i) + " is below 1 - 1/" + k.get_str());
    }
    for (std::size_t j = 0; j < s.parts.size(); ++j) {
        const auto& p = s.parts[j];
        std::string id = "part " + std::to_string(j);
        if (p.b <= 0) fail(ErrorKind::InvalidDecomposition, id + " has non-positive weight " + to_string(p.b));
        if (p.divisor.size() != n) fail(ErrorKind::InvalidDecomposition, id + " has the wrong number of coefficients");
        if (is_zero(p.divisor)) fail(ErrorKind::InvalidDecomposition, id + " is the zero divisor");
        for (std::size_t i = 0; i < n; ++i) {
            if (p.divisor[i] < 0) fail(ErrorKind::InvalidDecomposition, id + " is not effective at ray " + std::to_string(i));
            if (!is_integer(p.divisor[i] * Rat(s.index(i))))
                fail(ErrorKind::InvalidDecomposition, id + " is not an orbifold Weil divisor at ray " + std::to_string(i));
        }
        if (!ctx.supported(p.divisor)) fail(ErrorKind::InvalidDecomposition, id + " does not pass through the fixed point");
    }
    auto t = s.total(n);
    for (std::size_t i = 0; i < n; ++i)
        if (t[i] > b[i])
            fail(ErrorKind::InvalidDecomposition, "decomposition exceeds B at ray " + std::to_string(i) + " (" + to_string(t[i]) + " > " + to_string(b[i]) + ")");
}

inline std::size_t span_dim(const ComplexityContext& ctx, const OrbifoldDecomposition& s) {
    std::vector<RatVec> ds;
    for (const auto& p : s.parts) ds.push_back(ctx.restrict(p.divisor));
    return q_span_dim(ds, ctx.group);
}

// dim X + rank Cl - |Σ|
inline Rat complexity(const ComplexityContext& ctx, const InvariantDivisor& b, const Decomposition& s) {
    validate_decomposition(ctx, b, s, false);
    return Rat(ctx.dim + ctx.class_rank()) - s.norm();
}

// dim X + dim <Σ> - |Σ|
inline Rat fine_complexity(const ComplexityContext& ctx, const InvariantDivisor& b, const Decomposition& s) {
    validate_decomposition(ctx, b, s, false);
    return Rat(ctx.dim + span_dim(ctx, s)) - s.norm();
}

inline Rat orbifold_complexity(const ComplexityContext& ctx, const InvariantDivisor& b, const OrbifoldDecomposition& s) {
    validate_decomposition(ctx, b, s, true);
    return Rat(ctx.dim + span_dim(ctx, s)) - s.norm();
}

inline Rat complexity(const Fan& f, const InvariantDivisor& b, const Mode& mode, const Decomposition& s) {
    return complexity(make_context(f, mode), b, s);
}
inline Rat fine_complexity(const Fan& f, const InvariantDivisor& b, const Mode& mode, const Decomposition& s) {
    return fine_complexity(make_context(f, mode), b, s);
}
inline Rat orbifold_complexity(const Fan& f, const InvariantDivisor& b, const Mode& mode, const OrbifoldDecomposition& s) {
    return orbifold_complexity(make_context(f, mode), b, s);
}

// Parts D_rho with weight B_rho over the central rays.
inline Decomposition prime_decomposition(const ComplexityContext& ctx, const InvariantDivisor& b) {
    Decomposition s;
    for (auto i : ctx.central)
        if (b[i] > 0) {
            InvariantDivisor d(ctx.num_rays, Rat(0));
            d[i] = 1;
            s.parts.push_back(Part{b[i], d});
        }
    return s;
}

struct LocalComplexity {
    Rat value;
    InvariantDivisor boundary;
    std::size_t components = 0;
};

// Infimum of dim + rank Cl(X_x) - Σ a_rho over invariant boundaries with
// coefficients in [0,1] and K+B Q-Cartier on the cone.  Such boundaries are
// exactly a_rho = 1 - <m, u_rho>, so the infimum is an exact LP in m.
inline LocalComplexity local_complexity_cloc(const Fan& f, std::size_t cone_idx) {
    auto lcg = local_class_group(f, cone_idx);
    const Cone& c = lcg.rays;
    LinearProgram lp(f.rank);
    RatVec obj(f.rank, Rat(0));
    for (auto i : c) {
        RatVec u = to_rat(f.rays[i]);
        lp.add(u, Relation::LessEq, 1);     // a >= 0
        lp.add(u, Relation::GreaterEq, 0);  // a <= 1
        for (std::size_t j = 0; j < f.rank; ++j) obj[j] -= u[j];
    }
    lp.set_objective(obj);
    auto res = lp.solve();
    if (res.status != LpStatus::Optimal) fail(ErrorKind::TheoremCheckFailed, "local complexity LP did not reach an optimum");
    LocalComplexity out;
    out.boundary = zero_divisor(f);
    Rat total = 0;
    for (auto i : c) {
        out.boundary[i] = 1 - dot(res.x, f.rays[i]);
        total += out.boundary[i];
        if (out.boundary[i] == 1) ++out.components;
    }
    out.value = Rat(f.rank + lcg.group.free_rank) - total;
    return out;
}

// ---- minimizer ---------------------------------------------------------------

struct MinimizeOptions {
    unsigned orbifold_cap = 12;     // largest orbifold index tried
    unsigned max_active_rays = 16;  // refuse larger exhaustive searches
    unsigned threads = 0;           // 0: TORICOMPLEX_THREADS or hardware concurrency
};

struct ComplexityReport {
    std::size_t dim = 0;
    std::size_t class_rank = 0;
    Rat c, c_fine, c_orb;
    std::size_t span_fine = 0, span_orb = 0;
    Decomposition sigma_c, sigma_fine;
    OrbifoldDecomposition sigma_orb;
    std::uint64_t nodes = 0;
};

inline unsigned worker_count(unsigned requested, std::size_t tasks) {
    unsigned n = requested;
    if (n == 0) {
        n = std::max(1u, std::thread::hardware_concurrency());
        if (const char* env = std::getenv("TORICOMPLEX_THREADS")) {
            long v = std::strtol(env, nullptr, 10);
            if (v >= 1) n = std::min<unsigned>(n, static_cast<unsigned>(v));
        }
    }
    return static_cast<unsigned>(std::max<std::size_t>(1, std::min<std::size_t>(n, tasks)));
}

namespace detail {

using i128 = __int128;

struct Overflow {};

inline i128 checked_mul(i128 a, i128 b) {
    i128 r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
}

inline i128 gcd128(i128 a, i128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
        i128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

// Rank over Q of small integer vectors; row-gcd normalized elimination.
inline std::size_t small_rank(std::vector<std::vector<i128>> m, std::size_t cols) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
        std::size_t p = r;
        while (p < m.size() && m[p][c] == 0) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        for (std::size_t i = r + 1; i < m.size(); ++i) {
            if (m[i][c] == 0) continue;
            i128 a = m[r][c], b = m[i][c];
            i128 g = gcd128(a, b);
            i128 fa = a / g, fb = b / g;
            i128 rowg = 0;
            for (std::size_t j = c; j < cols; ++j) {
                i128 v;
                if (__builtin_sub_overflow(checked_mul(m[i][j], fa), checked_mul(m[r][j], fb), &v)) throw Overflow{};
                m[i][j] = v;
                rowg = gcd128(rowg, v);
            }
            if (rowg > 1)
                for (std::size_t j = c; j < cols; ++j) m[i][j] /= rowg;
        }
        ++r;
    }
    return r;
}

inline std::size_t exact_rank(const std::vector<std::vector<i128>>& m, std::size_t cols) {
    try {
        return small_rank(m, cols);
    } catch (const Overflow&) {
        IntMatrix big(m.size(), cols);
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < cols; ++j) {
                // split the 128-bit value through two 64-bit halves
                i128 v = m[i][j];
                bool neg = v < 0;
                unsigned __int128 u = neg ? static_cast<unsigned __int128>(-v) : static_cast<unsigned __int128>(v);
                Int hi(static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64)));
                Int lo(static_cast<unsigned long>(static_cast<std::uint64_t>(u)));
                Int x = hi * Int("18446744073709551616") + lo;
                big(i, j) = neg ? Int(-x) : x;
            }
        return rank(big);
    }
}

inline i128 to_i128(const Int& x) {
    if (!x.fits_slong_p()) throw Overflow{};
    return static_cast<i128>(x.get_si());
}

struct SearchRay {
    std::size_t ray;                 // index in the fan
    std::vector<Int> indices;        // orbifold options, ascending, 1 first
    std::vector<Rat> weights;        // w = n (B - 1) + 1 per option
    std::vector<std::vector<i128>> scaled;  // class * (L / n) per option
};

struct SearchResult {
    bool found = false;
    Rat value;
    std::vector<std::pair<std::size_t, std::size_t>> choice;  // (option, label) per active ray
    std::size_t span = 0;
    std::uint64_t nodes = 0;
};

class Searcher {
public:
    Searcher(std::size_t dim, std::size_t cls_dim, const std::vector<SearchRay>& rays, const std::vector<std::vector<i128>>& unit)
        : dim_(dim), cls_dim_(cls_dim), rays_(rays), unit_(unit), rank_memo_(std::size_t(1) << std::min<std::size_t>(rays.size(), 20), -1) {}

    // Explore the subtree where the first active ray takes the given (option, label).
    void run(std::size_t opt0, std::size_t label0, SearchResult& best) {
        best_ = &best;
        choice_.assign(rays_.size(), {0, 0});
        blocks_.clear();
        used_mask_ = 0;
        deficit_ = 0;
        if (rays_.empty()) {
            leaf();
            return;
        }
        if (apply(0, opt0, label0)) descend(1);
    }

    // Root choices for the first active ray in signature order.
    std::vector<std::pair<std::size_t, std::size_t>> root_choices() const {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        if (rays_.empty()) return {{0, 0}};
        const auto& r = rays_[0];
        for (std::size_t o = 0; o < r.indices.size(); ++o) {
            if (o == 0) out.push_back({0, 0});
            if (r.weights[o] > 0) out.push_back({o, 1});
        }
        return out;
    }

private:
    struct Block {
        std::vector<i128> vec;
        Rat minw;
        std::size_t size;
    };

    std::size_t dim_, cls_dim_;
    const std::vector<SearchRay>& rays_;
    const std::vector<std::vector<i128>>& unit_;  // class of each active ray (unscaled)
    std::vector<int> rank_memo_;
    std::unordered_map<std::uint64_t, int> rank_memo_big_;
    SearchResult* best_ = nullptr;
    std::vector<std::pair<std::size_t, std::size_t>> choice_;
    std::vector<Block> blocks_;
    std::uint64_t used_mask_ = 0;
    Rat deficit_;  // Σ_blocks (1 - minw)

    int ray_rank(std::uint64_t mask) {
        int* slot = nullptr;
        if (rays_.size() <= 20) slot = &rank_memo_[mask];
        else {
            auto it = rank_memo_big_.find(mask);
            if (it != rank_memo_big_.end()) return it->second;
        }
        if (slot && *slot >= 0) return *slot;
        std::vector<std::vector<i128>> m;
        for (std::size_t i = 0; i < rays_.size(); ++i)
            if (mask >> i & 1) m.push_back(unit_[i]);
        int r = static_cast<int>(exact_rank(m, cls_dim_));
        if (slot) *slot = r;
        else rank_memo_big_[mask] = r;
        return r;
    }

    std::size_t block_rank() const {
        std::vector<std::vector<i128>> m;
        for (const auto& b : blocks_) m.push_back(b.vec);
        return exact_rank(m, cls_dim_);
    }

    // Applies a choice at position pos; returns false if the resulting bound prunes.
    bool apply(std::size_t pos, std::size_t opt, std::size_t label) {
        choice_[pos] = {opt, label};
        if (label > 0) {
            used_mask_ |= std::uint64_t(1) << pos;
            const Rat& w = rays_[pos].weights[opt];
            if (label > blocks_.size()) {
                blocks_.push_back(Block{rays_[pos].scaled[opt], w, 1});
                deficit_ += 1 - w;
            } else {
                Block& b = blocks_[label - 1];
                for (std::size_t k = 0; k < cls_dim_; ++k) {
                    i128 v;
                    if (__builtin_add_overflow(b.vec[k], rays_[pos].scaled[opt][k], &v)) throw Overflow{};
                    b.vec[k] = v;
                }
                ++b.size;
                if (w < b.minw) {
                    deficit_ += b.minw - w;
                    b.minw = w;
                }
            }
        }
        return bound_ok(pos + 1);
    }

    void undo(std::size_t pos, const Block& saved, std::size_t nblocks, const Rat& deficit) {
        std::size_t label = choice_[pos].second;
        if (label > 0) {
            used_mask_ &= ~(std::uint64_t(1) << pos);
            if (blocks_.size() > nblocks) blocks_.pop_back();
            else blocks_[label - 1] = saved;
        }
        deficit_ = deficit;
    }

    bool bound_ok(std::size_t next) {
        ++best_->nodes;
        if (!best_->found) return true;
        std::uint64_t all = used_mask_;
        for (std::size_t i = next; i < rays_.size(); ++i) all |= std::uint64_t(1) << i;
        long g_all = ray_rank(all) - static_cast<long>(__builtin_popcountll(all));
        long slack = static_cast<long>(block_rank()) + static_cast<long>(__builtin_popcountll(used_mask_)) -
                     static_cast<long>(blocks_.size()) - ray_rank(used_mask_);
        Rat bound = Rat(static_cast<long>(dim_) + g_all + slack) + deficit_;
        return bound < best_->value;
    }

    void leaf() {
        std::size_t span = block_rank();
        Rat v = Rat(static_cast<long>(dim_ + span)) - Rat(0);
        for (const auto& b : blocks_) v -= b.minw;
        if (!best_->found || v < best_->value) {
            best_->found = true;
            best_->value = v;
            best_->choice = choice_;
            best_->span = span;
        }
    }

    void descend(std::size_t pos) {
        if (pos == rays_.size()) {
            leaf();
            return;
        }
        const auto& r = rays_[pos];
        for (std::size_t o = 0; o < r.indices.size(); ++o) {
            std::size_t max_label = r.weights[o] > 0 ? blocks_.size() + 1 : 0;
            std::size_t min_label = o == 0 ? 0 : 1;  // unused with n > 1 is dominated by n = 1
            for (std::size_t l = min_label; l <= max_label; ++l) {
                std::size_t nb = blocks_.size();
                Block saved = (l > 0 && l <= nb) ? blocks_[l - 1] : Block{};
                Rat deficit = deficit_;
                if (apply(pos, o, l)) descend(pos + 1);
                undo(pos, saved, nb, deficit);
            }
        }
    }
};

}  // namespace detail

namespace detail {

// Exhaustive search over (orbifold index, block label) per active ray.
inline std::pair<OrbifoldDecomposition, SearchResult> search_decompositions(const ComplexityContext& ctx, const InvariantDivisor& b,
                                                                            unsigned cap, bool orbifold, const MinimizeOptions& opt) {
    std::vector<std::size_t> active;
    for (auto i : ctx.central)
        if (b[i] > 0) active.push_back(i);
    if (active.size() > opt.max_active_rays)
        fail(ErrorKind::InvalidArgument, "search over " + std::to_string(active.size()) + " boundary rays exceeds the partition limit " +
                                             std::to_string(opt.max_active_rays));
    std::size_t cls_dim = ctx.group.free_rank;
    std::vector<SearchRay> rays;
    std::vector<std::vector<i128>> unit;
    Int big_l = 1;
    std::vector<std::vector<Int>> options;
    for (auto i : active) {
        std::vector<Int> ns{Int(1)};
        if (orbifold) {
            Int den = b[i].get_den();
            for (unsigned k = 2; k <= cap; ++k)
                if (den % k == 0 && b[i] >= 1 - Rat(1, k)) ns.push_back(Int(k));
        }
        for (const auto& n : ns) big_l = lcm(big_l, n);
        options.push_back(ns);
    }
    for (std::size_t a = 0; a < active.size(); ++a) {
        std::size_t i = active[a];
        InvariantDivisor e(ctx.num_rays, Rat(0));
        e[i] = 1;
        RatVec cls = ctx.rational_class(e);
        std::vector<i128> u(cls_dim);
        for (std::size_t k = 0; k < cls_dim; ++k) u[k] = to_i128(cls[k].get_num());
        unit.push_back(u);
        SearchRay sr;
        sr.ray = i;
        sr.indices = options[a];
        for (const auto& n : sr.indices) {
            sr.weights.push_back(Rat(n) * (b[i] - 1) + 1);
            std::vector<i128> s(cls_dim);
            i128 f = to_i128(big_l / n);
            for (std::size_t k = 0; k < cls_dim; ++k) s[k] = checked_mul(u[k], f);
            sr.scaled.push_back(s);
        }
        rays.push_back(sr);
    }

    Searcher proto(ctx.dim, cls_dim, rays, unit);
    auto roots = proto.root_choices();
    unsigned workers = worker_count(opt.threads, roots.size());
    SearchResult best;
    if (workers <= 1) {
        Searcher s(ctx.dim, cls_dim, rays, unit);
        for (auto [o, l] : roots) s.run(o, l, best);
    } else {
        std::vector<SearchResult> results(roots.size());
        std::size_t next = 0;
        std::mutex mu;
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w)
            pool.emplace_back([&]() {
                Searcher s(ctx.dim, cls_dim, rays, unit);
                for (;;) {
                    std::size_t t;
                    {
                        std::lock_guard<std::mutex> lock(mu);
                        if (next == roots.size()) return;
                        t = next++;
                    }
                    s.run(roots[t].first, roots[t].second, results[t]);
                }
            });
        for (auto& th : pool) th.join();
        for (auto& r : results) {
            best.nodes += r.nodes;
            if (r.found && (!best.found || r.value < best.value)) {
                auto nodes = best.nodes;
                best = r;
                best.nodes = nodes;
            }
        }
    }

    OrbifoldDecomposition sigma;
    sigma.orbifold.assign(ctx.num_rays, Int(1));
    std::vector<Part> parts;
    for (std::size_t a = 0; a < rays.size(); ++a) {
        auto [o, l] = best.choice[a];
        if (l == 0) continue;
        const auto& r = rays[a];
        sigma.orbifold[r.ray] = r.indices[o];
        if (l > parts.size()) parts.push_back(Part{r.weights[o], InvariantDivisor(ctx.num_rays, Rat(0))});
        Part& p = parts[l - 1];
        p.divisor[r.ray] = Rat(1) / Rat(r.indices[o]);
        if (r.weights[o] < p.b) p.b = r.weights[o];
    }
    sigma.parts = parts;
    if (sigma.trivial_orbifold()) sigma.orbifold.clear();
    return {sigma, best};
}

}  // namespace detail

inline ComplexityReport minimize(const ToricPair& pair, const MinimizeOptions& opt = {}) {
    for (const auto& x : pair.boundary)
        if (x > 1) fail(ErrorKind::NotLogCanonical, "boundary coefficient above 1");
    if (opt.orbifold_cap < 1 || opt.orbifold_cap > 64) fail(ErrorKind::InvalidArgument, "orbifold cap must lie in [1, 64]");
    ComplexityContext ctx = make_context(pair);
    ComplexityReport rep;
    rep.dim = ctx.dim;
    rep.class_rank = ctx.class_rank();
    rep.sigma_c = prime_decomposition(ctx, pair.boundary);
    rep.c = complexity(ctx, pair.boundary, rep.sigma_c);

    auto [fine, fres] = detail::search_decompositions(ctx, pair.boundary, 1, false, opt);
    rep.sigma_fine = fine;
    rep.c_fine = fine_complexity(ctx, pair.boundary, fine);
    rep.span_fine = span_dim(ctx, fine);
    if (rep.c_fine != fres.value) fail(ErrorKind::TheoremCheckFailed, "fine-complexity search value disagrees with re-evaluation");

    auto [orb, ores] = detail::search_decompositions(ctx, pair.boundary, opt.orbifold_cap, true, opt);
    rep.sigma_orb = orb;
    rep.c_orb = orbifold_complexity(ctx, pair.boundary, orb);
    rep.span_orb = span_dim(ctx, orb);
    if (rep.c_orb != ores.value) fail(ErrorKind::TheoremCheckFailed, "orbifold-complexity search value disagrees with re-evaluation");
    rep.nodes = fres.nodes + ores.nodes;
    if (!(rep.c >= rep.c_fine && rep.c_fine >= rep.c_orb))
        fail(ErrorKind::TheoremCheckFailed, "inequality chain c >= fine >= orbifold failed");
    return rep;
}

inline ComplexityReport minimize(const Fan& f, const InvariantDivisor& b, const Mode& mode, const MinimizeOptions& opt = {}) {
    return minimize(build_pair(PairData{f, b, std::nullopt, mode}), opt);
}

}  // namespace toricomplex
