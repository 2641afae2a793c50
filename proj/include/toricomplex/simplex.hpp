#pragma once

// Exact two-phase primal simplex (Bland's rule) over the rationals.

#include "matrix.hpp"

namespace toricomplex {

enum class Relation { LessEq, Equal, GreaterEq };

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpResult {
    LpStatus status = LpStatus::Infeasible;
    Rat value = 0;
    RatVec x;
};

// maximize objective·x subject to rows, x_j >= 0 where nonneg[j].
class LinearProgram {
public:
    explicit LinearProgram(std::size_t num_vars, bool all_nonneg = false)
        : n_(num_vars), nonneg_(num_vars, all_nonneg), objective_(num_vars, Rat(0)) {}

    std::size_t num_vars() const { return n_; }
    void set_nonneg(std::size_t j, bool v = true) { nonneg_[j] = v; }
    void set_objective(const RatVec& c) { objective_ = c; }

    void add(const RatVec& coeffs, Relation rel, const Rat& rhs) {
        if (coeffs.size() != n_) fail(ErrorKind::InvalidArgument, "LP row has wrong length");
        rows_.push_back(coeffs);
        rels_.push_back(rel);
        rhs_.push_back(rhs);
    }

    LpResult solve() const;

private:
    std::size_t n_;
    std::vector<bool> nonneg_;
    RatVec objective_;
    std::vector<RatVec> rows_;
    std::vector<Relation> rels_;
    RatVec rhs_;
};

namespace detail {

struct Tableau {
    std::size_t m, cols;  // cols excludes rhs
    std::vector<RatVec> t;  // m rows of cols+1
    std::vector<std::size_t> basis;

    void pivot(std::size_t r, std::size_t c) {
        Rat inv = 1 / t[r][c];
        for (auto& x : t[r]) x *= inv;
        for (std::size_t i = 0; i < m; ++i) {
            if (i == r || t[i][c] == 0) continue;
            Rat k = t[i][c];
            for (std::size_t j = 0; j <= cols; ++j)
                if (t[r][j] != 0) t[i][j] -= k * t[r][j];
        }
        basis[r] = c;
    }

    // Maximizes cost over columns where allowed[j]; returns false if unbounded.
    bool optimize(const RatVec& cost, const std::vector<bool>& allowed) {
        for (;;) {
            std::size_t enter = cols;
            for (std::size_t j = 0; j < cols && enter == cols; ++j) {
                if (!allowed[j]) continue;
                Rat rc = cost[j];
                for (std::size_t i = 0; i < m; ++i)
                    if (t[i][j] != 0) rc -= cost[basis[i]] * t[i][j];
                if (rc > 0) enter = j;
            }
            if (enter == cols) return true;
            std::size_t leave = m;
            Rat best;
            for (std::size_t i = 0; i < m; ++i) {
                if (t[i][enter] <= 0) continue;
                Rat ratio = t[i][cols] / t[i][enter];
                if (leave == m || ratio < best || (ratio == best && basis[i] < basis[leave])) {
                    leave = i;
                    best = ratio;
                }
            }
            if (leave == m) return false;
            pivot(leave, enter);
        }
    }
};

}  // namespace detail

inline LpResult LinearProgram::solve() const {
    // column layout: split variables, then slacks, then artificials
    std::vector<std::size_t> pos(n_), neg(n_, SIZE_MAX);
    std::size_t cols = 0;
    for (std::size_t j = 0; j < n_; ++j) {
        pos[j] = cols++;
        if (!nonneg_[j]) neg[j] = cols++;
    }
    std::size_t m = rows_.size();
    std::vector<std::size_t> slack(m, SIZE_MAX);
    for (std::size_t i = 0; i < m; ++i)
        if (rels_[i] != Relation::Equal) slack[i] = cols++;
    std::size_t first_art = cols;
    cols += m;

    detail::Tableau tab{m, cols, std::vector<RatVec>(m, RatVec(cols + 1, Rat(0))), std::vector<std::size_t>(m)};
    for (std::size_t i = 0; i < m; ++i) {
        auto& row = tab.t[i];
        for (std::size_t j = 0; j < n_; ++j) {
            row[pos[j]] = rows_[i][j];
            if (neg[j] != SIZE_MAX) row[neg[j]] = -rows_[i][j];
        }
        if (rels_[i] == Relation::LessEq) row[slack[i]] = 1;
        if (rels_[i] == Relation::GreaterEq) row[slack[i]] = -1;
        row[cols] = rhs_[i];
        if (row[cols] < 0)
            for (std::size_t j = 0; j < first_art; ++j) row[j] = -row[j];
        if (row[cols] < 0) row[cols] = -row[cols];
        row[first_art + i] = 1;
        tab.basis[i] = first_art + i;
    }

    std::vector<bool> allowed(cols, true);
    RatVec phase1(cols, Rat(0));
    for (std::size_t i = 0; i < m; ++i) phase1[first_art + i] = -1;
    tab.optimize(phase1, allowed);
    Rat infeas = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (tab.basis[i] >= first_art) infeas += tab.t[i][cols];
    LpResult res;
    if (infeas != 0) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    // drive remaining (zero-level) artificials out of the basis; drop redundant rows
    for (std::size_t i = 0; i < tab.m;) {
        if (tab.basis[i] < first_art) {
            ++i;
            continue;
        }
        std::size_t c = first_art;
        for (std::size_t j = 0; j < first_art; ++j)
            if (tab.t[i][j] != 0) {
                c = j;
                break;
            }
        if (c < first_art) {
            tab.pivot(i, c);
            ++i;
        } else {
            tab.t.erase(tab.t.begin() + i);
            tab.basis.erase(tab.basis.begin() + i);
            --tab.m;
        }
    }
    for (std::size_t j = first_art; j < cols; ++j) allowed[j] = false;

    RatVec cost(cols, Rat(0));
    for (std::size_t j = 0; j < n_; ++j) {
        cost[pos[j]] = objective_[j];
        if (neg[j] != SIZE_MAX) cost[neg[j]] = -objective_[j];
    }
    if (!tab.optimize(cost, allowed)) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    RatVec col_val(cols, Rat(0));
    for (std::size_t i = 0; i < tab.m; ++i) col_val[tab.basis[i]] = tab.t[i][cols];
    res.x.assign(n_, Rat(0));
    for (std::size_t j = 0; j < n_; ++j) {
        res.x[j] = col_val[pos[j]];
        if (neg[j] != SIZE_MAX) res.x[j] -= col_val[neg[j]];
    }
    res.status = LpStatus::Optimal;
    res.value = dot(objective_, res.x);
    return res;
}

// Convenience: is there x with the given rows satisfied (objective ignored)?
inline bool feasible(const LinearProgram& lp) { return lp.solve().status != LpStatus::Infeasible; }

}  // namespace toricomplex
