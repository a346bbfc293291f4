#include "secrecy/simplex.hpp"

#include <algorithm>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

// Dense tableau: a is m x n, rhs kept separately, basis holds the column
// basic in each row. Reduced profit row (c_j - z_j) is maintained alongside.
struct Tableau {
    std::vector<std::vector<Rat>> a;
    std::vector<Rat> b;
    std::vector<int> basis;
    std::vector<Rat> objrow;
    Rat objval = 0;
    std::vector<bool> allowed;
    std::size_t n_cols = 0;

    std::size_t rows() const { return a.size(); }
    std::size_t cols() const { return n_cols; }

    void price(const std::vector<Rat>& cost) {
        const std::size_t n = cols();
        objrow.assign(n, Rat(0));
        objval = 0;
        for (std::size_t j = 0; j < n; ++j) objrow[j] = cost[j];
        for (std::size_t r = 0; r < rows(); ++r) {
            const Rat cb = cost[static_cast<std::size_t>(basis[r])];
            if (cb == 0) continue;
            objval += cb * b[r];
            for (std::size_t j = 0; j < n; ++j) objrow[j] -= cb * a[r][j];
        }
    }

    void pivot(std::size_t r, std::size_t c) {
        const Rat inv = 1 / a[r][c];
        for (auto& v : a[r]) v *= inv;
        b[r] *= inv;
        for (std::size_t i = 0; i < rows(); ++i) {
            if (i == r || a[i][c] == 0) continue;
            const Rat f = a[i][c];
            for (std::size_t j = 0; j < cols(); ++j) a[i][j] -= f * a[r][j];
            b[i] -= f * b[r];
        }
        if (objrow[c] != 0) {
            const Rat f = objrow[c];
            for (std::size_t j = 0; j < cols(); ++j) objrow[j] -= f * a[r][j];
            objval += f * b[r];
        }
        basis[r] = static_cast<int>(c);
    }

    // Bland's rule; returns false when unbounded
    bool run() {
        for (;;) {
            std::size_t enter = cols();
            for (std::size_t j = 0; j < cols(); ++j) {
                if (allowed[j] && objrow[j] > 0) {
                    enter = j;
                    break;
                }
            }
            if (enter == cols()) return true;
            std::size_t leave = rows();
            Rat best_ratio = 0;
            for (std::size_t r = 0; r < rows(); ++r) {
                if (a[r][enter] <= 0) continue;
                const Rat ratio = b[r] / a[r][enter];
                if (leave == rows() || ratio < best_ratio ||
                    (ratio == best_ratio && basis[r] < basis[leave])) {
                    leave = r;
                    best_ratio = ratio;
                }
            }
            if (leave == rows()) return false;
            pivot(leave, enter);
        }
    }
};

struct Problem {
    Tableau tab;
    std::size_t n_struct = 0;  // 2 * #vars (positive/negative parts)
    std::size_t n_total = 0;
    std::size_t first_artificial = 0;
    std::vector<std::string> vars;
    bool trivially_infeasible = false;
};

Problem build(const LinSystem& sys) {
    Problem pr;
    pr.vars = sys.vars;
    const std::size_t k = sys.vars.size();
    std::map<std::string, std::size_t> var_col;
    for (std::size_t i = 0; i < k; ++i) var_col[sys.vars[i]] = i;

    std::vector<LinIneq> rows;
    for (const auto& r : sys.ineqs) {
        LinIneq iq = r;
        iq.normalize();
        if (iq.trivially_true()) continue;
        if (iq.trivially_false()) {
            pr.trivially_infeasible = true;
            return pr;
        }
        rows.push_back(std::move(iq));
    }

    const std::size_t m = rows.size();
    std::size_t n_slack = 0;
    for (const auto& r : rows)
        if (r.rel == Rel::LE) ++n_slack;

    pr.n_struct = 2 * k;
    const std::size_t n_before_art = pr.n_struct + n_slack;
    pr.first_artificial = n_before_art;

    auto& t = pr.tab;
    t.a.assign(m, std::vector<Rat>(n_before_art, Rat(0)));
    t.b.assign(m, Rat(0));
    t.basis.assign(m, -1);

    std::size_t slack_idx = 0;
    std::vector<bool> has_identity(m, false);
    for (std::size_t r = 0; r < m; ++r) {
        for (const auto& [v, c] : rows[r].coeffs) {
            const std::size_t j = var_col.at(v);
            t.a[r][j] = c;
            t.a[r][k + j] = -c;
        }
        t.b[r] = rows[r].rhs;
        bool negated = false;
        if (t.b[r] < 0) {
            for (auto& v : t.a[r]) v = -v;
            t.b[r] = -t.b[r];
            negated = true;
        }
        if (rows[r].rel == Rel::LE) {
            const std::size_t sj = pr.n_struct + slack_idx++;
            t.a[r][sj] = negated ? Rat(-1) : Rat(1);
            if (!negated) {
                t.basis[r] = static_cast<int>(sj);
                has_identity[r] = true;
            }
        }
    }

    // artificials for rows without an identity column
    std::size_t n_art = 0;
    for (std::size_t r = 0; r < m; ++r)
        if (!has_identity[r]) ++n_art;
    pr.n_total = n_before_art + n_art;
    t.n_cols = pr.n_total;
    for (std::size_t r = 0; r < m; ++r) t.a[r].resize(pr.n_total, Rat(0));
    std::size_t art = n_before_art;
    for (std::size_t r = 0; r < m; ++r) {
        if (!has_identity[r]) {
            t.a[r][art] = 1;
            t.basis[r] = static_cast<int>(art);
            ++art;
        }
    }
    t.allowed.assign(pr.n_total, true);
    return pr;
}

// phase 1: returns feasibility; on success artificials are driven out
bool phase1(Problem& pr) {
    auto& t = pr.tab;
    if (t.rows() == 0) return true;
    std::vector<Rat> cost(pr.n_total, Rat(0));
    for (std::size_t j = pr.first_artificial; j < pr.n_total; ++j) cost[j] = -1;
    t.price(cost);
    t.run();  // bounded: objective <= 0
    if (t.objval < 0) return false;

    // drive artificial variables out of the basis
    for (std::size_t r = 0; r < t.rows();) {
        if (static_cast<std::size_t>(t.basis[r]) < pr.first_artificial) {
            ++r;
            continue;
        }
        std::size_t piv = pr.n_total;
        for (std::size_t j = 0; j < pr.first_artificial; ++j) {
            if (t.a[r][j] != 0) {
                piv = j;
                break;
            }
        }
        if (piv == pr.n_total) {
            // redundant row
            t.a.erase(t.a.begin() + static_cast<std::ptrdiff_t>(r));
            t.b.erase(t.b.begin() + static_cast<std::ptrdiff_t>(r));
            t.basis.erase(t.basis.begin() + static_cast<std::ptrdiff_t>(r));
        } else {
            t.pivot(r, piv);
            ++r;
        }
    }
    for (std::size_t j = pr.first_artificial; j < pr.n_total; ++j) t.allowed[j] = false;
    return true;
}

std::map<std::string, Rat> extract_point(const Problem& pr) {
    std::map<std::string, Rat> point;
    const std::size_t k = pr.vars.size();
    std::vector<Rat> col_val(pr.n_total, Rat(0));
    for (std::size_t r = 0; r < pr.tab.rows(); ++r)
        col_val[static_cast<std::size_t>(pr.tab.basis[r])] = pr.tab.b[r];
    for (std::size_t i = 0; i < k; ++i) point[pr.vars[i]] = col_val[i] - col_val[k + i];
    return point;
}

}  // namespace

LpResult lp_maximize(const LinSystem& sys, const std::map<std::string, Rat>& objective) {
    sys.validate();
    for (const auto& [v, c] : objective)
        if (c != 0 && !sys.has_var(v))
            throw input_error("lp_maximize: objective uses unknown variable '" + v + "'");

    Problem pr = build(sys);
    LpResult res;
    if (pr.trivially_infeasible) {
        res.status = LpStatus::Infeasible;
        return res;
    }
    if (!phase1(pr)) {
        res.status = LpStatus::Infeasible;
        return res;
    }

    std::vector<Rat> cost(pr.n_total, Rat(0));
    const std::size_t k = pr.vars.size();
    for (std::size_t i = 0; i < k; ++i) {
        auto it = objective.find(pr.vars[i]);
        if (it != objective.end()) {
            cost[i] = it->second;
            cost[k + i] = -it->second;
        }
    }
    pr.tab.price(cost);
    if (!pr.tab.run()) {
        res.status = LpStatus::Unbounded;
        return res;
    }
    res.status = LpStatus::Optimal;
    res.value = pr.tab.objval;
    res.point = extract_point(pr);
    return res;
}

bool lp_feasible(const LinSystem& sys) {
    sys.validate();
    Problem pr = build(sys);
    if (pr.trivially_infeasible) return false;
    return phase1(pr);
}

bool lp_feasible_with_fixed(const LinSystem& sys, const std::map<std::string, Rat>& fixed) {
    LinSystem reduced;
    for (const auto& v : sys.vars)
        if (fixed.find(v) == fixed.end()) reduced.vars.push_back(v);
    for (const auto& r : sys.ineqs) {
        LinIneq iq;
        iq.rel = r.rel;
        iq.rhs = r.rhs;
        for (const auto& [v, c] : r.coeffs) {
            auto it = fixed.find(v);
            if (it == fixed.end())
                iq.coeffs[v] += c;
            else
                iq.rhs -= c * it->second;
        }
        iq.normalize();
        if (iq.trivially_false()) return false;
        if (!iq.trivially_true()) reduced.ineqs.push_back(std::move(iq));
    }
    return lp_feasible(reduced);
}

}  // namespace secrecy
