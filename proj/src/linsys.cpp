#include "secrecy/linsys.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "secrecy/errors.hpp"
#include "secrecy/simplex.hpp"

namespace secrecy {

// ---------------------------------------------------------------- rationals

Rat rat_from_double_12(double x) {
    if (!std::isfinite(x)) throw input_error("rational conversion: non-finite value");
    const double scaled = std::round(x * 1e12);
    if (std::abs(scaled) > 9.1e18) throw input_error("rational conversion: value too large");
    Rat r(static_cast<long>(scaled), 1000000000000L);
    r.canonicalize();
    return r;
}

double rat_to_double(const Rat& r) { return r.get_d(); }

std::string rat_to_string(const Rat& r) {
    if (r.get_den() == 1) return r.get_num().get_str();
    return r.get_num().get_str() + "/" + r.get_den().get_str();
}

Rat rat_parse(const std::string& s) {
    if (s.empty()) throw input_error("rational parse: empty token");
    try {
        if (s.find('/') != std::string::npos) {
            Rat r(s);
            r.canonicalize();
            return r;
        }
        if (s.find('.') != std::string::npos || s.find('e') != std::string::npos ||
            s.find('E') != std::string::npos) {
            std::size_t pos = 0;
            const double d = std::stod(s, &pos);
            if (pos != s.size()) throw input_error("rational parse: bad token '" + s + "'");
            return rat_from_double_12(d);
        }
        Rat r(s);
        r.canonicalize();
        return r;
    } catch (const std::invalid_argument&) {
        throw input_error("rational parse: bad token '" + s + "'");
    }
}

// ------------------------------------------------------------------ LinIneq

Rat LinIneq::coeff(const std::string& var) const {
    auto it = coeffs.find(var);
    return it == coeffs.end() ? Rat(0) : it->second;
}

bool LinIneq::mentions(const std::string& var) const {
    auto it = coeffs.find(var);
    return it != coeffs.end() && it->second != 0;
}

void LinIneq::normalize() {
    for (auto it = coeffs.begin(); it != coeffs.end();)
        it = (it->second == 0) ? coeffs.erase(it) : std::next(it);
    if (coeffs.empty()) {
        // canonical var-free rows for dedup purposes
        if (rel == Rel::LE) rhs = trivially_false() ? Rat(-1) : Rat(0);
        return;
    }
    mpz_class lcm_den = 1;
    for (const auto& [_, c] : coeffs) mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), c.get_den().get_mpz_t());
    mpz_lcm(lcm_den.get_mpz_t(), lcm_den.get_mpz_t(), rhs.get_den().get_mpz_t());
    const Rat scale(lcm_den, 1);
    mpz_class g = 0;
    for (auto& [_, c] : coeffs) {
        c *= scale;
        c.canonicalize();
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num().get_mpz_t());
    }
    rhs *= scale;
    rhs.canonicalize();
    if (g > 1) {
        const Rat div(g, 1);
        for (auto& [_, c] : coeffs) {
            c /= div;
            c.canonicalize();
        }
        rhs /= div;
        rhs.canonicalize();
    }
    if (rel == Rel::EQ && coeffs.begin()->second < 0) {
        for (auto& [_, c] : coeffs) c = -c;
        rhs = -rhs;
    }
}

bool LinIneq::trivially_true() const {
    if (!coeffs.empty()) return false;
    return rel == Rel::LE ? rhs >= 0 : rhs == 0;
}

bool LinIneq::trivially_false() const {
    if (!coeffs.empty()) return false;
    return rel == Rel::LE ? rhs < 0 : rhs != 0;
}

std::string LinIneq::to_string() const {
    std::ostringstream os;
    if (coeffs.empty()) {
        os << "0";
    } else {
        bool first = true;
        for (const auto& [v, c] : coeffs) {
            if (!first) os << " + ";
            os << rat_to_string(c) << "*" << v;
            first = false;
        }
    }
    os << (rel == Rel::LE ? " <= " : " = ") << rat_to_string(rhs);
    return os.str();
}

LinIneq make_le(const std::map<std::string, Rat>& coeffs, const Rat& rhs) {
    LinIneq iq;
    iq.coeffs = coeffs;
    iq.rhs = rhs;
    iq.rel = Rel::LE;
    iq.normalize();
    return iq;
}

LinIneq make_ge(const std::map<std::string, Rat>& coeffs, const Rat& rhs) {
    LinIneq iq;
    for (const auto& [v, c] : coeffs) iq.coeffs[v] = -c;
    iq.rhs = -rhs;
    iq.rel = Rel::LE;
    iq.normalize();
    return iq;
}

LinIneq make_eq(const std::map<std::string, Rat>& coeffs, const Rat& rhs) {
    LinIneq iq;
    iq.coeffs = coeffs;
    iq.rhs = rhs;
    iq.rel = Rel::EQ;
    iq.normalize();
    return iq;
}

// ----------------------------------------------------------------- LinSystem

bool LinSystem::has_var(const std::string& v) const {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
}

void LinSystem::validate() const {
    std::set<std::string> names(vars.begin(), vars.end());
    if (names.size() != vars.size()) throw input_error("linear system: duplicate variable");
    for (const auto& iq : ineqs)
        for (const auto& [v, c] : iq.coeffs)
            if (c != 0 && names.find(v) == names.end())
                throw input_error("linear system: row uses unknown variable '" + v + "'");
}

bool LinSystem::has_contradiction() const {
    return std::any_of(ineqs.begin(), ineqs.end(),
                       [](const LinIneq& iq) { return iq.trivially_false(); });
}

std::string LinSystem::to_text() const {
    std::ostringstream os;
    os << "vars:";
    for (const auto& v : vars) os << " " << v;
    os << "\n";
    for (const auto& iq : ineqs) os << iq.to_string() << "\n";
    return os.str();
}

LinSystem LinSystem::parse(const std::string& text) {
    LinSystem sys;
    std::istringstream is(text);
    std::string line;
    std::set<std::string> seen_vars;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (line.rfind("vars:", 0) == 0) {
            std::istringstream vs(line.substr(5));
            std::string v;
            while (vs >> v)
                if (seen_vars.insert(v).second) sys.vars.push_back(v);
            continue;
        }
        Rel rel;
        std::size_t pos;
        if ((pos = line.find("<=")) != std::string::npos) {
            rel = Rel::LE;
        } else if ((pos = line.find('=')) != std::string::npos) {
            rel = Rel::EQ;
        } else {
            throw input_error("system parse: no relation in line '" + line + "'");
        }
        LinIneq iq;
        iq.rel = rel;
        iq.rhs = rat_parse([&] {
            std::string r = line.substr(pos + (rel == Rel::LE ? 2 : 1));
            r.erase(0, r.find_first_not_of(" \t"));
            r.erase(r.find_last_not_of(" \t") + 1);
            return r;
        }());
        std::string lhs = line.substr(0, pos);
        std::istringstream ls(lhs);
        std::string tok;
        while (ls >> tok) {
            if (tok == "+") continue;
            if (tok == "0" && iq.coeffs.empty()) continue;
            const std::size_t star = tok.find('*');
            if (star == std::string::npos)
                throw input_error("system parse: bad term '" + tok + "'");
            const std::string var = tok.substr(star + 1);
            iq.coeffs[var] += rat_parse(tok.substr(0, star));
            if (seen_vars.insert(var).second) sys.vars.push_back(var);
        }
        iq.normalize();
        sys.ineqs.push_back(std::move(iq));
    }
    return sys;
}

bool satisfies(const LinSystem& sys, const std::map<std::string, Rat>& point) {
    for (const auto& iq : sys.ineqs) {
        Rat lhs = 0;
        for (const auto& [v, c] : iq.coeffs) {
            auto it = point.find(v);
            if (it == point.end()) throw input_error("satisfies: point misses variable '" + v + "'");
            lhs += c * it->second;
        }
        if (iq.rel == Rel::LE ? !(lhs <= iq.rhs) : !(lhs == iq.rhs)) return false;
    }
    return true;
}

// -------------------------------------------------------------- elimination

namespace {

// r -> r - factor * pivot (coefficient-wise, rhs included)
LinIneq subtract_scaled(const LinIneq& r, const Rat& factor, const LinIneq& pivot) {
    LinIneq out = r;
    for (const auto& [v, c] : pivot.coeffs) {
        out.coeffs[v] -= factor * c;
    }
    out.rhs -= factor * pivot.rhs;
    out.normalize();
    return out;
}

void push_row(LinSystem& sys, LinIneq iq, std::set<std::string>& dedupe) {
    if (iq.trivially_true()) return;
    const std::string key = (iq.rel == Rel::LE ? "L" : "E") + iq.to_string();
    if (dedupe.insert(key).second) sys.ineqs.push_back(std::move(iq));
}

}  // namespace

LinSystem eliminate(const LinSystem& sys, const std::string& var) {
    if (!sys.has_var(var)) throw input_error("eliminate: unknown variable '" + var + "'");

    LinSystem out;
    for (const auto& v : sys.vars)
        if (v != var) out.vars.push_back(v);
    std::set<std::string> dedupe;

    // substitution via an equality that mentions var
    for (std::size_t i = 0; i < sys.ineqs.size(); ++i) {
        const LinIneq& pivot = sys.ineqs[i];
        if (pivot.rel != Rel::EQ || !pivot.mentions(var)) continue;
        const Rat pc = pivot.coeff(var);
        for (std::size_t j = 0; j < sys.ineqs.size(); ++j) {
            if (j == i) continue;
            const LinIneq& r = sys.ineqs[j];
            const Rat rc = r.coeff(var);
            if (rc == 0) {
                LinIneq copy = r;
                copy.normalize();
                push_row(out, std::move(copy), dedupe);
            } else {
                push_row(out, subtract_scaled(r, rc / pc, pivot), dedupe);
            }
        }
        return out;
    }

    // Fourier-Motzkin pairing
    std::vector<const LinIneq*> lowers, uppers;
    for (const auto& r : sys.ineqs) {
        const Rat c = r.coeff(var);
        if (c == 0) {
            LinIneq copy = r;
            copy.normalize();
            push_row(out, std::move(copy), dedupe);
        } else if (c > 0) {
            uppers.push_back(&r);
        } else {
            lowers.push_back(&r);
        }
    }
    for (const auto* lo : lowers) {
        const Rat cl = lo->coeff(var);  // < 0
        for (const auto* up : uppers) {
            const Rat cu = up->coeff(var);  // > 0
            LinIneq combined;
            combined.rel = Rel::LE;
            for (const auto& [v, c] : up->coeffs) combined.coeffs[v] += c * (-cl);
            for (const auto& [v, c] : lo->coeffs) combined.coeffs[v] += c * cu;
            combined.rhs = up->rhs * (-cl) + lo->rhs * cu;
            combined.coeffs.erase(var);
            combined.normalize();
            push_row(out, std::move(combined), dedupe);
        }
    }
    return out;
}

LinSystem eliminate_all(const LinSystem& sys, const std::vector<std::string>& vars_to_remove,
                        bool prune) {
    LinSystem cur = sys;
    cur.validate();
    std::vector<std::string> remaining = vars_to_remove;
    for (const auto& v : remaining)
        if (!cur.has_var(v)) throw input_error("eliminate_all: unknown variable '" + v + "'");

    while (!remaining.empty()) {
        // pick the cheapest variable: equality substitution first, then the
        // smallest lower*upper pairing count
        std::size_t best = 0;
        long best_cost = -1;
        for (std::size_t k = 0; k < remaining.size(); ++k) {
            const std::string& v = remaining[k];
            bool in_eq = false;
            long nl = 0, nu = 0;
            for (const auto& r : cur.ineqs) {
                if (!r.mentions(v)) continue;
                if (r.rel == Rel::EQ) in_eq = true;
                else if (r.coeff(v) > 0) ++nu;
                else ++nl;
            }
            const long cost = in_eq ? 0 : nl * nu + nl + nu + 1;
            if (best_cost < 0 || cost < best_cost) {
                best_cost = cost;
                best = k;
            }
        }
        const std::string var = remaining[best];
        remaining.erase(remaining.begin() + static_cast<std::ptrdiff_t>(best));
        cur = eliminate(cur, var);
        if (prune) cur = remove_redundant(cur);
    }
    return cur;
}

LinSystem remove_redundant(const LinSystem& sys) {
    LinSystem cur;
    cur.vars = sys.vars;

    // normalize, drop trivial truths, dedupe, keep only the tightest rhs
    // among rows sharing a coefficient signature
    std::map<std::string, std::size_t> by_sig;
    std::set<std::string> eq_seen;
    for (const auto& r : sys.ineqs) {
        LinIneq iq = r;
        iq.normalize();
        if (iq.trivially_true()) continue;
        if (iq.trivially_false()) {
            LinSystem bad;
            bad.vars = sys.vars;
            LinIneq marker;
            marker.rel = Rel::LE;
            marker.rhs = -1;
            bad.ineqs.push_back(marker);
            return bad;
        }
        if (iq.rel == Rel::EQ) {
            if (eq_seen.insert(iq.to_string()).second) cur.ineqs.push_back(std::move(iq));
            continue;
        }
        std::string sig;
        for (const auto& [v, c] : iq.coeffs) sig += v + ":" + rat_to_string(c) + ";";
        auto it = by_sig.find(sig);
        if (it == by_sig.end()) {
            by_sig.emplace(sig, cur.ineqs.size());
            cur.ineqs.push_back(std::move(iq));
        } else if (iq.rhs < cur.ineqs[it->second].rhs) {
            cur.ineqs[it->second].rhs = iq.rhs;
        }
    }

    if (cur.ineqs.empty()) return cur;
    if (!lp_feasible(cur)) {
        LinSystem bad;
        bad.vars = sys.vars;
        LinIneq marker;
        marker.rel = Rel::LE;
        marker.rhs = -1;
        bad.ineqs.push_back(marker);
        return bad;
    }

    // LP-based pruning of <= rows
    for (std::size_t i = 0; i < cur.ineqs.size();) {
        if (cur.ineqs[i].rel != Rel::LE) {
            ++i;
            continue;
        }
        LinSystem rest;
        rest.vars = cur.vars;
        for (std::size_t j = 0; j < cur.ineqs.size(); ++j)
            if (j != i) rest.ineqs.push_back(cur.ineqs[j]);
        const LpResult res = lp_maximize(rest, cur.ineqs[i].coeffs);
        if (res.status == LpStatus::Optimal && res.value <= cur.ineqs[i].rhs) {
            cur.ineqs.erase(cur.ineqs.begin() + static_cast<std::ptrdiff_t>(i));
        } else {
            ++i;
        }
    }
    return cur;
}

}  // namespace secrecy
