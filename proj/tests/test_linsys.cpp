#include <doctest.h>

#include <algorithm>

#include "secrecy/errors.hpp"
#include "secrecy/linsys.hpp"
#include "secrecy/region.hpp"
#include "secrecy/rng.hpp"
#include "secrecy/simplex.hpp"

using namespace secrecy;

namespace {

// random small system over the given vars, coefficients in [-3, 3]
LinSystem random_system(Rng& rng, const std::vector<std::string>& vars, std::size_t n_rows) {
    LinSystem sys;
    sys.vars = vars;
    for (std::size_t r = 0; r < n_rows; ++r) {
        LinIneq iq;
        iq.rel = Rel::LE;
        for (const auto& v : vars) {
            const long c = static_cast<long>(rng.next_below(7)) - 3;
            if (c != 0) iq.coeffs[v] = Rat(c, 1 + static_cast<long>(rng.next_below(2)));
        }
        iq.rhs = Rat(static_cast<long>(rng.next_below(13)) - 2, 1);
        iq.normalize();
        sys.ineqs.push_back(std::move(iq));
    }
    // keep things bounded: box constraints
    for (const auto& v : vars) {
        sys.add(make_le({{v, 1}}, 6));
        sys.add(make_ge({{v, 1}}, -6));
    }
    return sys;
}

std::map<std::string, Rat> random_point(Rng& rng, const std::vector<std::string>& vars) {
    std::map<std::string, Rat> p;
    for (const auto& v : vars)
        p[v] = Rat(static_cast<long>(rng.next_below(29)) - 14, 2);
    return p;
}

}  // namespace

TEST_CASE("rational round-trips") {
    CHECK(rat_to_string(rat_parse("3/4")) == "3/4");
    CHECK(rat_to_string(rat_parse("-6/8")) == "-3/4");
    CHECK(rat_to_string(rat_parse("5")) == "5");
    CHECK(rat_to_string(rat_parse("0.25")) == "1/4");
    CHECK(rat_to_double(rat_from_double_12(0.125)) == doctest::Approx(0.125));
}

TEST_CASE("eliminate: single pairing") {
    LinSystem sys;
    sys.vars = {"x", "y"};
    sys.add(make_ge({{"y", 1}}, 0));
    sys.add(make_le({{"x", 1}, {"y", 1}}, 2));
    const LinSystem out = eliminate(sys, "y");
    REQUIRE(out.vars == std::vector<std::string>{"x"});
    REQUIRE(out.ineqs.size() == 1);
    CHECK(out.ineqs[0].to_string() == "1*x <= 2");
}

TEST_CASE("eliminate: contradiction becomes an infeasibility marker") {
    LinSystem sys;
    sys.vars = {"y"};
    sys.add(make_ge({{"y", 1}}, 1));
    sys.add(make_le({{"y", 1}}, 0));
    const LinSystem out = eliminate(sys, "y");
    REQUIRE(out.ineqs.size() == 1);
    CHECK(out.ineqs[0].trivially_false());
}

TEST_CASE("eliminate substitutes equalities first") {
    LinSystem sys;
    sys.vars = {"x", "y"};
    sys.add(make_eq({{"x", 1}, {"y", -1}}, 1));  // x = y + 1
    sys.add(make_le({{"x", 1}}, 3));
    const LinSystem out = eliminate(sys, "x");
    REQUIRE(out.ineqs.size() == 1);
    CHECK(out.ineqs[0].to_string() == "1*y <= 2");
}

TEST_CASE("eliminate_all edge cases") {
    LinSystem sys;
    sys.vars = {"x", "y"};
    sys.add(make_le({{"x", 1}, {"y", 1}}, 2));
    sys.add(make_ge({{"x", 1}}, 0));
    sys.add(make_ge({{"y", 1}}, 0));

    // removing zero variables leaves the system unchanged
    const LinSystem same = eliminate_all(sys, {}, false);
    CHECK(same.ineqs.size() == sys.ineqs.size());

    // removing everything from a feasible system leaves no constraints
    const LinSystem none = eliminate_all(sys, {"x", "y"});
    CHECK(none.vars.empty());
    CHECK(none.ineqs.empty());
}

TEST_CASE("remove_redundant drops implied rows") {
    LinSystem sys;
    sys.vars = {"x", "y"};
    sys.add(make_le({{"x", 1}}, 1));
    sys.add(make_le({{"x", 1}}, 2));
    LinSystem out = remove_redundant(sys);
    REQUIRE(out.ineqs.size() == 1);
    CHECK(out.ineqs[0].to_string() == "1*x <= 1");

    LinSystem sys2;
    sys2.vars = {"x", "y"};
    sys2.add(make_le({{"x", 1}}, 1));
    sys2.add(make_le({{"y", 1}}, 1));
    sys2.add(make_le({{"x", 1}, {"y", 1}}, 3));
    out = remove_redundant(sys2);
    CHECK(out.ineqs.size() == 2);
}

TEST_CASE("remove_redundant preserves membership on random points") {
    Rng rng(23);
    for (int rep = 0; rep < 30; ++rep) {
        const std::vector<std::string> vars = {"a", "b", "c"};
        const LinSystem sys = random_system(rng, vars, 6);
        const LinSystem pruned = remove_redundant(sys);
        for (int k = 0; k < 40; ++k) {
            const auto p = random_point(rng, vars);
            CHECK(satisfies(sys, p) == satisfies(pruned, p));
        }
    }
}

TEST_CASE("exact simplex agrees with brute-force vertex enumeration in 2D") {
    Rng rng(29);
    for (int rep = 0; rep < 30; ++rep) {
        const std::vector<std::string> vars = {"x", "y"};
        const LinSystem sys = random_system(rng, vars, 4);
        std::map<std::string, Rat> obj;
        obj["x"] = Rat(static_cast<long>(rng.next_below(5)) - 2);
        obj["y"] = Rat(static_cast<long>(rng.next_below(5)) - 2);
        const LpResult lp = lp_maximize(sys, obj);
        if (lp.status != LpStatus::Optimal) continue;

        // brute force: max over all pairwise intersection vertices
        std::vector<LinIneq> rows = sys.ineqs;
        Rat best;
        bool found = false;
        for (std::size_t i = 0; i < rows.size(); ++i)
            for (std::size_t j = i + 1; j < rows.size(); ++j) {
                const Rat a1 = rows[i].coeff("x"), b1 = rows[i].coeff("y");
                const Rat a2 = rows[j].coeff("x"), b2 = rows[j].coeff("y");
                const Rat det = a1 * b2 - a2 * b1;
                if (det == 0) continue;
                std::map<std::string, Rat> pt;
                pt["x"] = (rows[i].rhs * b2 - rows[j].rhs * b1) / det;
                pt["y"] = (a1 * rows[j].rhs - a2 * rows[i].rhs) / det;
                if (!satisfies(sys, pt)) continue;
                const Rat val = obj["x"] * pt["x"] + obj["y"] * pt["y"];
                if (!found || val > best) {
                    best = val;
                    found = true;
                }
            }
        REQUIRE(found);
        CHECK(lp.value == best);
    }
}

TEST_CASE("lp detects unbounded and infeasible systems") {
    LinSystem unb;
    unb.vars = {"x"};
    unb.add(make_ge({{"x", 1}}, 0));
    CHECK(lp_maximize(unb, {{"x", 1}}).status == LpStatus::Unbounded);

    LinSystem inf;
    inf.vars = {"x"};
    inf.add(make_ge({{"x", 1}}, 1));
    inf.add(make_le({{"x", 1}}, 0));
    CHECK(lp_maximize(inf, {{"x", 1}}).status == LpStatus::Infeasible);
    CHECK_FALSE(lp_feasible(inf));
}

TEST_CASE("projection membership agrees with the lifted-feasibility oracle") {
    Rng rng(31);
    int checked = 0;
    for (int rep = 0; rep < 25; ++rep) {
        const std::vector<std::string> vars = {"R1", "R2", "a", "b"};
        LinSystem sys = random_system(rng, vars, 5);
        const LinSystem projected = eliminate_all(sys, {"a", "b"});
        for (int k = 0; k < 25; ++k) {
            std::map<std::string, Rat> p;
            p["R1"] = Rat(static_cast<long>(rng.next_below(29)) - 14, 2);
            p["R2"] = Rat(static_cast<long>(rng.next_below(29)) - 14, 2);
            const bool in_projection = satisfies(projected, p);
            const bool liftable = lp_feasible_with_fixed(sys, p);
            CHECK(in_projection == liftable);
            ++checked;
        }
    }
    CHECK(checked > 0);
}

TEST_CASE("elimination result does not depend on the variable order") {
    Rng rng(37);
    for (int rep = 0; rep < 10; ++rep) {
        const std::vector<std::string> vars = {"R1", "R2", "a", "b", "c"};
        LinSystem sys = random_system(rng, vars, 6);
        sys.add(make_ge({{"R1", 1}}, 0));
        sys.add(make_ge({{"R2", 1}}, 0));
        LinSystem s1 = eliminate_all(sys, {"a", "b", "c"});
        LinSystem s2 = sys;
        for (const auto& v : {"c", "a", "b"}) s2 = remove_redundant(eliminate(s2, v));
        s2.vars = {"R1", "R2"};
        s1.vars = {"R1", "R2"};
        try {
            const RateRegion2D r1 = project_to_region(s1);
            const RateRegion2D r2 = project_to_region(s2);
            CHECK(vertex_hausdorff(r1, r2) <= 1e-12);
        } catch (const infeasible_error&) {
            // unbounded either way is fine for this property
        }
    }
}

TEST_CASE("adding an inequality never enlarges the projection") {
    Rng rng(41);
    for (int rep = 0; rep < 10; ++rep) {
        const std::vector<std::string> vars = {"R1", "R2", "a"};
        LinSystem sys = random_system(rng, vars, 4);
        sys.add(make_ge({{"R1", 1}}, 0));
        sys.add(make_ge({{"R2", 1}}, 0));
        LinSystem bigger = sys;
        LinIneq extra;
        extra.rel = Rel::LE;
        extra.coeffs["R1"] = 1;
        extra.coeffs["a"] = Rat(static_cast<long>(rng.next_below(5)) - 2);
        extra.rhs = Rat(static_cast<long>(rng.next_below(6)), 1);
        extra.normalize();
        bigger.ineqs.push_back(extra);

        const LinSystem p_small = eliminate_all(bigger, {"a"});
        const LinSystem p_large = eliminate_all(sys, {"a"});
        for (int k = 0; k < 30; ++k) {
            std::map<std::string, Rat> p;
            p["R1"] = Rat(static_cast<long>(rng.next_below(25)) - 12, 2);
            p["R2"] = Rat(static_cast<long>(rng.next_below(25)) - 12, 2);
            if (satisfies(p_small, p)) CHECK(satisfies(p_large, p));
        }
    }
}

TEST_CASE("system text round-trip") {
    LinSystem sys;
    sys.vars = {"R1", "R2"};
    sys.add(make_le({{"R1", Rat(3, 4)}, {"R2", Rat(-1, 2)}}, Rat(5, 4)));
    sys.add(make_eq({{"R1", 1}, {"R2", 1}}, 2));
    const std::string text = sys.to_text();
    const LinSystem back = LinSystem::parse(text);
    REQUIRE(back.ineqs.size() == sys.ineqs.size());
    CHECK(back.to_text() == text);
}
