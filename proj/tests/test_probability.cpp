#include <doctest.h>

#include <cmath>

#include "secrecy/errors.hpp"
#include "secrecy/probability.hpp"
#include "secrecy/rng.hpp"

using namespace secrecy;

namespace {

// random joint over the given variable sizes
JointPmf random_joint(Rng& rng, const std::vector<VarSpec>& vars) {
    JointPmf j;
    j.variables = vars;
    j.table = rng.dirichlet_flat(j.table_size());
    return j;
}

JointPmf pair_joint(std::size_t na, std::size_t nb, const std::vector<double>& table) {
    JointPmf j;
    j.variables = {{"a", na}, {"b", nb}};
    j.table = table;
    return j;
}

}  // namespace

TEST_CASE("entropy of standard distributions") {
    CHECK(entropy(Pmf::uniform(4)) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(entropy(Pmf::point_mass(5, 2)) == doctest::Approx(0.0));
    Pmf dyadic;
    dyadic.probs = {0.5, 0.25, 0.25};
    CHECK(entropy(dyadic) == doctest::Approx(1.5).epsilon(1e-13));
}

TEST_CASE("entropy rejects invalid distributions") {
    Pmf bad;
    bad.probs = {0.5, 0.6};
    CHECK_THROWS_AS(entropy(bad), input_error);
    bad.probs = {1.5, -0.5};
    CHECK_THROWS_AS(entropy(bad), input_error);
}

TEST_CASE("marginalize basic cases") {
    // independent uniform pair, keep first
    JointPmf j = pair_joint(2, 2, {0.25, 0.25, 0.25, 0.25});
    JointPmf m = marginalize(j, {"a"});
    REQUIRE(m.table.size() == 2);
    CHECK(m.table[0] == doctest::Approx(0.5));
    CHECK(m.table[1] == doctest::Approx(0.5));

    // keep all variables: identical table
    JointPmf all = marginalize(j, {"a", "b"});
    REQUIRE(all.table.size() == 4);
    for (std::size_t i = 0; i < 4; ++i) CHECK(all.table[i] == doctest::Approx(j.table[i]));

    // perfectly correlated pair, keep second
    JointPmf corr = pair_joint(2, 2, {0.5, 0.0, 0.0, 0.5});
    JointPmf mb = marginalize(corr, {"b"});
    CHECK(mb.table[0] == doctest::Approx(0.5));
    CHECK(mb.table[1] == doctest::Approx(0.5));

    CHECK_THROWS_AS(marginalize(j, {"nope"}), input_error);
}

TEST_CASE("mutual information basic cases") {
    // Y = X, X uniform binary
    JointPmf ident = pair_joint(2, 2, {0.5, 0.0, 0.0, 0.5});
    CHECK(mutual_information(ident, {"a"}, {"b"}) == doctest::Approx(1.0).epsilon(1e-12));

    // Z constant
    JointPmf indep = pair_joint(2, 1, {0.3, 0.7});
    CHECK(mutual_information(indep, {"a"}, {"b"}) == doctest::Approx(0.0));

    // X uniform on {0..3}, B = X mod 2
    JointPmf j;
    j.variables = {{"x", 4}, {"m", 2}};
    j.table.assign(8, 0.0);
    for (std::size_t x = 0; x < 4; ++x) j.table[x * 2 + (x % 2)] = 0.25;
    CHECK(mutual_information(j, {"x"}, {"m"}) == doctest::Approx(1.0).epsilon(1e-12));

    CHECK_THROWS_AS(mutual_information(j, {"x"}, {"x"}), input_error);
}

TEST_CASE("chain_compose composes identities into a diagonal point mass chain") {
    const Pmf pu = Pmf::uniform(2);
    const ConditionalPmf id2 = ConditionalPmf::identity(2);
    // p(v1,v2|v): v1 = v, v2 = v
    ConditionalPmf pair;
    pair.in_size = 2;
    pair.out_size = 4;
    pair.rows = {1, 0, 0, 0, 0, 0, 0, 1};
    // p(x|v1,v2): x = v1
    ConditionalPmf px;
    px.in_size = 4;
    px.out_size = 2;
    px.rows = {1, 0, 1, 0, 0, 1, 0, 1};
    // channel: y1 = y2 = x, z constant
    ConditionalPmf ch;
    ch.in_size = 2;
    ch.out_size = 4;  // (y1, y2, z) with |Y1|=|Y2|=2, |Z|=1
    ch.rows = {1, 0, 0, 0, 0, 0, 0, 1};

    const JointPmf j = chain_compose(pu, id2, pair, 2, 2, px, ch, 2, 2, 1);
    j.validate();
    // mass sits on (u, u, u, u, u, u, u, 0)
    CHECK(mutual_information(j, {"u"}, {"x"}) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mutual_information(j, {"v1"}, {"y2"}) == doctest::Approx(1.0).epsilon(1e-12));

    // point-mass p(u) collapses the u marginal
    const JointPmf j2 = chain_compose(Pmf::point_mass(2, 1), id2, pair, 2, 2, px, ch, 2, 2, 1);
    const JointPmf mu = marginalize(j2, {"u"});
    CHECK(mu.table[1] == doctest::Approx(1.0));
}

TEST_CASE("chain_compose validates dimensions") {
    const Pmf pu = Pmf::uniform(2);
    const ConditionalPmf id2 = ConditionalPmf::identity(2);
    ConditionalPmf pair;
    pair.in_size = 2;
    pair.out_size = 4;
    pair.rows = {1, 0, 0, 0, 0, 0, 0, 1};
    ConditionalPmf px;
    px.in_size = 4;
    px.out_size = 2;
    px.rows = {1, 0, 1, 0, 0, 1, 0, 1};
    ConditionalPmf ch;
    ch.in_size = 3;  // wrong: |X| = 2
    ch.out_size = 4;
    ch.rows = {1, 0, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0};
    CHECK_THROWS_AS(chain_compose(pu, id2, pair, 2, 2, px, ch, 2, 2, 1), input_error);
}

TEST_CASE("random cascade satisfies the designed Markov structure") {
    Rng rng(7);
    for (int rep = 0; rep < 20; ++rep) {
        Pmf pu;
        pu.probs = rng.dirichlet_flat(2);
        ConditionalPmf pvu{2, 2, {}};
        for (int i = 0; i < 2; ++i) {
            auto r = rng.dirichlet_flat(2);
            pvu.rows.insert(pvu.rows.end(), r.begin(), r.end());
        }
        ConditionalPmf pair{2, 4, {}};
        for (int i = 0; i < 2; ++i) {
            auto r = rng.dirichlet_flat(4);
            pair.rows.insert(pair.rows.end(), r.begin(), r.end());
        }
        ConditionalPmf px{4, 3, {}};
        for (int i = 0; i < 4; ++i) {
            auto r = rng.dirichlet_flat(3);
            px.rows.insert(px.rows.end(), r.begin(), r.end());
        }
        ConditionalPmf ch{3, 8, {}};
        for (int i = 0; i < 3; ++i) {
            auto r = rng.dirichlet_flat(8);
            ch.rows.insert(ch.rows.end(), r.begin(), r.end());
        }
        const JointPmf j = chain_compose(pu, pvu, pair, 2, 2, px, ch, 2, 2, 2);
        j.validate();
        CHECK(mutual_information(j, {"u"}, {"v1", "v2"}, {"v"}) <= 1e-10);
        CHECK(mutual_information(j, {"v", "v1", "v2"}, {"y1", "y2", "z"}, {"x"}) <= 1e-10);
    }
}

TEST_CASE("information identities on random joints") {
    Rng rng(11);
    for (int rep = 0; rep < 200; ++rep) {
        const std::size_t na = 2 + rng.next_below(3);
        const std::size_t nb = 2 + rng.next_below(3);
        const std::size_t nc = 1 + rng.next_below(3);
        const JointPmf j = random_joint(rng, {{"a", na}, {"b", nb}, {"c", nc}});
        EntropyCache cache(j);
        const unsigned A = 1, B = 2, C = 4;

        // chain rule H(A,B) = H(A) + H(B|A), with H(B|A) decomposed directly
        // as sum_a p(a) H(B | A = a)
        const double hab = cache.joint_entropy(A | B);
        const double ha = cache.joint_entropy(A);
        const double hb = cache.joint_entropy(B);
        const JointPmf jab = marginalize(j, {"a", "b"});
        double hb_ga = 0.0;
        for (std::size_t a = 0; a < na; ++a) {
            double pa = 0.0;
            for (std::size_t b = 0; b < nb; ++b) pa += jab.table[a * nb + b];
            if (pa <= 0) continue;
            double h = 0.0;
            for (std::size_t b = 0; b < nb; ++b) {
                const double p = jab.table[a * nb + b] / pa;
                if (p > 1e-15) h -= p * std::log2(p);
            }
            hb_ga += pa * h;
        }
        CHECK(std::abs(hab - (ha + hb_ga)) <= 1e-10);

        // I(A;B) = H(A) + H(B) - H(A,B), nonnegativity, bounds
        const double iab = mutual_information(j, {"a"}, {"b"});
        CHECK(std::abs(iab - (ha + hb - hab)) <= 1e-10);
        CHECK(iab >= 0.0);
        CHECK(iab <= std::min(ha, hb) + 1e-10);

        const double iab_gc = mutual_information(j, {"a"}, {"b"}, {"c"});
        CHECK(iab_gc >= 0.0);
        (void)C;
    }
}

TEST_CASE("deterministic function has zero conditional entropy") {
    Rng rng(13);
    for (int rep = 0; rep < 20; ++rep) {
        const std::size_t nx = 3 + rng.next_below(3);
        JointPmf j;
        j.variables = {{"x", nx}, {"y", 3}};
        j.table.assign(nx * 3, 0.0);
        const auto px = rng.dirichlet_flat(nx);
        for (std::size_t x = 0; x < nx; ++x) j.table[x * 3 + (x % 3)] = px[x];
        EntropyCache cache(j);
        const double h_y_given_x = cache.joint_entropy(3) - cache.joint_entropy(1);
        CHECK(std::abs(h_y_given_x) <= 1e-12);
    }
}
