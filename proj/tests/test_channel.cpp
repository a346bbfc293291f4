#include <doctest.h>

#include "secrecy/channel.hpp"
#include "secrecy/rng.hpp"

using namespace secrecy;

namespace {

BroadcastChannel worked_thm2_channel() {
    // Y2 = X, Y1 = floor(X/2), Z constant on X in {0..3}
    return BroadcastChannel::deterministic(4, 2, 4, 1, {0, 0, 1, 1}, {0, 1, 2, 3}, {0, 0, 0, 0});
}

BroadcastChannel random_channel(Rng& rng, std::size_t cx, std::size_t cy1, std::size_t cy2,
                                std::size_t cz) {
    BroadcastChannel ch;
    ch.card_x = cx;
    ch.card_y1 = cy1;
    ch.card_y2 = cy2;
    ch.card_z = cz;
    ch.kernel.in_size = cx;
    ch.kernel.out_size = cy1 * cy2 * cz;
    for (std::size_t x = 0; x < cx; ++x) {
        const auto row = rng.dirichlet_flat(ch.kernel.out_size);
        ch.kernel.rows.insert(ch.kernel.rows.end(), row.begin(), row.end());
    }
    return ch;
}

}  // namespace

TEST_CASE("is_deterministic on function, noisy, and constant outputs") {
    const BroadcastChannel det = worked_thm2_channel();
    CHECK(is_deterministic(det, Output::Y1));
    CHECK(is_deterministic(det, Output::Y2));
    CHECK(is_deterministic(det, Output::Z));

    // binary symmetric component with crossover 0.1 on Y1
    BroadcastChannel noisy;
    noisy.card_x = 2;
    noisy.card_y1 = 2;
    noisy.card_y2 = 1;
    noisy.card_z = 1;
    noisy.kernel.in_size = 2;
    noisy.kernel.out_size = 2;
    noisy.kernel.rows = {0.9, 0.1, 0.1, 0.9};
    CHECK_FALSE(is_deterministic(noisy, Output::Y1));
    CHECK(is_deterministic(noisy, Output::Y2));
    CHECK(is_deterministic(noisy, Output::Z));
}

TEST_CASE("degradedness of the worked chain") {
    const BroadcastChannel ch = worked_thm2_channel();
    CHECK(check_degradedness(ch, DegradednessOrder::Y2_Y1_Z));
    CHECK_FALSE(check_degradedness(ch, DegradednessOrder::Y1_Y2_Z));
    CHECK_FALSE(check_degradedness(ch, DegradednessOrder::Y2_Z_Y1));
    CHECK_FALSE(check_degradedness(ch, DegradednessOrder::Z_Y2_Y1));
}

TEST_CASE("equal outputs are degraded in both directions") {
    const BroadcastChannel ch =
        BroadcastChannel::deterministic(4, 4, 4, 2, {0, 1, 2, 3}, {0, 1, 2, 3}, {0, 0, 1, 1});
    CHECK(check_degradedness(ch, DegradednessOrder::Y1_Y2_Z));
    CHECK(check_degradedness(ch, DegradednessOrder::Y2_Y1_Z));
}

TEST_CASE("degradedness of a stochastic cascade kernel") {
    // Y2 = BSC(0.1) of X, Y1 = BSC(0.2) of Y2, Z constant:
    // physically degraded as X -> Y2 -> Y1 -> Z by construction
    BroadcastChannel ch;
    ch.card_x = 2;
    ch.card_y1 = 2;
    ch.card_y2 = 2;
    ch.card_z = 1;
    ch.kernel.in_size = 2;
    ch.kernel.out_size = 4;
    ch.kernel.rows.assign(8, 0.0);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y2 = 0; y2 < 2; ++y2)
            for (std::size_t y1 = 0; y1 < 2; ++y1)
                ch.kernel.rows[x * 4 + y1 * 2 + y2] +=
                    (y2 == x ? 0.9 : 0.1) * (y1 == y2 ? 0.8 : 0.2);
    CHECK(check_degradedness(ch, DegradednessOrder::Y2_Y1_Z));
    // X -> Y2 -> Z -> Y1 would need Y1 independent of (X, Y2) given the
    // constant Z, which the BSC chain violates
    CHECK_FALSE(check_degradedness(ch, DegradednessOrder::Y2_Z_Y1));
    CHECK_FALSE(check_degradedness(ch, DegradednessOrder::Y1_Y2_Z));

    // independent noises on the two outputs break the factorization
    BroadcastChannel indep = ch;
    indep.kernel.rows.assign(8, 0.0);
    for (std::size_t x = 0; x < 2; ++x)
        for (std::size_t y2 = 0; y2 < 2; ++y2)
            for (std::size_t y1 = 0; y1 < 2; ++y1)
                indep.kernel.rows[x * 4 + y1 * 2 + y2] =
                    (y2 == x ? 0.9 : 0.1) * (y1 == x ? 0.8 : 0.2);
    CHECK_FALSE(check_degradedness(indep, DegradednessOrder::Y2_Y1_Z));
}

TEST_CASE("incomparable outputs are not degraded in any order") {
    // Y1 = X mod 2, Y2 = floor(X/2): neither is a function of the other
    const BroadcastChannel ch =
        BroadcastChannel::deterministic(4, 2, 2, 1, {0, 1, 0, 1}, {0, 0, 1, 1}, {0, 0, 0, 0});
    for (const auto order : kAllOrders) CHECK_FALSE(check_degradedness(ch, order));
}

TEST_CASE("induced_joint construction") {
    const BroadcastChannel ch = worked_thm2_channel();

    // point mass: support on one x slice
    const JointPmf j0 = induced_joint(ch, Pmf::point_mass(4, 2));
    const JointPmf mx = marginalize(j0, {"x"});
    CHECK(mx.table[2] == doctest::Approx(1.0));

    // uniform p(x), Y2 = X: H(Y2) = 2
    const JointPmf ju = induced_joint(ch, Pmf::uniform(4));
    const JointPmf my2 = marginalize(ju, {"y2"});
    CHECK(entropy(std::span<const double>(my2.table)) == doctest::Approx(2.0).epsilon(1e-12));

    // marginal over x equals p(x) for a random channel
    Rng rng(3);
    const BroadcastChannel rch = random_channel(rng, 3, 2, 2, 2);
    Pmf px;
    px.probs = rng.dirichlet_flat(3);
    const JointPmf jr = induced_joint(rch, px);
    const JointPmf mrx = marginalize(jr, {"x"});
    for (std::size_t i = 0; i < 3; ++i) CHECK(mrx.table[i] == doctest::Approx(px.probs[i]));
}

TEST_CASE("data processing along a verified degradedness order") {
    const BroadcastChannel ch = worked_thm2_channel();
    REQUIRE(check_degradedness(ch, DegradednessOrder::Y2_Y1_Z));
    Rng rng(17);
    for (int rep = 0; rep < 10; ++rep) {
        Pmf px;
        px.probs = rng.dirichlet_flat(4);
        const JointPmf j = induced_joint(ch, px);
        const double i_first = mutual_information(j, {"x"}, {"y2"});
        const double i_second = mutual_information(j, {"x"}, {"y1"});
        const double i_third = mutual_information(j, {"x"}, {"z"});
        CHECK(i_third <= i_second + 1e-9);
        CHECK(i_second <= i_first + 1e-9);
    }
}
