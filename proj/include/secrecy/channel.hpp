// Two-receiver broadcast channel with an eavesdropper: one input X, outputs
// (Y1, Y2, Z) drawn from a kernel p(y1,y2,z|x). Structural checks cover
// per-output determinism and physical degradedness orderings.

#pragma once

#include <array>
#include <cstddef>
#include <string>
#include <vector>

#include "secrecy/probability.hpp"

namespace secrecy {

enum class Output { Y1, Y2, Z };

// Markov chain X -> first -> second -> third over the three outputs.
enum class DegradednessOrder {
    Y2_Y1_Z,
    Y2_Z_Y1,
    Z_Y2_Y1,
    Y1_Y2_Z,
    Y1_Z_Y2,
    Z_Y1_Y2,
    None,
};

constexpr std::array<DegradednessOrder, 6> kAllOrders = {
    DegradednessOrder::Y2_Y1_Z, DegradednessOrder::Y2_Z_Y1, DegradednessOrder::Z_Y2_Y1,
    DegradednessOrder::Y1_Y2_Z, DegradednessOrder::Y1_Z_Y2, DegradednessOrder::Z_Y1_Y2,
};

std::string order_name(DegradednessOrder o);
std::array<Output, 3> order_outputs(DegradednessOrder o);

struct BroadcastChannel {
    std::size_t card_x = 0, card_y1 = 0, card_y2 = 0, card_z = 0;
    // kernel rows indexed by x; columns lexicographic over (y1, y2, z), y1-major
    ConditionalPmf kernel;

    void validate() const;

    // channel with Y1 = map_y1[x], Y2 = map_y2[x], Z = map_z[x]
    static BroadcastChannel deterministic(std::size_t card_x, std::size_t card_y1,
                                          std::size_t card_y2, std::size_t card_z,
                                          const std::vector<std::size_t>& map_y1,
                                          const std::vector<std::size_t>& map_y2,
                                          const std::vector<std::size_t>& map_z);
};

// true iff p(output|x) is a point mass for every x (probability >= 1-1e-12)
bool is_deterministic(const BroadcastChannel& ch, Output output);

// Physical degradedness test under the uniform input: p(second|x, first)
// must not depend on x, and p(third|x, first, second) must not depend on
// (x, first), within 1e-9, skipping zero-probability conditioning events.
bool check_degradedness(const BroadcastChannel& ch, DegradednessOrder order);

// joint over (x, y1, y2, z) = p(x) * kernel
JointPmf induced_joint(const BroadcastChannel& ch, const Pmf& p_x);

}  // namespace secrecy
