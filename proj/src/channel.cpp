#include "secrecy/channel.hpp"

#include <cmath>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

constexpr double kCmpTol = 1e-9;

const char* output_var(Output o) {
    switch (o) {
        case Output::Y1: return "y1";
        case Output::Y2: return "y2";
        default: return "z";
    }
}

}  // namespace

std::string order_name(DegradednessOrder o) {
    switch (o) {
        case DegradednessOrder::Y2_Y1_Z: return "X->Y2->Y1->Z";
        case DegradednessOrder::Y2_Z_Y1: return "X->Y2->Z->Y1";
        case DegradednessOrder::Z_Y2_Y1: return "X->Z->Y2->Y1";
        case DegradednessOrder::Y1_Y2_Z: return "X->Y1->Y2->Z";
        case DegradednessOrder::Y1_Z_Y2: return "X->Y1->Z->Y2";
        case DegradednessOrder::Z_Y1_Y2: return "X->Z->Y1->Y2";
        default: return "none";
    }
}

std::array<Output, 3> order_outputs(DegradednessOrder o) {
    switch (o) {
        case DegradednessOrder::Y2_Y1_Z: return {Output::Y2, Output::Y1, Output::Z};
        case DegradednessOrder::Y2_Z_Y1: return {Output::Y2, Output::Z, Output::Y1};
        case DegradednessOrder::Z_Y2_Y1: return {Output::Z, Output::Y2, Output::Y1};
        case DegradednessOrder::Y1_Y2_Z: return {Output::Y1, Output::Y2, Output::Z};
        case DegradednessOrder::Y1_Z_Y2: return {Output::Y1, Output::Z, Output::Y2};
        case DegradednessOrder::Z_Y1_Y2: return {Output::Z, Output::Y1, Output::Y2};
        default: throw input_error("order_outputs: no chain for 'none'");
    }
}

void BroadcastChannel::validate() const {
    if (card_x == 0 || card_y1 == 0 || card_y2 == 0 || card_z == 0)
        throw input_error("channel: zero-size alphabet");
    if (kernel.in_size != card_x || kernel.out_size != card_y1 * card_y2 * card_z)
        throw input_error("channel: kernel dimensions do not match alphabets");
    kernel.validate();
}

BroadcastChannel BroadcastChannel::deterministic(std::size_t card_x, std::size_t card_y1,
                                                 std::size_t card_y2, std::size_t card_z,
                                                 const std::vector<std::size_t>& map_y1,
                                                 const std::vector<std::size_t>& map_y2,
                                                 const std::vector<std::size_t>& map_z) {
    if (map_y1.size() != card_x || map_y2.size() != card_x || map_z.size() != card_x)
        throw input_error("deterministic channel: map length != |X|");
    BroadcastChannel ch;
    ch.card_x = card_x;
    ch.card_y1 = card_y1;
    ch.card_y2 = card_y2;
    ch.card_z = card_z;
    ch.kernel.in_size = card_x;
    ch.kernel.out_size = card_y1 * card_y2 * card_z;
    ch.kernel.rows.assign(card_x * ch.kernel.out_size, 0.0);
    for (std::size_t x = 0; x < card_x; ++x) {
        if (map_y1[x] >= card_y1 || map_y2[x] >= card_y2 || map_z[x] >= card_z)
            throw input_error("deterministic channel: output symbol out of range");
        const std::size_t col = (map_y1[x] * card_y2 + map_y2[x]) * card_z + map_z[x];
        ch.kernel.rows[x * ch.kernel.out_size + col] = 1.0;
    }
    return ch;
}

bool is_deterministic(const BroadcastChannel& ch, Output output) {
    ch.validate();
    const std::size_t n = output == Output::Y1 ? ch.card_y1
                        : output == Output::Y2 ? ch.card_y2
                                               : ch.card_z;
    std::vector<double> marg(n);
    for (std::size_t x = 0; x < ch.card_x; ++x) {
        std::fill(marg.begin(), marg.end(), 0.0);
        std::size_t col = 0;
        for (std::size_t y1 = 0; y1 < ch.card_y1; ++y1)
            for (std::size_t y2 = 0; y2 < ch.card_y2; ++y2)
                for (std::size_t z = 0; z < ch.card_z; ++z, ++col) {
                    const std::size_t sym = output == Output::Y1 ? y1
                                          : output == Output::Y2 ? y2
                                                                 : z;
                    marg[sym] += ch.kernel.at(x, col);
                }
        bool found = false;
        for (double p : marg)
            if (p >= 1.0 - 1e-12) found = true;
        if (!found) return false;
    }
    return true;
}

JointPmf induced_joint(const BroadcastChannel& ch, const Pmf& p_x) {
    ch.validate();
    p_x.validate();
    if (p_x.alphabet_size() != ch.card_x)
        throw input_error("induced_joint: p(x) size does not match |X|");
    JointPmf j;
    j.variables = {{"x", ch.card_x}, {"y1", ch.card_y1}, {"y2", ch.card_y2}, {"z", ch.card_z}};
    j.table.resize(j.table_size());
    for (std::size_t x = 0; x < ch.card_x; ++x)
        for (std::size_t o = 0; o < ch.kernel.out_size; ++o)
            j.table[x * ch.kernel.out_size + o] = p_x.probs[x] * ch.kernel.at(x, o);
    return j;
}

bool check_degradedness(const BroadcastChannel& ch, DegradednessOrder order) {
    ch.validate();
    if (order == DegradednessOrder::None) return false;
    const auto outs = order_outputs(order);
    const JointPmf j = induced_joint(ch, Pmf::uniform(ch.card_x));

    const std::string fv = output_var(outs[0]);
    const std::string sv = output_var(outs[1]);
    const std::string tv = output_var(outs[2]);
    const JointPmf jm = marginalize(j, {"x", fv, sv, tv});  // order preserved: x first

    // locate axis order after marginalize (x, then the outputs in channel order)
    const std::size_t i_x = jm.var_index("x");
    const std::size_t i_f = jm.var_index(fv);
    const std::size_t i_s = jm.var_index(sv);
    const std::size_t i_t = jm.var_index(tv);
    const std::size_t nx = jm.variables[i_x].size;
    const std::size_t n_f = jm.variables[i_f].size;
    const std::size_t n_s = jm.variables[i_s].size;
    const std::size_t n_t = jm.variables[i_t].size;

    std::vector<std::size_t> stride(4, 1);
    for (std::size_t i = 4; i-- > 1;) stride[i - 1] = stride[i] * jm.variables[i].size;
    auto prob = [&](std::size_t x, std::size_t f, std::size_t s, std::size_t t) {
        return jm.table[x * stride[i_x] + f * stride[i_f] + s * stride[i_s] + t * stride[i_t]];
    };

    // p(s | x, f) must equal p(s | f) for all x with p(x,f) > 0
    for (std::size_t f = 0; f < n_f; ++f) {
        std::vector<double> ref;
        for (std::size_t x = 0; x < nx; ++x) {
            double pxf = 0.0;
            for (std::size_t s = 0; s < n_s; ++s)
                for (std::size_t t = 0; t < n_t; ++t) pxf += prob(x, f, s, t);
            if (pxf <= kCmpTol * 1e-3) continue;
            std::vector<double> cond(n_s, 0.0);
            for (std::size_t s = 0; s < n_s; ++s) {
                for (std::size_t t = 0; t < n_t; ++t) cond[s] += prob(x, f, s, t);
                cond[s] /= pxf;
            }
            if (ref.empty()) {
                ref = cond;
            } else {
                for (std::size_t s = 0; s < n_s; ++s)
                    if (std::abs(ref[s] - cond[s]) > kCmpTol) return false;
            }
        }
    }

    // p(t | x, f, s) must not depend on (x, f) given s
    for (std::size_t s = 0; s < n_s; ++s) {
        std::vector<double> ref;
        for (std::size_t x = 0; x < nx; ++x)
            for (std::size_t f = 0; f < n_f; ++f) {
                double pxfs = 0.0;
                for (std::size_t t = 0; t < n_t; ++t) pxfs += prob(x, f, s, t);
                if (pxfs <= kCmpTol * 1e-3) continue;
                std::vector<double> cond(n_t);
                for (std::size_t t = 0; t < n_t; ++t) cond[t] = prob(x, f, s, t) / pxfs;
                if (ref.empty()) {
                    ref = cond;
                } else {
                    for (std::size_t t = 0; t < n_t; ++t)
                        if (std::abs(ref[t] - cond[t]) > kCmpTol) return false;
                }
            }
    }
    return true;
}

}  // namespace secrecy
