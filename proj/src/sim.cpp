#include "secrecy/sim.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <sstream>

#include "secrecy/errors.hpp"
#include "secrecy/threading.hpp"

namespace secrecy {

namespace {

constexpr std::size_t kMaxRows = std::size_t{1} << 22;
constexpr double kLeakHistogramBits = 16.0;

std::size_t draw_categorical(Rng& rng, const double* probs, std::size_t n) {
    const double u = rng.next_unit();
    double cum = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        cum += probs[i];
        if (u < cum) return i;
    }
    return n - 1;
}

}  // namespace

void CodeParams::validate() const {
    if (n < 1) throw input_error("code params: blocklength must be >= 1");
    for (std::size_t c : {N_a, N_1b, N_1c, N_2a1, N_2a2, N_2b, N_2c, N_d, N_d1, N_d2, N_l1, N_l2})
        if (c < 1) throw input_error("code params: cardinalities must be >= 1");
    if (N_2a1 * N_2a2 != N_a)
        throw input_error("code params: N_2a1 * N_2a2 must equal N_a (pad split)");
    if (!(eps > eps_prime && eps_prime > 0.0))
        throw input_error("code params: need eps > eps_prime > 0");
    cascade.validate();
    channel.validate();
    if (cascade.card_x() != channel.card_x)
        throw input_error("code params: cascade |X| does not match the channel");
    if (v1_rows() > kMaxRows || v2_rows() > kMaxRows)
        throw infeasible_error("code params: codebook exceeds the supported size");
}

std::size_t otp_combine(std::size_t m1a, std::size_t m2a, std::size_t N_a) {
    if (m1a >= N_a || m2a >= N_a) throw input_error("otp_combine: index out of range");
    return (m1a + m2a) % N_a;
}

std::size_t otp_invert(std::size_t m_a, std::size_t m2a, std::size_t N_a) {
    if (m_a >= N_a || m2a >= N_a) throw input_error("otp_invert: index out of range");
    return (m_a + N_a - m2a) % N_a;
}

SimContext make_sim_context(const CodeParams& params) {
    SimContext ctx;
    const JointPmf j = cascade_joint(params.channel, params.cascade);
    ctx.j_uvv1v2 = marginalize(j, {"u", "v", "v1", "v2"});
    ctx.j_uvv1y1 = marginalize(j, {"u", "v", "v1", "y1"});
    ctx.j_uvv2y2 = marginalize(j, {"u", "v", "v2", "y2"});
    return ctx;
}

Codebook generate_codebook(const CodeParams& params, std::uint64_t seed) {
    params.validate();
    const auto& cas = params.cascade;
    const std::size_t n = params.n;
    const std::size_t card_v = cas.card_v();

    // marginals p(v1|v), p(v2|v) of the private-pair factor
    std::vector<double> p_v1_v(card_v * cas.card_v1, 0.0);
    std::vector<double> p_v2_v(card_v * cas.card_v2, 0.0);
    for (std::size_t v = 0; v < card_v; ++v)
        for (std::size_t a = 0; a < cas.card_v1; ++a)
            for (std::size_t b = 0; b < cas.card_v2; ++b) {
                const double p = cas.p_v1v2_given_v.at(v, a * cas.card_v2 + b);
                p_v1_v[v * cas.card_v1 + a] += p;
                p_v2_v[v * cas.card_v2 + b] += p;
            }

    Codebook cb;
    cb.n = n;
    cb.seed = seed;
    Rng rng(splitmix64(seed ^ 0xc0debULL));

    cb.u.resize(params.N_a * n);
    for (std::size_t m = 0; m < params.N_a; ++m)
        for (std::size_t i = 0; i < n; ++i)
            cb.u[m * n + i] = static_cast<std::uint8_t>(
                draw_categorical(rng, cas.p_u.probs.data(), cas.card_u()));

    cb.v.resize(params.v_rows() * n);
    for (std::size_t row = 0; row < params.v_rows(); ++row) {
        const std::size_t m_a = row / (params.N_1b * params.N_2b * params.N_2a1 * params.N_d);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t u_sym = cb.u[m_a * n + i];
            cb.v[row * n + i] = static_cast<std::uint8_t>(draw_categorical(
                rng, &cas.p_v_given_u.rows[u_sym * card_v], card_v));
        }
    }

    cb.v1.resize(params.v1_rows() * n);
    for (std::size_t row = 0; row < params.v1_rows(); ++row) {
        const std::size_t v_row = row / (params.N_1c * params.N_d1 * params.N_l1);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t v_sym = cb.v[v_row * n + i];
            cb.v1[row * n + i] = static_cast<std::uint8_t>(
                draw_categorical(rng, &p_v1_v[v_sym * cas.card_v1], cas.card_v1));
        }
    }

    cb.v2.resize(params.v2_rows() * n);
    for (std::size_t row = 0; row < params.v2_rows(); ++row) {
        const std::size_t v_row = row / (params.N_2a2 * params.N_2c * params.N_d2 * params.N_l2);
        for (std::size_t i = 0; i < n; ++i) {
            const std::size_t v_sym = cb.v[v_row * n + i];
            cb.v2[row * n + i] = static_cast<std::uint8_t>(
                draw_categorical(rng, &p_v2_v[v_sym * cas.card_v2], cas.card_v2));
        }
    }
    return cb;
}

namespace {

std::size_t v_row_index(const CodeParams& p, std::size_t m_a, std::size_t m1b, std::size_t m2b,
                        std::size_t m2a1, std::size_t d) {
    return (((m_a * p.N_1b + m1b) * p.N_2b + m2b) * p.N_2a1 + m2a1) * p.N_d + d;
}

std::size_t v1_row_index(const CodeParams& p, std::size_t v_row, std::size_t m1c, std::size_t d1,
                         std::size_t l1) {
    return ((v_row * p.N_1c + m1c) * p.N_d1 + d1) * p.N_l1 + l1;
}

std::size_t v2_row_index(const CodeParams& p, std::size_t v_row, std::size_t m2a2,
                         std::size_t m2c, std::size_t d2, std::size_t l2) {
    return (((v_row * p.N_2a2 + m2a2) * p.N_2c + m2c) * p.N_d2 + d2) * p.N_l2 + l2;
}

std::vector<std::size_t> joint_strides(const JointPmf& j) {
    std::vector<std::size_t> s(j.variables.size(), 1);
    for (std::size_t i = j.variables.size(); i-- > 1;) s[i - 1] = s[i] * j.variables[i].size;
    return s;
}

}  // namespace

bool typicality_check(const std::vector<std::span<const std::uint8_t>>& seqs,
                      const JointPmf& design_joint, double eps) {
    if (seqs.size() != design_joint.variables.size())
        throw input_error("typicality_check: sequence count does not match the joint");
    const std::size_t n = seqs.empty() ? 0 : seqs[0].size();
    for (const auto& s : seqs)
        if (s.size() != n) throw input_error("typicality_check: sequence length mismatch");

    const auto strides = joint_strides(design_joint);
    std::vector<std::uint32_t> counts(design_joint.table_size(), 0);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx = 0;
        for (std::size_t k = 0; k < seqs.size(); ++k) idx += seqs[k][i] * strides[k];
        counts[idx]++;
    }
    const double dn = static_cast<double>(n);
    for (std::size_t c = 0; c < counts.size(); ++c) {
        const double p = design_joint.table[c];
        if (std::abs(static_cast<double>(counts[c]) - dn * p) > eps * dn * p + 1e-12 * dn)
            return false;
    }
    return true;
}

bool conditional_typicality_check(const std::vector<std::span<const std::uint8_t>>& given,
                                  const std::vector<std::span<const std::uint8_t>>& fresh,
                                  const JointPmf& design_joint, double eps) {
    if (given.size() + fresh.size() != design_joint.variables.size())
        throw input_error("conditional_typicality_check: sequence count mismatch");
    const std::size_t n = given.empty() ? (fresh.empty() ? 0 : fresh[0].size()) : given[0].size();
    for (const auto* grp : {&given, &fresh})
        for (const auto& s : *grp)
            if (s.size() != n) throw input_error("conditional_typicality_check: length mismatch");

    const auto strides = joint_strides(design_joint);
    std::size_t g_size = 1;
    for (std::size_t k = 0; k < given.size(); ++k) g_size *= design_joint.variables[k].size;
    std::size_t w_size = design_joint.table_size() / std::max<std::size_t>(1, g_size);

    std::vector<std::uint32_t> joint_counts(design_joint.table_size(), 0);
    std::vector<std::uint32_t> given_counts(g_size, 0);
    std::vector<std::size_t> g_strides(given.size(), 1);
    for (std::size_t k = given.size(); k-- > 1;)
        g_strides[k - 1] = g_strides[k] * design_joint.variables[k].size;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t idx = 0, gidx = 0;
        for (std::size_t k = 0; k < given.size(); ++k) {
            idx += given[k][i] * strides[k];
            gidx += given[k][i] * g_strides[k];
        }
        for (std::size_t k = 0; k < fresh.size(); ++k)
            idx += fresh[k][i] * strides[given.size() + k];
        joint_counts[idx]++;
        given_counts[gidx]++;
    }

    // p(w|g) from the design joint
    std::vector<double> design_g(g_size, 0.0);
    for (std::size_t c = 0; c < design_joint.table.size(); ++c)
        design_g[c / w_size] += design_joint.table[c];

    for (std::size_t c = 0; c < design_joint.table.size(); ++c) {
        const std::size_t g = c / w_size;
        const double ng = static_cast<double>(given_counts[g]);
        if (ng == 0.0) continue;
        if (design_g[g] <= 0.0) return false;  // realized a design-impossible context
        const double p_cond = design_joint.table[c] / design_g[g];
        if (std::abs(static_cast<double>(joint_counts[c]) - ng * p_cond) >
            eps * ng * p_cond + 1e-12 * ng)
            return false;
    }
    return true;
}

EncodeResult encode(const Codebook& cb, const CodeParams& params, const SimContext& ctx,
                    const Message1& m1, const Message2& m2, Rng& rng) {
    if (m1.m1a >= params.N_a || m1.m1b >= params.N_1b || m1.m1c >= params.N_1c ||
        m2.m2a1 >= params.N_2a1 || m2.m2a2 >= params.N_2a2 || m2.m2b >= params.N_2b ||
        m2.m2c >= params.N_2c)
        throw input_error("encode: message index out of range");

    EncodeResult res;
    const std::size_t m_a = otp_combine(m1.m1a, m2.m2a(params.N_2a2), params.N_a);
    res.d = rng.next_below(params.N_d);
    res.d1 = rng.next_below(params.N_d1);
    res.d2 = rng.next_below(params.N_d2);

    const std::size_t v_row = v_row_index(params, m_a, m1.m1b, m2.m2b, m2.m2a1, res.d);
    const auto u_seq = cb.u_row(m_a);
    const auto v_seq = cb.v_row(v_row);

    // first jointly typical Marton pair in lexicographic (l1, l2) order
    bool found = false;
    for (std::size_t l1 = 0; l1 < params.N_l1 && !found; ++l1) {
        const auto v1_seq = cb.v1_row(v1_row_index(params, v_row, m1.m1c, res.d1, l1));
        for (std::size_t l2 = 0; l2 < params.N_l2 && !found; ++l2) {
            const auto v2_seq = cb.v2_row(v2_row_index(params, v_row, m2.m2a2, m2.m2c, res.d2, l2));
            if (conditional_typicality_check({u_seq, v_seq}, {v1_seq, v2_seq}, ctx.j_uvv1v2,
                                             params.eps_prime)) {
                res.l1 = l1;
                res.l2 = l2;
                found = true;
            }
        }
    }
    if (!found) {
        res.l1 = res.l2 = 0;
        res.fallback = true;
    }

    const auto v1_seq = cb.v1_row(v1_row_index(params, v_row, m1.m1c, res.d1, res.l1));
    const auto v2_seq = cb.v2_row(v2_row_index(params, v_row, m2.m2a2, m2.m2c, res.d2, res.l2));
    const auto& px = params.cascade.p_x_given_v1v2;
    res.x.resize(params.n);
    for (std::size_t i = 0; i < params.n; ++i) {
        const std::size_t pair = v1_seq[i] * params.cascade.card_v2 + v2_seq[i];
        res.x[i] = static_cast<std::uint8_t>(
            draw_categorical(rng, &px.rows[pair * px.out_size], px.out_size));
    }
    return res;
}

std::vector<Rx1Decoded> rx1_typical_messages(const Codebook& cb, const CodeParams& params,
                                             const SimContext& ctx,
                                             std::span<const std::uint8_t> y1,
                                             const Message2& m2) {
    std::vector<Rx1Decoded> hits;
    for (std::size_t m_a = 0; m_a < params.N_a; ++m_a) {
        const auto u_seq = cb.u_row(m_a);
        for (std::size_t m1b = 0; m1b < params.N_1b; ++m1b) {
            for (std::size_t m1c = 0; m1c < params.N_1c; ++m1c) {
                bool typical = false;
                for (std::size_t d = 0; d < params.N_d && !typical; ++d) {
                    const std::size_t v_row =
                        v_row_index(params, m_a, m1b, m2.m2b, m2.m2a1, d);
                    const auto v_seq = cb.v_row(v_row);
                    for (std::size_t d1 = 0; d1 < params.N_d1 && !typical; ++d1)
                        for (std::size_t l1 = 0; l1 < params.N_l1 && !typical; ++l1) {
                            const auto v1_seq =
                                cb.v1_row(v1_row_index(params, v_row, m1c, d1, l1));
                            typical = typicality_check({u_seq, v_seq, v1_seq, y1},
                                                       ctx.j_uvv1y1, params.eps);
                        }
                }
                if (typical) hits.push_back({m_a, m1b, m1c});
            }
        }
    }
    return hits;
}

std::vector<Rx2Decoded> rx2_typical_messages(const Codebook& cb, const CodeParams& params,
                                             const SimContext& ctx,
                                             std::span<const std::uint8_t> y2) {
    std::set<Rx2Decoded> found;
    for (std::size_t m_a = 0; m_a < params.N_a; ++m_a) {
        const auto u_seq = cb.u_row(m_a);
        for (std::size_t m2b = 0; m2b < params.N_2b; ++m2b)
            for (std::size_t m2a1 = 0; m2a1 < params.N_2a1; ++m2a1)
                for (std::size_t m2a2 = 0; m2a2 < params.N_2a2; ++m2a2)
                    for (std::size_t m2c = 0; m2c < params.N_2c; ++m2c) {
                        const Rx2Decoded msg{m_a, m2b, m2a1, m2a2, m2c};
                        if (found.count(msg)) continue;
                        bool typical = false;
                        // m_1b and d are nuisance indices for receiver 2
                        for (std::size_t m1b = 0; m1b < params.N_1b && !typical; ++m1b)
                            for (std::size_t d = 0; d < params.N_d && !typical; ++d) {
                                const std::size_t v_row =
                                    v_row_index(params, m_a, m1b, m2b, m2a1, d);
                                const auto v_seq = cb.v_row(v_row);
                                for (std::size_t d2 = 0; d2 < params.N_d2 && !typical; ++d2)
                                    for (std::size_t l2 = 0; l2 < params.N_l2 && !typical; ++l2) {
                                        const auto v2_seq = cb.v2_row(v2_row_index(
                                            params, v_row, m2a2, m2c, d2, l2));
                                        typical = typicality_check({u_seq, v_seq, v2_seq, y2},
                                                                   ctx.j_uvv2y2, params.eps);
                                    }
                            }
                        if (typical) found.insert(msg);
                    }
    }
    return {found.begin(), found.end()};
}

std::optional<Rx1Decoded> decode_rx1(const Codebook& cb, const CodeParams& params,
                                     const SimContext& ctx, std::span<const std::uint8_t> y1,
                                     const Message2& m2) {
    const auto hits = rx1_typical_messages(cb, params, ctx, y1, m2);
    if (hits.size() != 1) return std::nullopt;
    return hits[0];
}

std::optional<Rx2Decoded> decode_rx2(const Codebook& cb, const CodeParams& params,
                                     const SimContext& ctx, std::span<const std::uint8_t> y2) {
    const auto hits = rx2_typical_messages(cb, params, ctx, y2);
    if (hits.size() != 1) return std::nullopt;
    return hits[0];
}

// ------------------------------------------------------------------ trials

namespace {

struct TrialOutcome {
    bool err1 = false, err2 = false, fallback = false;
    bool e11 = false, e12 = false, e13 = false, e14 = false;
    bool e21 = false, e22 = false, e23 = false, e24 = false;
    std::uint32_t m1 = 0, m2 = 0;
    std::uint64_t z_pattern = 0;
};

double plugin_mi_bits(const std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint64_t>& joint,
                      std::size_t total) {
    std::map<std::uint32_t, std::uint64_t> cm;
    std::map<std::uint64_t, std::uint64_t> cz;
    for (const auto& [key, c] : joint) {
        cm[key.first] += c;
        cz[key.second] += c;
    }
    const double t = static_cast<double>(total);
    double mi = 0.0;
    for (const auto& [key, c] : joint) {
        const double pj = static_cast<double>(c) / t;
        const double ratio = (static_cast<double>(c) * t) /
                             (static_cast<double>(cm[key.first]) * static_cast<double>(cz[key.second]));
        mi += pj * std::log2(ratio);
    }
    return std::max(0.0, mi);
}

}  // namespace

std::string SimulationReport::serialize() const {
    std::ostringstream os;
    char buf[96];
    os << "trials = " << trials << "\n";
    os << "n = " << n << "\n";
    os << "seed = " << seed << "\n";
    std::snprintf(buf, sizeof buf, "err1 = %.12g\n", err1);
    os << buf;
    std::snprintf(buf, sizeof buf, "err2 = %.12g\n", err2);
    os << buf;
    os << "leak_estimated = " << (leak_estimated ? 1 : 0) << "\n";
    if (leak_estimated) {
        std::snprintf(buf, sizeof buf, "leak1_bits = %.12g\n", leak1);
        os << buf;
        std::snprintf(buf, sizeof buf, "leak2_bits = %.12g\n", leak2);
        os << buf;
    } else {
        os << "leak1_bits = na\n";
        os << "leak2_bits = na\n";
    }
    os << "encoder_fallbacks = " << encoder_fallbacks << "\n";
    for (const auto& [k, v] : event_counts) os << "event." << k << " = " << v << "\n";
    return os.str();
}

std::string SimulationReport::events_csv() const {
    std::ostringstream os;
    os << "event,count\n";
    for (const auto& [k, v] : event_counts) os << k << "," << v << "\n";
    return os.str();
}

SimulationReport run_trials(const CodeParams& params, std::size_t trials, std::uint64_t seed,
                            std::size_t thread_cap) {
    params.validate();
    if (trials < 1) throw input_error("run_trials: need at least one trial");

    const SimContext ctx = make_sim_context(params);
    const bool leak_ok =
        static_cast<double>(params.n) * std::log2(static_cast<double>(params.channel.card_z)) <=
        kLeakHistogramBits + 1e-9;

    const std::size_t epoch_len =
        params.regen_every == 0 ? trials : std::min(params.regen_every, trials);
    std::vector<TrialOutcome> outcomes(trials);

    for (std::size_t start = 0, epoch = 0; start < trials; start += epoch_len, ++epoch) {
        const std::size_t count = std::min(epoch_len, trials - start);
        const Codebook cb =
            generate_codebook(params, splitmix64(seed ^ (0xcb00cb00ULL + epoch)));
        parallel_for(
            count,
            [&](std::size_t k) {
                const std::size_t t = start + k;
                Rng rng = Rng(seed).fork(1 + t);
                Message1 m1;
                Message2 m2;
                m1.m1a = rng.next_below(params.N_a);
                m1.m1b = rng.next_below(params.N_1b);
                m1.m1c = rng.next_below(params.N_1c);
                m2.m2a1 = rng.next_below(params.N_2a1);
                m2.m2a2 = rng.next_below(params.N_2a2);
                m2.m2b = rng.next_below(params.N_2b);
                m2.m2c = rng.next_below(params.N_2c);
                const std::size_t m2a = m2.m2a(params.N_2a2);
                const std::size_t m_a = otp_combine(m1.m1a, m2a, params.N_a);

                const EncodeResult enc = encode(cb, params, ctx, m1, m2, rng);

                // channel outputs
                std::vector<std::uint8_t> y1(params.n), y2(params.n), z(params.n);
                const auto& ch = params.channel;
                for (std::size_t i = 0; i < params.n; ++i) {
                    const std::size_t o = draw_categorical(
                        rng, &ch.kernel.rows[enc.x[i] * ch.kernel.out_size], ch.kernel.out_size);
                    y1[i] = static_cast<std::uint8_t>(o / (ch.card_y2 * ch.card_z));
                    y2[i] = static_cast<std::uint8_t>((o / ch.card_z) % ch.card_y2);
                    z[i] = static_cast<std::uint8_t>(o % ch.card_z);
                }

                TrialOutcome& out = outcomes[t];
                out.fallback = enc.fallback;

                // true-tuple typicality with the transmitted nuisance indices
                const std::size_t v_row =
                    v_row_index(params, m_a, m1.m1b, m2.m2b, m2.m2a1, enc.d);
                const auto u_seq = cb.u_row(m_a);
                const auto v_seq = cb.v_row(v_row);
                const auto v1_seq =
                    cb.v1_row(v1_row_index(params, v_row, m1.m1c, enc.d1, enc.l1));
                const auto v2_seq = cb.v2_row(
                    v2_row_index(params, v_row, m2.m2a2, m2.m2c, enc.d2, enc.l2));
                out.e11 = !typicality_check({u_seq, v_seq, v1_seq, std::span<const std::uint8_t>(y1)},
                                            ctx.j_uvv1y1, params.eps);
                out.e21 = !typicality_check({u_seq, v_seq, v2_seq, std::span<const std::uint8_t>(y2)},
                                            ctx.j_uvv2y2, params.eps);

                // receiver 1
                const auto hits1 = rx1_typical_messages(cb, params, ctx, y1, m2);
                for (const auto& h : hits1) {
                    if (h.m_a != m_a) out.e14 = true;
                    else if (h.m1b != m1.m1b) out.e13 = true;
                    else if (h.m1c != m1.m1c) out.e12 = true;
                }
                if (hits1.size() != 1) {
                    out.err1 = true;
                } else {
                    const auto& h = hits1[0];
                    const std::size_t m1a_hat = otp_invert(h.m_a, m2a, params.N_a);
                    out.err1 = m1a_hat != m1.m1a || h.m1b != m1.m1b || h.m1c != m1.m1c;
                }

                // receiver 2
                const auto hits2 = rx2_typical_messages(cb, params, ctx, y2);
                for (const auto& h : hits2) {
                    if (h.m_a != m_a) out.e24 = true;
                    else if (h.m2b != m2.m2b || h.m2a1 != m2.m2a1) out.e23 = true;
                    else if (h.m2a2 != m2.m2a2 || h.m2c != m2.m2c) out.e22 = true;
                }
                if (hits2.size() != 1) {
                    out.err2 = true;
                } else {
                    const auto& h = hits2[0];
                    out.err2 = h.m2a1 != m2.m2a1 || h.m2a2 != m2.m2a2 || h.m2b != m2.m2b ||
                               h.m2c != m2.m2c;
                }

                out.m1 = static_cast<std::uint32_t>(
                    (m1.m1a * params.N_1b + m1.m1b) * params.N_1c + m1.m1c);
                out.m2 = static_cast<std::uint32_t>(
                    ((m2a * params.N_2b) + m2.m2b) * params.N_2c + m2.m2c);
                if (leak_ok) {
                    std::uint64_t zp = 0;
                    for (std::size_t i = 0; i < params.n; ++i)
                        zp = zp * params.channel.card_z + z[i];
                    out.z_pattern = zp;
                }
            },
            thread_cap);
    }

    SimulationReport rep;
    rep.trials = trials;
    rep.n = params.n;
    rep.seed = seed;
    rep.leak_estimated = leak_ok;
    for (const char* k : {"E0", "E11", "E12", "E13", "E14", "E21", "E22", "E23", "E24"})
        rep.event_counts[k] = 0;

    std::size_t n_err1 = 0, n_err2 = 0;
    std::map<std::pair<std::uint32_t, std::uint64_t>, std::uint64_t> hist1, hist2;
    for (const auto& out : outcomes) {
        n_err1 += out.err1;
        n_err2 += out.err2;
        rep.encoder_fallbacks += out.fallback;
        rep.event_counts["E0"] += out.fallback;
        rep.event_counts["E11"] += out.e11;
        rep.event_counts["E12"] += out.e12;
        rep.event_counts["E13"] += out.e13;
        rep.event_counts["E14"] += out.e14;
        rep.event_counts["E21"] += out.e21;
        rep.event_counts["E22"] += out.e22;
        rep.event_counts["E23"] += out.e23;
        rep.event_counts["E24"] += out.e24;
        if (leak_ok) {
            hist1[{out.m1, out.z_pattern}]++;
            hist2[{out.m2, out.z_pattern}]++;
        }
    }
    rep.err1 = static_cast<double>(n_err1) / static_cast<double>(trials);
    rep.err2 = static_cast<double>(n_err2) / static_cast<double>(trials);
    if (leak_ok) {
        rep.leak1 = plugin_mi_bits(hist1, trials);
        rep.leak2 = plugin_mi_bits(hist2, trials);
    }
    return rep;
}

}  // namespace secrecy
