// Monte-Carlo implementation of the layered secrecy coding scheme at small
// blocklength: rate splitting with a one-time pad across the two messages,
// superposition codebooks with a Marton private layer, joint-typicality
// encoding/decoding, and empirical error/leakage measurement.
//
// Index-space cardinalities are explicit integers (N_* = number of indices,
// implied rate log2(N)/n). Everything is deterministic given the seed, and
// reports are byte-identical across worker thread counts.

#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "secrecy/channel.hpp"
#include "secrecy/rng.hpp"
#include "secrecy/theorems.hpp"

namespace secrecy {

struct CodeParams {
    std::size_t n = 1;
    std::size_t N_a = 1, N_1b = 1, N_1c = 1;
    std::size_t N_2a1 = 1, N_2a2 = 1, N_2b = 1, N_2c = 1;
    std::size_t N_d = 1, N_d1 = 1, N_d2 = 1, N_l1 = 1, N_l2 = 1;
    double eps = 0.5, eps_prime = 0.25;
    std::size_t regen_every = 0;  // 0 = one codebook for the whole run
    AuxiliaryCascade cascade;
    BroadcastChannel channel;

    std::size_t v_rows() const { return N_a * N_1b * N_2b * N_2a1 * N_d; }
    std::size_t v1_rows() const { return v_rows() * N_1c * N_d1 * N_l1; }
    std::size_t v2_rows() const { return v_rows() * N_2a2 * N_2c * N_d2 * N_l2; }
    void validate() const;  // N_2a1*N_2a2 == N_a, eps > eps' > 0, sizes bounded
};

struct Codebook {
    std::size_t n = 0;
    std::uint64_t seed = 0;
    std::vector<std::uint8_t> u;   // N_a rows of length n
    std::vector<std::uint8_t> v;   // v_rows() rows, index (m_a, m_1b, m_2b, m_2a1, d)
    std::vector<std::uint8_t> v1;  // v1_rows() rows, index (v_row, m_1c, d_1, l_1)
    std::vector<std::uint8_t> v2;  // v2_rows() rows, index (v_row, m_2a2, m_2c, d_2, l_2)

    std::span<const std::uint8_t> u_row(std::size_t i) const { return {u.data() + i * n, n}; }
    std::span<const std::uint8_t> v_row(std::size_t i) const { return {v.data() + i * n, n}; }
    std::span<const std::uint8_t> v1_row(std::size_t i) const { return {v1.data() + i * n, n}; }
    std::span<const std::uint8_t> v2_row(std::size_t i) const { return {v2.data() + i * n, n}; }
};

struct Message1 {
    std::size_t m1a = 0, m1b = 0, m1c = 0;
};
struct Message2 {
    std::size_t m2a1 = 0, m2a2 = 0, m2b = 0, m2c = 0;
    std::size_t m2a(std::size_t N_2a2) const { return m2a1 * N_2a2 + m2a2; }
};

// one-time pad index arithmetic (addition mod N_a keeps uniformity for any
// cardinality; coincides with XOR for power-of-two N_a on bit-vectors)
std::size_t otp_combine(std::size_t m1a, std::size_t m2a, std::size_t N_a);
std::size_t otp_invert(std::size_t m_a, std::size_t m2a, std::size_t N_a);

// design-joint marginals the encoder/decoders test typicality against
struct SimContext {
    JointPmf j_uvv1v2;  // p(u,v,v1,v2)
    JointPmf j_uvv1y1;  // p(u,v,v1,y1)
    JointPmf j_uvv2y2;  // p(u,v,v2,y2)
};
SimContext make_sim_context(const CodeParams& params);

Codebook generate_codebook(const CodeParams& params, std::uint64_t seed);

struct EncodeResult {
    std::vector<std::uint8_t> x;
    std::size_t d = 0, d1 = 0, d2 = 0, l1 = 0, l2 = 0;
    bool fallback = false;  // no jointly typical Marton pair found
};

EncodeResult encode(const Codebook& cb, const CodeParams& params, const SimContext& ctx,
                    const Message1& m1, const Message2& m2, Rng& rng);

// robust typicality: |freq(a) - p(a)| <= eps * p(a) for every joint symbol
bool typicality_check(const std::vector<std::span<const std::uint8_t>>& seqs,
                      const JointPmf& design_joint, double eps);

// conditional robust typicality of the trailing block of variables given the
// realized leading block
bool conditional_typicality_check(const std::vector<std::span<const std::uint8_t>>& given,
                                  const std::vector<std::span<const std::uint8_t>>& fresh,
                                  const JointPmf& design_joint, double eps);

struct Rx1Decoded {
    std::size_t m_a = 0, m1b = 0, m1c = 0;
    auto operator<=>(const Rx1Decoded&) const = default;
};
struct Rx2Decoded {
    std::size_t m_a = 0, m2b = 0, m2a1 = 0, m2a2 = 0, m2c = 0;
    auto operator<=>(const Rx2Decoded&) const = default;
};

// all message tuples with at least one typical candidate (receiver 1 knows
// m2, which pins m_2b and m_2a1 in the cloud index)
std::vector<Rx1Decoded> rx1_typical_messages(const Codebook& cb, const CodeParams& params,
                                             const SimContext& ctx,
                                             std::span<const std::uint8_t> y1,
                                             const Message2& m2_side_info);
std::vector<Rx2Decoded> rx2_typical_messages(const Codebook& cb, const CodeParams& params,
                                             const SimContext& ctx,
                                             std::span<const std::uint8_t> y2);

// unique-tuple decoding; nullopt = failure (none or multiple)
std::optional<Rx1Decoded> decode_rx1(const Codebook& cb, const CodeParams& params,
                                     const SimContext& ctx, std::span<const std::uint8_t> y1,
                                     const Message2& m2_side_info);
std::optional<Rx2Decoded> decode_rx2(const Codebook& cb, const CodeParams& params,
                                     const SimContext& ctx, std::span<const std::uint8_t> y2);

struct SimulationReport {
    std::size_t trials = 0, n = 0;
    std::uint64_t seed = 0;
    double err1 = 0.0, err2 = 0.0;
    std::map<std::string, std::uint64_t> event_counts;  // E0, E11..E14, E21..E24
    bool leak_estimated = false;
    double leak1 = 0.0, leak2 = 0.0;  // plug-in estimates, bits
    std::uint64_t encoder_fallbacks = 0;

    std::string serialize() const;
    std::string events_csv() const;
};

// Fresh uniform messages per trial; per-trial random streams derived from
// (seed, trial index); leakage estimated from the pooled (m_i, z^n)
// histogram when n*log2|Z| <= 16, otherwise marked unavailable.
SimulationReport run_trials(const CodeParams& params, std::size_t trials, std::uint64_t seed,
                            std::size_t thread_cap = 0);

}  // namespace secrecy
