// Hand-editable text inputs: channel spec files, auxiliary cascade files,
// and simulation config files. All share one "key = value..." line format
// with '#' comments; parse errors carry line/column diagnostics.

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "secrecy/channel.hpp"
#include "secrecy/sim.hpp"
#include "secrecy/theorems.hpp"

namespace secrecy {

struct KvEntry {
    std::string key;
    std::vector<std::string> values;
    std::size_t line = 0;
    std::size_t column = 0;
};

struct KvFile {
    std::vector<KvEntry> entries;
    const KvEntry* find(const std::string& key) const;
    const KvEntry& require(const std::string& key) const;  // throws input_error
};

KvFile parse_kv(const std::string& text);

// Channel spec: alphabet sizes x, y1, y2, z plus exactly one of
//   map.y1 / map.y2 / map.z   (deterministic output maps), or
//   row.0 .. row.(x-1)        (dense kernel rows over lexicographic (y1,y2,z)).
// Dense rows must sum to 1 within 1e-9 and are renormalized.
BroadcastChannel parse_channel_file(const std::string& text);

// Cascade file: sizes u, v, v1, v2 plus rows p_u, p_v_u.<i>, p_v1v2_v.<i>
// ((v1,v2) pairs v1-major) and p_x_v1v2.<i> (rows indexed by the (v1,v2)
// pair, v1-major).
AuxiliaryCascade parse_cascade_file(const std::string& text);

// Simulation config: n, trials, seed, eps, eps_prime, regen_every, threads,
// and the cardinalities N_a, N_1b, N_1c, N_2a1, N_2a2, N_2b, N_2c, N_d,
// N_d1, N_d2, N_l1, N_l2. Unset keys keep their defaults.
struct SimConfig {
    CodeParams params;  // cascade/channel filled by the caller
    std::size_t trials = 1000;
    std::uint64_t seed = 0;
    std::size_t threads = 0;
};
SimConfig parse_sim_config(const std::string& text);

std::string read_text_file(const std::string& path);  // throws input_error
void write_text_file(const std::string& path, const std::string& content);

}  // namespace secrecy
