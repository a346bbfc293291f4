#include "secrecy/specfile.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "secrecy/errors.hpp"

namespace secrecy {

namespace {

[[noreturn]] void fail(std::size_t line, std::size_t col, const std::string& msg) {
    throw input_error("line " + std::to_string(line) + ", column " + std::to_string(col) + ": " +
                      msg);
}

double parse_number(const KvEntry& e, const std::string& tok) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(tok, &pos);
        if (pos != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        fail(e.line, e.column, "field '" + e.key + "': bad number '" + tok + "'");
    }
}

std::size_t parse_size(const KvEntry& e) {
    if (e.values.size() != 1)
        fail(e.line, e.column, "field '" + e.key + "': expected a single value");
    const double v = parse_number(e, e.values[0]);
    if (v < 0 || v != std::floor(v))
        fail(e.line, e.column, "field '" + e.key + "': expected a nonnegative integer");
    return static_cast<std::size_t>(v);
}

std::vector<double> parse_row(const KvEntry& e, std::size_t expected) {
    if (e.values.size() != expected)
        fail(e.line, e.column,
             "field '" + e.key + "': expected " + std::to_string(expected) + " values, got " +
                 std::to_string(e.values.size()));
    std::vector<double> row;
    row.reserve(expected);
    for (const auto& tok : e.values) row.push_back(parse_number(e, tok));
    return row;
}

void check_and_normalize_row(const KvEntry& e, std::vector<double>& row) {
    double s = 0.0;
    for (double v : row) {
        if (v < 0.0) fail(e.line, e.column, "field '" + e.key + "': negative probability");
        s += v;
    }
    if (std::abs(s - 1.0) > 1e-9)
        fail(e.line, e.column,
             "field '" + e.key + "': probabilities sum to " + std::to_string(s) + ", not 1");
    for (double& v : row) v /= s;
}

}  // namespace

const KvEntry* KvFile::find(const std::string& key) const {
    for (const auto& e : entries)
        if (e.key == key) return &e;
    return nullptr;
}

const KvEntry& KvFile::require(const std::string& key) const {
    const KvEntry* e = find(key);
    if (e == nullptr) throw input_error("missing required field '" + key + "'");
    return *e;
}

KvFile parse_kv(const std::string& text) {
    KvFile kv;
    std::istringstream is(text);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const std::size_t first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos) continue;
        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) fail(line_no, first + 1, "expected 'key = value...'");
        KvEntry e;
        e.line = line_no;
        e.column = first + 1;
        e.key = line.substr(first, eq - first);
        e.key.erase(e.key.find_last_not_of(" \t") + 1);
        if (e.key.empty()) fail(line_no, first + 1, "empty key");
        std::istringstream vs(line.substr(eq + 1));
        std::string tok;
        while (vs >> tok) e.values.push_back(tok);
        if (e.values.empty()) fail(line_no, eq + 2, "field '" + e.key + "': missing value");
        kv.entries.push_back(std::move(e));
    }
    return kv;
}

BroadcastChannel parse_channel_file(const std::string& text) {
    const KvFile kv = parse_kv(text);
    const std::size_t cx = parse_size(kv.require("x"));
    const std::size_t cy1 = parse_size(kv.require("y1"));
    const std::size_t cy2 = parse_size(kv.require("y2"));
    const std::size_t cz = parse_size(kv.require("z"));
    if (cx == 0 || cy1 == 0 || cy2 == 0 || cz == 0)
        throw input_error("channel spec: alphabet sizes must be positive");

    const bool has_maps = kv.find("map.y1") || kv.find("map.y2") || kv.find("map.z");
    const bool has_rows = kv.find("row.0") != nullptr;
    if (has_maps && has_rows)
        throw input_error("channel spec: give either map.* fields or row.* fields, not both");
    if (!has_maps && !has_rows)
        throw input_error("channel spec: missing kernel (map.y1/map.y2/map.z or row.0..)");

    if (has_maps) {
        auto read_map = [&](const char* key, std::size_t card) {
            const KvEntry& e = kv.require(key);
            std::vector<std::size_t> m(cx);
            if (e.values.size() != cx)
                fail(e.line, e.column,
                     "field '" + e.key + "': expected " + std::to_string(cx) + " symbols");
            for (std::size_t i = 0; i < cx; ++i) {
                const double v = parse_number(e, e.values[i]);
                if (v < 0 || v != std::floor(v) || static_cast<std::size_t>(v) >= card)
                    fail(e.line, e.column, "field '" + e.key + "': symbol out of range");
                m[i] = static_cast<std::size_t>(v);
            }
            return m;
        };
        return BroadcastChannel::deterministic(cx, cy1, cy2, cz, read_map("map.y1", cy1),
                                               read_map("map.y2", cy2), read_map("map.z", cz));
    }

    BroadcastChannel ch;
    ch.card_x = cx;
    ch.card_y1 = cy1;
    ch.card_y2 = cy2;
    ch.card_z = cz;
    ch.kernel.in_size = cx;
    ch.kernel.out_size = cy1 * cy2 * cz;
    ch.kernel.rows.resize(cx * ch.kernel.out_size);
    for (std::size_t x = 0; x < cx; ++x) {
        const KvEntry& e = kv.require("row." + std::to_string(x));
        auto row = parse_row(e, ch.kernel.out_size);
        check_and_normalize_row(e, row);
        std::copy(row.begin(), row.end(), ch.kernel.rows.begin() + static_cast<std::ptrdiff_t>(
                                                                       x * ch.kernel.out_size));
    }
    ch.validate();
    return ch;
}

AuxiliaryCascade parse_cascade_file(const std::string& text) {
    const KvFile kv = parse_kv(text);
    const std::size_t cu = parse_size(kv.require("u"));
    const std::size_t cv = parse_size(kv.require("v"));
    const std::size_t cv1 = parse_size(kv.require("v1"));
    const std::size_t cv2 = parse_size(kv.require("v2"));
    if (cu == 0 || cv == 0 || cv1 == 0 || cv2 == 0)
        throw input_error("cascade spec: alphabet sizes must be positive");

    AuxiliaryCascade cas;
    cas.card_v1 = cv1;
    cas.card_v2 = cv2;
    {
        const KvEntry& e = kv.require("p_u");
        auto row = parse_row(e, cu);
        check_and_normalize_row(e, row);
        cas.p_u.probs = row;
    }
    auto read_cond = [&](const std::string& prefix, std::size_t rows, std::size_t cols) {
        ConditionalPmf c;
        c.in_size = rows;
        c.out_size = cols;
        c.rows.resize(rows * cols);
        for (std::size_t i = 0; i < rows; ++i) {
            const KvEntry& e = kv.require(prefix + "." + std::to_string(i));
            auto row = parse_row(e, cols);
            check_and_normalize_row(e, row);
            std::copy(row.begin(), row.end(),
                      c.rows.begin() + static_cast<std::ptrdiff_t>(i * cols));
        }
        return c;
    };
    cas.p_v_given_u = read_cond("p_v_u", cu, cv);
    cas.p_v1v2_given_v = read_cond("p_v1v2_v", cv, cv1 * cv2);
    const KvEntry& first_x = kv.require("p_x_v1v2.0");
    const std::size_t cx = first_x.values.size();
    if (cx == 0) throw input_error("cascade spec: p_x_v1v2.0 has no entries");
    cas.p_x_given_v1v2 = read_cond("p_x_v1v2", cv1 * cv2, cx);
    cas.validate();
    return cas;
}

SimConfig parse_sim_config(const std::string& text) {
    const KvFile kv = parse_kv(text);
    SimConfig cfg;
    auto set_size = [&](const char* key, std::size_t& slot) {
        if (const KvEntry* e = kv.find(key)) slot = parse_size(*e);
    };
    auto set_double = [&](const char* key, double& slot) {
        if (const KvEntry* e = kv.find(key)) {
            if (e->values.size() != 1)
                fail(e->line, e->column, std::string("field '") + key + "': expected one value");
            slot = parse_number(*e, e->values[0]);
        }
    };
    set_size("n", cfg.params.n);
    set_size("trials", cfg.trials);
    if (const KvEntry* e = kv.find("seed")) cfg.seed = static_cast<std::uint64_t>(parse_size(*e));
    set_size("threads", cfg.threads);
    set_size("regen_every", cfg.params.regen_every);
    set_double("eps", cfg.params.eps);
    set_double("eps_prime", cfg.params.eps_prime);
    set_size("N_a", cfg.params.N_a);
    set_size("N_1b", cfg.params.N_1b);
    set_size("N_1c", cfg.params.N_1c);
    set_size("N_2a1", cfg.params.N_2a1);
    set_size("N_2a2", cfg.params.N_2a2);
    set_size("N_2b", cfg.params.N_2b);
    set_size("N_2c", cfg.params.N_2c);
    set_size("N_d", cfg.params.N_d);
    set_size("N_d1", cfg.params.N_d1);
    set_size("N_d2", cfg.params.N_d2);
    set_size("N_l1", cfg.params.N_l1);
    set_size("N_l2", cfg.params.N_l2);
    return cfg;
}

std::string read_text_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw input_error("cannot open file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw input_error("cannot write file '" + path + "'");
    f << content;
}

}  // namespace secrecy
