#include "secrecy/probability.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "secrecy/errors.hpp"
#include "secrecy/kernels.hpp"

namespace secrecy {

namespace {

constexpr double kSumTol = 1e-12;

void check_distribution(std::span<const double> v, const char* what) {
    for (double p : v) {
        if (!(p >= 0.0) || !std::isfinite(p))
            throw input_error(std::string(what) + ": negative or non-finite probability entry");
    }
    const double s = kernels::sum(v.data(), v.size());
    if (std::abs(s - 1.0) > kSumTol)
        throw input_error(std::string(what) + ": probabilities sum to " + std::to_string(s) +
                          ", not 1");
}

}  // namespace

void Pmf::validate() const {
    if (probs.empty()) throw input_error("pmf: empty alphabet");
    check_distribution(probs, "pmf");
}

Pmf Pmf::uniform(std::size_t n) {
    Pmf p;
    p.probs.assign(n, 1.0 / static_cast<double>(n));
    return p;
}

Pmf Pmf::point_mass(std::size_t n, std::size_t at) {
    Pmf p;
    p.probs.assign(n, 0.0);
    p.probs.at(at) = 1.0;
    return p;
}

Pmf ConditionalPmf::row(std::size_t i) const {
    Pmf p;
    p.probs.assign(rows.begin() + static_cast<std::ptrdiff_t>(i * out_size),
                   rows.begin() + static_cast<std::ptrdiff_t>((i + 1) * out_size));
    return p;
}

void ConditionalPmf::validate() const {
    if (in_size == 0 || out_size == 0) throw input_error("conditional pmf: empty alphabet");
    if (rows.size() != in_size * out_size)
        throw input_error("conditional pmf: table size does not match alphabets");
    for (std::size_t i = 0; i < in_size; ++i)
        check_distribution(std::span(rows).subspan(i * out_size, out_size), "conditional pmf row");
}

ConditionalPmf ConditionalPmf::identity(std::size_t n) {
    ConditionalPmf c;
    c.in_size = c.out_size = n;
    c.rows.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) c.rows[i * n + i] = 1.0;
    return c;
}

ConditionalPmf ConditionalPmf::deterministic(std::size_t in, std::size_t out,
                                             const std::vector<std::size_t>& map) {
    if (map.size() != in) throw input_error("deterministic map: wrong length");
    ConditionalPmf c;
    c.in_size = in;
    c.out_size = out;
    c.rows.assign(in * out, 0.0);
    for (std::size_t i = 0; i < in; ++i) {
        if (map[i] >= out) throw input_error("deterministic map: symbol out of range");
        c.rows[i * out + map[i]] = 1.0;
    }
    return c;
}

std::size_t JointPmf::var_index(const std::string& name) const {
    for (std::size_t i = 0; i < variables.size(); ++i)
        if (variables[i].name == name) return i;
    throw input_error("joint pmf: unknown variable '" + name + "'");
}

bool JointPmf::has_var(const std::string& name) const {
    return std::any_of(variables.begin(), variables.end(),
                       [&](const VarSpec& v) { return v.name == name; });
}

std::size_t JointPmf::table_size() const {
    std::size_t n = 1;
    for (const auto& v : variables) n *= v.size;
    return n;
}

void JointPmf::validate() const {
    if (variables.empty()) throw input_error("joint pmf: no variables");
    std::set<std::string> names;
    for (const auto& v : variables) {
        if (v.size == 0) throw input_error("joint pmf: zero-size alphabet for " + v.name);
        if (!names.insert(v.name).second)
            throw input_error("joint pmf: duplicate variable '" + v.name + "'");
    }
    if (table.size() != table_size())
        throw input_error("joint pmf: table size does not match variables");
    check_distribution(table, "joint pmf");
}

double entropy(const Pmf& p) {
    p.validate();
    return kernels::neg_xlog2x_sum(p.probs.data(), p.probs.size());
}

double entropy(std::span<const double> table) {
    return kernels::neg_xlog2x_sum(table.data(), table.size());
}

JointPmf marginalize(const JointPmf& j, const std::vector<std::string>& keep) {
    if (keep.empty()) throw input_error("marginalize: empty keep set");
    std::vector<bool> keep_flag(j.variables.size(), false);
    for (const auto& name : keep) keep_flag[j.var_index(name)] = true;

    JointPmf out;
    for (std::size_t i = 0; i < j.variables.size(); ++i)
        if (keep_flag[i]) out.variables.push_back(j.variables[i]);

    // strides in the source and destination tables
    const std::size_t nv = j.variables.size();
    std::vector<std::size_t> src_stride(nv, 1), dst_stride(nv, 0);
    for (std::size_t i = nv; i-- > 1;) src_stride[i - 1] = src_stride[i] * j.variables[i].size;
    std::size_t acc = 1;
    for (std::size_t i = nv; i-- > 0;) {
        if (keep_flag[i]) {
            dst_stride[i] = acc;
            acc *= j.variables[i].size;
        }
    }

    out.table.assign(acc, 0.0);
    const std::size_t total = j.table.size();
    std::vector<std::size_t> idx(nv, 0);
    std::size_t dst = 0;
    for (std::size_t flat = 0; flat < total; ++flat) {
        out.table[dst] += j.table[flat];
        // odometer increment
        for (std::size_t i = nv; i-- > 0;) {
            idx[i]++;
            dst += dst_stride[i];
            if (idx[i] < j.variables[i].size) break;
            idx[i] = 0;
            dst -= dst_stride[i] * j.variables[i].size;
        }
    }

    // renormalize (guards against accumulated rounding)
    const double s = kernels::sum(out.table.data(), out.table.size());
    if (s > 0.0 && std::abs(s - 1.0) > 1e-15)
        kernels::scale_inplace(out.table.data(), out.table.size(), 1.0 / s);
    return out;
}

double EntropyCache::joint_entropy(unsigned mask) {
    if (mask == 0) return 0.0;
    double& slot = memo_[mask];
    if (slot >= 0.0) return slot;
    std::vector<std::string> keep;
    for (std::size_t i = 0; i < joint_->variables.size(); ++i)
        if (mask & (1u << i)) keep.push_back(joint_->variables[i].name);
    const JointPmf m = marginalize(*joint_, keep);
    slot = entropy(std::span<const double>(m.table));
    return slot;
}

double EntropyCache::mi(unsigned a, unsigned b, unsigned c) {
    const double v =
        joint_entropy(a | c) + joint_entropy(b | c) - joint_entropy(a | b | c) - joint_entropy(c);
    return std::max(0.0, v);
}

unsigned EntropyCache::mask_of(const std::vector<std::string>& names) const {
    unsigned m = 0;
    for (const auto& n : names) m |= 1u << joint_->var_index(n);
    return m;
}

double mutual_information(const JointPmf& j, const std::vector<std::string>& a,
                          const std::vector<std::string>& b,
                          const std::vector<std::string>& given) {
    std::set<std::string> seen;
    for (const auto* grp : {&a, &b, &given})
        for (const auto& n : *grp) {
            j.var_index(n);
            if (!seen.insert(n).second)
                throw input_error("mutual_information: variable '" + n +
                                  "' appears in more than one argument set");
        }
    if (a.empty() || b.empty()) throw input_error("mutual_information: empty variable set");

    EntropyCache cache(j);
    return cache.mi(cache.mask_of(a), cache.mask_of(b), cache.mask_of(given));
}

JointPmf chain_compose(const Pmf& p_u, const ConditionalPmf& p_v_u,
                       const ConditionalPmf& p_v1v2_v, std::size_t card_v1, std::size_t card_v2,
                       const ConditionalPmf& p_x_v1v2, const ConditionalPmf& channel,
                       std::size_t card_y1, std::size_t card_y2, std::size_t card_z) {
    p_u.validate();
    p_v_u.validate();
    p_v1v2_v.validate();
    p_x_v1v2.validate();
    channel.validate();

    const std::size_t nu = p_u.alphabet_size();
    const std::size_t nv = p_v_u.out_size;
    const std::size_t nx = p_x_v1v2.out_size;
    if (p_v_u.in_size != nu) throw input_error("chain_compose: p(v|u) input size != |U|");
    if (p_v1v2_v.in_size != nv) throw input_error("chain_compose: p(v1,v2|v) input size != |V|");
    if (p_v1v2_v.out_size != card_v1 * card_v2)
        throw input_error("chain_compose: p(v1,v2|v) output size != |V1|*|V2|");
    if (p_x_v1v2.in_size != card_v1 * card_v2)
        throw input_error("chain_compose: p(x|v1,v2) input size != |V1|*|V2|");
    if (channel.in_size != nx) throw input_error("chain_compose: channel input size != |X|");
    if (channel.out_size != card_y1 * card_y2 * card_z)
        throw input_error("chain_compose: channel output size != |Y1|*|Y2|*|Z|");

    JointPmf j;
    j.variables = {{"u", nu},       {"v", nv},       {"v1", card_v1}, {"v2", card_v2},
                   {"x", nx},       {"y1", card_y1}, {"y2", card_y2}, {"z", card_z}};
    j.table.assign(j.table_size(), 0.0);

    std::size_t flat = 0;
    for (std::size_t u = 0; u < nu; ++u) {
        const double pu = p_u.probs[u];
        for (std::size_t v = 0; v < nv; ++v) {
            const double pv = pu * p_v_u.at(u, v);
            for (std::size_t v1 = 0; v1 < card_v1; ++v1) {
                for (std::size_t v2 = 0; v2 < card_v2; ++v2) {
                    const std::size_t v12 = v1 * card_v2 + v2;
                    const double pv12 = pv * p_v1v2_v.at(v, v12);
                    for (std::size_t x = 0; x < nx; ++x) {
                        const double px = pv12 * p_x_v1v2.at(v12, x);
                        if (px == 0.0) {
                            flat += card_y1 * card_y2 * card_z;
                            continue;
                        }
                        const double* ch = &channel.rows[x * channel.out_size];
                        for (std::size_t o = 0; o < channel.out_size; ++o)
                            j.table[flat++] = px * ch[o];
                    }
                }
            }
        }
    }

    // renormalize once; factor products can drift by a few ulp
    const double s = kernels::sum(j.table.data(), j.table.size());
    if (s > 0.0) kernels::scale_inplace(j.table.data(), j.table.size(), 1.0 / s);
    return j;
}

}  // namespace secrecy
