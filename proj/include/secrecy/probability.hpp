// Exact probability bookkeeping over finite alphabets: distributions,
// conditional kernels, named-variable joint tables, and the information
// measures (entropy, conditional mutual information) computed from them.
//
// All quantities are in bits (log base 2). 0*log 0 = 0; probabilities are
// doubles validated to sum to 1 within 1e-12. All functions are pure.

#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace secrecy {

struct Pmf {
    std::vector<double> probs;

    std::size_t alphabet_size() const { return probs.size(); }
    void validate() const;  // throws input_error

    static Pmf uniform(std::size_t n);
    static Pmf point_mass(std::size_t n, std::size_t at);
};

// rows[i*out_size + o] = p(o | i)
struct ConditionalPmf {
    std::size_t in_size = 0;
    std::size_t out_size = 0;
    std::vector<double> rows;

    double at(std::size_t i, std::size_t o) const { return rows[i * out_size + o]; }
    Pmf row(std::size_t i) const;
    void validate() const;

    static ConditionalPmf identity(std::size_t n);
    static ConditionalPmf deterministic(std::size_t in, std::size_t out,
                                        const std::vector<std::size_t>& map);
};

struct VarSpec {
    std::string name;
    std::size_t size = 0;
};

// Flat row-major table over the product alphabet of `variables`
// (first variable is the slowest-changing index).
struct JointPmf {
    std::vector<VarSpec> variables;
    std::vector<double> table;

    std::size_t var_index(const std::string& name) const;  // throws if unknown
    bool has_var(const std::string& name) const;
    std::size_t table_size() const;
    void validate() const;
};

// H(p) in bits
double entropy(const Pmf& p);

// entropy of an unnamed table (used for joint entropies); values are
// assumed to form a distribution
double entropy(std::span<const double> table);

// sums out every variable not in `keep`; keeps the original variable order
JointPmf marginalize(const JointPmf& j, const std::vector<std::string>& keep);

// I(A;B|C), clamped to >= 0; a, b, given must be pairwise disjoint
double mutual_information(const JointPmf& j, const std::vector<std::string>& a,
                          const std::vector<std::string>& b,
                          const std::vector<std::string>& given = {});

// Joint law p(u,v,v1,v2,x,y1,y2,z) of the cascade
//   p(u) p(v|u) p(v1,v2|v) p(x|v1,v2)           (auxiliary chain)
// composed with the channel p(y1,y2,z|x).
// p_v1v2_v's output alphabet is card_v1*card_v2 (v1-major);
// channel's output alphabet is card_y1*card_y2*card_z (y1-major).
JointPmf chain_compose(const Pmf& p_u, const ConditionalPmf& p_v_u,
                       const ConditionalPmf& p_v1v2_v, std::size_t card_v1, std::size_t card_v2,
                       const ConditionalPmf& p_x_v1v2, const ConditionalPmf& channel,
                       std::size_t card_y1, std::size_t card_y2, std::size_t card_z);

// Memoizing helper for repeated entropy queries against one joint.
// Subsets are variable-index bitmasks over j.variables.
class EntropyCache {
public:
    explicit EntropyCache(const JointPmf& j) : joint_(&j), memo_(std::size_t{1} << j.variables.size(), -1.0) {}

    double joint_entropy(unsigned mask);
    // I(A;B|C) = H(AC) + H(BC) - H(ABC) - H(C), clamped to >= 0
    double mi(unsigned a, unsigned b, unsigned c = 0);
    unsigned mask_of(const std::vector<std::string>& names) const;

private:
    const JointPmf* joint_;
    std::vector<double> memo_;
};

}  // namespace secrecy
