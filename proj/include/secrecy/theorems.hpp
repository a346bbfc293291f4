// Rate-region construction: the general inner bound evaluated per auxiliary
// cascade, the raw rate-splitting constraint system it is derived from, the
// closed-form capacity regions for deterministic physically degraded
// channels (thm2 family: side information at the weaker receiver; thm3
// family: at the stronger receiver), the eight specialization sub-regions,
// and a randomized search over cascades.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "secrecy/channel.hpp"
#include "secrecy/linsys.hpp"
#include "secrecy/probability.hpp"
#include "secrecy/region.hpp"
#include "secrecy/rng.hpp"

namespace secrecy {

// factors p(u), p(v|u), p(v1,v2|v), p(x|v1,v2)
struct AuxiliaryCascade {
    Pmf p_u;
    ConditionalPmf p_v_given_u;
    ConditionalPmf p_v1v2_given_v;
    std::size_t card_v1 = 0, card_v2 = 0;
    ConditionalPmf p_x_given_v1v2;

    std::size_t card_u() const { return p_u.alphabet_size(); }
    std::size_t card_v() const { return p_v_given_u.out_size; }
    std::size_t card_x() const { return p_x_given_v1v2.out_size; }
    void validate() const;
};

// The mutual-information constants of the inner bound, all in bits, plus the
// derived R_N1..R_N5 combinations. The *_g_uv values condition on (U,V); by
// the designed chain U -> V -> (V1,V2) -> X they equal the V-conditioned
// ones, but they are computed directly from the joint.
struct Theorem1Terms {
    double i_v1_y1_g_v = 0, i_v1_z_g_v = 0;
    double i_v_y2_g_u = 0, i_v_z_g_u = 0;
    double i_uvv1_y1 = 0, i_vv1_y1_g_u = 0, i_vv1_z_g_u = 0;
    double i_vv2_y2_g_u = 0, i_vv2_z_g_u = 0, i_uvv2_y2 = 0;
    double i_v_y1_g_u = 0, i_u_y1 = 0, i_u_y2 = 0;
    double i_v1_v2_g_v = 0, i_v2_y2_g_v = 0, i_v2_z_g_v = 0;
    double r_n1 = 0, r_n2 = 0, r_n3 = 0, r_n4 = 0, r_n5 = 0;
    double i_v1_v2_g_uv = 0, i_v1_y1_g_uv = 0, i_v2_y2_g_uv = 0;
    double i_v1_z_g_uv = 0, i_v2_z_g_uv = 0;
};

JointPmf cascade_joint(const BroadcastChannel& ch, const AuxiliaryCascade& aux);
Theorem1Terms compute_theorem1_terms(const BroadcastChannel& ch, const AuxiliaryCascade& aux);

struct Theorem1Evaluation {
    Theorem1Terms terms;
    bool conditions_met = false;
    RateRegion2D region;
};

// Evaluates the inner-bound region for one cascade. The three strict side
// conditions are tested with tolerance 1e-12; when any fails the region is
// the single point (0,0).
Theorem1Evaluation eval_theorem1_full(const BroadcastChannel& ch, const AuxiliaryCascade& aux);
RateRegion2D eval_theorem1(const BroadcastChannel& ch, const AuxiliaryCascade& aux);

// Raw constraint system over {R1, R2, Ra, R1a, R1b, R1c, R2a, R2a1, R2a2,
// R2b, R2c, Rd, Rd1, Rd2, Rl1, Rl2}: nonnegativity, the four rate-splitting
// equalities, the seven decodability rows, and the four secrecy rows. The
// two rows known to be redundant are added only behind the flag so their
// redundancy can be checked.
LinSystem build_appendixA_system(const Theorem1Terms& t, bool include_redundant = false);

// the fourteen auxiliary rate variables to eliminate
std::vector<std::string> appendixA_aux_vars();

// derive the (R1,R2) region by eliminating all auxiliary variables
RateRegion2D fm_region(const Theorem1Terms& t, bool include_redundant = false);

RateRegion2D capacity_region_thm2(const BroadcastChannel& ch, const std::vector<Pmf>& px_grid);
RateRegion2D capacity_region_thm3(const BroadcastChannel& ch, const std::vector<Pmf>& px_grid);

enum class Subregion { R1a, R1b, R1c, R1d, R2a, R2b, R2c, R2d };
const char* subregion_name(Subregion s);

// Entropy-case region for one input distribution; returns {(0,0)} when the
// case condition or its side conditions fail under p_x.
RateRegion2D subregion(const BroadcastChannel& ch, const Pmf& p_x, Subregion which);

// the auxiliary identification the sub-region's coding scheme uses
std::string subregion_identification(Subregion which);

// p(x) grid: simplex corners, edge midpoints, barycenter, then flat
// Dirichlet samples until n_points entries
std::vector<Pmf> default_px_grid(std::size_t card_x, std::size_t n_points, std::uint64_t seed);

struct SearchParams {
    std::size_t budget = 1000;
    std::size_t size_u = 1, size_v = 2, size_v1 = 2, size_v2 = 2;
    std::uint64_t seed = 0;
    bool convexify = false;
    std::size_t thread_cap = 0;
};

// Union of inner-bound regions over sampled cascades (flat Dirichlet factor
// rows) plus deterministic-identification seeds (raw and 1e-3-smoothed);
// deterministic given the seed.
RateRegion2D inner_bound_search(const BroadcastChannel& ch, const SearchParams& params);

// flat-Dirichlet random cascade at the given alphabet sizes
AuxiliaryCascade sample_cascade(Rng& rng, std::size_t size_u, std::size_t size_v,
                                std::size_t size_v1, std::size_t size_v2, std::size_t card_x);

}  // namespace secrecy
