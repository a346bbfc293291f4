#include "secrecy/theorems.hpp"

#include <algorithm>
#include <cmath>

#include "secrecy/errors.hpp"
#include "secrecy/threading.hpp"

namespace secrecy {

namespace {

constexpr double kStrictTol = 1e-12;

RateRegion2D clamp_to_origin(RateRegion2D r) {
    if (r.empty()) return RateRegion2D::origin_point();
    return r;
}

LinIneq le_r(const std::map<std::string, Rat>& coeffs, double rhs) {
    return make_le(coeffs, rat_from_double_12(rhs));
}

}  // namespace

void AuxiliaryCascade::validate() const {
    p_u.validate();
    p_v_given_u.validate();
    p_v1v2_given_v.validate();
    p_x_given_v1v2.validate();
    if (card_v1 == 0 || card_v2 == 0) throw input_error("cascade: zero auxiliary alphabet");
    if (p_v_given_u.in_size != p_u.alphabet_size())
        throw input_error("cascade: p(v|u) input size != |U|");
    if (p_v1v2_given_v.in_size != p_v_given_u.out_size)
        throw input_error("cascade: p(v1,v2|v) input size != |V|");
    if (p_v1v2_given_v.out_size != card_v1 * card_v2)
        throw input_error("cascade: p(v1,v2|v) output size != |V1|*|V2|");
    if (p_x_given_v1v2.in_size != card_v1 * card_v2)
        throw input_error("cascade: p(x|v1,v2) input size != |V1|*|V2|");
}

JointPmf cascade_joint(const BroadcastChannel& ch, const AuxiliaryCascade& aux) {
    aux.validate();
    ch.validate();
    if (aux.card_x() != ch.card_x)
        throw input_error("cascade_joint: cascade |X| does not match the channel");
    return chain_compose(aux.p_u, aux.p_v_given_u, aux.p_v1v2_given_v, aux.card_v1, aux.card_v2,
                         aux.p_x_given_v1v2, ch.kernel, ch.card_y1, ch.card_y2, ch.card_z);
}

Theorem1Terms compute_theorem1_terms(const BroadcastChannel& ch, const AuxiliaryCascade& aux) {
    const JointPmf j = cascade_joint(ch, aux);
    EntropyCache cache(j);
    const unsigned U = cache.mask_of({"u"}), V = cache.mask_of({"v"});
    const unsigned V1 = cache.mask_of({"v1"}), V2 = cache.mask_of({"v2"});
    const unsigned Y1 = cache.mask_of({"y1"}), Y2 = cache.mask_of({"y2"});
    const unsigned Z = cache.mask_of({"z"});

    Theorem1Terms t;
    t.i_v1_y1_g_v = cache.mi(V1, Y1, V);
    t.i_v1_z_g_v = cache.mi(V1, Z, V);
    t.i_v_y2_g_u = cache.mi(V, Y2, U);
    t.i_v_z_g_u = cache.mi(V, Z, U);
    t.i_uvv1_y1 = cache.mi(U | V | V1, Y1);
    t.i_vv1_y1_g_u = cache.mi(V | V1, Y1, U);
    t.i_vv1_z_g_u = cache.mi(V | V1, Z, U);
    t.i_vv2_y2_g_u = cache.mi(V | V2, Y2, U);
    t.i_vv2_z_g_u = cache.mi(V | V2, Z, U);
    t.i_uvv2_y2 = cache.mi(U | V | V2, Y2);
    t.i_v_y1_g_u = cache.mi(V, Y1, U);
    t.i_u_y1 = cache.mi(U, Y1);
    t.i_u_y2 = cache.mi(U, Y2);
    t.i_v1_v2_g_v = cache.mi(V1, V2, V);
    t.i_v2_y2_g_v = cache.mi(V2, Y2, V);
    t.i_v2_z_g_v = cache.mi(V2, Z, V);

    t.i_v1_v2_g_uv = cache.mi(V1, V2, U | V);
    t.i_v1_y1_g_uv = cache.mi(V1, Y1, U | V);
    t.i_v2_y2_g_uv = cache.mi(V2, Y2, U | V);
    t.i_v1_z_g_uv = cache.mi(V1, Z, U | V);
    t.i_v2_z_g_uv = cache.mi(V2, Z, U | V);

    t.r_n1 = t.i_v2_y2_g_v - t.i_v2_z_g_v - t.i_v1_v2_g_v;
    t.r_n2 = std::min(t.i_v_y1_g_u - t.i_v_z_g_u, 0.0);
    t.r_n3 = std::min(t.r_n1, 0.0);
    t.r_n4 = t.i_v1_y1_g_v - t.i_v1_z_g_v - t.i_v1_v2_g_v;
    t.r_n5 = std::min({t.i_v_y1_g_u + t.i_u_y1 - t.i_u_y2, t.i_v_y1_g_u, t.i_v_z_g_u});
    return t;
}

Theorem1Evaluation eval_theorem1_full(const BroadcastChannel& ch, const AuxiliaryCascade& aux) {
    Theorem1Evaluation ev;
    ev.terms = compute_theorem1_terms(ch, aux);
    const Theorem1Terms& t = ev.terms;

    const bool cond1 = t.i_vv1_y1_g_u + t.r_n3 - t.i_vv1_z_g_u > kStrictTol;
    const bool cond2 = t.i_v1_y1_g_v + t.r_n3 - t.i_v1_z_g_v > kStrictTol;
    const bool cond3 = t.i_v2_y2_g_v - t.i_v2_z_g_v > kStrictTol;
    ev.conditions_met = cond1 && cond2 && cond3;
    if (!ev.conditions_met) {
        ev.region = RateRegion2D::origin_point();
        return ev;
    }

    const double b1 =
        t.i_v1_y1_g_v - t.i_v1_z_g_v + t.i_v_y2_g_u - t.i_v_z_g_u + t.r_n1 + t.r_n2;
    const double b2 = t.i_uvv1_y1 - t.i_v1_z_g_v + t.r_n3;
    const double b3 = t.i_vv1_y1_g_u - t.i_vv1_z_g_u + t.r_n3;
    const double b4 = t.i_vv2_y2_g_u - t.i_vv2_z_g_u + std::min(t.r_n2 + t.r_n4, 0.0);
    const double b5 = t.i_uvv2_y2 - t.i_vv2_z_g_u + t.r_n4 + t.r_n5;

    LinSystem sys;
    sys.vars = {"R1", "R2"};
    sys.add(le_r({{"R1", 1}}, b1));
    sys.add(le_r({{"R1", 1}}, b2));
    sys.add(le_r({{"R1", 1}, {"R2", -1}}, b3));
    sys.add(le_r({{"R2", 1}}, b4));
    sys.add(le_r({{"R1", 1}, {"R2", 1}}, b5));
    ev.region = clamp_to_origin(project_to_region(sys));
    return ev;
}

RateRegion2D eval_theorem1(const BroadcastChannel& ch, const AuxiliaryCascade& aux) {
    return eval_theorem1_full(ch, aux).region;
}

std::vector<std::string> appendixA_aux_vars() {
    return {"Ra",  "R1a", "R1b", "R1c", "R2a", "R2a1", "R2a2",
            "R2b", "R2c", "Rd",  "Rd1", "Rd2", "Rl1",  "Rl2"};
}

LinSystem build_appendixA_system(const Theorem1Terms& t, bool include_redundant) {
    LinSystem sys;
    sys.vars = {"R1",  "R2",  "Ra",  "R1a", "R1b", "R1c", "R2a", "R2a1",
                "R2a2", "R2b", "R2c", "Rd",  "Rd1", "Rd2", "Rl1", "Rl2"};

    for (const auto& v : sys.vars) sys.add(make_ge({{v, 1}}, 0));

    // rate splitting
    sys.add(make_eq({{"R1", 1}, {"R1a", -1}, {"R1b", -1}, {"R1c", -1}}, 0));
    sys.add(make_eq({{"R2", 1}, {"R2a", -1}, {"R2b", -1}, {"R2c", -1}}, 0));
    sys.add(make_eq({{"Ra", 1}, {"R1a", -1}}, 0));
    sys.add(make_eq({{"R1a", 1}, {"R2a", -1}}, 0));
    sys.add(make_eq({{"R2a", 1}, {"R2a1", -1}, {"R2a2", -1}}, 0));

    // decodability (mutual covering + packing)
    sys.add(make_ge({{"Rl1", 1}, {"Rl2", 1}}, rat_from_double_12(t.i_v1_v2_g_uv)));
    sys.add(le_r({{"R1", 1}, {"Rd", 1}, {"Rd1", 1}, {"Rl1", 1}}, t.i_uvv1_y1));
    sys.add(le_r({{"R1", 1}, {"Ra", -1}, {"Rd", 1}, {"Rd1", 1}, {"Rl1", 1}}, t.i_vv1_y1_g_u));
    sys.add(le_r({{"R1c", 1}, {"Rd1", 1}, {"Rl1", 1}}, t.i_v1_y1_g_uv));
    sys.add(le_r({{"R2", 1}, {"R1b", 1}, {"Rd", 1}, {"R2a", 1}, {"Rd2", 1}, {"Rl2", 1}},
                 t.i_uvv2_y2));
    sys.add(le_r(
        {{"R2", 1}, {"Ra", -1}, {"R1b", 1}, {"Rd", 1}, {"R2a", 1}, {"Rd2", 1}, {"Rl2", 1}},
        t.i_vv2_y2_g_u));
    sys.add(le_r({{"R2a2", 1}, {"R2c", 1}, {"Rd2", 1}, {"Rl2", 1}}, t.i_v2_y2_g_uv));

    // secrecy saturation
    sys.add(make_ge({{"R2b", 1}, {"Rd", 1}}, rat_from_double_12(t.i_v_z_g_u)));
    sys.add(make_ge({{"Rd1", 1}}, rat_from_double_12(t.i_v1_z_g_uv)));
    sys.add(make_ge({{"R1b", 1}, {"Rd", 1}}, rat_from_double_12(t.i_v_z_g_u)));
    sys.add(make_ge({{"Rd2", 1}}, rat_from_double_12(t.i_v2_z_g_uv)));

    if (include_redundant) {
        sys.add(make_ge({{"R1b", 1}, {"R2b", 1}, {"Rd", 1}}, rat_from_double_12(t.i_v_z_g_u)));
        sys.add(make_ge({{"R2c", 1}, {"Rd2", 1}}, rat_from_double_12(t.i_v2_z_g_uv)));
    }
    return sys;
}

RateRegion2D fm_region(const Theorem1Terms& t, bool include_redundant) {
    const LinSystem sys = build_appendixA_system(t, include_redundant);
    const LinSystem projected = eliminate_all(sys, appendixA_aux_vars(), /*prune=*/true);
    return project_to_region(projected);
}

// ------------------------------------------------------- capacity regions

namespace {

struct EntropyReport {
    double hy1 = 0, hy2 = 0, hz = 0;
    double hy1_g_z = 0, hy2_g_z = 0, hy2_g_y1 = 0, hy1_g_y2 = 0;
};

EntropyReport channel_entropies(const BroadcastChannel& ch, const Pmf& p_x) {
    const JointPmf j = induced_joint(ch, p_x);
    EntropyCache cache(j);
    const unsigned Y1 = cache.mask_of({"y1"}), Y2 = cache.mask_of({"y2"});
    const unsigned Z = cache.mask_of({"z"});
    EntropyReport e;
    e.hy1 = cache.joint_entropy(Y1);
    e.hy2 = cache.joint_entropy(Y2);
    e.hz = cache.joint_entropy(Z);
    e.hy1_g_z = cache.joint_entropy(Y1 | Z) - e.hz;
    e.hy2_g_z = cache.joint_entropy(Y2 | Z) - e.hz;
    e.hy2_g_y1 = cache.joint_entropy(Y1 | Y2) - e.hy1;
    e.hy1_g_y2 = cache.joint_entropy(Y1 | Y2) - e.hy2;
    return e;
}

bool in_family(const BroadcastChannel& ch, bool thm2) {
    if (!is_deterministic(ch, Output::Y1) || !is_deterministic(ch, Output::Y2) ||
        !is_deterministic(ch, Output::Z))
        return false;
    const std::array<DegradednessOrder, 3> orders =
        thm2 ? std::array<DegradednessOrder, 3>{DegradednessOrder::Y2_Y1_Z,
                                                DegradednessOrder::Y2_Z_Y1,
                                                DegradednessOrder::Z_Y2_Y1}
             : std::array<DegradednessOrder, 3>{DegradednessOrder::Y1_Y2_Z,
                                                DegradednessOrder::Y1_Z_Y2,
                                                DegradednessOrder::Z_Y1_Y2};
    return std::any_of(orders.begin(), orders.end(),
                       [&](DegradednessOrder o) { return check_degradedness(ch, o); });
}

void require_family(const BroadcastChannel& ch, bool thm2, const char* who) {
    for (Output o : {Output::Y1, Output::Y2, Output::Z}) {
        if (!is_deterministic(ch, o))
            throw input_error(std::string(who) + ": channel output " +
                              (o == Output::Y1 ? "Y1" : o == Output::Y2 ? "Y2" : "Z") +
                              " is not a deterministic function of X");
    }
    if (!in_family(ch, thm2))
        throw input_error(std::string(who) + ": channel is not physically degraded in any of " +
                          (thm2 ? "the orders X->Y2->Y1->Z, X->Y2->Z->Y1, X->Z->Y2->Y1"
                                : "the orders X->Y1->Y2->Z, X->Y1->Z->Y2, X->Z->Y1->Y2"));
}

RateRegion2D thm2_point_region(const EntropyReport& e) {
    LinSystem sys;
    sys.vars = {"R1", "R2"};
    sys.add(le_r({{"R1", 1}}, e.hy1));
    sys.add(le_r({{"R1", 1}}, e.hy2_g_z));
    sys.add(le_r({{"R1", 1}, {"R2", -1}}, e.hy1_g_z));
    sys.add(le_r({{"R2", 1}}, e.hy2_g_z));
    sys.add(le_r({{"R1", 1}, {"R2", 1}}, e.hy2));
    return clamp_to_origin(project_to_region(sys));
}

RateRegion2D thm3_point_region(const EntropyReport& e) {
    LinSystem sys;
    sys.vars = {"R1", "R2"};
    sys.add(le_r({{"R1", 1}}, e.hy1_g_z));
    sys.add(le_r({{"R2", 1}}, e.hy2_g_z));
    sys.add(le_r({{"R1", 1}, {"R2", 1}}, e.hy1));
    return clamp_to_origin(project_to_region(sys));
}

}  // namespace

RateRegion2D capacity_region_thm2(const BroadcastChannel& ch, const std::vector<Pmf>& px_grid) {
    require_family(ch, /*thm2=*/true, "capacity_region_thm2");
    if (px_grid.empty()) throw input_error("capacity_region_thm2: empty p(x) grid");
    std::vector<RateRegion2D> members(px_grid.size());
    parallel_for(px_grid.size(), [&](std::size_t i) {
        members[i] = thm2_point_region(channel_entropies(ch, px_grid[i]));
    });
    return region_union(members);
}

RateRegion2D capacity_region_thm3(const BroadcastChannel& ch, const std::vector<Pmf>& px_grid) {
    require_family(ch, /*thm2=*/false, "capacity_region_thm3");
    if (px_grid.empty()) throw input_error("capacity_region_thm3: empty p(x) grid");
    std::vector<RateRegion2D> members(px_grid.size());
    parallel_for(px_grid.size(), [&](std::size_t i) {
        members[i] = thm3_point_region(channel_entropies(ch, px_grid[i]));
    });
    return region_union(members);
}

// ------------------------------------------------------------ sub-regions

const char* subregion_name(Subregion s) {
    switch (s) {
        case Subregion::R1a: return "R1a";
        case Subregion::R1b: return "R1b";
        case Subregion::R1c: return "R1c";
        case Subregion::R1d: return "R1d";
        case Subregion::R2a: return "R2a";
        case Subregion::R2b: return "R2b";
        case Subregion::R2c: return "R2c";
        default: return "R2d";
    }
}

std::string subregion_identification(Subregion which) {
    switch (which) {
        case Subregion::R1a: return "U=const, V1=V=Y1, V2=Y2";
        case Subregion::R1b: return "U=const, V1=V2=V=Y1=Y2";
        case Subregion::R1c: return "V1=V=U=Y1, V2=Y2";
        case Subregion::R1d: return "V1=V2=V=U=const (no secure communication)";
        case Subregion::R2a: return "U=const, V1=Y1, V2=V=Y2";
        case Subregion::R2b: return "U=const, V2=V1=V=Y2=Y1";
        case Subregion::R2c: return "V1=Y1, V2=V=U=const";
        default: return "V1=V2=V=U=const (no secure communication)";
    }
}

RateRegion2D subregion(const BroadcastChannel& ch, const Pmf& p_x, Subregion which) {
    const bool thm2_family = which == Subregion::R1a || which == Subregion::R1b ||
                             which == Subregion::R1c || which == Subregion::R1d;
    require_family(ch, thm2_family,
                   thm2_family ? "subregion (R1a-R1d)" : "subregion (R2a-R2d)");
    const EntropyReport e = channel_entropies(ch, p_x);
    const double tol = kStrictTol;
    auto gt = [&](double a, double b) { return a - b > tol; };
    auto geq = [&](double a, double b) { return a - b > -tol; };
    auto eq = [&](double a, double b) { return std::abs(a - b) <= tol; };

    LinSystem sys;
    sys.vars = {"R1", "R2"};
    switch (which) {
        case Subregion::R1a: {
            if (!(gt(e.hy2, e.hy1) && gt(e.hy1, e.hz))) return RateRegion2D::origin_point();
            if (!(gt(e.hy1_g_z, 0.0) && gt(e.hy2_g_y1, 0.0))) return RateRegion2D::origin_point();
            sys.add(le_r({{"R1", 1}}, e.hy1));
            sys.add(le_r({{"R1", 1}}, e.hy2_g_z));
            sys.add(le_r({{"R1", 1}, {"R2", -1}}, e.hy1_g_z));
            sys.add(le_r({{"R2", 1}}, e.hy2_g_z));
            sys.add(le_r({{"R1", 1}, {"R2", 1}}, e.hy2));
            break;
        }
        case Subregion::R1b: {
            if (!(eq(e.hy2, e.hy1) && gt(e.hy1, e.hz))) return RateRegion2D::origin_point();
            if (!gt(e.hy1_g_z, 0.0)) return RateRegion2D::origin_point();
            sys.add(le_r({{"R1", 1}}, e.hy2_g_z));
            sys.add(le_r({{"R2", 1}}, e.hy2_g_z));
            sys.add(le_r({{"R1", 1}, {"R2", 1}}, e.hy2));
            break;
        }
        case Subregion::R1c: {
            if (!(gt(e.hy2, e.hz) && geq(e.hz, e.hy1))) return RateRegion2D::origin_point();
            sys.add(le_r({{"R1", 1}}, e.hy1));
            sys.add(le_r({{"R1", 1}, {"R2", -1}}, 0.0));
            sys.add(le_r({{"R2", 1}}, e.hy2_g_z));
            sys.add(le_r({{"R1", 1}, {"R2", 1}}, e.hy2));
            break;
        }
        case Subregion::R1d: {
            return RateRegion2D::origin_point();
        }
        case Subregion::R2a: {
            if (!(gt(e.hy1, e.hy2) && gt(e.hy2, e.hz))) return RateRegion2D::origin_point();
            if (!(gt(e.hy1_g_z, 0.0) && gt(e.hy1_g_y2, 0.0))) return RateRegion2D::origin_point();
            sys.add(le_r({{"R1", 1}}, e.hy1_g_z));
            sys.add(le_r({{"R2", 1}}, e.hy2_g_z));
            sys.add(le_r({{"R1", 1}, {"R2", 1}}, e.hy1));
            break;
        }
        case Subregion::R2b: {
            if (!(eq(e.hy1, e.hy2) && gt(e.hy2, e.hz))) return RateRegion2D::origin_point();
            if (!gt(e.hy2_g_z, 0.0)) return RateRegion2D::origin_point();
            sys.add(le_r({{"R1", 1}}, e.hy1_g_z));
            sys.add(le_r({{"R2", 1}}, e.hy2_g_z));
            sys.add(le_r({{"R1", 1}, {"R2", 1}}, e.hy1));
            break;
        }
        case Subregion::R2c: {
            if (!(gt(e.hy1, e.hz) && geq(e.hz, e.hy2))) return RateRegion2D::origin_point();
            sys.add(le_r({{"R1", 1}}, e.hy1_g_z));
            sys.add(le_r({{"R2", 1}}, 0.0));
            break;
        }
        case Subregion::R2d: {
            return RateRegion2D::origin_point();
        }
    }
    return clamp_to_origin(project_to_region(sys));
}

std::vector<Pmf> default_px_grid(std::size_t card_x, std::size_t n_points, std::uint64_t seed) {
    std::vector<Pmf> grid;
    for (std::size_t i = 0; i < card_x; ++i) grid.push_back(Pmf::point_mass(card_x, i));
    for (std::size_t i = 0; i < card_x; ++i)
        for (std::size_t j = i + 1; j < card_x; ++j) {
            Pmf p;
            p.probs.assign(card_x, 0.0);
            p.probs[i] = p.probs[j] = 0.5;
            grid.push_back(p);
        }
    grid.push_back(Pmf::uniform(card_x));
    Rng rng = Rng(seed).fork(0x9d);
    while (grid.size() < n_points) {
        Pmf p;
        p.probs = rng.dirichlet_flat(card_x);
        grid.push_back(p);
    }
    return grid;
}

// ------------------------------------------------------------------ search

namespace {

ConditionalPmf smooth_rows(const ConditionalPmf& c, double lambda) {
    ConditionalPmf out = c;
    const double u = 1.0 / static_cast<double>(c.out_size);
    for (auto& p : out.rows) p = (1.0 - lambda) * p + lambda * u;
    return out;
}

AuxiliaryCascade smooth_cascade(const AuxiliaryCascade& c, double lambda) {
    AuxiliaryCascade out = c;
    out.p_v_given_u = smooth_rows(c.p_v_given_u, lambda);
    out.p_v1v2_given_v = smooth_rows(c.p_v1v2_given_v, lambda);
    out.p_x_given_v1v2 = smooth_rows(c.p_x_given_v1v2, lambda);
    return out;
}

// Builds the cascade realizing U = u(X), V = v(X), V1 = v1(X), V2 = v2(X)
// under the input p_x: p(u) is the pushforward and p(v|u), p(v1,v2|v),
// p(x|v1,v2) the induced conditionals. Matches the intended identification
// when each map coarsens the next (U a function of V, V of (V1,V2)), which
// holds for the patterns used here.
bool identification_cascade(const Pmf& p_x, const std::vector<std::size_t>& u_of_x,
                            std::size_t card_u, const std::vector<std::size_t>& v_of_x,
                            std::size_t card_v, const std::vector<std::size_t>& v1_of_x,
                            std::size_t card_v1, const std::vector<std::size_t>& v2_of_x,
                            std::size_t card_v2, AuxiliaryCascade& out) {
    const std::size_t nx = p_x.alphabet_size();
    std::vector<double> pu(card_u, 0.0);
    std::vector<double> pv(card_v, 0.0);
    std::vector<double> pu_v(card_u * card_v, 0.0);
    std::vector<double> pv12(card_v1 * card_v2, 0.0);
    std::vector<double> pv_v12(card_v * card_v1 * card_v2, 0.0);
    for (std::size_t x = 0; x < nx; ++x) {
        const std::size_t u = u_of_x[x], v = v_of_x[x];
        const std::size_t pair = v1_of_x[x] * card_v2 + v2_of_x[x];
        pu[u] += p_x.probs[x];
        pv[v] += p_x.probs[x];
        pu_v[u * card_v + v] += p_x.probs[x];
        pv12[pair] += p_x.probs[x];
        pv_v12[v * card_v1 * card_v2 + pair] += p_x.probs[x];
    }
    out.p_u.probs = pu;
    out.card_v1 = card_v1;
    out.card_v2 = card_v2;
    out.p_v_given_u.in_size = card_u;
    out.p_v_given_u.out_size = card_v;
    out.p_v_given_u.rows.assign(card_u * card_v, 0.0);
    for (std::size_t u = 0; u < card_u; ++u) {
        if (pu[u] <= 0.0) {
            out.p_v_given_u.rows[u * card_v] = 1.0;
            continue;
        }
        for (std::size_t v = 0; v < card_v; ++v)
            out.p_v_given_u.rows[u * card_v + v] = pu_v[u * card_v + v] / pu[u];
    }

    out.p_v1v2_given_v.in_size = card_v;
    out.p_v1v2_given_v.out_size = card_v1 * card_v2;
    out.p_v1v2_given_v.rows.assign(card_v * card_v1 * card_v2, 0.0);
    for (std::size_t v = 0; v < card_v; ++v) {
        if (pv[v] <= 0.0) {
            // unused conditioning symbol: any row works
            out.p_v1v2_given_v.rows[v * card_v1 * card_v2] = 1.0;
            continue;
        }
        for (std::size_t pr = 0; pr < card_v1 * card_v2; ++pr)
            out.p_v1v2_given_v.rows[v * card_v1 * card_v2 + pr] =
                pv_v12[v * card_v1 * card_v2 + pr] / pv[v];
    }

    out.p_x_given_v1v2.in_size = card_v1 * card_v2;
    out.p_x_given_v1v2.out_size = nx;
    out.p_x_given_v1v2.rows.assign(card_v1 * card_v2 * nx, 0.0);
    for (std::size_t pr = 0; pr < card_v1 * card_v2; ++pr) {
        if (pv12[pr] <= 0.0) {
            out.p_x_given_v1v2.rows[pr * nx] = 1.0;
            continue;
        }
        for (std::size_t x = 0; x < nx; ++x) {
            if (v1_of_x[x] * card_v2 + v2_of_x[x] == pr)
                out.p_x_given_v1v2.rows[pr * nx + x] = p_x.probs[x] / pv12[pr];
        }
    }
    // the construction is Markov only if V is a function of (V1, V2); the
    // identification patterns guarantee it, so just sanity-check dimensions
    try {
        out.validate();
    } catch (const input_error&) {
        return false;
    }
    return true;
}

std::vector<std::size_t> output_map(const BroadcastChannel& ch, Output o) {
    // argmax per row; valid for deterministic outputs
    const std::size_t n = o == Output::Y1 ? ch.card_y1 : o == Output::Y2 ? ch.card_y2 : ch.card_z;
    std::vector<std::size_t> map(ch.card_x, 0);
    for (std::size_t x = 0; x < ch.card_x; ++x) {
        std::vector<double> marg(n, 0.0);
        std::size_t col = 0;
        for (std::size_t y1 = 0; y1 < ch.card_y1; ++y1)
            for (std::size_t y2 = 0; y2 < ch.card_y2; ++y2)
                for (std::size_t z = 0; z < ch.card_z; ++z, ++col) {
                    const std::size_t sym = o == Output::Y1 ? y1 : o == Output::Y2 ? y2 : z;
                    marg[sym] += ch.kernel.at(x, col);
                }
        map[x] = static_cast<std::size_t>(
            std::max_element(marg.begin(), marg.end()) - marg.begin());
    }
    return map;
}

std::vector<AuxiliaryCascade> seed_cascades(const BroadcastChannel& ch,
                                            const SearchParams& params, Rng& rng) {
    std::vector<AuxiliaryCascade> seeds;
    std::vector<Pmf> pxs = {Pmf::uniform(ch.card_x)};
    for (int i = 0; i < 3; ++i) {
        Pmf p;
        p.probs = rng.dirichlet_flat(ch.card_x);
        pxs.push_back(p);
    }

    std::vector<std::size_t> ident(ch.card_x);
    for (std::size_t x = 0; x < ch.card_x; ++x) ident[x] = x;
    const std::vector<std::size_t> constant(ch.card_x, 0);

    struct Pattern {
        std::vector<std::size_t> u, v, v1, v2;
        std::size_t cu, cv, cv1, cv2;
    };
    std::vector<Pattern> patterns;
    // full identity: V = V1 = V2 = X, U trivial
    patterns.push_back({constant, ident, ident, ident, 1, ch.card_x, ch.card_x, ch.card_x});
    if (is_deterministic(ch, Output::Y1) && is_deterministic(ch, Output::Y2)) {
        const auto y1m = output_map(ch, Output::Y1);
        const auto y2m = output_map(ch, Output::Y2);
        const std::size_t c1 = ch.card_y1, c2 = ch.card_y2;
        // the eight sub-region identifications
        patterns.push_back({constant, y1m, y1m, y2m, 1, c1, c1, c2});  // V1=V=Y1, V2=Y2
        patterns.push_back({constant, y2m, y2m, y2m, 1, c2, c2, c2});  // all = Y2
        patterns.push_back({constant, y1m, y1m, y1m, 1, c1, c1, c1});  // all = Y1
        patterns.push_back({y1m, y1m, y1m, y2m, c1, c1, c1, c2});      // U=V=V1=Y1, V2=Y2 (pad)
        patterns.push_back({constant, y2m, y1m, y2m, 1, c2, c1, c2});  // V2=V=Y2, V1=Y1
        patterns.push_back({constant, constant, y1m, constant, 1, 1, c1, 1});  // wiretap on V1
        patterns.push_back({constant, constant, constant, y2m, 1, 1, 1, c2});  // V2 only
    }

    for (const auto& px : pxs) {
        for (const auto& pat : patterns) {
            if (pat.cu > params.size_u || pat.cv > params.size_v || pat.cv1 > params.size_v1 ||
                pat.cv2 > params.size_v2)
                continue;
            AuxiliaryCascade c;
            if (!identification_cascade(px, pat.u, pat.cu, pat.v, pat.cv, pat.v1, pat.cv1,
                                        pat.v2, pat.cv2, c))
                continue;
            seeds.push_back(c);
            seeds.push_back(smooth_cascade(c, 1e-3));
        }
    }
    return seeds;
}

}  // namespace

AuxiliaryCascade sample_cascade(Rng& rng, std::size_t size_u, std::size_t size_v,
                                std::size_t size_v1, std::size_t size_v2, std::size_t card_x) {
    AuxiliaryCascade c;
    c.p_u.probs = rng.dirichlet_flat(size_u);
    c.p_v_given_u.in_size = size_u;
    c.p_v_given_u.out_size = size_v;
    for (std::size_t i = 0; i < size_u; ++i) {
        const auto row = rng.dirichlet_flat(size_v);
        c.p_v_given_u.rows.insert(c.p_v_given_u.rows.end(), row.begin(), row.end());
    }
    c.card_v1 = size_v1;
    c.card_v2 = size_v2;
    c.p_v1v2_given_v.in_size = size_v;
    c.p_v1v2_given_v.out_size = size_v1 * size_v2;
    for (std::size_t i = 0; i < size_v; ++i) {
        const auto row = rng.dirichlet_flat(size_v1 * size_v2);
        c.p_v1v2_given_v.rows.insert(c.p_v1v2_given_v.rows.end(), row.begin(), row.end());
    }
    c.p_x_given_v1v2.in_size = size_v1 * size_v2;
    c.p_x_given_v1v2.out_size = card_x;
    for (std::size_t i = 0; i < size_v1 * size_v2; ++i) {
        const auto row = rng.dirichlet_flat(card_x);
        c.p_x_given_v1v2.rows.insert(c.p_x_given_v1v2.rows.end(), row.begin(), row.end());
    }
    return c;
}

RateRegion2D inner_bound_search(const BroadcastChannel& ch, const SearchParams& params) {
    if (params.budget < 1) throw input_error("inner_bound_search: budget must be >= 1");
    if (params.size_u < 1 || params.size_v < 1 || params.size_v1 < 1 || params.size_v2 < 1)
        throw input_error("inner_bound_search: alphabet bounds must be >= 1");
    ch.validate();

    Rng seed_rng = Rng(params.seed).fork(0x5eed);
    std::vector<AuxiliaryCascade> cascades = seed_cascades(ch, params, seed_rng);
    if (cascades.size() > params.budget) cascades.resize(params.budget);
    const std::size_t n_random = params.budget - cascades.size();
    for (std::size_t i = 0; i < n_random; ++i) {
        Rng r = Rng(params.seed).fork(1000 + i);
        cascades.push_back(sample_cascade(r, params.size_u, params.size_v, params.size_v1,
                                          params.size_v2, ch.card_x));
    }

    std::vector<RateRegion2D> members(cascades.size());
    parallel_for(
        cascades.size(), [&](std::size_t i) { members[i] = eval_theorem1(ch, cascades[i]); },
        params.thread_cap);
    return region_union(members, params.convexify);
}

}  // namespace secrecy
