#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hypgeo/errors.hpp"

namespace hypgeo::surgery {

// Arbitrary-width integers: twist iterates compose multiplicatively and
// must never overflow.
using Int = boost::multiprecision::cpp_int;

// Homology class on a boundary torus in the (meridian, longitude) basis.
struct IntPair {
    Int p, q;

    friend bool operator==(const IntPair&, const IntPair&) = default;
};

// Algebraic intersection number (p,q) . (p',q') = p q' - q p'.
Int intersection(const IntPair& a, const IntPair& b);

// Primitive class up to sign, normalized to p > 0, or p == 0 and q == 1.
struct Slope {
    Int p, q;

    friend bool operator==(const Slope&, const Slope&) = default;
};

// strict: gcd(|p|,|q|) > 1 throws NotPrimitive. Non-strict divides by the
// gcd. (0,0) is always rejected.
Slope normalize(const Int& p, const Int& q, bool strict = true);

struct GeneralizedSlope {
    Int d;       // d >= 1; d == 1 is an ordinary filling
    Slope slope;

    friend bool operator==(const GeneralizedSlope&, const GeneralizedSlope&) = default;
};

// Validates d >= 1 and strictly normalizes the pair.
GeneralizedSlope make_generalized_slope(const Int& d, const Int& p, const Int& q);

// One filled boundary component: the pair is kept exactly as produced by
// the move sequence (possibly unnormalized); d >= 1.
struct Filling {
    Int d;
    IntPair pair;

    friend bool operator==(const Filling&, const Filling&) = default;
};

// Per-cusp filling data; nullopt stands for an unfilled cusp (the infinity
// symbol in place of the slope).
struct FillingSpec {
    std::vector<std::optional<Filling>> entries;

    // Slope-normalizes every filled entry (strict: entries must be
    // primitive).
    FillingSpec normalized() const;

    friend bool operator==(const FillingSpec&, const FillingSpec&) = default;
};

struct AnnulusTwist {
    std::size_t i, j;  // 0-based cusp indices
    IntPair xi, xj;    // boundary classes of the annulus on cusps i and j
};

struct DiskTwist {
    std::size_t i;
};

struct TwistMove {
    std::variant<AnnulusTwist, DiskTwist> kind;
    Int r;  // iterate count; sign = direction
};

// Meridian/longitude classes per cusp. Meridians may drift off primitive
// normal form during a move sequence; longitudes never change.
struct CuspState {
    std::vector<IntPair> meridians;
    std::vector<IntPair> longitudes;

    static CuspState standard(std::size_t cusps);  // m = (1,0), l = (0,1)
    // Validates |m_i ^ l_i| = 1 on every cusp.
    static CuspState validated(std::vector<IntPair> meridians, std::vector<IntPair> longitudes);
};

// Annulus: m_i += r (x_i . m_i) x_i and m_j -= r (x_j . m_j) x_j.
// Disk: m_i += r l_i. Everything else is untouched.
CuspState apply_twist(const CuspState& state, const TwistMove& move);

// The canonical six-move sequence on ten cusps producing the slope tuple
//   (1+r1,-r1),(1,-r2),(1-r1,r1),(1,r2),(1,r3),(1,r4),(1,-r3-1),(1,-r4),(1,r5),inf
// Requires r == -r3 - 1 (throws ConstraintViolated otherwise).
FillingSpec reproduce_slopeseqn(const Int& r1, const Int& r2, const Int& r3, const Int& r4,
                                const Int& r5, const Int& r);

// Moves of the canonical sequence, exposed so scripts can be generated.
std::vector<TwistMove> slopeseqn_moves(const Int& r1, const Int& r2, const Int& r3, const Int& r4,
                                       const Int& r5, const Int& r);

// Components of the preimage of a curve with linking number lk under the
// p-fold cyclic branched cover: gcd(p, |lk|), with gcd(p, 0) = p.
long long branched_cover_components(long long p, long long lk);

// genus of the p-fold cyclic cover, fully branched over branch_points
// points: chi = p (2 - 2 base_genus) - branch_points (p - 1).
long long riemann_hurwitz_genus(long long p, long long base_genus, long long branch_points);

enum class Geometry { hyperbolic, euclidean, spherical };

const char* to_string(Geometry g);

// nullopt = infinite order (puncture). Hyperbolic iff sum 1/p_i < 1.
Geometry triangle_orbifold_geometry(std::optional<long long> p1, std::optional<long long> p2,
                                    std::optional<long long> p3);

// Renders M(dp,dq) / M((d1 p1, d1 q1), ..., inf, ...); the d factor is
// folded into the printed pair. parse_filling recovers d as the gcd, which
// is lossless for primitive slope pairs.
std::string format_filling(const FillingSpec& spec);
FillingSpec parse_filling(const std::string& text);

// JSON move-script format:
//   { "cusps": N,
//     "unfilled": [one-based cusp indices],        // optional
//     "moves": [ {"kind":"annulus","i":..,"j":..,"xi":[a,b],"xj":[a,b],"r":..},
//                {"kind":"disk","i":..,"r":..} ] }
// Indices in the file are 1-based.
struct MoveScript {
    std::size_t cusps = 0;
    std::vector<std::size_t> unfilled;  // 0-based
    std::vector<TwistMove> moves;
};

MoveScript parse_move_script(const std::string& json_text);
std::string move_script_to_json(const MoveScript& script);

// Applies the script to the standard state and assembles the FillingSpec
// (d = 1 on every filled cusp).
FillingSpec run_move_script(const MoveScript& script);

std::string filling_to_json(const FillingSpec& spec);

}  // namespace hypgeo::surgery
