#include "hypgeo/surgery.hpp"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <sstream>

namespace hypgeo::surgery {

using nlohmann::ordered_json;

Int intersection(const IntPair& a, const IntPair& b) { return a.p * b.q - a.q * b.p; }

Slope normalize(const Int& p, const Int& q, bool strict) {
    if (p == 0 && q == 0)
        throw InputError("normalize: (0,0) is not a slope");
    Int g = boost::multiprecision::gcd(boost::multiprecision::abs(p), boost::multiprecision::abs(q));
    if (g > 1 && strict)
        throw NotPrimitive("normalize: gcd(|p|,|q|) > 1");
    Int np = p / g, nq = q / g;
    if (np < 0 || (np == 0 && nq < 0)) {
        np = -np;
        nq = -nq;
    }
    return Slope{np, nq};
}

GeneralizedSlope make_generalized_slope(const Int& d, const Int& p, const Int& q) {
    if (d < 1)
        throw InputError("make_generalized_slope: d must be at least 1");
    return GeneralizedSlope{d, normalize(p, q, /*strict=*/true)};
}

FillingSpec FillingSpec::normalized() const {
    FillingSpec out;
    out.entries.reserve(entries.size());
    for (const auto& e : entries) {
        if (!e) {
            out.entries.push_back(std::nullopt);
            continue;
        }
        const Slope s = normalize(e->pair.p, e->pair.q, /*strict=*/true);
        out.entries.push_back(Filling{e->d, IntPair{s.p, s.q}});
    }
    return out;
}

CuspState CuspState::standard(std::size_t cusps) {
    CuspState st;
    st.meridians.assign(cusps, IntPair{1, 0});
    st.longitudes.assign(cusps, IntPair{0, 1});
    return st;
}

CuspState CuspState::validated(std::vector<IntPair> meridians, std::vector<IntPair> longitudes) {
    if (meridians.size() != longitudes.size())
        throw InputError("CuspState: meridian/longitude count mismatch");
    for (std::size_t i = 0; i < meridians.size(); ++i) {
        const Int w = intersection(meridians[i], longitudes[i]);
        if (w != 1 && w != -1)
            throw InputError("CuspState: (m, l) is not a basis on cusp " + std::to_string(i + 1));
    }
    CuspState st;
    st.meridians = std::move(meridians);
    st.longitudes = std::move(longitudes);
    return st;
}

namespace {

bool is_primitive(const IntPair& x) {
    if (x.p == 0 && x.q == 0)
        return false;
    return boost::multiprecision::gcd(boost::multiprecision::abs(x.p),
                                      boost::multiprecision::abs(x.q)) == 1;
}

}  // namespace

CuspState apply_twist(const CuspState& state, const TwistMove& move) {
    CuspState out = state;
    const std::size_t n = state.meridians.size();
    if (const auto* a = std::get_if<AnnulusTwist>(&move.kind)) {
        if (a->i >= n || a->j >= n)
            throw InputError("apply_twist: cusp index out of range");
        if (a->i == a->j)
            throw InputError("apply_twist: annulus boundary cusps must differ");
        if (!is_primitive(a->xi) || !is_primitive(a->xj))
            throw NotPrimitive("apply_twist: annulus boundary classes must be primitive");
        IntPair& mi = out.meridians[a->i];
        IntPair& mj = out.meridians[a->j];
        const Int ci = move.r * intersection(a->xi, mi);
        const Int cj = move.r * intersection(a->xj, mj);
        mi = IntPair{mi.p + ci * a->xi.p, mi.q + ci * a->xi.q};
        mj = IntPair{mj.p - cj * a->xj.p, mj.q - cj * a->xj.q};
    } else {
        const auto& d = std::get<DiskTwist>(move.kind);
        if (d.i >= n)
            throw InputError("apply_twist: cusp index out of range");
        IntPair& mi = out.meridians[d.i];
        const IntPair& li = out.longitudes[d.i];
        mi = IntPair{mi.p + move.r * li.p, mi.q + move.r * li.q};
    }
    return out;
}

std::vector<TwistMove> slopeseqn_moves(const Int& r1, const Int& r2, const Int& r3, const Int& r4,
                                       const Int& r5, const Int& r) {
    if (r != -r3 - 1)
        throw ConstraintViolated("slopeseqn: requires r = -r3 - 1");
    // The twist direction on the 6/8 annulus is the one matching the
    // canonical tuple; the i-side of the move is cusp 8.
    return {
        TwistMove{AnnulusTwist{0, 2, IntPair{1, -1}, IntPair{1, -1}}, r1},
        TwistMove{AnnulusTwist{1, 3, IntPair{0, 1}, IntPair{0, 1}}, r2},
        TwistMove{DiskTwist{4}, r3},
        TwistMove{AnnulusTwist{7, 5, IntPair{0, 1}, IntPair{0, 1}}, r4},
        TwistMove{DiskTwist{6}, r},
        TwistMove{DiskTwist{8}, r5},
    };
}

FillingSpec reproduce_slopeseqn(const Int& r1, const Int& r2, const Int& r3, const Int& r4,
                                const Int& r5, const Int& r) {
    CuspState st = CuspState::standard(10);
    for (const TwistMove& mv : slopeseqn_moves(r1, r2, r3, r4, r5, r))
        st = apply_twist(st, mv);
    FillingSpec spec;
    spec.entries.reserve(10);
    for (std::size_t i = 0; i < 9; ++i)
        spec.entries.push_back(Filling{1, st.meridians[i]});
    spec.entries.push_back(std::nullopt);
    return spec;
}

long long branched_cover_components(long long p, long long lk) {
    if (p < 2)
        throw DomainError("branched_cover_components: p must be at least 2");
    long long a = p, b = lk < 0 ? -lk : lk;
    while (b != 0) {
        const long long t = a % b;
        a = b;
        b = t;
    }
    return a;
}

long long riemann_hurwitz_genus(long long p, long long base_genus, long long branch_points) {
    if (p < 2)
        throw DomainError("riemann_hurwitz_genus: p must be at least 2");
    if (base_genus < 0 || branch_points < 0)
        throw InputError("riemann_hurwitz_genus: negative inputs");
    const long long chi = p * (2 - 2 * base_genus) - branch_points * (p - 1);
    if (((2 - chi) % 2) != 0)
        throw DomainError("riemann_hurwitz_genus: odd Euler characteristic");
    const long long genus = (2 - chi) / 2;
    if (genus < 0)
        throw DomainError("riemann_hurwitz_genus: inconsistent input (negative genus)");
    return genus;
}

const char* to_string(Geometry g) {
    switch (g) {
        case Geometry::hyperbolic: return "hyperbolic";
        case Geometry::euclidean: return "euclidean";
        case Geometry::spherical: return "spherical";
    }
    return "unknown";
}

Geometry triangle_orbifold_geometry(std::optional<long long> p1, std::optional<long long> p2,
                                    std::optional<long long> p3) {
    Int den = 1;
    for (const auto& p : {p1, p2, p3}) {
        if (p && *p < 2)
            throw DomainError("triangle_orbifold_geometry: cone orders must be at least 2");
        if (p)
            den *= *p;
    }
    // Compare sum over finite orders of 1/p_i with 1, over the common
    // denominator of the finite orders.
    Int num = 0;
    for (const auto& p : {p1, p2, p3})
        if (p)
            num += den / *p;
    if (num < den) return Geometry::hyperbolic;
    if (num == den) return Geometry::euclidean;
    return Geometry::spherical;
}

namespace {

std::string pair_text(const Filling& f) {
    std::ostringstream os;
    os << Int(f.d * f.pair.p) << "," << Int(f.d * f.pair.q);
    return os.str();
}

Int parse_int(const std::string& s) {
    if (s.empty())
        throw InputError("parse_filling: empty integer");
    try {
        return Int(s);
    } catch (const std::exception&) {
        throw InputError("parse_filling: bad integer '" + s + "'");
    }
}

// JSON helpers: emit int64-size values as numbers, wider ones as decimal
// strings; accept both on input.
ordered_json int_to_json(const Int& v) {
    static const Int lo = std::numeric_limits<long long>::min();
    static const Int hi = std::numeric_limits<long long>::max();
    if (v >= lo && v <= hi)
        return static_cast<long long>(v);
    return v.str();
}

Int int_from_json(const ordered_json& j, const std::string& what) {
    if (j.is_number_integer())
        return Int(j.get<long long>());
    if (j.is_string())
        return parse_int(j.get<std::string>());
    throw InputError("move script: " + what + " must be an integer");
}

}  // namespace

std::string format_filling(const FillingSpec& spec) {
    std::ostringstream os;
    os << "M(";
    const bool single = spec.entries.size() == 1;
    for (std::size_t i = 0; i < spec.entries.size(); ++i) {
        if (i)
            os << ",";
        if (!spec.entries[i]) {
            os << "∞";
        } else if (single) {
            os << pair_text(*spec.entries[i]);
        } else {
            os << "(" << pair_text(*spec.entries[i]) << ")";
        }
    }
    os << ")";
    return os.str();
}

FillingSpec parse_filling(const std::string& text) {
    std::string s = text;
    if (s.size() < 3 || s.substr(0, 2) != "M(" || s.back() != ')')
        throw InputError("parse_filling: expected M(...)");
    s = s.substr(2, s.size() - 3);

    std::vector<std::string> tokens;
    std::string cur;
    int depth = 0;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            tokens.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    if (!cur.empty() || !tokens.empty())
        tokens.push_back(cur);

    // Single-cusp shorthand M(p,q): two bare integer tokens.
    auto is_bare_int = [](const std::string& t) {
        return !t.empty() && t.find('(') == std::string::npos && t != "∞" && t != "inf";
    };
    if (tokens.size() == 2 && is_bare_int(tokens[0]) && is_bare_int(tokens[1]))
        tokens = {"(" + tokens[0] + "," + tokens[1] + ")"};

    FillingSpec spec;
    for (std::string t : tokens) {
        while (!t.empty() && t.front() == ' ') t.erase(t.begin());
        while (!t.empty() && t.back() == ' ') t.pop_back();
        if (t == "∞" || t == "inf") {
            spec.entries.push_back(std::nullopt);
            continue;
        }
        if (t.size() < 2 || t.front() != '(' || t.back() != ')')
            throw InputError("parse_filling: bad entry '" + t + "'");
        const std::string body = t.substr(1, t.size() - 2);
        const auto comma = body.find(',');
        if (comma == std::string::npos)
            throw InputError("parse_filling: bad entry '" + t + "'");
        const Int P = parse_int(body.substr(0, comma));
        const Int Q = parse_int(body.substr(comma + 1));
        if (P == 0 && Q == 0)
            throw InputError("parse_filling: (0,0) entry");
        const Int g = boost::multiprecision::gcd(boost::multiprecision::abs(P),
                                                 boost::multiprecision::abs(Q));
        spec.entries.push_back(Filling{g, IntPair{P / g, Q / g}});
    }
    return spec;
}

MoveScript parse_move_script(const std::string& json_text) {
    ordered_json j;
    try {
        j = ordered_json::parse(json_text);
    } catch (const std::exception& e) {
        throw InputError(std::string("move script: invalid JSON: ") + e.what());
    }
    if (!j.is_object() || !j.contains("cusps") || !j.contains("moves") || !j["moves"].is_array() ||
        !j["cusps"].is_number_integer())
        throw InputError("move script: expected {\"cusps\": N, \"moves\": [...]}");
    MoveScript script;
    const long long cusps = j["cusps"].get<long long>();
    if (cusps < 1)
        throw InputError("move script: cusps must be positive");
    script.cusps = static_cast<std::size_t>(cusps);

    auto cusp_index = [&script](const ordered_json& v, const std::string& what) {
        if (!v.is_number_integer())
            throw InputError("move script: " + what + " must be an integer");
        const long long i = v.get<long long>();
        if (i < 1 || static_cast<std::size_t>(i) > script.cusps)
            throw InputError("move script: " + what + " out of range (1-based)");
        return static_cast<std::size_t>(i - 1);
    };
    auto pair_of = [](const ordered_json& v, const std::string& what) {
        if (!v.is_array() || v.size() != 2)
            throw InputError("move script: " + what + " must be [p, q]");
        return IntPair{int_from_json(v[0], what), int_from_json(v[1], what)};
    };

    if (j.contains("unfilled")) {
        if (!j["unfilled"].is_array())
            throw InputError("move script: unfilled must be an array");
        for (const auto& v : j["unfilled"])
            script.unfilled.push_back(cusp_index(v, "unfilled index"));
    }
    for (const auto& mj : j["moves"]) {
        if (!mj.is_object() || !mj.contains("kind") || !mj.contains("r"))
            throw InputError("move script: each move needs kind and r");
        const std::string kind = mj["kind"].get<std::string>();
        const Int r = int_from_json(mj["r"], "r");
        if (kind == "annulus") {
            AnnulusTwist a;
            a.i = cusp_index(mj.at("i"), "i");
            a.j = cusp_index(mj.at("j"), "j");
            a.xi = pair_of(mj.at("xi"), "xi");
            a.xj = pair_of(mj.at("xj"), "xj");
            script.moves.push_back(TwistMove{a, r});
        } else if (kind == "disk") {
            DiskTwist d;
            d.i = cusp_index(mj.at("i"), "i");
            script.moves.push_back(TwistMove{d, r});
        } else {
            throw InputError("move script: unknown move kind '" + kind + "'");
        }
    }
    return script;
}

std::string move_script_to_json(const MoveScript& script) {
    ordered_json j;
    j["cusps"] = script.cusps;
    if (!script.unfilled.empty()) {
        ordered_json arr = ordered_json::array();
        for (std::size_t i : script.unfilled)
            arr.push_back(i + 1);
        j["unfilled"] = arr;
    }
    ordered_json moves = ordered_json::array();
    for (const TwistMove& mv : script.moves) {
        ordered_json mj;
        if (const auto* a = std::get_if<AnnulusTwist>(&mv.kind)) {
            mj["kind"] = "annulus";
            mj["i"] = a->i + 1;
            mj["j"] = a->j + 1;
            mj["xi"] = {int_to_json(a->xi.p), int_to_json(a->xi.q)};
            mj["xj"] = {int_to_json(a->xj.p), int_to_json(a->xj.q)};
        } else {
            mj["kind"] = "disk";
            mj["i"] = std::get<DiskTwist>(mv.kind).i + 1;
        }
        mj["r"] = int_to_json(mv.r);
        moves.push_back(mj);
    }
    j["moves"] = moves;
    return j.dump(2);
}

FillingSpec run_move_script(const MoveScript& script) {
    CuspState st = CuspState::standard(script.cusps);
    for (const TwistMove& mv : script.moves)
        st = apply_twist(st, mv);
    FillingSpec spec;
    spec.entries.reserve(script.cusps);
    for (std::size_t i = 0; i < script.cusps; ++i) {
        const bool unfilled =
            std::find(script.unfilled.begin(), script.unfilled.end(), i) != script.unfilled.end();
        if (unfilled)
            spec.entries.push_back(std::nullopt);
        else
            spec.entries.push_back(Filling{1, st.meridians[i]});
    }
    return spec;
}

std::string filling_to_json(const FillingSpec& spec) {
    ordered_json j;
    ordered_json arr = ordered_json::array();
    for (const auto& e : spec.entries) {
        if (!e) {
            arr.push_back(nullptr);
        } else {
            ordered_json f;
            f["d"] = int_to_json(e->d);
            f["p"] = int_to_json(e->pair.p);
            f["q"] = int_to_json(e->pair.q);
            arr.push_back(f);
        }
    }
    j["filling"] = arr;
    j["formatted"] = format_filling(spec);
    return j.dump(2);
}

}  // namespace hypgeo::surgery
