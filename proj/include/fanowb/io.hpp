#pragma once

// JSON input files and report serialization. Reports use ordered_json so
// key order (and hence the bytes) is fixed by construction order.
//
// Scalars: F_p elements are emitted as their canonical residue 0..p-1,
// rationals as integers when integral and "a/b" strings otherwise.
// Integers that do not fit in 64 bits are emitted as decimal strings.

#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fanowb/bounds.hpp"
#include "fanowb/curves.hpp"
#include "fanowb/expansion.hpp"
#include "fanowb/fano.hpp"
#include "fanowb/unirational.hpp"

namespace fanowb {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "fano-workbench/1";

// ---------------------------------------------------------------- scalars

inline Json to_json(Fp a) { return a.v; }

inline Json to_json(const Rational& a) {
    if (denominator(a) == 1) {
        const BigInt& v = numerator(a);
        if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
            return v.convert_to<std::int64_t>();
    }
    return a.str();
}

inline Json to_json(const BigInt& v) {
    if (v >= std::numeric_limits<std::int64_t>::min() && v <= std::numeric_limits<std::int64_t>::max())
        return v.convert_to<std::int64_t>();
    return v.str();
}

template <class V>
Json vector_json(const std::vector<V>& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(to_json(x));
    return a;
}

template <class V>
Json rows_json(const std::vector<std::vector<V>>& rows) {
    Json a = Json::array();
    for (const auto& r : rows) a.push_back(vector_json(r));
    return a;
}

template <ExactField F>
Json to_json(const Matrix<F>& m) {
    return rows_json(m.row_vectors());
}

template <ExactField F>
Json to_json(const KPlane<F>& p) {
    return to_json(p.basis());
}

template <ExactField F>
Json to_json(const Form<F>& f) {
    return f.render();
}

inline Json multisets_json(const std::vector<Multiset>& ms) {
    Json a = Json::array();
    for (const auto& m : ms) a.push_back(render_multiset(m));
    return a;
}

template <ExactField F>
Json field_json(const F& field) {
    if constexpr (F::is_prime_field)
        return Json{{"prime", field.characteristic()}};
    else
        return "QQ";
}

// ------------------------------------------------------------------ input

/// Contents of a hypersurface file before a field is chosen.
struct HypersurfaceFile {
    int n = 0;
    int d = 0;
    std::optional<std::uint64_t> prime;  // nullopt: QQ
    std::string form;
    std::vector<std::vector<std::vector<std::string>>> marked_planes;  // entries as text
};

namespace detail {

inline std::string entry_text(const Json& v) {
    if (v.is_number_integer()) return std::to_string(v.get<std::int64_t>());
    if (v.is_string()) return v.get<std::string>();
    fail(ErrorKind::InvalidInput, "plane entries must be integers or \"a/b\" strings");
}

}  // namespace detail

inline HypersurfaceFile parse_hypersurface_json(const Json& j) {
    require(j.is_object(), ErrorKind::InvalidInput, "hypersurface file must be a JSON object");
    HypersurfaceFile h;
    try {
        h.n = j.at("n").get<int>();
        h.d = j.at("d").get<int>();
        h.form = j.at("form").get<std::string>();
        const auto& f = j.at("field");
        if (f.is_string()) {
            require(f.get<std::string>() == "QQ", ErrorKind::InvalidInput, "field must be \"QQ\" or {\"prime\": p}");
        } else {
            h.prime = f.at("prime").get<std::uint64_t>();
        }
        if (j.contains("marked_planes"))
            for (const auto& plane : j.at("marked_planes")) {
                std::vector<std::vector<std::string>> rows;
                for (const auto& row : plane) {
                    std::vector<std::string> r;
                    for (const auto& v : row) r.push_back(detail::entry_text(v));
                    rows.push_back(std::move(r));
                }
                h.marked_planes.push_back(std::move(rows));
            }
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidInput, std::string("malformed hypersurface file: ") + e.what());
    }
    require(h.n >= 2, ErrorKind::InvalidInput, "n must be at least 2");
    require(h.d >= 1, ErrorKind::InvalidInput, "d must be at least 1");
    return h;
}

inline HypersurfaceFile read_hypersurface_file(const std::string& path) {
    std::ifstream in(path);
    require(static_cast<bool>(in), ErrorKind::InvalidInput, "cannot open " + path);
    Json j;
    try {
        j = Json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::InvalidInput, path + ": " + e.what());
    }
    return parse_hypersurface_json(j);
}

template <ExactField F>
Hypersurface<F> build_hypersurface(const HypersurfaceFile& h, const F& field) {
    auto f = parse_form(h.form, h.n + 1, field, h.d);
    require(f.degree() == h.d, ErrorKind::DegreeMismatch,
            "form has degree " + std::to_string(f.degree()) + " but d = " + std::to_string(h.d));
    return Hypersurface<F>(std::move(f));
}

template <ExactField F>
std::vector<KPlane<F>> build_marked_planes(const HypersurfaceFile& h, const F& field) {
    std::vector<KPlane<F>> out;
    for (const auto& plane : h.marked_planes) {
        std::string text;
        for (std::size_t i = 0; i < plane.size(); ++i) {
            if (i) text += ';';
            for (std::size_t j = 0; j < plane[i].size(); ++j) text += (j ? "," : "") + plane[i][j];
        }
        auto rows = parse_rows(field, text);
        for (const auto& r : rows)
            require(static_cast<int>(r.size()) == h.n + 1, ErrorKind::DimensionMismatch, "marked plane row length");
        out.emplace_back(field, rows);
    }
    return out;
}

template <ExactField F>
Json hypersurface_json(const Hypersurface<F>& x, const std::vector<KPlane<F>>& marked = {}) {
    Json j;
    j["n"] = x.ambient_dim();
    j["d"] = x.degree();
    j["field"] = field_json(x.field());
    j["form"] = x.form().render();
    Json planes = Json::array();
    for (const auto& p : marked) planes.push_back(to_json(p));
    j["marked_planes"] = planes;
    return j;
}

// ---------------------------------------------------------------- reports

inline Json to_json(const SingularReport& r) {
    Json j;
    j["singular"] = r.singular;
    j["witness"] = r.singular ? vector_json(r.witness) : Json(nullptr);
    j["extension"] = r.extension;
    j["search_bound"] = r.search_bound;
    j["searched_field_sizes"] = r.searched_field_sizes;
    j["note"] = r.note;
    return j;
}

template <ExactField F>
Json to_json(const PointExpansion<F>& e) {
    Json j;
    j["center"] = to_json(e.center);
    j["change"] = to_json(e.change);
    j["x0_form"] = vector_json(e.x0_form);
    j["transformed"] = to_json(e.transformed);
    Json pieces = Json::array();
    for (const auto& p : e.pieces) pieces.push_back(to_json(p));
    j["pieces"] = pieces;
    j["seed"] = e.seed ? Json(*e.seed) : Json(nullptr);
    return j;
}

template <ExactField F>
Json to_json(const PlaneExpansion<F>& e) {
    Json j;
    j["center"] = to_json(e.center);
    j["k"] = e.k;
    j["change"] = to_json(e.change);
    j["index_count"] = e.indices.size();
    Json c = Json::array();
    for (std::size_t i = 0; i < e.indices.size(); ++i)
        c.push_back(Json{{"I", render_multiset(e.indices[i])}, {"c", to_json(e.coeffs[i])}});
    j["coefficients"] = c;
    return j;
}

template <ExactField F>
Json to_json(const TangentDiagnostics<F>& t) {
    Json j;
    j["k"] = t.k;
    j["at"] = vector_json(t.at);
    j["chart"] = t.chart;
    Json lp = Json::array();
    for (std::size_t i = 0; i < t.indices.size(); ++i)
        lp.push_back(Json{{"I", render_multiset(t.indices[i])}, {"L", vector_json(t.linear_parts[i])}});
    j["linear_parts"] = lp;
    j["delta"] = t.delta;
    j["tangent_dim"] = t.tangent_dim();
    j["downward_set"] = t.downward_set ? multisets_json(*t.downward_set) : Json(nullptr);
    j["seeds"] = t.seeds;
    j["attempts"] = t.attempts;
    return j;
}

inline Json to_json(const TangencyReport& r, bool with_points) {
    Json j;
    j["count"] = r.count;
    j["dim_estimate"] = r.dim_estimate;
    if (with_points) j["points"] = rows_json(r.points);
    return j;
}

inline Json to_json(const ExpectedDims& e) {
    return Json{{"fano", to_json(e.fano)}, {"fiber", to_json(e.fiber)}, {"point_fiber", to_json(e.point_fiber)}};
}

inline Json to_json(const PlaneCensus& c, bool with_planes) {
    Json j;
    j["n"] = c.n;
    j["d"] = c.d;
    j["k"] = c.k;
    j["prime"] = c.p;
    j["count"] = c.count;
    j["visited"] = c.visited;
    j["method"] = c.method;
    if (with_planes) {
        Json planes = Json::array();
        if (c.planes)
            for (const auto& p : *c.planes) planes.push_back(to_json(p));
        j["planes"] = c.planes ? planes : Json(nullptr);
    }
    return j;
}

inline Json to_json(const DimensionEstimate& e) {
    Json j;
    j["primes"] = {e.p1, e.p2};
    j["counts"] = {e.count1, e.count2};
    j["estimate"] = e.estimate;
    j["expected"] = to_json(e.expected);
    return j;
}

inline Json to_json(const SplittingType& s) {
    Json j;
    j["a"] = s.a;
    Json t;
    for (const auto& [m, h] : s.h0_table) t[std::to_string(m)] = h;
    j["h0_table"] = t;
    j["free"] = s.free;
    return j;
}

inline Json to_json(const BasepointReport& r) {
    Json j;
    j["free"] = r.free;
    j["witness"] = r.witness ? vector_json(*r.witness) : Json(nullptr);
    j["witness_ambient"] = r.witness_ambient ? vector_json(*r.witness_ambient) : Json(nullptr);
    j["searched_field_sizes"] = r.searched_field_sizes;
    j["exact"] = r.exact;
    j["note"] = r.note;
    return j;
}

inline Json to_json(const BertiniStrata& b) {
    Json j;
    j["param_dim"] = b.param_dim;
    j["base_dim"] = b.base_dim;
    j["base_points"] = b.base_points;
    Json s = Json::array();
    for (const auto& st : b.strata)
        s.push_back(Json{{"j", st.j},
                         {"count", st.count},
                         {"evidence_dim", st.evidence_dim},
                         {"bound", st.bound},
                         {"within_bound", st.within_bound}});
    j["strata"] = s;
    j["violation"] = b.violation;
    return j;
}

template <ExactField F>
Json to_json(const BoundarySeries<F>& s) {
    Json j;
    j["gamma"] = to_json(s.gamma);
    j["degree"] = s.degree;
    Json rows = Json::array();
    for (std::size_t i = 0; i < s.rows.size(); ++i)
        rows.push_back(Json{{"I", render_multiset(s.rows[i])}, {"c", to_json(s.coefficients[i])}});
    j["rows"] = rows;
    return j;
}

template <ExactField F>
Json to_json(const QuadricParam<F>& q) {
    Json j;
    Json c = Json::array();
    for (const auto& f : q.components) c.push_back(to_json(f));
    j["components"] = c;
    j["pivot"] = q.pivot;
    j["dominant"] = q.dominant;
    j["seed"] = q.seed;
    return j;
}

inline Json to_json(const FailureTally& f) {
    return Json{{"no_root", f.no_root}, {"singular_residual", f.singular_residual}, {"degenerate_phi", f.degenerate_phi}};
}

inline Json to_json(const TowerSampleReport& r, bool with_points) {
    Json j;
    j["requested"] = r.requested;
    j["produced"] = r.produced;
    j["all_on_x"] = r.all_on_x;
    j["distinct"] = r.distinct;
    j["x_points"] = r.x_points ? Json(*r.x_points) : Json(nullptr);
    j["hit_fraction"] = r.hit_fraction ? Json(*r.hit_fraction) : Json(nullptr);
    j["threshold"] = r.threshold;
    j["dominance_evidence"] = r.dominance_evidence ? Json(*r.dominance_evidence) : Json(nullptr);
    j["failures"] = to_json(r.failures);
    j["seed"] = r.seed;
    if (with_points) j["points"] = rows_json(r.points);
    return j;
}

inline Json to_json(const BinomBound& b) {
    return Json{{"x", b.x},
                {"d", b.d},
                {"holds", b.holds},
                {"in_hypothesis", b.in_hypothesis},
                {"binomial", to_json(b.binom)},
                {"power", to_json(b.power)}};
}

inline Json to_json(const PowerBound& b) {
    return Json{{"d", b.d},
                {"value", to_json(b.value)},
                {"bound", "2^" + std::to_string(boost::multiprecision::msb(b.bound))},
                {"holds", b.holds},
                {"separate_case", b.separate_case}};
}

inline Json to_json(const BoundReport& r) {
    Json j;
    j["inputs"] = Json{{"n", r.n}, {"d", r.d}, {"k", r.k}, {"s", r.s}, {"e", r.e}, {"r", r.r ? Json(*r.r) : Json(nullptr)}};
    j["k0"] = r.k0 ? to_json(*r.k0) : Json(nullptr);
    j["n0"] = r.n0 ? to_json(*r.n0) : Json(nullptr);
    Json b;
    for (const auto& [name, v] : r.binomials) b[name] = to_json(v);
    j["binomials"] = b;
    Json p = Json::array();
    for (const auto& pr : r.predicates)
        p.push_back(Json{{"name", pr.name}, {"value", pr.value}, {"inequality", pr.inequality}});
    j["predicates"] = p;
    j["expected"] = to_json(r.expected);
    j["expected_curves"] = to_json(r.expected_curves);
    j["notes"] = r.notes;
    return j;
}

/// {"schema": ..., "command": ...} followed by the fields of `body`.
inline Json envelope(const std::string& command, const Json& body) {
    Json j;
    j["schema"] = kSchema;
    j["command"] = command;
    for (auto it = body.begin(); it != body.end(); ++it) j[it.key()] = it.value();
    return j;
}

}  // namespace fanowb
