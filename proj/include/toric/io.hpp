#pragma once
// JSON interchange for fans, base algebras, bundle specs and ring reports.

#include <toric/bundle.hpp>

#include <json.hpp>

#include <fstream>
#include <limits>
#include <set>

namespace toric::io {

using Json = nlohmann::ordered_json;

// Integers that do not fit in 64 bits are written as decimal strings.
inline Json int_json(const Int& v) {
    if (v >= Int(std::numeric_limits<long long>::min()) && v <= Int(std::numeric_limits<long long>::max()))
        return v.convert_to<long long>();
    return v.str();
}

inline Json rat_json(const Rat& r) { return Json::array({int_json(numerator_of(r)), int_json(denominator_of(r))}); }

inline Json vec_json(const QVector& v) {
    Json a = Json::array();
    for (const auto& x : v) a.push_back(rat_json(x));
    return a;
}

inline Int parse_int(const Json& j) {
    if (j.is_number_integer()) return Int(j.get<long long>());
    if (j.is_string()) return Int(j.get<std::string>());
    throw PreconditionError("BadJson", "expected an integer, got " + j.dump());
}

// Accepts an integer, [num, den], or a "p/q" string.
inline Rat parse_rat(const Json& j) {
    if (j.is_number_integer()) return Rat(j.get<long long>());
    if (j.is_string()) return Rat(j.get<std::string>());
    if (j.is_array() && j.size() == 2) {
        Int d = parse_int(j[1]);
        if (d == 0) throw PreconditionError("BadJson", "zero denominator");
        return Rat(parse_int(j[0])) / Rat(d);
    }
    throw PreconditionError("BadJson", "expected a rational, got " + j.dump());
}

inline const Json& field(const Json& j, const char* key) {
    if (!j.is_object() || !j.contains(key)) throw PreconditionError("BadJson", std::string("missing field \"") + key + "\"");
    return j.at(key);
}

inline Json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw PreconditionError("FileNotFound", "cannot open " + path);
    try {
        return Json::parse(in);
    } catch (const Json::parse_error& e) {
        throw PreconditionError("BadJson", path + ": " + e.what());
    }
}

// ---------------------------------------------------------------------------
// Fans

inline Fan read_fan(const Json& j) {
    std::vector<IVector> rays;
    std::vector<Cone> cones;
    try {
        rays = field(j, "rays").get<std::vector<IVector>>();
        cones = field(j, "max_cones").get<std::vector<Cone>>();
    } catch (const Json::exception& e) {
        throw PreconditionError("BadJson", std::string("fan: ") + e.what());
    }
    if (rays.empty()) throw GeometryError("InvalidFan", "fan has no rays");
    return make_fan(std::move(rays), std::move(cones));
}

inline Json fan_json(const Fan& f) {
    Json j;
    j["rays"] = f.rays;
    j["max_cones"] = f.max_cones;
    return j;
}

// ---------------------------------------------------------------------------
// Base algebras

// [[num, den, name], ...] in a fixed degree; degree -1 infers it from the first name.
inline Element read_element(const GradedAlgebra& a, const Json& terms, int degree) {
    if (!terms.is_array()) throw PreconditionError("BadJson", "element must be a list of [num, den, name]");
    Element out{degree, {}};
    if (degree >= 0) out = a.zero(degree);
    for (const auto& t : terms) {
        if (!t.is_array() || t.size() != 3 || !t[2].is_string())
            throw PreconditionError("BadJson", "element term must be [num, den, name], got " + t.dump());
        const std::string name = t[2].get<std::string>();
        auto loc = a.find_label(name);
        if (!loc) throw PreconditionError("UnknownLabel", "unknown basis label " + name);
        if (out.degree < 0) out = a.zero(loc->first);
        if (loc->first != out.degree)
            throw PreconditionError("DegreeMismatch", name + " has degree " + std::to_string(loc->first) +
                                                          ", expected " + std::to_string(out.degree));
        out.coeffs[loc->second] += parse_rat(Json::array({t[0], t[1]}));
    }
    if (out.degree < 0) throw PreconditionError("BadJson", "cannot infer the degree of an empty element");
    return out;
}

inline Json element_json(const GradedAlgebra& a, const Element& e) {
    Json out = Json::array();
    for (std::size_t i = 0; i < e.coeffs.size(); ++i)
        if (e.coeffs[i] != 0)
            out.push_back(Json::array({int_json(numerator_of(e.coeffs[i])), int_json(denominator_of(e.coeffs[i])),
                                       a.labels(e.degree)[i]}));
    return out;
}

inline BaseData read_base(const Json& j, const std::string& name = "base") {
    const int top = field(j, "top_degree").get<int>();
    if (top < 0 || top % 2 != 0) throw PreconditionError("OddDegree", "top_degree must be even and nonnegative");
    std::vector<std::vector<std::string>> labels(static_cast<std::size_t>(top / 2 + 1));
    std::set<std::string> seen;
    for (const auto& [key, names] : field(j, "basis").items()) {
        int d = 0;
        try {
            d = std::stoi(key);
        } catch (const std::exception&) {
            throw PreconditionError("BadJson", "basis key " + key + " is not a degree");
        }
        if (d % 2 != 0) throw PreconditionError("OddDegree", "basis in odd degree " + key);
        if (d < 0 || d > top) throw PreconditionError("DegreeMismatch", "basis degree " + key + " outside 0..top_degree");
        for (const auto& n : names) {
            const std::string s = n.get<std::string>();
            if (!seen.insert(s).second) throw PreconditionError("DuplicateLabel", "duplicate basis label " + s);
            labels[static_cast<std::size_t>(d / 2)].push_back(s);
        }
    }
    GradedAlgebra a(labels);
    a.set_unit_products();
    if (j.contains("products"))
        for (const auto& p : j.at("products")) {
            auto la = a.find_label(field(p, "a").get<std::string>());
            auto lb = a.find_label(field(p, "b").get<std::string>());
            if (!la || !lb) throw PreconditionError("UnknownLabel", "product refers to an unknown label: " + p.dump());
            if (la->first == 0 || lb->first == 0) throw PreconditionError("BadJson", "products with the unit are implicit");
            const int d = la->first + lb->first;
            if (d > top) {
                if (!field(p, "result").empty()) throw PreconditionError("DegreeMismatch", "product beyond top degree");
                continue;
            }
            Element r = read_element(a, field(p, "result"), d);
            a.set_product(la->first, la->second, lb->first, lb->second, r.coeffs);
        }
    a.validate();
    TopFunctional o{top, QVector(a.dim(top), Rat(0))};
    Element oe = read_element(a, field(j, "orientation"), top);
    o.values = oe.coeffs;
    return {name, a, o};
}

inline Json base_json(const BaseData& b) {
    const GradedAlgebra& a = b.algebra;
    Json j;
    j["top_degree"] = a.top_degree();
    Json basis = Json::object();
    for (int d = 0; d <= a.top_degree(); d += 2) basis[std::to_string(d)] = a.labels(d);
    j["basis"] = basis;
    Json prods = Json::array();
    for (int p = 2; p <= a.top_degree(); p += 2)
        for (std::size_t i = 0; i < a.dim(p); ++i)
            for (int q = p; p + q <= a.top_degree(); q += 2)
                for (std::size_t k = q == p ? i : 0; k < a.dim(q); ++k) {
                    Element r{p + q, a.product(p, i, q, k)};
                    if (r.is_zero()) continue;
                    Json e;
                    e["a"] = a.labels(p)[i];
                    e["b"] = a.labels(q)[k];
                    e["result"] = element_json(a, r);
                    prods.push_back(e);
                }
    j["products"] = prods;
    j["orientation"] = element_json(a, {b.orientation.degree, b.orientation.values});
    return j;
}

// ---------------------------------------------------------------------------
// Bundle specs: "chern" may sit at the top level or inside "base".

inline BundleSpec read_spec(const Json& j, const std::string& name = "spec") {
    BundleSpec s;
    s.name = name;
    s.base = read_base(field(j, "base"), name + ".base");
    const Json& chern = j.contains("chern") ? j.at("chern") : field(field(j, "base"), "chern");
    for (const auto& c : chern) s.chern.push_back(read_element(s.base.algebra, c, 2));
    s.fan = read_fan(field(j, "fan"));
    return s;
}

inline Json spec_json(const BundleSpec& s) {
    Json j;
    j["base"] = base_json(s.base);
    Json chern = Json::array();
    for (const auto& c : s.chern) chern.push_back(element_json(s.base.algebra, c));
    j["chern"] = chern;
    j["fan"] = fan_json(s.fan);
    return j;
}

// ---------------------------------------------------------------------------
// Ring reports

inline Json ring_json(const GradedAlgebra& a, const TopFunctional& top) {
    Json j;
    j["dims"] = a.dims();
    Json body = base_json({"", a, top});
    j["basis"] = body["basis"];
    j["products"] = body["products"];
    j["top_functional"] = body["orientation"];
    return j;
}

}  // namespace toric::io
