#pragma once
// Command implementations behind the toric command-line tool. Each command
// returns an exit code, a JSON report and human-readable lines.

#include <toric/catalog.hpp>
#include <toric/io.hpp>

#include <filesystem>
#include <functional>
#include <random>

namespace toric::cli {

using io::Json;

inline constexpr const char* kVersion = "1.0.0";

enum Exit : int { Ok = 0, IdentityFailed = 1, InvalidGeometry = 2, PreconditionFailed = 3 };

struct Options {
    std::string command;  // fan-check | ring | verify | intersect
    std::string input;
    std::string builder = "sr";
    std::string ell = "intersection";
    std::string suite;
    std::string expr;
    std::uint64_t seed = 0;
    int verbosity = 0;
};

struct Outcome {
    int exit_code = Ok;
    Json report;
    std::vector<std::string> lines;
};

// ---------------------------------------------------------------------------
// Input resolution: catalog names first, then files. A name that is both is an error.

struct Resolved {
    std::string source;
    std::optional<BundleSpec> spec;
    std::optional<BaseData> base;
    std::optional<Fan> fan;
};

inline Resolved resolve_input(const std::string& name) {
    Resolved r;
    auto spec = catalog_spec(name);
    auto base = catalog_base(name);
    auto fan = catalog_fan(name);
    const bool in_catalog = spec || base || fan;
    const bool is_file = std::filesystem::is_regular_file(name);
    if (in_catalog && is_file)
        throw PreconditionError("NameCollision", name + " is both a catalog name and a file");
    if (in_catalog) {
        r.source = "catalog";
        r.spec = spec;
        r.base = base;
        r.fan = fan;
    } else if (is_file) {
        r.source = "file";
        Json j = io::read_json_file(name);
        const std::string stem = std::filesystem::path(name).stem().string();
        if (j.contains("base") && j.contains("fan")) r.spec = io::read_spec(j, stem);
        else if (j.contains("top_degree")) r.base = io::read_base(j, stem);
        else if (j.contains("rays")) r.fan = io::read_fan(j);
        else throw PreconditionError("BadJson", name + " is not a fan, base or bundle spec");
    } else {
        throw PreconditionError("NotFound", name + " is neither a catalog name nor a readable file");
    }
    if (r.spec) {
        r.base = r.spec->base;
        r.fan = r.spec->fan;
    }
    return r;
}

inline const BundleSpec& need_spec(const Resolved& r) {
    if (!r.spec) throw PreconditionError("NeedSpec", "this command needs a bundle spec");
    return *r.spec;
}

inline const Fan& need_fan(const Resolved& r) {
    if (!r.fan) throw PreconditionError("NeedFan", "this command needs a fan or a bundle spec");
    return *r.fan;
}

inline const BaseData& need_base(const Resolved& r) {
    if (!r.base) throw PreconditionError("NeedBase", "this command needs a base algebra or a bundle spec");
    return *r.base;
}

// ---------------------------------------------------------------------------
// Formatting

inline std::string rat_text(const Rat& r) { return r.str(); }

inline std::string vec_text(const QVector& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i].str();
    return s + "]";
}

inline std::string params_text(const Json& p) {
    std::string s;
    for (const auto& [k, v] : p.items()) {
        if (!s.empty()) s += " ";
        s += k + "=" + (v.is_string() ? v.get<std::string>() : v.dump());
    }
    return s;
}

inline Json qvec_param(const QVector& v) {
    Json a = Json::array();
    for (const auto& x : v) {
        if (is_integer(x)) a.push_back(io::int_json(numerator_of(x)));
        else a.push_back(x.str());
    }
    return a;
}

inline Json dims_json(const std::vector<std::size_t>& d) { return Json(d); }

inline std::string dims_text(const std::vector<std::size_t>& d) {
    std::string s = "[";
    for (std::size_t i = 0; i < d.size(); ++i) s += (i ? "," : "") + std::to_string(d[i]);
    return s + "]";
}

// ---------------------------------------------------------------------------
// Seeded inputs. Only raw engine output is used so streams agree across platforms.

inline long long draw(std::mt19937_64& rng, long long lo, long long hi) {
    return lo + static_cast<long long>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline QVector draw_vector(std::mt19937_64& rng, std::size_t n, long long lo, long long hi) {
    QVector v(n);
    for (auto& x : v) x = draw(rng, lo, hi);
    return v;
}

inline QVector draw_convex(MixedIntegrator& mi, std::mt19937_64& rng) {
    for (;;) {
        QVector h = mi.perturbed_point(rng, 2);
        if (is_strictly_convex_on(mi.fan(), h)) return h;
    }
}

// ---------------------------------------------------------------------------
// Check collection

class Checks {
public:
    void identity(const std::string& name, Json params, const IdentityCheck& c) {
        Json row;
        row["check"] = name;
        row["params"] = std::move(params);
        row["lhs"] = io::rat_json(c.lhs);
        row["rhs"] = io::rat_json(c.rhs);
        row["pass"] = c.holds();
        lines_.push_back(std::string(c.holds() ? "PASS " : "FAIL ") + name + prefixed(row["params"]) + " lhs=" + rat_text(c.lhs) + " rhs=" + rat_text(c.rhs));
        add(std::move(row), c.holds());
    }

    void boolean(const std::string& name, Json params, bool ok, const std::string& detail) {
        Json row;
        row["check"] = name;
        row["params"] = std::move(params);
        row["detail"] = detail;
        row["pass"] = ok;
        lines_.push_back(std::string(ok ? "PASS " : "FAIL ") + name + prefixed(row["params"]) +
                         (detail.empty() ? "" : " (" + detail + ")"));
        add(std::move(row), ok);
    }

    std::size_t passed() const { return passed_; }
    std::size_t total() const { return rows_.size(); }
    const Json& rows() const { return rows_; }
    const std::vector<std::string>& lines() const { return lines_; }

private:
    static std::string prefixed(const Json& params) {
        std::string t = params_text(params);
        return t.empty() ? t : " " + t;
    }

    void add(Json row, bool ok) {
        rows_.push_back(std::move(row));
        if (ok) ++passed_;
    }

    Json rows_ = Json::array();
    std::vector<std::string> lines_;
    std::size_t passed_ = 0;
};

// ---------------------------------------------------------------------------
// fan check

inline Outcome fan_check(const Options& o, Json& report) {
    Resolved in = resolve_input(o.input);
    const Fan& f = need_fan(in);
    Outcome out;
    const bool smooth = is_smooth(f);
    const bool complete = is_complete(f);
    Projectivity proj;
    if (smooth && complete) proj = is_projective(f);
    report["fan"] = io::fan_json(f);
    report["smooth"] = smooth;
    report["complete"] = complete;
    report["projective"] = proj.projective;
    report["witness"] = proj.projective ? io::vec_json(proj.witness) : Json(nullptr);
    auto mark = [](bool b) { return b ? "yes" : "no"; };
    out.lines.push_back(std::string("smooth: ") + mark(smooth));
    out.lines.push_back(std::string("complete: ") + mark(complete));
    if (smooth && complete) out.lines.push_back(std::string("projective: ") + mark(proj.projective));
    else out.lines.push_back("projective: no (needs a complete smooth fan)");
    if (proj.projective) out.lines.push_back("witness h* = " + vec_text(proj.witness));
    return out;
}

// ---------------------------------------------------------------------------
// ring

inline void ring_lines(Outcome& out, const std::string& builder, const GradedAlgebra& a, const TopFunctional& top) {
    out.lines.push_back("builder: " + builder);
    out.lines.push_back("dims: " + dims_text(a.dims()));
    for (int d = 0; d <= a.top_degree(); d += 2) {
        std::string s = "degree " + std::to_string(d) + ":";
        for (const auto& l : a.labels(d)) s += " " + l;
        out.lines.push_back(s);
    }
    out.lines.push_back("top functional: " + a.format({top.degree, top.values}));
}

inline Outcome ring(const Options& o, Json& report) {
    Resolved in = resolve_input(o.input);
    ToricBundle b(need_spec(in));
    Outcome out;
    report["builder"] = o.builder;
    Json ring;
    std::size_t total = 0;
    if (o.builder == "sr") {
        const auto& r = b.sr();
        ring = io::ring_json(r.algebra, r.top);
        Json nf = Json::array();
        for (const auto& c : r.minimal_nonfaces) nf.push_back(c);
        ring["minimal_nonfaces"] = nf;
        total = r.algebra.total_dim();
        ring_lines(out, "sr", r.algebra, r.top);
    } else if (o.builder == "sd") {
        EllNormalization norm;
        if (o.ell == "intersection") norm = EllNormalization::Intersection;
        else if (o.ell == "raw") norm = EllNormalization::MixedIntegral;
        else throw PreconditionError("BadOption", "--ell must be intersection or raw");
        SdRing r = ring_via_sd(b, norm);
        ring = io::ring_json(r.sd.algebra, r.sd.ell);
        ring["normalization"] = o.ell;
        total = r.sd.algebra.total_dim();
        ring_lines(out, "sd (" + o.ell + ")", r.sd.algebra, r.sd.ell);
    } else if (o.builder == "diff") {
        DiffRing r = ring_via_diff(b);
        ring = io::ring_json(r.ann.algebra, r.ann.ell);
        ring["volume_polynomial"] = r.ann.f.to_string(r.ann.names);
        ring["variables"] = r.ann.names;
        Json comp = Json::array();
        for (const auto& g : r.complement) comp.push_back(io::element_json(b.base(), g));
        ring["complement"] = comp;
        total = r.ann.algebra.total_dim();
        ring_lines(out, "diff", r.ann.algebra, r.ann.ell);
        out.lines.push_back("volume polynomial: " + r.ann.f.to_string(r.ann.names));
    } else {
        throw PreconditionError("BadOption", "--builder must be sd, sr or diff");
    }
    const std::size_t expected = b.base().total_dim() * b.spec().fan.max_cones.size();
    ring["total_dim"] = total;
    ring["leray_hirsch_total"] = expected;
    report["ring"] = ring;
    out.lines.push_back("total dim " + std::to_string(total) + ", Leray-Hirsch total " + std::to_string(expected));
    return out;
}

// ---------------------------------------------------------------------------
// verify suites

inline std::vector<Polynomial> test_integrands(std::size_t n) {
    std::vector<Polynomial> fs{Polynomial::constant(n, 1), Polynomial::variable(n, 0)};
    if (n >= 2) fs.push_back(Polynomial::variable(n, 0) * Polynomial::variable(n, 1));
    return fs;
}

inline std::string poly_text(const Polynomial& f) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < f.nvars(); ++i) names.push_back("x" + std::to_string(i + 1));
    return f.to_string(names);
}

inline void suite_bkk(const Resolved& in, std::mt19937_64& rng, Checks& ch) {
    ToricBundle b(need_spec(in));
    MixedIntegrator& mi = b.integrator();
    const GradedAlgebra& base = b.base();
    const int k = b.base_degree();
    const std::size_t n = b.rank();
    for (int i = 0; 2 * i <= k; ++i)
        for (std::size_t g = 0; g < base.dim(k - 2 * i); ++g)
            for (int t = 0; t < 10; ++t) {
                QVector h = t % 2 == 0 ? draw_convex(mi, rng) : draw_vector(rng, b.num_rays(), -3, 3);
                Json p;
                p["gamma"] = base.labels(k - 2 * i)[g];
                p["i"] = i;
                p["h"] = qvec_param(h);
                ch.identity("bkk", p, verify_bkk(b, base.basis_element(k - 2 * i, g), i, h));
            }
    if (k == 0) {
        const auto& sr = b.sr();
        for (int t = 0; t < 20; ++t) {
            QVector h = draw_convex(mi, rng);
            Json p;
            p["h"] = qvec_param(h);
            IdentityCheck c{factorial(static_cast<unsigned>(n)) * volume(polytope_from_support(b.spec().fan, h)),
                            sr.top(sr.algebra.power(sr.rho(h), static_cast<unsigned>(n)))};
            ch.identity("classical", p, c);
        }
    } else if (base.dim(2) > 0) {
        for (int t = 0; t < 10; ++t) {
            QVector h0 = draw_convex(mi, rng);
            Element gamma{2, draw_vector(rng, base.dim(2), -2, 2)};
            Json p;
            p["h0"] = qvec_param(h0);
            p["gamma"] = base.format(gamma);
            ch.identity("self_intersection", p, self_intersection(b, h0, gamma));
        }
    }
}

inline void suite_cross(const Resolved& in, Checks& ch) {
    ToricBundle b(need_spec(in));
    CrossValidation cv = cross_validate(b);
    Json none = Json::object();
    ch.boolean("dims", none, cv.dims_sd == cv.dims_sr, "sd " + dims_text(cv.dims_sd) + " sr " + dims_text(cv.dims_sr));
    ch.boolean("structure_constants", none, cv.iso.isomorphic, cv.iso.reason);
    ch.boolean("top_functional", none, cv.top_equal, "");
    ch.boolean("sd_poincare", none, cv.sd_poincare, "");
    ch.boolean("sr_poincare", none, cv.sr_poincare, "");
    const std::size_t total = b.sr().algebra.total_dim();
    const std::size_t expected = b.base().total_dim() * b.spec().fan.max_cones.size();
    ch.boolean("leray_hirsch", none, total == expected, std::to_string(total) + " vs " + std::to_string(expected));
    if (generated_in_degree_two(b.base())) {
        DiffRing d = ring_via_diff(b);
        IsoResult iso = diff_matches_sr(b, d);
        ch.boolean("diff_vs_sr", none, iso.isomorphic, iso.reason);
    }
}

inline void suite_ider(const Resolved& in, std::mt19937_64& rng, Checks& ch) {
    const Fan& fan = need_fan(in);
    require_complete_smooth(fan);
    MixedIntegrator mi(fan);
    const auto subsets = detail::subsets_of_size(fan.num_rays(), fan.dim);
    for (const auto& f : test_integrands(fan.dim)) {
        QVector h = draw_convex(mi, rng);
        for (const auto& idx : subsets) {
            Json p;
            p["f"] = poly_text(f);
            p["I"] = idx;
            p["h"] = qvec_param(h);
            ch.identity("ider", p, square_free_derivative_check(mi, f, h, idx));
        }
    }
    if (!in.spec) return;
    ToricBundle b(*in.spec);
    const GradedAlgebra& base = b.base();
    const int k = b.base_degree();
    for (int i = 0; 2 * i <= k; ++i)
        for (std::size_t g = 0; g < base.dim(k - 2 * i); ++g) {
            QVector h = draw_convex(b.integrator(), rng);
            for (const auto& idx : subsets) {
                Json p;
                p["gamma"] = base.labels(k - 2 * i)[g];
                p["i"] = i;
                p["I"] = idx;
                p["h"] = qvec_param(h);
                ch.identity("fder", p, fgamma_derivative_check(b, base.basis_element(k - 2 * i, g), i, h, idx));
            }
        }
}

inline void suite_cc(const Resolved& in, std::mt19937_64& rng, Checks& ch) {
    const Fan& fan = need_fan(in);
    require_complete_smooth(fan);
    MixedIntegrator mi(fan);
    const auto subsets = detail::subsets_of_size(fan.num_rays(), fan.dim);
    for (const auto& f : test_integrands(fan.dim)) {
        QVector h = draw_convex(mi, rng);
        for (int t = 0; t < 5; ++t) {
            QVector lambda(fan.dim);
            for (auto& x : lambda) {
                long long v = draw(rng, -3, 2);
                x = v >= 0 ? v + 1 : v;
            }
            // scale h until every shifted polytope stays convex
            std::vector<IdentityCheck> results;
            QVector hs = h;
            for (int attempt = 0; results.size() < subsets.size(); ++attempt) {
                try {
                    results.clear();
                    for (const auto& idx : subsets) results.push_back(convex_chain_identity_check(mi, f, hs, idx, lambda));
                } catch (const PreconditionError& e) {
                    if (e.kind() != "NotConvex" || attempt == 16) throw;
                    results.clear();
                    hs = Rat(2) * hs;
                }
            }
            for (std::size_t k = 0; k < subsets.size(); ++k) {
                Json p;
                p["f"] = poly_text(f);
                p["I"] = subsets[k];
                p["h"] = qvec_param(hs);
                p["lambda"] = qvec_param(lambda);
                ch.identity("convex_chain", p, results[k]);
            }
        }
    }
}

// n if the base is the catalog flag base of SL_n.
inline std::optional<int> flag_rank(const BaseData& base) {
    for (int n = 2; n <= 4; ++n) {
        if (base.algebra.total_dim() != factorial(static_cast<unsigned>(n))) continue;
        BaseData f = base_flag_sl(n);
        if (base.algebra == f.algebra && base.orientation.values == f.orientation.values) return n;
    }
    return std::nullopt;
}

inline int need_flag(const Resolved& in) {
    auto n = flag_rank(need_base(in));
    if (!n) throw PreconditionError("NotFlagBase", "this suite needs a flag base flag_sl2..flag_sl4");
    return *n;
}

struct LatticeFan {
    std::vector<IVector> lattice;
    Fan fan;
    std::string fan_name;
};

inline std::vector<LatticeFan> default_bk_pairs(int n) {
    if (n == 2) return {{{{1}}, fan_p1(), "p1"}, {{{2}}, fan_p1(), "p1"}};
    if (n == 3)
        return {{{{1, 0}, {0, 1}}, fan_p1xp1(), "p1xp1"},
                {{{1, 0}, {0, 1}}, fan_p2(), "p2"},
                {{{1, 0}, {0, 1}}, fan_f1(), "f1"},
                {{{2, 0}, {0, 1}}, fan_p2(), "p2"},
                {{{1, 1}, {0, 1}}, fan_p1xp1(), "p1xp1"}};
    return {{{{1}, {0}, {0}}, fan_p1(), "p1"}, {{{1}, {1}, {1}}, fan_p1(), "p1"}};
}

inline void suite_bk(const Resolved& in, std::mt19937_64& rng, Checks& ch) {
    const int n = need_flag(in);
    std::vector<LatticeFan> pairs;
    if (in.spec) {
        const BundleSpec& s = *in.spec;
        std::vector<IVector> lattice(static_cast<std::size_t>(n - 1), IVector(s.fan.dim));
        for (std::size_t m = 0; m < s.fan.dim; ++m)
            for (std::size_t i = 0; i + 1 < static_cast<std::size_t>(n); ++i) {
                const Rat& c = s.chern[m].coeffs.at(s.base.algebra.find_label("w" + std::to_string(i + 1))->second);
                if (!is_integer(c)) throw PreconditionError("NotIntegral", "chern classes must be integral weights");
                lattice[i][m] = numerator_of(c).convert_to<long long>();
            }
        pairs.push_back({lattice, s.fan, s.name});
    } else {
        pairs = default_bk_pairs(n);
    }
    for (std::size_t t = 0; t < 5; ++t) {
        const LatticeFan& lf = pairs[t % pairs.size()];
        MixedIntegrator mi(lf.fan);
        QVector h0 = t % 2 == 0 ? draw_convex(mi, rng) : draw_vector(rng, lf.fan.num_rays(), -2, 2);
        QVector gamma = draw_vector(rng, static_cast<std::size_t>(n - 1), -1, 2);
        Json p;
        p["n"] = n;
        p["lattice"] = lf.lattice;
        p["fan"] = lf.fan_name;
        p["h0"] = qvec_param(h0);
        p["gamma"] = qvec_param(gamma);
        ch.identity("brion_kazarnovskii", p, brion_kazarnovskii_check(n, lf.lattice, lf.fan, h0, gamma));
    }
}

inline void suite_gz(const Resolved& in, std::mt19937_64& rng, Checks& ch) {
    const int n = need_flag(in);
    const BaseData flag = base_flag_sl(n);
    const int big_n = gz_pattern_dim(n);
    const Polynomial fw = weyl_top_polynomial_sl(n);
    const std::size_t r = static_cast<std::size_t>(n - 1);
    for (int t = 0; t < 10; ++t) {
        QVector a = draw_vector(rng, r, -2, 4);
        Element c = flag.algebra.power(flag_weight_class(flag, a), static_cast<unsigned>(big_n));
        Json p;
        p["lambda"] = qvec_param(a);
        ch.identity("degree", p, {flag.orientation(c), factorial(static_cast<unsigned>(big_n)) * fw.evaluate(a)});
    }
    const long long hi = n == 4 ? 2 : 3;
    for (int t = 0; t < 10; ++t) {
        QVector a = draw_vector(rng, r, 0, hi);
        Json p;
        p["lambda"] = qvec_param(a);
        ch.identity("gz_volume", p, gz_volume_check(n, a));
        ch.identity("gz_lattice_points", p,
                    {Rat(static_cast<long long>(count_lattice_points(gz_polytope(n, a)))), weyl_dimension_sl(n, a)});
    }
    if (n > 3) return;
    for (int t = 0; t < 2; ++t) {
        QVector lo = draw_vector(rng, r, 1, 3);
        std::vector<QVector> pts;
        for (std::size_t mask = 0; mask < (std::size_t{1} << r); ++mask) {
            QVector v = lo;
            for (std::size_t i = 0; i < r; ++i)
                if (mask >> i & 1) v[i] += 1;
            pts.push_back(v);
        }
        Json p;
        p["box_corner"] = qvec_param(lo);
        ch.identity("string_lift", p, string_lift_volume(n, Polytope::from_points(r, pts)));
    }
}

inline void suite_pbundle(const Resolved& in, std::mt19937_64& rng, Checks& ch) {
    const BaseData& base = need_base(in);
    std::vector<std::vector<long long>> sets{{0}, {1}, {1, 2}};
    for (int t = 0; t < 2; ++t) {
        std::vector<long long> d(static_cast<std::size_t>(draw(rng, 1, 2)));
        for (auto& x : d) x = draw(rng, -2, 2);
        sets.push_back(d);
    }
    for (const auto& d : sets) {
        ProjectiveBundleResult res = projective_bundle_check(base, d);
        Json p;
        p["degrees"] = d;
        ch.boolean("projective_bundle", p, res.ok(),
                   res.relation + (res.leray_hirsch ? "" : ", Leray-Hirsch dimension mismatch"));
    }
}

inline Outcome verify(const Options& o, Json& report) {
    static const std::map<std::string, std::function<void(const Resolved&, std::mt19937_64&, Checks&)>> suites{
        {"bkk", suite_bkk},
        {"cross", [](const Resolved& in, std::mt19937_64&, Checks& ch) { suite_cross(in, ch); }},
        {"ider", suite_ider},
        {"cc", suite_cc},
        {"bk", suite_bk},
        {"gz", suite_gz},
        {"pbundle", suite_pbundle}};
    auto it = suites.find(o.suite);
    if (it == suites.end()) throw PreconditionError("BadOption", "unknown suite " + o.suite);
    Resolved in = resolve_input(o.input);
    std::mt19937_64 rng(o.seed);
    Checks ch;
    it->second(in, rng, ch);
    Outcome out;
    report["suite"] = o.suite;
    report["checks"] = ch.rows();
    Json summary;
    summary["total"] = ch.total();
    summary["passed"] = ch.passed();
    summary["failed"] = ch.total() - ch.passed();
    report["summary"] = summary;
    out.lines = ch.lines();
    out.lines.push_back("suite " + o.suite + ": " + std::to_string(ch.passed()) + "/" + std::to_string(ch.total()) +
                        " passed (seed " + std::to_string(o.seed) + ")");
    if (ch.passed() != ch.total()) out.exit_code = IdentityFailed;
    return out;
}

// ---------------------------------------------------------------------------
// intersect

struct ParsedMonomial {
    Rat coefficient = 1;
    Element base_part;
    Exponent x;
};

// factor ('*' factor)*, factor = rational | name ('^' int)?. Names x1..xs are
// the ray classes; anything else is a base basis label.
inline ParsedMonomial parse_monomial(const std::string& text, const GradedAlgebra& base, std::size_t nrays) {
    ParsedMonomial m{1, base.unit(), Exponent(nrays, 0)};
    std::string s;
    for (char c : text)
        if (!std::isspace(static_cast<unsigned char>(c))) s += c;
    if (s.empty()) throw PreconditionError("BadExpression", "empty expression");
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t end = s.find('*', pos);
        if (end == std::string::npos) end = s.size();
        std::string factor = s.substr(pos, end - pos);
        if (factor.empty()) throw PreconditionError("BadExpression", "empty factor in " + text);
        unsigned power = 1;
        if (auto caret = factor.find('^'); caret != std::string::npos) {
            const std::string e = factor.substr(caret + 1);
            if (e.empty() || e.find_first_not_of("0123456789") != std::string::npos)
                throw PreconditionError("BadExpression", "bad exponent in " + factor);
            power = static_cast<unsigned>(std::stoul(e));
            factor = factor.substr(0, caret);
        }
        if (factor.find_first_not_of("0123456789/-") == std::string::npos) {
            Rat c;
            try {
                c = Rat(factor);
            } catch (const std::exception&) {
                throw PreconditionError("BadExpression", "bad coefficient " + factor);
            }
            for (unsigned k = 0; k < power; ++k) m.coefficient *= c;
        } else if (factor.size() > 1 && factor[0] == 'x' &&
                   factor.find_first_not_of("0123456789", 1) == std::string::npos) {
            const std::size_t v = std::stoul(factor.substr(1));
            if (v < 1 || v > nrays) throw PreconditionError("BadExpression", factor + " is not a ray variable");
            m.x[v - 1] += static_cast<int>(power);
        } else {
            auto loc = base.find_label(factor);
            if (!loc) throw PreconditionError("BadExpression", "unknown symbol " + factor);
            m.base_part = base.multiply(m.base_part, base.power(base.basis_element(loc->first, loc->second), power));
            if (m.base_part.degree > base.top_degree()) m.base_part = {m.base_part.degree, {}};
        }
        pos = end + 1;
    }
    return m;
}

inline Outcome intersect(const Options& o, Json& report) {
    Resolved in = resolve_input(o.input);
    ToricBundle b(need_spec(in));
    ParsedMonomial m = parse_monomial(o.expr, b.base(), b.num_rays());
    const int degree = m.base_part.degree + 2 * total_degree(m.x);
    if (degree < b.top_degree())
        throw PreconditionError("NotTopDegree", "expression has degree " + std::to_string(degree) + ", top degree is " +
                                                    std::to_string(b.top_degree()));
    Rat ring_value = 0;
    ReductionResult red{0, {}};
    if (degree > b.top_degree()) {
        red = reduce_square_free(b, m.base_part, m.x);
        red.value *= m.coefficient;
    } else if (!m.base_part.is_zero()) {
        RPoly p = RPoly::from_element(&b.base(), b.num_rays(), m.base_part);
        for (std::size_t v = 0; v < m.x.size(); ++v)
            for (int k = 0; k < m.x[v]; ++k) p = p * RPoly::variable(&b.base(), b.num_rays(), v);
        ring_value = m.coefficient * b.sr().top(b.class_of(p, degree));
        red = reduce_square_free(b, m.base_part, m.x);
        red.value *= m.coefficient;
    }
    Outcome out;
    report["expression"] = o.expr;
    report["value"] = io::rat_json(ring_value);
    report["reduction_value"] = io::rat_json(red.value);
    report["agree"] = ring_value == red.value;
    report["above_top_degree"] = degree > b.top_degree();
    if (o.verbosity >= 1) report["trace"] = red.trace;
    out.lines.push_back(o.expr + " = " + rat_text(ring_value));
    if (o.verbosity >= 1)
        for (const auto& t : red.trace) out.lines.push_back("  " + t);
    if (ring_value != red.value) {
        out.lines.push_back("reduction disagrees: " + rat_text(red.value));
        out.exit_code = IdentityFailed;
    }
    return out;
}

// ---------------------------------------------------------------------------

inline Outcome run(const Options& o) {
    Json report;
    report["tool"] = "toric";
    report["version"] = kVersion;
    report["command"] = o.command;
    report["input"] = o.input;
    report["seed"] = o.seed;
    Outcome out;
    auto fail = [&](int code, const char* cls, const std::string& kind, const std::string& what) {
        out = Outcome{};
        out.exit_code = code;
        Json e;
        e["class"] = cls;
        e["kind"] = kind;
        e["message"] = what;
        report["error"] = e;
        out.lines.push_back(std::string("error (") + cls + "): " + what);
    };
    try {
        if (o.command == "fan-check") out = fan_check(o, report);
        else if (o.command == "ring") out = ring(o, report);
        else if (o.command == "verify") out = verify(o, report);
        else if (o.command == "intersect") out = intersect(o, report);
        else throw PreconditionError("BadOption", "unknown command " + o.command);
    } catch (const GeometryError& e) {
        fail(InvalidGeometry, "geometry", e.kind(), e.what());
    } catch (const PreconditionError& e) {
        fail(PreconditionFailed, "precondition", e.kind(), e.what());
    } catch (const IdentityFailure& e) {
        fail(IdentityFailed, "identity", e.kind(), e.what());
    } catch (const Json::exception& e) {
        fail(PreconditionFailed, "precondition", "BadJson", e.what());
    }
    report["status"] = out.exit_code == Ok ? "pass" : out.exit_code == IdentityFailed ? "fail" : "error";
    report["exit_code"] = out.exit_code;
    out.report = std::move(report);
    return out;
}

}  // namespace toric::cli
