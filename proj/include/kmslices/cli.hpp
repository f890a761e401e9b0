#pragma once

// Command-line layer: job parsing, the classify / fmo / hilbert / verify
// commands as JSON reports, and the exit-code contract
// (0 pass, 1 check failed, 2 bad input, 3 internal error).

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "kmslices.hpp"

namespace kms::cli
{

using Json = nlohmann::ordered_json;

enum ExitCode : int { exit_pass = 0, exit_check_failed = 1, exit_input = 2, exit_internal = 3 };

struct JobSpec {
    std::string quiver_file;
    std::string w;
    std::string v;
    std::optional<std::string> vprime;
    std::optional<std::string> m;
    std::optional<std::string> f;
    std::optional<std::size_t> order;
    std::optional<std::string> sign;
    std::string verify_kind;
    bool json = false;
};

struct Report {
    int exit_code = exit_pass;
    Json body;
};

// ---------------------------------------------------------------------------
// Input

/// {"vertices": [names], "edges": [{"source": name, "target": name}, ...]}
inline Quiver quiver_from_json(const Json &j)
{
    if (!j.is_object() || !j.contains("vertices") || !j["vertices"].is_array()) {
        throw input_error("quiver JSON needs a \"vertices\" array");
    }
    std::vector<std::string> names;
    for (const auto &x : j["vertices"]) {
        if (!x.is_string()) {
            throw input_error("vertex names must be strings");
        }
        names.push_back(x.get<std::string>());
    }
    Quiver bare(names, {});
    std::vector<Edge> edges;
    if (j.contains("edges")) {
        if (!j["edges"].is_array()) {
            throw input_error("\"edges\" must be an array");
        }
        for (const auto &e : j["edges"]) {
            if (!e.is_object() || !e.contains("source") || !e.contains("target") || !e["source"].is_string()
                || !e["target"].is_string()) {
                throw input_error("each edge needs string \"source\" and \"target\" fields");
            }
            edges.push_back({bare.index_of(e["source"].get<std::string>()), bare.index_of(e["target"].get<std::string>())});
        }
    }
    return {std::move(names), std::move(edges)};
}

inline Quiver load_quiver(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open quiver file '" + path + "'");
    }
    Json j;
    try {
        j = Json::parse(in);
    } catch (const Json::parse_error &e) {
        throw input_error("quiver file '" + path + "' is not valid JSON: " + e.what());
    }
    return quiver_from_json(j);
}

inline IntVector parse_csv(const std::string &text, const std::string &what)
{
    IntVector out;
    if (text.empty()) {
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            const long long x = std::stoll(item, &used);
            if (used != item.size()) {
                throw std::invalid_argument(item);
            }
            out.push_back(x);
        } catch (const std::logic_error &) {
            throw input_error(what + ": '" + item + "' is not an integer");
        }
    }
    return out;
}

inline Json to_json(const IntVector &x)
{
    Json a = Json::array();
    for (auto e : x) {
        a.push_back(e);
    }
    return a;
}

inline Json ratfunc_json(const RatFunc &r)
{
    return Json{{"value", r.to_string()}, {"numerator", r.num_string()}, {"denominator", r.den_string()}};
}

struct Loaded {
    Quiver quiver;
    GKLOContext ctx;
};

inline Loaded load_context(const JobSpec &spec)
{
    Quiver q = load_quiver(spec.quiver_file);
    const IntVector w = parse_csv(spec.w, "--w");
    const IntVector v = parse_csv(spec.v, "--v");
    if (w.size() != q.size() || v.size() != q.size()) {
        throw input_error("--w and --v need one entry per vertex (" + std::to_string(q.size()) + ")");
    }
    return {q, GKLOContext(q, DimData(w, v))};
}

inline std::vector<Sign> requested_signs(const JobSpec &spec)
{
    if (!spec.sign) {
        return {Sign::plus, Sign::minus};
    }
    if (*spec.sign == "+") {
        return {Sign::plus};
    }
    if (*spec.sign == "-") {
        return {Sign::minus};
    }
    throw input_error("--sign must be + or -");
}

/// (m, f) pairs: the given ones, or every 0 <= m <= v with the degree <= 2 basis.
inline std::vector<std::pair<IntVector, PartialSymPoly>> requested_dressings(const JobSpec &spec, const GKLOContext &ctx)
{
    const auto &v = ctx.dims().v;
    std::vector<std::pair<IntVector, PartialSymPoly>> out;
    if (spec.m) {
        const IntVector m = parse_csv(*spec.m, "--m");
        if (m.size() != v.size()) {
            throw input_error("--m needs one entry per vertex");
        }
        detail::check_range(m, v);
        try {
            out.emplace_back(m, PartialSymPoly(parse_mpoly(spec.f.value_or("1")), m, v));
        } catch (const domain_error &e) {
            throw input_error(e.what());
        }
        return out;
    }
    if (spec.f) {
        throw input_error("--f requires --m");
    }
    for (const auto &m : box_vectors(v)) {
        for (auto &f : dressing_basis(m, v)) {
            out.emplace_back(m, std::move(f));
        }
    }
    return out;
}

inline DefectSplit requested_split(const JobSpec &spec, const GKLOContext &ctx)
{
    if (!spec.vprime) {
        throw input_error("this command needs --vprime");
    }
    const IntVector vp = parse_csv(*spec.vprime, "--vprime");
    if (vp.size() != ctx.size()) {
        throw input_error("--vprime needs one entry per vertex");
    }
    return {ctx.dims().v, vp};
}

// ---------------------------------------------------------------------------
// Commands

inline Report cmd_classify(const JobSpec &spec)
{
    const auto [q, ctx] = load_context(spec);
    const auto &d = ctx.dims();
    const auto &c = ctx.cartan();
    const ConeCheck cone = check_conicity(d, c);
    const ConeCheck good = check_good(d, c);
    const AffineData type = affine_classify(c);
    const ConePrediction prediction = predict_by_level(d, c, type);

    Report r;
    r.body["quiver"] = spec.quiver_file;
    r.body["w"] = to_json(d.w);
    r.body["v"] = to_json(d.v);
    r.body["conical"] = cone.holds;
    r.body["good"] = good.holds;
    r.body["min_value"] = cone.min_value ? Json(*cone.min_value) : Json(nullptr);
    r.body["minimizer"] = cone.minimizer ? to_json(*cone.minimizer) : Json(nullptr);
    r.body["conicity_witness"] = cone.witness() ? to_json(*cone.witness()) : Json(nullptr);
    r.body["goodness_witness"] = good.witness() ? to_json(*good.witness()) : Json(nullptr);
    r.body["cartan_type"] = to_string(type.kind);
    r.body["mu_dominant"] = mu_pairing(d, c).mu_dominant;
    if (type.kind == CartanKind::affine) {
        r.body["marks"] = to_json(type.marks);
        r.body["level"] = type.level(d, c);
    } else {
        r.body["marks"] = nullptr;
        r.body["level"] = nullptr;
    }
    r.body["theorem_prediction"] = to_string(prediction);
    bool agrees = true;
    switch (prediction) {
    case ConePrediction::good:
        agrees = good.holds;
        break;
    case ConePrediction::conical_not_good:
        agrees = cone.holds && !good.holds;
        break;
    case ConePrediction::not_conical:
        agrees = !cone.holds;
        break;
    case ConePrediction::not_applicable:
        break;
    }
    r.body["prediction_agrees"] = agrees;
    if (!agrees) {
        r.exit_code = exit_internal;
    }
    return r;
}

inline Report cmd_fmo(const JobSpec &spec)
{
    const auto [q, ctx] = load_context(spec);
    if (!spec.m) {
        throw input_error("fmo needs --m");
    }
    const auto dressings = requested_dressings(spec, ctx);
    const auto &[m, f] = dressings.front();
    const auto signs = requested_signs(spec);
    Report r;
    r.body["w"] = to_json(ctx.dims().w);
    r.body["v"] = to_json(ctx.dims().v);
    r.body["m"] = to_json(m);
    r.body["dressing"] = f.value().to_string();
    Json results = Json::array();
    for (auto s : signs) {
        const RatFunc value = fmo(ctx, m, f, s);
        Json item{{"sign", to_string(s)}};
        item.update(ratfunc_json(value));
        item["degree"] = f.value().is_zero() ? Json(nullptr) : Json(fmo_degree(ctx, m, f.value().total_degree()));
        results.push_back(std::move(item));
    }
    r.body["results"] = std::move(results);
    return r;
}

inline Report cmd_hilbert(const JobSpec &spec)
{
    const auto [q, ctx] = load_context(spec);
    const std::size_t order = spec.order.value_or(10);
    const TheoryClass cls = classify_theory(ctx);
    Report r;
    r.body["order"] = order;
    if (cls.kind == TheoryKind::bad) {
        r.body["coeffs"] = nullptr;
    } else {
        const TruncSeries h = hilbert_series(ctx, order);
        r.body["coeffs"] = h.coeffs();
    }
    r.body["classification"] = to_string(cls.kind);
    r.body["min_degree"] = cls.min_degree ? Json(*cls.min_degree) : Json(nullptr);
    r.body["witness"] = cls.witness ? to_json(*cls.witness) : Json(nullptr);
    if (cls.kind == TheoryKind::bad) {
        r.body["error"] = "the monopole formula diverges for a bad theory";
        r.exit_code = exit_input;
    }
    return r;
}

namespace detail
{

struct CheckList {
    Json items = Json::array();
    bool all = true;

    void add(Json label, bool holds, const RatFunc &lhs, const RatFunc &rhs)
    {
        label["holds"] = holds;
        label["lhs"] = lhs.to_string();
        label["rhs"] = rhs.to_string();
        all = all && holds;
        items.push_back(std::move(label));
    }
};

inline Json case_label(const IntVector &m, const PartialSymPoly &f)
{
    return Json{{"m", to_json(m)}, {"f", f.value().to_string()}};
}

} // namespace detail

inline Report cmd_verify(const JobSpec &spec)
{
    const auto [q, ctx] = load_context(spec);
    const std::string &kind = spec.verify_kind;
    detail::CheckList checks;
    Report r;
    r.body["check"] = kind;
    r.body["w"] = to_json(ctx.dims().w);
    r.body["v"] = to_json(ctx.dims().v);

    if (kind == "restriction" || kind == "adding-defect" || kind == "km-embedding") {
        const DefectSplit split = requested_split(spec, ctx);
        r.body["vprime"] = to_json(split.vprime);
        FmoCache cache;
        for (const auto &[m, f] : requested_dressings(spec, ctx)) {
            if (kind == "adding-defect") {
                const auto res = verify_adding_defect(ctx, split, m, f, &cache);
                checks.add(detail::case_label(m, f), res.holds, res.lhs, res.rhs);
                continue;
            }
            for (auto s : requested_signs(spec)) {
                auto label = detail::case_label(m, f);
                label["sign"] = to_string(s);
                if (kind == "restriction") {
                    const auto res = verify_slice_restriction(ctx, split, m, f, s, &cache);
                    checks.add(std::move(label), res.holds, res.lhs, res.rhs);
                } else {
                    const auto rep = compose_embedding(ctx, split, m, f, s, true, &cache);
                    label["fourier_exponents"] = {rep.fourier_first_exponent, rep.fourier_second_exponent};
                    label["fourier_expected"] = {rep.fourier_first_expected, rep.fourier_second_expected};
                    label["signs_match"] = rep.signs_match;
                    label["localization_ok"] = rep.denominators_ok;
                    label["levi_oracle_ok"] = rep.levi_oracle_ok;
                    Json stages = Json::array();
                    for (const auto &st : rep.stages) {
                        Json terms = Json::array();
                        for (const auto &t : st.terms) {
                            terms.push_back({{"gamma", coweight_string(t.gamma)}, {"dressing", t.dressing.to_string()}});
                        }
                        stages.push_back({{"stage", to_string(st.stage)}, {"terms", std::move(terms)}});
                    }
                    label["stages"] = std::move(stages);
                    checks.add(std::move(label), rep.holds(), rep.result, rep.expected);
                }
            }
        }
    } else if (kind == "involution") {
        for (const auto &[m, f] : requested_dressings(spec, ctx)) {
            const RatFunc plus = fmo_plus(ctx, m, f);
            const RatFunc minus = fmo_minus(ctx, m, f);
            const RatFunc image = chevalley(ctx, plus);
            auto a = detail::case_label(m, f);
            a["identity"] = "iota(M+) = M-";
            checks.add(std::move(a), image == minus, image, minus);
            const RatFunc back = chevalley(ctx, image);
            auto b = detail::case_label(m, f);
            b["identity"] = "iota(iota(M+)) = M+";
            checks.add(std::move(b), back == plus, back, plus);
        }
    } else if (kind == "d-identity") {
        for (std::size_t i = 0; i < ctx.size(); ++i) {
            const auto res = d_identity_check(ctx, i);
            checks.add(Json{{"vertex", i}, {"quotient", res.d.to_string()}}, res.holds, res.remainder, RatFunc());
        }
    } else if (kind == "orientation") {
        for (const auto &[m, f] : requested_dressings(spec, ctx)) {
            for (std::size_t a = 0; a < ctx.edges().size(); ++a) {
                const auto res = verify_orientation(ctx, a, m, f);
                auto label = detail::case_label(m, f);
                label["edge"] = a;
                label["sign"] = res.predicted_sign;
                checks.add(std::move(label), res.holds, res.transported, res.flipped);
            }
        }
    } else {
        throw input_error("unknown verify check '" + kind + "'");
    }
    r.body["passed"] = checks.all;
    r.body["cases"] = std::move(checks.items);
    r.exit_code = checks.all ? exit_pass : exit_check_failed;
    return r;
}

// ---------------------------------------------------------------------------
// Entry point

inline void print_report(const Report &r, bool json, std::ostream &out)
{
    if (json) {
        out << r.body.dump(2) << "\n";
        return;
    }
    for (const auto &[key, value] : r.body.items()) {
        out << key << ": " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
    }
}

inline int run(int argc, const char *const *argv, std::ostream &out, std::ostream &err)
{
    CLI::App app{"Fundamental monopole operators, slice restrictions and monopole-formula Hilbert series"};
    app.require_subcommand(1);
    JobSpec spec;

    auto add_common = [&spec](CLI::App *sub) {
        sub->add_option("--quiver", spec.quiver_file, "quiver JSON file")->required();
        sub->add_option("--w", spec.w, "framing dimensions, comma separated")->required();
        sub->add_option("--v", spec.v, "gauge dimensions, comma separated")->required();
        sub->add_flag("--json", spec.json, "emit JSON");
    };
    auto add_dressing = [&spec](CLI::App *sub) {
        sub->add_option("--m", spec.m, "FMO index m, comma separated");
        sub->add_option("--f", spec.f, "dressing polynomial in w[i,r] and z");
        sub->add_option("--sign", spec.sign, "+ or - (default: both)");
    };

    auto *classify = app.add_subcommand("classify", "conicity and goodness of (w, v)");
    add_common(classify);
    auto *fmo_cmd = app.add_subcommand("fmo", "GKLO image of a fundamental monopole operator");
    add_common(fmo_cmd);
    add_dressing(fmo_cmd);
    auto *hilbert = app.add_subcommand("hilbert", "truncated monopole-formula Hilbert series");
    add_common(hilbert);
    hilbert->add_option("--order", spec.order, "truncation order in t");
    auto *verify = app.add_subcommand("verify", "check an identity on one slice");
    verify->add_option("check", spec.verify_kind, "restriction | adding-defect | involution | d-identity | km-embedding | orientation")
        ->required()
        ->check(CLI::IsMember({"restriction", "adding-defect", "involution", "d-identity", "km-embedding", "orientation"}));
    add_common(verify);
    add_dressing(verify);
    verify->add_option("--vprime", spec.vprime, "v' for the restriction checks, comma separated");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError &e) {
        app.exit(e, out, err);
        return exit_input;
    }

    try {
        Report r;
        if (classify->parsed()) {
            r = cmd_classify(spec);
        } else if (fmo_cmd->parsed()) {
            r = cmd_fmo(spec);
        } else if (hilbert->parsed()) {
            r = cmd_hilbert(spec);
        } else {
            r = cmd_verify(spec);
        }
        print_report(r, spec.json, out);
        return r.exit_code;
    } catch (const input_error &e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const domain_error &e) {
        err << "input error: " << e.what() << "\n";
        return exit_input;
    } catch (const std::exception &e) {
        err << "internal error: " << e.what() << "\n";
        return exit_internal;
    }
}

} // namespace kms::cli
