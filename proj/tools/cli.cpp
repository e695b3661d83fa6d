#include "cli.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>

#include "rg/applications.hpp"
#include "rg/darboux.hpp"
#include "rg/errors.hpp"
#include "rg/exprparse.hpp"
#include "rg/kovacic.hpp"
#include "rg/specialfn.hpp"

namespace rgcli {

using json = nlohmann::ordered_json;
using namespace rg;

namespace {

std::string S(const Scalar& s) { return print_canonical(s); }
std::string S(const RatFunc& r) { return print_canonical(r); }

/// Builder for the report document.
struct Report {
    json doc;

    explicit Report(const std::string& command) {
        doc["schema"] = kSchema;
        doc["command"] = command;
        doc["input"] = json::object();
        doc["trace"] = json::array();
        doc["verdict"] = json::object();
        doc["artifacts"] = json::object();
    }
    void step(const std::string& stage, const std::string& detail) {
        doc["trace"].push_back({{"stage", stage}, {"detail", detail}});
    }
    void steps(const std::string& stage, const std::vector<std::string>& lines) {
        for (const auto& l : lines) step(stage, l);
    }
    json& input() { return doc["input"]; }
    json& verdict() { return doc["verdict"]; }
    json& artifacts() { return doc["artifacts"]; }
};

std::string status_of(Verdict v) {
    switch (v) {
        case Verdict::Integrable:
            return "integrable";
        case Verdict::NotIntegrable:
            return "not-integrable";
        case Verdict::Inconclusive:
            return "inconclusive";
    }
    return "inconclusive";
}

void put_verdict(json& out, const CriterionVerdict& v) {
    out["status"] = status_of(v.verdict);
    out["criterion"] = v.criterion;
    if (!v.condition.empty()) out["condition"] = v.condition;
    if (!v.detail.empty()) out["detail"] = v.detail;
}

void require(bool ok, const std::string& what) {
    if (!ok) throw VerificationFailure(what);
}

/// Parameter values: dedicated options first, then --param bindings.
struct Values {
    Bindings params;
    std::map<std::string, std::string> opts;

    std::optional<Scalar> find(const std::string& name) const {
        auto it = opts.find(name);
        if (it != opts.end() && !it->second.empty()) return parse_scalar(it->second, params);
        auto p = params.find(name);
        if (p != params.end()) return p->second;
        return std::nullopt;
    }
    Scalar get(const std::string& name) const {
        if (auto v = find(name)) return *v;
        throw InvalidArgument("missing parameter '" + name + "' (use --" + name + " or --param " + name + "=...)");
    }
    Scalar get_or(const std::string& name, const Scalar& dflt) const { return find(name).value_or(dflt); }
};

std::string read_source(const std::string& text, std::istream& in) {
    if (text != "-") return text;
    std::string all((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!all.empty() && (all.back() == '\n' || all.back() == '\r')) all.pop_back();
    return all;
}

// ---------------------------------------------------------------- solve

void kovacic_artifacts(Report& rep, const KovacicResult& res) {
    json& a = rep.artifacts();
    a["r"] = S(res.r);
    if (res.case1) {
        const Case1Result& c = *res.case1;
        a["omega"] = S(c.omega);
        a["P"] = print_canonical(RatFunc(c.p));
        a["riccati_solution"] = S(c.riccati_solution());
        a["xi1"] = c.solution().str();
        a["xi2"] = second_solution(c).str();
        a["nullity"] = c.nullity;
    }
    if (res.case2) {
        const Case2Result& c = *res.case2;
        a["theta"] = S(c.theta);
        a["P"] = print_canonical(RatFunc(c.p));
        a["phi"] = S(c.phi);
        a["omega_quadratic"] = "omega^2 + (" + S(c.c1) + ")*omega + (" + S(c.c0) + ")";
    }
    if (res.case3) {
        const Case3Result& c = *res.case3;
        a["n"] = c.n;
        a["theta"] = S(c.theta);
        a["S"] = print_canonical(RatFunc(c.s));
        a["P"] = print_canonical(RatFunc(c.p));
        json coeffs = json::array();
        for (const RatFunc& f : c.omega_polynomial) coeffs.push_back(S(f));
        a["omega_polynomial"] = coeffs;
    }
}

void verify_kovacic(Report& rep, const KovacicResult& res) {
    require(verify(res), "Kovacic certificate failed to re-verify");
    if (res.case1) {
        require(verify_case1(res.r, res.case1->omega, res.case1->p), "case 1 identity");
        rep.step("verify", "P'' + 2 omega P' + (omega' + omega^2 - r) P = 0");
    } else if (res.case2) {
        auto [u, v] = riccati_quadratic_residue(res.r, res.case2->c1, res.case2->c0);
        require(u.is_zero() && v.is_zero(), "case 2 quadratic identity");
        rep.step("verify", "third-order equation for P and the omega quadratic hold");
    } else if (res.case3) {
        rep.step("verify", "recursion ends at P_{-1} = 0");
    }
}

void first_integral(Report& rep, const KovacicResult& res) {
    FirstIntegralClass fi = classify_first_integral(res);
    rep.verdict()["first_integral"] = to_string(fi.type);
    if (fi.integrating_factor) {
        PlanarVectorField X = riccati_field(res.r);
        require(is_integrating_factor(X, *fi.integrating_factor), "integrating factor");
        rep.artifacts()["riccati_field"] = print_canonical(X, "x", "w");
        rep.artifacts()["integrating_factor"] = fi.integrating_factor->to_formal().str();
        rep.step("verify", "X(mu)/mu = -div X for the Riccati field");
    }
}

json solve_cmd(const std::string& eqtext, const Values& vals, std::istream& in) {
    Report rep("solve");
    Equation eq;
    std::string src;
    auto opt = [&](const char* k) {
        auto it = vals.opts.find(k);
        return it == vals.opts.end() ? std::string() : it->second;
    };
    if (!eqtext.empty()) {
        src = read_source(eqtext, in);
    } else {
        std::vector<std::string> parts;
        for (const char* k : {"rho", "b1", "b0", "a0", "a1", "a2"})
            if (!opt(k).empty()) parts.push_back(std::string(k) + "=" + read_source(opt(k), in));
        for (std::size_t i = 0; i < parts.size(); ++i) src += (i ? "; " : "") + parts[i];
    }
    if (src.empty()) throw SyntaxError(0, "an equation", "nothing to solve");
    eq = parse_equation(src, vals.params);
    rep.input()["equation"] = print_canonical(eq);

    RatFunc rho;
    if (auto* g = std::get_if<RiccatiGeneral>(&eq)) {
        SecondOrderODE lin = transform_B(*g);
        rep.step("transform", "B: y'' + (" + S(lin.b1) + ") y' + (" + S(lin.b0) + ") y = 0");
        auto [red, gauge] = transform_S(lin);
        rho = red.rho;
        rep.step("transform", "S: rho = " + S(rho));
        auto [rr, sub] = transform_T(*g);
        require(rr.r == rho, "T and S.B disagree");
        rep.step("check", "T gives w' = r - w^2 with the same r");
        rep.artifacts()["substitution"] = "v = " + S(sub.alpha) + " + (" + S(sub.beta) + ")*w";
    } else if (auto* s = std::get_if<SecondOrderODE>(&eq)) {
        auto [red, gauge] = transform_S(*s);
        rho = red.rho;
        RatFunc half = s->b1 / RatFunc(2);
        require(gauge.integrand == -half && rho == half * half + s->b1.derivative() / RatFunc(2) - s->b0,
                "reduction identity");
        rep.step("transform", "S: rho = " + S(rho) + ", y = xi exp(int " + S(gauge.integrand) + ")");
        rep.artifacts()["gauge"] = "exp(int(" + S(gauge.integrand) + "))";
    } else {
        rho = std::get<ReducedODE>(eq).rho;
    }

    KovacicResult res = solve_rlde(ReducedODE{rho});
    rep.steps("kovacic", res.trace);
    verify_kovacic(rep, res);
    kovacic_artifacts(rep, res);

    if (res.case1) {
        if (auto* g = std::get_if<RiccatiGeneral>(&eq)) {
            auto [rr, sub] = transform_T(*g);
            RatFunc v = sub.alpha + sub.beta * res.case1->riccati_solution();
            require(v.derivative() == g->a0 + g->a1 * v + g->a2 * v * v, "rational solution of the Riccati equation");
            rep.artifacts()["riccati_solution_original"] = S(v);
            rep.step("verify", "v' = a0 + a1 v + a2 v^2 for the rational solution");
        }
    }
    json& v = rep.verdict();
    v["status"] = res.kase == 4 ? "not-integrable" : "integrable";
    v["kovacic_case"] = res.kase;
    first_integral(rep, res);
    return rep.doc;
}

// ---------------------------------------------------------------- criteria

json criteria_cmd(const std::string& family, const Values& vals, bool confirm) {
    Report rep("criteria");
    rep.input()["family"] = family;
    std::optional<RatFunc> rho;
    CriterionVerdict verdict;
    auto echo = [&](std::initializer_list<const char*> names) {
        for (const char* n : names) rep.input()[n] = S(vals.get(n));
    };
    if (family == "kimura") {
        echo({"l", "m", "n"});
        ExponentDiffs e{vals.get("l"), vals.get("m"), vals.get("n")};
        verdict = kimura_test(e);
        if (auto m = kimura_table_match(e)) {
            json t = json::array();
            for (const Scalar& s : m->t) t.push_back(S(s));
            rep.artifacts()["table_row"] = m->row;
            rep.artifacts()["signed_permutation"] = t;
        }
        rho = hypergeometric_rho(e.lambda, e.mu, e.nu);
    } else if (family == "whittaker") {
        echo({"kappa", "mu"});
        WhittakerParams p{vals.get("kappa"), vals.get("mu")};
        verdict = martinet_ramis_test(p);
        rho = p.rho();
    } else if (family == "bessel") {
        echo({"n"});
        Scalar n = vals.get("n");
        verdict = bessel_test(n);
        rho = transform_S(bessel_equation(n)).first.rho;
    } else if (family == "biconfluent-heun") {
        echo({"d0", "d1", "d2", "d3"});
        BiconfluentParams p{vals.get("d0"), vals.get("d1"), vals.get("d2"), vals.get("d3")};
        verdict = biconfluent_heun_test(p);
        rho = p.rho();
    } else if (family == "lame") {
        echo({"n", "B", "g2", "g3"});
        LameParams p{vals.get("n"), vals.get("B"), vals.get("g2"), vals.get("g3")};
        LameClassification c = lame_classify(p);
        json& v = rep.verdict();
        v["status"] = "classified";
        v["criterion"] = "lame";
        v["label"] = c.label;
        if (!c.detail.empty()) v["detail"] = c.detail;
        if (c.subcase) v["subcase"] = *c.subcase;
        if (c.kovacic_case) v["kovacic_case"] = *c.kovacic_case;
        rep.artifacts()["f"] = print_canonical(RatFunc(p.f()));
        rep.step("criterion", "lame: " + c.label);
        return rep.doc;
    } else {
        throw InvalidArgument("unknown family '" + family + "' (kimura, whittaker, bessel, biconfluent-heun, lame)");
    }
    put_verdict(rep.verdict(), verdict);
    rep.artifacts()["rho"] = S(*rho);
    rep.step("criterion", verdict.criterion + ": " + status_of(verdict.verdict) +
                              (verdict.condition.empty() ? "" : " by " + verdict.condition));
    if (confirm) {
        KovacicResult res = solve_rlde(ReducedODE{*rho});
        rep.step("kovacic", "case " + std::to_string(res.kase));
        verify_kovacic(rep, res);
        rep.verdict()["kovacic_case"] = res.kase;
        if (verdict.verdict != Verdict::Inconclusive)
            require((res.kase != 4) == verdict.integrable(), "criterion and Kovacic disagree");
    }
    return rep.doc;
}

// ---------------------------------------------------------------- darboux

json darboux_cmd(const std::string& fieldtext, const std::vector<std::string>& curves,
                 const std::vector<std::string>& expints, const std::string& fiber, const Values& vals,
                 std::istream& in) {
    Report rep("darboux");
    PlanarVectorField X = parse_vectorfield(read_source(fieldtext, in), vals.params, "x", fiber);
    rep.input()["field"] = print_canonical(X, "x", fiber);
    json cin = json::array(), ein = json::array();
    json& a = rep.artifacts();
    a["divergence"] = print_canonical(X.divergence(), "x", fiber);
    json cj = json::array();
    std::vector<AlgebraicCurve> invariant;
    for (const std::string& text : curves) {
        BiPoly f = parse_bipoly(read_source(text, in), vals.params, "x", fiber);
        cin.push_back(print_canonical(f, "x", fiber));
        json entry{{"f", print_canonical(f, "x", fiber)}};
        if (auto c = invariant_curve(X, f)) {
            require(X.apply(c->f) == c->K * c->f, "cofactor");
            entry["invariant"] = true;
            entry["cofactor"] = print_canonical(c->K, "x", fiber);
            invariant.push_back(*c);
            rep.step("curve", print_canonical(f, "x", fiber) + " invariant with cofactor " +
                                  print_canonical(c->K, "x", fiber));
        } else {
            entry["invariant"] = false;
            rep.step("curve", print_canonical(f, "x", fiber) + " is not invariant");
        }
        cj.push_back(entry);
    }
    std::vector<ExponentialFactor> exps;
    json ej = json::array();
    for (const std::string& text : expints) {
        RatFunc g = parse_ratfunc(read_source(text, in), "x", vals.params);
        ein.push_back(S(g));
        ExponentialFactor F = exponential_integral_factor(X, g);
        require(X.P * BiPoly(g) == F.Ktilde, "exponential factor cofactor");
        ej.push_back({{"exponent", F.exponent.str("x", fiber)}, {"cofactor", print_canonical(F.Ktilde, "x", fiber)}});
        exps.push_back(F);
        rep.step("exponential", "exp(int " + S(g) + ") with cofactor " + print_canonical(F.Ktilde, "x", fiber));
    }
    rep.input()["curves"] = cin;
    rep.input()["exp_integrals"] = ein;
    a["curves"] = cj;
    a["exponential_factors"] = ej;

    bool found = false;
    for (DarbouxTarget target : {DarbouxTarget::FirstIntegral, DarbouxTarget::IntegratingFactor}) {
        const char* name = target == DarbouxTarget::FirstIntegral ? "first_integral" : "integrating_factor";
        if (invariant.empty() && exps.empty()) break;
        auto obj = darboux_combination(invariant, exps, X, target);
        if (!obj) {
            rep.step("combination", std::string("no ") + name);
            continue;
        }
        require(obj->verify(X), "Darboux combination");
        json lam = json::array(), lamx = json::array();
        for (const Scalar& s : obj->lambda) lam.push_back(S(s));
        for (const Scalar& s : obj->lambda_exp) lamx.push_back(S(s));
        a[name] = {{"lambda", lam}, {"lambda_exp", lamx}, {"expression", obj->expression().str("x", fiber)}};
        rep.step("combination", std::string(name) + " found and verified");
        found = true;
    }
    json& v = rep.verdict();
    v["status"] = found ? "integrable" : "inconclusive";
    v["criterion"] = "darboux";
    if (invariant.empty() && exps.empty()) v["detail"] = "no invariant curves or factors: divergence only";
    return rep.doc;
}

// ---------------------------------------------------------------- apply

json apply_cmd(const std::string& pipeline, const Values& vals) {
    Report rep("apply");
    rep.input()["pipeline"] = pipeline;
    json& a = rep.artifacts();
    json& v = rep.verdict();
    auto echo = [&](std::initializer_list<const char*> names) {
        for (const char* n : names) rep.input()[n] = S(vals.get_or(n, Scalar()));
    };
    auto g = [&](const char* n) { return vals.get_or(n, Scalar()); };
    if (pipeline == "s1" || pipeline == "s2") {
        echo({"eps", "lambda", "b20", "b11", "b02"});
        if (pipeline == "s2") {
            S2Class c = s2_classify({g("eps"), g("lambda"), g("b20"), g("b11"), g("b02")});
            v["status"] = "classified";
            v["criterion"] = "s2";
            v["label"] = to_string(c);
            rep.step("classify", "first matching clause: " + to_string(c));
            return rep.doc;
        }
        S1Analysis r = s1_analyze({g("eps"), g("lambda"), g("b20"), g("b11"), g("b02")});
        rep.steps("s1", r.trace);
        put_verdict(v, r.martinet_ramis);
        v["kovacic_case"] = r.kovacic_case;
        v["a1"] = r.a1;
        v["b1"] = r.b1;
        require((r.kovacic_case != 4) == r.martinet_ramis.integrable(), "Whittaker criterion and Kovacic disagree");
        a["kappa"] = S(r.kappa);
        a["mu"] = S(r.mu);
        a["sqrt_disc"] = S(r.sqrt_disc);
        a["rho"] = S(r.rho);
    } else if (pipeline == "lienard1") {
        echo({"a", "b", "c", "m", "k"});
        if (!g("m").is_rational() || !g("k").is_rational()) throw InvalidArgument("m and k must be rational");
        Lienard1Result r = lienard1_reduce({g("a"), g("b"), g("c"), g("m"), g("k")});
        rep.steps("lienard1", r.trace);
        put_verdict(v, r.verdict);
        a["mu"] = S(r.mu);
        a["nu_quadratic"] = "nu^2 + nu + (" + S(r.nu_const) + ")";
        json roots = json::array();
        for (const Scalar& s : r.nu_roots) {
            require(s * s + s + r.nu_const == Scalar(), "nu root");
            roots.push_back(S(s));
        }
        a["nu_roots"] = roots;
        json k;
        put_verdict(k, r.kimura);
        a["kimura"] = k;
    } else if (pipeline == "abel") {
        echo({"a", "b", "c", "alpha", "beta", "gamma"});
        AbelLienardParams p{g("a"), g("b"), g("c"), g("alpha"), g("beta"), g("gamma")};
        AbelLienardResult r = abel_lienard_reduce(p);
        rep.steps("abel", r.trace);
        put_verdict(v, r.verdict);
        v["kovacic_case"] = r.kovacic_case;
        require((r.kovacic_case != 4) == r.verdict.integrable(), "biconfluent criterion and Kovacic disagree");
        a["rho"] = S(r.rho);
        if (r.rho_tau) a["rho_tau"] = S(*r.rho_tau);
        if (r.scale) a["scale"] = S(*r.scale);
        if (r.delta) {
            require(r.scale && r.delta->rho() == affine_substitute(*r.rho_tau, Scalar(1) / *r.scale, Scalar()) /
                                                      RatFunc(*r.scale * *r.scale),
                    "biconfluent normal form");
            a["delta"] = {S(r.delta->delta0), S(r.delta->delta1), S(r.delta->delta2), S(r.delta->delta3)};
        }
    } else if (pipeline == "examples") {
        json list = json::array();
        for (const WorkedExample& w : worked_examples()) {
            require(w.verified, "worked example " + w.name);
            list.push_back({{"name", w.name},
                            {"params", w.params},
                            {"kovacic_case", w.result.kase},
                            {"verified", w.verified},
                            {"first_integral", to_string(w.first_integral)}});
            rep.step("example", w.name + " (" + w.params + "): case " + std::to_string(w.result.kase));
        }
        a["examples"] = list;
        v["status"] = "classified";
        v["criterion"] = "kovacic";
    } else {
        throw InvalidArgument("unknown pipeline '" + pipeline + "' (s1, s2, lienard1, abel, examples)");
    }
    return rep.doc;
}

void render_value(std::ostringstream& os, const json& v, int indent) {
    std::string pad(indent, ' ');
    if (v.is_object()) {
        for (auto it = v.begin(); it != v.end(); ++it) {
            if (it.value().is_structured() && !it.value().empty()) {
                os << pad << it.key() << ":\n";
                render_value(os, it.value(), indent + 2);
            } else {
                os << pad << it.key() << ": " << (it.value().is_string() ? it.value().get<std::string>()
                                                                         : it.value().dump())
                   << "\n";
            }
        }
    } else if (v.is_array()) {
        for (const json& e : v) {
            if (e.is_structured()) {
                os << pad << "-\n";
                render_value(os, e, indent + 2);
            } else {
                os << pad << "- " << (e.is_string() ? e.get<std::string>() : e.dump()) << "\n";
            }
        }
    } else {
        os << pad << (v.is_string() ? v.get<std::string>() : v.dump()) << "\n";
    }
}

}  // namespace

std::string render_text(const json& report) {
    std::ostringstream os;
    os << report.value("schema", "") << " " << report.value("command", "") << "\n";
    for (const char* section : {"input", "verdict", "artifacts"}) {
        if (!report.contains(section) || report[section].empty()) continue;
        os << section << ":\n";
        render_value(os, report[section], 2);
    }
    if (report.contains("trace") && !report["trace"].empty()) {
        os << "trace:\n";
        int i = 1;
        for (const json& t : report["trace"])
            os << "  " << i++ << ". [" << t.value("stage", "") << "] " << t.value("detail", "") << "\n";
    }
    if (report.contains("timing")) os << "timing: " << report["timing"].value("elapsed_ms", 0.0) << " ms\n";
    return os.str();
}

int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
    CLI::App app{"Exact Liouvillian integrability of Riccati equations and related families", "riccati-galois"};
    app.fallthrough();
    app.require_subcommand(1);
    std::vector<std::string> params;
    bool as_json = false, as_text = false, no_timing = false;
    int depth = 2;
    app.add_option("--param", params, "NAME=VALUE binding (repeatable, may reference earlier bindings)");
    app.add_flag("--json", as_json, "JSON report on stdout");
    app.add_flag("--text", as_text, "human-readable report (default)");
    app.add_flag("--no-timing", no_timing, "omit the timing field");
    app.add_option("--tower-depth", depth, "maximum number of adjoined square roots")->check(CLI::Range(0, 16));

    std::map<std::string, std::string> opts;
    auto value_opts = [&](CLI::App* sub, std::initializer_list<const char*> names) {
        for (const char* n : names) sub->add_option(std::string("--") + n, opts[n], std::string("value of ") + n);
    };

    std::string equation, family, field, pipeline, fiber = "y";
    std::vector<std::string> curves, expints;
    bool confirm = false;

    CLI::App* solve = app.add_subcommand("solve", "run Kovacic on a reduced, second-order or Riccati equation");
    solve->add_option("equation", equation, "rho=...; or b1=...; b0=...; or a0=...; a1=...; a2=...; '-' reads stdin");
    value_opts(solve, {"rho", "b1", "b0", "a0", "a1", "a2"});

    CLI::App* crit = app.add_subcommand("criteria", "closed-form integrability criteria");
    crit->add_option("family", family, "kimura | whittaker | bessel | biconfluent-heun | lame")->required();
    value_opts(crit, {"l", "m", "n", "kappa", "mu", "d0", "d1", "d2", "d3", "B", "g2", "g3"});
    crit->add_flag("--confirm", confirm, "cross-check the verdict with Kovacic");

    CLI::App* darb = app.add_subcommand("darboux", "invariant curves and Darboux combinations of a planar field");
    darb->add_option("field", field, "'P; Q' in x and the fiber variable; '-' reads stdin")->required();
    darb->add_option("--curve", curves, "candidate invariant curve (repeatable)");
    darb->add_option("--exp-int", expints, "exponential factor exp(int g dx) with g in x (repeatable)");
    darb->add_option("--fiber", fiber, "name of the second variable");

    CLI::App* appl = app.add_subcommand("apply", "end-to-end pipelines");
    appl->add_option("pipeline", pipeline, "s1 | s2 | lienard1 | abel | examples")->required();
    value_opts(appl, {"eps", "lambda", "b20", "b11", "b02", "a", "b", "c", "m", "k", "alpha", "beta", "gamma"});

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e, out, err);
        return code == 0 ? Ok : Syntax;
    }
    if (as_json && as_text) {
        err << "error: --json and --text are exclusive\n";
        return Syntax;
    }

    int saved = Tower::depth_limit();
    Tower::set_depth_limit(depth);
    auto start = std::chrono::steady_clock::now();
    int code = Ok;
    try {
        TowerScope scope(depth);
        Values vals;
        vals.opts = opts;
        for (const std::string& p : params) {
            auto [name, value] = parse_binding(p, vals.params);
            vals.params[name] = value;
        }
        json doc;
        if (solve->parsed()) doc = solve_cmd(equation, vals, in);
        if (crit->parsed()) doc = criteria_cmd(family, vals, confirm);
        if (darb->parsed()) doc = darboux_cmd(field, curves, expints, fiber, vals, in);
        if (appl->parsed()) doc = apply_cmd(pipeline, vals);
        if (!vals.params.empty()) {
            json pj = json::object();
            for (const auto& [k, v] : vals.params) pj[k] = S(v);
            doc["input"]["params"] = pj;
        }
        doc["input"]["tower_depth"] = depth;
        if (!no_timing) {
            double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
            doc["timing"] = {{"elapsed_ms", ms}};
        }
        if (as_json)
            out << doc.dump(2) << "\n";
        else
            out << render_text(doc);
    } catch (const SyntaxError& e) {
        err << "syntax error: " << e.what() << "\n";
        code = Syntax;
    } catch (const Unsupported& e) {
        err << "unsupported: " << e.what() << "\n";
        code = UnsupportedField;
    } catch (const VerificationFailure& e) {
        err << "verification failure: " << e.what() << "\n";
        code = Verification;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        code = Failure;
    }
    Tower::set_depth_limit(saved);
    return code;
}

}  // namespace rgcli
