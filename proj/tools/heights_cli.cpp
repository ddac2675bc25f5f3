#include <CLI11.hpp>

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "heights/dependencies.hpp"
#include "heights/element.hpp"
#include "heights/errors.hpp"
#include "heights/json_io.hpp"
#include "heights/linalg.hpp"
#include "heights/minima.hpp"
#include "heights/subgroup.hpp"
#include "heights/zonoid.hpp"

using namespace heights;

namespace {

struct Options {
    long prec = 256;
    long max_prec = 4096;
    std::uint64_t seed = 0;
    std::uint64_t mc_samples = 1000000;
    std::string format = "text";
    bool clear_denominators = false;
    bool with_mc = false;

    PrecisionContext ctx() const { return PrecisionContext(prec, max_prec); }
    bool json() const { return format == "json"; }
};

// one result document, rendered as ordered JSON or as plain lines
struct Report {
    ojson j = ojson::object();
    std::vector<std::string> lines;

    void line(const std::string& s) { lines.push_back(s); }
    void quantity(const std::string& name, const QInterval& x) {
        j[name] = interval_json(x);
        lines.push_back(name + " = " + decimal_brief(x));
    }
    // like quantity, but the text line carries both certified endpoints
    void endpoints(const std::string& name, const QInterval& x) {
        j[name] = interval_json(x);
        lines.push_back(name + " = " + decimal_brief(x) + " in [" + x.decimal_lo(30) + ", " +
                        x.decimal_hi(30) + "]");
    }
    void flag(const std::string& name, bool v) {
        j[name] = v;
        lines.push_back(name + " = " + (v ? "true" : "false"));
    }
    void integer(const std::string& name, const mpz_class& v) {
        j[name] = v.get_str();
        lines.push_back(name + " = " + v.get_str());
    }
};

void emit(const Options& opt, const Report& r) {
    if (opt.json()) {
        std::cout << r.j.dump(2) << "\n";
        return;
    }
    for (const auto& l : r.lines) std::cout << l << "\n";
}

int verdict(const Options& opt, Report& r, bool pass, const std::string& why) {
    r.j["status"] = pass ? "PASS" : "FAIL";
    if (!pass) r.j["reason"] = why;
    r.lines.push_back(pass ? "PASS: " + why : "FAIL: " + why);
    emit(opt, r);
    return pass ? 0 : 4;
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw input_error("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

ojson load_payload(const std::string& arg) {
    if (arg.empty()) throw input_error("empty payload");
    std::string text;
    if (arg[0] == '@')
        text = slurp(arg.substr(1));
    else if (arg[0] != '{' && arg[0] != '[' && arg[0] != '"' && std::filesystem::exists(arg))
        text = slurp(arg);
    else
        text = arg;
    try {
        return ojson::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw input_error(std::string("payload is not valid JSON: ") + e.what());
    }
}

GroupElement element_payload(const std::string& arg, const PrecisionContext& ctx) {
    // bare rationals like 3/2 are accepted as a shorthand
    if (!arg.empty() && arg[0] != '@' && arg[0] != '{' && arg[0] != '[' && arg[0] != '"' &&
        !std::filesystem::exists(arg))
        return GroupElement::from_rational(parse_rational_str(arg));
    return parse_element(load_payload(arg), ctx);
}

std::string vec_text(const std::vector<mpz_class>& v) {
    std::string out = "(";
    for (size_t i = 0; i < v.size(); ++i) {
        if (i) out += ", ";
        out += v[i].get_str();
    }
    return out + ")";
}

std::string element_text(const GroupElement& e) {
    if (!e.factored()) return "table over " + std::to_string(e.table().size()) + " places";
    if (e.is_identity()) return "1";
    std::string out;
    for (const auto& [p, r] : e.exponents()) {
        if (!out.empty()) out += " * ";
        out += p.get_str();
        if (r != 1) out += "^" + r.get_str();
    }
    return out;
}

std::string fmt_double(double v) {
    char b[48];
    std::snprintf(b, sizeof b, "%.17g", v);
    return b;
}

std::vector<GroupElement> load_group(const std::string& payload, const Options& opt, Report& r) {
    std::vector<GroupElement> gens = parse_group(load_payload(payload), opt.ctx());
    if (!opt.clear_denominators) return gens;
    ojson subs = ojson::array();
    for (size_t n = 0; n < gens.size(); ++n) {
        if (!gens[n].factored()) continue;
        mpz_class L = 1;
        for (const auto& [p, e] : gens[n].exponents())
            mpz_lcm(L.get_mpz_t(), L.get_mpz_t(), e.get_den().get_mpz_t());
        if (L == 1) continue;
        gens[n] = group_op(GroupElement(), gens[n], mpq_class(L));
        subs.push_back(ojson{{"generator", static_cast<int>(n)}, {"power", L.get_str()}});
        r.line("generator " + std::to_string(n) + " replaced by its power " + L.get_str());
    }
    if (!subs.empty()) r.j["substitutions"] = std::move(subs);
    return gens;
}

void fill_minima(Report& r, const MinimaResult& m) {
    r.flag("exhaustive", m.exhaustive);
    r.integer("index", m.index);
    ojson vecs = ojson::array(), norms = ojson::array();
    for (size_t i = 0; i < m.vectors.size(); ++i) {
        vecs.push_back(int_vec_json(m.vectors[i]));
        norms.push_back(interval_json(m.norms[i]));
        r.line("mu_" + std::to_string(i + 1) + " = " + decimal_brief(m.norms[i]) + "  b_" +
               std::to_string(i + 1) + " = " + vec_text(m.vectors[i]));
    }
    r.j["vectors"] = std::move(vecs);
    r.j["norms"] = std::move(norms);
}

void fill_height_certificate(Report& r, const HeightCertificate& c) {
    ojson betas = ojson::array(), bh = ojson::array();
    for (size_t i = 0; i < c.betas.size(); ++i) {
        betas.push_back(int_vec_json(c.betas[i]));
        bh.push_back(interval_json(c.beta_heights[i]));
        r.line("beta_" + std::to_string(i + 1) + " = " + vec_text(c.betas[i]) + "  " +
               element_text(c.beta_elements[i]) + "  h = " + decimal_brief(c.beta_heights[i]));
    }
    r.j["betas"] = std::move(betas);
    ojson be = ojson::array();
    for (const auto& e : c.beta_elements) be.push_back(element_json(e));
    r.j["beta_elements"] = std::move(be);
    r.j["beta_heights"] = std::move(bh);
    r.endpoints("height_product", c.product);
    r.endpoints("group_height", c.h_group);
    r.integer("index", c.index);
    r.integer("index_bound", c.index_bound);
    r.flag("exhaustive", c.exhaustive);
    r.flag("certified", c.certified);
}

bool height_certificate_pass(const HeightCertificate& c) {
    if (!c.certified) return false;
    if (!c.exhaustive) return true;
    return c.index >= 1 && c.index <= c.index_bound;
}

void fill_dependency_certificate(Report& r, const DependencyCertificate& c) {
    ojson kernel = ojson::object();
    ojson vecs = ojson::array(), sups = ojson::array();
    for (size_t i = 0; i < c.zs.vectors.size(); ++i) {
        vecs.push_back(int_vec_json(c.zs.vectors[i]));
        sups.push_back(c.zs.sup_norms[i].get_str());
        r.line("z_" + std::to_string(i + 1) + " = " + vec_text(c.zs.vectors[i]) +
               "  sup = " + c.zs.sup_norms[i].get_str());
    }
    kernel["vectors"] = std::move(vecs);
    kernel["sup_norms"] = std::move(sups);
    kernel["product"] = c.zs.product.get_str();
    kernel["gram_det"] = c.zs.gram_det.get_str();
    kernel["minor_gcd"] = c.zs.minor_gcd.get_str();
    kernel["siegel_bound"] = interval_json(c.zs.bound);
    kernel["exhaustive"] = c.zs.exhaustive;
    kernel["bound_ok"] = c.zs.bound_ok;
    r.j["kernel"] = std::move(kernel);
    r.line("sup product = " + c.zs.product.get_str() + "  siegel bound = " +
           decimal_brief(c.zs.bound) + (c.zs.bound_ok ? "  (met)" : "  (not certified)"));

    ojson basis = ojson::array();
    std::string basis_line;
    for (const auto& e : c.basis_elements) {
        basis.push_back(element_json(e));
        if (!basis_line.empty()) basis_line += ", ";
        basis_line += element_text(e);
    }
    r.j["basis"] = std::move(basis);
    r.line("basis = " + basis_line);
    r.j["coords"] = int_matrix_json(c.coords);

    ojson gh = ojson::array();
    for (const auto& x : c.gen_heights) gh.push_back(interval_json(x));
    r.j["generator_heights"] = std::move(gh);

    r.endpoints("height_product", c.height_product);
    r.endpoints("height_sum_power", c.height_sum_power);
    r.flag("height_bound_ok", c.height_bound_ok);
    r.endpoints("group_product", c.group_product);
    r.endpoints("volume_integral", c.volume_integral);
    r.flag("group_bound_ok", c.group_bound_ok);

    Report sub;
    fill_height_certificate(sub, c.heights);
    r.j["independent_generators"] = std::move(sub.j);
    r.flag("heights_certified", c.heights.certified);
}

bool dependency_certificate_pass(const DependencyCertificate& c) {
    return c.zs.bound_ok && c.height_bound_ok && c.group_bound_ok && c.heights.certified;
}

int cmd_height(const Options& opt, const std::string& payload) {
    PrecisionContext ctx = opt.ctx();
    GroupElement e = element_payload(payload, ctx);
    LogValue hv = weil_height_value(e, ctx);
    QInterval h = hv.eval(ctx.bits);
    Report r;
    r.quantity("height", h);
    r.j["symbolic"] = hv.describe();
    emit(opt, r);
    return 0;
}

int cmd_group_height(const Options& opt, const std::string& payload) {
    PrecisionContext ctx = opt.ctx();
    Report r;
    std::vector<GroupElement> gens = load_group(payload, opt, r);
    SubgroupPresentation p = build_presentation(gens, ctx);
    QInterval h = group_height(p, ctx);
    r.j["rank"] = p.rank;
    ojson sup = ojson::array();
    std::string sup_line;
    for (const auto& pl : p.support) {
        sup.push_back(pl.label);
        if (!sup_line.empty()) sup_line += " ";
        sup_line += pl.label;
    }
    r.j["support"] = std::move(sup);
    r.line("rank = " + std::to_string(p.rank));
    r.line("support = " + sup_line);
    r.quantity("height", h);
    emit(opt, r);
    return 0;
}

int cmd_minima(const Options& opt, const std::string& payload) {
    PrecisionContext ctx = opt.ctx();
    SimpleSystem s = parse_simple_system(load_payload(payload), ctx);
    MinimaResult m = successive_minima(s, ctx);
    Report r;
    fill_minima(r, m);
    emit(opt, r);
    return 0;
}

int cmd_reduce(const Options& opt, const std::string& payload, bool gated) {
    PrecisionContext ctx = opt.ctx();
    SimpleSystem s = parse_simple_system(load_payload(payload), ctx);
    ReductionCertificate c = reduce_by_minima(s, ctx);
    Report r;
    fill_minima(r, c.minima);
    r.endpoints("product", c.product);
    r.endpoints("integral", c.integral);
    r.integer("index_bound", c.index_bound);
    r.flag("certified", c.certified);
    if (!gated) {
        emit(opt, r);
        return 0;
    }
    bool pass = c.certified &&
                (!c.minima.exhaustive ||
                 (c.minima.index >= 1 && c.minima.index <= c.index_bound));
    return verdict(opt, r, pass,
                   pass ? "norm product is at most the determinant integral, index within bound"
                        : "reduction certificate not established");
}

int cmd_zonotope_volume(const Options& opt, const std::string& payload) {
    PrecisionContext ctx = opt.ctx();
    ZonotopeSpec z = parse_zonotope(load_payload(payload));
    QInterval v = mcmullen_volume(z, ctx);
    Report r;
    r.quantity("volume", v);
    if (opt.with_mc) {
        VolumeEstimate est = monte_carlo_volume(z, opt.mc_samples, opt.seed);
        r.j["monte_carlo"] = ojson{{"mean", fmt_double(est.mean)},
                                   {"half_width", fmt_double(est.half_width)},
                                   {"samples", est.samples},
                                   {"seed", est.seed}};
        r.line("monte_carlo = " + fmt_double(est.mean) + " +- " + fmt_double(est.half_width) +
               " (3 sigma, " + std::to_string(est.samples) + " samples, seed " +
               std::to_string(est.seed) + ")");
    }
    emit(opt, r);
    return 0;
}

int cmd_deps(const Options& opt, const std::string& payload, bool gated) {
    PrecisionContext ctx = opt.ctx();
    Report r;
    std::vector<GroupElement> gens = load_group(payload, opt, r);
    DependencyCertificate c = certify_small_dependencies(gens, ctx);
    fill_dependency_certificate(r, c);
    if (!gated) {
        emit(opt, r);
        return 0;
    }
    bool pass = dependency_certificate_pass(c);
    return verdict(opt, r, pass,
                   pass ? "dependency basis meets the height and volume bounds"
                        : "dependency bounds not certified");
}

int cmd_certify_thm1(const Options& opt, const std::string& payload) {
    PrecisionContext ctx = opt.ctx();
    Report r;
    std::vector<GroupElement> gens = load_group(payload, opt, r);
    SubgroupPresentation p = build_presentation(gens, ctx);
    HeightCertificate c = small_independent_generators(p, ctx);
    fill_height_certificate(r, c);
    bool pass = height_certificate_pass(c);
    return verdict(opt, r, pass,
                   pass ? "height product is at most the subgroup height, index within bound"
                        : "height product bound not certified");
}

int cmd_certify_thm3(const Options& opt, const std::string& payload) {
    PrecisionContext ctx = opt.ctx();
    SimpleSystem s = parse_simple_system(load_payload(payload), ctx);
    QInterval by_integral = zonoid_volume(s, ctx);
    QInterval by_zonotope = mcmullen_volume(dual_zonotope_of(s), ctx);
    Report r;
    r.endpoints("volume_by_integral", by_integral);
    r.endpoints("volume_by_zonotope", by_zonotope);
    bool pass = by_integral.overlaps(by_zonotope);
    return verdict(opt, r, pass,
                   pass ? "both volume routes agree" : "volume routes disagree");
}

SUnitContext rational_sunit_context(const std::vector<std::uint64_t>& primes) {
    if (primes.empty()) throw input_error("--primes needs at least one prime");
    SUnitContext c;
    c.field_degree = 1;
    c.places.push_back(arch_place());
    for (size_t i = 0; i < primes.size(); ++i) {
        mpz_class p(static_cast<unsigned long>(primes[i]));
        if (mpz_probab_prime_p(p.get_mpz_t(), 30) == 0)
            throw input_error(p.get_str() + " is not prime");
        for (size_t k = 0; k < i; ++k)
            if (primes[k] == primes[i]) throw input_error("duplicate prime " + p.get_str());
        c.places.push_back(finite_place(p));
    }
    int s = static_cast<int>(c.places.size());
    c.unit_log_table = ExactMatrix(s - 1, s);
    for (int r = 0; r + 1 < s; ++r) {
        mpq_class p(c.places[static_cast<size_t>(r) + 1].prime);
        c.unit_log_table.at(r, 0) = LogValue::log_of(p);
        c.unit_log_table.at(r, r + 1) = LogValue::log_of(p).scale(-1);
    }
    return c;
}

int cmd_certify_cor2(const Options& opt, const std::string& payload,
                     const std::vector<std::uint64_t>& primes) {
    PrecisionContext ctx = opt.ctx();
    SUnitContext c;
    if (!primes.empty())
        c = rational_sunit_context(primes);
    else if (!payload.empty())
        c = parse_sunit(load_payload(payload));
    else
        throw input_error("cor2 needs an S-unit JSON payload or --primes");
    SUnitHeights h = sunit_height(c, ctx);
    Report r;
    r.endpoints("regulator", h.regulator);
    r.endpoints("height", h.height);
    r.endpoints("height_by_presentation", h.height_by_presentation);
    bool pass = h.height.overlaps(h.height_by_presentation);
    return verdict(opt, r, pass,
                   pass ? "closed form agrees with the presentation route"
                        : "closed form and presentation route disagree");
}

int cmd_selftest(const Options& opt) {
    PrecisionContext ctx = opt.ctx();
    Report r;
    ojson checks = ojson::array();
    bool all_ok = true;
    auto check = [&](const std::string& name, auto&& body) {
        std::string status = "ok";
        try {
            body();
        } catch (const std::exception& e) {
            status = std::string("fail: ") + e.what();
            all_ok = false;
        }
        checks.push_back(ojson{{"name", name}, {"status", status}});
        r.line((status == "ok" ? "[ok] " : "[FAIL] ") + name +
               (status == "ok" ? "" : "  " + status));
    };
    auto expect = [](bool cond, const std::string& what) {
        if (!cond) throw verify_error(what);
    };

    check("height of 3/2 equals log 3 exactly", [&] {
        LogValue h = weil_height_value(GroupElement::from_rational(mpq_class(3, 2)), ctx);
        LogValue d = h - LogValue::log_of(mpq_class(3));
        expect(d.is_zero(), "difference is not the zero form");
    });
    check("height scales with integer powers", [&] {
        GroupElement g = GroupElement::from_exponents({{mpz_class(2), mpq_class(5)}});
        LogValue d = weil_height_value(g, ctx) - LogValue::log_of(mpq_class(2)).scale(5);
        expect(d.is_zero(), "h(2^5) is not 5 log 2");
    });
    check("unit square plus diagonal has volume 12", [&] {
        ExactMatrix seg(2, 3);
        seg.at(0, 0) = LogValue(mpq_class(1));
        seg.at(1, 1) = LogValue(mpq_class(1));
        seg.at(0, 2) = LogValue(mpq_class(1));
        seg.at(1, 2) = LogValue(mpq_class(1));
        ZonotopeSpec z;
        z.dim = 2;
        z.segments = std::move(seg);
        QInterval v = mcmullen_volume(z, ctx);
        expect(v.contains(mpq_class(12)) && v.width() < mpq_class(1, 1000000),
               "volume enclosure misses 12");
    });
    check("S-unit closed form matches its regulator", [&] {
        SUnitHeights h = sunit_height(rational_sunit_context({2, 3}), ctx);
        expect(h.height.overlaps(h.regulator.scale(mpq_class(3, 2))),
               "height is not 3/2 of the regulator");
        expect(h.height.overlaps(h.height_by_presentation), "presentation route disagrees");
    });
    check("dependency certificate for 2, 3, 6", [&] {
        std::vector<GroupElement> gens = {GroupElement::from_rational(2),
                                          GroupElement::from_rational(3),
                                          GroupElement::from_rational(6)};
        DependencyCertificate c = certify_small_dependencies(gens, ctx);
        expect(c.zs.product == 1, "kernel sup product is not 1");
        expect(dependency_certificate_pass(c), "bounds not certified");
    });
    check("norm product bound on the 2, 3 presentation system", [&] {
        std::vector<GroupElement> gens = {GroupElement::from_rational(2),
                                          GroupElement::from_rational(3)};
        SubgroupPresentation p = build_presentation(gens, ctx);
        SimpleSystem s = build_simple_system(p.masses, p.A, ctx);
        ReductionCertificate c = reduce_by_minima(s, ctx);
        expect(c.certified, "reduction not certified");
        expect(c.minima.index >= 1 && c.minima.index <= c.index_bound, "index out of bound");
    });

    r.j["checks"] = std::move(checks);
    return verdict(opt, r, all_ok, all_ok ? "all self tests passed" : "self test failure");
}

int run(int argc, char** argv) {
    CLI::App app{"certified heights, zonoid volumes, lattice minima, and multiplicative "
                 "dependency certificates"};
    app.require_subcommand(1);
    Options opt;
    app.add_option("--prec", opt.prec, "working precision in bits")->capture_default_str();
    app.add_option("--max-prec", opt.max_prec, "precision escalation ceiling in bits")
        ->capture_default_str();
    app.add_option("--seed", opt.seed, "Monte Carlo seed")->capture_default_str();
    CLI::Option* mc_opt =
        app.add_option("--mc-samples", opt.mc_samples,
                       "Monte Carlo sample count; adds a statistical cross-check to "
                       "zonotope-volume")
            ->capture_default_str();
    app.add_option("--format", opt.format, "output format")
        ->check(CLI::IsMember({"text", "json"}))
        ->capture_default_str();
    app.add_flag("--clear-denominators", opt.clear_denominators,
                 "replace generators carrying rational exponents by integer powers");

    std::string payload;
    auto payload_help = "inline JSON, a file path, or @file";

    CLI::App* c_height = app.add_subcommand("height", "Weil height of one element");
    c_height->add_option("payload", payload, payload_help)->required();
    CLI::App* c_gheight = app.add_subcommand("group-height", "height of a finitely generated "
                                                             "multiplicative subgroup");
    c_gheight->add_option("payload", payload, payload_help)->required();
    CLI::App* c_minima = app.add_subcommand("minima", "successive minima of the pullback norm "
                                                      "of a simple system");
    c_minima->add_option("payload", payload, payload_help)->required();
    CLI::App* c_reduce = app.add_subcommand("reduce", "independent short vectors with norm "
                                                      "product at most the determinant integral");
    c_reduce->add_option("payload", payload, payload_help)->required();
    CLI::App* c_zono = app.add_subcommand("zonotope-volume", "exact volume of a zonotope given "
                                                             "by its segment matrix");
    c_zono->add_option("payload", payload, payload_help)->required();
    CLI::App* c_deps = app.add_subcommand("deps", "small basis of the multiplicative dependency "
                                                  "lattice with certified bounds");
    c_deps->add_option("payload", payload, payload_help)->required();

    CLI::App* c_certify = app.add_subcommand("certify", "run one certificate end to end and "
                                                        "report PASS or FAIL");
    std::string target;
    std::vector<std::uint64_t> primes;
    c_certify->add_option("target", target, "thm1|thm2|thm3|thm4|cor2")
        ->required()
        ->check(CLI::IsMember({"thm1", "thm2", "thm3", "thm4", "cor2"}));
    c_certify->add_option("payload", payload, payload_help);
    c_certify->add_option("--primes", primes,
                          "rational S-unit context over these primes (cor2 only)")
        ->delimiter(',');

    CLI::App* c_selftest = app.add_subcommand("selftest", "run the built-in worked examples");

    for (CLI::App* sub :
         {c_height, c_gheight, c_minima, c_reduce, c_zono, c_deps, c_certify, c_selftest})
        sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        app.exit(e);
        return 2;
    }
    opt.with_mc = mc_opt->count() > 0;
    if (opt.prec < 16) throw input_error("--prec must be at least 16 bits");
    if (opt.max_prec < opt.prec) throw input_error("--max-prec must be at least --prec");

    if (c_height->parsed()) return cmd_height(opt, payload);
    if (c_gheight->parsed()) return cmd_group_height(opt, payload);
    if (c_minima->parsed()) return cmd_minima(opt, payload);
    if (c_reduce->parsed()) return cmd_reduce(opt, payload, false);
    if (c_zono->parsed()) return cmd_zonotope_volume(opt, payload);
    if (c_deps->parsed()) return cmd_deps(opt, payload, false);
    if (c_selftest->parsed()) return cmd_selftest(opt);
    if (c_certify->parsed()) {
        if (target == "cor2") return cmd_certify_cor2(opt, payload, primes);
        if (payload.empty()) throw input_error("certify " + target + " needs a payload");
        if (target == "thm1") return cmd_certify_thm1(opt, payload);
        if (target == "thm2") return cmd_deps(opt, payload, true);
        if (target == "thm3") return cmd_certify_thm3(opt, payload);
        if (target == "thm4") return cmd_reduce(opt, payload, true);
    }
    throw input_error("no command given");
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const precision_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const verify_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const nlohmann::json::exception& e) {
        std::cerr << "error: invalid JSON: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
