#include "gevrey/cli.hpp"

#include <cstdlib>
#include <iostream>
#include <mutex>
#include <sstream>
#include <thread>

#include "CLI11.hpp"
#include "gevrey/expr.hpp"
#include "gevrey/guess.hpp"
#include "gevrey/qcalc.hpp"

namespace gevrey::cli {

using nlohmann::json;

namespace {

Rat parse_rat(const std::string& s) { return rat_from_string(s); }

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

std::vector<Int> parse_int_list(const std::string& s) {
    std::vector<Int> out;
    for (const auto& part : split(s, ','))
        if (!part.empty()) out.emplace_back(part);
    return out;
}

std::vector<Rat> parse_rat_list(const std::string& s) {
    std::vector<Rat> out;
    for (const auto& part : split(s, ','))
        if (!part.empty()) out.push_back(parse_rat(part));
    return out;
}

std::size_t default_trunc() {
    if (const char* env = std::getenv("GEVREY_DEFAULT_TRUNC")) {
        long v = std::atol(env);
        if (v > 0) return static_cast<std::size_t>(v);
    }
    return 64;
}

json jrat(const Rat& r) { return r.get_str(); }

json jpoly(const Poly& p, const std::string& var) { return p.to_string(var); }

json jseries(const std::vector<Rat>& v) {
    json arr = json::array();
    for (const auto& c : v) arr.push_back(jrat(c));
    return arr;
}

json jslope(const Rat& s) {
    if (s.get_den() == 1 && s.get_num().fits_slong_p()) return s.get_num().get_si();
    return s.get_str();
}

// coefficient expression in n, evaluated exactly per index
FormalSeries series_from_expr(const std::string& text, std::size_t trunc, const QContext* ctx) {
    ExprPtr e = parse_expr(text);
    std::vector<Rat> v(trunc + 1);
    std::map<std::string, Rat> env;
    if (ctx) env["q"] = ctx->q();
    for (std::size_t n = 0; n <= trunc; ++n) {
        env["n"] = Rat(static_cast<long>(n));
        v[n] = eval_rational(e, env, ctx);
    }
    return FormalSeries(std::move(v));
}

json polygon_json(const NewtonPolygon& np) {
    json slopes = json::array();
    json detail = json::array();
    for (const auto& [s, len] : np.slopes) {
        slopes.push_back(jslope(s));
        detail.push_back(json{{"slope", jslope(s)}, {"length", len}});
    }
    return json{{"slopes", slopes},
                {"edges", detail},
                {"regular_singular", np.regular_singular()}};
}

struct SumPadicArgs {
    std::string term;
    std::string primes;
    long prec = 30;
    std::string xi = "1";
    unsigned jobs = 1;
};

CliResult cmd_sum_padic(const SumPadicArgs& a) {
    CliResult res;
    FactorialSeriesSpec spec = extract_factorial_spec(parse_expr(a.term));
    spec.xi = parse_rat(a.xi);
    std::vector<Int> primes = parse_int_list(a.primes);

    bool classical = (spec.weight_exponent == 1 && spec.xi == 1);
    std::optional<TelescopeResult> tel;
    if (classical) tel = telescope_decompose(spec.P);

    std::vector<PAdicValue> values;
    values.reserve(primes.size());
    if (a.jobs > 1 && primes.size() > 1) {
        std::vector<std::optional<PAdicValue>> slots(primes.size());
        std::vector<std::string> errors(primes.size());
        std::size_t next = 0;
        std::mutex mtx;
        auto worker = [&] {
            for (;;) {
                std::size_t i;
                {
                    std::lock_guard<std::mutex> lock(mtx);
                    if (next >= primes.size()) return;
                    i = next++;
                }
                try {
                    slots[i] = padic_sum(spec, primes[i], a.prec);
                } catch (const std::exception& ex) {
                    errors[i] = ex.what();
                }
            }
        };
        std::vector<std::thread> pool;
        for (unsigned t = 0; t < a.jobs; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
        for (std::size_t i = 0; i < primes.size(); ++i) {
            if (!slots[i]) throw std::invalid_argument(errors[i]);
            values.push_back(*slots[i]);
        }
    } else {
        for (const Int& p : primes) values.push_back(padic_sum(spec, p, a.prec));
    }

    json results = json::array();
    bool all_match = true;
    for (std::size_t i = 0; i < primes.size(); ++i) {
        const PAdicValue& v = values[i];
        json entry{{"prime", primes[i].get_str()}, {"precision", a.prec}};
        if (v.is_exact_zero()) {
            entry["valuation"] = nullptr;
            entry["residue"] = "0";
            entry["exact_zero"] = true;
        } else {
            entry["valuation"] = v.valuation();
            entry["unit_residue"] = v.unit_residue().get_str();
            if (v.valuation() >= 0) entry["residue"] = v.residue_mod(a.prec).get_str();
        }
        if (tel && tel->universal_value) {
            bool ok = v.congruent(*tel->universal_value);
            entry["matches_universal"] = ok;
            all_match = all_match && ok;
        }
        results.push_back(std::move(entry));
    }

    res.output = json{{"term", pretty(parse_expr(a.term))},
                      {"weight_exponent", spec.weight_exponent},
                      {"P", jpoly(spec.P, "n")},
                      {"xi", jrat(spec.xi)},
                      {"results", results}};
    if (tel) {
        res.output["telescope"] = json{
            {"Q", jpoly(tel->Q, "n")},
            {"c", jrat(tel->residual_c)},
            {"universal_value", tel->universal_value ? json(jrat(*tel->universal_value)) : json()}};
        if (tel->universal_value && !all_match) res.exit_code = 1;
    }
    return res;
}

CliResult cmd_telescope(const std::string& term) {
    CliResult res;
    FactorialSeriesSpec spec = extract_factorial_spec(parse_expr(term));
    if (spec.weight_exponent != 1)
        throw EvalError("telescoping applies to weight n!^1 only");
    TelescopeResult tel = telescope_decompose(spec.P);
    res.output = json{
        {"term", pretty(parse_expr(term))},
        {"P", jpoly(spec.P, "n")},
        {"Q", jpoly(tel.Q, "n")},
        {"c", jrat(tel.residual_c)},
        {"universal_value", tel.universal_value ? json(jrat(*tel.universal_value)) : json()}};
    return res;
}

struct GuessArgs {
    std::string series;
    std::size_t trunc = 0;
    long order = 2;
    long degree = 2;
    std::size_t margin = 8;
};

CliResult cmd_guess(const GuessArgs& a) {
    CliResult res;
    std::size_t trunc = a.trunc ? a.trunc : default_trunc();
    FormalSeries f = series_from_expr(a.series, trunc, nullptr);
    GuessConfig cfg{a.order, a.degree, trunc, a.margin};
    auto op = guess_operator(f, cfg);
    if (!op) {
        res.output = json{{"found", false}};
        res.exit_code = 1;
        return res;
    }
    res.output = json{{"found", true},
                      {"operator", op->to_string()},
                      {"order", op->order()},
                      {"degree", op->degree()},
                      {"recurrence", op_to_recurrence(*op).to_string()}};
    return res;
}

CliResult cmd_borel_transfer(const std::string& op_text, long s) {
    CliResult res;
    DiffOp a = eval_diffop(parse_expr(op_text), {});
    DiffOp t = borel_transfer(a, s);
    res.output = json{{"operator", a.to_string()},
                      {"s", s},
                      {"transferred", t.to_string()},
                      {"transferred_recurrence", op_to_recurrence(t).to_string()}};
    return res;
}

CliResult cmd_singular(const std::string& op_text) {
    CliResult res;
    DiffOp a = eval_diffop(parse_expr(op_text), {});
    SingularPoints sp = singular_points(a);
    json pts = json::array();
    for (const auto& [r, m] : sp.points)
        pts.push_back(json{{"point", jrat(r)}, {"multiplicity", m}});
    res.output = json{{"operator", a.to_string()},
                      {"leading", jpoly(sp.leading, "z")},
                      {"points", pts},
                      {"complete", sp.roots_complete}};
    return res;
}

CliResult cmd_indicial(const std::string& op_text, const std::string& xi) {
    CliResult res;
    DiffOp a = eval_diffop(parse_expr(op_text), {});
    IndicialData d = indicial_polynomial(a, parse_rat(xi));
    json exps = json::array();
    for (const auto& [r, m] : d.exponents)
        exps.push_back(json{{"root", jrat(r)}, {"multiplicity", m}});
    res.output = json{{"operator", a.to_string()},
                      {"point", jrat(d.point)},
                      {"indicial", jpoly(d.indicial, "r")},
                      {"exponents", exps},
                      {"complete", d.roots_complete}};
    return res;
}

CliResult cmd_newton(const std::string& op_text, const std::string& at) {
    CliResult res;
    DiffOp a = eval_diffop(parse_expr(op_text), {});
    PolygonLocation loc;
    if (at == "0")
        loc = PolygonLocation::Origin;
    else if (at == "inf" || at == "infinity")
        loc = PolygonLocation::Infinity;
    else
        throw EvalError("--at must be 0 or inf");
    NewtonPolygon np = newton_polygon(a, loc);
    res.output = polygon_json(np);
    res.output["operator"] = a.to_string();
    res.output["at"] = at;
    return res;
}

struct HermitePadeArgs {
    std::vector<std::string> series;
    std::size_t target = 0;
    long degree = 1;
};

CliResult cmd_hermite_pade(const HermitePadeArgs& a) {
    CliResult res;
    std::size_t N = a.target ? a.target : default_trunc();
    std::vector<FormalSeries> Z;
    for (const auto& s : a.series) Z.push_back(series_from_expr(s, N + 4, nullptr));
    auto polys = hermite_pade(Z, N, a.degree);
    if (!polys) {
        res.output = json{{"found", false}};
        res.exit_code = 1;
        return res;
    }
    // residual order by direct expansion
    FormalSeries acc = FormalSeries::zero(N + 4);
    for (std::size_t h = 0; h < Z.size(); ++h) {
        FormalSeries ph = FormalSeries::zero(N + 4);
        std::vector<Rat> pc(N + 5, Rat(0));
        for (long k = 0; k <= (*polys)[h].degree(); ++k)
            pc[static_cast<std::size_t>(k)] = (*polys)[h].coeff(static_cast<std::size_t>(k));
        acc = acc + FormalSeries(pc) * Z[h];
    }
    long residual = -1;
    for (std::size_t n = 0; n <= acc.order(); ++n)
        if (acc.coeff(n) != 0) {
            residual = static_cast<long>(n);
            break;
        }
    json jp = json::array();
    for (const auto& p : *polys) jp.push_back(jpoly(p, "z"));
    res.output = json{{"found", true},
                      {"polynomials", jp},
                      {"residual_order", residual == -1 ? json() : json(residual)},
                      {"target_order", N}};
    return res;
}

CliResult cmd_reconstruct(const std::string& series, std::size_t trunc) {
    CliResult res;
    std::size_t N = trunc ? trunc : default_trunc();
    FormalSeries f = series_from_expr(series, N, nullptr);
    auto rec = rational_reconstruct(f);
    if (!rec) {
        res.output = json{{"found", false}};
        res.exit_code = 1;
        return res;
    }
    res.output = json{{"found", true},
                      {"rational", rec->fn.to_string()},
                      {"denominator_degree", rec->fn.den().degree()},
                      {"partial_fractions",
                       rec->fractions ? json(rec->fractions->to_string()) : json()}};
    return res;
}

struct ProfileArgs {
    std::string series;
    std::size_t trunc = 0;
    std::string order_s = "0";
    std::string primes;
};

CliResult cmd_profile(const ProfileArgs& a) {
    CliResult res;
    std::size_t N = a.trunc ? a.trunc : default_trunc();
    FormalSeries f = series_from_expr(a.series, N, nullptr);
    GevreySeries g(parse_rat(a.order_s), f.coeffs());
    ArithProfile prof = arith_profile(g);
    json samples = json::array();
    for (std::size_t n = 1; n <= g.order(); n = n < 8 ? n + 1 : n * 2) {
        samples.push_back(json{{"n", n},
                               {"max_abs", jrat(prof.max_abs[n])},
                               {"den_lcm", prof.den_lcm[n].get_str()},
                               {"conj_root_log2", jrat(prof.conj_root_log2[n])},
                               {"den_root_log2", jrat(prof.den_root_log2[n])}});
    }
    res.output = json{{"gevrey_order", a.order_s},
                      {"conj_bounded", prof.conj_bounded},
                      {"den_bounded", prof.den_bounded},
                      {"consistent_with_G", prof.consistent_with_G()},
                      {"samples", samples}};
    if (!a.primes.empty()) {
        json rad = json::array();
        for (const Int& p : parse_int_list(a.primes))
            rad.push_back(json{{"prime", p.get_str()},
                               {"estimate", jrat(padic_radius_estimate(f, p))}});
        res.output["radius_estimates"] = rad;
    }
    return res;
}

CliResult cmd_example33(std::size_t trunc) {
    CliResult res;
    PipelineReport rep = example33_pipeline(trunc ? trunc : 120);
    res.output = json{{"verdict", to_string(rep.verdict)}};
    if (!rep.annihilator.is_zero()) {
        res.output["operator"] = rep.annihilator.to_string();
        res.output["dimension"] = rep.triviality.dimension;
        res.output["order"] = rep.triviality.op_order;
    }
    if (rep.verdict != Verdict::Pass) res.exit_code = 1;
    return res;
}

struct QTransformArgs {
    std::string series;
    std::string q = "2";
    std::string mode = "sharp";
    std::size_t trunc = 0;
};

QLaplaceMode parse_mode(const std::string& m) {
    if (m == "sharp") return QLaplaceMode::Sharp;
    if (m == "plus") return QLaplaceMode::Plus;
    throw EvalError("--mode must be sharp or plus");
}

CliResult cmd_q_transform(const QTransformArgs& a) {
    CliResult res;
    std::size_t N = a.trunc ? a.trunc : default_trunc();
    QContext ctx(parse_rat(a.q));
    FormalSeries f = series_from_expr(a.series, N, &ctx);
    QLaurentSeries out = q_laplace(f, parse_mode(a.mode), ctx);
    res.output = json{{"q", jrat(ctx.q())},
                      {"mode", a.mode},
                      {"coefficients", jseries(out.coeffs())},
                      {"note", "entry n multiplies z^-(n+1)"}};
    return res;
}

struct QDivideArgs {
    std::string beta;
    std::string alpha;
    std::string xi = "1";
    std::string q = "2";
    std::string mode = "sharp";
    std::size_t trunc = 0;
};

CliResult cmd_q_divide(const QDivideArgs& a) {
    CliResult res;
    std::size_t N = a.trunc ? a.trunc : default_trunc();
    QContext ctx(parse_rat(a.q));
    Rat xi = parse_rat(a.xi);
    std::vector<Rat> beta = parse_rat_list(a.beta);
    std::vector<Rat> alpha = parse_rat_list(a.alpha);
    QLaplaceMode mode = parse_mode(a.mode);
    QLaurentSeries H = q_divide_transform(beta, alpha, xi, ctx, mode, N);

    // verify the defining relation against the exact partial-fraction tail
    QLaurentSeries rhs(q_combination_transform_fractions(beta, alpha).tail_at_infinity(N));
    QLaurentSeries lhs = (mode == QLaplaceMode::Sharp)
                             ? sigma_apply(H, 1 / ctx.q()).shift_down() * (1 / ctx.q()) -
                                   H * xi
                             : delta_apply(H, 1 / ctx.q()) * (Rat(-1) / ctx.q()) - H * xi;
    bool ok = lhs.agrees_with(rhs, N);

    res.output = json{{"q", jrat(ctx.q())},    {"xi", jrat(xi)},
                      {"mode", a.mode},        {"coefficients", jseries(H.coeffs())},
                      {"relation_ok", ok},     {"note", "entry n multiplies z^-(n+1)"}};
    if (!ok) res.exit_code = 1;
    return res;
}

struct QSlopesArgs {
    std::string op;
    std::string q = "2";
    std::string xi = "1";
};

CliResult cmd_q_slopes(const QSlopesArgs& a) {
    CliResult res;
    QDiffOp op = eval_qdiffop(parse_expr(a.op), parse_rat(a.q), parse_rat(a.xi));
    NewtonPolygon np = qdiff_newton_polygon(op);
    res.output = polygon_json(np);
    res.output["operator"] = op.to_string();
    return res;
}

struct QLemmaArgs {
    std::string alpha;
    std::string xi;
    std::string q = "2";
    std::string window = "12,12";
};

CliResult cmd_q_lemma454(const QLemmaArgs& a) {
    CliResult res;
    QContext ctx(parse_rat(a.q));
    auto win = parse_int_list(a.window);
    if (win.size() != 2) throw EvalError("--window must be M,N");
    Lemma454Result r = lemma454_solve(parse_rat(a.alpha), parse_rat(a.xi), ctx,
                                      win[0].get_si(), win[1].get_si());
    json gamma = json::object();
    for (const auto& [n, g] : r.gamma) gamma[std::to_string(n)] = jrat(g);
    res.output = json{{"solvable", r.solvable},
                      {"window_limited", r.window_limited},
                      {"exponent", r.exponent},
                      {"gamma", gamma},
                      {"verified", r.verified},
                      {"detail", r.detail}};
    if (!r.solvable) res.output["obstruction"] = jrat(r.obstruction);
    return res;
}

struct QThetaArgs {
    std::string q;
    std::string xi = "1";
    std::size_t trunc = 40;
};

CliResult cmd_q_theta(const QThetaArgs& a) {
    CliResult res;
    ThetaCheck chk = theta_bilateral_check(parse_rat(a.q), parse_rat(a.xi), a.trunc);
    res.output = json{{"pass", chk.pass},
                      {"bilateral", jrat(chk.bilateral)},
                      {"two_sided", jrat(chk.two_sided)},
                      {"gap", jrat(chk.gap)},
                      {"tail_bound", jrat(chk.tail_bound)}};
    if (!chk.pass) res.exit_code = 1;
    return res;
}

}  // namespace

CliResult run(const std::vector<std::string>& args) {
    CLI::App app{"exact Gevrey/q-series toolbox"};
    app.require_subcommand(1);
    CliResult result;

    SumPadicArgs sp;
    auto* c_sum = app.add_subcommand("sum-padic", "p-adic value of sum P(n) n!^s xi^n");
    c_sum->add_option("--term", sp.term, "summand, e.g. \"n * n!\"")->required();
    c_sum->add_option("--primes", sp.primes, "comma-separated primes")->required();
    c_sum->add_option("--prec", sp.prec, "digits of p-adic precision");
    c_sum->add_option("--xi", sp.xi, "argument xi");
    c_sum->add_option("--jobs", sp.jobs, "parallel prime evaluations");
    c_sum->callback([&] { result = cmd_sum_padic(sp); });

    std::string tel_term;
    auto* c_tel = app.add_subcommand("telescope", "decompose P(n) = (n+1)Q(n+1) - Q(n) + c");
    c_tel->add_option("--term", tel_term)->required();
    c_tel->callback([&] { result = cmd_telescope(tel_term); });

    GuessArgs ga;
    auto* c_guess = app.add_subcommand("guess", "recover an annihilating operator");
    c_guess->add_option("--series", ga.series, "coefficient expression in n")->required();
    c_guess->add_option("--trunc", ga.trunc);
    c_guess->add_option("--order", ga.order);
    c_guess->add_option("--degree", ga.degree);
    c_guess->add_option("--margin", ga.margin);
    c_guess->callback([&] { result = cmd_guess(ga); });

    std::string bt_op;
    long bt_s = -1;
    auto* c_bt = app.add_subcommand("borel-transfer", "transfer an annihilator across n!^s");
    c_bt->add_option("--op", bt_op)->required();
    c_bt->add_option("--order", bt_s, "integer Gevrey order s");
    c_bt->callback([&] { result = cmd_borel_transfer(bt_op, bt_s); });

    std::string sg_op;
    auto* c_sg = app.add_subcommand("singular", "leading coefficient and its rational roots");
    c_sg->add_option("--op", sg_op)->required();
    c_sg->callback([&] { result = cmd_singular(sg_op); });

    std::string in_op, in_xi = "0";
    auto* c_in = app.add_subcommand("indicial", "indicial polynomial and exponents");
    c_in->add_option("--op", in_op)->required();
    c_in->add_option("--xi", in_xi);
    c_in->callback([&] { result = cmd_indicial(in_op, in_xi); });

    std::string nw_op, nw_at = "0";
    auto* c_nw = app.add_subcommand("newton", "Newton polygon of a differential operator");
    c_nw->add_option("--op", nw_op)->required();
    c_nw->add_option("--at", nw_at, "0 or inf");
    c_nw->callback([&] { result = cmd_newton(nw_op, nw_at); });

    HermitePadeArgs hp;
    auto* c_hp = app.add_subcommand("hermite-pade", "simultaneous approximants");
    c_hp->add_option("--series", hp.series, "repeatable coefficient expressions")->required();
    c_hp->add_option("--trunc", hp.target, "target vanishing order N");
    c_hp->add_option("--degree", hp.degree, "degree bound D");
    c_hp->callback([&] { result = cmd_hermite_pade(hp); });

    std::string rc_series;
    std::size_t rc_trunc = 0;
    auto* c_rc = app.add_subcommand("reconstruct", "rational function from a truncation");
    c_rc->add_option("--series", rc_series)->required();
    c_rc->add_option("--trunc", rc_trunc);
    c_rc->callback([&] { result = cmd_reconstruct(rc_series, rc_trunc); });

    ProfileArgs pf;
    auto* c_pf = app.add_subcommand("profile", "arithmetic growth diagnostics");
    c_pf->add_option("--series", pf.series)->required();
    c_pf->add_option("--trunc", pf.trunc);
    c_pf->add_option("--order", pf.order_s, "Gevrey order s of the input");
    c_pf->add_option("--primes", pf.primes, "also estimate p-adic radii");
    c_pf->callback([&] { result = cmd_profile(pf); });

    std::size_t ex_trunc = 0;
    auto* c_ex = app.add_subcommand("example33", "guess + trivial-singularity pipeline");
    c_ex->add_option("--trunc", ex_trunc);
    c_ex->callback([&] { result = cmd_example33(ex_trunc); });

    auto* c_q = app.add_subcommand("q-check", "q-calculus checks");
    c_q->require_subcommand(1);

    QTransformArgs qt;
    auto* c_qt = c_q->add_subcommand("transform", "q-Laplace transform of a series");
    c_qt->add_option("--series", qt.series, "coefficient expression in n (qfac available)")
        ->required();
    c_qt->add_option("--q", qt.q);
    c_qt->add_option("--mode", qt.mode, "sharp or plus");
    c_qt->add_option("--trunc", qt.trunc);
    c_qt->callback([&] { result = cmd_q_transform(qt); });

    QDivideArgs qd;
    auto* c_qd = c_q->add_subcommand("divide", "transform of (z-xi)^{-1} F");
    c_qd->add_option("--beta", qd.beta, "beta_0,beta_1,...")->required();
    c_qd->add_option("--alpha", qd.alpha, "alpha_1,...");
    c_qd->add_option("--xi", qd.xi);
    c_qd->add_option("--q", qd.q);
    c_qd->add_option("--mode", qd.mode);
    c_qd->add_option("--trunc", qd.trunc);
    c_qd->callback([&] { result = cmd_q_divide(qd); });

    QSlopesArgs qs;
    auto* c_qs = c_q->add_subcommand("slopes", "Newton polygon at infinity");
    c_qs->add_option("--op", qs.op, "operator in z, S{...}, d{...}, q, xi")->required();
    c_qs->add_option("--q", qs.q);
    c_qs->add_option("--xi", qs.xi);
    c_qs->callback([&] { result = cmd_q_slopes(qs); });

    QLemmaArgs ql;
    auto* c_ql = c_q->add_subcommand("lemma454", "solvability of the simple-pole division");
    c_ql->add_option("--alpha", ql.alpha)->required();
    c_ql->add_option("--xi", ql.xi)->required();
    c_ql->add_option("--q", ql.q);
    c_ql->add_option("--window", ql.window, "M,N");
    c_ql->callback([&] { result = cmd_q_lemma454(ql); });

    QThetaArgs qth;
    auto* c_qth = c_q->add_subcommand("theta", "bilateral theta rearrangement check");
    c_qth->add_option("--q", qth.q, "modulus c, |c| < 1")->required();
    c_qth->add_option("--xi", qth.xi);
    c_qth->add_option("--trunc", qth.trunc);
    c_qth->callback([&] { result = cmd_q_theta(qth); });

    std::vector<const char*> argv;
    argv.push_back("gevrey");
    for (const auto& s : args) argv.push_back(s.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp& e) {
        CliResult help;
        help.diagnostics = app.help();
        help.exit_code = 0;
        return help;
    } catch (const CLI::ParseError& e) {
        CliResult err;
        err.diagnostics = std::string(e.what()) + "\n" + app.help();
        err.exit_code = 2;
        return err;
    } catch (const ExprError& e) {
        return {2, json(), std::string("expression error: ") + e.what()};
    } catch (const EvalError& e) {
        return {2, json(), std::string("evaluation error: ") + e.what()};
    } catch (const std::invalid_argument& e) {
        return {2, json(), std::string("invalid input: ") + e.what()};
    } catch (const std::domain_error& e) {
        return {2, json(), std::string("domain error: ") + e.what()};
    }
    return result;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    CliResult res = run(args);
    if (!res.output.is_null()) std::cout << res.output.dump(2) << "\n";
    if (!res.diagnostics.empty()) {
        if (res.exit_code == 0)
            std::cout << res.diagnostics << "\n";
        else
            std::cerr << res.diagnostics << "\n";
    }
    return res.exit_code;
}

}  // namespace gevrey::cli
