#include "totpos/check.hpp"
#include "totpos/completion.hpp"
#include "totpos/json_io.hpp"
#include "totpos/polya.hpp"
#include "totpos/preserver_lab.hpp"
#include "totpos/whitney.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <random>
#include <string>
#include <vector>

using namespace totpos;

namespace {

enum Exit { ok = 0, fails = 1, inconsistent = 2, usage = 3 };

struct Result {
    json doc;
    int code = ok;
};

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        auto comma = s.find(',', start);
        auto cell = s.substr(start, comma == std::string::npos ? std::string::npos : comma - start);
        cell.erase(0, cell.find_first_not_of(' '));
        cell.erase(cell.find_last_not_of(' ') + 1);
        if (cell.empty()) throw std::invalid_argument("empty item in list '" + s + "'");
        out.push_back(cell);
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    return out;
}

// Accepts rationals, decimals, sqrt(k), pi and products/quotients like 3*pi/16.
double parse_real(std::string s) {
    s.erase(std::remove(s.begin(), s.end(), ' '), s.end());
    auto slash = s.find('/');
    if (slash != std::string::npos && s.find("pi") != std::string::npos)
        return parse_real(s.substr(0, slash)) / parse_real(s.substr(slash + 1));
    auto star = s.find('*');
    if (star != std::string::npos) return parse_real(s.substr(0, star)) * parse_real(s.substr(star + 1));
    if (s == "pi") return M_PI;
    if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') return std::sqrt(parse_real(s.substr(5, s.size() - 6)));
    return parse_rational(s).get_d();
}

std::vector<double> real_list(const std::string& s) {
    std::vector<double> out;
    for (const auto& t : split(s)) out.push_back(parse_real(t));
    return out;
}

std::vector<std::size_t> placement(const std::string& s, const char* what) {
    auto v = split(s);
    if (v.size() != 2) throw std::invalid_argument(std::string(what) + " needs two 1-based indices");
    std::vector<std::size_t> out;
    for (const auto& t : v) {
        long k = std::stol(t);
        if (k < 1) throw std::invalid_argument(std::string(what) + " indices are 1-based");
        out.push_back(static_cast<std::size_t>(k - 1));
    }
    return out;
}

json matrix_json(const Matrix<double>& m) { return totpos::matrix_json(RationalMatrix(m)); }

json rational_function_json(const RationalFunction<Rational>& r) {
    json p = json::array(), q = json::array();
    for (const auto& c : r.p.coeffs()) p.push_back(to_string(c));
    for (const auto& c : r.q.coeffs()) q.push_back(to_string(c));
    return {{"numerator", p}, {"denominator", q}, {"text", "(" + r.p.str("s") + ") / (" + r.q.str("s") + ")"},
            {"strip", {r.strip_lo, std::isinf(r.strip_hi) ? json(nullptr) : json(r.strip_hi)}}};
}

json rational_function_json(const RationalFunction<double>& r) {
    json p = json::array(), q = json::array();
    for (double c : r.p.coeffs()) p.push_back(c);
    for (double c : r.q.coeffs()) q.push_back(c);
    return {{"numerator", p}, {"denominator", q},
            {"strip", {r.strip_lo, std::isinf(r.strip_hi) ? json(nullptr) : json(r.strip_hi)}}};
}

struct FamilyArgs {
    std::string family = "M";
    std::string alpha = "1";
    std::string a = "1,2,5";
    std::string d = "1";
    double gamma = 1.0;

    PffFamily make() const {
        if (family == "lambda") return PffFamily::lambda(parse_rational(d));
        if (family == "phi") return PffFamily::phi();
        if (family == "gauss") return PffFamily::gauss_density(gamma);
        if (family == "M") return PffFamily::m_alpha(parse_rational(alpha));
        if (family == "N") {
            auto items = split(a);
            if (items.size() != 3) throw std::invalid_argument("--a needs three exponents");
            try {
                return PffFamily::one_sided_n(parse_rational(items[0]), parse_rational(items[1]), parse_rational(items[2]));
            } catch (const std::invalid_argument&) {
                return PffFamily::one_sided_n(parse_real(items[0]), parse_real(items[1]), parse_real(items[2]));
            }
        }
        throw std::invalid_argument("unknown family '" + family + "' (lambda, phi, gauss, M, N)");
    }
    void add(CLI::App* app) {
        app->add_option("--family", family, "lambda | phi | gauss | M | N");
        app->add_option("--alpha", alpha, "M_alpha parameter");
        app->add_option("--a", a, "OneSidedN exponents a1,a2,a3");
        app->add_option("--d", d, "lambda_d value at 0");
        app->add_option("--gamma", gamma, "Gaussian parameter");
    }
};

Result run_check(const RationalMatrix& m, std::size_t p, bool strict, std::optional<double> tol, const std::string& gate) {
    CheckOptions opt;
    opt.tol = tol;
    if (gate == "certified") opt.gate = FloatGate::certified;
    else if (gate != "hadamard") throw std::invalid_argument("--gate must be hadamard or certified");
    auto v = check(m, p, strict, opt);
    return {verdict_json(v), v.holds() ? ok : fails};
}

KernelGrid builtin_kernel(const std::string& name, std::size_t size) {
    if (size < 1) throw std::invalid_argument("--grid must be positive");
    std::vector<double> x(size);
    for (std::size_t i = 0; i < size; ++i) x[i] = static_cast<double>(i);
    if (name == "zero") return KernelGrid::sample(x, x, [](double, double) { return 0.0; });
    if (name == "step") return KernelGrid::sample(x, x, [](double s, double t) { return s >= t ? 1.0 : 0.0; });
    if (name == "ones") return KernelGrid::sample(x, x, [](double, double) { return 1.0; });
    throw std::invalid_argument("unknown kernel '" + name + "' (zero, step, ones)");
}

KernelGrid kernel_from_json(const std::string& source) {
    const auto text = source.find_first_not_of(" \t\n") != std::string::npos && source[source.find_first_not_of(" \t\n")] == '{'
                          ? source
                          : read_text(source);
    auto j = parse_json(text);
    try {
        auto values = j.at("values").get<std::vector<std::vector<double>>>();
        return KernelGrid(j.at("x").get<std::vector<double>>(), j.at("y").get<std::vector<double>>(),
                          Matrix<double>::from_rows(values));
    } catch (const json::exception& e) {
        throw InputError(1, 1, std::string("kernel document needs x, y, values: ") + e.what());
    }
}

std::function<double(double, double)> approx_kernel(const std::string& name) {
    if (name == "ones") return [](double, double) { return 1.0; };
    if (name == "step") return [](double, double y) { return y >= 0 ? 1.0 : 0.0; };
    throw std::invalid_argument("unknown kernel '" + name + "' (ones, step)");
}

json embedding_json(const VandermondeEmbedding& e) {
    return {{"branch", e.branch},
            {"lambda", e.lambda()},
            {"log_lambda", e.log_lambda},
            {"u", e.u},
            {"exponents", e.exponents},
            {"flipped", e.flipped},
            {"alpha", e.alpha},
            {"beta", e.beta},
            {"phi_x", {{"slope", e.phi_x.slope}, {"intercept", e.phi_x.intercept}}},
            {"phi_y", {{"slope", e.phi_y.slope}, {"intercept", e.phi_y.intercept}}},
            {"shape", {e.m, e.n}},
            {"rows", {e.i1 + 1, e.i2 + 1}},
            {"cols", {e.j1 + 1, e.j2 + 1}}};
}

double round_trip_error(const VandermondeEmbedding& e, const Matrix<double>& a) {
    double err = 0.0;
    const std::size_t r[2] = {e.i1, e.i2}, c[2] = {e.j1, e.j2};
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) err = std::max(err, std::abs(e.matrix(r[i], c[j]) - a(i, j)) / a(i, j));
    return err;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Total positivity toolkit"};
    app.require_subcommand(1, 1);
    std::string out_path;
    unsigned seed = 1;
    app.add_option("--out", out_path, "write the report here instead of stdout");
    app.add_option("--seed", seed, "seed for randomized runs");

    std::string input;
    std::size_t order = 0;
    bool strict = false;
    std::optional<double> tol;
    std::string gate = "hadamard";
    std::size_t grid = 0;
    std::function<Result()> action;

    auto* c_check = app.add_subcommand("check", "TN_p / TP_p verdict for a matrix");
    c_check->add_option("input", input, "matrix JSON/CSV path or inline JSON")->required();
    c_check->add_option("-p,--order", order, "minor order")->required();
    c_check->add_flag("--strict", strict, "test TP_p instead of TN_p");
    c_check->add_option("--tol", tol, "zero tolerance for float minors");
    c_check->add_option("--gate", gate, "float gate: hadamard | certified");
    c_check->callback([&] { action = [&] { return run_check(load_matrix(input), order, strict, tol, gate); }; });

    auto* c_fekete = app.add_subcommand("fekete", "TP verdict from contiguous minors");
    c_fekete->add_option("input", input, "matrix JSON/CSV path or inline JSON")->required();
    c_fekete->add_option("--tol", tol, "zero tolerance for float minors");
    c_fekete->callback([&] {
        action = [&] {
            auto v = fekete_tp(load_matrix(input), tol);
            return Result{verdict_json(v), v.holds() ? ok : fails};
        };
    });

    std::string moments;
    bool float_moments = false;
    auto* c_hankel = app.add_subcommand("hankel", "Hankel test for a Stieltjes moment sequence");
    c_hankel->add_option("--moments", moments, "s_0,s_1,...")->required();
    c_hankel->add_flag("--strict", strict, "positive definite instead of semidefinite");
    c_hankel->add_flag("--float", float_moments, "treat moments as floats");
    c_hankel->add_option("--tol", tol, "float tolerance");
    c_hankel->callback([&] {
        action = [&] {
            auto items = split(moments);
            Verdict v;
            if (float_moments) {
                std::vector<double> s;
                for (const auto& t : items) s.push_back(parse_real(t));
                v = hankel_check(s, strict, tol.value_or(default_float_tol));
            } else {
                std::vector<Rational> s;
                for (const auto& t : items) s.push_back(parse_rational(t));
                v = hankel_check(s, strict);
            }
            return Result{verdict_json(v), v.holds() ? ok : fails};
        };
    });

    double alpha = 1.0, scale = 1.0;
    std::size_t dim = 3;
    bool symmetric = false;
    auto* c_pres = app.add_subcommand("preserver", "test x -> c x^alpha against the counterexample families");
    c_pres->add_option("--alpha", alpha, "power")->required();
    c_pres->add_option("--c", scale, "positive multiplier");
    c_pres->add_option("--dim", dim, "matrix dimension 2..5")->required();
    c_pres->add_flag("--symmetric", symmetric, "restrict to symmetric matrices");
    c_pres->add_option("--grid", grid, "points per log-spaced grid axis (default 25)");
    c_pres->callback([&] {
        action = [&] {
            auto g = GridSpec::defaults();
            if (grid) g.eps = g.x = g.y = log_grid(-4, 0, grid);
            auto r = test_power_preserver(alpha, scale, dim, symmetric, g);
            json fams = json::array();
            for (auto f : r.families) fams.push_back(family_name(f));
            json doc{{"transform", r.transform.describe()},
                     {"d", r.d},
                     {"symmetric", r.symmetric},
                     {"expected", bucket_name(r.expected.bucket)},
                     {"rule", r.expected.rule},
                     {"empirical", r.empirical()},
                     {"families", fams},
                     {"points_tested", r.points_tested}};
            if (r.witness) {
                doc["summary"] = "refuted by " + std::string(family_name(r.witness->family.tag));
                doc["witness"] = {{"family", describe(r.witness->family)},
                                  {"rows", index_json(r.witness->minor.rows)},
                                  {"cols", index_json(r.witness->minor.cols)},
                                  {"value", scalar_json(r.witness->value)},
                                  {"ambiguous", r.witness->ambiguous}};
            } else {
                doc["summary"] = "no counterexample on the grid";
                doc["witness"] = nullptr;
            }
            doc["consistent"] = r.consistent();
            return Result{doc, r.consistent() ? ok : inconsistent};
        };
    });

    auto* c_whit = app.add_subcommand("whitney", "Gaussian-convolution TP approximation");
    c_whit->require_subcommand(1, 1);
    std::string kernel = "step", kernel_file, mode = "fc", points = "-1,-0.5,0,0.5,1", csv_path, xs = "0,0.5,-0.25";
    double kappa = 1.0;
    std::size_t res = 5, rows_d = 2;
    auto* w_lift = c_whit->add_subcommand("lift", "delta-perturbed convolution lift to TP_p");
    w_lift->add_option("--kernel", kernel, "zero | step | ones on 0..grid-1");
    w_lift->add_option("--input", kernel_file, "kernel JSON {x, y, values}");
    w_lift->add_option("--grid", grid, "builtin kernel grid size (default 4)");
    w_lift->add_option("-p,--order", order, "target order")->required();
    w_lift->add_option("--kappa", kappa, "Gaussian parameter");
    w_lift->callback([&] {
        action = [&] {
            auto k = kernel_file.empty() ? builtin_kernel(kernel, grid ? grid : 4) : kernel_from_json(kernel_file);
            ConvolutionPlan plan{kappa, k.x(), k.y()};
            auto r = tp_lift(k, order, plan);
            CheckOptions opt;
            opt.gate = FloatGate::certified;
            opt.entry_error = r.entry_error;
            auto v = check(r.kernel.matrix(), std::min({order, k.x().size(), k.y().size()}), true, opt);
            json doc{{"rank", r.rank}, {"rounds", r.rounds}, {"entry_error", r.entry_error},
                     {"kernel", matrix_json(r.kernel.matrix())}, {"verdict", verdict_json(v)}};
            return Result{doc, v.holds() ? ok : fails};
        };
    });
    auto* w_approx = c_whit->add_subcommand("approx", "scaled TP_p approximation at resolution n");
    w_approx->add_option("--kernel", kernel, "ones | step (1 if y >= 0)");
    w_approx->add_option("--mode", mode, "fc | cc");
    w_approx->add_option("--n", res, "resolution");
    w_approx->add_option("-p,--order", order, "target order")->required();
    w_approx->add_option("--points", points, "continuity points");
    w_approx->add_option("--d", rows_d, "size of the finite factor in fc mode");
    w_approx->add_option("--csv", csv_path, "per-point CSV output");
    w_approx->callback([&] {
        action = [&] {
            if (mode != "fc" && mode != "cc") throw std::invalid_argument("--mode must be fc or cc");
            auto r = approximate(approx_kernel(kernel), order, res, mode == "fc" ? ApproxMode::fc : ApproxMode::cc,
                                 real_list(points), rows_d);
            json pts = json::array();
            for (const auto& p : r.points)
                pts.push_back({{"x", p.x}, {"y", p.y}, {"value", p.value}, {"target", p.target}, {"error", p.error}});
            if (!csv_path.empty()) {
                std::ofstream csv(csv_path);
                csv << "x,y,n,value,target,error\n";
                csv.precision(17);
                for (const auto& p : r.points)
                    csv << p.x << ',' << p.y << ',' << r.n << ',' << p.value << ',' << p.target << ',' << p.error << '\n';
            }
            json doc{{"mode", mode_name(r.mode)}, {"n", r.n},        {"p", r.p},
                     {"d", r.d},                  {"rank", r.rank},  {"rounds", r.rounds},
                     {"nodes", r.nodes},          {"scale", r.scale}, {"max_error", r.max_error},
                     {"points", pts},             {"verdict", verdict_json(r.verdict)}};
            return Result{doc, r.verdict.holds() ? ok : fails};
        };
    });
    auto* w_gauss = c_whit->add_subcommand("gauss", "Gaussian product factorization check");
    w_gauss->add_option("--kappa", kappa, "Gaussian parameter");
    w_gauss->add_option("--xs", xs, "x_0,...,x_m");
    w_gauss->callback([&] {
        action = [&] {
            auto g = gaussian_product_identity(kappa, real_list(xs));
            json doc{{"mu", g.mu},   {"V", matrix_json(g.v)}, {"det_V", g.det_v},
                     {"lhs", g.lhs}, {"rhs", g.rhs},          {"rel_error", g.rel_error}};
            return Result{doc, g.rel_error <= 1e-12 ? ok : fails};
        };
    });

    std::string shape = "5,7", rows_at = "2,4", cols_at = "3,6";
    std::size_t random_trials = 0;
    auto* c_e2 = app.add_subcommand("embed2x2", "embed a TP 2x2 matrix in a generalized Vandermonde matrix");
    c_e2->add_option("input", input, "2x2 matrix JSON path or inline JSON");
    c_e2->add_option("--shape", shape, "m,n");
    c_e2->add_option("--rows", rows_at, "1-based placement rows i1,i2");
    c_e2->add_option("--cols", cols_at, "1-based placement columns j1,j2");
    c_e2->add_option("--random", random_trials, "embed this many random TP matrices instead (uses --seed)");
    c_e2->callback([&] {
        action = [&] {
            auto sh = split(shape);
            if (sh.size() != 2) throw std::invalid_argument("--shape needs m,n");
            const std::size_t m = std::stoul(sh[0]), n = std::stoul(sh[1]);
            auto r = placement(rows_at, "--rows"), c = placement(cols_at, "--cols");
            if (random_trials) {
                std::mt19937_64 rng(seed);
                std::uniform_real_distribution<double> logu(std::log(0.1), std::log(10.0));
                std::size_t certified = 0;
                double worst = 0.0;
                for (std::size_t t = 0; t < random_trials;) {
                    Matrix<double> a{{std::exp(logu(rng)), std::exp(logu(rng))}, {std::exp(logu(rng)), std::exp(logu(rng))}};
                    if (!(a(0, 0) * a(1, 1) > a(0, 1) * a(1, 0))) continue;
                    ++t;
                    auto e = embed_tp_2x2(a, m, n, r[0], r[1], c[0], c[1]);
                    worst = std::max(worst, round_trip_error(e, a));
                    certified += certify_tp(e.matrix).holds();
                }
                json doc{{"trials", random_trials}, {"seed", seed}, {"certified_tp", certified}, {"max_round_trip_error", worst}};
                return Result{doc, certified == random_trials && worst < 1e-12 ? ok : fails};
            }
            if (input.empty()) throw std::invalid_argument("embed2x2 needs an input matrix or --random");
            auto a = load_matrix(input);
            auto e = embed_tp_2x2(a, m, n, r[0], r[1], c[0], c[1]);
            auto v = certify_tp(e.matrix);
            const double err = round_trip_error(e, a.to_double());
            json doc = embedding_json(e);
            doc["matrix"] = matrix_json(e.matrix);
            doc["round_trip_error"] = err;
            doc["verdict"] = verdict_json(v);
            return Result{doc, v.holds() && err < 1e-12 ? ok : fails};
        };
    });

    double x1 = 0.0, x2 = 1.0;
    std::string sym_grid = "-0.5,0,0.5,1,1.5";
    auto* c_es = app.add_subcommand("embedsym", "embed a symmetric TP 2x2 matrix in a Hankel kernel");
    c_es->add_option("input", input, "2x2 matrix JSON path or inline JSON")->required();
    c_es->add_option("--x1", x1, "first placement point");
    c_es->add_option("--x2", x2, "second placement point");
    c_es->add_option("--points", sym_grid, "sampling grid for the TP certificate");
    c_es->callback([&] {
        action = [&] {
            auto a = load_matrix(input);
            auto h = embed_sym_2x2(a, x1, x2);
            auto sampled = h.sample(real_list(sym_grid));
            auto v = certify_tp(sampled);
            auto d = a.to_double();
            double err = 0.0;
            const double at[2] = {x1, x2};
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) err = std::max(err, std::abs(h(at[i], at[j]) - d(i, j)) / d(i, j));
            json doc{{"a", h.a}, {"alpha", h.alpha}, {"beta", h.beta}, {"x1", h.x1}, {"x2", h.x2},
                     {"round_trip_error", err}, {"grid", real_list(sym_grid)}, {"matrix", matrix_json(sampled)},
                     {"verdict", verdict_json(v)}};
            return Result{doc, v.holds() && err < 1e-12 ? ok : fails};
        };
    });

    FamilyArgs fam;
    unsigned power = 2;
    auto* c_pff = app.add_subcommand("pff", "Polya frequency functions");
    c_pff->require_subcommand(1, 1);
    auto* p_lap = c_pff->add_subcommand("laplace", "bilateral Laplace transform as p/q");
    fam.add(p_lap);
    p_lap->callback([&] {
        action = [&] {
            auto f = fam.make();
            json doc{{"family", f.name()}};
            if (f.type == PffFamily::Type::one_sided_n && !f.a_exact) {
                doc["exact"] = false;
                doc["transform"] = rational_function_json(laplace_float(f));
            } else {
                doc["exact"] = true;
                doc["transform"] = rational_function_json(laplace(f));
            }
            return Result{doc, ok};
        };
    });
    auto* p_obs = c_pff->add_subcommand("obstruct", "is the n-th power still a Polya frequency function?");
    fam.add(p_obs);
    p_obs->add_option("--power", power, "n >= 1");
    p_obs->callback([&] {
        action = [&] {
            auto f = fam.make();
            auto o = power_obstruction(f, power);
            json roots = json::array();
            for (const auto& r : o.roots) roots.push_back({{"root", r.root}, {"p_value", r.value}, {"nonzero", r.nonzero}});
            json doc{{"family", f.name()},
                     {"power", o.n},
                     {"verdict", verdict_name(o.verdict)},
                     {"exact", o.exact},
                     {"numerator_degree", o.p_degree},
                     {"coprime", o.coprime},
                     {"certificate", o.certificate},
                     {"roots", roots}};
            doc["transform"] = o.exact ? rational_function_json(o.exact_fn) : rational_function_json(o.float_fn);
            if (o.gamma) doc["gamma"] = {{"value", *o.gamma}, {"product_formula", *o.gamma_formula}};
            if (o.end_ratio) doc["end_ratio"] = {{"value", *o.end_ratio}, {"product_formula", *o.end_ratio_formula}};
            if (o.verdict == PowerVerdict::compatible) return Result{doc, ok};
            return Result{doc, o.certificate ? fails : inconsistent};
        };
    });
    unsigned big_n = 1;
    std::string window = "-4,4";
    auto* p_disc = c_pff->add_subcommand("discretize", "samples f(n/N) on a window");
    fam.add(p_disc);
    p_disc->add_option("--N", big_n, "sampling denominator");
    p_disc->add_option("--window", window, "lo,hi");
    p_disc->add_option("--power", power, "entrywise power of the samples")->default_val(1);
    p_disc->callback([&] {
        action = [&] {
            auto w = split(window);
            if (w.size() != 2) throw std::invalid_argument("--window needs lo,hi");
            auto s = discretize_pff(fam.make(), big_n, std::stol(w[0]), std::stol(w[1]), power);
            return Result{json{{"offset", s.offset}, {"values", s.f}}, ok};
        };
    });

    std::string coeffs;
    long offset = 0;
    std::size_t win = 0;
    auto* c_seq = app.add_subcommand("pfseq", "Polya frequency sequences");
    c_seq->require_subcommand(1, 1);
    auto* s_check = c_seq->add_subcommand("check", "Toeplitz minor check and generating-polynomial roots");
    s_check->add_option("--coeffs", coeffs, "a_0,a_1,...")->required();
    s_check->add_option("-p,--order", order, "minor order")->required();
    s_check->add_option("--offset", offset, "index of the first coefficient");
    s_check->add_option("--window", win, "Toeplitz window (default: order + length)");
    s_check->callback([&] {
        action = [&] {
            std::vector<Rational> q;
            std::vector<double> f;
            bool exact = true;
            for (const auto& t : split(coeffs)) {
                try {
                    q.push_back(parse_rational(t));
                    f.push_back(q.back().get_d());
                } catch (const std::invalid_argument&) {
                    exact = false;
                    f.push_back(parse_real(t));
                }
            }
            auto seq = exact ? PfSequence::exact(q, offset) : PfSequence::floating(f, offset);
            const std::size_t w = win ? win : order + seq.size();
            auto v = pf_sequence_check(seq, order, w);
            json doc{{"window", w}, {"toeplitz", verdict_json(v)}};
            if (exact) {
                auto g = generating_poly_pf_check(q);
                doc["generating_polynomial"] = {{"pass", g.pass},
                                                {"reason", g.reason},
                                                {"degree", g.degree},
                                                {"zero_multiplicity", g.zero_multiplicity},
                                                {"distinct_roots", g.distinct_roots},
                                                {"distinct_real_roots", g.distinct_real_roots},
                                                {"distinct_negative_roots", g.distinct_negative_roots}};
            }
            return Result{doc, v.holds() ? ok : fails};
        };
    });

    std::size_t jn = 5;
    std::string theta = "pi/10", jalpha = "1";
    auto* c_jain = app.add_subcommand("jain", "Hadamard powers of the cosine Toeplitz matrix");
    c_jain->add_option("--n", jn, "size");
    c_jain->add_option("--theta", theta, "angle, e.g. pi/10");
    c_jain->add_option("--alpha", jalpha, "Hadamard power");
    c_jain->callback([&] {
        action = [&] {
            auto r = cosine_jain(jn, parse_real(theta), parse_real(jalpha));
            json doc{{"n", jn},
                     {"theta", parse_real(theta)},
                     {"alpha", parse_real(jalpha)},
                     {"min_eigenvalue", r.min_eigenvalue},
                     {"psd_tol", r.psd_tol},
                     {"psd", r.psd},
                     {"tn", verdict_json(r.tn)},
                     {"max_rank2_error", r.max_rank2_error},
                     {"max_abs_minor3", r.max_abs_minor3},
                     {"min_minor2", std::isinf(r.min_minor2) ? json(nullptr) : json(r.min_minor2)},
                     {"matrix", matrix_json(r.matrix)}};
            return Result{doc, r.psd ? ok : fails};
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return usage;
    }

    Result result;
    try {
        result = action();
    } catch (const InputError& e) {
        const bool inline_doc = input.empty() || input.find_first_not_of(" \t\r\n") == input.find('{');
        std::cerr << e.diagnostic(inline_doc ? "<inline>" : input) << '\n';
        return usage;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    } catch (const std::domain_error& e) {
        result = {json{{"status", "FAIL"}, {"error", e.what()}}, fails};
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return usage;
    }

    const std::string text = result.doc.dump(2) + "\n";
    if (out_path.empty()) {
        std::cout << text;
    } else {
        std::ofstream out(out_path);
        if (!out) {
            std::cerr << "error: cannot write " << out_path << '\n';
            return usage;
        }
        out << text;
    }
    return result.code;
}
