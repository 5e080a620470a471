// mathieu: command-line front end.
#include "mathieu/contfrac.hpp"
#include "mathieu/doublepoint.hpp"
#include "mathieu/eigenfunction.hpp"
#include "mathieu/march.hpp"
#include "mathieu/operator.hpp"
#include "mathieu/puiseux.hpp"

#include "CLI11.hpp"
#include "json.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

using namespace mathieu;

namespace {

enum Exit { OK = 0, NUMERIC = 1, AMBIGUOUS = 2, BAD_INPUT = 3, IO = 4 };

struct RunConfig {
    int digits = 16;
    double tol = 1e-12;
    int dim = 0;
    std::string format = "csv";
    std::string output;
    std::string backend = "auto";

    PrecisionContext ctx() const {
        PrecisionContext c = PrecisionContext::for_digits(digits);
        c.tol = tol;
        c.validate();
        return c;
    }
};

// ---------------------------------------------------------------------------
// records and output

struct Record {
    std::vector<std::string> keys, values;
    std::vector<bool> numeric;

    void text(const std::string& k, const std::string& v) {
        keys.push_back(k);
        values.push_back(v);
        numeric.push_back(false);
    }
    void integer(const std::string& k, long v) {
        keys.push_back(k);
        values.push_back(std::to_string(v));
        numeric.push_back(true);
    }
    template <class R>
    void real(const std::string& k, const R& v, int digits) {
        keys.push_back(k);
        if constexpr (std::is_same_v<R, double>) {
            char buf[40];
            std::snprintf(buf, sizeof buf, "%.17g", v);
            values.push_back(buf);
        } else {
            values.push_back(RealTraits<R>::to_string(v, digits));
        }
        numeric.push_back(std::is_same_v<R, double>);
    }
    template <class R>
    void cplx(const std::string& k, const Complex<R>& z, int digits) {
        real(k + "_re", z.re, digits);
        real(k + "_im", z.im, digits);
    }
};

class Writer {
public:
    explicit Writer(const RunConfig& cfg) : fmt_(cfg.format) {
        if (!cfg.output.empty()) {
            file_.open(cfg.output);
            if (!file_) throw std::runtime_error("cannot open output file " + cfg.output);
        }
    }
    void write(const Record& r) {
        std::ostream& os = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
        if (fmt_ == "json") {
            nlohmann::ordered_json j;
            for (std::size_t i = 0; i < r.keys.size(); ++i) {
                if (r.numeric[i])
                    j[r.keys[i]] = nlohmann::ordered_json::parse(r.values[i]);
                else
                    j[r.keys[i]] = r.values[i];
            }
            os << j.dump() << "\n";
            return;
        }
        if (!header_) {
            os << join(r.keys) << "\n";
            header_ = true;
        }
        os << join(r.values) << "\n";
    }
    void raw(const std::string& s) {
        std::ostream& os = file_.is_open() ? static_cast<std::ostream&>(file_) : std::cout;
        os << s;
    }

private:
    static std::string join(const std::vector<std::string>& v) {
        std::string s;
        for (std::size_t i = 0; i < v.size(); ++i) {
            if (i) s += ",";
            if (v[i].find_first_of(",\"") != std::string::npos) {
                std::string e = "\"";
                for (char c : v[i]) e += c == '"' ? std::string("\"\"") : std::string(1, c);
                s += e + "\"";
            } else {
                s += v[i];
            }
        }
        return s;
    }
    std::string fmt_;
    std::ofstream file_;
    bool header_ = false;
};

// ---------------------------------------------------------------------------
// parsing

std::string trim(std::string s) {
    auto b = s.find_first_not_of(" \t");
    auto e = s.find_last_not_of(" \t");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(trim(item));
    return out;
}

// Real literals: 1.5, -2, 29/20, pi, 2pi, pi/4, 3*pi/2, ln2, ln3.
template <class R>
R parse_real(std::string s) {
    s = trim(s);
    if (s.empty()) throw DomainError("empty number");
    bool neg = false;
    if (s[0] == '-' || s[0] == '+') {
        neg = s[0] == '-';
        s = s.substr(1);
    }
    R v;
    auto pipos = s.find("pi");
    if (s.rfind("ln", 0) == 0) {
        v = log(parse_real<R>(s.substr(2)));
    } else if (pipos != std::string::npos) {
        std::string pre = s.substr(0, pipos), post = s.substr(pipos + 2);
        if (!pre.empty() && pre.back() == '*') pre.pop_back();
        v = real_pi<R>();
        if (!pre.empty()) v = v * RealTraits<R>::from_string(pre);
        if (!post.empty()) {
            if (post[0] != '/') throw DomainError("cannot parse number: " + s);
            v = v / RealTraits<R>::from_string(post.substr(1));
        }
    } else if (auto slash = s.find('/'); slash != std::string::npos) {
        v = parse_real<R>(s.substr(0, slash)) / parse_real<R>(s.substr(slash + 1));
    } else {
        std::size_t used = 0;
        (void)std::stod(s, &used);
        if (used != s.size()) throw DomainError("cannot parse number: " + s);
        v = RealTraits<R>::from_string(s);
    }
    return neg ? R(-v) : v;
}

// "re,im", "1.5i", "-2i", "3"
template <class R>
Complex<R> parse_complex(const std::string& text) {
    std::string s = trim(text);
    auto comma = s.find(',');
    if (comma != std::string::npos) return Complex<R>(parse_real<R>(s.substr(0, comma)), parse_real<R>(s.substr(comma + 1)));
    if (!s.empty() && (s.back() == 'i' || s.back() == 'j')) {
        std::string m = s.substr(0, s.size() - 1);
        if (m.empty() || m == "+") return Complex<R>(R(0), R(1));
        if (m == "-") return Complex<R>(R(0), R(-1));
        return Complex<R>(R(0), parse_real<R>(m));
    }
    return Complex<R>(parse_real<R>(s));
}

// "ce 6", "se 1", or an explicit class name with an order.
EigenClass parse_family(const std::string& fam, int order) {
    std::string f = fam;
    for (auto& c : f) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    EigenClass cls;
    if (f == "ce" || f == "a")
        cls = class_for(true, order);
    else if (f == "se" || f == "b")
        cls = class_for(false, order);
    else
        cls = parse_class(fam);
    if (!order_matches(cls, order)) throw DomainError("order " + std::to_string(order) + " does not belong to " + class_name(cls));
    return cls;
}

std::string label_of(EigenClass cls, int order) { return std::string(is_cosine(cls) ? "ce_" : "se_") + std::to_string(order); }

template <class R>
std::vector<R> parse_points(const std::string& list, const std::string& grid) {
    std::vector<R> xs;
    if (!grid.empty()) {
        auto p = split(grid, ':');
        if (p.size() != 3) throw DomainError("grid must be x0:x1:n");
        R x0 = parse_real<R>(p[0]), x1 = parse_real<R>(p[1]);
        int n = std::stoi(p[2]);
        if (n < 1) throw DomainError("grid needs n >= 1");
        for (int i = 0; i < n; ++i) xs.push_back(n == 1 ? x0 : x0 + (x1 - x0) * R(i) / R(n - 1));
    }
    if (!list.empty())
        for (auto& t : split(list, ';')) xs.push_back(parse_real<R>(t));
    return xs;
}

template <class F>
decltype(auto) dispatch(const RunConfig& cfg, F&& f) {
    if (cfg.backend == "auto") return with_backend(cfg.digits, std::forward<F>(f));
    if (cfg.backend == "double") return f.template operator()<double>();
    if (cfg.backend == "dd") return f.template operator()<DoubleDouble>();
    if (cfg.backend == "mpfr") {
        ScopedDigits guard(cfg.digits + 8);
        return f.template operator()<BigFloat>();
    }
    throw DomainError("unknown backend " + cfg.backend + " (auto|double|dd|mpfr)");
}

// Double-point selectors: MG, row:K (1-based catalog row), or a seed.
struct DoubleSelector {
    std::string name;
    std::string seed_a, seed_q, cls = "CE_EVEN";
};

template <class R>
DoublePoint<R> resolve_double(const DoubleSelector& sel, const PrecisionContext& ctx) {
    using C = Complex<R>;
    if (!sel.seed_a.empty()) {
        C q = parse_complex<R>(sel.seed_q);
        if (q.re == R(0) && q.im == R(0)) throw DomainError("q = 0 is excluded: eigenvalues are simple there");
        return newton2d(parse_class(sel.cls), parse_complex<R>(sel.seed_a), q, ctx);
    }
    std::string n = sel.name;
    for (auto& c : n) c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (n == "MG") return newton2d(EigenClass::CE_EVEN, C(R(21) / R(10)), C(R(0), R(3) / R(2)), ctx);
    if (n.rfind("ROW:", 0) == 0) {
        auto seeds = load_catalog(default_catalog_path());
        int k = std::stoi(n.substr(4));
        if (k < 1 || k > static_cast<int>(seeds.size())) throw DomainError("catalog row out of range");
        const auto& s = seeds[k - 1];
        auto dp = newton2d(class_of_m_type(s.m_type), C(R(s.a.real()), R(s.a.imag())), C(R(s.q.real()), R(s.q.imag())), ctx);
        dp.m_type = s.m_type;
        return dp;
    }
    throw DomainError("unknown double point selector '" + sel.name + "' (MG, row:K, or --seed)");
}

// Built-in test functions on the real line.
template <class R>
std::function<Complex<R>(const R&)> demo_function(const std::string& name) {
    using std::cos;
    using std::exp;
    if (name == "demo:expcos") return [](const R& z) { return Complex<R>(exp(cos(R(2) * z)) * cos(R(6) * z)); };
    if (name == "demo:cos6") return [](const R& z) { return Complex<R>(cos(R(6) * z)); };
    throw DomainError("unknown function " + name + " (demo:expcos, demo:cos6)");
}

// ---------------------------------------------------------------------------
// commands

struct EigArgs {
    std::string family;
    int order = 0;
    std::string q = "0";
    std::string method = "continuation";
};

int cmd_eig(const RunConfig& cfg, const EigArgs& args) {
    EigenClass cls = parse_family(args.family, args.order);
    PrecisionContext ctx = cfg.ctx();
    Writer out(cfg);
    dispatch(cfg, [&]<class R>() {
        using C = Complex<R>;
        C q = parse_complex<R>(args.q);
        Record r;
        r.text("label", label_of(cls, args.order));
        r.text("class", class_name(cls));
        r.cplx("q", q, cfg.digits);
        C a;
        double residual = 0;
        std::string method = args.method;
        if (q.re == R(0) && q.im == R(0)) {
            a = C(R(args.order) * R(args.order));
            method = "exact";
        } else if (args.method == "matrix") {
            MatrixLabelOptions mo;
            mo.dim = cfg.dim;
            auto ev = eigenvalues_matrix(cls, args.order, q, ctx, mo);
            a = ev.back().value;
            auto nr = eigenvalue_newton(cls, args.order, q, a, ctx);
            residual = to_double(abs(nr.T));
        } else if (args.method == "continuation") {
            ContinuationResult<R> res;
            try {
                res = eigenvalue_continuation(cls, args.order, q, ctx);
            } catch (const ConvergenceError& e) {
                throw LabelAmbiguity("continuation of " + label_of(cls, args.order) +
                                     " from q = 0 stalls; the straight path meets a double point (" + e.what() + ")");
            }
            if (res.at_double)
                throw LabelAmbiguity("q is at a double point of " + label_of(cls, args.order) +
                                     "; the label is not defined there");
            a = res.a;
            residual = to_double(abs(t_eval(cls, a, q, ctx, 0, TForm::Numerator).T));
        } else {
            throw DomainError("unknown method " + args.method + " (continuation|matrix)");
        }
        r.cplx("a", a, cfg.digits);
        r.text("method", method);
        r.real("residual", residual, 3);
        r.text("backend", RealTraits<R>::name);
        out.write(r);
        return 0;
    });
    return OK;
}

struct DoubleArgs {
    std::vector<std::string> seed;  // a q
    std::string cls = "CE_EVEN";
    bool catalog = false;
    std::string catalog_path;
    std::string select;
};

template <class R>
void double_record(Record& r, const DoublePoint<R>& dp, int digits) {
    r.integer("m_type", dp.m_type);
    r.text("class", class_name(dp.cls));
    r.cplx("q_star", dp.q_star, digits);
    r.cplx("a_star", dp.a_star, digits);
    r.real("res_T", dp.res_T, 3);
    r.real("res_Ta", dp.res_Ta, 3);
    r.real("abs_Taa", dp.abs_Taa, 6);
    r.integer("iterations", dp.iterations);
}

int cmd_double(const RunConfig& cfg, const DoubleArgs& args) {
    PrecisionContext ctx = cfg.ctx();
    Writer out(cfg);
    if (args.catalog) {
        auto seeds = load_catalog(args.catalog_path.empty() ? default_catalog_path() : args.catalog_path);
        int failures = dispatch(cfg, [&]<class R>() {
            int bad = 0;
            auto rows = catalog_verify<R>(seeds, ctx);
            for (std::size_t i = 0; i < rows.size(); ++i) {
                Record r;
                r.integer("row", static_cast<long>(i + 1));
                DoublePoint<R> dp = rows[i].dp;
                dp.m_type = rows[i].seed.m_type;
                dp.cls = class_of_m_type(rows[i].seed.m_type);
                double_record(r, dp, cfg.digits);
                r.text("status", rows[i].converged ? (rows[i].agrees ? "ok" : "disagrees") : "failed");
                r.text("error", rows[i].error);
                if (!rows[i].converged || !rows[i].agrees) ++bad;
                out.write(r);
            }
            return bad;
        });
        if (failures) std::cerr << failures << " catalog row(s) failed\n";
        return failures ? NUMERIC : OK;
    }
    DoubleSelector sel;
    if (args.seed.size() == 2) {
        sel.seed_a = args.seed[0];
        sel.seed_q = args.seed[1];
        sel.cls = args.cls;
    } else if (!args.select.empty()) {
        sel.name = args.select;
    } else {
        throw DomainError("double needs --seed A Q, --point NAME or --catalog");
    }
    dispatch(cfg, [&]<class R>() {
        auto dp = resolve_double<R>(sel, ctx);
        Record r;
        double_record(r, dp, cfg.digits);
        out.write(r);
        return 0;
    });
    return OK;
}

struct PuiseuxArgs {
    std::string point = "MG";
    std::vector<std::string> seed;
    std::string cls = "CE_EVEN";
    int N = 9;
    bool table = false;
    int terms = 3;
    int sig = 4;
};

int cmd_puiseux(const RunConfig& cfg, const PuiseuxArgs& args) {
    PrecisionContext ctx = cfg.ctx();
    Writer out(cfg);
    if (args.table) {
        auto seeds = load_catalog(default_catalog_path());
        auto rows = dispatch(cfg, [&]<class R>() { return emit_table_appendix_d<R>(seeds, args.terms, ctx); });
        out.raw(cfg.format == "json" ? table_jsonl(rows, args.sig) : table_csv(rows, args.sig));
        for (auto& r : rows)
            if (!r.error.empty()) return NUMERIC;
        return OK;
    }
    if (args.N < 1) throw DomainError("N must be >= 1");
    DoubleSelector sel;
    sel.name = args.point;
    if (args.seed.size() == 2) {
        sel.seed_a = args.seed[0];
        sel.seed_q = args.seed[1];
        sel.cls = args.cls;
    }
    dispatch(cfg, [&]<class R>() {
        auto dp = resolve_double<R>(sel, ctx);
        for (int sign : {1, -1}) {
            auto ps = series_newton_puiseux(dp, args.N, sign, ctx);
            for (std::size_t k = 0; k < ps.coeffs.size(); ++k) {
                Record r;
                r.integer("branch", sign);
                r.integer("k", static_cast<long>(k + 1));
                r.cplx("alpha", ps.coeffs[k], cfg.digits);
                out.write(r);
            }
        }
        return 0;
    });
    return OK;
}

struct EvalArgs {
    std::string family;
    int order = 0;
    std::string q = "0";
    std::string x, grid;
    bool modified = false;
    bool bessel = false;
    int derivative = 0;
    std::string at_double;
    bool generalized = false;
};

int cmd_eval(const RunConfig& cfg, const EvalArgs& args) {
    PrecisionContext ctx = cfg.ctx();
    Writer out(cfg);
    dispatch(cfg, [&]<class R>() {
        using C = Complex<R>;
        auto xs = parse_points<R>(args.x, args.grid);
        if (xs.empty()) throw DomainError("eval needs --x or --grid");
        if (args.generalized) {
            DoubleSelector sel;
            sel.name = args.at_double.empty() ? "MG" : args.at_double;
            auto dp = resolve_double<R>(sel, ctx);
            int N = cfg.dim > 0 ? cfg.dim : truncation_dimension(20, dp.q_star, ctx) + 20;
            auto ge = generalized_eigenfunction(dp, N, ctx);
            for (auto& x : xs) {
                Record r;
                r.real("x", x, cfg.digits);
                r.cplx("v", eval_periodic(ge.base, C(x), args.derivative), cfg.digits);
                r.cplx("u", eval_periodic(ge.gen, C(x), args.derivative), cfg.digits);
                out.write(r);
            }
            return 0;
        }
        EigenClass cls = parse_family(args.family, args.order);
        C q = parse_complex<R>(args.q);
        C a = eigenvalue_continuation(cls, args.order, q, ctx).a;
        int N = cfg.dim > 0 ? cfg.dim : truncation_dimension(args.order, q, ctx) + 20;
        auto fv = fourier_coefficients(cls, args.order, q, a, N, CoeffStrategy::Recurrence, ctx);
        for (auto& x : xs) {
            Record r;
            r.real("x", x, cfg.digits);
            C y;
            if (args.modified)
                y = args.bessel ? eval_modified_bessel_product(fv, C(x), ctx) : eval_modified(fv, C(x));
            else
                y = eval_periodic(fv, C(x), args.derivative);
            r.cplx("y", y, cfg.digits);
            out.write(r);
        }
        std::cerr << label_of(cls, args.order) << ": a = " << to_string(a, std::min(cfg.digits, 20)) << "\n";
        return 0;
    });
    return OK;
}

struct ExpandArgs {
    std::string f = "demo:expcos";
    std::string q;
    std::string at_double;
    int modes = 20;
    std::vector<std::string> classes = {"CE_EVEN"};
};

int cmd_expand(const RunConfig& cfg, const ExpandArgs& args) {
    PrecisionContext ctx = cfg.ctx();
    Writer out(cfg);
    dispatch(cfg, [&]<class R>() {
        using C = Complex<R>;
        auto f = demo_function<R>(args.f);
        std::optional<DoublePoint<R>> dp;
        C q;
        if (!args.at_double.empty()) {
            DoubleSelector sel;
            sel.name = args.at_double;
            dp = resolve_double<R>(sel, ctx);
            q = dp->q_star;
        } else if (!args.q.empty()) {
            q = parse_complex<R>(args.q);
        } else {
            throw DomainError("expand needs --q or --at-double");
        }
        std::vector<EigenClass> classes;
        for (auto& c : args.classes) classes.push_back(parse_class(c));
        auto ex = expand_function<R>(f, q, classes, args.modes, ctx, dp);
        for (auto& m : ex.modes) {
            Record r;
            r.text("class", class_name(m.fv.cls));
            r.integer("order", m.order);
            r.integer("generalized", m.generalized ? 1 : 0);
            r.cplx("a", m.fv.a, cfg.digits);
            r.cplx("coeff", m.coeff, cfg.digits);
            out.write(r);
        }
        double err = 0;
        R pi = real_pi<R>();
        for (int j = 0; j < 101; ++j) {
            R x = R(2) * pi * R(j) / R(101);
            err = std::max(err, to_double(abs(eval_expansion(ex, C(x)) - f(x))));
        }
        std::cerr << "reconstruction max error " << err << " on 101 points";
        if (ex.alpha) std::cerr << "; alpha = " << to_string(*ex.alpha, 10) << ", beta = " << to_string(*ex.beta, 10);
        if (ex.ill_conditioned) std::cerr << "; WARNING ill-conditioned (near a double point)";
        std::cerr << "\n";
        return 0;
    });
    return OK;
}

struct MarchArgs {
    std::string a, q;
    std::string path = "0;pi";
    std::string ic = "wI";
    std::string at;
    int order = 20;
    std::string blend_out;
    bool allow_large_imag = false;
};

int cmd_march(const RunConfig& cfg, const MarchArgs& args) {
    PrecisionContext ctx = cfg.ctx();
    Writer out(cfg);
    dispatch(cfg, [&]<class R>() {
        using C = Complex<R>;
        C a = parse_complex<R>(args.a), q = parse_complex<R>(args.q);
        std::vector<C> path;
        for (auto& p : split(args.path, ';')) path.push_back(parse_complex<R>(p));
        std::pair<C, C> ic;
        if (args.ic == "wI")
            ic = {C(R(1)), C(R(0))};
        else if (args.ic == "wII")
            ic = {C(R(0)), C(R(1))};
        else {
            auto p = split(args.ic, ';');
            if (p.size() != 2) throw DomainError("--ic is wI, wII or \"y0;y0'\"");
            ic = {parse_complex<R>(p[0]), parse_complex<R>(p[1])};
        }
        MarchOptions opt;
        opt.order = args.order;
        opt.allow_large_imag = args.allow_large_imag;
        auto s = integrate_path<R>(a, q, path, ic, ctx, opt);
        std::vector<C> pts;
        for (auto& p : split(args.at, ';'))
            if (!p.empty()) pts.push_back(parse_complex<R>(p));
        if (pts.empty()) pts.push_back(path.back());
        for (auto& z : pts) {
            auto [y, yp] = eval_blend(s, z);
            Record r;
            r.cplx("t", z, cfg.digits);
            r.cplx("y", y, cfg.digits);
            r.cplx("yp", yp, cfg.digits);
            out.write(r);
        }
        std::cerr << s.segments.size() << " steps, " << s.rejected << " rejected, max residual " << s.max_residual
                  << ", audit " << audit_residual(s) << "\n";
        if (!args.blend_out.empty()) {
            std::ofstream f(args.blend_out);
            if (!f) throw std::runtime_error("cannot write " + args.blend_out);
            f << blend_string_to_json(s).dump() << "\n";
        }
        return 0;
    });
    return OK;
}

struct FloquetArgs {
    std::string a, q;
    int order = 20;
};

int cmd_floquet(const RunConfig& cfg, const FloquetArgs& args) {
    PrecisionContext ctx = cfg.ctx();
    Writer out(cfg);
    dispatch(cfg, [&]<class R>() {
        using C = Complex<R>;
        C a = parse_complex<R>(args.a), q = parse_complex<R>(args.q);
        MarchOptions opt;
        opt.order = args.order;
        auto f = floquet_exponent<R>(a, q, ctx, opt);
        Record r;
        r.cplx("a", a, cfg.digits);
        r.cplx("q", q, cfg.digits);
        r.cplx("mu", f.mu, cfg.digits);
        r.cplx("cosh_pi_mu", f.cosh_pi_mu, cfg.digits);
        r.real("consistency", f.consistency, 3);
        r.text("status", to_double(abs(f.mu.re)) > 1e3 * ctx.tol ? "UNSTABLE" : "STABLE");
        out.write(r);
        return 0;
    });
    return OK;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mathieu eigenvalues, double points, Puiseux series, eigenfunctions and marching"};
    app.require_subcommand(1);
    app.fallthrough();
    RunConfig cfg;
    if (const char* d = std::getenv("MATHIEU_DIGITS")) cfg.digits = std::atoi(d);
    bool tol_from_env = false;
    if (const char* t = std::getenv("MATHIEU_TOL")) {
        cfg.tol = std::atof(t);
        tol_from_env = true;
    }
    std::optional<double> tol_flag;
    app.add_option("--digits", cfg.digits, "working decimal digits (env MATHIEU_DIGITS)")->capture_default_str();
    app.add_option("--tol", tol_flag, "convergence tolerance (env MATHIEU_TOL; default 10^(4-digits))");
    app.add_option("--dim", cfg.dim, "matrix / Fourier dimension override");
    app.add_option("--format", cfg.format, "csv or json (JSON lines)")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("-o,--output", cfg.output, "output file (default stdout)");
    app.add_option("--backend", cfg.backend, "auto, double, dd or mpfr")->check(CLI::IsMember({"auto", "double", "dd", "mpfr"}));

    EigArgs eig;
    auto* c_eig = app.add_subcommand("eig", "labeled eigenvalue a_m(q) or b_m(q)");
    c_eig->add_option("family", eig.family, "ce or se (or a class name)")->required();
    c_eig->add_option("order", eig.order, "order m")->required();
    c_eig->add_option("q", eig.q, "q as re,im or 1.5i")->required();
    c_eig->add_option("--method", eig.method, "continuation or matrix");

    DoubleArgs dbl;
    auto* c_dbl = app.add_subcommand("double", "refine double points");
    c_dbl->add_option("--seed", dbl.seed, "seed a q")->expected(2);
    c_dbl->add_option("--class", dbl.cls, "class of the seed");
    c_dbl->add_option("--point", dbl.select, "MG or row:K");
    c_dbl->add_flag("--catalog", dbl.catalog, "verify every catalog row");
    c_dbl->add_option("--catalog-file", dbl.catalog_path, "catalog path (default data/double_points_seed.txt)");

    PuiseuxArgs pu;
    auto* c_pu = app.add_subcommand("puiseux", "Puiseux coefficients at a double point");
    c_pu->add_option("--point", pu.point, "MG or row:K");
    c_pu->add_option("--seed", pu.seed, "seed a q")->expected(2);
    c_pu->add_option("--class", pu.cls, "class of the seed");
    c_pu->add_option("-N", pu.N, "number of coefficients");
    c_pu->add_flag("--table", pu.table, "all catalog rows, table layout");
    c_pu->add_option("--terms", pu.terms, "coefficients per table row");
    c_pu->add_option("--sig", pu.sig, "significant figures in the table");

    EvalArgs ev;
    auto* c_ev = app.add_subcommand("eval", "evaluate ce/se, Ce/Se, or the generalized eigenfunction");
    c_ev->add_option("family", ev.family, "ce or se");
    c_ev->add_option("order", ev.order, "order m");
    c_ev->add_option("--q", ev.q, "q");
    c_ev->add_option("--x", ev.x, "points separated by ';' (pi, ln2 accepted)");
    c_ev->add_option("--grid", ev.grid, "x0:x1:n");
    c_ev->add_flag("--modified", ev.modified, "modified function Ce(x) = ce(ix), Se(x) = -i se(ix)");
    c_ev->add_flag("--bessel", ev.bessel, "modified function through the Bessel-product series");
    c_ev->add_option("--derivative", ev.derivative, "0, 1 or 2 (periodic functions)");
    c_ev->add_flag("--generalized", ev.generalized, "eigenfunction and generalized eigenfunction at a double point");
    c_ev->add_option("--at-double", ev.at_double, "double point for --generalized");

    ExpandArgs ex;
    auto* c_ex = app.add_subcommand("expand", "expand a built-in function in eigenfunctions");
    c_ex->add_option("--f", ex.f, "demo:expcos or demo:cos6");
    c_ex->add_option("--q", ex.q, "q");
    c_ex->add_option("--at-double", ex.at_double, "expand at a double point (MG, row:K)");
    c_ex->add_option("--modes", ex.modes, "modes per class");
    c_ex->add_option("--classes", ex.classes, "classes to include");

    MarchArgs mr;
    auto* c_mr = app.add_subcommand("march", "integrate along a complex polyline");
    c_mr->add_option("--a", mr.a, "a")->required();
    c_mr->add_option("--q", mr.q, "q")->required();
    c_mr->add_option("--path", mr.path, "waypoints separated by ';'");
    c_mr->add_option("--ic", mr.ic, "wI, wII or \"y0;y0'\"");
    c_mr->add_option("--at", mr.at, "evaluation points on the path, ';'-separated");
    c_mr->add_option("--order", mr.order, "Taylor order");
    c_mr->add_option("--blend-out", mr.blend_out, "write the blend string as JSON");
    c_mr->add_flag("--allow-large-imag", mr.allow_large_imag, "lift the |Im z| <= 2 pi cap");

    FloquetArgs fl;
    auto* c_fl = app.add_subcommand("floquet", "Floquet exponent from w_I(pi)");
    c_fl->add_option("--a", fl.a, "a")->required();
    c_fl->add_option("--q", fl.q, "q")->required();
    c_fl->add_option("--order", fl.order, "Taylor order");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? OK : BAD_INPUT;
    }
    if (tol_flag)
        cfg.tol = *tol_flag;
    else if (!tol_from_env)
        cfg.tol = PrecisionContext::for_digits(cfg.digits).tol;

    try {
        if (*c_eig) return cmd_eig(cfg, eig);
        if (*c_dbl) return cmd_double(cfg, dbl);
        if (*c_pu) return cmd_puiseux(cfg, pu);
        if (*c_ev) return cmd_eval(cfg, ev);
        if (*c_ex) return cmd_expand(cfg, ex);
        if (*c_mr) return cmd_march(cfg, mr);
        if (*c_fl) return cmd_floquet(cfg, fl);
    } catch (const LabelAmbiguity& e) {
        std::cerr << "error: " << e.what() << "\nuse `mathieu double` to work at the double point\n";
        return AMBIGUOUS;
    } catch (const PathThroughDoublePoint& e) {
        std::cerr << "error: " << e.what() << " near q = (" << e.q_star.real() << "," << e.q_star.imag()
                  << "); use `mathieu double` there\n";
        return AMBIGUOUS;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BAD_INPUT;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return BAD_INPUT;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return NUMERIC;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return IO;
    }
    return OK;
}
