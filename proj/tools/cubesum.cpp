// cubesum: command-line front end.
// Exit codes: 0 success, 1 domain or verification failure, 2 usage error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <omp.h>

#include <CLI11.hpp>
#include <json.hpp>

#include "cubesum/arith.hpp"
#include "cubesum/cubic.hpp"
#include "cubesum/elliptic.hpp"
#include "cubesum/families.hpp"
#include "cubesum/search.hpp"

using namespace cubesum;
using ojson = nlohmann::ordered_json;

namespace {

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

BigInt parse_big(const std::string& s, const char* flag) {
    BigInt v;
    if (s.empty() || v.set_str(s, 10) != 0) throw UsageError(std::string("--") + flag + ": not an integer: " + s);
    return v;
}

std::pair<Sign, Sign> parse_signs(const std::string& s) {
    if (s.size() != 2 || (s[0] != '+' && s[0] != '-') || (s[1] != '+' && s[1] != '-'))
        throw UsageError("--signs takes two characters over {+,-}, cube side first, e.g. \"-+\"");
    return {parse_sign(s[0]), parse_sign(s[1])};
}

OutputFormat parse_format(const std::string& s) {
    if (s == "jsonl") return OutputFormat::Jsonl;
    if (s == "csv") return OutputFormat::Csv;
    if (s == "pretty") return OutputFormat::Pretty;
    throw UsageError("--format must be jsonl, csv or pretty");
}

// Writes to --out when given, otherwise stdout.
class Output {
public:
    explicit Output(const std::string& path) {
        if (!path.empty()) {
            file_.open(path, std::ios::trunc);
            if (!file_) throw std::runtime_error("cannot open " + path);
        }
    }
    std::ostream& os() { return file_.is_open() ? file_ : std::cout; }
    void finish() {
        os().flush();
        if (!os()) throw std::runtime_error("write failed");
    }

private:
    std::ofstream file_;
};

void write_meta(std::ostream& os, OutputFormat fmt, const ojson& meta) {
    ojson j;
    j["meta"] = meta;
    if (fmt == OutputFormat::Pretty)
        os << "# " << meta.dump() << '\n';
    else if (fmt == OutputFormat::Csv)
        os << "# " << j.dump() << '\n' << kCsvHeader << '\n';
    else
        os << j.dump() << '\n';
}

void write_record(std::ostream& os, OutputFormat fmt, const SolutionRecord& r) {
    switch (fmt) {
    case OutputFormat::Jsonl: os << record_to_json(r) << '\n'; break;
    case OutputFormat::Csv: os << record_to_csv(r) << '\n'; break;
    case OutputFormat::Pretty: os << record_to_pretty(r) << '\n'; break;
    }
}

// Non-record lines (identities, grid cells, points) have no CSV shape.
void require_jsonl_or_pretty(OutputFormat fmt, const char* what) {
    if (fmt == OutputFormat::Csv) throw UsageError(std::string(what) + " output supports jsonl or pretty only");
}

// ---- solve

int cmd_solve(const std::string& value, const std::string& sign) {
    const BigInt A = parse_big(value, "value");
    if (sign != "+" && sign != "-" && sign != "both") throw UsageError("--sign must be +, - or both");
    if (A == 0) throw DomainError("A must be nonzero");
    auto show = [&](Sign s) {
        if (A < 0) {
            std::cout << "x^3 " << sign_char(s) << " y^3 = " << A << ": none (positive solutions need A > 0)\n";
            return;
        }
        const auto pairs = solve_signed(A, s);
        std::cout << "x^3 " << sign_char(s) << " y^3 = " << A << ":";
        if (pairs.empty()) std::cout << " none";
        for (const auto& p : pairs) std::cout << " (" << p.x << ',' << p.y << ')';
        std::cout << '\n';
    };
    if (sign == "both") {
        std::cout << "all integer x >= y with x^3 + y^3 = " << A << ":";
        for (const auto& p : represent_cubes(A)) std::cout << " (" << p.x << ',' << p.y << ')';
        std::cout << '\n';
        show(Sign::Plus);
        show(Sign::Minus);
    } else {
        show(parse_sign(sign[0]));
    }
    return 0;
}

// ---- search

struct SearchArgs {
    unsigned k = 0;
    std::string signs;
    long long amax = 0;
    std::string out, checkpoint, format = "jsonl";
    bool resume = false;
    bool allow_common_factor = false;
    bool allow_trivial = false;
    int workers = 1;
};

int cmd_search(const SearchArgs& a) {
    SearchConfig cfg;
    cfg.k = a.k;
    std::tie(cfg.s1, cfg.s2) = parse_signs(a.signs);
    cfg.a_max = a.amax;
    cfg.require_coprime = !a.allow_common_factor;
    cfg.require_nontrivial = !a.allow_trivial;
    cfg.output_path = a.out;
    cfg.checkpoint_path = a.checkpoint;
    cfg.workers = a.workers;
    cfg.format = parse_format(a.format);
    try {
        cfg.validate();
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
    std::cerr << "search: k=" << cfg.k << " signs=" << a.signs << " a_max=" << cfg.a_max << " workers=" << cfg.workers
              << '\n';

    if (cfg.output_path.empty()) {
        if (a.resume || !cfg.checkpoint_path.empty()) throw UsageError("--checkpoint/--resume need --out");
        ojson meta;
        meta["tool"] = "cubesum search";
        meta["k"] = cfg.k;
        meta["signs"] = a.signs;
        meta["a_max"] = cfg.a_max;
        meta["require_coprime"] = cfg.require_coprime;
        meta["require_nontrivial"] = cfg.require_nontrivial;
        meta["config_hash"] = cfg.config_hash();
        write_meta(std::cout, cfg.format, meta);
        search_range(cfg, [&](const SolutionRecord& r) { write_record(std::cout, cfg.format, r); });
        std::cout.flush();
        return 0;
    }
    if (cfg.format == OutputFormat::Pretty) throw UsageError("--format pretty is for terminal output; drop --out");
    if (a.resume && cfg.checkpoint_path.empty()) throw UsageError("--resume needs --checkpoint");
    RunOptions opts;
    opts.resume = a.resume;
    const RunSummary s = run_search(cfg, opts);
    std::cerr << "search: a " << s.first_a << ".." << s.last_completed_a << " done, " << s.records
              << " records in " << cfg.output_path << '\n';
    return 0;
}

// ---- family

struct FamilyArgs {
    std::string name;
    std::map<std::string, long long> named;
    std::optional<long long> tmax;
    std::string bound;
    bool list = false;
    std::string out, format = "jsonl";
};

ojson identity_line(const IdentityReport& rep) {
    ojson j;
    j["family"] = rep.family;
    j["params"] = rep.params;
    j["lhs"] = to_string(rep.lhs);
    j["rhs"] = to_string(rep.rhs);
    j["equal"] = rep.equal;
    return j;
}

void emit_instance(std::ostream& os, OutputFormat fmt, const FamilyInstance& inst) {
    if (inst.b_exponent != inst.k) {
        // Mixed exponents do not fit the record schema; emit the checked identity.
        const auto rep = verify_identity(inst.family, inst.params);
        if (fmt == OutputFormat::Pretty)
            os << inst.family << ' ' << ojson(inst.params).dump() << ": " << inst.x << "^3 " << sign_char(inst.s1)
               << ' ' << inst.y << "^3 = " << inst.a << '^' << inst.k << ' ' << sign_char(inst.s2) << ' ' << inst.b
               << '^' << inst.b_exponent << " = " << inst.value << "  [gcd " << inst.quad_gcd << "]\n";
        else
            os << identity_line(rep).dump() << '\n';
        return;
    }
    const SolutionRecord r = make_record(inst.k, inst.s1, inst.s2, inst.x, inst.y, inst.a, inst.b);
    if (fmt == OutputFormat::Pretty) {
        os << inst.family << ' ' << ojson(inst.params).dump() << ": " << record_to_pretty(r);
        const auto& d = find_family(inst.family);
        if (d.gcd_guarantee > 1) os << "  gcd certificate " << d.gcd_guarantee;
        os << '\n';
    } else {
        write_record(os, fmt, r);
    }
}

int cmd_family(const FamilyArgs& a) {
    if (a.list) {
        for (const auto& d : family_table()) {
            std::cout << d.name << "  " << d.key << "  k=" << d.k_text << "  params(";
            for (std::size_t i = 0; i < d.arity(); ++i) std::cout << (i ? "," : "") << d.param_names[i];
            std::cout << ")  " << d.domain_text;
            if (d.gcd_guarantee) std::cout << "  gcd=" << d.gcd_guarantee;
            std::cout << '\n';
        }
        return 0;
    }
    if (a.name.empty()) throw UsageError("family: NAME required (or --list)");
    const FamilyDescriptor& d = find_family(a.name);
    const OutputFormat fmt = parse_format(a.format);
    if (d.name == "F10") require_jsonl_or_pretty(fmt, "F10");

    std::vector<FamilyInstance> instances;
    ojson meta;
    meta["tool"] = "cubesum family";
    meta["family"] = d.name;
    if (!a.bound.empty()) {
        const BigInt N = parse_big(a.bound, "bound");
        meta["bound"] = a.bound;
        instances = enumerate_under_bound(d.name, N);
    } else if (a.tmax) {
        if (d.arity() != 1) throw UsageError("--tmax applies to one-parameter families");
        meta["tmax"] = *a.tmax;
        for (long long t = d.param_min[0]; t <= *a.tmax; ++t) instances.push_back(generate(d.name, {t}));
    } else {
        Params params;
        for (const auto& n : d.param_names) {
            const auto it = a.named.find(n);
            if (it == a.named.end()) throw UsageError(d.name + " needs --" + n);
            params.push_back(it->second);
        }
        for (const auto& [n, v] : a.named)
            if (std::find(d.param_names.begin(), d.param_names.end(), n) == d.param_names.end())
                throw UsageError(d.name + " does not take --" + n);
        meta["params"] = params;
        instances.push_back(generate(d.name, params));
    }

    Output out(a.out);
    write_meta(out.os(), fmt, meta);
    for (const auto& inst : instances) emit_instance(out.os(), fmt, inst);
    out.finish();
    return 0;
}

// ---- curve

struct CurveArgs {
    std::string what;
    long long m = 0, n = 1;
    int eps = 0;
    std::string d = "2";
    long long bound = 1000;
    std::string pipeline = "k4";
    long long mmax = 4, nmax = 4;
    std::string out, format = "jsonl";
};

SolutionRecord quad_record(const SignedQuadruple& q) {
    return make_record(q.k, q.equation_sign, Sign::Plus, q.x, q.y, q.a, q.b);
}

int cmd_curve(const CurveArgs& a) {
    const OutputFormat fmt = parse_format(a.format);
    ojson meta;
    meta["tool"] = "cubesum curve";
    meta["pipeline"] = a.what;
    Output out(a.out);
    std::ostream& os = out.os();

    if (a.what == "k4") {
        if (a.eps != 0 && a.eps != 1) throw UsageError("--eps must be 0 or 1");
        meta["m"] = a.m;
        meta["n"] = a.n;
        meta["eps"] = a.eps;
        const PointQ p = lincomb(curves::k4(), a.m, curves::k4_g1(), a.n, curves::k4_g2(), a.eps, curves::k4_t());
        const K4Construction c = k4_construct_detailed(p);
        write_meta(os, fmt, meta);
        if (fmt == OutputFormat::Pretty)
            os << "point " << p.to_string() << "  region " << to_string(k4_sign_region(p.x())) << '\n';
        write_record(os, fmt, quad_record(c.quad));
    } else if (a.what == "k6") {
        if (a.n < 1) throw UsageError("--n must be >= 1");
        meta["n"] = a.n;
        const K6Point kp = k6_point(static_cast<unsigned>(a.n));
        const SignedQuadruple q = k6_construct(static_cast<unsigned>(a.n));
        write_meta(os, fmt, meta);
        if (fmt == OutputFormat::Pretty)
            os << "[" << a.n << "]P = " << kp.np.to_string() << "  region " << to_string(kp.region) << '\n';
        write_record(os, fmt, quad_record(q));
    } else if (a.what == "ed") {
        require_jsonl_or_pretty(fmt, "curve ed");
        const BigInt d = parse_big(a.d, "d");
        if (a.bound < 1) throw UsageError("--bound must be >= 1");
        meta["d"] = a.d;
        meta["bound"] = a.bound;
        const auto p = ed_search(d, a.bound);
        if (!p) {
            std::cerr << "no non-torsion point with height <= " << a.bound << '\n';
            return 1;
        }
        write_meta(os, fmt, meta);
        if (fmt == OutputFormat::Pretty) {
            os << "E_" << d << ": " << p->to_string() << '\n';
        } else {
            ojson j;
            j["point"] = "ed";
            j["d"] = a.d;
            j["u"] = to_string(p->u());
            j["v"] = to_string(p->v());
            j["w"] = to_string(p->w());
            os << j.dump() << '\n';
        }
    } else if (a.what == "grid") {
        require_jsonl_or_pretty(fmt, "curve grid");
        meta["grid"] = a.pipeline;
        std::vector<ojson> cells;
        if (a.pipeline == "k4") {
            if (a.mmax < 0 || a.nmax < 0) throw UsageError("--mmax/--nmax must be >= 0");
            meta["mmax"] = a.mmax;
            meta["nmax"] = a.nmax;
            for (int eps : {0, 1})
                for (const auto& c : k4_grid(a.mmax, a.nmax, eps)) {
                    ojson j;
                    j["grid"] = "k4";
                    j["m"] = c.m;
                    j["n"] = c.n;
                    j["eps"] = c.eps;
                    j["region"] = to_string(c.region);
                    cells.push_back(j);
                }
        } else if (a.pipeline == "k6") {
            if (a.nmax < 1) throw UsageError("--nmax must be >= 1");
            meta["nmax"] = a.nmax;
            for (long long n = 1; n <= a.nmax; ++n) {
                ojson j;
                j["grid"] = "k6";
                j["n"] = n;
                j["region"] = to_string(k6_point(static_cast<unsigned>(n)).region);
                cells.push_back(j);
            }
        } else {
            throw UsageError("--pipeline must be k4 or k6");
        }
        write_meta(os, fmt, meta);
        for (const auto& j : cells) {
            if (fmt == OutputFormat::Pretty) {
                if (a.pipeline == "k4")
                    os << "(m,n,eps)=(" << j["m"] << ',' << j["n"] << ',' << j["eps"] << ")  "
                       << j["region"].get<std::string>() << '\n';
                else
                    os << "n=" << j["n"] << "  " << j["region"].get<std::string>() << '\n';
            } else {
                os << j.dump() << '\n';
            }
        }
    } else {
        throw UsageError("curve: expected k4, k6, ed or grid");
    }
    out.finish();
    return 0;
}

// ---- count

int cmd_count(unsigned k, const std::string& signs, const std::string& N_text, std::optional<long long> acap,
              bool c4pm_bound) {
    const BigInt N = parse_big(N_text, "N");
    if (c4pm_bound) {
        const CountBound b = c4pm_count_bound(N);
        std::cout << "v_max " << b.v_max << "\nphi_sum " << b.phi_sum << "\ncount " << b.count << "\nasymptotic "
                  << b.asymptotic << "\nratio " << b.ratio() << '\n';
        return 0;
    }
    if (k < 2) throw UsageError("--k must be >= 2");
    const auto [s1, s2] = parse_signs(signs);
    CountOptions opts;
    opts.a_cap = acap;
    std::cout << counting_function(k, s1, s2, N, opts) << '\n';
    return 0;
}

// ---- verify

int cmd_verify(const std::string& path) {
    const VerifyReport rep = verify_records(path);
    for (const auto& e : rep.entries)
        if (!e.ok) std::cout << path << ':' << e.line << ": " << e.message << '\n';
    std::cout << rep.passed << " passed, " << rep.failed << " failed\n";
    return rep.all_passed() ? 0 : 1;
}

int default_workers() {
    if (const char* env = std::getenv("CUBESUM_WORKERS")) {
        try {
            const int w = std::stoi(env);
            if (w >= 1) return w;
        } catch (const std::exception&) {
        }
        std::cerr << "ignoring CUBESUM_WORKERS=" << env << '\n';
    }
    return omp_get_max_threads();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sums and differences of cubes equal to sums and differences of k-th powers"};
    app.require_subcommand(1);

    std::string solve_value, solve_sign = "both";
    auto* solve = app.add_subcommand("solve", "integer solutions of x^3 +- y^3 = A");
    solve->add_option("--value", solve_value, "A (nonzero integer)")->required();
    solve->add_option("--sign", solve_sign, "+, - or both")->capture_default_str();

    SearchArgs sa;
    sa.workers = default_workers();
    auto* search = app.add_subcommand("search", "exhaustive scan of 0 < b < a <= amax");
    search->add_option("--k", sa.k, "power k >= 2")->required();
    search->add_option("--signs", sa.signs, "two characters, cube side then power side, e.g. -+")->required();
    search->add_option("--amax", sa.amax, "largest a")->required();
    search->add_option("--out", sa.out, "record file (stdout when omitted)");
    search->add_option("--checkpoint", sa.checkpoint, "checkpoint file");
    search->add_flag("--resume", sa.resume, "continue from --checkpoint");
    search->add_option("--workers", sa.workers, "threads (default: CUBESUM_WORKERS or all cores)")
        ->check(CLI::PositiveNumber);
    search->add_option("--format", sa.format, "jsonl, csv or pretty")->capture_default_str();
    search->add_flag("--allow-common-factor", sa.allow_common_factor, "keep quadruples with gcd > 1");
    search->add_flag("--allow-trivial", sa.allow_trivial, "keep trivial quadruples");

    FamilyArgs fa;
    std::map<std::string, long long> fvals;
    auto* family = app.add_subcommand("family", "parametric identity families F1..F10");
    family->add_option("name", fa.name, "family name or key");
    for (const char* p : {"t", "u", "v", "m", "x", "d"})
        family->add_option_function<long long>(std::string("--") + p, [&fa, p](long long v) { fa.named[p] = v; },
                                               std::string("parameter ") + p);
    auto* tmax_opt = family->add_option("--tmax", fa.tmax, "all t from the family minimum to tmax");
    auto* bound_opt = family->add_option("--bound", fa.bound, "every instance with value <= bound");
    tmax_opt->excludes(bound_opt);
    family->add_flag("--list", fa.list, "list families");
    family->add_option("--out", fa.out, "output file");
    family->add_option("--format", fa.format, "jsonl, csv or pretty")->capture_default_str();

    CurveArgs ca;
    auto* curve = app.add_subcommand("curve", "elliptic-curve constructions");
    curve->add_option("what", ca.what, "k4, k6, ed or grid")->required();
    curve->add_option("--m", ca.m, "k4: multiple of G1");
    curve->add_option("--n", ca.n, "k4: multiple of G2; k6: multiple of P");
    curve->add_option("--eps", ca.eps, "k4: add the 2-torsion point (0 or 1)");
    curve->add_option("--d", ca.d, "ed: curve parameter");
    curve->add_option("--bound", ca.bound, "ed: height bound on |u| and w");
    curve->add_option("--pipeline", ca.pipeline, "grid: k4 or k6");
    curve->add_option("--mmax", ca.mmax, "grid k4: largest m");
    curve->add_option("--nmax", ca.nmax, "grid: largest n");
    curve->add_option("--out", ca.out, "output file");
    curve->add_option("--format", ca.format, "jsonl, csv or pretty")->capture_default_str();

    unsigned ck = 0;
    std::string csigns = "++", cN;
    std::optional<long long> cacap;
    bool c4pm = false;
    auto* count = app.add_subcommand("count", "counting function C_k(s1,s2)(N)");
    count->add_option("--k", ck, "power k");
    count->add_option("--signs", csigns, "two characters over {+,-}");
    count->add_option("--N", cN, "value bound")->required();
    count->add_option("--acap", cacap, "restrict to a <= acap (required for power side -)");
    count->add_flag("--c4pm-bound", c4pm, "family lower bound for C_4(+,-)(N) and its asymptotic ratio");

    std::string vpath;
    auto* verify = app.add_subcommand("verify", "re-check every line of a record file");
    verify->add_option("file", vpath, "file written by search, family or curve")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (*solve) return cmd_solve(solve_value, solve_sign);
        if (*search) return cmd_search(sa);
        if (*family) return cmd_family(fa);
        if (*curve) return cmd_curve(ca);
        if (*count) return cmd_count(ck, csigns, cN, cacap, c4pm);
        if (*verify) return cmd_verify(vpath);
    } catch (const UsageError& e) {
        std::cerr << "usage error: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
