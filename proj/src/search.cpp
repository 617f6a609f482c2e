#include "cubesum/search.hpp"

#include <algorithm>
#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <sstream>


#include <json.hpp>

#include "cubesum/arith.hpp"
#include "cubesum/cubic.hpp"
#include "cubesum/elliptic.hpp"
#include "cubesum/families.hpp"

namespace cubesum {

using ojson = nlohmann::ordered_json;

SolutionRecord make_record(unsigned k, Sign s1, Sign s2, BigInt x, BigInt y, BigInt a, BigInt b) {
    if (x <= 0 || y <= 0 || a <= 0 || b <= 0) throw DomainError("record entries must be positive");
    if (s1 == Sign::Plus && x < y) std::swap(x, y);
    if (s2 == Sign::Plus && a < b) std::swap(a, b);
    SolutionRecord r;
    r.k = k;
    r.s1 = s1;
    r.s2 = s2;
    r.value = combine(pow(x, 3), s1, pow(y, 3));
    if (r.value <= 0 || r.value != combine(pow(a, k), s2, pow(b, k)))
        throw DomainError("quadruple does not satisfy x^3 s1 y^3 = a^k s2 b^k > 0");
    r.quad_gcd = gcd(x, y, a, b);
    r.x = std::move(x);
    r.y = std::move(y);
    r.a = std::move(a);
    r.b = std::move(b);
    r.nontrivial = nontrivial_check(r);
    return r;
}

bool nontrivial_check(const SolutionRecord& rec) {
    const BigInt terms[4] = {
        pow(rec.x, 3),
        rec.s1 == Sign::Plus ? BigInt(pow(rec.y, 3)) : BigInt(-pow(rec.y, 3)),
        -pow(rec.a, rec.k),
        rec.s2 == Sign::Plus ? BigInt(-pow(rec.b, rec.k)) : BigInt(pow(rec.b, rec.k)),
    };
    for (unsigned mask = 1; mask < 15; ++mask) {
        BigInt s = 0;
        for (unsigned i = 0; i < 4; ++i)
            if (mask & (1u << i)) s += terms[i];
        if (s == 0) return false;
    }
    return true;
}

void SearchConfig::validate() const {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (a_max < 2) throw std::invalid_argument("a_max must be >= 2");
    if (workers < 1) throw std::invalid_argument("workers must be >= 1");
}

namespace {

const char* format_name(OutputFormat f) {
    switch (f) {
    case OutputFormat::Jsonl: return "jsonl";
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Pretty: return "pretty";
    }
    return "?";
}

std::string signs_text(Sign s1, Sign s2) { return {sign_char(s1), sign_char(s2)}; }

} // namespace

std::string SearchConfig::config_hash() const {
    std::ostringstream key;
    key << "k=" << k << ";signs=" << signs_text(s1, s2) << ";a_max=" << a_max << ";coprime=" << require_coprime
        << ";nontrivial=" << require_nontrivial << ";format=" << format_name(format);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : key.str()) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << std::setw(16) << std::setfill('0') << h;
    return out.str();
}

std::vector<SolutionRecord> solutions_for_pair(const SearchConfig& cfg, long long a, long long b) {
    const BigInt ab(static_cast<long>(a)), bb(static_cast<long>(b));
    if (cfg.s2 == Sign::Minus && a <= b) return {};
    const auto parts = cyclotomic_split(ab, bb, cfg.k, cfg.s2);
    const Factorization f = factorize_product(parts);
    std::vector<SolutionRecord> out;
    for (auto& [x, y] : solve_signed(f, cfg.s1)) {
        SolutionRecord r;
        r.k = cfg.k;
        r.s1 = cfg.s1;
        r.s2 = cfg.s2;
        r.quad_gcd = gcd(x, y, ab, bb);
        if (cfg.require_coprime && r.quad_gcd != 1) continue;
        r.x = x;
        r.y = y;
        r.a = ab;
        r.b = bb;
        r.value = f.value;
        r.nontrivial = nontrivial_check(r);
        if (cfg.require_nontrivial && !r.nontrivial) continue;
        out.push_back(std::move(r));
    }
    return out;
}

void search_range_serial(const SearchConfig& cfg, const RecordSink& sink, long long a_first) {
    cfg.validate();
    for (long long a = std::max(2LL, a_first); a <= cfg.a_max; ++a)
        for (long long b = 1; b < a; ++b)
            for (const auto& r : solutions_for_pair(cfg, a, b)) sink(r);
}

void search_range(const SearchConfig& cfg, const RecordSink& sink, const std::function<void(long long)>& on_a_done,
                  long long a_first) {
    cfg.validate();
    const long long block = 4LL * cfg.workers;
    for (long long a0 = std::max(2LL, a_first); a0 <= cfg.a_max; a0 += block) {
        const long long a1 = std::min(cfg.a_max, a0 + block - 1);
        std::vector<std::pair<long long, long long>> tasks;
        for (long long a = a0; a <= a1; ++a)
            for (long long b = 1; b < a; ++b) tasks.emplace_back(a, b);

        std::vector<std::vector<SolutionRecord>> results(tasks.size());
        std::exception_ptr failure;
        const auto n = static_cast<long long>(tasks.size());
#pragma omp parallel for schedule(dynamic, 8) num_threads(cfg.workers)
        for (long long i = 0; i < n; ++i) {
            try {
                const auto [a, b] = tasks[static_cast<std::size_t>(i)];
                results[static_cast<std::size_t>(i)] = solutions_for_pair(cfg, a, b);
            } catch (...) {
#pragma omp critical
                if (!failure) failure = std::current_exception();
            }
        }
        if (failure) std::rethrow_exception(failure);

        std::size_t i = 0;
        for (long long a = a0; a <= a1; ++a) {
            for (; i < tasks.size() && tasks[i].first == a; ++i)
                for (const auto& r : results[i]) sink(r);
            if (on_a_done) on_a_done(a);
        }
    }
}

std::vector<SolutionRecord> collect_search(const SearchConfig& cfg, bool parallel) {
    std::vector<SolutionRecord> out;
    auto sink = [&](const SolutionRecord& r) { out.push_back(r); };
    if (parallel)
        search_range(cfg, sink);
    else
        search_range_serial(cfg, sink);
    return out;
}

// ---- record formats

std::string record_to_json(const SolutionRecord& r) {
    ojson j;
    j["k"] = r.k;
    j["s1"] = std::string(1, sign_char(r.s1));
    j["s2"] = std::string(1, sign_char(r.s2));
    j["x"] = to_string(r.x);
    j["y"] = to_string(r.y);
    j["a"] = to_string(r.a);
    j["b"] = to_string(r.b);
    j["value"] = to_string(r.value);
    j["quad_gcd"] = to_string(r.quad_gcd);
    j["nontrivial"] = r.nontrivial;
    return j.dump();
}

std::string record_to_csv(const SolutionRecord& r) {
    std::ostringstream o;
    o << r.k << ',' << sign_char(r.s1) << ',' << sign_char(r.s2) << ',' << r.x << ',' << r.y << ',' << r.a << ','
      << r.b << ',' << r.value << ',' << r.quad_gcd << ',' << (r.nontrivial ? "true" : "false");
    return o.str();
}

std::string record_to_pretty(const SolutionRecord& r) {
    std::ostringstream o;
    o << r.x << "^3 " << sign_char(r.s1) << ' ' << r.y << "^3 = " << r.a << '^' << r.k << ' ' << sign_char(r.s2) << ' '
      << r.b << '^' << r.k << " = " << r.value << "  [gcd " << r.quad_gcd << ", "
      << (r.nontrivial ? "nontrivial" : "trivial") << ']';
    return o.str();
}

namespace {

BigInt parse_int(const std::string& s, const char* field) {
    BigInt v;
    if (s.empty() || v.set_str(s, 10) != 0) throw std::invalid_argument(std::string("bad integer in field ") + field);
    return v;
}

Sign parse_sign_field(const std::string& s, const char* field) {
    if (s.size() != 1) throw std::invalid_argument(std::string("bad sign in field ") + field);
    return parse_sign(s[0]);
}

const char* const kFields[] = {"k", "s1", "s2", "x", "y", "a", "b", "value", "quad_gcd", "nontrivial"};

SolutionRecord record_from_fields(const std::vector<std::string>& f) {
    SolutionRecord r;
    const BigInt k = parse_int(f[0], "k");
    if (k < 2 || k > 100000) throw std::invalid_argument("k out of range");
    r.k = static_cast<unsigned>(k.get_ui());
    r.s1 = parse_sign_field(f[1], "s1");
    r.s2 = parse_sign_field(f[2], "s2");
    r.x = parse_int(f[3], "x");
    r.y = parse_int(f[4], "y");
    r.a = parse_int(f[5], "a");
    r.b = parse_int(f[6], "b");
    r.value = parse_int(f[7], "value");
    r.quad_gcd = parse_int(f[8], "quad_gcd");
    if (f[9] == "true")
        r.nontrivial = true;
    else if (f[9] == "false")
        r.nontrivial = false;
    else
        throw std::invalid_argument("bad boolean in field nontrivial");
    return r;
}

} // namespace

SolutionRecord record_from_json(const std::string& line) {
    const auto j = nlohmann::json::parse(line);
    if (!j.is_object()) throw std::invalid_argument("record is not a JSON object");
    if (j.size() != std::size(kFields)) throw std::invalid_argument("record must have exactly the ten schema fields");
    std::vector<std::string> f;
    for (const char* name : kFields) {
        if (!j.contains(name)) throw std::invalid_argument(std::string("missing field ") + name);
        const auto& v = j.at(name);
        if (std::string_view(name) == "k") {
            if (!v.is_number_unsigned()) throw std::invalid_argument("k must be a nonnegative integer");
            f.push_back(std::to_string(v.get<unsigned long long>()));
        } else if (std::string_view(name) == "nontrivial") {
            if (!v.is_boolean()) throw std::invalid_argument("nontrivial must be a boolean");
            f.push_back(v.get<bool>() ? "true" : "false");
        } else {
            if (!v.is_string()) throw std::invalid_argument(std::string("field ") + name + " must be a string");
            f.push_back(v.get<std::string>());
        }
    }
    return record_from_fields(f);
}

SolutionRecord record_from_csv(const std::string& line) {
    std::vector<std::string> f;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) f.push_back(cell);
    if (f.size() != std::size(kFields)) throw std::invalid_argument("CSV record must have 10 fields");
    return record_from_fields(f);
}

namespace {

std::optional<std::string> check_record(const SolutionRecord& r) {
    if (r.x <= 0 || r.y <= 0 || r.a <= 0 || r.b <= 0) return "entries must be positive";
    const BigInt lhs = combine(pow(r.x, 3), r.s1, pow(r.y, 3));
    const BigInt rhs = combine(pow(r.a, r.k), r.s2, pow(r.b, r.k));
    if (lhs != rhs) return "x^3 s1 y^3 != a^k s2 b^k";
    if (lhs != r.value) return "value field does not match";
    if (r.value <= 0) return "value must be positive";
    if (r.s1 == Sign::Plus && r.x < r.y) return "not canonical: expected x >= y";
    if (r.s2 == Sign::Plus && r.a < r.b) return "not canonical: expected a >= b";
    if (gcd(r.x, r.y, r.a, r.b) != r.quad_gcd) return "quad_gcd field does not match";
    if (nontrivial_check(r) != r.nontrivial) return "nontrivial field does not match";
    return std::nullopt;
}

std::optional<std::string> check_identity_line(const nlohmann::json& j) {
    Params params = j.at("params").get<Params>();
    const auto rep = verify_identity(j.at("family").get<std::string>(), params);
    if (rep.domain_violation) return "parameters out of domain: " + *rep.domain_violation;
    if (!rep.equal) return "identity does not hold";
    if (j.contains("lhs") && j.at("lhs").get<std::string>() != to_string(rep.lhs)) return "lhs does not match";
    if (j.contains("rhs") && j.at("rhs").get<std::string>() != to_string(rep.rhs)) return "rhs does not match";
    return std::nullopt;
}

BigInt json_int(const nlohmann::json& j, const char* key) {
    const auto& v = j.at(key);
    if (v.is_number_integer()) return BigInt(static_cast<long>(v.get<long long>()));
    return parse_int(v.get<std::string>(), key);
}

// {"grid":"k4","m","n","eps","region"} or {"grid":"k6","n","region"}
std::optional<std::string> check_grid_line(const nlohmann::json& j) {
    const std::string pipeline = j.at("grid").get<std::string>();
    const std::string region = j.at("region").get<std::string>();
    std::string expected;
    if (pipeline == "k4") {
        const PointQ p = lincomb(curves::k4(), j.at("m").get<long long>(), curves::k4_g1(), j.at("n").get<long long>(),
                                 curves::k4_g2(), j.at("eps").get<int>(), curves::k4_t());
        expected = p.is_infinity() ? to_string(K4Region::Boundary) : to_string(k4_sign_region(p.x()));
    } else if (pipeline == "k6") {
        const long long n = j.at("n").get<long long>();
        if (n < 1) return "n must be >= 1";
        expected = to_string(k6_point(static_cast<unsigned>(n)).region);
    } else {
        return "unknown grid pipeline " + pipeline;
    }
    if (region != expected) return "region " + region + " should be " + expected;
    return std::nullopt;
}

// {"point":"ed","d","u","v","w"}: on E_d and of infinite order.
std::optional<std::string> check_point_line(const nlohmann::json& j) {
    if (j.at("point").get<std::string>() != "ed") return "unknown point kind";
    const CurveQ curve = curves::ed(json_int(j, "d"));
    const PointQ p = PointQ::from_uvw(json_int(j, "u"), json_int(j, "v"), json_int(j, "w"));
    if (!on_curve(curve, p)) return "point is not on the curve";
    for (const auto& t : torsion_points(curve))
        if (t == p) return "point is torsion";
    return std::nullopt;
}

bool starts_with(const std::string& s, std::string_view p) { return s.rfind(p, 0) == 0; }

} // namespace

VerifyReport verify_record_stream(std::istream& in) {
    VerifyReport rep;
    std::string line;
    std::size_t lineno = 0;
    bool csv = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (line == kCsvHeader) {
            csv = true;
            continue;
        }
        VerifyEntry e{lineno, false, {}};
        try {
            std::optional<std::string> problem;
            if (csv) {
                problem = check_record(record_from_csv(line));
            } else {
                const auto j = nlohmann::json::parse(line);
                if (j.is_object() && j.contains("meta")) continue;
                if (j.is_object() && j.contains("family"))
                    problem = check_identity_line(j);
                else if (j.is_object() && j.contains("grid"))
                    problem = check_grid_line(j);
                else if (j.is_object() && j.contains("point"))
                    problem = check_point_line(j);
                else
                    problem = check_record(record_from_json(line));
            }
            e.ok = !problem;
            e.message = problem.value_or("ok");
        } catch (const std::exception& ex) {
            e.message = std::string("malformed: ") + ex.what();
        }
        (e.ok ? rep.passed : rep.failed) += 1;
        rep.entries.push_back(std::move(e));
    }
    return rep;
}

VerifyReport verify_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return verify_record_stream(in);
}

// ---- file-backed runs

namespace {

std::string meta_line(const SearchConfig& cfg) {
    ojson meta;
    meta["tool"] = "cubesum search";
    meta["k"] = cfg.k;
    meta["signs"] = signs_text(cfg.s1, cfg.s2);
    meta["a_max"] = cfg.a_max;
    meta["b_rule"] = "0 < b < a";
    meta["require_coprime"] = cfg.require_coprime;
    meta["require_nontrivial"] = cfg.require_nontrivial;
    meta["format"] = format_name(cfg.format);
    meta["convention"] = "canonical representatives: x >= y (x > y when s1 is '-'), a > b";
    meta["config_hash"] = cfg.config_hash();
    ojson j;
    j["meta"] = meta;
    return cfg.format == OutputFormat::Csv ? "# " + j.dump() + "\n" + kCsvHeader : j.dump();
}

std::string format_record(const SearchConfig& cfg, const SolutionRecord& r) {
    return cfg.format == OutputFormat::Csv ? record_to_csv(r) : record_to_json(r);
}

void write_atomically(const std::string& path, const std::string& contents) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << contents;
        out.flush();
        if (!out) throw std::runtime_error("cannot write " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw std::runtime_error("cannot rename " + tmp + " to " + path + ": " + ec.message());
}

void write_checkpoint(const SearchConfig& cfg, long long last_completed_a) {
    ojson j;
    j["config_hash"] = cfg.config_hash();
    j["last_completed_a"] = last_completed_a;
    write_atomically(cfg.checkpoint_path, j.dump() + "\n");
}

// Keeps the header and every record line with a <= last_a.
std::string truncate_output(const SearchConfig& cfg, long long last_a, std::size_t& kept) {
    std::ifstream in(cfg.output_path);
    std::string out = meta_line(cfg) + "\n";
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#' || line == kCsvHeader || starts_with(line, "{\"meta\"")) continue;
        SolutionRecord r;
        try {
            r = cfg.format == OutputFormat::Csv ? record_from_csv(line) : record_from_json(line);
        } catch (const std::exception&) {
            continue; // torn final line of an interrupted write
        }
        if (r.a > static_cast<long>(last_a)) continue;
        out += line + "\n";
        ++kept;
    }
    return out;
}

} // namespace

RunSummary run_search(const SearchConfig& cfg, const RunOptions& opts) {
    cfg.validate();
    if (cfg.output_path.empty()) throw std::invalid_argument("run_search needs an output path");
    if (cfg.format == OutputFormat::Pretty) throw std::invalid_argument("pretty format is for terminal output only");
    if (opts.resume && cfg.checkpoint_path.empty()) throw std::invalid_argument("resume needs a checkpoint path");

    RunSummary summary;
    long long last_done = 1;
    if (opts.resume && std::filesystem::exists(cfg.checkpoint_path)) {
        std::ifstream in(cfg.checkpoint_path);
        const auto j = nlohmann::json::parse(in);
        if (j.at("config_hash").get<std::string>() != cfg.config_hash())
            throw DomainError("checkpoint " + cfg.checkpoint_path + " was written for a different configuration");
        last_done = j.at("last_completed_a").get<long long>();
    }
    summary.first_a = last_done + 1;
    summary.last_completed_a = last_done;

    std::size_t kept = 0;
    write_atomically(cfg.output_path, truncate_output(cfg, last_done, kept));
    summary.records = kept;
    if (!cfg.checkpoint_path.empty()) write_checkpoint(cfg, last_done);

    std::ofstream out(cfg.output_path, std::ios::app);
    if (!out) throw std::runtime_error("cannot open " + cfg.output_path);

    struct Halt {};
    try {
        search_range(
            cfg,
            [&](const SolutionRecord& r) {
                out << format_record(cfg, r) << '\n';
                ++summary.records;
            },
            [&](long long a) {
                out.flush();
                if (!out) throw std::runtime_error("write to " + cfg.output_path + " failed");
                if (!cfg.checkpoint_path.empty()) write_checkpoint(cfg, a);
                summary.last_completed_a = a;
                if (opts.halt_after_a && a >= *opts.halt_after_a) throw Halt{};
            },
            summary.first_a);
    } catch (const Halt&) {
        return summary;
    }
    summary.complete = true;
    return summary;
}

// ---- counting

BigInt counting_function(unsigned k, Sign s1, Sign s2, const BigInt& N, const CountOptions& opts) {
    if (k < 2) throw std::invalid_argument("k must be >= 2");
    if (N < 1) throw DomainError("N must be >= 1");
    if (s2 == Sign::Minus && !opts.a_cap)
        throw DomainError("for a^k - b^k the value bound does not bound a; pass an explicit a cap");

    BigInt count = 0;
    auto tally = [&](long long a, long long b, const BigInt& value) {
        const BigInt ab(static_cast<long>(a)), bb(static_cast<long>(b));
        const Factorization f = factorize_product(cyclotomic_split(ab, bb, k, s2));
        for (const auto& [x, y] : solve_signed(f, s1)) {
            SolutionRecord r{k, s1, s2, x, y, ab, bb, value, gcd(x, y, ab, bb), false};
            if (r.quad_gcd != 1 || !nontrivial_check(r)) continue;
            const int xy = (s1 == Sign::Plus && x != y) ? 2 : 1;
            const int ab_orders = (s2 == Sign::Plus && a != b) ? 2 : 1;
            count += xy * ab_orders;
        }
    };

    if (s2 == Sign::Plus) {
        for (long long a = 1; pow(BigInt(static_cast<long>(a)), k) < N; ++a) {
            if (opts.a_cap && a > *opts.a_cap) break;
            const BigInt ak = pow(BigInt(static_cast<long>(a)), k);
            for (long long b = 1; b <= a; ++b) {
                const BigInt value = ak + pow(BigInt(static_cast<long>(b)), k);
                if (value > N) break;
                tally(a, b, value);
            }
        }
    } else {
        for (long long a = 2; a <= *opts.a_cap; ++a) {
            const BigInt ak = pow(BigInt(static_cast<long>(a)), k);
            for (long long b = a - 1; b >= 1; --b) {
                const BigInt value = ak - pow(BigInt(static_cast<long>(b)), k);
                if (value > N) break;
                tally(a, b, value);
            }
        }
    }
    return count;
}

} // namespace cubesum
