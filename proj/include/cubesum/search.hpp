#pragma once

#include <cstddef>
#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "cubesum/core.hpp"

namespace cubesum {

struct SolutionRecord {
    unsigned k = 0;
    Sign s1 = Sign::Plus;
    Sign s2 = Sign::Plus;
    BigInt x, y, a, b;
    BigInt value;
    BigInt quad_gcd;
    bool nontrivial = false;

    bool operator==(const SolutionRecord&) const = default;
};

/// Builds a record from a raw quadruple, computing value, gcd and
/// nontriviality, and swapping x/y (s1 = +) and a/b (s2 = +) into
/// canonical order. Throws DomainError if the equation does not hold.
SolutionRecord make_record(unsigned k, Sign s1, Sign s2, BigInt x, BigInt y, BigInt a, BigInt b);

/// True iff no nonempty proper subset of {x^3, s1 y^3, -a^k, -s2 b^k}
/// sums to zero.
bool nontrivial_check(const SolutionRecord& rec);

enum class OutputFormat { Jsonl, Csv, Pretty };

struct SearchConfig {
    unsigned k = 4;
    Sign s1 = Sign::Plus;
    Sign s2 = Sign::Plus;
    long long a_max = 2;
    bool require_coprime = true;
    bool require_nontrivial = true;
    std::string output_path;
    std::string checkpoint_path;
    int workers = 1;
    OutputFormat format = OutputFormat::Jsonl;

    void validate() const;
    // Hash over the fields that determine the output (not paths or workers).
    std::string config_hash() const;
};

/// All records for one (a, b) pair, ascending by x.
std::vector<SolutionRecord> solutions_for_pair(const SearchConfig& cfg, long long a, long long b);

using RecordSink = std::function<void(const SolutionRecord&)>;

/// Serial reference: every 0 < b < a <= a_max, records in (a, b, x) order.
void search_range_serial(const SearchConfig& cfg, const RecordSink& sink, long long a_first = 2);

/// OpenMP kernel over blocks of a with cfg.workers threads. Calls
/// on_a_done(a) after the records of each a have been passed to the sink,
/// in increasing a. Output is identical to search_range_serial.
void search_range(const SearchConfig& cfg, const RecordSink& sink,
                  const std::function<void(long long)>& on_a_done = {}, long long a_first = 2);

std::vector<SolutionRecord> collect_search(const SearchConfig& cfg, bool parallel);

struct RunOptions {
    bool resume = false;
    // Stops after completing this a (simulates an interrupted run).
    std::optional<long long> halt_after_a;
};

struct RunSummary {
    std::size_t records = 0;
    long long first_a = 2;
    long long last_completed_a = 1;
    bool complete = false;
};

/// File-backed search: writes the metadata header and records to
/// cfg.output_path, checkpointing {config_hash, last_completed_a} after
/// each a (write-then-rename). With resume, output past the checkpoint
/// is discarded and the scan continues. Throws DomainError on a hash
/// mismatch and std::runtime_error on I/O failure.
RunSummary run_search(const SearchConfig& cfg, const RunOptions& opts = {});

struct CountOptions {
    std::optional<long long> a_cap;
};

/// C_k(s1,s2)(N): ordered nontrivial coprime quadruples with 0 < value <= N.
/// For s2 = - an explicit a_cap is required and the count is restricted to
/// a <= a_cap. Throws DomainError otherwise.
BigInt counting_function(unsigned k, Sign s1, Sign s2, const BigInt& N, const CountOptions& opts = {});

// ---- record files

std::string record_to_json(const SolutionRecord& rec);
std::string record_to_csv(const SolutionRecord& rec);
std::string record_to_pretty(const SolutionRecord& rec);
inline constexpr const char* kCsvHeader = "k,s1,s2,x,y,a,b,value,quad_gcd,nontrivial";

/// Parses one JSON line in the record schema. Throws std::invalid_argument.
SolutionRecord record_from_json(const std::string& line);
SolutionRecord record_from_csv(const std::string& line);

struct VerifyEntry {
    std::size_t line = 0;
    bool ok = false;
    std::string message;
};

struct VerifyReport {
    std::vector<VerifyEntry> entries;
    std::size_t passed = 0;
    std::size_t failed = 0;
    bool all_passed() const { return failed == 0; }
};

/// Re-verifies equation, canonical order, gcd and nontriviality of every
/// record. Lines carrying a "family" key are re-checked as identity reports,
/// "grid" lines by recomputing the region, "point" lines as non-torsion points.
/// Malformed lines fail with their line number.
VerifyReport verify_records(const std::string& path);
VerifyReport verify_record_stream(std::istream& in);

} // namespace cubesum
