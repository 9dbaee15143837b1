#include "frfold/bench.hpp"

#include <chrono>
#include <cmath>
#include <sstream>

#include "json.hpp"

#include "frfold/dotbracket.hpp"
#include "frfold/fr2_fold.hpp"
#include "frfold/fr_fold.hpp"
#include "frfold/nussinov.hpp"

namespace frfold {

namespace {

std::uint64_t splitmix(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t x = state;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

}  // namespace

RnaSequence random_sequence(std::uint64_t seed, std::uint64_t index, int n) {
    std::uint64_t state = seed ^ (0xD1B54A32D192ED03ull * (index + 1));
    std::vector<Nuc> residues(static_cast<std::size_t>(n));
    for (auto& r : residues) r = static_cast<Nuc>(splitmix(state) & 3u);
    return RnaSequence::from_nucs(std::move(residues));
}

FoldResult dispatch_fold(const RunConfig& config, const RnaSequence& seq, int* w_used) {
    PairingRule rule{config.wobble, config.min_loop};
    if (w_used) *w_used = config.w_override.value_or(default_block_width(seq.size()));
    if (config.algorithm == "oracle") return fold_oracle(seq, rule);
    if (config.algorithm == "fr") return fold_fr(seq, rule, config.w_override);
    if (config.algorithm == "fr2") return fold_fr2(seq, rule, config.w_override);
    throw InputError("unknown algorithm '" + config.algorithm + "'");
}

std::string run_fold(const RunConfig& config, const std::vector<FastaRecord>& records) {
    PairingRule rule{config.wobble, config.min_loop};
    std::string out;
    for (const auto& record : records) {
        int w_used = 0;
        FoldResult result = dispatch_fold(config, record.seq, &w_used);
        ValidationReport report = validate_structure(record.seq, rule, result.structure);
        if (!report.ok || result.structure.size() != result.score) {
            throw InternalError("solver emitted an invalid structure for record '" + record.id + "'");
        }
        if (config.output_format == "dotbracket") {
            out += emit_dotbracket(record.seq, result.structure);
        } else if (config.output_format == "json") {
            nlohmann::ordered_json j;
            j["id"] = record.id;
            j["n"] = record.seq.size();
            j["alg"] = config.algorithm;
            j["w"] = config.algorithm == "oracle" ? 0 : w_used;
            j["score"] = result.score;
            auto pairs = nlohmann::ordered_json::array();
            for (auto [a, b] : result.structure.pairs) pairs.push_back({a, b});
            j["pairs"] = pairs;
            j["counters"] = {{"central_queries", result.counters.central_queries},
                             {"updation_queries", result.counters.updation_queries},
                             {"inner_iterations", result.counters.inner_iterations},
                             {"peak_table_words", result.counters.peak_table_words},
                             {"precompute_steps", result.counters.precompute_steps}};
            out += j.dump() + "\n";
        } else {
            throw InputError("unknown output format '" + config.output_format + "'");
        }
    }
    return out;
}

std::string bench_csv_header() {
    return "n,w,algorithm,score,central_queries,updation_queries,inner_iterations,"
           "peak_table_words,precompute_steps,wall_time_ms,up_mode";
}

std::string bench_csv_row(const BenchRecord& r) {
    std::ostringstream out;
    out << r.n << ',' << r.w << ',' << r.algorithm << ',' << r.score << ',' << r.central_queries << ','
        << r.updation_queries << ',' << r.inner_iterations << ',' << r.peak_table_words << ','
        << r.precompute_steps << ',';
    out.precision(3);
    out << std::fixed << r.wall_time_ms << ',' << r.up_mode;
    return out.str();
}

namespace {

BenchRecord run_one(const std::string& alg, const RnaSequence& seq, const BenchConfig& config) {
    BenchRecord rec;
    rec.n = seq.size();
    rec.algorithm = alg;
    rec.w = config.w_override.value_or(default_block_width(seq.size()));
    rec.up_mode = "-";
    PairingRule rule{config.wobble, config.min_loop};
    const auto start = std::chrono::steady_clock::now();
    if (alg == "fr") {
        FoldResult r = fold_fr(seq, rule, config.w_override);
        rec.score = r.score;
        rec.central_queries = r.counters.central_queries;
        rec.updation_queries = r.counters.updation_queries;
        rec.inner_iterations = r.counters.inner_iterations;
        rec.peak_table_words = r.counters.peak_table_words;
        rec.precompute_steps = r.counters.precompute_steps;
    } else if (alg == "fr2") {
        Fr2Options options;
        options.budget_bytes = config.budget_bytes;
        Fr2Tables t = run_fr2_dp(seq, rule, config.w_override, options);
        rec.score = seq.size() > 0 ? t.m(1, seq.size()) : 0;
        t.counters.note_words(t.table_words());
        rec.central_queries = t.counters.central_queries;
        rec.updation_queries = t.counters.updation_queries;
        rec.inner_iterations = t.counters.inner_iterations;
        rec.peak_table_words = t.counters.peak_table_words;
        rec.precompute_steps = t.counters.precompute_steps;
        rec.up_mode = t.up ? t.up->mode_name() : "-";
    } else {
        throw InputError("bench: unknown algorithm '" + alg + "'");
    }
    const auto stop = std::chrono::steady_clock::now();
    rec.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    return rec;
}

void append_ratio_line(std::ostringstream& report, bool& gate_ok, const std::string& label,
                       double ratio, double predicted, double tolerance) {
    const double deviation = ratio / predicted - 1.0;
    const bool ok = std::abs(deviation) <= tolerance;
    gate_ok = gate_ok && ok;
    report.precision(3);
    report << std::fixed << label << ": ratio " << ratio << " predicted " << predicted << " deviation "
           << deviation * 100.0 << "% " << (ok ? "[ok]" : "[FAIL]") << "\n";
}

}  // namespace

BenchOutcome run_bench(const BenchConfig& config) {
    if (config.sizes.empty()) throw InputError("bench: no sizes given");
    for (std::size_t i = 1; i < config.sizes.size(); ++i) {
        if (config.sizes[i] <= config.sizes[i - 1]) throw InputError("bench: sizes must be ascending");
    }
    if (config.reps < 1) throw InputError("bench: reps must be positive");

    std::vector<std::string> algs;
    if (config.algorithm == "all") {
        algs = {"fr", "fr2"};
    } else if (config.algorithm == "fr" || config.algorithm == "fr2") {
        algs = {config.algorithm};
    } else {
        throw InputError("bench: algorithm must be fr, fr2 or all");
    }

    BenchOutcome outcome;
    std::ostringstream csv;
    csv << bench_csv_header() << "\n";
    // first record per (alg, size), used for the ratio checks
    std::vector<std::vector<BenchRecord>> firsts(algs.size());

    std::uint64_t record_index = 0;
    for (std::size_t ai = 0; ai < algs.size(); ++ai) {
        for (int n : config.sizes) {
            for (int rep = 0; rep < config.reps; ++rep, ++record_index) {
                RnaSequence seq = random_sequence(config.seed, record_index, n);
                BenchRecord rec = run_one(algs[ai], seq, config);
                csv << bench_csv_row(rec) << "\n";
                outcome.records.push_back(rec);
                if (rep == 0) firsts[ai].push_back(rec);
            }
        }
    }
    outcome.csv = csv.str();

    std::ostringstream report;
    for (std::size_t ai = 0; ai < algs.size(); ++ai) {
        const auto& rows = firsts[ai];
        const bool two_log = algs[ai] == "fr2";
        for (std::size_t s = 1; s < rows.size(); ++s) {
            const BenchRecord& lo = rows[s - 1];
            const BenchRecord& hi = rows[s];
            const double size_ratio = static_cast<double>(hi.n) / lo.n;
            const double width_ratio = static_cast<double>(lo.w) / hi.w;
            const std::uint64_t q_lo = two_log ? lo.updation_queries : lo.central_queries;
            const std::uint64_t q_hi = two_log ? hi.updation_queries : hi.central_queries;
            const char* counter = two_log ? "updation_queries" : "central_queries";
            if (q_lo > 0) {
                const double predicted =
                    size_ratio * size_ratio * size_ratio * (two_log ? width_ratio * width_ratio : width_ratio);
                append_ratio_line(report, outcome.gate_ok,
                                  algs[ai] + " " + counter + " n=" + std::to_string(lo.n) + "->" +
                                      std::to_string(hi.n),
                                  static_cast<double>(q_hi) / q_lo, predicted, config.time_tolerance);
            }
            const double space_lo = static_cast<double>(lo.peak_table_words) * lo.w / (static_cast<double>(lo.n) * lo.n);
            const double space_hi = static_cast<double>(hi.peak_table_words) * hi.w / (static_cast<double>(hi.n) * hi.n);
            const double space_ratio = space_hi / space_lo;
            const bool ok = space_ratio <= config.space_tolerance && space_ratio >= 1.0 / config.space_tolerance;
            outcome.gate_ok = outcome.gate_ok && ok;
            report.precision(3);
            report << std::fixed << algs[ai] << " peak_words*w/n^2 n=" << lo.n << "->" << hi.n << ": "
                   << space_lo << " -> " << space_hi << " ratio " << space_ratio << " "
                   << (ok ? "[ok]" : "[FAIL]") << "\n";
        }
    }
    outcome.report = report.str();
    return outcome;
}

}  // namespace frfold
