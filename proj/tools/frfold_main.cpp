// frfold: Four-Russians RNA folding toolkit.
//
//   fold       fold FASTA records with the reference or a block solver
//   bench      counter-based scaling harness, CSV output
//   recognize  CNF-grammar membership (naive or bit-packed CYK)

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"

#include "frfold/bench.hpp"
#include "frfold/cfl.hpp"
#include "frfold/fasta.hpp"
#include "frfold/fr2_fold.hpp"

namespace {

std::string read_all(std::istream& in) {
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

std::string read_input(const std::string& path) {
    if (path.empty()) return read_all(std::cin);
    std::ifstream file(path);
    if (!file) throw frfold::InputError("cannot open '" + path + "'");
    return read_all(file);
}

std::vector<int> parse_sizes(const std::string& text) {
    std::vector<int> sizes;
    std::stringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            sizes.push_back(std::stoi(item));
        } catch (const std::exception&) {
            throw frfold::InputError("bad size '" + item + "'");
        }
        if (sizes.back() < 1) throw frfold::InputError("sizes must be positive");
    }
    return sizes;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Four-Russians RNA folding toolkit"};
    app.require_subcommand(1);

    // fold
    auto* fold = app.add_subcommand("fold", "fold sequences from FASTA input");
    frfold::RunConfig run_config;
    std::string fold_input;
    int fold_w = 0;
    fold->add_option("--alg", run_config.algorithm, "oracle|fr|fr2")
        ->check(CLI::IsMember({"oracle", "fr", "fr2"}))
        ->required();
    fold->add_option("--w", fold_w, "block width override")->check(CLI::Range(1, 63));
    fold->add_option("--min-loop", run_config.min_loop, "minimum loop length h")->check(CLI::NonNegativeNumber);
    fold->add_flag("--wobble", run_config.wobble, "treat G-U as complementary");
    fold->add_option("--format", run_config.output_format, "dotbracket|json")
        ->check(CLI::IsMember({"dotbracket", "json"}));
    fold->add_option("--input", fold_input, "FASTA file (stdin if omitted)");

    // bench
    auto* bench = app.add_subcommand("bench", "scaling harness over random sequences");
    frfold::BenchConfig bench_config;
    std::string bench_sizes, bench_csv_path;
    int bench_w = 0;
    bench->add_option("--alg", bench_config.algorithm, "fr|fr2|all")
        ->check(CLI::IsMember({"fr", "fr2", "all"}))
        ->required();
    bench->add_option("--sizes", bench_sizes, "comma-separated ascending sizes")->required();
    bench->add_option("--w", bench_w, "block width override")->check(CLI::Range(1, 63));
    bench->add_option("--reps", bench_config.reps, "repetitions per size")->check(CLI::PositiveNumber);
    bench->add_option("--seed", bench_config.seed, "random seed");
    bench->add_option("--min-loop", bench_config.min_loop, "minimum loop length h")->check(CLI::NonNegativeNumber);
    bench->add_flag("--wobble", bench_config.wobble, "treat G-U as complementary");
    bench->add_option("--time-tol", bench_config.time_tolerance, "tolerance on count ratios");
    bench->add_option("--space-tol", bench_config.space_tolerance, "tolerance on space ratios");
    bench->add_option("--csv", bench_csv_path, "output CSV path")->required();

    // recognize
    auto* recognize = app.add_subcommand("recognize", "CNF grammar membership, one string per line");
    std::string grammar_path, recognize_input;
    bool use_packed = false, use_naive = false;
    recognize->add_option("--grammar", grammar_path, "grammar file")->required();
    recognize->add_option("--input", recognize_input, "strings file (stdin if omitted)");
    recognize->add_flag("--packed", use_packed, "bit-packed recognizer (default)");
    recognize->add_flag("--naive", use_naive, "plain CYK recognizer");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (*fold) {
            if (fold_w > 0) run_config.w_override = fold_w;
            auto records = frfold::parse_fasta(read_input(fold_input));
            std::cout << frfold::run_fold(run_config, records);
            return 0;
        }
        if (*bench) {
            if (bench_w > 0) bench_config.w_override = bench_w;
            bench_config.sizes = parse_sizes(bench_sizes);
            frfold::BenchOutcome outcome = frfold::run_bench(bench_config);
            std::ofstream csv(bench_csv_path);
            if (!csv) throw frfold::InputError("cannot write '" + bench_csv_path + "'");
            csv << outcome.csv;
            std::cout << outcome.report;
            return outcome.gate_ok ? 0 : 2;
        }
        if (*recognize) {
            if (use_packed && use_naive) throw frfold::InputError("choose one of --packed / --naive");
            std::ifstream grammar_file(grammar_path);
            if (!grammar_file) throw frfold::InputError("cannot open '" + grammar_path + "'");
            frfold::CnfGrammar grammar = frfold::CnfGrammar::parse(read_all(grammar_file));
            std::istringstream lines(read_input(recognize_input));
            std::string line;
            while (std::getline(lines, line)) {
                if (!line.empty() && line.back() == '\r') line.pop_back();
                bool verdict = use_naive ? frfold::recognize_naive(grammar, line)
                                         : frfold::recognize_packed(grammar, line);
                std::cout << (verdict ? "accept" : "reject") << "\n";
            }
            return 0;
        }
    } catch (const frfold::InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const frfold::InternalError& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
