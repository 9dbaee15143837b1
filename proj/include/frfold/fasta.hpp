#ifndef FRFOLD_FASTA_HPP
#define FRFOLD_FASTA_HPP

#include <string>
#include <string_view>
#include <vector>

#include "frfold/sequence.hpp"

namespace frfold {

struct FastaRecord {
    std::string id;
    RnaSequence seq;
};

// Standard FASTA: '>' starts a record header (id = first token); sequence
// lines are concatenated with whitespace stripped, case-folded, T mapped to
// U. A headerless file is one anonymous record. Bad characters raise
// InputError naming the record and 1-based offset within its sequence.
inline std::vector<FastaRecord> parse_fasta(std::string_view text) {
    std::vector<FastaRecord> records;
    bool in_record = false;
    std::vector<Nuc> residues;
    std::string id;
    std::size_t seq_offset = 0;

    auto flush = [&]() {
        if (!in_record) return;
        records.push_back({id, RnaSequence::from_nucs(std::move(residues))});
        residues = {};
    };

    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        if (!line.empty() && line.front() == '>') {
            flush();
            in_record = true;
            seq_offset = 0;
            std::string_view rest = line.substr(1);
            std::size_t b = rest.find_first_not_of(" \t\r");
            if (b == std::string_view::npos) {
                id = "";
            } else {
                std::size_t e = rest.find_first_of(" \t\r", b);
                id = std::string(rest.substr(b, e == std::string_view::npos ? rest.size() - b : e - b));
            }
            continue;
        }
        for (char c : line) {
            if (c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f') continue;
            if (!in_record) {
                in_record = true;  // anonymous record
                id = "";
                seq_offset = 0;
            }
            ++seq_offset;
            auto nuc = nuc_from_char(c);
            if (!nuc) {
                throw InputError("record '" + id + "': invalid nucleotide '" + std::string(1, c) +
                                 "' at offset " + std::to_string(seq_offset));
            }
            residues.push_back(*nuc);
        }
        if (eol == text.size()) break;
    }
    flush();
    return records;
}

}  // namespace frfold

#endif
