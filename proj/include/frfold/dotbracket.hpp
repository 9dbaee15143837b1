#ifndef FRFOLD_DOTBRACKET_HPP
#define FRFOLD_DOTBRACKET_HPP

#include <algorithm>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "frfold/structure.hpp"

namespace frfold {

// Exactly two lines: the sequence, then '('/')'/'.' per position, with a
// single trailing newline. The format is byte-exact; golden tests depend on
// it. Positionally invalid structures are rejected.
inline std::string emit_dotbracket(const RnaSequence& seq, const SecondaryStructure& st) {
    const int n = seq.size();
    std::string marks(static_cast<std::size_t>(n), '.');
    for (auto [i, j] : st.pairs) {
        if (i < 1 || j > n || i >= j) throw std::invalid_argument("emit_dotbracket: pair out of range");
        if (marks[static_cast<std::size_t>(i) - 1] != '.' || marks[static_cast<std::size_t>(j) - 1] != '.') {
            throw std::invalid_argument("emit_dotbracket: position used twice");
        }
        marks[static_cast<std::size_t>(i) - 1] = '(';
        marks[static_cast<std::size_t>(j) - 1] = ')';
    }
    // Crossing pairs would produce unbalanced nesting; reject them.
    std::vector<std::pair<int, int>> sorted = st.pairs;
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::pair<int, int>> open;
    for (auto [i, j] : sorted) {
        while (!open.empty() && open.back().second < i) open.pop_back();
        if (!open.empty() && open.back().second < j) {
            throw std::invalid_argument("emit_dotbracket: crossing pairs");
        }
        open.emplace_back(i, j);
    }
    return seq.to_string() + "\n" + marks + "\n";
}

}  // namespace frfold

#endif
