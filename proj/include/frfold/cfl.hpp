#ifndef FRFOLD_CFL_HPP
#define FRFOLD_CFL_HPP

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "frfold/counters.hpp"
#include "frfold/sequence.hpp"

namespace frfold {

// A grammar in Chomsky normal form: rules A -> B C and A -> 'a'. CNF has no
// epsilon rules, so acceptance of the empty string is carried as an explicit
// flag on the start symbol.
struct CnfGrammar {
    std::vector<std::string> nonterminals;  // index is the symbol id
    std::set<char> terminals;
    std::vector<std::pair<int, char>> unit_rules;    // (A, a)
    std::vector<std::array<int, 3>> binary_rules;    // (A, B, C)
    int start = 0;
    bool nullable_start = false;

    int g() const { return static_cast<int>(nonterminals.size()); }

    // Text format: first non-comment line "start: <Name>", optional
    // "nullable: true", then one rule per line ("A -> B C" or "A -> 'a'");
    // '#' starts a comment.
    static CnfGrammar parse(std::string_view text);
};

// Plain CYK over per-cell nonterminal bitmasks.
bool recognize_naive(const CnfGrammar& grammar, std::string_view input);

struct PackedStats {
    std::uint64_t word_ops = 0;     // word-combining operations in the split loop
    std::uint64_t table_words = 0;  // allocated packed-table words
    int w = 0;
};

// Bit-packed CYK: per nonterminal, the boolean table is stored twice, packed
// w booleans per word along rows and along columns, so one word conjunction
// tests w split candidates at a time.
bool recognize_packed(const CnfGrammar& grammar, std::string_view input,
                      std::optional<int> w_override = std::nullopt, PackedStats* stats = nullptr);

}  // namespace frfold

#endif
