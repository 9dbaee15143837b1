#include "frfold/cfl.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "frfold/diffvec.hpp"

namespace frfold {

namespace {

std::string strip(std::string_view line) {
    std::size_t hash = line.find('#');
    if (hash != std::string_view::npos) line = line.substr(0, hash);
    std::size_t b = line.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    std::size_t e = line.find_last_not_of(" \t\r");
    return std::string(line.substr(b, e - b + 1));
}

std::vector<std::string> split_ws(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string tok;
    while (in >> tok) out.push_back(tok);
    return out;
}

}  // namespace

CnfGrammar CnfGrammar::parse(std::string_view text) {
    CnfGrammar grammar;
    std::map<std::string, int> ids;
    auto intern = [&](const std::string& name) {
        auto [it, inserted] = ids.emplace(name, static_cast<int>(grammar.nonterminals.size()));
        if (inserted) grammar.nonterminals.push_back(name);
        return it->second;
    };

    bool saw_start = false;
    int lineno = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string line = strip(text.substr(pos, eol - pos));
        pos = eol + 1;
        ++lineno;
        if (line.empty()) continue;

        if (!saw_start) {
            auto toks = split_ws(line);
            if (toks.size() != 2 || toks[0] != "start:") {
                throw InputError("grammar line " + std::to_string(lineno) +
                                 ": expected 'start: <Name>' as the first directive");
            }
            grammar.start = intern(toks[1]);
            saw_start = true;
            continue;
        }
        auto toks = split_ws(line);
        if (toks.size() == 2 && toks[0] == "nullable:") {
            if (toks[1] == "true") {
                grammar.nullable_start = true;
            } else if (toks[1] == "false") {
                grammar.nullable_start = false;
            } else {
                throw InputError("grammar line " + std::to_string(lineno) + ": nullable must be true or false");
            }
            continue;
        }
        if (toks.size() >= 2 && toks[1] == "->") {
            const int lhs = intern(toks[0]);
            if (toks.size() == 3 && toks[2].size() == 3 && toks[2].front() == '\'' && toks[2].back() == '\'') {
                const char a = toks[2][1];
                grammar.unit_rules.emplace_back(lhs, a);
                grammar.terminals.insert(a);
                continue;
            }
            if (toks.size() == 4 && toks[2].front() != '\'' && toks[3].front() != '\'') {
                grammar.binary_rules.push_back({lhs, intern(toks[2]), intern(toks[3])});
                continue;
            }
        }
        throw InputError("grammar line " + std::to_string(lineno) + ": cannot parse '" + line + "'");
    }
    if (!saw_start) throw InputError("grammar: missing 'start: <Name>' directive");
    return grammar;
}

namespace {

void check_terminals(const CnfGrammar& grammar, std::string_view input) {
    for (std::size_t idx = 0; idx < input.size(); ++idx) {
        if (!grammar.terminals.count(input[idx])) {
            throw InputError("unknown terminal '" + std::string(1, input[idx]) + "' at offset " +
                             std::to_string(idx + 1));
        }
    }
}

}  // namespace

bool recognize_naive(const CnfGrammar& grammar, std::string_view input) {
    check_terminals(grammar, input);
    const int n = static_cast<int>(input.size());
    if (n == 0) return grammar.nullable_start;
    const int g = grammar.g();
    const int wpc = (g + 63) / 64;  // mask words per cell
    std::vector<std::uint64_t> cells(static_cast<std::size_t>(n) * n * wpc, 0);
    auto cell = [&](int i, int j) {
        return cells.data() + (static_cast<std::size_t>(i - 1) * n + (j - 1)) * wpc;
    };
    auto set_bit = [&](std::uint64_t* mask, int a) { mask[a >> 6] |= std::uint64_t{1} << (a & 63); };
    auto has_bit = [&](const std::uint64_t* mask, int a) {
        return (mask[a >> 6] >> (a & 63)) & 1u;
    };

    for (int i = 1; i <= n; ++i) {
        for (const auto& [a, c] : grammar.unit_rules) {
            if (c == input[static_cast<std::size_t>(i - 1)]) set_bit(cell(i, i), a);
        }
    }
    for (int len = 2; len <= n; ++len) {
        for (int i = 1; i + len - 1 <= n; ++i) {
            const int j = i + len - 1;
            std::uint64_t* out = cell(i, j);
            for (const auto& rule : grammar.binary_rules) {
                if (has_bit(out, rule[0])) continue;
                for (int p = i; p < j; ++p) {
                    if (has_bit(cell(i, p), rule[1]) && has_bit(cell(p + 1, j), rule[2])) {
                        set_bit(out, rule[0]);
                        break;
                    }
                }
            }
        }
    }
    return has_bit(cell(1, n), grammar.start) != 0;
}

bool recognize_packed(const CnfGrammar& grammar, std::string_view input, std::optional<int> w_override,
                      PackedStats* stats) {
    check_terminals(grammar, input);
    const int n = static_cast<int>(input.size());
    if (n == 0) return grammar.nullable_start;
    const int g = grammar.g();
    const int w = w_override.value_or(default_block_width(n));
    if (w < 1 || w > kWordBits - 1) throw std::invalid_argument("packed recognizer: width out of range");
    const int k = n / w + 1;

    // rows[a]: bit q-1 of word (i, t) is T_a[i, t*w+q]; cols[a]: bit q-1 of
    // word (j, t) is T_a[t*w+q, j]. Bits beyond what shorter spans have
    // produced are still zero, which is exactly the p-range the split loop
    // needs, so no masking is required.
    const std::size_t plane = static_cast<std::size_t>(n) * k;
    std::vector<std::uint64_t> rows(static_cast<std::size_t>(g) * plane, 0);
    std::vector<std::uint64_t> cols(static_cast<std::size_t>(g) * plane, 0);
    auto row_word = [&](int a, int i, int t) -> std::uint64_t& {
        return rows[a * plane + static_cast<std::size_t>(i - 1) * k + t];
    };
    auto col_word = [&](int a, int j, int t) -> std::uint64_t& {
        return cols[a * plane + static_cast<std::size_t>(j - 1) * k + t];
    };
    auto set_cell = [&](int a, int i, int j) {
        row_word(a, i, (j - 1) / w) |= std::uint64_t{1} << ((j - 1) % w);
        col_word(a, j, (i - 1) / w) |= std::uint64_t{1} << ((i - 1) % w);
    };
    auto has_cell = [&](int a, int i, int j) {
        return (row_word(a, i, (j - 1) / w) >> ((j - 1) % w)) & 1u;
    };

    std::uint64_t word_ops = 0;
    for (int i = 1; i <= n; ++i) {
        for (const auto& [a, c] : grammar.unit_rules) {
            if (c == input[static_cast<std::size_t>(i - 1)]) set_cell(a, i, i);
        }
    }
    for (int len = 2; len <= n; ++len) {
        for (int i = 1; i + len - 1 <= n; ++i) {
            const int j = i + len - 1;
            const int t_lo = (i - 1) / w;
            const int t_hi = (j - 2) / w;  // block of p = j-1
            for (const auto& rule : grammar.binary_rules) {
                if (has_cell(rule[0], i, j)) continue;
                for (int t = t_lo; t <= t_hi; ++t) {
                    const std::uint64_t rw = row_word(rule[1], i, t);
                    std::uint64_t cw = col_word(rule[2], j, t) >> 1;
                    if (t + 1 < k) cw |= (col_word(rule[2], j, t + 1) & 1u) << (w - 1);
                    ++word_ops;
                    if (rw & cw) {
                        set_cell(rule[0], i, j);
                        break;
                    }
                }
            }
        }
    }
    if (stats) {
        stats->word_ops = word_ops;
        stats->table_words = static_cast<std::uint64_t>(rows.size()) + cols.size();
        stats->w = w;
    }
    return has_cell(grammar.start, 1, n) != 0;
}

}  // namespace frfold
