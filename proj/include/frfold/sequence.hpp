#ifndef FRFOLD_SEQUENCE_HPP
#define FRFOLD_SEQUENCE_HPP

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace frfold {

// Input problems (bad characters, malformed files). The CLI maps these to
// exit status 1.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& msg) : std::runtime_error(msg) {}
};

// Internal invariant violations (table corruption etc.). Exit status 3.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

// Nucleotides are stored as small integers: A=0, C=1, G=2, U=3.
using Nuc = std::uint8_t;

inline constexpr int kNucCount = 4;
inline constexpr char kNucChars[kNucCount + 1] = "ACGU";

inline char nuc_to_char(Nuc a) { return kNucChars[a]; }

// Accepts upper/lower case; T maps to U. Returns nullopt for anything else.
inline std::optional<Nuc> nuc_from_char(char c) {
    switch (c) {
        case 'A': case 'a': return Nuc{0};
        case 'C': case 'c': return Nuc{1};
        case 'G': case 'g': return Nuc{2};
        case 'U': case 'u':
        case 'T': case 't': return Nuc{3};
        default: return std::nullopt;
    }
}

// An RNA sequence over {A,C,G,U}. Positions are 1-indexed in every public
// contract of this library. Immutable after construction.
class RnaSequence {
public:
    RnaSequence() = default;

    // Validating parse; 1-indexed offset of the first bad character is
    // reported in the error message.
    static RnaSequence parse(std::string_view text) {
        RnaSequence s;
        s.residues_.reserve(text.size());
        for (std::size_t idx = 0; idx < text.size(); ++idx) {
            auto nuc = nuc_from_char(text[idx]);
            if (!nuc) {
                throw InputError("invalid nucleotide '" + std::string(1, text[idx]) +
                                 "' at offset " + std::to_string(idx + 1));
            }
            s.residues_.push_back(*nuc);
        }
        return s;
    }

    static RnaSequence from_nucs(std::vector<Nuc> residues) {
        RnaSequence s;
        s.residues_ = std::move(residues);
        return s;
    }

    int size() const { return static_cast<int>(residues_.size()); }

    // 1-indexed access.
    Nuc at(int pos) const { return residues_[static_cast<std::size_t>(pos - 1)]; }

    const std::vector<Nuc>& residues() const { return residues_; }

    std::string to_string() const {
        std::string out;
        out.reserve(residues_.size());
        for (Nuc a : residues_) out.push_back(nuc_to_char(a));
        return out;
    }

private:
    std::vector<Nuc> residues_;
};

// Which pairs count as base pairs, and the minimum loop length h: a pair
// (i, j) is legal only when j - i > h.
struct PairingRule {
    bool wobble = false;
    int min_loop = 0;

    // 1 iff {a,b} is A-U, C-G, or (with wobble) G-U, ignoring distance.
    int complementary(Nuc a, Nuc b) const {
        if (a > b) std::swap(a, b);
        if (a == 0 && b == 3) return 1;              // A-U
        if (a == 1 && b == 2) return 1;              // C-G
        if (wobble && a == 2 && b == 3) return 1;    // G-U
        return 0;
    }

    bool pair_allowed(const RnaSequence& seq, int i, int j) const {
        return j - i > min_loop && complementary(seq.at(i), seq.at(j)) != 0;
    }
};

}  // namespace frfold

#endif
