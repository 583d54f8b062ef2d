#pragma once
// Reduced words over the free group F_n and the uniform boundary measure
// on cylinders: arithmetic, enumeration, parsing.
#include <string>
#include <vector>

#include "sg/rational.hpp"

namespace sg {

inline constexpr int kMaxRank = 26;  // letters a..z

// One generator or inverse generator. gen is 1-based, 1 <= gen <= rank.
struct Letter {
    int gen = 1;
    bool inverse = false;

    Letter inv() const { return {gen, !inverse}; }
    bool operator==(const Letter&) const = default;
    // Enumeration order: a < a^-1 < b < b^-1 < ...
    bool operator<(const Letter& o) const {
        return gen != o.gen ? gen < o.gen : inverse < o.inverse;
    }
};

// Index of a letter in the fixed slot order a,out / a,in / b,out / b,in ...
// (out = the generator itself, in = its inverse); range [0, 2n).
inline int letter_slot(const Letter& l) { return 2 * (l.gen - 1) + (l.inverse ? 1 : 0); }
inline Letter slot_letter(int slot) { return {slot / 2 + 1, (slot % 2) != 0}; }
inline int inverse_slot(int slot) { return slot ^ 1; }

// A freely reduced word: no adjacent letter-inverse pairs.
struct ReducedWord {
    int rank = 2;
    std::vector<Letter> letters;

    int length() const { return static_cast<int>(letters.size()); }
    bool empty() const { return letters.empty(); }
    bool operator==(const ReducedWord&) const = default;
};

// Cancels adjacent inverse pairs until none remain (stack pass; confluent).
ReducedWord reduce(int rank, const std::vector<Letter>& letters);

// Reduced product w1 * w2. Ranks must agree.
ReducedWord concat(const ReducedWord& w1, const ReducedWord& w2);

// The group inverse (letters reversed, each inverted).
ReducedWord inverse(const ReducedWord& w);

// |sphere of radius r| in F_n: 1 at r=0, else 2n(2n-1)^(r-1).
Int sphere_size(int n, int r);

// |ball of radius r| = 1 + sum of sphere sizes.
Int ball_size(int n, int r);

// Uniform cylinder measure of the shadow of w: 1/sphere_size(n, |w|).
Rat cylinder_measure(int n, const ReducedWord& w);

// All reduced words of length <= r_max in shortlex order
// (length, then a < a^-1 < b < b^-1 < ...).
std::vector<ReducedWord> shortlex_enumerate(int n, int r_max);

// Text form: 'a'..'z' generators, 'A'..'Z' inverses; "" or "e" is identity.
// Input need not be reduced; the result always is.
ReducedWord parse_word(int rank, const std::string& text);

std::string word_str(const ReducedWord& w);

}  // namespace sg
