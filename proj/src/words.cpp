#include "sg/words.hpp"

#include <stdexcept>

namespace sg {

static void check_rank(int rank) {
    if (rank < 1 || rank > kMaxRank)
        throw std::invalid_argument("rank must be in [1, " + std::to_string(kMaxRank) + "]");
}

static void check_letter(int rank, const Letter& l) {
    if (l.gen < 1 || l.gen > rank) throw std::invalid_argument("letter outside rank");
}

ReducedWord reduce(int rank, const std::vector<Letter>& letters) {
    check_rank(rank);
    ReducedWord w;
    w.rank = rank;
    for (const Letter& l : letters) {
        check_letter(rank, l);
        if (!w.letters.empty() && w.letters.back() == l.inv())
            w.letters.pop_back();
        else
            w.letters.push_back(l);
    }
    return w;
}

ReducedWord concat(const ReducedWord& w1, const ReducedWord& w2) {
    if (w1.rank != w2.rank) throw std::invalid_argument("rank mismatch in concat");
    std::vector<Letter> all = w1.letters;
    all.insert(all.end(), w2.letters.begin(), w2.letters.end());
    return reduce(w1.rank, all);
}

ReducedWord inverse(const ReducedWord& w) {
    ReducedWord r;
    r.rank = w.rank;
    r.letters.reserve(w.letters.size());
    for (auto it = w.letters.rbegin(); it != w.letters.rend(); ++it)
        r.letters.push_back(it->inv());
    return r;
}

Int sphere_size(int n, int r) {
    check_rank(n);
    if (r < 0) throw std::invalid_argument("negative radius");
    if (r == 0) return 1;
    Int out = 2 * n;
    for (int i = 1; i < r; ++i) out *= 2 * n - 1;
    return out;
}

Int ball_size(int n, int r) {
    check_rank(n);
    if (r < 0) throw std::invalid_argument("negative radius");
    Int total = 1;
    for (int i = 1; i <= r; ++i) total += sphere_size(n, i);
    return total;
}

Rat cylinder_measure(int n, const ReducedWord& w) {
    if (n != w.rank) throw std::invalid_argument("rank mismatch in cylinder_measure");
    return Rat(Int(1), sphere_size(n, w.length()));
}

std::vector<ReducedWord> shortlex_enumerate(int n, int r_max) {
    check_rank(n);
    if (r_max < 0) throw std::invalid_argument("negative radius");
    std::vector<ReducedWord> out;
    ReducedWord e;
    e.rank = n;
    out.push_back(e);
    std::size_t level_begin = 0, level_end = 1;
    for (int len = 1; len <= r_max; ++len) {
        std::size_t next_begin = out.size();
        for (std::size_t i = level_begin; i < level_end; ++i) {
            for (int slot = 0; slot < 2 * n; ++slot) {
                Letter l = slot_letter(slot);
                const ReducedWord& base = out[i];
                if (!base.letters.empty() && base.letters.back() == l.inv()) continue;
                ReducedWord w = base;
                w.letters.push_back(l);
                out.push_back(std::move(w));
            }
        }
        level_begin = next_begin;
        level_end = out.size();
    }
    return out;
}

ReducedWord parse_word(int rank, const std::string& text) {
    check_rank(rank);
    std::vector<Letter> letters;
    if (text == "e") return reduce(rank, letters);
    for (char c : text) {
        Letter l;
        if (c >= 'a' && c <= 'z') {
            l = {c - 'a' + 1, false};
        } else if (c >= 'A' && c <= 'Z') {
            l = {c - 'A' + 1, true};
        } else {
            throw std::invalid_argument(std::string("bad character in word: '") + c + "'");
        }
        if (l.gen > rank)
            throw std::invalid_argument(std::string("letter '") + c + "' outside rank " +
                                        std::to_string(rank));
        letters.push_back(l);
    }
    return reduce(rank, letters);
}

std::string word_str(const ReducedWord& w) {
    if (w.letters.empty()) return "e";
    std::string s;
    for (const Letter& l : w.letters)
        s += static_cast<char>((l.inverse ? 'A' : 'a') + l.gen - 1);
    return s;
}

}  // namespace sg
