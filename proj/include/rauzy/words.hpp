#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/errors.hpp"

namespace rauzy {

using Word = std::string;
using Letter = char;

// Integer matrix indexed by dense letter ids. M[i][j] counts occurrences of
// letter i in the image of letter j.
using CountMatrix = std::vector<std::vector<std::int64_t>>;

struct PrimitivityReport {
    bool primitive = false;
    int witness_power = 0; // smallest k with M^k entrywise positive, if primitive
};

// A monoid homomorphism over a finite ordered alphabet. Empty images are
// accepted (flagged via has_empty_image); sources that cannot tolerate them
// reject at construction time.
class Morphism {
public:
    Morphism() = default;
    Morphism(std::string alphabet, std::map<Letter, Word> images);

    static Morphism from_rules(std::initializer_list<std::pair<Letter, Word>> rules);

    const std::string& alphabet() const { return alphabet_; }
    std::size_t alphabet_size() const { return alphabet_.size(); }
    int letter_index(Letter c) const; // throws UnknownLetter
    bool has_letter(Letter c) const;
    const Word& image(Letter c) const; // throws UnknownLetter
    bool has_empty_image() const;

    Word apply(const Word& w) const;
    Word apply_power(const Word& w, int k) const;

    CountMatrix substitution_matrix() const;

    // Lengths |phi^k(c)| for all letters, k = 0..max_power. Values are clamped
    // at length_cap to avoid overflow; clamped entries are exact up to the cap.
    std::vector<std::vector<std::int64_t>> power_lengths(int max_power, std::int64_t length_cap) const;

    PrimitivityReport primitivity() const;
    bool is_primitive() const { return primitivity().primitive; }

    // Dominant eigenvalue of the substitution matrix for a primitive morphism,
    // via power iteration with Collatz-Wielandt bounds. Throws NotPrimitive.
    double perron_estimate(double tol = 1e-9) const;

    bool operator==(const Morphism& o) const {
        return alphabet_ == o.alphabet_ && images_ == o.images_;
    }

    // Text format: one rule per line "x -> image", '#' comments, optional
    // "seed: x" and "coding: name" handled by the caller via parse_morphism_file.
    std::string to_text() const;

private:
    std::string alphabet_;          // sorted unique letters
    std::map<Letter, Word> images_; // one entry per alphabet letter
};

struct MorphismFile {
    Morphism morphism;
    std::optional<Letter> seed;
    std::optional<Morphism> coding; // letter-to-word map used as coding
};

// Parses the "letter -> image" format with '#' comments and optional
// "seed:" / "coding:" lines; coding rules are written "x => image".
MorphismFile parse_morphism_text(const std::string& text);
MorphismFile load_morphism_file(const std::string& path);

// Occurrence count of u in w, overlaps allowed. Empty u counts |w|+1 positions.
std::int64_t count_occurrences(std::string_view w, std::string_view u);

// KMP search: position of first occurrence of pattern in text, or npos.
std::size_t find_kmp(std::string_view text, std::string_view pattern);

} // namespace rauzy
