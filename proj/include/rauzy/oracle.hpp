#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rauzy/source.hpp"

namespace rauzy {

enum class Ternary { No, Yes, Unknown };

struct FactorHit {
    Ternary verdict = Ternary::Unknown;
    std::int64_t position = -1; // first occurrence when verdict == Yes
};

// Adaptive prefix buffer of an infinite word answering factor-membership,
// occurrence-count and factor-set queries. Negative membership answers are
// certified: for linearly recurrent sources a word u is declared a non-factor
// only after scanning a prefix of length >= 2 * W(|u|) where W is the
// configured certification window; for other sources absence is Unknown.
class FactorOracle {
public:
    explicit FactorOracle(std::unique_ptr<IWordSource> source,
                          std::int64_t horizon_cap = (1LL << 22),
                          std::int64_t safety_factor = 4);

    FactorOracle(const FactorOracle&) = delete;
    FactorOracle& operator=(const FactorOracle&) = delete;

    const IWordSource& source() const { return *source_; }
    std::int64_t horizon_cap() const { return cap_; }
    std::int64_t safety_factor() const { return safety_; }

    // First n letters; throws HorizonExceeded when n > cap.
    std::string_view prefix(std::size_t n);
    const std::string& buffer() const { return buffer_; }

    // Membership with certified negatives (see class comment).
    Ternary membership(std::string_view u);
    // Membership plus a witness position of the first occurrence.
    FactorHit find_factor(std::string_view u);
    // Throwing variant: Unknown -> HorizonExceeded.
    bool is_factor(std::string_view u);

    // Exact occurrence count (overlaps allowed) in buffer[lo, hi).
    std::int64_t count_in_window(std::string_view u, std::int64_t lo, std::int64_t hi);

    // Exact factor set at length n, certified by window stabilization.
    // Sorted lexicographically. Throws HorizonExceeded when uncertifiable.
    const std::vector<Word>& factors(std::int64_t n);

    // Length of the prefix window the factor set at length n was read from.
    std::int64_t certified_window(std::int64_t n);

    // Times a word was found beyond its nominal certification window; a
    // nonzero value means the safety factor is too small for this source.
    std::int64_t certification_warnings() const { return warnings_; }

private:
    void ensure(std::size_t n);
    std::int64_t nominal_window(std::int64_t len) const;

    std::unique_ptr<IWordSource> source_;
    std::int64_t cap_;
    std::int64_t safety_;
    std::string buffer_;
    std::map<std::int64_t, std::vector<Word>> factor_cache_;
    std::map<std::int64_t, std::int64_t> window_used_;
    std::int64_t warnings_ = 0;
};

// Convenience builders for the classical test corpus.
std::unique_ptr<IWordSource> make_fibonacci_source();
std::unique_ptr<IWordSource> make_thue_morse_source();
std::unique_ptr<IWordSource> make_tribonacci_source();

} // namespace rauzy
