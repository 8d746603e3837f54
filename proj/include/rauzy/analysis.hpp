#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/oracle.hpp"

namespace rauzy {

struct ComplexityProfile {
    std::vector<std::int64_t> values; // P(1..N)
    std::vector<std::int64_t> diffs;  // P(n+1) - P(n) for n = 1..N-1

    std::int64_t p(std::int64_t n) const { return values.at(static_cast<std::size_t>(n - 1)); }
};

ComplexityProfile complexity_profile(FactorOracle& oracle, std::int64_t max_len);

// Max of P(n+1) - P(n) over the profile; needs at least two values.
std::int64_t first_difference_bound(const ComplexityProfile& profile);

struct RecurrenceProfile {
    // values[n-1] = P2(n) against the materialized buffer, or nullopt when the
    // buffer was too short to witness a stable value.
    std::vector<std::optional<std::int64_t>> values;
    std::int64_t buffer_length = 0;
};

RecurrenceProfile recurrence_exponent(FactorOracle& oracle, std::int64_t max_len);

struct SpecialFactorReport {
    std::int64_t order = 0;
    std::vector<Word> left_special;
    std::vector<Word> right_special;
    std::vector<Word> bispecial;
};

SpecialFactorReport special_factors(FactorOracle& oracle, std::int64_t k);

struct BalanceReport {
    bool balanced = true;
    std::int64_t length = 0; // length at which the witness was found
    Letter letter = 0;
    Word witness_low, witness_high;
};

BalanceReport balance_check(FactorOracle& oracle, std::int64_t max_len);

struct PeriodicityVerdict {
    enum class Kind { Periodic, NotPeriodicUpTo, Undecided } kind = Kind::Undecided;
    std::int64_t preperiod = 0; // Periodic only
    std::int64_t period = 0;    // Periodic only
    std::int64_t horizon = 0;   // NotPeriodicUpTo: P(n) > n checked for all n <= horizon
    std::string note;
};

// Morse-Hedlund style probe: tests P(n) <= n for every n up to the horizon and
// extracts the minimal (preperiod, period) from the buffer when it triggers.
PeriodicityVerdict periodicity_probe(FactorOracle& oracle, std::int64_t horizon);

struct URVerdict {
    enum class Kind { UR, NotUR, Undecided } kind = Kind::Undecided;
    Word witness;     // NotUR: power witness, or a non-recurring prefix
    std::string reason;
};

// Sufficient-condition probe: primitive => UR; otherwise searches for a short
// w whose n-th power is a factor (NotUR witness); else Undecided.
URVerdict uniform_recurrence_probe(FactorOracle& oracle, std::int64_t power_bound,
                                   std::int64_t length_bound);

} // namespace rauzy
