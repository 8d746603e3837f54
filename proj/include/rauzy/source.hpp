#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "rauzy/words.hpp"

namespace rauzy {

// Stream of continued-fraction digits driving a Sturmian word. Implementations
// must be deterministic functions of the index.
class DigitStream {
public:
    virtual ~DigitStream() = default;
    virtual std::int64_t digit(std::size_t i) const = 0; // i >= 0, result >= 1
    virtual std::string describe() const = 0;
    virtual std::unique_ptr<DigitStream> clone() const = 0;
};

// Finite digit list repeated cyclically (quadratic irrationals when periodic).
class CycleDigits final : public DigitStream {
public:
    explicit CycleDigits(std::vector<std::int64_t> digits);
    std::int64_t digit(std::size_t i) const override;
    std::string describe() const override;
    std::unique_ptr<DigitStream> clone() const override;

private:
    std::vector<std::int64_t> digits_;
};

// Aperiodic stream 1,2,1,1,2,1,1,1,2,... (runs of 1s of increasing length
// separated by a 2). Champernowne-style: never eventually periodic.
class RampDigits final : public DigitStream {
public:
    std::int64_t digit(std::size_t i) const override;
    std::string describe() const override;
    std::unique_ptr<DigitStream> clone() const override;
};

enum class SourceKind { PurelyMorphic, Morphic, SturmianCF, EventuallyPeriodic };

// Prefix generator of an infinite word. generate() is monotone: prefixes are
// stable as the requested length grows.
class IWordSource {
public:
    virtual ~IWordSource() = default;
    virtual SourceKind kind() const = 0;
    virtual std::string describe() const = 0;
    virtual std::string alphabet() const = 0;

    // Appends letters until buf.size() >= n (may overshoot).
    virtual void extend(std::string& buf, std::size_t n) const = 0;

    // Morphic structure when present (phi, seed, coding), else nullptr.
    virtual const Morphism* generator() const { return nullptr; }
    virtual std::optional<Letter> seed() const { return std::nullopt; }
    virtual const Morphism* coding() const { return nullptr; }

    // True when the source is known uniformly recurrent with a linear
    // recurrence bound; the oracle uses this for certified non-membership.
    virtual bool certified_linear_recurrence() const = 0;
    // Multiplier m such that every window of length >= m * n of the infinite
    // word is expected to contain all length-n factors (safety factor applied
    // separately by the oracle).
    virtual std::int64_t recurrence_multiplier() const { return 4; }

    virtual std::unique_ptr<IWordSource> clone() const = 0;
};

class PurelyMorphicSource final : public IWordSource {
public:
    PurelyMorphicSource(Morphism phi, Letter seed, int mortality_depth = 64);
    SourceKind kind() const override { return SourceKind::PurelyMorphic; }
    std::string describe() const override;
    std::string alphabet() const override { return phi_.alphabet(); }
    void extend(std::string& buf, std::size_t n) const override;
    const Morphism* generator() const override { return &phi_; }
    std::optional<Letter> seed() const override { return seed_; }
    bool certified_linear_recurrence() const override { return primitive_; }
    std::unique_ptr<IWordSource> clone() const override;

    bool primitive() const { return primitive_; }

private:
    Morphism phi_;
    Letter seed_;
    bool primitive_ = false;
};

class MorphicSource final : public IWordSource {
public:
    MorphicSource(Morphism phi, Letter seed, Morphism coding, int mortality_depth = 64);
    SourceKind kind() const override { return SourceKind::Morphic; }
    std::string describe() const override;
    std::string alphabet() const override;
    void extend(std::string& buf, std::size_t n) const override;
    const Morphism* generator() const override { return &phi_; }
    std::optional<Letter> seed() const override { return seed_; }
    const Morphism* coding() const override { return &coding_; }
    bool certified_linear_recurrence() const override { return primitive_; }
    std::unique_ptr<IWordSource> clone() const override;

private:
    PurelyMorphicSource base_;
    Morphism phi_;
    Letter seed_;
    Morphism coding_;
    bool primitive_ = false;
};

// Characteristic Sturmian word from continued-fraction digits k1,k2,...:
// t0 = b, t1 = a, t_{n+1} = t_n^{k_n} t_{n-1}; the limit is the word. With
// swap_letters the roles of a and b are exchanged (the mirror substitution
// convention).
class SturmianCFSource final : public IWordSource {
public:
    SturmianCFSource(std::unique_ptr<DigitStream> digits, bool swap_letters = false);
    SturmianCFSource(const SturmianCFSource& o);
    SourceKind kind() const override { return SourceKind::SturmianCF; }
    std::string describe() const override;
    std::string alphabet() const override { return "ab"; }
    void extend(std::string& buf, std::size_t n) const override;
    bool certified_linear_recurrence() const override { return true; }
    std::int64_t recurrence_multiplier() const override;
    std::unique_ptr<IWordSource> clone() const override;

    const DigitStream& digits() const { return *digits_; }

private:
    std::unique_ptr<DigitStream> digits_;
    bool swap_ = false;
    // digits consumed so far (monotone; used for the recurrence multiplier)
    mutable std::int64_t max_digit_seen_ = 1;
};

class EventuallyPeriodicSource final : public IWordSource {
public:
    EventuallyPeriodicSource(Word preperiod, Word period);
    SourceKind kind() const override { return SourceKind::EventuallyPeriodic; }
    std::string describe() const override;
    std::string alphabet() const override;
    void extend(std::string& buf, std::size_t n) const override;
    bool certified_linear_recurrence() const override { return true; }
    std::unique_ptr<IWordSource> clone() const override;

    const Word& preperiod() const { return pre_; }
    const Word& period() const { return per_; }

private:
    Word pre_, per_;
};

} // namespace rauzy
