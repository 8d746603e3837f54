#include "rauzy/source.hpp"

#include <algorithm>
#include <sstream>

namespace rauzy {

CycleDigits::CycleDigits(std::vector<std::int64_t> digits) : digits_(std::move(digits)) {
    if (digits_.empty()) throw ConfigError("digit cycle must be nonempty");
    for (auto d : digits_)
        if (d < 1) throw ConfigError("continued-fraction digits must be positive");
}

std::int64_t CycleDigits::digit(std::size_t i) const { return digits_[i % digits_.size()]; }

std::string CycleDigits::describe() const {
    std::ostringstream os;
    os << "cycle[";
    for (std::size_t i = 0; i < digits_.size(); ++i)
        os << (i ? "," : "") << digits_[i];
    os << "]";
    return os.str();
}

std::unique_ptr<DigitStream> CycleDigits::clone() const {
    return std::make_unique<CycleDigits>(digits_);
}

std::int64_t RampDigits::digit(std::size_t i) const {
    // Blocks: 1 2 | 1 1 2 | 1 1 1 2 | ... block m (m>=1) has m ones then a 2.
    std::size_t pos = i;
    for (std::size_t m = 1;; ++m) {
        if (pos < m) return 1;
        if (pos == m) return 2;
        pos -= m + 1;
    }
}

std::string RampDigits::describe() const { return "ramp"; }

std::unique_ptr<DigitStream> RampDigits::clone() const { return std::make_unique<RampDigits>(); }

namespace {

// Letters whose phi^k-image is empty for some k <= depth.
std::vector<bool> mortal_letters(const Morphism& phi, int depth) {
    const std::string& a = phi.alphabet();
    std::vector<bool> mortal(a.size(), false);
    bool changed = true;
    int rounds = 0;
    while (changed && rounds++ <= depth) {
        changed = false;
        for (std::size_t i = 0; i < a.size(); ++i) {
            if (mortal[i]) continue;
            const Word& img = phi.image(a[i]);
            bool all = true;
            for (Letter c : img)
                if (!mortal[static_cast<std::size_t>(phi.letter_index(c))]) { all = false; break; }
            if (all) { mortal[i] = true; changed = true; }
        }
    }
    return mortal;
}

void check_purely_morphic(const Morphism& phi, Letter seed, int depth) {
    if (!phi.has_letter(seed)) throw UnknownLetterError(seed);
    const Word& img = phi.image(seed);
    if (img.empty() || img[0] != seed)
        throw InvalidSourceError(std::string("phi(") + seed + ") must start with " + seed);
    if (img.size() < 2)
        throw InvalidSourceError(std::string("phi(") + seed + ") = " + seed + " gives no growth");
    const auto mortal = mortal_letters(phi, depth);
    // u = phi(seed) minus the seed; phi^k(u) must never empty out.
    for (std::size_t i = 1; i < img.size(); ++i)
        if (!mortal[static_cast<std::size_t>(phi.letter_index(img[i]))]) return;
    throw InvalidSourceError("phi^k(u) becomes empty: not a valid purely morphic source");
}

} // namespace

PurelyMorphicSource::PurelyMorphicSource(Morphism phi, Letter seed, int mortality_depth)
    : phi_(std::move(phi)), seed_(seed) {
    check_purely_morphic(phi_, seed_, mortality_depth);
    primitive_ = phi_.is_primitive();
}

std::string PurelyMorphicSource::describe() const {
    std::ostringstream os;
    os << "purely_morphic(seed=" << seed_ << "; ";
    for (Letter c : phi_.alphabet()) os << c << "->" << phi_.image(c) << " ";
    os << ")";
    return os.str();
}

void PurelyMorphicSource::extend(std::string& buf, std::size_t n) const {
    if (buf.empty()) buf.assign(1, seed_);
    // phi(buf) extends buf because phi(seed) starts with seed. Erasable tails
    // cannot shrink the prefix below its current length.
    while (buf.size() < n) {
        std::string next = phi_.apply(buf);
        if (next.size() <= buf.size())
            throw InvalidSourceError("purely morphic source stopped growing");
        buf = std::move(next);
    }
}

std::unique_ptr<IWordSource> PurelyMorphicSource::clone() const {
    return std::make_unique<PurelyMorphicSource>(*this);
}

MorphicSource::MorphicSource(Morphism phi, Letter seed, Morphism coding, int mortality_depth)
    : base_(phi, seed, mortality_depth), phi_(std::move(phi)), seed_(seed),
      coding_(std::move(coding)) {
    primitive_ = phi_.is_primitive();
    if (coding_.has_empty_image())
        throw InvalidSourceError("coding with empty images is not supported");
}

std::string MorphicSource::describe() const {
    std::ostringstream os;
    os << "morphic(seed=" << seed_ << "; ";
    for (Letter c : phi_.alphabet()) os << c << "->" << phi_.image(c) << " ";
    os << "; coding ";
    for (Letter c : coding_.alphabet()) os << c << "=>" << coding_.image(c) << " ";
    os << ")";
    return os.str();
}

std::string MorphicSource::alphabet() const {
    std::string out;
    for (Letter c : phi_.alphabet())
        out += coding_.image(c);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void MorphicSource::extend(std::string& buf, std::size_t n) const {
    // Regenerate from the base word; coding is letter-to-word so prefixes map
    // to prefixes and the result is monotone.
    std::string base;
    std::size_t need = n + 1;
    for (;;) {
        base_.extend(base, need);
        std::string coded = coding_.apply(base);
        if (coded.size() >= n || need > (1u << 28)) {
            if (coded.size() < n)
                throw InvalidSourceError("coding collapses the word too much");
            buf = std::move(coded);
            return;
        }
        need *= 2;
    }
}

std::unique_ptr<IWordSource> MorphicSource::clone() const {
    return std::make_unique<MorphicSource>(*this);
}

SturmianCFSource::SturmianCFSource(std::unique_ptr<DigitStream> digits, bool swap_letters)
    : digits_(std::move(digits)), swap_(swap_letters) {
    if (!digits_) throw ConfigError("SturmianCF needs a digit stream");
}

SturmianCFSource::SturmianCFSource(const SturmianCFSource& o)
    : digits_(o.digits_->clone()), swap_(o.swap_), max_digit_seen_(o.max_digit_seen_) {}

std::string SturmianCFSource::describe() const {
    std::ostringstream os;
    os << "sturmian_cf(digits=" << digits_->describe() << (swap_ ? ", swapped" : "") << ")";
    return os.str();
}

void SturmianCFSource::extend(std::string& buf, std::size_t n) const {
    std::string prev(1, swap_ ? 'a' : 'b'); // t0
    std::string cur(1, swap_ ? 'b' : 'a');  // t1
    std::size_t i = 0;
    while (cur.size() < n) {
        const std::int64_t k = digits_->digit(i++);
        if (k < 1) throw ConfigError("continued-fraction digits must be positive");
        max_digit_seen_ = std::max(max_digit_seen_, k);
        std::string next;
        next.reserve(cur.size() * static_cast<std::size_t>(k) + prev.size());
        for (std::int64_t r = 0; r < k; ++r) next += cur;
        next += prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    if (buf.size() < cur.size()) buf = std::move(cur);
}

std::int64_t SturmianCFSource::recurrence_multiplier() const {
    // Every length-n factor of a Sturmian word recurs within (d_max + 2) * n
    // letters, d_max the largest partial quotient seen so far.
    return max_digit_seen_ + 2;
}

std::unique_ptr<IWordSource> SturmianCFSource::clone() const {
    return std::make_unique<SturmianCFSource>(*this);
}

EventuallyPeriodicSource::EventuallyPeriodicSource(Word preperiod, Word period)
    : pre_(std::move(preperiod)), per_(std::move(period)) {
    if (per_.empty()) throw ConfigError("period must be nonempty");
}

std::string EventuallyPeriodicSource::describe() const {
    return "eventually_periodic(pre=\"" + pre_ + "\", period=\"" + per_ + "\")";
}

std::string EventuallyPeriodicSource::alphabet() const {
    std::string out = pre_ + per_;
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void EventuallyPeriodicSource::extend(std::string& buf, std::size_t n) const {
    if (buf.empty()) buf = pre_;
    while (buf.size() < n) buf += per_;
}

std::unique_ptr<IWordSource> EventuallyPeriodicSource::clone() const {
    return std::make_unique<EventuallyPeriodicSource>(*this);
}

} // namespace rauzy
