#include "rauzy/oracle.hpp"

#include <algorithm>
#include <set>

namespace rauzy {

FactorOracle::FactorOracle(std::unique_ptr<IWordSource> source,
                           std::int64_t horizon_cap, std::int64_t safety_factor)
    : source_(std::move(source)), cap_(horizon_cap), safety_(safety_factor) {
    if (!source_) throw ConfigError("oracle needs a source");
    if (cap_ < 16) throw ConfigError("horizon cap too small");
}

void FactorOracle::ensure(std::size_t n) {
    if (buffer_.size() >= n) return;
    if (static_cast<std::int64_t>(n) > cap_)
        throw HorizonExceededError("requested prefix exceeds horizon cap");
    source_->extend(buffer_, n);
}

std::string_view FactorOracle::prefix(std::size_t n) {
    ensure(n);
    return std::string_view(buffer_).substr(0, n);
}

std::int64_t FactorOracle::nominal_window(std::int64_t len) const {
    const std::int64_t floor_len = std::max<std::int64_t>(len, 1);
    if (source_->kind() == SourceKind::EventuallyPeriodic) {
        const auto* ep = dynamic_cast<const EventuallyPeriodicSource*>(source_.get());
        return static_cast<std::int64_t>(ep->preperiod().size() + 2 * ep->period().size()) + floor_len;
    }
    const std::int64_t mult = source_->recurrence_multiplier();
    const std::int64_t base = safety_ * mult * floor_len;
    const Morphism* phi = source_->generator();
    if (phi && source_->certified_linear_recurrence()) {
        // Smallest |phi^m(seed)| >= safety * mult * |u| (clamped by cap).
        const Letter seed = *source_->seed();
        const auto lens = phi->power_lengths(96, cap_ + 1);
        const std::size_t si = static_cast<std::size_t>(phi->letter_index(seed));
        for (const auto& row : lens)
            if (row[si] >= base) return row[si];
        return cap_;
    }
    return base;
}

FactorHit FactorOracle::find_factor(std::string_view u) {
    if (u.empty()) return {Ternary::Yes, 0};
    // Quick hit in whatever is already materialized.
    if (buffer_.size() >= u.size()) {
        const std::size_t p = find_kmp(buffer_, u);
        if (p != std::string_view::npos)
            return {Ternary::Yes, static_cast<std::int64_t>(p)};
    }
    const std::int64_t len = static_cast<std::int64_t>(u.size());
    if (source_->kind() == SourceKind::EventuallyPeriodic) {
        const std::int64_t w = nominal_window(len);
        if (w > cap_) throw HorizonExceededError("periodic window exceeds cap");
        ensure(static_cast<std::size_t>(w));
        const std::size_t p = find_kmp(std::string_view(buffer_).substr(0, static_cast<std::size_t>(w)), u);
        if (p != std::string_view::npos) return {Ternary::Yes, static_cast<std::int64_t>(p)};
        return {Ternary::No, -1};
    }
    const std::int64_t w = nominal_window(len);
    // Stabilization margin: scan twice the nominal window before saying no.
    const std::int64_t target = std::min(cap_, 2 * w);
    ensure(static_cast<std::size_t>(std::min<std::int64_t>(target, cap_)));
    const std::string_view scan = std::string_view(buffer_).substr(
        0, static_cast<std::size_t>(std::min<std::int64_t>(target, static_cast<std::int64_t>(buffer_.size()))));
    const std::size_t p = find_kmp(scan, u);
    if (p != std::string_view::npos) {
        if (static_cast<std::int64_t>(p) + len > w) ++warnings_;
        return {Ternary::Yes, static_cast<std::int64_t>(p)};
    }
    if (!source_->certified_linear_recurrence()) return {Ternary::Unknown, -1};
    if (target < 2 * w) return {Ternary::Unknown, -1}; // cap truncated the window
    return {Ternary::No, -1};
}

Ternary FactorOracle::membership(std::string_view u) { return find_factor(u).verdict; }

bool FactorOracle::is_factor(std::string_view u) {
    switch (membership(u)) {
        case Ternary::Yes: return true;
        case Ternary::No: return false;
        default: throw HorizonExceededError("membership undecided within horizon cap");
    }
}

std::int64_t FactorOracle::count_in_window(std::string_view u, std::int64_t lo, std::int64_t hi) {
    if (lo < 0 || hi < lo) throw Error("bad window");
    ensure(static_cast<std::size_t>(hi));
    std::string_view win = std::string_view(buffer_).substr(
        static_cast<std::size_t>(lo), static_cast<std::size_t>(hi - lo));
    if (u.empty()) return static_cast<std::int64_t>(win.size()) + 1;
    std::int64_t cnt = 0;
    std::string_view rest = win;
    std::size_t base = 0;
    for (;;) {
        const std::size_t p = find_kmp(rest, u);
        if (p == std::string_view::npos) break;
        ++cnt;
        base += p + 1;
        rest = win.substr(base);
    }
    return cnt;
}

const std::vector<Word>& FactorOracle::factors(std::int64_t n) {
    auto it = factor_cache_.find(n);
    if (it != factor_cache_.end()) return it->second;
    if (n < 0) throw Error("factor length must be nonnegative");
    if (n == 0) {
        window_used_[0] = 0;
        return factor_cache_.emplace(0, std::vector<Word>{Word{}}).first->second;
    }

    auto collect = [&](std::int64_t window) {
        ensure(static_cast<std::size_t>(window));
        std::set<std::string_view> seen;
        std::string_view buf(buffer_);
        const std::int64_t limit = std::min<std::int64_t>(window, static_cast<std::int64_t>(buf.size()));
        for (std::int64_t i = 0; i + n <= limit; ++i)
            seen.insert(buf.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(n)));
        return seen;
    };

    std::int64_t w = nominal_window(n);
    if (source_->kind() == SourceKind::EventuallyPeriodic) {
        if (w > cap_) throw HorizonExceededError("cannot certify factor set (periodic window exceeds cap)");
        auto seen = collect(w);
        std::vector<Word> out(seen.begin(), seen.end());
        window_used_[n] = w;
        return factor_cache_.emplace(n, std::move(out)).first->second;
    }
    if (!source_->certified_linear_recurrence())
        throw HorizonExceededError("cannot certify factor set for this source");
    // Stabilize: the set must not grow when the window doubles.
    w = std::min(w, cap_);
    auto cur = collect(w);
    for (;;) {
        if (2 * w > cap_) {
            if (w >= cap_)
                throw HorizonExceededError("factor set did not stabilize within horizon cap");
        }
        const std::int64_t w2 = std::min(2 * w, cap_);
        auto next = collect(w2);
        if (next.size() == cur.size()) {
            std::vector<Word> out;
            out.reserve(next.size());
            for (auto sv : next) out.emplace_back(sv);
            window_used_[n] = w2;
            return factor_cache_.emplace(n, std::move(out)).first->second;
        }
        if (w2 >= cap_)
            throw HorizonExceededError("factor set did not stabilize within horizon cap");
        cur = std::move(next);
        w = w2;
    }
}

std::int64_t FactorOracle::certified_window(std::int64_t n) {
    factors(n);
    return window_used_.at(n);
}

std::unique_ptr<IWordSource> make_fibonacci_source() {
    return std::make_unique<PurelyMorphicSource>(
        Morphism::from_rules({{'a', "ab"}, {'b', "a"}}), 'a');
}

std::unique_ptr<IWordSource> make_thue_morse_source() {
    return std::make_unique<PurelyMorphicSource>(
        Morphism::from_rules({{'a', "ab"}, {'b', "ba"}}), 'a');
}

std::unique_ptr<IWordSource> make_tribonacci_source() {
    return std::make_unique<PurelyMorphicSource>(
        Morphism::from_rules({{'a', "ab"}, {'b', "ac"}, {'c', "a"}}), 'a');
}

} // namespace rauzy
