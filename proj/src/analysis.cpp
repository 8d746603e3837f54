#include "rauzy/analysis.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rauzy {

ComplexityProfile complexity_profile(FactorOracle& oracle, std::int64_t max_len) {
    ComplexityProfile prof;
    for (std::int64_t n = 1; n <= max_len; ++n)
        prof.values.push_back(static_cast<std::int64_t>(oracle.factors(n).size()));
    for (std::size_t i = 0; i + 1 < prof.values.size(); ++i)
        prof.diffs.push_back(prof.values[i + 1] - prof.values[i]);
    return prof;
}

std::int64_t first_difference_bound(const ComplexityProfile& profile) {
    if (profile.values.size() < 2) throw Error("profile too short for first differences");
    std::int64_t best = profile.diffs.front();
    for (auto d : profile.diffs) best = std::max(best, d);
    return best;
}

namespace {

// Minimal L such that every length-L window of text contains an occurrence of
// every factor id, given occurrence positions per id. Returns nullopt when
// some factor has no occurrence (cannot happen for windows of text itself).
std::int64_t min_covering_window(const std::vector<std::vector<std::int64_t>>& positions,
                                 std::int64_t text_len, std::int64_t n) {
    std::int64_t need = n;
    for (const auto& pos : positions) {
        std::int64_t worst = pos.front() + n;                    // window at the start
        worst = std::max(worst, text_len - pos.back());          // window at the end
        for (std::size_t j = 0; j + 1 < pos.size(); ++j)
            worst = std::max(worst, pos[j + 1] - pos[j] + n - 1); // window between hits
        need = std::max(need, worst);
    }
    return need;
}

} // namespace

RecurrenceProfile recurrence_exponent(FactorOracle& oracle, std::int64_t max_len) {
    RecurrenceProfile rp;
    // Working prefix: several times the certification window of the largest
    // length, clamped by the horizon cap.
    std::int64_t want = 4096;
    try {
        want = std::max(want, 4 * oracle.certified_window(max_len));
    } catch (const HorizonExceededError&) {
        // fall through; lengths that certify will still be computed
    }
    want = std::min(want, oracle.horizon_cap());
    const std::string_view text = oracle.prefix(static_cast<std::size_t>(want));
    rp.buffer_length = static_cast<std::int64_t>(text.size());

    for (std::int64_t n = 1; n <= max_len; ++n) {
        std::vector<Word> fs;
        try {
            fs = oracle.factors(n);
        } catch (const HorizonExceededError&) {
            rp.values.emplace_back(std::nullopt);
            continue;
        }
        std::map<std::string_view, std::size_t> id;
        for (std::size_t i = 0; i < fs.size(); ++i) id[fs[i]] = i;
        std::vector<std::vector<std::int64_t>> positions(fs.size());
        bool ok = true;
        for (std::int64_t i = 0; i + n <= rp.buffer_length; ++i) {
            auto it = id.find(text.substr(static_cast<std::size_t>(i), static_cast<std::size_t>(n)));
            if (it == id.end()) { ok = false; break; } // under-certified set
            positions[it->second].push_back(i);
        }
        if (!ok) { rp.values.emplace_back(std::nullopt); continue; }
        for (const auto& p : positions)
            if (p.empty()) { ok = false; break; }
        if (!ok) { rp.values.emplace_back(std::nullopt); continue; }
        const std::int64_t L = min_covering_window(positions, rp.buffer_length, n);
        // Stability margin: boundary effects must not dominate.
        if (4 * L > rp.buffer_length) rp.values.emplace_back(std::nullopt);
        else rp.values.emplace_back(L);
    }
    return rp;
}

SpecialFactorReport special_factors(FactorOracle& oracle, std::int64_t k) {
    SpecialFactorReport rep;
    rep.order = k;
    const auto& longer = oracle.factors(k + 1);
    std::map<Word, std::set<Letter>> left, right;
    for (const auto& f : longer) {
        left[f.substr(1)].insert(f.front());
        right[f.substr(0, static_cast<std::size_t>(k))].insert(f.back());
    }
    for (const auto& [u, s] : left)
        if (s.size() >= 2) rep.left_special.push_back(u);
    for (const auto& [u, s] : right)
        if (s.size() >= 2) rep.right_special.push_back(u);
    std::set_intersection(rep.left_special.begin(), rep.left_special.end(),
                          rep.right_special.begin(), rep.right_special.end(),
                          std::back_inserter(rep.bispecial));
    return rep;
}

BalanceReport balance_check(FactorOracle& oracle, std::int64_t max_len) {
    BalanceReport rep;
    const std::string alpha = oracle.source().alphabet();
    for (std::int64_t n = 1; n <= max_len; ++n) {
        const auto& fs = oracle.factors(n);
        for (Letter c : alpha) {
            const Word* lo = nullptr;
            const Word* hi = nullptr;
            std::int64_t lo_cnt = 0, hi_cnt = 0;
            for (const auto& f : fs) {
                const std::int64_t cnt = std::count(f.begin(), f.end(), c);
                if (!lo || cnt < lo_cnt) { lo = &f; lo_cnt = cnt; }
                if (!hi || cnt > hi_cnt) { hi = &f; hi_cnt = cnt; }
            }
            if (hi_cnt - lo_cnt > 1) {
                rep.balanced = false;
                rep.length = n;
                rep.letter = c;
                rep.witness_low = *lo;
                rep.witness_high = *hi;
                return rep;
            }
        }
    }
    return rep;
}

PeriodicityVerdict periodicity_probe(FactorOracle& oracle, std::int64_t horizon) {
    PeriodicityVerdict v;
    bool certified = true;
    for (std::int64_t n = 1; n <= horizon; ++n) {
        std::int64_t pn;
        try {
            pn = static_cast<std::int64_t>(oracle.factors(n).size());
        } catch (const HorizonExceededError&) {
            // Count distinct windows of a long materialized prefix instead. A
            // lower bound of P(n) is enough: the period extraction below is
            // what certifies the Periodic verdict against the whole buffer.
            certified = false;
            const std::int64_t want = std::min<std::int64_t>(
                oracle.horizon_cap(), std::max<std::int64_t>(4096, 64 * n));
            const std::string_view buf = oracle.prefix(static_cast<std::size_t>(want));
            std::set<std::string_view> seen;
            for (std::size_t i = 0; i + static_cast<std::size_t>(n) <= buf.size(); ++i)
                seen.insert(buf.substr(i, static_cast<std::size_t>(n)));
            pn = static_cast<std::int64_t>(seen.size());
        }
        if (pn > n) continue;
        // Morse-Hedlund threshold: eventually periodic with period <= P(n).
        const std::int64_t B = std::min<std::int64_t>(
            oracle.horizon_cap(), std::max<std::int64_t>(512, 16 * (n + 1)));
        const std::string_view buf = oracle.prefix(static_cast<std::size_t>(B));
        const std::int64_t len = static_cast<std::int64_t>(buf.size());
        for (std::int64_t p = 1; p <= pn; ++p) {
            std::int64_t q = len - p; // first index where tail periodicity breaks, scanned backwards
            while (q > 0 && buf[static_cast<std::size_t>(q - 1)] ==
                                buf[static_cast<std::size_t>(q - 1 + p)])
                --q;
            if (q + 2 * p <= len / 2 || q == 0) {
                v.kind = PeriodicityVerdict::Kind::Periodic;
                v.period = p;
                v.preperiod = q;
                return v;
            }
        }
        v.kind = PeriodicityVerdict::Kind::Undecided;
        v.note = "complexity threshold hit but no stable period in buffer";
        return v;
    }
    if (!certified) {
        v.kind = PeriodicityVerdict::Kind::Undecided;
        v.note = "complexity above threshold on the buffer only (uncertified source)";
        return v;
    }
    v.kind = PeriodicityVerdict::Kind::NotPeriodicUpTo;
    v.horizon = horizon;
    return v;
}

URVerdict uniform_recurrence_probe(FactorOracle& oracle, std::int64_t power_bound,
                                   std::int64_t length_bound) {
    URVerdict v;
    const IWordSource& src = oracle.source();
    if (src.kind() == SourceKind::EventuallyPeriodic) {
        // Decidable outright: purely periodic words are uniformly recurrent,
        // a genuine preperiod gives a prefix that never recurs.
        const PeriodicityVerdict pv = periodicity_probe(oracle, 1 + static_cast<std::int64_t>(
            dynamic_cast<const EventuallyPeriodicSource&>(src).period().size() +
            dynamic_cast<const EventuallyPeriodicSource&>(src).preperiod().size()));
        if (pv.kind == PeriodicityVerdict::Kind::Periodic && pv.preperiod == 0) {
            v.kind = URVerdict::Kind::UR;
            v.reason = "purely periodic";
        } else {
            v.kind = URVerdict::Kind::NotUR;
            v.witness = Word(oracle.prefix(static_cast<std::size_t>(
                std::max<std::int64_t>(1, pv.preperiod))));
            v.reason = "preperiod prefix occurs only once";
        }
        return v;
    }
    if (src.kind() == SourceKind::SturmianCF) {
        v.kind = URVerdict::Kind::UR;
        v.reason = "sturmian words are uniformly recurrent";
        return v;
    }
    if (src.kind() != SourceKind::PurelyMorphic && src.kind() != SourceKind::Morphic) {
        v.kind = URVerdict::Kind::Undecided;
        v.reason = "probe defined for morphic sources";
        return v;
    }
    const Morphism* phi = src.generator();
    if (phi && phi->is_primitive()) {
        v.kind = URVerdict::Kind::UR;
        v.reason = "primitive generating morphism";
        return v;
    }
    // Power condition: some short w with w^n a factor for the tested power.
    const std::string_view buf = oracle.prefix(static_cast<std::size_t>(
        std::min<std::int64_t>(oracle.horizon_cap(),
                               std::max<std::int64_t>(4096, 8 * power_bound * length_bound))));
    std::set<Word> candidates;
    for (std::int64_t len = 1; len <= length_bound; ++len)
        for (std::size_t i = 0; i + static_cast<std::size_t>(len) <= buf.size() &&
                                i < static_cast<std::size_t>(4 * length_bound * power_bound);
             ++i)
            candidates.insert(Word(buf.substr(i, static_cast<std::size_t>(len))));
    for (const auto& w : candidates) {
        Word power;
        for (std::int64_t r = 0; r < power_bound; ++r) power += w;
        if (find_kmp(buf, power) != std::string_view::npos) {
            v.kind = URVerdict::Kind::NotUR;
            v.witness = w;
            v.reason = "w^" + std::to_string(power_bound) + " is a factor";
            return v;
        }
    }
    v.kind = URVerdict::Kind::Undecided;
    v.reason = "no power witness within bounds; primitivity absent";
    return v;
}

} // namespace rauzy
