#include "rauzy/words.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace rauzy {

Morphism::Morphism(std::string alphabet, std::map<Letter, Word> images)
    : alphabet_(std::move(alphabet)), images_(std::move(images)) {
    std::sort(alphabet_.begin(), alphabet_.end());
    alphabet_.erase(std::unique(alphabet_.begin(), alphabet_.end()), alphabet_.end());
    for (Letter c : alphabet_) {
        if (!images_.count(c))
            throw ConfigError(std::string("morphism has no image for letter '") + c + "'");
    }
    for (const auto& [c, img] : images_) {
        if (!has_letter(c)) throw UnknownLetterError(c);
        for (Letter x : img)
            if (!has_letter(x)) throw UnknownLetterError(x);
    }
}

Morphism Morphism::from_rules(std::initializer_list<std::pair<Letter, Word>> rules) {
    std::string alpha;
    std::map<Letter, Word> imgs;
    for (const auto& [c, img] : rules) {
        alpha.push_back(c);
        imgs[c] = img;
    }
    return Morphism(std::move(alpha), std::move(imgs));
}

int Morphism::letter_index(Letter c) const {
    auto it = std::lower_bound(alphabet_.begin(), alphabet_.end(), c);
    if (it == alphabet_.end() || *it != c) throw UnknownLetterError(c);
    return static_cast<int>(it - alphabet_.begin());
}

bool Morphism::has_letter(Letter c) const {
    return std::binary_search(alphabet_.begin(), alphabet_.end(), c);
}

const Word& Morphism::image(Letter c) const {
    auto it = images_.find(c);
    if (it == images_.end()) throw UnknownLetterError(c);
    return it->second;
}

bool Morphism::has_empty_image() const {
    for (const auto& [c, img] : images_)
        if (img.empty()) return true;
    return false;
}

Word Morphism::apply(const Word& w) const {
    Word out;
    std::size_t total = 0;
    for (Letter c : w) total += image(c).size();
    out.reserve(total);
    for (Letter c : w) out += image(c);
    return out;
}

Word Morphism::apply_power(const Word& w, int k) const {
    Word cur = w;
    for (int i = 0; i < k; ++i) cur = apply(cur);
    return cur;
}

CountMatrix Morphism::substitution_matrix() const {
    const std::size_t n = alphabet_.size();
    CountMatrix m(n, std::vector<std::int64_t>(n, 0));
    for (std::size_t j = 0; j < n; ++j)
        for (Letter c : image(alphabet_[j]))
            m[static_cast<std::size_t>(letter_index(c))][j] += 1;
    return m;
}

std::vector<std::vector<std::int64_t>>
Morphism::power_lengths(int max_power, std::int64_t cap) const {
    const std::size_t n = alphabet_.size();
    std::vector<std::vector<std::int64_t>> lens;
    lens.emplace_back(n, 1);
    for (int k = 1; k <= max_power; ++k) {
        std::vector<std::int64_t> next(n, 0);
        for (std::size_t j = 0; j < n; ++j) {
            std::int64_t s = 0;
            for (Letter c : image(alphabet_[j])) {
                s += lens.back()[static_cast<std::size_t>(letter_index(c))];
                if (s >= cap) { s = cap; break; }
            }
            next[j] = s;
        }
        lens.push_back(std::move(next));
    }
    return lens;
}

PrimitivityReport Morphism::primitivity() const {
    const std::size_t n = alphabet_.size();
    if (n == 0) return {};
    std::vector<std::vector<bool>> b(n, std::vector<bool>(n, false)), p;
    const CountMatrix m = substitution_matrix();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) b[i][j] = m[i][j] > 0;
    p = b;
    // Wielandt: a primitive 0/1 matrix has a positive power no later than n^2-2n+2.
    const int bound = static_cast<int>(n * n);
    for (int k = 1; k <= bound; ++k) {
        bool all = true;
        for (std::size_t i = 0; i < n && all; ++i)
            for (std::size_t j = 0; j < n && all; ++j)
                if (!p[i][j]) all = false;
        if (all) return {true, k};
        std::vector<std::vector<bool>> nx(n, std::vector<bool>(n, false));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l)
                if (p[i][l])
                    for (std::size_t j = 0; j < n; ++j)
                        if (b[l][j]) nx[i][j] = true;
        p = std::move(nx);
    }
    return {};
}

double Morphism::perron_estimate(double tol) const {
    const auto rep = primitivity();
    if (!rep.primitive) throw NotPrimitiveError("perron_estimate requires a primitive morphism");
    const std::size_t n = alphabet_.size();
    const CountMatrix m = substitution_matrix();
    // Start from a strictly positive vector; primitivity keeps it positive.
    std::vector<double> x(n, 1.0);
    double lo = 0.0, hi = 0.0;
    for (int iter = 0; iter < 100000; ++iter) {
        std::vector<double> y(n, 0.0);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                y[i] += static_cast<double>(m[i][j]) * x[j];
        lo = 1e300; hi = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (x[i] <= 0.0) { lo = 0.0; hi = 1e300; break; }
            const double r = y[i] / x[i];
            lo = std::min(lo, r);
            hi = std::max(hi, r);
        }
        double norm = 0.0;
        for (double v : y) norm = std::max(norm, v);
        if (norm == 0.0) return 0.0; // nilpotent cannot happen for primitive
        for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / norm;
        if (hi - lo < tol) break;
    }
    return 0.5 * (lo + hi);
}

std::string Morphism::to_text() const {
    std::ostringstream os;
    for (Letter c : alphabet_) os << c << " -> " << image(c) << "\n";
    return os.str();
}

namespace {

std::string strip(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

} // namespace

MorphismFile parse_morphism_text(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::string alpha, coding_alpha;
    std::map<Letter, Word> imgs, coding_imgs;
    std::optional<Letter> seed;
    bool has_coding = false;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = strip(line);
        if (line.empty()) continue;
        if (line.rfind("seed:", 0) == 0) {
            std::string v = strip(line.substr(5));
            if (v.size() != 1)
                throw ConfigError("line " + std::to_string(lineno) + ": seed must be a single letter");
            seed = v[0];
            continue;
        }
        auto arrow = line.find("=>");
        if (arrow != std::string::npos) {
            std::string lhs = strip(line.substr(0, arrow));
            std::string rhs = strip(line.substr(arrow + 2));
            if (lhs.size() != 1)
                throw ConfigError("line " + std::to_string(lineno) + ": coding lhs must be one letter");
            coding_alpha.push_back(lhs[0]);
            coding_imgs[lhs[0]] = rhs;
            has_coding = true;
            continue;
        }
        arrow = line.find("->");
        if (arrow == std::string::npos)
            throw ConfigError("line " + std::to_string(lineno) + ": expected 'x -> image'");
        std::string lhs = strip(line.substr(0, arrow));
        std::string rhs = strip(line.substr(arrow + 2));
        if (lhs.size() != 1)
            throw ConfigError("line " + std::to_string(lineno) + ": rule lhs must be one letter");
        if (imgs.count(lhs[0]))
            throw ConfigError("line " + std::to_string(lineno) + ": duplicate rule for '" + lhs + "'");
        alpha.push_back(lhs[0]);
        imgs[lhs[0]] = rhs;
    }
    if (alpha.empty()) throw ConfigError("morphism file has no rules");
    MorphismFile mf;
    mf.morphism = Morphism(alpha, imgs);
    mf.seed = seed;
    if (has_coding) {
        // The coding maps the base alphabet; letters without a rule map to themselves.
        for (Letter c : mf.morphism.alphabet()) {
            if (!coding_imgs.count(c)) {
                coding_alpha.push_back(c);
                coding_imgs[c] = Word(1, c);
            }
        }
        // Target letters must be present so Morphism validation passes.
        std::string full_alpha = coding_alpha;
        for (auto& [c, img] : coding_imgs)
            for (Letter x : img) full_alpha.push_back(x);
        std::sort(full_alpha.begin(), full_alpha.end());
        full_alpha.erase(std::unique(full_alpha.begin(), full_alpha.end()), full_alpha.end());
        for (Letter c : full_alpha)
            if (!coding_imgs.count(c)) coding_imgs[c] = Word(1, c);
        mf.coding = Morphism(full_alpha, coding_imgs);
    }
    return mf;
}

MorphismFile load_morphism_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot open morphism file: " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_morphism_text(ss.str());
}

std::int64_t count_occurrences(std::string_view w, std::string_view u) {
    if (u.empty()) return static_cast<std::int64_t>(w.size()) + 1;
    if (u.size() > w.size()) return 0;
    std::int64_t cnt = 0;
    std::size_t pos = 0;
    for (;;) {
        pos = w.find(u, pos);
        if (pos == std::string_view::npos) break;
        ++cnt;
        ++pos;
    }
    return cnt;
}

std::size_t find_kmp(std::string_view text, std::string_view pattern) {
    const std::size_t m = pattern.size();
    if (m == 0) return 0;
    if (m > text.size()) return std::string_view::npos;
    std::vector<std::size_t> fail(m, 0);
    for (std::size_t i = 1; i < m; ++i) {
        std::size_t j = fail[i - 1];
        while (j > 0 && pattern[i] != pattern[j]) j = fail[j - 1];
        if (pattern[i] == pattern[j]) ++j;
        fail[i] = j;
    }
    std::size_t j = 0;
    for (std::size_t i = 0; i < text.size(); ++i) {
        while (j > 0 && text[i] != pattern[j]) j = fail[j - 1];
        if (text[i] == pattern[j]) ++j;
        if (j == m) return i + 1 - m;
    }
    return std::string_view::npos;
}

} // namespace rauzy
