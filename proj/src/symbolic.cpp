#include "fskel/symbolic.hpp"

#include <algorithm>
#include <charconv>
#include <optional>

#include "fskel/error.hpp"

namespace fskel {

namespace {

// Smallest p dividing |w| with w = (w[0..p))^(|w|/p).
std::size_t primitive_root_length(const Word& w) {
    const std::size_t n = w.size();
    for (std::size_t p = 1; p < n; ++p) {
        if (n % p != 0) continue;
        bool ok = true;
        for (std::size_t k = p; k < n && ok; ++k) ok = w[k] == w[k - p];
        if (ok) return p;
    }
    return n;
}

}  // namespace

Similitude word_map(const Ifs& ifs, const Word& w) {
    Similitude acc;
    for (Letter k : w) acc = compose(acc, ifs.at_letter(k));
    return acc;
}

std::string word_to_string(const Word& w) {
    const bool wide = std::any_of(w.begin(), w.end(), [](Letter k) { return k > 9; });
    std::string out;
    for (Letter k : w) {
        out += std::to_string(k);
        if (wide) out += '.';
    }
    return out;
}

Word parse_word(std::string_view text) {
    Word w;
    auto bad = [&] { return ParseError("invalid word '" + std::string(text) + "'"); };
    if (text.find('.') != std::string_view::npos) {
        std::size_t pos = 0;
        while (pos < text.size()) {
            std::size_t end = text.find('.', pos);
            if (end == std::string_view::npos) end = text.size();
            int v = 0;
            auto [p, ec] = std::from_chars(text.data() + pos, text.data() + end, v);
            if (ec != std::errc{} || p != text.data() + end || v < 1) throw bad();
            w.push_back(v);
            pos = end + 1;
        }
        return w;
    }
    for (char ch : text) {
        if (ch < '1' || ch > '9') throw bad();
        w.push_back(ch - '0');
    }
    return w;
}

EpCoding::EpCoding(Word preperiod, Word period) : pre_(std::move(preperiod)), period_(std::move(period)) {
    if (period_.empty()) throw ValidationError("period", "period of an eventually periodic coding must be nonempty");
    auto check = [](const Word& w, const char* field) {
        for (Letter k : w)
            if (k < 1) throw ValidationError(field, "letters are 1-based");
    };
    check(pre_, "preperiod");
    check(period_, "period");
    period_.resize(primitive_root_length(period_));
    while (!pre_.empty() && pre_.back() == period_.back()) {
        pre_.pop_back();
        std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    }
}

Letter EpCoding::at(std::size_t k) const {
    if (k < pre_.size()) return pre_[k];
    return period_[(k - pre_.size()) % period_.size()];
}

Letter EpCoding::max_letter() const {
    Letter m = *std::max_element(period_.begin(), period_.end());
    for (Letter k : pre_) m = std::max(m, k);
    return m;
}

std::string EpCoding::to_string() const {
    if (max_letter() <= 9) return word_to_string(pre_) + "(" + word_to_string(period_) + ")";
    // wide alphabets terminate every letter with '.' so both halves stay unambiguous
    auto dotted = [](const Word& w) {
        std::string s;
        for (Letter k : w) s += std::to_string(k) + ".";
        return s;
    };
    return dotted(pre_) + "(" + dotted(period_) + ")";
}

EpCoding EpCoding::parse(std::string_view text) {
    const auto open = text.find('(');
    const auto close = text.rfind(')');
    if (open == std::string_view::npos || close != text.size() - 1 || close <= open + 1)
        throw ParseError("invalid eventually periodic coding '" + std::string(text) + "'");
    const bool dotted = text.find('.') != std::string_view::npos;
    auto part = [&](std::string_view s) -> Word {
        if (dotted && !s.empty() && s.back() != '.') throw ParseError("invalid coding '" + std::string(text) + "'");
        return parse_word(s);
    };
    return EpCoding(part(text.substr(0, open)), part(text.substr(open + 1, close - open - 1)));
}

EpCoding shift(const EpCoding& c) {
    if (!c.preperiod().empty())
        return EpCoding(Word(c.preperiod().begin() + 1, c.preperiod().end()), c.period());
    Word p = c.period();
    std::rotate(p.begin(), p.begin() + 1, p.end());
    return EpCoding({}, std::move(p));
}

EpCoding prepend(Letter k, const EpCoding& c) {
    Word pre{k};
    pre.insert(pre.end(), c.preperiod().begin(), c.preperiod().end());
    return EpCoding(std::move(pre), c.period());
}

Point pi_eval(const Ifs& ifs, const EpCoding& c) {
    if (static_cast<std::size_t>(c.max_letter()) > ifs.size())
        throw ValidationError("coding", "letter outside the IFS alphabet in " + c.to_string());
    return word_map(ifs, c.preperiod())(fixed_point(word_map(ifs, c.period())));
}

std::vector<EpCoding> orbit(const EpCoding& c) {
    std::vector<EpCoding> out{c};
    const std::size_t n = c.preperiod().size() + c.period().size();
    while (out.size() < n) out.push_back(shift(out.back()));
    return out;
}

EpCoding ep_coding_of_point(const Ifs& ifs, std::span<const Point> stable_set, Point x, double eps) {
    auto index_of = [&](Point p) -> std::optional<std::size_t> {
        for (std::size_t k = 0; k < stable_set.size(); ++k)
            if (distance(stable_set[k], p) <= eps) return k;
        return std::nullopt;
    };
    auto start = index_of(x);
    if (!start) throw NotStableError("point is not in the given stable set");

    std::vector<std::size_t> chain{*start};
    std::vector<std::optional<std::size_t>> seen_at(stable_set.size());
    seen_at[*start] = 0;
    Word letters;  // letters[k] carries chain[k+1] to chain[k]
    for (;;) {
        const Point cur = stable_set[chain.back()];
        std::optional<std::size_t> pre;
        Letter via = 0;
        for (Letter j = 1; j <= static_cast<Letter>(ifs.size()) && !pre; ++j) {
            for (std::size_t b = 0; b < stable_set.size(); ++b) {
                if (distance(ifs.at_letter(j)(stable_set[b]), cur) <= eps) {
                    pre = b;
                    via = j;
                    break;
                }
            }
        }
        if (!pre) throw NotStableError("chain element has no preimage in the stable set");
        letters.push_back(via);
        if (seen_at[*pre]) {
            const std::size_t loop_start = *seen_at[*pre];
            return EpCoding(Word(letters.begin(), letters.begin() + static_cast<std::ptrdiff_t>(loop_start)),
                            Word(letters.begin() + static_cast<std::ptrdiff_t>(loop_start), letters.end()));
        }
        seen_at[*pre] = chain.size();
        chain.push_back(*pre);
    }
}

}  // namespace fskel
