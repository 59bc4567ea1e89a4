#pragma once

#include <compare>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fskel/geometry.hpp"
#include "fskel/ifs.hpp"

namespace fskel {

using Word = std::vector<Letter>;

// S_{w_1} o S_{w_2} o ... o S_{w_m}; the identity for the empty word.
Similitude word_map(const Ifs& ifs, const Word& w);

// Text form of a word: one digit per letter, or '.'-separated numbers when
// some letter exceeds 9.
std::string word_to_string(const Word& w);
Word parse_word(std::string_view text);

// The sequence preperiod (period)^infinity.
//
// Always held in canonical form: the period is primitive (not a power of a
// shorter word) and the preperiod's last letter differs from the period's last
// letter (otherwise that letter is absorbed by rotating the period right).
// Two codings are the same sequence iff they compare equal.
class EpCoding {
public:
    // Throws ValidationError for an empty period or a letter < 1.
    EpCoding(Word preperiod, Word period);

    const Word& preperiod() const { return pre_; }
    const Word& period() const { return period_; }

    Letter first() const { return at(0); }
    // 0-based position in the infinite sequence.
    Letter at(std::size_t k) const;
    Letter max_letter() const;

    // "pre(period)", e.g. "1(2)" or "(332211)".
    std::string to_string() const;
    static EpCoding parse(std::string_view text);

    friend auto operator<=>(const EpCoding&, const EpCoding&) = default;
    friend bool operator==(const EpCoding&, const EpCoding&) = default;

private:
    Word pre_;
    Word period_;
};

EpCoding shift(const EpCoding& c);
EpCoding prepend(Letter k, const EpCoding& c);

// S_preperiod(fixed point of S_period): the point with this coding.
Point pi_eval(const Ifs& ifs, const EpCoding& c);

// {sigma^k(c) : k >= 0} in order of k; exactly |preperiod| + |period| codings.
std::vector<EpCoding> orbit(const EpCoding& c);

// Follows x = S_{i_1}(x_1), x_1 = S_{i_2}(x_2), ... inside the finite stable set
// `stable_set` until a point repeats. Ties take the smallest letter, then the
// smallest index in the set. Throws NotStableError if x is not in the set or a
// chain element has no preimage.
EpCoding ep_coding_of_point(const Ifs& ifs, std::span<const Point> stable_set, Point x, double eps);

}  // namespace fskel
