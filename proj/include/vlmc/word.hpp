#pragma once

#include <string>
#include <string_view>

namespace vlmc {

/// Finite word over {0,1}, stored as the characters '0' and '1' read left to right.
using Word = std::string;

bool is_binary(std::string_view s);
/// Throws ParseError unless s only contains '0' and '1'.
void require_binary(std::string_view s, std::string_view what = "word");

Word reversed(std::string_view w);
Word repeat(std::string_view w, std::size_t times);
/// The first n letters of the periodic word period^infinity.
Word periodic_prefix(std::string_view period, std::size_t n);

bool is_prefix(std::string_view p, std::string_view w);
bool is_suffix(std::string_view s, std::string_view w);
/// Contiguous factor: w = x u y.
bool is_factor(std::string_view u, std::string_view w);

inline char flip(char a) { return a == '0' ? '1' : '0'; }
inline int letter_index(char a) { return a == '1' ? 1 : 0; }
inline char letter(int i) { return i ? '1' : '0'; }

/// Alphabetical order with 0 < 1, shorter prefix first.
inline bool alphabetical_less(const Word& a, const Word& b) { return a < b; }

} // namespace vlmc
