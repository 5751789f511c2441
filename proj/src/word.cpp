#include "vlmc/word.hpp"
#include "vlmc/error.hpp"

#include <algorithm>

namespace vlmc {

bool is_binary(std::string_view s) {
    return std::all_of(s.begin(), s.end(), [](char c) { return c == '0' || c == '1'; });
}

void require_binary(std::string_view s, std::string_view what) {
    if (!is_binary(s))
        throw Error(ErrorKind::Parse, std::string(what) + " '" + std::string(s) + "' is not a word over {0,1}");
}

Word reversed(std::string_view w) { return Word(w.rbegin(), w.rend()); }

Word repeat(std::string_view w, std::size_t times) {
    Word out;
    out.reserve(w.size() * times);
    for (std::size_t i = 0; i < times; ++i) out += w;
    return out;
}

Word periodic_prefix(std::string_view period, std::size_t n) {
    Word out(n, '0');
    for (std::size_t i = 0; i < n; ++i) out[i] = period[i % period.size()];
    return out;
}

bool is_prefix(std::string_view p, std::string_view w) { return w.substr(0, p.size()) == p; }

bool is_suffix(std::string_view s, std::string_view w) {
    return s.size() <= w.size() && w.substr(w.size() - s.size()) == s;
}

bool is_factor(std::string_view u, std::string_view w) { return w.find(u) != std::string_view::npos; }

} // namespace vlmc
