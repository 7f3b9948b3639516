#pragma once

#include <cstddef>
#include <string_view>

namespace merodiv::detail {

/// Length of the decimal literal starting at text[pos], or 0 if none.
/// Accepts digits [ '.' digits ] [ (e|E) [+|-] digits ] and '.' digits [...].
inline std::size_t scan_number(std::string_view text, std::size_t pos) {
    auto is_digit = [&](std::size_t k) { return k < text.size() && text[k] >= '0' && text[k] <= '9'; };
    std::size_t k = pos;
    std::size_t int_digits = 0;
    while (is_digit(k)) ++k, ++int_digits;
    std::size_t frac_digits = 0;
    if (k < text.size() && text[k] == '.') {
        std::size_t j = k + 1;
        while (is_digit(j)) ++j, ++frac_digits;
        if (int_digits == 0 && frac_digits == 0) return 0;
        k = j;
    }
    if (int_digits == 0 && frac_digits == 0) return 0;
    if (k < text.size() && (text[k] == 'e' || text[k] == 'E')) {
        std::size_t j = k + 1;
        if (j < text.size() && (text[j] == '+' || text[j] == '-')) ++j;
        if (is_digit(j)) {
            while (is_digit(j)) ++j;
            k = j;
        }
    }
    return k - pos;
}

inline bool is_number_literal(std::string_view text) {
    return !text.empty() && scan_number(text, 0) == text.size();
}

}  // namespace merodiv::detail
