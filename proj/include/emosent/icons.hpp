#pragma once

// The four icon ratings a comment can carry, plus label parsing.

#include <array>
#include <cctype>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace emosent {

// Order matters: it is the section order of the report tables and the
// tie-break order used by the method comparison.
enum class IconRating : int { Sad = 0, Neutral = 1, Good = 2, Great = 3 };

inline constexpr std::array<IconRating, 4> kAllIcons = {
    IconRating::Sad, IconRating::Neutral, IconRating::Good, IconRating::Great};

inline constexpr int icon_index(IconRating r) { return static_cast<int>(r); }

inline constexpr const char* icon_name(IconRating r) {
    switch (r) {
        case IconRating::Sad: return "Sad";
        case IconRating::Neutral: return "Neutral";
        case IconRating::Good: return "Good";
        case IconRating::Great: return "Great";
    }
    return "?";
}

// Lowercase name, used as the odds-type column of rendered tables.
inline constexpr const char* icon_section(IconRating r) {
    switch (r) {
        case IconRating::Sad: return "sad";
        case IconRating::Neutral: return "neutral";
        case IconRating::Good: return "good";
        case IconRating::Great: return "great";
    }
    return "?";
}

// Accepts the four English labels (case-insensitive, surrounding blanks
// ignored) and the integer codes 1-4 (1=Sad .. 4=Great).
inline std::optional<IconRating> parse_rating(std::string_view raw) {
    size_t b = 0, e = raw.size();
    while (b < e && std::isspace(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(raw[e - 1]))) --e;
    std::string low;
    low.reserve(e - b);
    for (size_t i = b; i < e; ++i)
        low.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(raw[i]))));
    if (low == "sad" || low == "1") return IconRating::Sad;
    if (low == "neutral" || low == "2") return IconRating::Neutral;
    if (low == "good" || low == "3") return IconRating::Good;
    if (low == "great" || low == "4") return IconRating::Great;
    return std::nullopt;
}

}  // namespace emosent
