#pragma once

// Emoji extraction and collocation keys.
//
// A scalar counts as an emoji when it is Extended_Pictographic and either
// defaults to emoji presentation or is forced to it by a following U+FE0F.
// Keycap bases ('#', '*', '0'-'9') count only when followed by U+FE0F.
// Variation selectors, zero-width joiners and skin-tone modifiers are
// stripped, so members of a ZWJ sequence surface as their base scalars.

#include <cstdint>
#include <cstdio>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "emosent/emoji_data.hpp"
#include "emosent/icons.hpp"

namespace emosent {

namespace detail {

// Decodes one UTF-8 scalar starting at i; advances i past it.  Returns false
// on malformed input (i still advances by one byte so scans terminate).
inline bool decode_one(std::string_view s, size_t& i, char32_t& out) {
    unsigned char c0 = static_cast<unsigned char>(s[i]);
    size_t need;
    char32_t cp;
    if (c0 < 0x80) {
        out = c0;
        ++i;
        return true;
    } else if ((c0 & 0xE0) == 0xC0) {
        need = 1;
        cp = c0 & 0x1F;
    } else if ((c0 & 0xF0) == 0xE0) {
        need = 2;
        cp = c0 & 0x0F;
    } else if ((c0 & 0xF8) == 0xF0) {
        need = 3;
        cp = c0 & 0x07;
    } else {
        ++i;
        return false;
    }
    if (i + need >= s.size()) {
        // not enough continuation bytes left
        ++i;
        return false;
    }
    for (size_t k = 1; k <= need; ++k) {
        unsigned char c = static_cast<unsigned char>(s[i + k]);
        if ((c & 0xC0) != 0x80) {
            ++i;
            return false;
        }
        cp = (cp << 6) | (c & 0x3F);
    }
    // overlong forms, surrogates and out-of-range values are invalid
    static constexpr char32_t kMin[4] = {0, 0x80, 0x800, 0x10000};
    if (cp < kMin[need] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
        ++i;
        return false;
    }
    i += need + 1;
    out = cp;
    return true;
}

inline std::vector<char32_t> decode_utf8_lenient(std::string_view s) {
    std::vector<char32_t> out;
    out.reserve(s.size());
    size_t i = 0;
    while (i < s.size()) {
        char32_t cp;
        if (decode_one(s, i, cp)) out.push_back(cp);
    }
    return out;
}

}  // namespace detail

inline bool is_valid_utf8(std::string_view s) {
    size_t i = 0;
    while (i < s.size()) {
        char32_t cp;
        if (!detail::decode_one(s, i, cp)) return false;
    }
    return true;
}

inline bool is_skin_tone(char32_t cp) { return cp >= 0x1F3FB && cp <= 0x1F3FF; }

inline bool is_keycap_base(char32_t cp) {
    return cp == U'#' || cp == U'*' || (cp >= U'0' && cp <= U'9');
}

// Distinct emoji scalars of a text, normalized to bare base scalars.
inline std::set<char32_t> extract_emoji(std::string_view text) {
    std::set<char32_t> found;
    const std::vector<char32_t> cps = detail::decode_utf8_lenient(text);
    for (size_t i = 0; i < cps.size(); ++i) {
        const char32_t cp = cps[i];
        if (cp == 0xFE0E || cp == 0xFE0F || cp == 0x200D || is_skin_tone(cp)) continue;
        const char32_t next = (i + 1 < cps.size()) ? cps[i + 1] : 0;
        bool qualifies = false;
        if (unicode_data::is_extended_pictographic(cp)) {
            qualifies = unicode_data::is_emoji_presentation(cp) || next == 0xFE0F;
        } else if (is_keycap_base(cp)) {
            qualifies = next == 0xFE0F;
        }
        if (qualifies) found.insert(cp);
    }
    return found;
}

// Sorted unique scalars identifying one analysis case; the canonical text
// form is the space-joined lowercase hex of each scalar ("1f381 1f382").
struct EmojiKey {
    std::vector<char32_t> codepoints;

    std::string str() const {
        std::string out;
        char buf[16];
        for (size_t i = 0; i < codepoints.size(); ++i) {
            if (i) out.push_back(' ');
            std::snprintf(buf, sizeof buf, "%x", static_cast<unsigned>(codepoints[i]));
            out += buf;
        }
        return out;
    }

    auto operator<=>(const EmojiKey&) const = default;
};

inline EmojiKey collocation_key(const std::set<char32_t>& scalars) {
    if (scalars.empty()) throw std::invalid_argument("no emoji");
    EmojiKey k;
    k.codepoints.assign(scalars.begin(), scalars.end());
    return k;
}

// Per-key icon counts: the row shape of the report tables.
struct IconCounts {
    EmojiKey key;
    int64_t great = 0;
    int64_t good = 0;
    int64_t neutral = 0;
    int64_t sad = 0;

    int64_t total() const { return great + good + neutral + sad; }

    int64_t count(IconRating r) const {
        switch (r) {
            case IconRating::Sad: return sad;
            case IconRating::Neutral: return neutral;
            case IconRating::Good: return good;
            case IconRating::Great: return great;
        }
        return 0;
    }

    void add(IconRating r, int64_t by = 1) {
        switch (r) {
            case IconRating::Sad: sad += by; break;
            case IconRating::Neutral: neutral += by; break;
            case IconRating::Good: good += by; break;
            case IconRating::Great: great += by; break;
        }
    }
};

// How comments map to count rows.
enum class KeyMode {
    ExactSet,   // full distinct-emoji set of the comment is one key
    PerSingle,  // each distinct emoji contributes to its singleton key
};

}  // namespace emosent
