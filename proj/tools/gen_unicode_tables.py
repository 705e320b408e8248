#!/usr/bin/env python3
"""Regenerate include/emosent/emoji_data.hpp.

Enumerates every Unicode scalar and queries the `regex` module (which tracks
the Unicode emoji data files) for the two properties the lexer needs:
Extended_Pictographic and Emoji_Presentation.  Adjacent matches are collapsed
into [lo, hi] ranges and emitted as sorted constexpr arrays for binary search.

Usage: python3 tools/gen_unicode_tables.py > include/emosent/emoji_data.hpp
"""

import sys

import regex


def property_ranges(pattern: str):
    pat = regex.compile(pattern)
    ranges = []
    start = None
    for cp in range(0x110000):
        # Surrogates are not scalars; chr() accepts them but they never match.
        matched = not (0xD800 <= cp <= 0xDFFF) and bool(pat.match(chr(cp)))
        if matched and start is None:
            start = cp
        elif not matched and start is not None:
            ranges.append((start, cp - 1))
            start = None
    if start is not None:
        ranges.append((start, 0x10FFFF))
    return ranges


def emit_table(out, name: str, ranges) -> None:
    out.write(f"inline constexpr CodepointRange {name}[] = {{\n")
    for i in range(0, len(ranges), 4):
        row = ", ".join(f"{{0x{lo:X}, 0x{hi:X}}}" for lo, hi in ranges[i : i + 4])
        out.write(f"    {row},\n")
    out.write("};\n\n")


def main() -> None:
    ext_pict = property_ranges(r"\p{Extended_Pictographic}")
    emoji_pres = property_ranges(r"\p{Emoji_Presentation}")
    ucd = regex.__version__

    out = sys.stdout
    out.write(
        "// Generated by tools/gen_unicode_tables.py (regex module %s); do not edit.\n"
        "#pragma once\n"
        "\n"
        "#include <algorithm>\n"
        "#include <cstdint>\n"
        "\n"
        "namespace emosent::unicode_data {\n"
        "\n"
        "struct CodepointRange {\n"
        "    char32_t lo;\n"
        "    char32_t hi;\n"
        "};\n"
        "\n" % ucd
    )
    emit_table(out, "kExtendedPictographic", ext_pict)
    emit_table(out, "kEmojiPresentation", emoji_pres)
    out.write(
        "inline bool in_ranges(const CodepointRange* first, const CodepointRange* last,\n"
        "                      char32_t cp) {\n"
        "    auto it = std::upper_bound(first, last, cp,\n"
        "                               [](char32_t c, const CodepointRange& r) { return c < r.lo; });\n"
        "    return it != first && cp <= (it - 1)->hi;\n"
        "}\n"
        "\n"
        "inline bool is_extended_pictographic(char32_t cp) {\n"
        "    return in_ranges(std::begin(kExtendedPictographic), std::end(kExtendedPictographic), cp);\n"
        "}\n"
        "\n"
        "inline bool is_emoji_presentation(char32_t cp) {\n"
        "    return in_ranges(std::begin(kEmojiPresentation), std::end(kEmojiPresentation), cp);\n"
        "}\n"
        "\n"
        "}  // namespace emosent::unicode_data\n"
    )


if __name__ == "__main__":
    main()
