#pragma once

// Corpus ingestion (CSV / JSONL), prior icon distribution and key grouping.

#include <algorithm>
#include <array>
#include <cctype>
#include <cstdint>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "emosent/csv.hpp"
#include "emosent/emoji.hpp"
#include "emosent/icons.hpp"

namespace emosent {

struct Comment {
    std::string id;
    std::string text;
    IconRating rating;
};

struct Corpus {
    std::vector<Comment> comments;
    bool emoji_only = true;  // true: every retained comment has >=1 emoji
};

struct PriorDistribution {
    std::array<int64_t, 4> totals{};  // indexed by icon_index()
    int64_t N = 0;                    // equals the sum of the four totals

    int64_t count(IconRating r) const { return totals[static_cast<size_t>(icon_index(r))]; }
};

enum class InputFormat { Csv, Jsonl };

struct IngestOptions {
    InputFormat format = InputFormat::Csv;
    std::string text_col = "text";
    std::string rating_col = "rating";
    bool emoji_only = true;
};

// Malformed records, unknown labels, bad encodings.  Messages carry the
// 1-based record index (and line for CSV) so drivers can point at the input.
struct IngestError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

namespace detail {

[[noreturn]] inline void ingest_fail(size_t record, size_t line, const std::string& what) {
    throw IngestError("record " + std::to_string(record) + " (line " + std::to_string(line) +
                      "): " + what);
}

inline void append_comment(Corpus& corpus, size_t record, std::string text, IconRating rating) {
    if (corpus.emoji_only && extract_emoji(text).empty()) return;
    corpus.comments.push_back(Comment{std::to_string(record), std::move(text), rating});
}

inline Corpus ingest_csv(std::istream& in, const IngestOptions& opt) {
    Corpus corpus;
    corpus.emoji_only = opt.emoji_only;
    CsvReader reader(in);
    CsvRecord rec;
    if (!reader.read(rec)) return corpus;  // empty input: empty corpus
    size_t text_idx = rec.fields.size(), rating_idx = rec.fields.size();
    for (size_t i = 0; i < rec.fields.size(); ++i) {
        if (rec.fields[i] == opt.text_col) text_idx = i;
        if (rec.fields[i] == opt.rating_col) rating_idx = i;
    }
    if (text_idx == rec.fields.size())
        throw IngestError("header has no \"" + opt.text_col + "\" column");
    if (rating_idx == rec.fields.size())
        throw IngestError("header has no \"" + opt.rating_col + "\" column");
    const size_t need = std::max(text_idx, rating_idx) + 1;
    size_t record = 0;
    while (reader.read(rec)) {
        ++record;
        if (rec.fields.size() < need)
            ingest_fail(record, rec.line,
                        "expected at least " + std::to_string(need) + " fields, got " +
                            std::to_string(rec.fields.size()));
        const std::string& text = rec.fields[text_idx];
        if (!is_valid_utf8(text)) ingest_fail(record, rec.line, "text is not valid UTF-8");
        auto rating = parse_rating(rec.fields[rating_idx]);
        if (!rating)
            ingest_fail(record, rec.line,
                        "unknown rating label \"" + rec.fields[rating_idx] + "\"");
        append_comment(corpus, record, text, *rating);
    }
    return corpus;
}

inline Corpus ingest_jsonl(std::istream& in, const IngestOptions& opt) {
    Corpus corpus;
    corpus.emoji_only = opt.emoji_only;
    std::string line;
    size_t record = 0, line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        bool blank = true;
        for (char c : line)
            if (!std::isspace(static_cast<unsigned char>(c))) {
                blank = false;
                break;
            }
        if (blank) continue;
        ++record;
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::exception& e) {
            ingest_fail(record, line_no, std::string("bad JSON: ") + e.what());
        }
        if (!obj.is_object()) ingest_fail(record, line_no, "record is not a JSON object");
        if (!obj.contains(opt.text_col))
            ingest_fail(record, line_no, "missing \"" + opt.text_col + "\" member");
        if (!obj.contains(opt.rating_col))
            ingest_fail(record, line_no, "missing \"" + opt.rating_col + "\" member");
        const auto& jtext = obj.at(opt.text_col);
        if (!jtext.is_string()) ingest_fail(record, line_no, "text member is not a string");
        const auto& jrating = obj.at(opt.rating_col);
        std::string label;
        if (jrating.is_string())
            label = jrating.get<std::string>();
        else if (jrating.is_number_integer())
            label = std::to_string(jrating.get<int64_t>());
        else
            ingest_fail(record, line_no, "rating member is neither string nor integer");
        auto rating = parse_rating(label);
        if (!rating) ingest_fail(record, line_no, "unknown rating label \"" + label + "\"");
        append_comment(corpus, record, jtext.get<std::string>(), *rating);
    }
    return corpus;
}

}  // namespace detail

// Ingestion preserves record order; with emoji_only, records whose text
// yields no emoji are dropped.  Empty input gives an empty corpus.
inline Corpus ingest_corpus(std::istream& in, const IngestOptions& opt = {}) {
    return opt.format == InputFormat::Csv ? detail::ingest_csv(in, opt)
                                          : detail::ingest_jsonl(in, opt);
}

inline PriorDistribution compute_priors(const Corpus& corpus) {
    if (corpus.comments.empty()) throw std::runtime_error("empty corpus");
    PriorDistribution prior;
    for (const Comment& c : corpus.comments) {
        ++prior.totals[static_cast<size_t>(icon_index(c.rating))];
        ++prior.N;
    }
    return prior;
}

// One count row per collocation key (or per single emoji in PerSingle mode);
// rows come back ordered by descending total, ties by key.  Comments without
// emoji (possible when the corpus kept them) contribute no row.
inline std::vector<IconCounts> group_by_key(const Corpus& corpus,
                                            KeyMode mode = KeyMode::ExactSet) {
    std::map<EmojiKey, IconCounts> by_key;
    auto bump = [&](EmojiKey key, IconRating rating) {
        auto [it, inserted] = by_key.try_emplace(key);
        if (inserted) it->second.key = std::move(key);
        it->second.add(rating);
    };
    for (const Comment& c : corpus.comments) {
        const std::set<char32_t> scalars = extract_emoji(c.text);
        if (scalars.empty()) continue;
        if (mode == KeyMode::ExactSet) {
            bump(collocation_key(scalars), c.rating);
        } else {
            for (char32_t cp : scalars) bump(EmojiKey{{cp}}, c.rating);
        }
    }
    std::vector<IconCounts> rows;
    rows.reserve(by_key.size());
    for (auto& [key, counts] : by_key) rows.push_back(std::move(counts));
    std::stable_sort(rows.begin(), rows.end(), [](const IconCounts& a, const IconCounts& b) {
        if (a.total() != b.total()) return a.total() > b.total();
        return a.key < b.key;
    });
    return rows;
}

}  // namespace emosent
