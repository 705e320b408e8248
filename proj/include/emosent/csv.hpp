#pragma once

// Minimal RFC-4180 CSV reading/writing: quoted fields, "" escapes, embedded
// separators and newlines, CRLF or LF endings, optional UTF-8 BOM.

#include <istream>
#include <string>
#include <string_view>
#include <vector>

namespace emosent {

struct CsvRecord {
    std::vector<std::string> fields;
    size_t line = 0;  // 1-based line the record starts on, for diagnostics
};

class CsvReader {
  public:
    explicit CsvReader(std::istream& in) : in_(in) {}

    // Reads the next record; returns false at end of input.  Fully blank
    // lines are skipped (a lone trailing newline is not a record).
    bool read(CsvRecord& rec) {
        rec.fields.clear();
        skip_bom_once();
        std::string field;
        bool in_quotes = false;
        bool saw_anything = false;
        rec.line = line_;
        int ci;
        while ((ci = next_char()) != std::char_traits<char>::eof()) {
            const char c = static_cast<char>(ci);
            if (in_quotes) {
                if (c == '"') {
                    if (peek_char() == '"') {
                        next_char();
                        field.push_back('"');
                    } else {
                        in_quotes = false;
                    }
                } else {
                    if (c == '\n') ++line_;
                    field.push_back(c);
                }
                continue;
            }
            switch (c) {
                case '"':
                    in_quotes = true;
                    saw_anything = true;
                    break;
                case ',':
                    rec.fields.push_back(std::move(field));
                    field.clear();
                    saw_anything = true;
                    break;
                case '\r':
                    break;  // handled by the following '\n' (or ignored)
                case '\n':
                    ++line_;
                    if (!saw_anything && field.empty() && rec.fields.empty()) {
                        rec.line = line_;  // blank line: keep scanning
                        break;
                    }
                    rec.fields.push_back(std::move(field));
                    return true;
                default:
                    field.push_back(c);
                    saw_anything = true;
            }
        }
        if (saw_anything || !field.empty() || !rec.fields.empty()) {
            rec.fields.push_back(std::move(field));
            return true;
        }
        return false;
    }

  private:
    int next_char() {
        if (!pending_.empty()) {
            int c = pending_.front();
            pending_.erase(pending_.begin());
            return c;
        }
        return in_.get();
    }

    int peek_char() {
        if (!pending_.empty()) return pending_.front();
        return in_.peek();
    }

    void skip_bom_once() {
        if (checked_bom_) return;
        checked_bom_ = true;
        static const int bom[3] = {0xEF, 0xBB, 0xBF};
        int got[3];
        for (int k = 0; k < 3; ++k) {
            got[k] = in_.get();
            if (got[k] != bom[k]) {
                for (int j = 0; j <= k; ++j)
                    if (got[j] != std::char_traits<char>::eof()) pending_.push_back(got[j]);
                return;
            }
        }
    }

    std::istream& in_;
    std::vector<int> pending_;
    size_t line_ = 1;
    bool checked_bom_ = false;
};

// Quotes a field when it contains a separator, quote or line break.
inline std::string csv_quote(std::string_view field) {
    bool needs = false;
    for (char c : field)
        if (c == ',' || c == '"' || c == '\n' || c == '\r') {
            needs = true;
            break;
        }
    if (!needs) return std::string(field);
    std::string out;
    out.reserve(field.size() + 2);
    out.push_back('"');
    for (char c : field) {
        if (c == '"') out.push_back('"');
        out.push_back(c);
    }
    out.push_back('"');
    return out;
}

// Splits one already-read CSV line (no embedded newlines); test helper and
// round-trip support.
inline std::vector<std::string> csv_split_line(std::string_view s) {
    std::vector<std::string> out;
    std::string field;
    bool in_quotes = false;
    for (size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < s.size() && s[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"') {
            in_quotes = true;
        } else if (c == ',') {
            out.push_back(std::move(field));
            field.clear();
        } else if (c != '\r') {
            field.push_back(c);
        }
    }
    out.push_back(std::move(field));
    return out;
}

}  // namespace emosent
