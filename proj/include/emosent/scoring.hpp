#pragma once

// Full analysis pipeline: per-key icon battery, significance filtering,
// S-vs-odds polarity comparison and table rendering.

#include <algorithm>
#include <array>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "emosent/corpus.hpp"
#include "emosent/exact_stats.hpp"
#include "emosent/format.hpp"

namespace emosent {

struct PerIconResult {
    OddsResult odds;
    ExactTestResult test;
    bool significant = false;
};

struct EmojiSentimentRow {
    IconCounts counts;
    SentimentScore s;
    std::array<PerIconResult, 4> icons;  // indexed by icon_index()

    const PerIconResult& icon(IconRating r) const {
        return icons[static_cast<size_t>(icon_index(r))];
    }
};

struct AnalyzeOptions {
    int64_t min_total = 3;
    double alpha = 0.05;
    KeyMode key_mode = KeyMode::ExactSet;
};

namespace detail {

// Most significant icon of a row: smallest p, ties by larger |log ratio|,
// then by icon order.
inline IconRating most_significant_icon(const EmojiSentimentRow& row) {
    IconRating best = IconRating::Sad;
    bool have = false;
    double best_p = 0, best_mag = 0;
    for (IconRating r : kAllIcons) {
        const PerIconResult& e = row.icon(r);
        const double mag = std::abs(std::log(e.odds.ratio));  // 0 or inf ratio -> inf
        if (!have || e.test.p_value < best_p ||
            (e.test.p_value == best_p && mag > best_mag)) {
            have = true;
            best = r;
            best_p = e.test.p_value;
            best_mag = mag;
        }
    }
    return best;
}

}  // namespace detail

// Per-key battery against the given priors.  Each icon gets the table
// (a = counts[icon], n = total, K = priors[icon], N = priors.N), the
// prior-relative odds and the exact test, sided toward the observed
// deviation (greater when ratio >= 1).  Rows come back ordered by the
// section of their most significant icon, then descending ratio there.
inline std::vector<EmojiSentimentRow> analyze_counts(const std::vector<IconCounts>& counts,
                                                     const PriorDistribution& priors,
                                                     const AnalyzeOptions& opt = {}) {
    for (IconRating r : kAllIcons)
        if (priors.count(r) <= 0 || priors.count(r) >= priors.N)
            throw std::domain_error(std::string("degenerate prior: ") + icon_name(r));
    if (!(opt.alpha > 0 && opt.alpha < 1)) throw std::invalid_argument("alpha must be in (0,1)");
    if (opt.min_total < 1) throw std::invalid_argument("min_total must be >= 1");

    std::vector<EmojiSentimentRow> rows;
    for (const IconCounts& c : counts) {
        if (c.total() < opt.min_total) continue;
        EmojiSentimentRow row;
        row.counts = c;
        row.s = s_score(c);
        for (IconRating r : kAllIcons) {
            ContingencyTable t{c.count(r), c.total(), priors.count(r), priors.N};
            PerIconResult& e = row.icons[static_cast<size_t>(icon_index(r))];
            e.odds = odds_ratio_vs_prior(t);
            const Alternative alt =
                e.odds.ratio >= 1.0 ? Alternative::Greater : Alternative::Less;
            const ConfidenceInterval ci = exact_ci(t, alt, opt.alpha);
            e.test = ExactTestResult{fisher_p_value(t, alt), alt, ci.low, ci.high, opt.alpha};
            e.significant = e.test.p_value <= opt.alpha;
        }
        rows.push_back(std::move(row));
    }
    std::stable_sort(rows.begin(), rows.end(),
                     [](const EmojiSentimentRow& x, const EmojiSentimentRow& y) {
                         const IconRating rx = detail::most_significant_icon(x);
                         const IconRating ry = detail::most_significant_icon(y);
                         if (rx != ry) return icon_index(rx) < icon_index(ry);
                         const double ox = x.icon(rx).odds.ratio, oy = y.icon(ry).odds.ratio;
                         if (ox != oy) return ox > oy;
                         if (x.counts.total() != y.counts.total())
                             return x.counts.total() > y.counts.total();
                         return x.counts.key < y.counts.key;
                     });
    return rows;
}

inline std::vector<EmojiSentimentRow> analyze(const Corpus& corpus,
                                              const AnalyzeOptions& opt = {}) {
    return analyze_counts(group_by_key(corpus, opt.key_mode), compute_priors(corpus), opt);
}

// Re-marks significance at the given level and drops rows with no
// significant icon; relative order is preserved.
inline std::vector<EmojiSentimentRow> filter_significant(std::vector<EmojiSentimentRow> rows,
                                                         double alpha = 0.05) {
    std::vector<EmojiSentimentRow> kept;
    for (EmojiSentimentRow& row : rows) {
        bool any = false;
        for (PerIconResult& e : row.icons) {
            e.significant = e.test.p_value <= alpha;
            any = any || e.significant;
        }
        if (any) kept.push_back(std::move(row));
    }
    return kept;
}

struct AgreementSummary {
    int64_t agree = 0;
    int64_t disagree = 0;
    int64_t undecided = 0;
    double fraction = 0;  // agree / (agree + disagree) when defined
    bool empty = true;    // no row entered the comparison
};

// Polarity agreement between the S score and the odds method.  The odds
// polarity comes from the most significant icon: elevated odds on a
// positive icon (Great/Good) or depressed odds on a negative icon mean
// positive sentiment; mirrored cases mean negative.  Neutral counts as a
// negative-side icon by default (its mapped value is -0.5); with
// neutral_negative = false such rows are undecided instead.
inline AgreementSummary compare_methods(const std::vector<EmojiSentimentRow>& rows,
                                        bool neutral_negative = true) {
    AgreementSummary sum;
    for (const EmojiSentimentRow& row : rows) {
        bool any = false;
        for (const PerIconResult& e : row.icons) any = any || e.significant;
        if (!any) continue;
        sum.empty = false;
        const int s_pol = row.s.mean > 0 ? 1 : row.s.mean < 0 ? -1 : 0;
        const IconRating icon = detail::most_significant_icon(row);
        const double ratio = row.icon(icon).odds.ratio;
        int icon_side;  // +1 when elevated odds on this icon mean positive text
        switch (icon) {
            case IconRating::Great:
            case IconRating::Good: icon_side = 1; break;
            case IconRating::Neutral: icon_side = neutral_negative ? -1 : 0; break;
            default: icon_side = -1;
        }
        const int dir = ratio > 1 ? 1 : ratio < 1 ? -1 : 0;
        const int odds_pol = icon_side * dir;
        if (s_pol == 0 || odds_pol == 0)
            ++sum.undecided;
        else if (s_pol == odds_pol)
            ++sum.agree;
        else
            ++sum.disagree;
    }
    if (sum.agree + sum.disagree > 0)
        sum.fraction =
            static_cast<double>(sum.agree) / static_cast<double>(sum.agree + sum.disagree);
    return sum;
}

enum class TableFormat { Csv, Markdown, Json };

namespace detail {

struct RenderEntry {
    IconRating icon;
    const EmojiSentimentRow* row;
};

// One entry per significant (key, icon) pair, in table order: section,
// then descending ratio, descending total, key.
inline std::vector<RenderEntry> render_entries(const std::vector<EmojiSentimentRow>& rows) {
    std::vector<RenderEntry> entries;
    for (const EmojiSentimentRow& row : rows)
        for (IconRating r : kAllIcons)
            if (row.icon(r).significant) entries.push_back({r, &row});
    std::stable_sort(entries.begin(), entries.end(),
                     [](const RenderEntry& x, const RenderEntry& y) {
                         if (x.icon != y.icon) return icon_index(x.icon) < icon_index(y.icon);
                         const double ox = x.row->icon(x.icon).odds.ratio;
                         const double oy = y.row->icon(y.icon).odds.ratio;
                         if (ox != oy) return ox > oy;
                         if (x.row->counts.total() != y.row->counts.total())
                             return x.row->counts.total() > y.row->counts.total();
                         return x.row->counts.key < y.row->counts.key;
                     });
    return entries;
}

struct EntryCells {
    std::string ratio, ci, p, s, sd;
};

inline EntryCells entry_cells(const RenderEntry& e, bool paper_style) {
    const PerIconResult& pi = e.row->icon(e.icon);
    EntryCells c;
    if (paper_style) {
        c.ratio = fmt_ratio1(pi.odds.ratio);
        c.ci = "(" + fmt_ratio1(pi.test.ci_low) + "," + fmt_ratio1(pi.test.ci_high) + ")";
        c.p = fmt_sig1(pi.test.p_value);
        c.s = fmt_fixed_half_away(e.row->s.mean, 2);
        c.sd = fmt_fixed_half_away(e.row->s.sd, 2);
    } else {
        c.ratio = fmt_full(pi.odds.ratio);
        c.ci = "(" + fmt_full(pi.test.ci_low) + "," + fmt_full(pi.test.ci_high) + ")";
        c.p = fmt_full(pi.test.p_value);
        c.s = fmt_full(e.row->s.mean);
        c.sd = fmt_full(e.row->s.sd);
    }
    return c;
}

inline nlohmann::ordered_json json_row(const EmojiSentimentRow& row) {
    auto num = [](double v) -> nlohmann::ordered_json {
        if (std::isinf(v)) return v > 0 ? "Inf" : "-Inf";
        return v;
    };
    nlohmann::ordered_json j;
    j["key"] = row.counts.key.str();
    j["counts"] = {{"great", row.counts.great},
                   {"good", row.counts.good},
                   {"neutral", row.counts.neutral},
                   {"sad", row.counts.sad},
                   {"total", row.counts.total()}};
    j["s"] = {{"mean", row.s.mean}, {"sd", row.s.sd}};
    nlohmann::ordered_json icons;
    for (IconRating r : kAllIcons) {
        const PerIconResult& e = row.icon(r);
        icons[icon_section(r)] = {
            {"sample_odds", num(e.odds.sample_odds)},
            {"prior_odds", num(e.odds.prior_odds)},
            {"ratio", num(e.odds.ratio)},
            {"alternative", e.test.alternative == Alternative::Greater ? "greater" : "less"},
            {"p_value", e.test.p_value},
            {"ci_low", num(e.test.ci_low)},
            {"ci_high", num(e.test.ci_high)},
            {"alpha", e.test.alpha},
            {"significant", e.significant},
        };
    }
    j["icons"] = std::move(icons);
    return j;
}

}  // namespace detail

inline constexpr const char* kTableHeader[] = {"odds_type", "hex", "great", "good",
                                               "neutral",   "sad", "total", "ratio",
                                               "ci",        "p",   "s",     "sd"};

// csv/markdown: one line per significant (key, icon) entry in the reference
// table column order; json: full-precision nested rows (one object per key,
// all four icons).  paper_style rounds ratio/CI to 1 decimal, S/SD to 2
// decimals and p to 1 significant figure; infinities print as "Inf".
inline std::string render_table(const std::vector<EmojiSentimentRow>& rows, TableFormat format,
                                bool paper_style = false) {
    if (format == TableFormat::Json) {
        nlohmann::ordered_json arr = nlohmann::ordered_json::array();
        for (const EmojiSentimentRow& row : rows) arr.push_back(detail::json_row(row));
        return arr.dump(2) + "\n";
    }
    const std::vector<detail::RenderEntry> entries = detail::render_entries(rows);
    std::string out;
    if (format == TableFormat::Csv) {
        for (size_t i = 0; i < std::size(kTableHeader); ++i) {
            if (i) out.push_back(',');
            out += kTableHeader[i];
        }
        out.push_back('\n');
        for (const auto& e : entries) {
            const detail::EntryCells c = detail::entry_cells(e, paper_style);
            const IconCounts& n = e.row->counts;
            out += icon_section(e.icon);
            out += ',' + csv_quote(n.key.str());
            out += ',' + std::to_string(n.great) + ',' + std::to_string(n.good) + ',' +
                   std::to_string(n.neutral) + ',' + std::to_string(n.sad) + ',' +
                   std::to_string(n.total());
            out += ',' + csv_quote(c.ratio) + ',' + csv_quote(c.ci) + ',' + csv_quote(c.p) +
                   ',' + csv_quote(c.s) + ',' + csv_quote(c.sd);
            out.push_back('\n');
        }
        return out;
    }
    // markdown
    out = "|";
    for (const char* h : kTableHeader) out += std::string(" ") + h + " |";
    out += "\n|";
    for (size_t i = 0; i < std::size(kTableHeader); ++i) out += " --- |";
    out.push_back('\n');
    for (const auto& e : entries) {
        const detail::EntryCells c = detail::entry_cells(e, paper_style);
        const IconCounts& n = e.row->counts;
        out += "| ";
        out += icon_section(e.icon);
        out += " | " + n.key.str();
        out += " | " + std::to_string(n.great) + " | " + std::to_string(n.good) + " | " +
               std::to_string(n.neutral) + " | " + std::to_string(n.sad) + " | " +
               std::to_string(n.total());
        out += " | " + c.ratio + " | " + c.ci + " | " + c.p + " | " + c.s + " | " + c.sd +
               " |\n";
    }
    return out;
}

}  // namespace emosent
