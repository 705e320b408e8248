// Command-line driver: corpus analysis, ad-hoc exact tests, prior counts
// and method comparison.  Data goes to stdout, diagnostics to stderr;
// exit 0 on success, 2 on any error.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "emosent/corpus.hpp"
#include "emosent/exact_stats.hpp"
#include "emosent/format.hpp"
#include "emosent/scoring.hpp"

namespace {

struct IngestFlags {
    std::string input;
    std::string format = "csv";
    std::string text_col = "text";
    std::string rating_col = "rating";
    bool include_non_emoji = false;
};

void add_ingest_flags(CLI::App* cmd, IngestFlags& f) {
    cmd->add_option("--input", f.input, "input file")->required();
    cmd->add_option("--format", f.format, "input format")
        ->check(CLI::IsMember({"csv", "jsonl"}))
        ->capture_default_str();
    cmd->add_option("--text-col", f.text_col, "text column/member name")->capture_default_str();
    cmd->add_option("--rating-col", f.rating_col, "rating column/member name")
        ->capture_default_str();
    cmd->add_flag("--include-non-emoji", f.include_non_emoji,
                  "keep comments without emoji (they widen the priors)");
}

emosent::Corpus load_corpus(const IngestFlags& f) {
    std::ifstream in(f.input, std::ios::binary);
    if (!in) throw std::runtime_error(f.input + ": cannot open input");
    emosent::IngestOptions opt;
    opt.format = f.format == "jsonl" ? emosent::InputFormat::Jsonl : emosent::InputFormat::Csv;
    opt.text_col = f.text_col;
    opt.rating_col = f.rating_col;
    opt.emoji_only = !f.include_non_emoji;
    try {
        return emosent::ingest_corpus(in, opt);
    } catch (const emosent::IngestError& e) {
        throw std::runtime_error(f.input + ": " + e.what());
    }
}

std::string priors_line(const emosent::PriorDistribution& p) {
    using emosent::IconRating;
    std::string out;
    out += "Great " + std::to_string(p.count(IconRating::Great));
    out += ", Good " + std::to_string(p.count(IconRating::Good));
    out += ", Neutral " + std::to_string(p.count(IconRating::Neutral));
    out += ", Sad " + std::to_string(p.count(IconRating::Sad));
    out += ", N " + std::to_string(p.N);
    return out;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"emoji sentiment scores from rated comments"};
    app.require_subcommand(1);

    // analyze
    auto* analyze = app.add_subcommand("analyze", "full per-key significance report");
    IngestFlags an_in;
    add_ingest_flags(analyze, an_in);
    double an_alpha = 0.05;
    int64_t an_min_total = 3;
    std::string an_key_mode = "exact-set", an_out = "csv";
    bool an_paper = false;
    analyze->add_option("--alpha", an_alpha, "significance level")->capture_default_str();
    analyze->add_option("--min-total", an_min_total, "minimum per-key total")
        ->capture_default_str();
    analyze->add_option("--key-mode", an_key_mode, "collocation key semantics")
        ->check(CLI::IsMember({"exact-set", "per-single"}))
        ->capture_default_str();
    analyze->add_option("--out", an_out, "output format")
        ->check(CLI::IsMember({"csv", "markdown", "json"}))
        ->capture_default_str();
    analyze->add_flag("--paper-style", an_paper,
                      "round like the published tables (1-decimal ratios/CIs, "
                      "2-decimal S/SD, 1-significant-figure p)");

    // test
    auto* test = app.add_subcommand("test", "exact test for one (a, n, K, N) table");
    int64_t t_a = 0, t_n = 0, t_K = 0, t_N = 0;
    std::string t_alt = "greater";
    double t_alpha = 0.05;
    test->add_option("a", t_a, "comments with key and icon")->required();
    test->add_option("n", t_n, "comments with key")->required();
    test->add_option("K", t_K, "corpus-wide icon count")->required();
    test->add_option("N", t_N, "corpus grand total")->required();
    test->add_option("--alt", t_alt, "alternative hypothesis")
        ->check(CLI::IsMember({"greater", "less", "two-sided"}))
        ->capture_default_str();
    test->add_option("--alpha", t_alpha, "significance level")->capture_default_str();

    // priors
    auto* priors = app.add_subcommand("priors", "corpus-wide icon totals");
    IngestFlags pr_in;
    add_ingest_flags(priors, pr_in);

    // compare
    auto* compare = app.add_subcommand("compare", "S-score vs odds polarity agreement");
    IngestFlags cm_in;
    add_ingest_flags(compare, cm_in);
    double cm_alpha = 0.05;
    int64_t cm_min_total = 3;
    std::string cm_key_mode = "exact-set";
    bool cm_neutral_undecided = false;
    compare->add_option("--alpha", cm_alpha, "significance level")->capture_default_str();
    compare->add_option("--min-total", cm_min_total, "minimum per-key total")
        ->capture_default_str();
    compare->add_option("--key-mode", cm_key_mode, "collocation key semantics")
        ->check(CLI::IsMember({"exact-set", "per-single"}))
        ->capture_default_str();
    compare->add_flag("--neutral-undecided", cm_neutral_undecided,
                      "treat neutral-icon verdicts as undecided instead of negative");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (analyze->parsed()) {
            emosent::AnalyzeOptions opt;
            opt.alpha = an_alpha;
            opt.min_total = an_min_total;
            opt.key_mode = an_key_mode == "per-single" ? emosent::KeyMode::PerSingle
                                                       : emosent::KeyMode::ExactSet;
            auto rows = emosent::filter_significant(
                emosent::analyze(load_corpus(an_in), opt), an_alpha);
            emosent::TableFormat fmt = an_out == "markdown" ? emosent::TableFormat::Markdown
                                       : an_out == "json"   ? emosent::TableFormat::Json
                                                            : emosent::TableFormat::Csv;
            std::cout << emosent::render_table(rows, fmt, an_paper);
        } else if (test->parsed()) {
            emosent::ContingencyTable t{t_a, t_n, t_K, t_N};
            emosent::Alternative alt = t_alt == "less"      ? emosent::Alternative::Less
                                       : t_alt == "two-sided" ? emosent::Alternative::TwoSided
                                                              : emosent::Alternative::Greater;
            const emosent::OddsResult odds = emosent::odds_ratio_vs_prior(t);
            const double p = emosent::fisher_p_value(t, alt);
            emosent::ConfidenceInterval ci;
            if (alt == emosent::Alternative::Greater) {
                ci = emosent::exact_ci(t, emosent::Alternative::Greater, t_alpha);
            } else if (alt == emosent::Alternative::Less) {
                ci = emosent::exact_ci(t, emosent::Alternative::Less, t_alpha);
            } else {
                // conventional exact two-sided interval: alpha/2 per side
                ci.low = emosent::exact_ci(t, emosent::Alternative::Greater, t_alpha / 2).low;
                ci.high = emosent::exact_ci(t, emosent::Alternative::Less, t_alpha / 2).high;
            }
            std::cout << "ratio " << emosent::fmt_ratio1(odds.ratio) << ", p "
                      << emosent::fmt_sig1(p) << ", CI (" << emosent::fmt_ratio1(ci.low) << ","
                      << emosent::fmt_ratio1(ci.high) << ")\n";
        } else if (priors->parsed()) {
            std::cout << priors_line(emosent::compute_priors(load_corpus(pr_in))) << "\n";
        } else if (compare->parsed()) {
            emosent::AnalyzeOptions opt;
            opt.alpha = cm_alpha;
            opt.min_total = cm_min_total;
            opt.key_mode = cm_key_mode == "per-single" ? emosent::KeyMode::PerSingle
                                                       : emosent::KeyMode::ExactSet;
            auto rows = emosent::filter_significant(
                emosent::analyze(load_corpus(cm_in), opt), cm_alpha);
            const emosent::AgreementSummary s =
                emosent::compare_methods(rows, !cm_neutral_undecided);
            char frac[32];
            std::snprintf(frac, sizeof frac, "%.3f", s.fraction);
            std::cout << "agree " << s.agree << ", disagree " << s.disagree << ", undecided "
                      << s.undecided << ", agreement " << frac << (s.empty ? " (empty)" : "")
                      << "\n";
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
