#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <sstream>
#include <string>
#include <vector>

#include "emosent/scoring.hpp"

using namespace emosent;
using Catch::Approx;

namespace {

PriorDistribution make_priors(int64_t sad, int64_t neutral, int64_t good, int64_t great) {
    PriorDistribution p;
    p.totals = {sad, neutral, good, great};
    p.N = sad + neutral + good + great;
    return p;
}

IconCounts make_counts(std::vector<char32_t> key, int64_t great, int64_t good, int64_t neutral,
                       int64_t sad) {
    IconCounts c;
    c.key = EmojiKey{std::move(key)};
    c.great = great;
    c.good = good;
    c.neutral = neutral;
    c.sad = sad;
    return c;
}

// corpus benchmark margins used throughout: sad 288, neutral 505, good 1017,
// great 1867, N 3677
PriorDistribution bench_priors() { return make_priors(288, 505, 1017, 1867); }

std::vector<std::string> lines_of(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) out.push_back(line);
    return out;
}

}  // namespace

TEST_CASE("single-key corpus has unit ratios everywhere") {
    // every comment carries the same key, so sample odds equal prior odds
    std::string csv = "id,text,rating\n";
    const char* labels[] = {"Great", "Great", "Great", "Great", "Great", "Good", "Good",
                            "Good",  "Neutral", "Neutral", "Sad", "Sad"};
    for (int i = 0; i < 12; ++i)
        csv += std::to_string(i) + ",x \xF0\x9F\x91\x8D y," + labels[i] + "\n";
    std::istringstream in(csv);
    const Corpus corpus = ingest_corpus(in, {});
    const auto rows = analyze(corpus);
    REQUIRE(rows.size() == 1);
    for (IconRating r : kAllIcons) {
        const PerIconResult& e = rows[0].icon(r);
        CHECK(e.odds.ratio == 1.0);  // product form cancels bit for bit
        CHECK(e.test.p_value == 1.0);
        CHECK(e.test.ci_low == 0.0);
        CHECK(std::isinf(e.test.ci_high));
        CHECK_FALSE(e.significant);
    }
    // nothing significant: comparison sees no rows
    const AgreementSummary sum = compare_methods(rows);
    CHECK(sum.empty);
    CHECK(sum.fraction == 0.0);
}

TEST_CASE("analyze_counts runs the per-icon battery") {
    const auto rows =
        analyze_counts({make_counts({0x1F922}, 0, 0, 1, 2)}, bench_priors());
    REQUIRE(rows.size() == 1);
    const EmojiSentimentRow& row = rows[0];
    CHECK(row.s.mean == Approx(-2.5 / 3.0).epsilon(1e-14));
    CHECK(row.s.sd == Approx(0.2886751345948129).epsilon(1e-12));

    const PerIconResult& sad = row.icon(IconRating::Sad);
    CHECK(sad.odds.ratio == Approx(6778.0 / 288.0).epsilon(1e-15));
    CHECK(sad.test.alternative == Alternative::Greater);
    CHECK(sad.test.p_value == Approx(0.017393575188593795).margin(1e-9));
    CHECK(sad.test.ci_low == Approx(1.8453694133833536).margin(1e-4));
    CHECK(std::isinf(sad.test.ci_high));
    CHECK(sad.significant);

    CHECK(row.icon(IconRating::Neutral).test.alternative == Alternative::Greater);
    CHECK_FALSE(row.icon(IconRating::Neutral).significant);
    CHECK(row.icon(IconRating::Good).odds.ratio == 0.0);
    CHECK(row.icon(IconRating::Good).test.alternative == Alternative::Less);
    CHECK_FALSE(row.icon(IconRating::Good).significant);
    CHECK_FALSE(row.icon(IconRating::Great).significant);
}

TEST_CASE("analyze_counts validates inputs") {
    CHECK_THROWS_WITH(analyze_counts({make_counts({0x1F44D}, 1, 1, 1, 0)},
                                     make_priors(1, 1, 1, 0)),
                      "degenerate prior: Great");
    CHECK_THROWS_AS(analyze_counts({}, bench_priors(), AnalyzeOptions{3, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(analyze_counts({}, bench_priors(), AnalyzeOptions{0, 0.05}),
                    std::invalid_argument);
}

TEST_CASE("min_total prunes sparse keys") {
    const std::vector<IconCounts> counts = {make_counts({0x1F922}, 0, 0, 1, 2),
                                            make_counts({0x1F44D}, 1, 1, 0, 0)};
    CHECK(analyze_counts(counts, bench_priors()).size() == 1);  // default 3
    AnalyzeOptions opt;
    opt.min_total = 1;
    CHECK(analyze_counts(counts, bench_priors(), opt).size() == 2);
}

TEST_CASE("filter_significant re-marks and prunes") {
    auto rows = analyze_counts({make_counts({0x1F922}, 0, 0, 1, 2)}, bench_priors());
    CHECK(filter_significant(rows, 1.0).size() == 1);
    CHECK(filter_significant(rows, 1e-9).empty());
    const auto kept = filter_significant(rows, 0.05);
    REQUIRE(kept.size() == 1);
    CHECK(kept[0].icon(IconRating::Sad).significant);
    CHECK_FALSE(kept[0].icon(IconRating::Neutral).significant);
}

TEST_CASE("compare_methods scores polarity agreement") {
    // nauseated-face row: S negative, odds elevated on the sad icon -> agree
    const auto rows =
        analyze_counts({make_counts({0x1F922}, 0, 0, 1, 2)}, bench_priors());
    AgreementSummary sum = compare_methods(rows);
    CHECK_FALSE(sum.empty);
    CHECK(sum.agree == 1);
    CHECK(sum.disagree == 0);
    CHECK(sum.undecided == 0);
    CHECK(sum.fraction == 1.0);

    // all-neutral row: most significant icon is Neutral; the strict variant
    // refuses to assign it a side
    const auto neutral_rows =
        analyze_counts({make_counts({0x1F610}, 0, 0, 3, 0)}, bench_priors());
    REQUIRE(!neutral_rows.empty());
    sum = compare_methods(neutral_rows, /*neutral_negative=*/true);
    CHECK(sum.agree == 1);
    sum = compare_methods(neutral_rows, /*neutral_negative=*/false);
    CHECK(sum.agree == 0);
    CHECK(sum.undecided == 1);
    CHECK(sum.fraction == 0.0);
}

TEST_CASE("render_table csv emits the reference column order") {
    const auto rows = filter_significant(
        analyze_counts({make_counts({0x1F922}, 0, 0, 1, 2)}, bench_priors()));
    const std::string csv = render_table(rows, TableFormat::Csv, /*paper_style=*/true);
    const auto lines = lines_of(csv);
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] == "odds_type,hex,great,good,neutral,sad,total,ratio,ci,p,s,sd");
    CHECK(lines[1] == "sad,1f922,0,0,1,2,3,23.5,\"(1.8,Inf)\",0.02,-0.83,0.29");
}

TEST_CASE("render_table orders sections and splits multi-icon rows") {
    // 5 sad-rated comments: sad odds elevated AND great odds depressed,
    // both significant, so the same key renders twice
    const auto rows = filter_significant(
        analyze_counts({make_counts({0x1F62D}, 0, 0, 0, 5)}, bench_priors()));
    REQUIRE(rows.size() == 1);
    const std::string csv = render_table(rows, TableFormat::Csv, true);
    const auto lines = lines_of(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[1].rfind("sad,1f62d,0,0,0,5,5,Inf,", 0) == 0);
    CHECK(lines[2].rfind("great,1f62d,0,0,0,5,5,0.0,\"(0.0,", 0) == 0);
    // the S cells are shared by both entries
    CHECK(lines[1].substr(lines[1].size() - 11) == ",-1.00,0.00");
    CHECK(lines[2].substr(lines[2].size() - 11) == ",-1.00,0.00");
}

TEST_CASE("render_table markdown shape") {
    const auto rows = filter_significant(
        analyze_counts({make_counts({0x1F922}, 0, 0, 1, 2)}, bench_priors()));
    const std::string md = render_table(rows, TableFormat::Markdown, true);
    const auto lines = lines_of(md);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] ==
          "| odds_type | hex | great | good | neutral | sad | total | ratio | ci | p | s | sd |");
    CHECK(lines[1] == "| --- | --- | --- | --- | --- | --- | --- | --- | --- | --- | --- | --- |");
    CHECK(lines[2].rfind("| sad | 1f922 | 0 | 0 | 1 | 2 | 3 | 23.5 | (1.8,Inf) | 0.02 |", 0) == 0);
}

TEST_CASE("render_table json parses back with Inf markers") {
    const auto rows =
        analyze_counts({make_counts({0x1F922}, 0, 0, 1, 2)}, bench_priors());
    const std::string js = render_table(rows, TableFormat::Json);
    const auto arr = nlohmann::json::parse(js);
    REQUIRE(arr.is_array());
    REQUIRE(arr.size() == 1);
    const auto& row = arr[0];
    CHECK(row["key"] == "1f922");
    CHECK(row["counts"]["total"] == 3);
    CHECK(row["counts"]["sad"] == 2);
    CHECK(row["s"]["mean"].get<double>() == Approx(-2.5 / 3.0));
    CHECK(row["icons"]["sad"]["alternative"] == "greater");
    CHECK(row["icons"]["sad"]["ci_high"] == "Inf");
    CHECK(row["icons"]["sad"]["significant"] == true);
    CHECK(row["icons"]["good"]["ratio"].get<double>() == 0.0);
    CHECK(row["icons"]["good"]["alternative"] == "less");
    CHECK(row["icons"]["good"]["ci_low"].get<double>() == 0.0);
}

TEST_CASE("analysis is independent of comment order") {
    std::string head = "id,text,rating\n";
    const std::vector<std::string> recs = {
        "1,\"a \xF0\x9F\x91\x8D\",Great",  "2,\"b \xF0\x9F\xA4\xA2\",Sad",
        "3,\"c \xF0\x9F\x91\x8D\",Good",   "4,\"d \xF0\x9F\xA4\xA2\",Neutral",
        "5,\"e \xF0\x9F\x91\x8D\",Great",  "6,\"f \xF0\x9F\x8E\x82\",Great",
        "7,\"g \xF0\x9F\x91\x8D\",Neutral", "8,\"h \xF0\x9F\xA4\xA2\",Sad",
        "9,\"i \xF0\x9F\x8E\x82\",Good",   "10,\"j \xF0\x9F\x91\x8D\",Great",
    };
    std::string fwd = head, rev = head;
    for (const auto& r : recs) fwd += r + "\n";
    for (auto it = recs.rbegin(); it != recs.rend(); ++it) rev += *it + "\n";
    std::istringstream in_fwd(fwd), in_rev(rev);
    const Corpus a = ingest_corpus(in_fwd, {});
    const Corpus b = ingest_corpus(in_rev, {});
    AnalyzeOptions opt;
    opt.min_total = 1;
    for (TableFormat f : {TableFormat::Csv, TableFormat::Markdown, TableFormat::Json})
        CHECK(render_table(analyze(a, opt), f, true) == render_table(analyze(b, opt), f, true));
}
