#ifndef REFSCORE_CORPUS_HPP
#define REFSCORE_CORPUS_HPP

#include <array>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace refscore {

// One assessed research output, the unit of scoring and normalization.
struct Article {
    std::string id;
    std::optional<std::string> doi; // normalized: lowercase, scheme prefix stripped
    std::string title;
    std::optional<std::string> abstract_text;
    int year = 0;
    std::string journal;
    std::string department;
    std::vector<std::string> fields; // subject-category codes
    long long citations = 0;

    bool has_abstract() const;
};

// A department's quality-score distribution over levels 1..4, either as
// counts or as percentages of n_articles.
struct DepartmentProfile {
    std::string department;
    std::array<double, 4> levels{}; // index 0 = level 1
    long long n_articles = 0;
    bool is_percentage = false;

    // Per-level article weight: counts as-is, percentages scaled by n_articles.
    std::array<double, 4> article_weights() const;
};

struct RejectedRow {
    std::string row_id;
    std::string reason;
};

struct CorpusReport {
    long long n_loaded = 0;
    long long n_matched_by_doi = 0;
    long long n_missing_abstract = 0;
    long long n_scoreable = 0;
    std::vector<RejectedRow> rejected_rows;
};

// Maps input header names onto Article fields; empty name = column absent.
struct ColumnMap {
    std::string id;
    std::string doi;
    std::string title;
    std::string abstract_text;
    std::string year;
    std::string journal;
    std::string department;
    std::string fields;
    std::string citations;
    char delimiter = ',';
    char list_separator = ';'; // splits the subject-code cell
    int min_year = 0;          // 0 = unbounded
    int max_year = 0;
};

// Lowercase, trim, strip "https://doi.org/", "http://dx.doi.org/" and "doi:".
std::string normalize_doi(std::string_view raw);

// Every well-formed row becomes an Article; malformed rows land in the
// report with a reason (duplicate-id, missing-id, bad-year, year-out-of-range,
// bad-citations). No row is silently dropped.
std::pair<std::vector<Article>, CorpusReport>
load_articles(const std::filesystem::path& path, const ColumnMap& columns);

struct JoinResult {
    std::vector<Article> matched;
    std::vector<RejectedRow> unmatched; // reasons: no-doi, no-partner, ambiguous-doi
};

// Merge records sharing a DOI that appears exactly once on each side.
// Identity fields (id, title, abstract, year, journal, department) prefer the
// ref side, falling back to the citation side when empty; citations and
// subject codes come from the citation side when present.
JoinResult join_by_doi(std::span<const Article> ref_records,
                       std::span<const Article> citation_records);

// Keeps articles whose abstract is non-blank after whitespace trim;
// updates n_missing_abstract / n_scoreable on the report.
std::vector<Article> filter_scoreable(std::span<const Article> articles, CorpusReport& report);

// Weighted mean over levels 1..4, always in [1,4].
// Throws Error("empty-profile") on an all-zero distribution.
double dept_mean_ref(const DepartmentProfile& profile);

// Profiles CSV schema: department,level1,level2,level3,level4,n_articles.
// Count form must sum to n_articles; percentage form to 100 +/- 0.5.
std::vector<DepartmentProfile> load_profiles(const std::filesystem::path& path,
                                             char delimiter = ',');

// Canonical corpus serialization: one JSON record per line, keys sorted.
std::string corpus_to_jsonl(std::span<const Article> articles);
std::vector<Article> corpus_from_jsonl(std::string_view text);
void write_corpus_jsonl(const std::filesystem::path& path, std::span<const Article> articles);
std::vector<Article> read_corpus_jsonl(const std::filesystem::path& path);

std::string corpus_report_to_json(const CorpusReport& report);

} // namespace refscore

#endif
