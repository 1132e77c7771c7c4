#ifndef REFSCORE_STATS_HPP
#define REFSCORE_STATS_HPP

#include "refscore/corpus.hpp"
#include "refscore/scores.hpp"

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace refscore {

struct CorrelationResult {
    double r = 0;
    long long n = 0;
    double ci_low = 0;
    double ci_high = 0;
};

// Product-moment correlation. Throws Error("length-mismatch"),
// Error("insufficient-n") for n < 3, Error("zero-variance") for a constant series.
double pearson(std::span<const double> xs, std::span<const double> ys);

// Fisher z interval: z = atanh(r), half-width 1.96/sqrt(n-3), back via tanh.
// Throws Error("insufficient-n") for n < 4.
std::pair<double, double> pearson_ci(double r, long long n);

CorrelationResult correlate(std::span<const double> xs, std::span<const double> ys);

struct GroupMean {
    double mean = 0;
    long long n = 0;
};

std::map<std::string, GroupMean>
group_mean(std::span<const std::pair<std::string, double>> scores);

// Correlation between per-article scores and their department's mean,
// computed from the score distributions alone: sqrt(between-department
// variance / total variance). Throws Error("zero-variance") when every
// counted article shares one score.
double theoretical_max_correlation(std::span<const DepartmentProfile> profiles);

// Pearson over (article mean score, department mean REF proxy) pairs.
// Throws Error("missing-profile") naming any department without a profile.
CorrelationResult article_level_correlation(std::span<const Article> articles,
                                            std::span<const ArticleScore> scores,
                                            std::span<const DepartmentProfile> profiles);

struct JournalRow {
    std::string journal;
    long long n_articles = 0;
    double mean_gpt = 0;             // mean model score over the journal's articles
    double journal_ref = 0;          // mean of departmental mean REF over the articles
    std::optional<double> mnlcs;     // absent when no citation baseline was supplied
};

// Per-journal aggregates, ranked by descending article count
// (ties broken by journal name).
std::vector<JournalRow> journal_aggregate(
    std::span<const Article> articles, std::span<const ArticleScore> scores,
    std::span<const DepartmentProfile> profiles,
    const std::map<std::string, double>* nlcs_by_article);

struct TopNTableRow {
    long long top_n = 0;       // requested cutoff (journal count for the all-row)
    long long effective_n = 0; // journals actually correlated
    bool clamped = false;      // cutoff exceeded the journal count
    CorrelationResult ref_vs_gpt;
    std::optional<CorrelationResult> gpt_vs_mnlcs;
    std::optional<CorrelationResult> ref_vs_mnlcs;
};

// Cutoff 0 means all journals. Rows come back ordered by increasing top_n.
std::vector<TopNTableRow> journal_table(std::span<const JournalRow> journals,
                                        std::span<const long long> cutoffs);

struct DeptScatterRow {
    std::string department;
    double mean_gpt = 0;
    double mean_ref = 0;
    long long n = 0;
};

// One row per department, sorted by name.
std::vector<DeptScatterRow> department_scatter(std::span<const Article> articles,
                                               std::span<const ArticleScore> scores,
                                               std::span<const DepartmentProfile> profiles);

// CSV renderings used by the file exports.
std::string journal_table_to_csv(std::span<const TopNTableRow> rows);
std::string department_scatter_to_csv(std::span<const DeptScatterRow> rows);
std::string journal_scatter_to_csv(std::span<const JournalRow> rows);

} // namespace refscore

#endif
