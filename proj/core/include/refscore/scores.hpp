#ifndef REFSCORE_SCORES_HPP
#define REFSCORE_SCORES_HPP

#include "refscore/score_parser.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace refscore {

// One scoring iteration: the raw report plus what the parser made of it.
struct IterationReport {
    int iteration = 0; // 1-based
    std::string report;
    ParsedScore parsed;
    std::string error; // nonempty when the backend failed for this iteration
    std::string timestamp;

    bool ok() const { return error.empty(); }
};

struct ScoreBatch {
    std::string article_id;
    std::string model_id;
    std::string variant;
    std::vector<IterationReport> reports; // sorted by iteration

    bool complete() const;
    std::vector<double> parsed_values() const;
};

struct ArticleScore {
    std::string article_id;
    double mean_score = 0;
    int n_parsed = 0;
    int n_unparsed = 0;
};

// Arithmetic mean over parsed scores only; unparsed iterations are counted,
// never imputed. Throws Error("all-unparsed") when nothing parsed.
ArticleScore average_score(const ScoreBatch& batch);

// scores CSV schema: article_id,mean_score,n_parsed,n_unparsed (sorted by id).
std::string scores_to_csv(std::span<const ArticleScore> scores);
std::vector<ArticleScore> scores_from_csv_file(const std::filesystem::path& path);

// Review queue CSV: article_id,iteration,report — every unparsed-but-fetched
// iteration, for manual scoring.
std::string review_queue_to_csv(std::span<const ScoreBatch> batches);

// Manually entered scores: CSV of article_id,iteration,value.
// Keyed by (article_id, iteration).
std::map<std::pair<std::string, int>, double>
load_manual_scores(const std::filesystem::path& path);

// Replace unparsed/missing iterations with manually entered values.
void apply_manual_scores(std::vector<ScoreBatch>& batches,
                         const std::map<std::pair<std::string, int>, double>& manual);

} // namespace refscore

#endif
