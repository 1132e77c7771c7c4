#include "refscore/scores.hpp"

#include "refscore/csv.hpp"
#include "refscore/errors.hpp"
#include "refscore/util.hpp"

#include <algorithm>

namespace refscore {

bool ScoreBatch::complete() const {
    return std::all_of(reports.begin(), reports.end(),
                       [](const IterationReport& r) { return r.ok(); });
}

std::vector<double> ScoreBatch::parsed_values() const {
    std::vector<double> out;
    for (const auto& r : reports)
        if (r.ok() && r.parsed.parsed()) out.push_back(*r.parsed.value);
    return out;
}

ArticleScore average_score(const ScoreBatch& batch) {
    ArticleScore score;
    score.article_id = batch.article_id;
    long double sum = 0;
    for (const auto& r : batch.reports) {
        if (r.ok() && r.parsed.parsed()) {
            sum += *r.parsed.value;
            score.n_parsed++;
        } else {
            score.n_unparsed++;
        }
    }
    if (score.n_parsed == 0)
        throw Error("all-unparsed", "no parsed scores for article " + batch.article_id);
    score.mean_score = static_cast<double>(sum / score.n_parsed);
    return score;
}

std::string scores_to_csv(std::span<const ArticleScore> scores) {
    std::vector<const ArticleScore*> sorted;
    sorted.reserve(scores.size());
    for (const auto& s : scores) sorted.push_back(&s);
    std::sort(sorted.begin(), sorted.end(),
              [](const ArticleScore* a, const ArticleScore* b) { return a->article_id < b->article_id; });

    std::string out = "article_id,mean_score,n_parsed,n_unparsed\n";
    for (const ArticleScore* s : sorted) {
        out += csv_row({s->article_id, format_double(s->mean_score),
                        std::to_string(s->n_parsed), std::to_string(s->n_unparsed)});
    }
    return out;
}

std::vector<ArticleScore> scores_from_csv_file(const std::filesystem::path& path) {
    CsvTable table = read_delimited_file(path, ',');
    int c_id = table.column("article_id"), c_mean = table.column("mean_score");
    int c_p = table.column("n_parsed"), c_u = table.column("n_unparsed");
    if (c_id < 0 || c_mean < 0)
        throw Error("missing-column", "scores CSV needs article_id,mean_score");
    std::vector<ArticleScore> out;
    for (const auto& row : table.rows) {
        ArticleScore s;
        s.article_id = row[static_cast<size_t>(c_id)];
        s.mean_score = std::stod(row[static_cast<size_t>(c_mean)]);
        if (c_p >= 0) s.n_parsed = std::stoi(row[static_cast<size_t>(c_p)]);
        if (c_u >= 0) s.n_unparsed = std::stoi(row[static_cast<size_t>(c_u)]);
        out.push_back(std::move(s));
    }
    return out;
}

std::string review_queue_to_csv(std::span<const ScoreBatch> batches) {
    std::string out = "article_id,iteration,report\n";
    for (const auto& batch : batches) {
        for (const auto& r : batch.reports) {
            if (r.ok() && !r.parsed.parsed())
                out += csv_row({batch.article_id, std::to_string(r.iteration), r.report});
        }
    }
    return out;
}

std::map<std::pair<std::string, int>, double>
load_manual_scores(const std::filesystem::path& path) {
    CsvTable table = read_delimited_file(path, ',');
    int c_id = table.column("article_id"), c_it = table.column("iteration");
    int c_v = table.column("value");
    if (c_id < 0 || c_it < 0 || c_v < 0)
        throw Error("missing-column", "manual scores CSV needs article_id,iteration,value");
    std::map<std::pair<std::string, int>, double> out;
    for (const auto& row : table.rows) {
        double v = std::stod(row[static_cast<size_t>(c_v)]);
        if (v < 1.0 || v > 4.0)
            throw Error("out-of-range", "manual score outside [1,4] for " + row[static_cast<size_t>(c_id)]);
        out[{row[static_cast<size_t>(c_id)], std::stoi(row[static_cast<size_t>(c_it)])}] = v;
    }
    return out;
}

void apply_manual_scores(std::vector<ScoreBatch>& batches,
                         const std::map<std::pair<std::string, int>, double>& manual) {
    for (auto& batch : batches) {
        for (auto& r : batch.reports) {
            auto it = manual.find({batch.article_id, r.iteration});
            if (it == manual.end()) continue;
            r.parsed.value = it->second;
            r.parsed.rule_id = "manual";
            r.error.clear();
        }
    }
}

} // namespace refscore
