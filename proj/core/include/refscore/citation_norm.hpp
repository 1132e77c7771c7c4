#ifndef REFSCORE_CITATION_NORM_HPP
#define REFSCORE_CITATION_NORM_HPP

#include "refscore/corpus.hpp"

#include <filesystem>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace refscore {

struct BaselineCell {
    double mean_log = 0; // per-cell mean of log1p(citations); 0 marks a degenerate cell
    long long n_articles = 0;
};

struct PopulationRecord {
    std::string field;
    int year = 0;
    long long citations = 0;
};

// Immutable after construction; keyed by (field, year).
class BaselineTable {
public:
    void set(const std::string& field, int year, BaselineCell cell);
    const BaselineCell* find(const std::string& field, int year) const;
    bool usable(const std::string& field, int year) const; // present and mean_log > 0
    size_t size() const { return cells_.size(); }

    // Per-cell mean of the log transform. log_base <= 0 means natural log.
    static BaselineTable from_population(std::span<const PopulationRecord> population,
                                         double log_base = 0);

    // CSV schema: field,year,mean_log,n_articles
    static BaselineTable load_csv(const std::filesystem::path& path);
    void save_csv(const std::filesystem::path& path) const;

private:
    std::map<std::pair<std::string, int>, BaselineCell> cells_;
};

// ln(1 + citations); with log_base > 0, that base is used instead.
double log_transform(long long citations, double log_base = 0);

// How a multi-field article combines its per-field normalized values.
enum class MultiFieldPolicy { ArithmeticMean, FirstField };

struct NlcsValue {
    std::string article_id;
    double nlcs = 0;
};

// Field-and-year normalized citation score. Throws Error("missing-baseline")
// naming the absent (field, year) cell, Error("degenerate-baseline") when a
// cell's mean_log is zero, Error("no-fields") for an article with no codes.
double nlcs(const Article& article, const BaselineTable& baseline,
            MultiFieldPolicy policy = MultiFieldPolicy::ArithmeticMean,
            double log_base = 0);

std::vector<NlcsValue> nlcs_all(std::span<const Article> articles, const BaselineTable& baseline,
                                MultiFieldPolicy policy = MultiFieldPolicy::ArithmeticMean);

// Arithmetic mean; throws Error("empty-group") on an empty list.
double mnlcs(std::span<const double> values);

} // namespace refscore

#endif
