#ifndef REFSCORE_WATA_HPP
#define REFSCORE_WATA_HPP

#include "refscore/scores.hpp"

#include <set>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace refscore {

struct SplitSpec {
    // Score cut; the high group takes mean_score >= threshold.
    // Unset = median of the mean scores.
    std::optional<double> threshold;
};

// Partition article ids into (high, low). Throws Error("degenerate-split")
// when either side ends up empty.
std::pair<std::vector<std::string>, std::vector<std::string>>
split_by_threshold(std::span<const ArticleScore> scores, const SplitSpec& spec);

// Document-level term presence: lowercase, split on non-alphanumeric except
// hyphens with alphanumerics on both sides ("genome-wide" stays whole).
std::set<std::string> tokenize(std::string_view text);

// 2x2 chi-squared without continuity correction:
//   n (ad - bc)^2 / ((a+b)(c+d)(a+c)(b+d)),  n = a+b+c+d
// a = high docs with term, b = high without, c = low with, d = low without.
// A zero margin yields 0 by convention.
double term_chisq(long long a, long long b, long long c, long long d);

// Upper-tail probability of chi-squared with 1 dof, via erfc(sqrt(x/2)).
double chisq_p_value(double chisq);

// Benjamini-Hochberg step-up adjustment, returned in input order.
std::vector<double> bh_adjust(std::span<const double> p_values);

enum class TermDirection { High, Low };

struct TermStat {
    std::string term;
    double p_high = 0; // proportion of high-group documents containing the term
    double p_low = 0;
    long long n_docs = 0; // documents containing the term across both groups
    double chisq = 0;
    double p_value = 1;
    bool significant_after_bh = false;
    TermDirection direction = TermDirection::Low;
};

struct WataOptions {
    std::size_t top_k = 25;
    double alpha = 0.001; // threshold on the BH-adjusted p
    bool fold_plurals = false; // strip final "s" when both forms occur
};

struct WataResult {
    std::vector<TermStat> high_terms; // BH-significant, descending chisq
    std::vector<TermStat> low_terms;
    std::size_t vocabulary_size = 0;
    std::size_t n_high_docs = 0;
    std::size_t n_low_docs = 0;
};

// Full word-association run over two document groups (title+abstract texts).
WataResult wata_report(std::span<const std::string> high_docs,
                       std::span<const std::string> low_docs,
                       const WataOptions& options = {});

// CSV mirroring the published table shape:
// term, own-group %, other-group %, articles, chisq, theme placeholder.
std::string wata_to_csv(std::span<const TermStat> terms, TermDirection direction);

} // namespace refscore

#endif
