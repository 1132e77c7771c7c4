#include "refscore/wata.hpp"

#include "refscore/csv.hpp"
#include "refscore/errors.hpp"
#include "refscore/util.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <map>
#include <numeric>

namespace refscore {

std::pair<std::vector<std::string>, std::vector<std::string>>
split_by_threshold(std::span<const ArticleScore> scores, const SplitSpec& spec) {
    if (scores.empty()) throw Error("degenerate-split", "no scores to split");

    double threshold;
    if (spec.threshold) {
        threshold = *spec.threshold;
    } else {
        std::vector<double> values;
        values.reserve(scores.size());
        for (const auto& s : scores) values.push_back(s.mean_score);
        std::sort(values.begin(), values.end());
        size_t mid = values.size() / 2;
        threshold = values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
    }

    std::vector<std::string> high, low;
    for (const auto& s : scores) {
        (s.mean_score >= threshold ? high : low).push_back(s.article_id);
    }
    if (high.empty() || low.empty())
        throw Error("degenerate-split", "one side of the split is empty at threshold " +
                                            format_double(threshold));
    return {std::move(high), std::move(low)};
}

std::set<std::string> tokenize(std::string_view text) {
    std::set<std::string> terms;
    std::string current;
    auto is_token_char = [](unsigned char c) { return std::isalnum(c) != 0; };

    for (size_t i = 0; i < text.size(); ++i) {
        unsigned char c = static_cast<unsigned char>(text[i]);
        if (is_token_char(c)) {
            current += static_cast<char>(std::tolower(c));
        } else if (c == '-' && !current.empty() && i + 1 < text.size() &&
                   is_token_char(static_cast<unsigned char>(text[i + 1]))) {
            current += '-';
        } else if (!current.empty()) {
            terms.insert(current);
            current.clear();
        }
    }
    if (!current.empty()) terms.insert(current);
    return terms;
}

double term_chisq(long long a, long long b, long long c, long long d) {
    if (a < 0 || b < 0 || c < 0 || d < 0)
        throw Error("invalid-counts", "negative contingency cell");
    if (a + b < 1 || c + d < 1)
        throw Error("invalid-counts", "each group needs at least one document");
    const double n = static_cast<double>(a + b + c + d);
    const double m1 = static_cast<double>(a + b), m2 = static_cast<double>(c + d);
    const double m3 = static_cast<double>(a + c), m4 = static_cast<double>(b + d);
    if (m3 == 0 || m4 == 0) return 0.0; // term in no or in every document
    const double diff = static_cast<double>(a) * static_cast<double>(d) -
                        static_cast<double>(b) * static_cast<double>(c);
    return n * diff * diff / (m1 * m2 * m3 * m4);
}

double chisq_p_value(double chisq) {
    if (chisq < 0) throw Error("invalid-chisq", "chi-squared must be non-negative");
    // P(X > x) for 1 dof equals P(|Z| > sqrt(x)) = erfc(sqrt(x/2)).
    return std::erfc(std::sqrt(chisq / 2.0));
}

std::vector<double> bh_adjust(std::span<const double> p_values) {
    const size_t m = p_values.size();
    std::vector<size_t> order(m);
    std::iota(order.begin(), order.end(), size_t{0});
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return p_values[a] < p_values[b]; });

    std::vector<double> adjusted(m);
    double running_min = 1.0;
    for (size_t i = m; i-- > 0;) {
        double candidate = p_values[order[i]] * static_cast<double>(m) /
                           static_cast<double>(i + 1);
        running_min = std::min(running_min, candidate);
        adjusted[order[i]] = running_min;
    }
    return adjusted;
}

namespace {

// Presence sets per document, with optional plural folding: a term ending in
// "s" collapses onto its stem when the stem also occurs somewhere in the corpus.
std::vector<std::set<std::string>> doc_term_sets(std::span<const std::string> docs) {
    std::vector<std::set<std::string>> sets;
    sets.reserve(docs.size());
    for (const auto& doc : docs) sets.push_back(tokenize(doc));
    return sets;
}

void fold_plurals_in_place(std::vector<std::set<std::string>>& groups_a,
                           std::vector<std::set<std::string>>& groups_b) {
    std::set<std::string> vocabulary;
    for (const auto* group : {&groups_a, &groups_b})
        for (const auto& doc : *group) vocabulary.insert(doc.begin(), doc.end());

    auto fold = [&](std::set<std::string>& doc) {
        std::set<std::string> out;
        for (const auto& term : doc) {
            if (term.size() > 2 && term.back() == 's' &&
                vocabulary.count(term.substr(0, term.size() - 1))) {
                out.insert(term.substr(0, term.size() - 1));
            } else {
                out.insert(term);
            }
        }
        doc = std::move(out);
    };
    for (auto& doc : groups_a) fold(doc);
    for (auto& doc : groups_b) fold(doc);
}

} // namespace

WataResult wata_report(std::span<const std::string> high_docs,
                       std::span<const std::string> low_docs, const WataOptions& options) {
    if (high_docs.empty() || low_docs.empty())
        throw Error("degenerate-split", "both groups need at least one document");

    auto high_sets = doc_term_sets(high_docs);
    auto low_sets = doc_term_sets(low_docs);
    if (options.fold_plurals) fold_plurals_in_place(high_sets, low_sets);

    std::map<std::string, std::pair<long long, long long>> doc_freq; // term -> (high, low)
    for (const auto& doc : high_sets)
        for (const auto& term : doc) doc_freq[term].first++;
    for (const auto& doc : low_sets)
        for (const auto& term : doc) doc_freq[term].second++;

    const long long n_high = static_cast<long long>(high_sets.size());
    const long long n_low = static_cast<long long>(low_sets.size());

    std::vector<TermStat> stats;
    stats.reserve(doc_freq.size());
    std::vector<double> p_values;
    p_values.reserve(doc_freq.size());
    for (const auto& [term, freq] : doc_freq) {
        TermStat stat;
        stat.term = term;
        const long long a = freq.first, c = freq.second;
        stat.n_docs = a + c;
        stat.p_high = static_cast<double>(a) / static_cast<double>(n_high);
        stat.p_low = static_cast<double>(c) / static_cast<double>(n_low);
        stat.chisq = term_chisq(a, n_high - a, c, n_low - c);
        stat.p_value = chisq_p_value(stat.chisq);
        stat.direction = stat.p_high > stat.p_low ? TermDirection::High : TermDirection::Low;
        p_values.push_back(stat.p_value);
        stats.push_back(std::move(stat));
    }

    auto adjusted = bh_adjust(p_values);
    for (size_t i = 0; i < stats.size(); ++i)
        stats[i].significant_after_bh = adjusted[i] < options.alpha;

    WataResult result;
    result.vocabulary_size = stats.size();
    result.n_high_docs = static_cast<size_t>(n_high);
    result.n_low_docs = static_cast<size_t>(n_low);

    auto collect = [&](TermDirection direction) {
        std::vector<TermStat> out;
        for (const auto& stat : stats)
            if (stat.significant_after_bh && stat.direction == direction) out.push_back(stat);
        std::sort(out.begin(), out.end(), [](const TermStat& a, const TermStat& b) {
            if (a.chisq != b.chisq) return a.chisq > b.chisq;
            return a.term < b.term;
        });
        if (out.size() > options.top_k) out.resize(options.top_k);
        return out;
    };
    result.high_terms = collect(TermDirection::High);
    result.low_terms = collect(TermDirection::Low);
    return result;
}

std::string wata_to_csv(std::span<const TermStat> terms, TermDirection direction) {
    std::string out = direction == TermDirection::High
                          ? "term,higher_gpt_pct,lower_gpt_pct,articles,chisq,theme\n"
                          : "term,lower_gpt_pct,higher_gpt_pct,articles,chisq,theme\n";
    for (const auto& stat : terms) {
        double own = direction == TermDirection::High ? stat.p_high : stat.p_low;
        double other = direction == TermDirection::High ? stat.p_low : stat.p_high;
        out += csv_row({stat.term, format_double(own * 100.0), format_double(other * 100.0),
                        std::to_string(stat.n_docs), format_double(stat.chisq), ""});
    }
    return out;
}

} // namespace refscore
