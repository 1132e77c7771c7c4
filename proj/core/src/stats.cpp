#include "refscore/stats.hpp"

#include "refscore/csv.hpp"
#include "refscore/errors.hpp"
#include "refscore/util.hpp"

#include <algorithm>
#include <cmath>

namespace refscore {

double pearson(std::span<const double> xs, std::span<const double> ys) {
    if (xs.size() != ys.size()) throw Error("length-mismatch", "series lengths differ");
    const size_t n = xs.size();
    if (n < 3) throw Error("insufficient-n", "need at least 3 pairs");

    long double mx = 0, my = 0;
    for (size_t i = 0; i < n; ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= n;
    my /= n;

    long double sxy = 0, sxx = 0, syy = 0;
    for (size_t i = 0; i < n; ++i) {
        long double dx = xs[i] - mx, dy = ys[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx <= 0 || syy <= 0) throw Error("zero-variance", "constant series");
    return static_cast<double>(sxy / std::sqrt(sxx * syy));
}

std::pair<double, double> pearson_ci(double r, long long n) {
    if (n < 4) throw Error("insufficient-n", "Fisher interval needs n >= 4");
    if (!(std::abs(r) < 1)) throw Error("degenerate-r", "|r| must be < 1");
    double z = std::atanh(r);
    double half_width = 1.96 / std::sqrt(static_cast<double>(n - 3));
    return {std::tanh(z - half_width), std::tanh(z + half_width)};
}

CorrelationResult correlate(std::span<const double> xs, std::span<const double> ys) {
    CorrelationResult result;
    result.r = pearson(xs, ys);
    result.n = static_cast<long long>(xs.size());
    std::tie(result.ci_low, result.ci_high) = pearson_ci(result.r, result.n);
    return result;
}

std::map<std::string, GroupMean>
group_mean(std::span<const std::pair<std::string, double>> scores) {
    std::map<std::string, std::pair<long double, long long>> acc;
    for (const auto& [key, value] : scores) {
        auto& [sum, n] = acc[key];
        sum += value;
        n += 1;
    }
    std::map<std::string, GroupMean> out;
    for (const auto& [key, sn] : acc)
        out[key] = {static_cast<double>(sn.first / sn.second), sn.second};
    return out;
}

double theoretical_max_correlation(std::span<const DepartmentProfile> profiles) {
    // Weighted between-department variance over total variance; r is the
    // square root of that ratio.
    long double total_w = 0, sum = 0, sum_sq = 0, between_sq = 0;
    for (const auto& profile : profiles) {
        auto weights = profile.article_weights();
        long double dept_w = 0, dept_sum = 0;
        for (int level = 1; level <= 4; ++level) {
            long double w = weights[static_cast<size_t>(level - 1)];
            if (w < 0) throw Error("invalid-profile", "negative weight for " + profile.department);
            dept_w += w;
            dept_sum += w * level;
            sum_sq += w * level * level;
        }
        if (dept_w <= 0) continue;
        total_w += dept_w;
        sum += dept_sum;
        long double dept_mean = dept_sum / dept_w;
        between_sq += dept_w * dept_mean * dept_mean;
    }
    if (total_w <= 0) throw Error("empty-profile", "no articles across profiles");

    long double mean = sum / total_w;
    long double total_var = sum_sq / total_w - mean * mean;
    long double between_var = between_sq / total_w - mean * mean;
    if (total_var <= 1e-18)
        throw Error("zero-variance", "all departments share one constant score");
    if (between_var < 0) between_var = 0; // guard rounding
    return static_cast<double>(std::sqrt(between_var / total_var));
}

namespace {

std::map<std::string, double> ref_mean_by_department(std::span<const DepartmentProfile> profiles) {
    std::map<std::string, double> out;
    for (const auto& p : profiles) out[p.department] = dept_mean_ref(p);
    return out;
}

std::map<std::string, const Article*> article_index(std::span<const Article> articles) {
    std::map<std::string, const Article*> out;
    for (const auto& a : articles) out[a.id] = &a;
    return out;
}

} // namespace

CorrelationResult article_level_correlation(std::span<const Article> articles,
                                            std::span<const ArticleScore> scores,
                                            std::span<const DepartmentProfile> profiles) {
    auto ref_means = ref_mean_by_department(profiles);
    auto by_id = article_index(articles);

    std::vector<double> xs, ys;
    xs.reserve(scores.size());
    ys.reserve(scores.size());
    for (const auto& score : scores) {
        auto ait = by_id.find(score.article_id);
        if (ait == by_id.end()) continue;
        auto rit = ref_means.find(ait->second->department);
        if (rit == ref_means.end())
            throw Error("missing-profile", "no profile for department " + ait->second->department);
        xs.push_back(score.mean_score);
        ys.push_back(rit->second);
    }
    return correlate(xs, ys);
}

std::vector<JournalRow> journal_aggregate(
    std::span<const Article> articles, std::span<const ArticleScore> scores,
    std::span<const DepartmentProfile> profiles,
    const std::map<std::string, double>* nlcs_by_article) {
    auto ref_means = ref_mean_by_department(profiles);
    auto by_id = article_index(articles);

    struct Acc {
        long long n = 0;
        long double gpt = 0, ref = 0, nlcs = 0;
    };
    std::map<std::string, Acc> acc;
    for (const auto& score : scores) {
        auto ait = by_id.find(score.article_id);
        if (ait == by_id.end()) continue;
        const Article& a = *ait->second;
        auto rit = ref_means.find(a.department);
        if (rit == ref_means.end())
            throw Error("missing-profile", "no profile for department " + a.department);
        auto& slot = acc[a.journal];
        slot.n++;
        slot.gpt += score.mean_score;
        slot.ref += rit->second;
        if (nlcs_by_article) {
            auto nit = nlcs_by_article->find(a.id);
            if (nit == nlcs_by_article->end())
                throw Error("missing-nlcs", "no NLCS value for article " + a.id);
            slot.nlcs += nit->second;
        }
    }

    std::vector<JournalRow> rows;
    rows.reserve(acc.size());
    for (const auto& [journal, slot] : acc) {
        JournalRow row;
        row.journal = journal;
        row.n_articles = slot.n;
        row.mean_gpt = static_cast<double>(slot.gpt / slot.n);
        row.journal_ref = static_cast<double>(slot.ref / slot.n);
        if (nlcs_by_article) row.mnlcs = static_cast<double>(slot.nlcs / slot.n);
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(), [](const JournalRow& a, const JournalRow& b) {
        if (a.n_articles != b.n_articles) return a.n_articles > b.n_articles;
        return a.journal < b.journal;
    });
    return rows;
}

std::vector<TopNTableRow> journal_table(std::span<const JournalRow> journals,
                                        std::span<const long long> cutoffs) {
    const long long total = static_cast<long long>(journals.size());
    bool have_mnlcs = !journals.empty() &&
                      std::all_of(journals.begin(), journals.end(),
                                  [](const JournalRow& j) { return j.mnlcs.has_value(); });

    std::vector<TopNTableRow> rows;
    for (long long cutoff : cutoffs) {
        TopNTableRow row;
        row.top_n = cutoff == 0 ? total : cutoff;
        row.effective_n = cutoff == 0 ? total : std::min(cutoff, total);
        row.clamped = cutoff > total;

        const size_t n = static_cast<size_t>(row.effective_n);
        std::vector<double> gpt(n), ref(n), mn(n);
        for (size_t i = 0; i < n; ++i) {
            gpt[i] = journals[i].mean_gpt;
            ref[i] = journals[i].journal_ref;
            if (have_mnlcs) mn[i] = *journals[i].mnlcs;
        }
        row.ref_vs_gpt = correlate(ref, gpt);
        if (have_mnlcs) {
            row.gpt_vs_mnlcs = correlate(gpt, mn);
            row.ref_vs_mnlcs = correlate(ref, mn);
        }
        rows.push_back(std::move(row));
    }
    std::sort(rows.begin(), rows.end(),
              [](const TopNTableRow& a, const TopNTableRow& b) { return a.top_n < b.top_n; });
    return rows;
}

std::vector<DeptScatterRow> department_scatter(std::span<const Article> articles,
                                               std::span<const ArticleScore> scores,
                                               std::span<const DepartmentProfile> profiles) {
    auto ref_means = ref_mean_by_department(profiles);
    auto by_id = article_index(articles);

    std::vector<std::pair<std::string, double>> keyed;
    keyed.reserve(scores.size());
    for (const auto& score : scores) {
        auto ait = by_id.find(score.article_id);
        if (ait == by_id.end()) continue;
        keyed.emplace_back(ait->second->department, score.mean_score);
    }
    auto means = group_mean(keyed);

    std::vector<DeptScatterRow> rows;
    for (const auto& [dept, gm] : means) {
        auto rit = ref_means.find(dept);
        if (rit == ref_means.end())
            throw Error("missing-profile", "no profile for department " + dept);
        rows.push_back({dept, gm.mean, rit->second, gm.n});
    }
    return rows; // map iteration is already name-sorted
}

namespace {

void append_correlation(std::vector<std::string>& fields,
                        const std::optional<CorrelationResult>& c) {
    if (c) {
        fields.push_back(format_double(c->r));
        fields.push_back(format_double(c->ci_low));
        fields.push_back(format_double(c->ci_high));
    } else {
        fields.insert(fields.end(), {"", "", ""});
    }
}

} // namespace

std::string journal_table_to_csv(std::span<const TopNTableRow> rows) {
    std::string out =
        "top_n,n_journals,clamped,ref_vs_gpt_r,ref_vs_gpt_ci_low,ref_vs_gpt_ci_high,"
        "gpt_vs_mnlcs_r,gpt_vs_mnlcs_ci_low,gpt_vs_mnlcs_ci_high,"
        "ref_vs_mnlcs_r,ref_vs_mnlcs_ci_low,ref_vs_mnlcs_ci_high\n";
    for (const auto& row : rows) {
        std::vector<std::string> fields{std::to_string(row.top_n),
                                        std::to_string(row.effective_n),
                                        row.clamped ? "true" : "false"};
        append_correlation(fields, row.ref_vs_gpt);
        append_correlation(fields, row.gpt_vs_mnlcs);
        append_correlation(fields, row.ref_vs_mnlcs);
        out += csv_row(fields);
    }
    return out;
}

std::string department_scatter_to_csv(std::span<const DeptScatterRow> rows) {
    std::string out = "department,mean_gpt,mean_ref,n_articles\n";
    for (const auto& row : rows) {
        out += csv_row({row.department, format_double(row.mean_gpt),
                        format_double(row.mean_ref), std::to_string(row.n)});
    }
    return out;
}

std::string journal_scatter_to_csv(std::span<const JournalRow> rows) {
    std::string out = "journal,n_articles,mean_gpt,journal_ref,mnlcs\n";
    for (const auto& row : rows) {
        out += csv_row({row.journal, std::to_string(row.n_articles),
                        format_double(row.mean_gpt), format_double(row.journal_ref),
                        row.mnlcs ? format_double(*row.mnlcs) : ""});
    }
    return out;
}

} // namespace refscore
