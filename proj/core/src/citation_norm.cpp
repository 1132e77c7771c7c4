#include "refscore/citation_norm.hpp"

#include "refscore/csv.hpp"
#include "refscore/errors.hpp"
#include "refscore/util.hpp"

#include <algorithm>
#include <cmath>

namespace refscore {

void BaselineTable::set(const std::string& field, int year, BaselineCell cell) {
    cells_[{field, year}] = cell;
}

const BaselineCell* BaselineTable::find(const std::string& field, int year) const {
    auto it = cells_.find({field, year});
    return it == cells_.end() ? nullptr : &it->second;
}

bool BaselineTable::usable(const std::string& field, int year) const {
    const BaselineCell* cell = find(field, year);
    return cell && cell->mean_log > 0;
}

double log_transform(long long citations, double log_base) {
    if (citations < 0) throw Error("negative-citations", "citation count below zero");
    double v = std::log1p(static_cast<double>(citations));
    if (log_base > 0) v /= std::log(log_base);
    return v;
}

BaselineTable BaselineTable::from_population(std::span<const PopulationRecord> population,
                                             double log_base) {
    // Extended-precision accumulation keeps small-cell means exact.
    std::map<std::pair<std::string, int>, std::pair<long double, long long>> acc;
    for (const auto& rec : population) {
        auto& [sum, n] = acc[{rec.field, rec.year}];
        sum += static_cast<long double>(log_transform(rec.citations, log_base));
        n += 1;
    }
    BaselineTable table;
    for (const auto& [key, sn] : acc) {
        BaselineCell cell;
        cell.mean_log = static_cast<double>(sn.first / static_cast<long double>(sn.second));
        cell.n_articles = sn.second;
        table.cells_[key] = cell;
    }
    return table;
}

BaselineTable BaselineTable::load_csv(const std::filesystem::path& path) {
    CsvTable csv = read_delimited_file(path, ',');
    int c_field = csv.column("field"), c_year = csv.column("year");
    int c_mean = csv.column("mean_log"), c_n = csv.column("n_articles");
    if (c_field < 0 || c_year < 0 || c_mean < 0 || c_n < 0)
        throw Error("missing-column", "baseline CSV needs field,year,mean_log,n_articles");
    BaselineTable table;
    for (const auto& row : csv.rows) {
        BaselineCell cell;
        cell.mean_log = std::stod(row[static_cast<size_t>(c_mean)]);
        cell.n_articles = std::stoll(row[static_cast<size_t>(c_n)]);
        if (cell.n_articles < 1) throw Error("invalid-baseline", "n_articles < 1 in " + path.string());
        table.set(row[static_cast<size_t>(c_field)], std::stoi(row[static_cast<size_t>(c_year)]), cell);
    }
    return table;
}

void BaselineTable::save_csv(const std::filesystem::path& path) const {
    std::string out = "field,year,mean_log,n_articles\n";
    for (const auto& [key, cell] : cells_) {
        out += csv_row({key.first, std::to_string(key.second),
                        format_double(cell.mean_log), std::to_string(cell.n_articles)});
    }
    write_file_atomic(path, out);
}

double nlcs(const Article& article, const BaselineTable& baseline, MultiFieldPolicy policy,
            double log_base) {
    if (article.fields.empty())
        throw Error("no-fields", "article " + article.id + " has no subject codes");

    auto per_field = [&](const std::string& field) {
        const BaselineCell* cell = baseline.find(field, article.year);
        if (!cell)
            throw Error("missing-baseline", "no baseline cell for (" + field + ", " +
                                                std::to_string(article.year) + ")");
        if (!(cell->mean_log > 0))
            throw Error("degenerate-baseline", "zero mean_log for (" + field + ", " +
                                                   std::to_string(article.year) + ")");
        return log_transform(article.citations, log_base) / cell->mean_log;
    };

    if (policy == MultiFieldPolicy::FirstField) return per_field(article.fields.front());

    double sum = 0;
    for (const auto& field : article.fields) sum += per_field(field);
    return sum / static_cast<double>(article.fields.size());
}

std::vector<NlcsValue> nlcs_all(std::span<const Article> articles, const BaselineTable& baseline,
                                MultiFieldPolicy policy) {
    std::vector<NlcsValue> out;
    out.reserve(articles.size());
    for (const auto& a : articles) out.push_back({a.id, nlcs(a, baseline, policy)});
    return out;
}

double mnlcs(std::span<const double> values) {
    if (values.empty()) throw Error("empty-group", "MNLCS over an empty group");
    long double sum = 0;
    for (double v : values) sum += v;
    return static_cast<double>(sum / static_cast<long double>(values.size()));
}

} // namespace refscore
