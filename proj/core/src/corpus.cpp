#include "refscore/corpus.hpp"

#include "refscore/csv.hpp"
#include "refscore/errors.hpp"
#include "refscore/util.hpp"

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

namespace refscore {

using nlohmann::json;

bool Article::has_abstract() const {
    return abstract_text.has_value() && !trim(*abstract_text).empty();
}

std::array<double, 4> DepartmentProfile::article_weights() const {
    std::array<double, 4> w = levels;
    if (is_percentage) {
        for (auto& x : w) x = x / 100.0 * static_cast<double>(n_articles);
    }
    return w;
}

std::string normalize_doi(std::string_view raw) {
    std::string s = to_lower(trim(raw));
    for (std::string_view prefix : {"https://doi.org/", "http://doi.org/",
                                    "https://dx.doi.org/", "http://dx.doi.org/", "doi:"}) {
        if (s.rfind(prefix, 0) == 0) {
            s = trim(s.substr(prefix.size()));
            break;
        }
    }
    return s;
}

namespace {

std::optional<long long> parse_int(std::string_view s) {
    auto t = trim(s);
    long long v = 0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec != std::errc() || p != t.data() + t.size()) return std::nullopt;
    return v;
}

std::vector<std::string> split_list(std::string_view cell, char sep) {
    std::vector<std::string> out;
    std::string item;
    std::istringstream ss{std::string(cell)};
    while (std::getline(ss, item, sep)) {
        auto t = trim(item);
        if (!t.empty()) out.push_back(t);
    }
    return out;
}

} // namespace

std::pair<std::vector<Article>, CorpusReport>
load_articles(const std::filesystem::path& path, const ColumnMap& columns) {
    CsvTable table = read_delimited_file(path, columns.delimiter);

    auto col = [&](const std::string& name) -> int {
        if (name.empty()) return -1;
        int idx = table.column(name);
        if (idx < 0)
            throw Error("missing-column", "column '" + name + "' not in header of " + path.string());
        return idx;
    };

    const int c_id = col(columns.id);
    const int c_doi = col(columns.doi);
    const int c_title = col(columns.title);
    const int c_abstract = col(columns.abstract_text);
    const int c_year = col(columns.year);
    const int c_journal = col(columns.journal);
    const int c_department = col(columns.department);
    const int c_fields = col(columns.fields);
    const int c_citations = col(columns.citations);
    if (c_id < 0) throw Error("missing-column", "an id column mapping is required");

    std::vector<Article> articles;
    CorpusReport report;
    std::set<std::string> seen_ids;

    auto cell = [](const std::vector<std::string>& row, int idx) -> std::string {
        if (idx < 0 || static_cast<size_t>(idx) >= row.size()) return {};
        return row[static_cast<size_t>(idx)];
    };

    for (size_t r = 0; r < table.rows.size(); ++r) {
        const auto& row = table.rows[r];
        report.n_loaded++;
        std::string row_label = "row-" + std::to_string(r + 2); // 1-based, after header

        Article a;
        a.id = trim(cell(row, c_id));
        if (a.id.empty()) {
            report.rejected_rows.push_back({row_label, "missing-id"});
            continue;
        }
        if (!seen_ids.insert(a.id).second) {
            report.rejected_rows.push_back({a.id, "duplicate-id"});
            continue;
        }

        auto doi = normalize_doi(cell(row, c_doi));
        if (!doi.empty()) a.doi = doi;
        a.title = cell(row, c_title);
        auto abs = cell(row, c_abstract);
        if (!trim(abs).empty()) a.abstract_text = abs;

        if (c_year >= 0) {
            auto y = parse_int(cell(row, c_year));
            if (!y) {
                seen_ids.erase(a.id);
                report.rejected_rows.push_back({a.id, "bad-year"});
                continue;
            }
            a.year = static_cast<int>(*y);
            if ((columns.min_year && a.year < columns.min_year) ||
                (columns.max_year && a.year > columns.max_year)) {
                seen_ids.erase(a.id);
                report.rejected_rows.push_back({a.id, "year-out-of-range"});
                continue;
            }
        }

        a.journal = trim(cell(row, c_journal));
        a.department = trim(cell(row, c_department));
        if (c_fields >= 0) a.fields = split_list(cell(row, c_fields), columns.list_separator);
        if (c_citations >= 0) {
            auto c = parse_int(cell(row, c_citations));
            if (!c || *c < 0) {
                seen_ids.erase(a.id);
                report.rejected_rows.push_back({a.id, "bad-citations"});
                continue;
            }
            a.citations = *c;
        }

        if (!a.has_abstract()) report.n_missing_abstract++;
        articles.push_back(std::move(a));
    }
    return {std::move(articles), std::move(report)};
}

JoinResult join_by_doi(std::span<const Article> ref_records,
                       std::span<const Article> citation_records) {
    JoinResult result;

    auto index_side = [&](std::span<const Article> side,
                          std::map<std::string, std::vector<const Article*>>& by_doi) {
        for (const auto& a : side) {
            if (!a.doi || a.doi->empty()) {
                result.unmatched.push_back({a.id, "no-doi"});
                continue;
            }
            by_doi[*a.doi].push_back(&a);
        }
    };

    std::map<std::string, std::vector<const Article*>> ref_by_doi, cit_by_doi;
    index_side(ref_records, ref_by_doi);
    index_side(citation_records, cit_by_doi);

    auto flush_side = [&](std::map<std::string, std::vector<const Article*>>& by_doi,
                          const std::string& doi, const std::string& reason) {
        auto it = by_doi.find(doi);
        if (it == by_doi.end()) return;
        for (const Article* a : it->second) result.unmatched.push_back({a->id, reason});
    };

    std::set<std::string> all_dois;
    for (const auto& [doi, _] : ref_by_doi) all_dois.insert(doi);
    for (const auto& [doi, _] : cit_by_doi) all_dois.insert(doi);

    for (const auto& doi : all_dois) {
        auto rit = ref_by_doi.find(doi);
        auto cit = cit_by_doi.find(doi);
        bool ref_dup = rit != ref_by_doi.end() && rit->second.size() > 1;
        bool cit_dup = cit != cit_by_doi.end() && cit->second.size() > 1;
        if (ref_dup || cit_dup) {
            flush_side(ref_by_doi, doi, "ambiguous-doi");
            flush_side(cit_by_doi, doi, "ambiguous-doi");
            continue;
        }
        if (rit == ref_by_doi.end()) {
            flush_side(cit_by_doi, doi, "no-partner");
            continue;
        }
        if (cit == cit_by_doi.end()) {
            flush_side(ref_by_doi, doi, "no-partner");
            continue;
        }

        const Article& r = *rit->second.front();
        const Article& c = *cit->second.front();
        Article merged;
        merged.id = !r.id.empty() ? r.id : c.id;
        merged.doi = doi;
        merged.title = !r.title.empty() ? r.title : c.title;
        merged.abstract_text = r.has_abstract() ? r.abstract_text : c.abstract_text;
        merged.year = r.year != 0 ? r.year : c.year;
        merged.journal = !r.journal.empty() ? r.journal : c.journal;
        merged.department = !r.department.empty() ? r.department : c.department;
        merged.fields = !c.fields.empty() ? c.fields : r.fields;
        merged.citations = c.citations;
        result.matched.push_back(std::move(merged));
    }
    return result;
}

std::vector<Article> filter_scoreable(std::span<const Article> articles, CorpusReport& report) {
    std::vector<Article> out;
    long long missing = 0;
    for (const auto& a : articles) {
        if (a.has_abstract()) out.push_back(a);
        else ++missing;
    }
    report.n_missing_abstract = missing;
    report.n_scoreable = static_cast<long long>(out.size());
    return out;
}

double dept_mean_ref(const DepartmentProfile& profile) {
    double weight_sum = 0, score_sum = 0;
    for (int level = 1; level <= 4; ++level) {
        double w = profile.levels[static_cast<size_t>(level - 1)];
        if (w < 0) throw Error("invalid-profile", "negative weight in profile " + profile.department);
        weight_sum += w;
        score_sum += w * level;
    }
    if (weight_sum <= 0) throw Error("empty-profile", "all-zero distribution for " + profile.department);
    return score_sum / weight_sum;
}

std::vector<DepartmentProfile> load_profiles(const std::filesystem::path& path, char delimiter) {
    CsvTable table = read_delimited_file(path, delimiter);
    const char* names[] = {"department", "level1", "level2", "level3", "level4", "n_articles"};
    int idx[6];
    for (int i = 0; i < 6; ++i) {
        idx[i] = table.column(names[i]);
        if (idx[i] < 0)
            throw Error("missing-column", std::string("profiles file lacks column '") + names[i] + "'");
    }

    std::vector<DepartmentProfile> profiles;
    for (const auto& row : table.rows) {
        DepartmentProfile p;
        p.department = trim(row[static_cast<size_t>(idx[0])]);
        double sum = 0;
        for (int l = 0; l < 4; ++l) {
            double v = std::stod(row[static_cast<size_t>(idx[1 + l])]);
            if (v < 0) throw Error("invalid-profile", "negative entry for " + p.department);
            p.levels[static_cast<size_t>(l)] = v;
            sum += v;
        }
        auto n = parse_int(row[static_cast<size_t>(idx[5])]);
        if (!n || *n <= 0) throw Error("invalid-profile", "bad n_articles for " + p.department);
        p.n_articles = *n;

        // Count form sums to n_articles; otherwise percentage form summing to 100 +/- 0.5.
        if (std::abs(sum - static_cast<double>(p.n_articles)) < 1e-9) {
            p.is_percentage = false;
        } else if (std::abs(sum - 100.0) <= 0.5) {
            p.is_percentage = true;
        } else {
            throw Error("invalid-profile",
                        "distribution for " + p.department + " sums to neither n_articles nor 100");
        }
        profiles.push_back(std::move(p));
    }
    return profiles;
}

namespace {

json article_to_json(const Article& a) {
    json j;
    j["id"] = a.id;
    if (a.doi) j["doi"] = *a.doi;
    j["title"] = a.title;
    if (a.abstract_text) j["abstract"] = *a.abstract_text;
    j["year"] = a.year;
    j["journal"] = a.journal;
    j["department"] = a.department;
    j["fields"] = a.fields;
    j["citations"] = a.citations;
    return j;
}

Article article_from_json(const json& j) {
    Article a;
    a.id = j.at("id").get<std::string>();
    if (j.contains("doi")) a.doi = j.at("doi").get<std::string>();
    a.title = j.value("title", "");
    if (j.contains("abstract")) a.abstract_text = j.at("abstract").get<std::string>();
    a.year = j.value("year", 0);
    a.journal = j.value("journal", "");
    a.department = j.value("department", "");
    if (j.contains("fields")) a.fields = j.at("fields").get<std::vector<std::string>>();
    a.citations = j.value("citations", 0LL);
    return a;
}

} // namespace

std::string corpus_to_jsonl(std::span<const Article> articles) {
    std::string out;
    for (const auto& a : articles) {
        out += article_to_json(a).dump();
        out += '\n';
    }
    return out;
}

std::vector<Article> corpus_from_jsonl(std::string_view text) {
    std::vector<Article> out;
    size_t pos = 0;
    while (pos < text.size()) {
        size_t nl = text.find('\n', pos);
        if (nl == std::string_view::npos) nl = text.size();
        auto line = trim(text.substr(pos, nl - pos));
        pos = nl + 1;
        if (line.empty()) continue;
        out.push_back(article_from_json(json::parse(line)));
    }
    return out;
}

void write_corpus_jsonl(const std::filesystem::path& path, std::span<const Article> articles) {
    write_file_atomic(path, corpus_to_jsonl(articles));
}

std::vector<Article> read_corpus_jsonl(const std::filesystem::path& path) {
    return corpus_from_jsonl(read_file(path));
}

std::string corpus_report_to_json(const CorpusReport& report) {
    json j;
    j["n_loaded"] = report.n_loaded;
    j["n_matched_by_doi"] = report.n_matched_by_doi;
    j["n_missing_abstract"] = report.n_missing_abstract;
    j["n_scoreable"] = report.n_scoreable;
    json rejected = json::array();
    for (const auto& r : report.rejected_rows)
        rejected.push_back({{"row_id", r.row_id}, {"reason", r.reason}});
    j["rejected_rows"] = rejected;
    return j.dump(2) + "\n";
}

} // namespace refscore
