#include "refscore/score_parser.hpp"

#include "refscore/util.hpp"

#include <cctype>
#include <cmath>
#include <regex>

namespace refscore {

namespace {

constexpr const char* kHalfUtf8 = "\xc2\xbd"; // ½

// Value token: single digit, optional decimals or a unicode half,
// not running into a longer number.
constexpr const char* kValue = "(\\d(?:\\.\\d+|\xc2\xbd)?)(?!\\d)(?!\\.\\d)";

const std::regex& labeled_score_re() {
    static const std::regex re(std::string("\\bscore\\s*(?:is|:|=)\\s*") + kValue + "\\s*\\*?",
                               std::regex::icase);
    return re;
}

const std::regex& star_mention_re() {
    static const std::regex re(std::string(kValue) + "\\s*\\*", std::regex::icase);
    return re;
}

const std::regex& between_re() {
    static const std::regex re(
        "between\\s+(\\d)\\s*\\*?\\s+and\\s+(\\d)\\s*\\*", std::regex::icase);
    return re;
}

const std::regex& final_line_re() {
    static const std::regex re(std::string("^\\**\\s*") + kValue + "\\s*\\*+\\s*\\.?$",
                               std::regex::icase);
    return re;
}

bool on_grid(double v) {
    return v >= 1.0 && v <= 4.0 && std::abs(v * 2.0 - std::round(v * 2.0)) < 1e-9;
}

// The stems that tie a star mention to an actual recommendation.
bool has_context_keyword(std::string_view window) {
    static const char* stems[] = {"score", "recommend", "rating", "rate", "evaluat",
                                  "assess", "grade", "award", "merit", "deserve",
                                  "warrant", "classif"};
    std::string lower = to_lower(window);
    for (const char* stem : stems) {
        size_t pos = lower.find(stem);
        while (pos != std::string::npos) {
            bool start_ok = pos == 0 || !std::isalpha(static_cast<unsigned char>(lower[pos - 1]));
            if (start_ok) return true;
            pos = lower.find(stem, pos + 1);
        }
    }
    return false;
}

bool preceded_by_number(std::string_view text, size_t pos) {
    if (pos == 0) return false;
    char prev = text[pos - 1];
    return std::isdigit(static_cast<unsigned char>(prev)) || prev == '.';
}

struct Match {
    double value;
    size_t pos;
    std::string evidence;
};

} // namespace

std::optional<double> parse_score_value(std::string_view text) {
    std::string t = trim(text);
    if (t.empty()) return std::nullopt;
    double v = 0;
    if (t.size() >= 2 && t.substr(t.size() - 2) == kHalfUtf8) {
        auto head = trim(t.substr(0, t.size() - 2));
        if (head.size() != 1 || !std::isdigit(static_cast<unsigned char>(head[0])))
            return std::nullopt;
        v = (head[0] - '0') + 0.5;
    } else {
        try {
            size_t used = 0;
            v = std::stod(t, &used);
            if (used != t.size()) return std::nullopt;
        } catch (const std::exception&) {
            return std::nullopt;
        }
    }
    if (!on_grid(v)) return std::nullopt;
    return v;
}

ParsedScore extract_score(std::string_view report) {
    const std::string text(report);

    // Rule 1: explicit labeled scores. All valid labels must agree.
    {
        std::vector<Match> labels;
        for (auto it = std::cregex_iterator(text.data(), text.data() + text.size(),
                                            labeled_score_re());
             it != std::cregex_iterator(); ++it) {
            auto value = parse_score_value((*it)[1].str());
            if (!value) continue;
            labels.push_back({*value, static_cast<size_t>(it->position(0)), it->str(0)});
        }
        if (!labels.empty()) {
            for (const auto& m : labels) {
                if (m.value != labels.front().value)
                    return {std::nullopt, "conflict", labels.front().evidence};
            }
            return {labels.front().value, "explicit-label", labels.front().evidence};
        }
    }

    // Rule 2: star ratings tied to a recommendation context; last mention wins.
    {
        std::optional<Match> best;
        auto consider = [&](Match m) {
            if (!best || m.pos >= best->pos) best = std::move(m);
        };

        for (auto it = std::cregex_iterator(text.data(), text.data() + text.size(), between_re());
             it != std::cregex_iterator(); ++it) {
            int lo = (*it)[1].str()[0] - '0';
            int hi = (*it)[2].str()[0] - '0';
            if (std::abs(hi - lo) != 1) continue;
            double v = (lo + hi) / 2.0;
            if (!on_grid(v)) continue;
            consider({v, static_cast<size_t>(it->position(0)), it->str(0)});
        }

        for (auto it = std::cregex_iterator(text.data(), text.data() + text.size(),
                                            star_mention_re());
             it != std::cregex_iterator(); ++it) {
            size_t pos = static_cast<size_t>(it->position(0));
            if (preceded_by_number(text, pos)) continue;
            auto value = parse_score_value((*it)[1].str());
            if (!value) continue;
            size_t lo = pos >= 80 ? pos - 80 : 0;
            size_t hi = std::min(text.size(), pos + it->str(0).size() + 40);
            if (!has_context_keyword(std::string_view(text).substr(lo, hi - lo))) continue;
            consider({*value, pos, it->str(0)});
        }
        if (best) return {best->value, "star-context", best->evidence};
    }

    // Rule 3: bare star rating on the last non-empty line.
    {
        size_t end = text.find_last_not_of(" \t\r\n");
        if (end != std::string::npos) {
            size_t start = text.rfind('\n', end);
            start = start == std::string::npos ? 0 : start + 1;
            std::string line = trim(std::string_view(text).substr(start, end - start + 1));
            std::smatch m;
            if (std::regex_match(line, m, final_line_re())) {
                if (auto value = parse_score_value(m[1].str()))
                    return {*value, "final-line-star", m.str(0)};
            }
        }
    }

    return {std::nullopt, "none", ""};
}

std::pair<std::vector<ParsedScore>, std::vector<std::size_t>>
batch_extract(std::span<const std::string> reports) {
    std::vector<ParsedScore> scores;
    std::vector<std::size_t> review_queue;
    scores.reserve(reports.size());
    for (size_t i = 0; i < reports.size(); ++i) {
        scores.push_back(extract_score(reports[i]));
        if (!scores.back().parsed()) review_queue.push_back(i);
    }
    return {std::move(scores), std::move(review_queue)};
}

} // namespace refscore
