#ifndef REFSCORE_SCORE_PARSER_HPP
#define REFSCORE_SCORE_PARSER_HPP

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace refscore {

// Extraction result. value is quantized to half points within [1,4];
// evidence is a literal substring of the input report.
struct ParsedScore {
    std::optional<double> value;
    std::string rule_id; // explicit-label | star-context | final-line-star | conflict | none
    std::string evidence;

    bool parsed() const { return value.has_value(); }
};

// Ordered rule cascade, first match wins:
//   1. explicit labeled score ("score: 3*", "Overall score: 3.5"); several
//      labeled scores that disagree yield Unparsed with rule_id "conflict"
//   2. star rating in a recommendation context ("recommending a 3* score",
//      "a score of 2*", "its 4* evaluations"); "between 3* and 4*" maps to
//      3.5; the last such mention in the report wins (conclusions come last)
//   3. a bare star rating on the last non-empty line
// Numbers outside [1,4] or off the half-point grid are skipped, not clamped.
ParsedScore extract_score(std::string_view report);

// "3", "3.5", "3½" -> value on the half-point grid in [1,4]; otherwise nullopt.
std::optional<double> parse_score_value(std::string_view text);

// review_queue holds the input-order indices of the Unparsed reports.
std::pair<std::vector<ParsedScore>, std::vector<std::size_t>>
batch_extract(std::span<const std::string> reports);

} // namespace refscore

#endif
