#include "refscore/mock_backend.hpp"

#include "refscore/util.hpp"

#include <fmt/format.h>

#include <array>
#include <cmath>
#include <string>

namespace refscore {

namespace {

double unit_interval(std::uint64_t bits) {
    return static_cast<double>(bits >> 11) * 0x1.0p-53;
}

double pick_from(const std::array<std::pair<double, double>, 5>& dist, double u) {
    double cum = 0;
    for (const auto& [value, weight] : dist) {
        cum += weight;
        if (u < cum) return value;
    }
    return dist.back().first;
}

std::string render_report(double value, std::uint64_t template_bits) {
    const bool half = std::abs(value - std::floor(value) - 0.5) < 1e-9;
    const std::string score = fmt::format("{}", value);

    switch (template_bits % 4) {
        case 0:
            return fmt::format(
                "The submission presents a coherent study with a clearly stated aim. The "
                "methods are appropriate and the findings are positioned against prior work. "
                "In conclusion, I am recommending a {}* score for this article.",
                score);
        case 1:
            return fmt::format(
                "Assessment summary. Originality: the contribution extends existing lines of "
                "inquiry. Significance: the results are of interest to the field. Rigour: the "
                "design supports the stated conclusions.\nOverall score: {}*",
                score);
        case 2:
            return fmt::format(
                "The article reports a well-executed investigation. Its strengths lie in the "
                "breadth of the evidence base; its main limitation is the scope of the "
                "evaluation.\n{}*",
                score);
        default:
            if (half) {
                int lo = static_cast<int>(std::floor(value));
                return fmt::format(
                    "This study sits between two quality levels: methodologically sound but of "
                    "modest reach, placing the work between {}* and {}*.",
                    lo, lo + 1);
            }
            return fmt::format("Taken together, the evidence merits a score of {}*.", score);
    }
}

} // namespace

MockBackend::MockBackend(std::uint64_t seed, MockOptions options)
    : seed_(seed), options_(options) {}

LlmResult MockBackend::complete(const LlmRequest& request) {
    std::string key = request.model_id;
    key += '\x1f';
    key += request.system_text;
    key += '\x1f';
    key += request.user_text;
    key += '\x1f';
    key += std::to_string(request.iteration);

    std::uint64_t h = hash64(seed_, key);
    std::uint64_t u_unparsed = splitmix64(h);
    std::uint64_t u_value = splitmix64(u_unparsed);
    std::uint64_t u_template = splitmix64(u_value);

    if (unit_interval(u_unparsed) < options_.unparsed_rate) {
        return LlmResult::success(
            "The abstract outlines the study design and summarises its findings. A fuller "
            "assessment would require the complete text of the article.");
    }

    // The harsh variant shifts the distribution down and uses half points;
    // the standard one sticks to whole stars.
    const bool draconian = request.system_text.find("draconian") != std::string::npos;
    static constexpr std::array<std::pair<double, double>, 5> kStandard{
        {{2.0, 0.10}, {3.0, 0.35}, {4.0, 0.55}, {4.0, 0.0}, {4.0, 0.0}}};
    static constexpr std::array<std::pair<double, double>, 5> kDraconian{
        {{2.0, 0.10}, {2.5, 0.15}, {3.0, 0.30}, {3.5, 0.30}, {4.0, 0.15}}};

    double value = pick_from(draconian ? kDraconian : kStandard, unit_interval(u_value));
    return LlmResult::success(render_report(value, u_template));
}

} // namespace refscore
