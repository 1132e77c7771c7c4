#ifndef REFSCORE_MOCK_BACKEND_HPP
#define REFSCORE_MOCK_BACKEND_HPP

#include "refscore/llm_backend.hpp"

#include <cstdint>

namespace refscore {

struct MockOptions {
    double unparsed_rate = 0.0; // fraction of reports with no extractable score
};

// Deterministic stand-in for a chat-completions backend. The report for a
// request depends only on (seed, model_id, system_text, user_text, iteration),
// never on call order, so concurrent runs reproduce bit-identical outputs.
class MockBackend : public LlmBackend {
public:
    explicit MockBackend(std::uint64_t seed, MockOptions options = {});

    LlmResult complete(const LlmRequest& request) override;
    std::string name() const override { return "mock"; }

private:
    std::uint64_t seed_;
    MockOptions options_;
};

} // namespace refscore

#endif
