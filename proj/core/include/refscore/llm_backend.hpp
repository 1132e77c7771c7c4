#ifndef REFSCORE_LLM_BACKEND_HPP
#define REFSCORE_LLM_BACKEND_HPP

#include <chrono>
#include <cstdint>
#include <functional>
#include <string>

namespace refscore {

struct LlmRequest {
    std::string model_id;
    double temperature = 1.0;
    double top_p = 1.0;
    std::string system_text;
    std::string user_text;
    int iteration = 1; // repeat index; distinguishes otherwise identical calls
};

struct LlmResult {
    bool ok = false;
    std::string report;
    std::string error;
    bool retryable = false;
    int status = 0; // HTTP status when applicable

    static LlmResult success(std::string text) { return {true, std::move(text), "", false, 200}; }
    static LlmResult failure(std::string message, bool retryable, int status = 0) {
        return {false, "", std::move(message), retryable, status};
    }
};

class LlmBackend {
public:
    virtual ~LlmBackend() = default;
    virtual LlmResult complete(const LlmRequest& request) = 0;
    virtual std::string name() const = 0;
};

struct RetryPolicy {
    int max_attempts = 5;
    std::chrono::milliseconds base_delay{250};
    std::chrono::milliseconds max_delay{8000};
};

// base * 2^attempt with up to +50% jitter, capped at max_delay. attempt is 0-based.
std::chrono::milliseconds backoff_delay(int attempt, const RetryPolicy& policy,
                                        std::uint64_t jitter_bits);

// Retries transport and rate-limit failures with exponential backoff.
// sleep_fn is injectable for tests; nullptr sleeps for real.
LlmResult complete_with_retry(LlmBackend& backend, const LlmRequest& request,
                              const RetryPolicy& policy,
                              const std::function<void(std::chrono::milliseconds)>& sleep_fn = {});

} // namespace refscore

#endif
