#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>

namespace lz {

// Error hierarchy. Every module reports contract violations through these.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};
struct PrecisionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct RegimeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct SizeError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct ConstructionError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IntegrationError : std::runtime_error {
    IntegrationError(const std::string& what, double achieved)
        : std::runtime_error(what), achieved_tolerance(achieved) {}
    double achieved_tolerance;
};
struct OverflowError : std::overflow_error {
    using std::overflow_error::overflow_error;
};

/// Global cap on worker threads used by the parallel kernels. 0 means
/// hardware concurrency.
void set_thread_count(unsigned n);
unsigned thread_count();

/// Runs body(i) for i in [0, n). Work is split into fixed chunks that do not
/// depend on the thread count, so callers that write body results into
/// index-addressed slots and reduce in index order get identical output for
/// any thread count.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

}  // namespace lz
