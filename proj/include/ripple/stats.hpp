#pragma once

#include <cstddef>
#include <functional>
#include <vector>

namespace ripple {

// Pairwise (cascade) summation; result depends only on the order of xs.
double pairwise_sum(const std::vector<double>& xs);

struct SampleSummary {
    std::size_t n = 0;
    double mean = 0.0;
    double stderr_ = 0.0;  // NaN when n < 2
};

SampleSummary summarize(const std::vector<double>& xs);

// <|X|^p>^{1/p} with delta-method standard error.
SampleSummary moment_p(const std::vector<double>& xs, double p);

struct LogLogFit {
    double slope = 0.0;
    double stderr_ = 0.0;
    double intercept = 0.0;
};

// Ordinary least squares on (log x, log y); needs >= 4 points with y > 0.
LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y);

// Runs body(i) for i in [0, n) on a small thread pool. Each index is
// handled by exactly one thread; callers write results into slot i.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

unsigned worker_count();

}  // namespace ripple
