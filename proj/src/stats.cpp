#include "ripple/stats.hpp"

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <exception>
#include <limits>
#include <mutex>
#include <thread>

#include "ripple/grid.hpp"

namespace ripple {

namespace {
double pairwise(const double* x, std::size_t n) {
    if (n <= 16) {
        double s = 0.0;
        for (std::size_t i = 0; i < n; ++i) s += x[i];
        return s;
    }
    const std::size_t h = n / 2;
    return pairwise(x, h) + pairwise(x + h, n - h);
}
}  // namespace

double pairwise_sum(const std::vector<double>& xs) { return pairwise(xs.data(), xs.size()); }

SampleSummary summarize(const std::vector<double>& xs) {
    SampleSummary s;
    s.n = xs.size();
    if (s.n == 0) {
        s.mean = s.stderr_ = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    s.mean = pairwise_sum(xs) / double(s.n);
    if (s.n < 2) {
        s.stderr_ = std::numeric_limits<double>::quiet_NaN();
        return s;
    }
    std::vector<double> dev(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) dev[i] = (xs[i] - s.mean) * (xs[i] - s.mean);
    const double var = pairwise_sum(dev) / double(s.n - 1);
    s.stderr_ = std::sqrt(var / double(s.n));
    return s;
}

SampleSummary moment_p(const std::vector<double>& xs, double p) {
    std::vector<double> pw(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) pw[i] = std::pow(std::abs(xs[i]), p);
    SampleSummary raw = summarize(pw);
    SampleSummary out;
    out.n = raw.n;
    out.mean = std::pow(raw.mean, 1.0 / p);
    out.stderr_ = raw.mean > 0.0 ? raw.stderr_ * out.mean / (p * raw.mean) : raw.stderr_;
    return out;
}

LogLogFit fit_loglog(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw Error("fit_loglog: x and y differ in length");
    if (x.size() < 4) throw Error("fit_loglog: need at least 4 points");
    const std::size_t n = x.size();
    std::vector<double> lx(n), ly(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) throw Error("fit_loglog: nonpositive value");
        lx[i] = std::log(x[i]);
        ly[i] = std::log(y[i]);
    }
    const double mx = pairwise_sum(lx) / n, my = pairwise_sum(ly) / n;
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (sxx <= 0.0) throw Error("fit_loglog: degenerate x values");
    LogLogFit f;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double rss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - f.intercept - f.slope * lx[i];
        rss += r * r;
    }
    f.stderr_ = std::sqrt(rss / double(n - 2) / sxx);
    return f;
}

unsigned worker_count() {
    if (const char* env = std::getenv("RIPPLE_THREADS")) {
        const int v = std::atoi(env);
        if (v > 0) return unsigned(v);
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body) {
    const unsigned workers = std::min<std::size_t>(worker_count(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr first_error;
    std::mutex err_mu;
    auto run = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= n) return;
            try {
                body(i);
            } catch (...) {
                std::lock_guard<std::mutex> lock(err_mu);
                if (!first_error) first_error = std::current_exception();
                next = n;
                return;
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(run);
    for (auto& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
}

}  // namespace ripple
