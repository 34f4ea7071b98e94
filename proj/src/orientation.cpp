#include "foldex/orientation.hpp"

#include <fftw3.h>

#include <algorithm>
#include <bit>
#include <cmath>
#include <memory>
#include <mutex>
#include <numbers>
#include <string>

#include "foldex/error.hpp"

namespace foldex {

namespace {

// FFTW planning is not thread-safe; execution with a private plan is.
std::mutex& fftw_planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

class R2CPlan {
public:
    R2CPlan(int n, double* in, fftw_complex* out, bool inverse) {
        std::lock_guard lock(fftw_planner_mutex());
        plan_ = inverse ? fftw_plan_dft_c2r_1d(n, out, in, FFTW_ESTIMATE)
                        : fftw_plan_dft_r2c_1d(n, in, out, FFTW_ESTIMATE);
    }
    ~R2CPlan() {
        std::lock_guard lock(fftw_planner_mutex());
        fftw_destroy_plan(plan_);
    }
    R2CPlan(const R2CPlan&) = delete;
    R2CPlan& operator=(const R2CPlan&) = delete;

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_ = nullptr;
};

}  // namespace

double SampledSignal::t_at(std::size_t k) const {
    if (values.size() < 2) return 0.0;
    if (k + 1 == values.size()) return domain_length;
    return domain_length * static_cast<double>(k) / static_cast<double>(values.size() - 1);
}

OrientationFunction orientation_function(const Polyline& p) {
    OrientationFunction of;
    of.breakpoints = p.cum_lengths();
    of.values.reserve(p.segment_count());
    for (const Point2& s : p.segments()) of.values.push_back(std::atan2(s.y, s.x));
    return of;
}

std::vector<double> unwrap(std::span<const double> angles) {
    constexpr double two_pi = 2.0 * std::numbers::pi;
    std::vector<double> out(angles.begin(), angles.end());
    double offset = 0.0;
    for (std::size_t k = 1; k < out.size(); ++k) {
        // Whole turns that bring the raw step back into [-pi, pi].
        offset -= two_pi * std::round((angles[k] - angles[k - 1]) / two_pi);
        out[k] = angles[k] + offset;
    }
    return out;
}

SampledSignal sample_uniform(const OrientationFunction& of, std::size_t m) {
    if (m < 8) throw Error(ErrorKind::BadParam, "sample count must be >= 8, got " + std::to_string(m));
    const std::vector<double> cont = unwrap(of.values);
    const std::size_t n = cont.size();
    const double L = of.length();

    SampledSignal s;
    s.domain_length = L;
    s.dt = L / static_cast<double>(m - 1);
    s.values.resize(m);
    std::size_t seg = 0;
    for (std::size_t k = 0; k < m; ++k) {
        const double t = s.t_at(k);
        // Right-hand convention: advance while the next breakpoint is <= t.
        while (seg + 1 < n && of.breakpoints[seg + 1] <= t) ++seg;
        s.values[k] = cont[seg];
    }
    return s;
}

std::size_t cutoff_from_factor(double factor, std::size_t m) {
    if (!(factor > 0.0 && factor <= 1.0))
        throw Error(ErrorKind::BadParam, "smoothing factor must lie in (0, 1], got " + std::to_string(factor));
    if (m < 8) throw Error(ErrorKind::BadParam, "sample count must be >= 8");
    const auto raw = static_cast<std::size_t>(std::llround(factor * static_cast<double>(m - 1)));
    const std::size_t max_cutoff = (m - 1) / 2;  // largest c with c < m/2
    return std::clamp<std::size_t>(raw, 1, max_cutoff);
}

double smoothing_factor_for_wavelength(double domain_length, std::size_t m, double wavelength) {
    if (!(wavelength > 0.0) || !(domain_length > 0.0) || m < 8)
        throw Error(ErrorKind::BadParam, "wavelength, domain length and sample count must be positive");
    // Harmonic h of the mirrored signal has wavelength 2L / h.
    const double cutoff = 2.0 * domain_length / wavelength;
    return std::clamp(cutoff / static_cast<double>(m - 1), 1e-12, 1.0);
}

std::size_t default_sample_count(std::size_t segment_count) {
    return std::bit_ceil(std::max<std::size_t>(1024, 4 * segment_count));
}

SampledSignal smooth_lowpass(const SampledSignal& s, std::size_t cutoff) {
    const std::size_t m = s.size();
    if (m < 8) throw Error(ErrorKind::BadParam, "signal needs >= 8 samples");
    if (cutoff < 1 || 2 * cutoff >= m)
        throw Error(ErrorKind::BadParam, "cutoff " + std::to_string(cutoff) + " outside [1, m/2)");

    const std::size_t n = 2 * m - 2;
    const double first = s.values.front();
    const double slope = (s.values.back() - first) / static_cast<double>(m - 1);

    FftwBuffer<double> x(fftw_alloc_real(n));
    FftwBuffer<fftw_complex> spec(fftw_alloc_complex(n / 2 + 1));
    R2CPlan forward(static_cast<int>(n), x.get(), spec.get(), false);
    R2CPlan backward(static_cast<int>(n), x.get(), spec.get(), true);

    for (std::size_t k = 0; k < m; ++k) x[k] = s.values[k] - (first + slope * static_cast<double>(k));
    for (std::size_t k = 1; k + 1 < m; ++k) x[n - k] = x[k];

    forward.execute();
    for (std::size_t h = cutoff + 1; h <= n / 2; ++h) {
        spec[h][0] = 0.0;
        spec[h][1] = 0.0;
    }
    backward.execute();

    SampledSignal out;
    out.dt = s.dt;
    out.domain_length = s.domain_length;
    out.values.resize(m);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t k = 0; k < m; ++k)
        out.values[k] = x[k] * scale + first + slope * static_cast<double>(k);
    return out;
}

}  // namespace foldex
