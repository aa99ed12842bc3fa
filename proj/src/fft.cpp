#include "fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <memory>
#include <mutex>
#include <optional>

namespace selfsim::detail {

namespace {

// The FFTW planner is not re-entrant; execution of a finished plan is.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwFree {
    void operator()(void* p) const noexcept { fftw_free(p); }
};

template <typename T>
using FftwBuffer = std::unique_ptr<T[], FftwFree>;

template <typename T>
FftwBuffer<T> allocate(std::size_t count) {
    return FftwBuffer<T>(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(count, 1))));
}

class Plan {
public:
    explicit Plan(fftw_plan plan) : plan_(plan) {}
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

}  // namespace

std::vector<std::complex<double>> real_dft(std::span<const double> input) {
    const int n = static_cast<int>(input.size());
    const std::size_t bins = input.size() / 2 + 1;
    auto in = allocate<double>(input.size());
    auto out = allocate<fftw_complex>(bins);
    std::optional<Plan> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.emplace(fftw_plan_dft_r2c_1d(n, in.get(), out.get(), FFTW_ESTIMATE));
    }
    std::copy(input.begin(), input.end(), in.get());
    plan->execute();

    std::vector<std::complex<double>> result(bins);
    for (std::size_t j = 0; j < bins; ++j) result[j] = {out[j][0], out[j][1]};
    return result;
}

std::vector<std::complex<double>> complex_dft(std::span<const std::complex<double>> input) {
    const int n = static_cast<int>(input.size());
    auto in = allocate<fftw_complex>(input.size());
    auto out = allocate<fftw_complex>(input.size());
    std::optional<Plan> plan;
    {
        std::lock_guard lock(planner_mutex());
        plan.emplace(fftw_plan_dft_1d(n, in.get(), out.get(), FFTW_FORWARD, FFTW_ESTIMATE));
    }
    for (std::size_t i = 0; i < input.size(); ++i) {
        in[i][0] = input[i].real();
        in[i][1] = input[i].imag();
    }
    plan->execute();

    std::vector<std::complex<double>> result(input.size());
    for (std::size_t j = 0; j < input.size(); ++j) result[j] = {out[j][0], out[j][1]};
    return result;
}

}  // namespace selfsim::detail
