#include "nlskdv/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

namespace nlskdv {
namespace {

// Plans are created against dummy aligned buffers with FFTW_UNALIGNED so they
// can be executed on any caller array via fftw_execute_dft.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    fftw_plan get(std::size_t nt, std::size_t nx, int sign) {
        std::lock_guard<std::mutex> lock(mutex_);
        auto key = std::make_tuple(nt, nx, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        std::vector<cplx> dummy(nt * nx);
        auto* buf = reinterpret_cast<fftw_complex*>(dummy.data());
        fftw_plan plan;
        if (nt == 1) {
            plan = fftw_plan_dft_1d(static_cast<int>(nx), buf, buf, sign,
                                    FFTW_ESTIMATE | FFTW_UNALIGNED);
        } else {
            plan = fftw_plan_dft_2d(static_cast<int>(nt), static_cast<int>(nx),
                                    buf, buf, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
        }
        if (!plan) throw std::runtime_error("fftw plan creation failed");
        plans_.emplace(key, plan);
        return plan;
    }

  private:
    PlanCache() = default;
    std::mutex mutex_;
    std::map<std::tuple<std::size_t, std::size_t, int>, fftw_plan> plans_;
};

void execute(std::vector<cplx>& data, std::size_t nt, std::size_t nx, int sign) {
    if (data.size() != nt * nx) throw std::invalid_argument("fft: size mismatch");
    fftw_plan plan = PlanCache::instance().get(nt, nx, sign);
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_execute_dft(plan, buf, buf);
}

}  // namespace

void fft_forward(std::vector<cplx>& data) {
    const double scale = 1.0 / static_cast<double>(data.size());
    execute(data, 1, data.size(), FFTW_FORWARD);
    for (auto& z : data) z *= scale;
}

void fft_inverse(std::vector<cplx>& data) { execute(data, 1, data.size(), FFTW_BACKWARD); }

void fft_forward_2d(std::vector<cplx>& data, std::size_t nt, std::size_t nx) {
    const double scale = 1.0 / static_cast<double>(nt * nx);
    execute(data, nt, nx, FFTW_FORWARD);
    for (auto& z : data) z *= scale;
}

void fft_inverse_2d(std::vector<cplx>& data, std::size_t nt, std::size_t nx) {
    execute(data, nt, nx, FFTW_BACKWARD);
}

}  // namespace nlskdv
