#ifndef ZKLAB_FFT_HPP
#define ZKLAB_FFT_HPP

#include <complex>
#include <map>
#include <mutex>
#include <vector>

#include <fftw3.h>

namespace zklab {
namespace fft {

// FFTW planning is not thread-safe; execution via fftw_execute_dft is. Plans
// are created once per shape under a lock and reused for the whole process.
// FFTW_UNALIGNED lets the cached plan run on arbitrary caller buffers.
class PlanCache {
  public:
    static PlanCache& instance() {
        static PlanCache cache;
        return cache;
    }

    // In-place capable c2c transform, rank 1..3, sign FFTW_FORWARD/BACKWARD.
    void execute(const std::vector<int>& shape, int sign, std::complex<double>* in,
                 std::complex<double>* out) {
        fftw_plan plan = nullptr;
        {
            std::lock_guard<std::mutex> lock(mutex_);
            Key key{shape, sign};
            auto it = plans_.find(key);
            if (it == plans_.end()) {
                // Plan on a scratch buffer so caller data is untouched by planning.
                std::size_t n = 1;
                for (int s : shape) n *= static_cast<std::size_t>(s);
                std::vector<std::complex<double>> scratch(n);
                auto* p = reinterpret_cast<fftw_complex*>(scratch.data());
                plan = fftw_plan_dft(static_cast<int>(shape.size()), shape.data(), p, p, sign,
                                     FFTW_ESTIMATE | FFTW_UNALIGNED);
                plans_.emplace(key, plan);
            } else {
                plan = it->second;
            }
        }
        fftw_execute_dft(plan, reinterpret_cast<fftw_complex*>(in),
                         reinterpret_cast<fftw_complex*>(out));
    }

    PlanCache(const PlanCache&) = delete;
    PlanCache& operator=(const PlanCache&) = delete;

  private:
    PlanCache() = default;
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    using Key = std::pair<std::vector<int>, int>;
    std::map<Key, fftw_plan> plans_;
    std::mutex mutex_;
};

inline void dft(const std::vector<int>& shape, int sign, std::complex<double>* data) {
    PlanCache::instance().execute(shape, sign, data, data);
}

} // namespace fft
} // namespace zklab

#endif
