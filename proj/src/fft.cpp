#include "sqg/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace sqg {
namespace {

struct PlanPair {
    fftw_plan fwd = nullptr;
    fftw_plan inv = nullptr;

    explicit PlanPair(int n) {
        // Plan on a scratch buffer; FFTW_UNALIGNED keeps the plan valid for
        // any caller-provided array.
        fftw_complex* buf = fftw_alloc_complex(static_cast<size_t>(n) * n);
        if (!buf) throw std::bad_alloc();
        const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;
        fwd = fftw_plan_dft_2d(n, n, buf, buf, FFTW_FORWARD, flags);
        inv = fftw_plan_dft_2d(n, n, buf, buf, FFTW_BACKWARD, flags);
        fftw_free(buf);
        if (!fwd || !inv) throw std::runtime_error("fftw planning failed");
    }
    ~PlanPair() {
        if (fwd) fftw_destroy_plan(fwd);
        if (inv) fftw_destroy_plan(inv);
    }
    PlanPair(const PlanPair&) = delete;
    PlanPair& operator=(const PlanPair&) = delete;
};

PlanPair& plans_for(int n) {
    static std::mutex mu;
    static std::map<int, std::unique_ptr<PlanPair>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it == cache.end())
        it = cache.emplace(n, std::make_unique<PlanPair>(n)).first;
    return *it->second;
}

}  // namespace

void fft2_forward(int n, std::complex<double>* data) {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plans_for(n).fwd, d, d);
}

void fft2_inverse(int n, std::complex<double>* data) {
    auto* d = reinterpret_cast<fftw_complex*>(data);
    fftw_execute_dft(plans_for(n).inv, d, d);
}

}  // namespace sqg
