#include "trackgeom/fft.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cstring>
#include <memory>
#include <mutex>

#include "trackgeom/error.hpp"

namespace trackgeom::fft {
namespace {

// The FFTW planner is not thread-safe; plan execution is.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

struct PlanDeleter {
  void operator()(fftw_plan_s* p) const {
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(p);
  }
};

template <typename T>
struct FftwBuffer {
  explicit FftwBuffer(std::size_t n) : ptr(static_cast<T*>(fftw_malloc(sizeof(T) * std::max<std::size_t>(n, 1)))) {
    if (!ptr) fail(ErrorCode::internal, "fft: allocation failed");
  }
  ~FftwBuffer() { fftw_free(ptr); }
  FftwBuffer(const FftwBuffer&) = delete;
  FftwBuffer& operator=(const FftwBuffer&) = delete;
  T* ptr;
};

}  // namespace

std::vector<std::complex<double>> forward_real(std::span<const double> x) {
  const std::size_t n = x.size();
  require(n > 0, "fft: empty input");
  const std::size_t nbins = n / 2 + 1;
  FftwBuffer<double> in(n);
  FftwBuffer<fftw_complex> out(nbins);
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_r2c_1d(static_cast<int>(n), in.ptr, out.ptr, FFTW_ESTIMATE));
  }
  if (!plan) fail(ErrorCode::internal, "fft: planning failed");
  std::copy(x.begin(), x.end(), in.ptr);
  fftw_execute(plan.get());
  std::vector<std::complex<double>> bins(nbins);
  for (std::size_t k = 0; k < nbins; ++k) bins[k] = {out.ptr[k][0], out.ptr[k][1]};
  return bins;
}

std::vector<double> inverse_real(std::span<const std::complex<double>> bins, std::size_t n) {
  require(n > 0 && bins.size() == n / 2 + 1, "fft: bin count does not match length");
  FftwBuffer<fftw_complex> in(bins.size());
  FftwBuffer<double> out(n);
  std::unique_ptr<fftw_plan_s, PlanDeleter> plan;
  {
    std::lock_guard lock(planner_mutex());
    plan.reset(fftw_plan_dft_c2r_1d(static_cast<int>(n), in.ptr, out.ptr, FFTW_ESTIMATE));
  }
  if (!plan) fail(ErrorCode::internal, "fft: planning failed");
  // c2r destroys its input, so the copy is required anyway.
  for (std::size_t k = 0; k < bins.size(); ++k) {
    in.ptr[k][0] = bins[k].real();
    in.ptr[k][1] = bins[k].imag();
  }
  fftw_execute(plan.get());
  std::vector<double> x(out.ptr, out.ptr + n);
  const double scale = 1.0 / static_cast<double>(n);
  for (double& v : x) v *= scale;
  return x;
}

std::vector<double> rfft_frequencies(std::size_t n, double rate_hz) {
  std::vector<double> f(n / 2 + 1);
  for (std::size_t k = 0; k < f.size(); ++k) f[k] = static_cast<double>(k) * rate_hz / static_cast<double>(n);
  return f;
}

}  // namespace trackgeom::fft
