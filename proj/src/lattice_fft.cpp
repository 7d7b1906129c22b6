#include "lattice_fft.hpp"

#include <cstring>
#include <mutex>

namespace qca::detail {

namespace {
// FFTW's planner is not thread-safe; execution is.
std::mutex planner_mutex;
}  // namespace

LatticeFFT::LatticeFFT(const std::vector<int>& sizes, int internal_dim) {
  long long sites = 1;
  for (int n : sizes) sites *= n;
  length_ = sites * internal_dim;

  std::lock_guard lock(planner_mutex);
  buffer_ = fftw_alloc_complex(static_cast<std::size_t>(length_));
  if (!buffer_) throw Error("FFT buffer allocation failed");
  const int rank = static_cast<int>(sizes.size());
  forward_ = fftw_plan_many_dft(rank, sizes.data(), internal_dim, buffer_, nullptr, internal_dim, 1, buffer_,
                                nullptr, internal_dim, 1, FFTW_FORWARD, FFTW_ESTIMATE);
  backward_ = fftw_plan_many_dft(rank, sizes.data(), internal_dim, buffer_, nullptr, internal_dim, 1, buffer_,
                                 nullptr, internal_dim, 1, FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!forward_ || !backward_) throw Error("FFT planning failed");
}

LatticeFFT::~LatticeFFT() {
  std::lock_guard lock(planner_mutex);
  if (forward_) fftw_destroy_plan(forward_);
  if (backward_) fftw_destroy_plan(backward_);
  fftw_free(buffer_);
}

void LatticeFFT::execute(fftw_plan plan, CVector& data) const {
  if (data.size() != length_) throw DimensionMismatch("FFT input has wrong length");
  const std::size_t bytes = sizeof(fftw_complex) * static_cast<std::size_t>(length_);
  std::memcpy(buffer_, data.data(), bytes);
  fftw_execute(plan);
  std::memcpy(static_cast<void*>(data.data()), buffer_, bytes);
}

}  // namespace qca::detail
