#pragma once

#include <vector>

#include <fftw3.h>

#include "qca/types.hpp"

namespace qca::detail {

// Multi-dimensional DFT over a row-major lattice, applied independently to
// each of the s interleaved internal components. Unnormalized in both
// directions; the forward transform uses e^{−iθ·x}.
class LatticeFFT {
 public:
  LatticeFFT(const std::vector<int>& sizes, int internal_dim);
  ~LatticeFFT();
  LatticeFFT(const LatticeFFT&) = delete;
  LatticeFFT& operator=(const LatticeFFT&) = delete;

  void forward(CVector& data) const { execute(forward_, data); }
  void backward(CVector& data) const { execute(backward_, data); }

 private:
  void execute(fftw_plan plan, CVector& data) const;

  long long length_ = 0;
  fftw_complex* buffer_ = nullptr;
  fftw_plan forward_ = nullptr;
  fftw_plan backward_ = nullptr;
};

}  // namespace qca::detail
