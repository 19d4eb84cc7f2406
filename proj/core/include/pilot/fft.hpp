#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace pilot {

/// In-place complex FFT over a row-major array of rank 1..3, or along one axis of it.
///
/// Plans are built with FFTW_ESTIMATE so results are reproducible run to run.
/// The inverse transform is normalized (forward then inverse is the identity).
class FftPlan {
 public:
  /// axis < 0 transforms all axes; otherwise only the given axis.
  explicit FftPlan(std::vector<std::size_t> shape, int axis = -1);
  ~FftPlan();
  FftPlan(const FftPlan&) = delete;
  FftPlan& operator=(const FftPlan&) = delete;
  FftPlan(FftPlan&& other) noexcept;
  FftPlan& operator=(FftPlan&& other) noexcept;

  void forward(std::span<std::complex<double>> data) const;
  void inverse(std::span<std::complex<double>> data) const;

  std::size_t size() const noexcept { return total_; }

 private:
  void release() noexcept;
  std::vector<std::size_t> shape_;
  std::size_t total_ = 0;
  std::size_t transform_length_ = 0;
  void* forward_plan_ = nullptr;
  void* inverse_plan_ = nullptr;
};

}  // namespace pilot
