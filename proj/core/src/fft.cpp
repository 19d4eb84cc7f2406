#include "pilot/fft.hpp"

#include <fftw3.h>

#include <mutex>
#include <numeric>

#include "pilot/error.hpp"

namespace pilot {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
  static std::mutex m;
  return m;
}

}  // namespace

FftPlan::FftPlan(std::vector<std::size_t> shape, int axis) : shape_(std::move(shape)) {
  if (shape_.empty() || shape_.size() > 3) throw InvalidInput("FFT rank must be 1..3");
  total_ = std::accumulate(shape_.begin(), shape_.end(), std::size_t{1}, std::multiplies<>());
  if (total_ == 0) throw InvalidInput("FFT of an empty array");
  if (axis >= static_cast<int>(shape_.size())) throw InvalidInput("FFT axis out of range");

  std::vector<std::complex<double>> scratch(total_);
  auto* buf = reinterpret_cast<fftw_complex*>(scratch.data());
  const unsigned flags = FFTW_ESTIMATE | FFTW_UNALIGNED;

  std::lock_guard lock(planner_mutex());
  if (axis < 0) {
    std::vector<int> n(shape_.begin(), shape_.end());
    transform_length_ = total_;
    forward_plan_ = fftw_plan_dft(static_cast<int>(n.size()), n.data(), buf, buf, FFTW_FORWARD, flags);
    inverse_plan_ = fftw_plan_dft(static_cast<int>(n.size()), n.data(), buf, buf, FFTW_BACKWARD, flags);
  } else {
    const auto ax = static_cast<std::size_t>(axis);
    int n = static_cast<int>(shape_[ax]);
    std::size_t stride = 1;
    for (std::size_t d = ax + 1; d < shape_.size(); ++d) stride *= shape_[d];
    // One-axis transforms are batched over every other index.
    fftw_iodim dims{n, static_cast<int>(stride), static_cast<int>(stride)};
    std::vector<fftw_iodim> batch;
    for (std::size_t d = 0; d < shape_.size(); ++d) {
      if (d == ax) continue;
      std::size_t s = 1;
      for (std::size_t e = d + 1; e < shape_.size(); ++e) s *= shape_[e];
      batch.push_back(fftw_iodim{static_cast<int>(shape_[d]), static_cast<int>(s), static_cast<int>(s)});
    }
    transform_length_ = shape_[ax];
    forward_plan_ = fftw_plan_guru_dft(1, &dims, static_cast<int>(batch.size()), batch.data(), buf,
                                       buf, FFTW_FORWARD, flags);
    inverse_plan_ = fftw_plan_guru_dft(1, &dims, static_cast<int>(batch.size()), batch.data(), buf,
                                       buf, FFTW_BACKWARD, flags);
  }
  if (forward_plan_ == nullptr || inverse_plan_ == nullptr) {
    release();
    throw UnsupportedConfiguration("FFTW could not create a plan");
  }
}

FftPlan::~FftPlan() { release(); }

FftPlan::FftPlan(FftPlan&& other) noexcept
    : shape_(std::move(other.shape_)),
      total_(other.total_),
      transform_length_(other.transform_length_),
      forward_plan_(other.forward_plan_),
      inverse_plan_(other.inverse_plan_) {
  other.forward_plan_ = nullptr;
  other.inverse_plan_ = nullptr;
}

FftPlan& FftPlan::operator=(FftPlan&& other) noexcept {
  if (this != &other) {
    release();
    shape_ = std::move(other.shape_);
    total_ = other.total_;
    transform_length_ = other.transform_length_;
    forward_plan_ = other.forward_plan_;
    inverse_plan_ = other.inverse_plan_;
    other.forward_plan_ = nullptr;
    other.inverse_plan_ = nullptr;
  }
  return *this;
}

void FftPlan::release() noexcept {
  std::lock_guard lock(planner_mutex());
  if (forward_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(forward_plan_));
  if (inverse_plan_ != nullptr) fftw_destroy_plan(static_cast<fftw_plan>(inverse_plan_));
  forward_plan_ = nullptr;
  inverse_plan_ = nullptr;
}

void FftPlan::forward(std::span<std::complex<double>> data) const {
  if (data.size() != total_) throw ShapeMismatch("FFT input size differs from plan");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(forward_plan_), buf, buf);
}

void FftPlan::inverse(std::span<std::complex<double>> data) const {
  if (data.size() != total_) throw ShapeMismatch("FFT input size differs from plan");
  auto* buf = reinterpret_cast<fftw_complex*>(data.data());
  fftw_execute_dft(static_cast<fftw_plan>(inverse_plan_), buf, buf);
  const double scale = 1.0 / static_cast<double>(transform_length_);
  for (auto& v : data) v *= scale;
}

}  // namespace pilot
