#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string_view>

#include "convexreg/smoothing/dataset.hpp"
#include "convexreg/smoothing/kernel.hpp"

namespace convexreg::smoothing {

enum class SmootherKind { nadaraya_watson, local_poly, moving_window };

// ratio:    sum K y / sum K
// johnston: sum K y / (n h^d), not normalized by the kernel mass
enum class KernelForm { ratio, johnston };

std::string_view to_string(SmootherKind kind);
SmootherKind smoother_kind_from_name(std::string_view name); // "nw" | "localpoly" | "window"

struct PointEstimate
{
  double value = 0.0;
  // The local-polynomial system was singular and the weighted mean was used.
  bool fallback = false;
};

// Everything that defines a smoother except its data and bandwidth.
struct SmootherSettings
{
  SmootherKind kind = SmootherKind::local_poly;
  Kernel kernel{ KernelType::gaussian };
  int degree = 1;
  KernelForm form = KernelForm::ratio;
};

// An evaluable estimate f_n. Immutable; evaluation is thread safe.
class SmootherFit
{
public:
  SmootherFit(std::shared_ptr<const Dataset> data, SmootherSettings settings, double bandwidth);

  const Dataset& data() const noexcept { return *data_; }
  const std::shared_ptr<const Dataset>& shared_data() const noexcept { return data_; }
  const SmootherSettings& settings() const noexcept { return settings_; }
  SmootherKind kind() const noexcept { return settings_.kind; }
  const Kernel& kernel() const noexcept { return settings_.kernel; }
  int degree() const noexcept { return settings_.degree; }
  double bandwidth() const noexcept { return h_; }

  // Throws empty_window when no observation carries weight at x.
  PointEstimate evaluate(std::span<const double> x) const;
  double operator()(std::span<const double> x) const { return evaluate(x).value; }

  // Leave-one-out estimate: observation `skip` is removed from the data.
  PointEstimate evaluate_excluding(std::span<const double> x, std::size_t skip) const;

private:
  PointEstimate estimate(std::span<const double> x, std::size_t skip) const;

  std::shared_ptr<const Dataset> data_;
  SmootherSettings settings_;
  double h_;
};

SmootherFit fit_smoother(std::shared_ptr<const Dataset> data, const SmootherSettings& settings,
                         double h);

SmootherFit fit_nadaraya_watson(const Dataset& data, const Kernel& kernel, double h,
                                KernelForm form = KernelForm::ratio);
SmootherFit fit_local_poly(const Dataset& data, const Kernel& kernel, double h, int degree);
SmootherFit fit_moving_window(const Dataset& data, double h);

} // namespace convexreg::smoothing
