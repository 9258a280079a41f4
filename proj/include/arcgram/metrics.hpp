#pragma once

#include <optional>
#include <string>
#include <vector>

namespace arcgram {

struct FaceMetrics {
  std::optional<double> success_rate;  // empty when the desired change is zero
  double cartographic_error = 0.0;
};

/// success = (b - a) / (t - a); error = |b - t| / t. Throws DomainError for
/// t <= 0 unless `allow_zero_target`, in which case a zero target reports the
/// absolute error |b|.
FaceMetrics face_metrics(double a, double t, double b, bool allow_zero_target = false);

struct FaceRow {
  std::string name;
  double initial = 0.0;  // a_i
  double target = 0.0;   // t_i
  double result = 0.0;   // b_i
  double delta = 0.0;    // t_i - a_i
  std::optional<double> success_rate;
  double cartographic_error = 0.0;
};

struct Summary {
  std::optional<double> average_success_rate;
  double average_error = 0.0;
  double total_error = 0.0;  // sum of |b_i - t_i|
  int zero_error_faces = 0;
  double flow_value = 0.0;   // |f|
  double demand = 0.0;       // D
};

struct CartogramReport {
  std::vector<FaceRow> faces;
  Summary summary;
};

/// Unweighted means; success rates only over rows where defined.
Summary summarize(const std::vector<FaceRow>& rows, double zero_tol = 1e-9);

}  // namespace arcgram
