#include "arcgram/metrics.hpp"

#include <cmath>

#include "arcgram/geometry.hpp"

namespace arcgram {

FaceMetrics face_metrics(double a, double t, double b, bool allow_zero_target) {
  if (!std::isfinite(a) || !std::isfinite(t) || !std::isfinite(b)) {
    throw DomainError("face metrics need finite areas");
  }
  if (t < 0 || (t == 0 && !allow_zero_target)) throw DomainError("target area must be positive");
  FaceMetrics m;
  const double delta = t - a;
  if (delta != 0) m.success_rate = (b - a) / delta;
  m.cartographic_error = t > 0 ? std::abs(b - t) / t : std::abs(b);
  return m;
}

Summary summarize(const std::vector<FaceRow>& rows, double zero_tol) {
  Summary s;
  double rate_sum = 0.0;
  int rate_count = 0;
  for (const FaceRow& r : rows) {
    if (r.success_rate) {
      rate_sum += *r.success_rate;
      ++rate_count;
    }
    s.average_error += r.cartographic_error;
    s.total_error += std::abs(r.result - r.target);
    if (r.cartographic_error <= zero_tol) ++s.zero_error_faces;
  }
  if (rate_count > 0) s.average_success_rate = rate_sum / rate_count;
  if (!rows.empty()) s.average_error /= static_cast<double>(rows.size());
  return s;
}

}  // namespace arcgram
