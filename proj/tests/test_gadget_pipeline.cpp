#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "arcgram/hardness.hpp"
#include "arcgram/pipeline.hpp"

using namespace arcgram;

TEST_CASE("heuristic runs on a compiled gadget instance") {
  const auto g = compile(MonotoneFormula::parse("1 2 3\n3 4 5\n1 3 5\n-1 -4 -5\n"));
  PipelineOptions opt;
  opt.allow_zero_targets = true;
  const auto r = run_pipeline(g.subdivision(), opt);
  for (const auto& v : r.violations) MESSAGE(v.entity << ": " << v.rule << ": " << v.message);
  CHECK(r.violations.empty());
  CHECK(r.flow.value <= r.network.demand + 1e-9);
  const double lhs = r.report.summary.total_error;
  const double rhs = 2 * (r.network.demand - r.flow.value);
  CHECK(std::abs(lhs - rhs) <= 1e-6 * std::max(1.0, lhs));
}
