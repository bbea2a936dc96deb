#include "polykernel/parallel.hpp"

#include <omp.h>

#include <cstdlib>
#include <string>

namespace polykernel {

int configured_threads() {
  if (const char* env = std::getenv("POLYKERNEL_THREADS")) {
    try {
      const int t = std::stoi(env);
      if (t >= 1) return t;
    } catch (const std::exception&) {
    }
    warn(std::string("ignoring POLYKERNEL_THREADS='") + env + "'");
  }
  return omp_get_num_procs();
}

void apply_thread_limit() { omp_set_num_threads(configured_threads()); }

namespace serial {

std::vector<cplx> weighted_kernel_grid(const KernelEvaluator& k, std::span<const KernelPair> pairs) {
  std::vector<cplx> out(pairs.size());
  for (std::size_t i = 0; i < pairs.size(); ++i) out[i] = k.weighted_kernel(pairs[i].z, pairs[i].w);
  return out;
}

std::vector<double> one_point_grid(const KernelEvaluator& k, std::span<const cplx> points) {
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = k.one_point_intensity(points[i]);
  return out;
}

std::vector<double> berezin_grid(const KernelEvaluator& k, cplx center, std::span<const cplx> points) {
  const PointFeatures fc = k.features(center);
  std::vector<double> out(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) out[i] = k.berezin_density(fc, k.features(points[i]));
  return out;
}

}  // namespace serial

namespace omp {

std::vector<cplx> weighted_kernel_grid(const KernelEvaluator& k, std::span<const KernelPair> pairs) {
  std::vector<cplx> out(pairs.size());
  const auto n = static_cast<long>(pairs.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = k.weighted_kernel(pairs[u].z, pairs[u].w);
  }
  return out;
}

std::vector<double> one_point_grid(const KernelEvaluator& k, std::span<const cplx> points) {
  std::vector<double> out(points.size());
  const auto n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = k.one_point_intensity(points[static_cast<std::size_t>(i)]);
  return out;
}

std::vector<double> berezin_grid(const KernelEvaluator& k, cplx center, std::span<const cplx> points) {
  const PointFeatures fc = k.features(center);
  std::vector<double> out(points.size());
  const auto n = static_cast<long>(points.size());
#pragma omp parallel for schedule(static)
  for (long i = 0; i < n; ++i) {
    const auto u = static_cast<std::size_t>(i);
    out[u] = k.berezin_density(fc, k.features(points[u]));
  }
  return out;
}

}  // namespace omp

}  // namespace polykernel
