#pragma once

// Data-parallel kernel sweeps. Each sweep exists twice: a serial reference
// and an OpenMP version; both evaluate every point through the same
// KernelEvaluator calls, so results agree bit for bit.

#include <span>
#include <vector>

#include "polykernel/kernel.hpp"

namespace polykernel {

struct KernelPair {
  cplx z;
  cplx w;
};

// Thread cap from POLYKERNEL_THREADS (default: all available cores).
int configured_threads();
void apply_thread_limit();

namespace serial {
std::vector<cplx> weighted_kernel_grid(const KernelEvaluator& k, std::span<const KernelPair> pairs);
std::vector<double> one_point_grid(const KernelEvaluator& k, std::span<const cplx> points);
std::vector<double> berezin_grid(const KernelEvaluator& k, cplx center, std::span<const cplx> points);
}  // namespace serial

namespace omp {
std::vector<cplx> weighted_kernel_grid(const KernelEvaluator& k, std::span<const KernelPair> pairs);
std::vector<double> one_point_grid(const KernelEvaluator& k, std::span<const cplx> points);
std::vector<double> berezin_grid(const KernelEvaluator& k, cplx center, std::span<const cplx> points);
}  // namespace omp

}  // namespace polykernel
