// Copyright 2026 The gptlab Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cstdlib>
#include <stdexcept>
#include <string>

#include "gptlab/simd.hpp"

namespace gptlab::simd {

#if defined(GPTLAB_HAVE_AVX2)
namespace avx2 {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
}  // namespace avx2
#endif

#if defined(GPTLAB_HAVE_NEON)
namespace neon {
double dot(const double* a, const double* b, std::size_t n);
void axpy(double alpha, const double* x, double* y, std::size_t n);
void scale(double alpha, double* x, std::size_t n);
}  // namespace neon
#endif

namespace {

constexpr KernelTable kScalar{Isa::Scalar, &scalar::dot, &scalar::axpy, &scalar::scale};
#if defined(GPTLAB_HAVE_AVX2)
constexpr KernelTable kAvx2{Isa::Avx2, &avx2::dot, &avx2::axpy, &avx2::scale};
#endif
#if defined(GPTLAB_HAVE_NEON)
constexpr KernelTable kNeon{Isa::Neon, &neon::dot, &neon::axpy, &neon::scale};
#endif

const KernelTable& select() {
  if (const char* forced = std::getenv("GPTLAB_SIMD"); forced && std::string(forced) == "scalar") {
    return kScalar;
  }
  if (available(Isa::Avx2)) return table(Isa::Avx2);
  if (available(Isa::Neon)) return table(Isa::Neon);
  return kScalar;
}

}  // namespace

std::string_view isa_name(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if defined(GPTLAB_HAVE_AVX2)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
#if defined(GPTLAB_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

const KernelTable& table(Isa isa) {
  if (!available(isa)) throw std::logic_error("kernel table not available: " + std::string(isa_name(isa)));
  switch (isa) {
#if defined(GPTLAB_HAVE_AVX2)
    case Isa::Avx2: return kAvx2;
#endif
#if defined(GPTLAB_HAVE_NEON)
    case Isa::Neon: return kNeon;
#endif
    default: return kScalar;
  }
}

const KernelTable& active() {
  static const KernelTable& chosen = select();
  return chosen;
}

}  // namespace gptlab::simd
