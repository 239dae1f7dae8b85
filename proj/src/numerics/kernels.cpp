#include "encforge/numerics/kernels.hpp"

#include <atomic>
#include <cstdlib>
#include <string>

#include "encforge/error.hpp"
#include "kernels_impl.hpp"

namespace encforge::numerics::kernels {

namespace {

constexpr KernelTable kScalar{Backend::Scalar,   "scalar",         &scalar::dot,
                              &scalar::gemv,     &scalar::gemv_acc, &scalar::gemv_t_acc,
                              &scalar::ger_acc,  &scalar::axpy};

#if defined(ENCFORGE_HAVE_AVX2)
constexpr KernelTable kAvx2{Backend::Avx2,     "avx2",          &avx2::dot,
                            &avx2::gemv,       &avx2::gemv_acc, &avx2::gemv_t_acc,
                            &avx2::ger_acc,    &avx2::axpy};

bool cpu_has_avx2() noexcept {
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#endif

const KernelTable* initial_table() {
  const KernelTable* best = &kScalar;
  if (const KernelTable* t = avx2_table()) best = t;
  if (const char* env = std::getenv("ENCFORGE_KERNELS")) {
    const std::string choice(env);
    if (choice == "scalar") return &kScalar;
    if (choice == "avx2" && avx2_table() != nullptr) return avx2_table();
  }
  return best;
}

std::atomic<const KernelTable*>& current() {
  static std::atomic<const KernelTable*> table{initial_table()};
  return table;
}

}  // namespace

const KernelTable& scalar_table() noexcept { return kScalar; }

const KernelTable* avx2_table() noexcept {
#if defined(ENCFORGE_HAVE_AVX2)
  static const bool ok = cpu_has_avx2();
  return ok ? &kAvx2 : nullptr;
#else
  return nullptr;
#endif
}

const KernelTable& active() noexcept { return *current().load(std::memory_order_relaxed); }

bool backend_available(Backend b) noexcept {
  return b == Backend::Scalar || avx2_table() != nullptr;
}

void set_backend(Backend b) {
  if (b == Backend::Scalar) {
    current().store(&kScalar);
    return;
  }
  const KernelTable* t = avx2_table();
  if (t == nullptr) throw PreconditionError("avx2 kernels unavailable on this CPU");
  current().store(t);
}

Backend parse_backend(std::string_view name) {
  if (name == "scalar") return Backend::Scalar;
  if (name == "avx2") return Backend::Avx2;
  throw ConfigError("unknown kernel backend '" + std::string(name) + "'");
}

}  // namespace encforge::numerics::kernels
