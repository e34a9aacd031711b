#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string_view>

#include "hecke/kernels.hpp"

namespace hecke::kernels {

namespace {

bool cpu_supports(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return avx2_table() != nullptr && __builtin_cpu_supports("avx2") &&
             __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::neon: return neon_table() != nullptr;
  }
  return false;
}

const KernelTable* pick_default() {
  if (const char* env = std::getenv("HECKE_KERNELS")) {
    const std::string_view want(env);
    for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
      if (want == to_string(isa) && cpu_supports(isa)) return &table(isa);
  }
  if (cpu_supports(Isa::avx2)) return avx2_table();
  if (cpu_supports(Isa::neon)) return neon_table();
  return &scalar_table();
}

std::atomic<const KernelTable*> current{nullptr};

}  // namespace

std::string to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

std::vector<Isa> available() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::scalar, Isa::avx2, Isa::neon})
    if (cpu_supports(isa)) out.push_back(isa);
  return out;
}

const KernelTable& table(Isa isa) {
  if (!cpu_supports(isa)) throw std::invalid_argument("kernel variant " + to_string(isa) + " is unavailable");
  switch (isa) {
    case Isa::avx2: return *avx2_table();
    case Isa::neon: return *neon_table();
    case Isa::scalar: break;
  }
  return scalar_table();
}

const KernelTable& active() {
  const KernelTable* t = current.load(std::memory_order_acquire);
  if (!t) {
    t = pick_default();
    current.store(t, std::memory_order_release);
  }
  return *t;
}

void select(Isa isa) { current.store(&table(isa), std::memory_order_release); }

}  // namespace hecke::kernels
