#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "crinv/kernels.hpp"

namespace crinv::kernels {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "?";
}

bool isa_supported(Isa isa) {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2:
#if defined(__x86_64__) || defined(_M_X64)
      return __builtin_cpu_supports("avx2");
#else
      return false;
#endif
    case Isa::neon:
#if defined(__aarch64__)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa best_isa() {
  if (isa_supported(Isa::avx2)) return Isa::avx2;
  if (isa_supported(Isa::neon)) return Isa::neon;
  return Isa::scalar;
}

Isa parse_isa(std::string_view text) {
  if (text == "auto" || text.empty()) return best_isa();
  if (text == "scalar") return Isa::scalar;
  if (text == "avx2") return Isa::avx2;
  if (text == "neon") return Isa::neon;
  throw std::invalid_argument("unknown kernel variant '" + std::string(text) + "'");
}

namespace {

Isa initial_isa() {
  const char* env = std::getenv("CR_INVARIANTS_KERNEL");
  if (env == nullptr) return best_isa();
  Isa isa = parse_isa(env);
  // An unsupported request degrades to the reference kernel.
  return isa_supported(isa) ? isa : Isa::scalar;
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial_isa()};
  return isa;
}

}  // namespace

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (!isa_supported(isa))
    throw std::invalid_argument("kernel variant " + std::string(to_string(isa)) + " is not supported here");
  active().store(isa, std::memory_order_relaxed);
}

void line_minima(const LineProblem& p, double* value, double* t_out) {
  if (p.rows < 1 || p.rows > kMaxRows) throw std::invalid_argument("line problem row count out of range");
  if (p.t_lo > p.t_hi) throw std::invalid_argument("empty solve range");
  switch (active_isa()) {
    case Isa::avx2: return line_minima_avx2(p, value, t_out);
    case Isa::neon: return line_minima_neon(p, value, t_out);
    case Isa::scalar: break;
  }
  line_minima_scalar(p, value, t_out);
}

}  // namespace crinv::kernels
