#include "gdnls/fft.hpp"

#include <fftw3.h>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>

namespace gdnls::fft {

namespace {

// One reusable plan pair per transform size. Plans are created under a lock
// (FFTW planning is not thread safe); execution uses the new-array interface,
// which is safe to call concurrently on distinct buffers.
struct PlanPair {
  fftw_plan fwd = nullptr;
  fftw_plan bwd = nullptr;
  fftw_complex* buf_in = nullptr;   // alignment template buffers
  fftw_complex* buf_out = nullptr;
};

std::mutex plan_mutex;
std::map<std::size_t, PlanPair>& plan_cache() {
  static std::map<std::size_t, PlanPair> cache;
  return cache;
}

const PlanPair& plans_for(std::size_t n) {
  std::lock_guard<std::mutex> lock(plan_mutex);
  auto& cache = plan_cache();
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  PlanPair p;
  p.buf_in = fftw_alloc_complex(n);
  p.buf_out = fftw_alloc_complex(n);
  if (!p.buf_in || !p.buf_out) throw std::bad_alloc();
  p.fwd = fftw_plan_dft_1d(static_cast<int>(n), p.buf_in, p.buf_out,
                           FFTW_FORWARD, FFTW_ESTIMATE);
  p.bwd = fftw_plan_dft_1d(static_cast<int>(n), p.buf_in, p.buf_out,
                           FFTW_BACKWARD, FFTW_ESTIMATE);
  if (!p.fwd || !p.bwd) throw std::runtime_error("fftw plan creation failed");
  return cache.emplace(n, p).first->second;
}

struct Scratch {
  fftw_complex* in = nullptr;
  fftw_complex* out = nullptr;
  ~Scratch() {
    if (in) fftw_free(in);
    if (out) fftw_free(out);
  }
};

// Per-thread aligned staging buffers, grown on demand. fftw_alloc guarantees
// the alignment the cached plans were made with; std::vector storage may not.
Scratch& scratch_for(std::size_t n) {
  thread_local std::map<std::size_t, Scratch> buffers;
  Scratch& s = buffers[n];
  if (!s.in) {
    s.in = fftw_alloc_complex(n);
    s.out = fftw_alloc_complex(n);
    if (!s.in || !s.out) throw std::bad_alloc();
  }
  return s;
}

void execute(const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out, bool forward_dir) {
  const std::size_t n = in.size();
  if (n == 0) throw std::invalid_argument("fft on empty vector");
  const PlanPair& p = plans_for(n);
  Scratch& s = scratch_for(n);
  for (std::size_t j = 0; j < n; ++j) {
    s.in[j][0] = in[j].real();
    s.in[j][1] = in[j].imag();
  }
  fftw_execute_dft(forward_dir ? p.fwd : p.bwd, s.in, s.out);
  out.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    out[j] = {s.out[j][0], s.out[j][1]};
  }
}

}  // namespace

void forward(const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out) {
  execute(in, out, true);
}

void backward(const std::vector<std::complex<double>>& in,
              std::vector<std::complex<double>>& out) {
  execute(in, out, false);
}

}  // namespace gdnls::fft
