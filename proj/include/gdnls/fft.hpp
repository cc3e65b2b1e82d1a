#pragma once

#include <complex>
#include <vector>

namespace gdnls::fft {

// Unnormalized forward transform (FFTW sign convention: exp(-i k x)).
void forward(const std::vector<std::complex<double>>& in,
             std::vector<std::complex<double>>& out);
// Unnormalized backward transform (exp(+i k x)); forward then backward
// multiplies by n.
void backward(const std::vector<std::complex<double>>& in,
              std::vector<std::complex<double>>& out);

}  // namespace gdnls::fft
