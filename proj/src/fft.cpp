#include "hierakit/fft.hpp"

#include <unsupported/Eigen/FFT>

namespace hierakit {

namespace {

// One 1-D pass along the axis with the given element stride, applied to
// every line of the flattened tensor. Lines are gathered into a contiguous
// scratch vector because the kissfft backend wants unit stride.
void transform_axis(std::complex<double>* data, std::int64_t total, int M,
                    std::int64_t stride, bool forward, Eigen::FFT<double>& engine) {
  const double scale = 1.0 / std::sqrt(static_cast<double>(M));
  Eigen::VectorXcd line(M), out(M);
  const std::int64_t block = stride * M;
  for (std::int64_t base = 0; base < total; base += block) {
    for (std::int64_t off = 0; off < stride; ++off) {
      std::complex<double>* p = data + base + off;
      for (int j = 0; j < M; ++j) line[j] = p[j * stride];
      if (forward)
        engine.fwd(out, line);
      else
        engine.inv(out, line);
      for (int j = 0; j < M; ++j) p[j * stride] = out[j] * scale;
    }
  }
}

void transform_all(std::complex<double>* data, std::int64_t total, int M,
                   int axes, bool forward) {
  Eigen::FFT<double> engine;
  engine.SetFlag(Eigen::FFT<double>::Unscaled);
  // Row-major layout: axis a (0 slowest) has stride M^(axes-1-a). The axes
  // commute, so iterate from the fastest stride outward.
  std::int64_t stride = 1;
  for (int a = axes - 1; a >= 0; --a) {
    transform_axis(data, total, M, stride, forward, engine);
    stride *= M;
  }
}

}  // namespace

void fourier_forward(Eigen::VectorXcd& data, const TorusGrid& g, int axes) {
  transform_all(data.data(), data.size(), g.M, axes, true);
}

void fourier_inverse(Eigen::VectorXcd& data, const TorusGrid& g, int axes) {
  transform_all(data.data(), data.size(), g.M, axes, false);
}

void fourier_forward(Eigen::MatrixXcd& data, const TorusGrid& g, int k) {
  // Column-major storage: memory index = r + c*rows. The primed (column)
  // axes therefore sit above the unprimed ones with stride rows().
  const int axes = k * g.d;
  std::int64_t stride = 1;
  Eigen::FFT<double> engine;
  engine.SetFlag(Eigen::FFT<double>::Unscaled);
  for (int a = axes - 1; a >= 0; --a) {
    transform_axis(data.data(), data.size(), g.M, stride, true, engine);
    transform_axis(data.data(), data.size(), g.M, stride * data.rows(), true, engine);
    stride *= g.M;
  }
}

void fourier_inverse(Eigen::MatrixXcd& data, const TorusGrid& g, int k) {
  const int axes = k * g.d;
  std::int64_t stride = 1;
  Eigen::FFT<double> engine;
  engine.SetFlag(Eigen::FFT<double>::Unscaled);
  for (int a = axes - 1; a >= 0; --a) {
    transform_axis(data.data(), data.size(), g.M, stride, false, engine);
    transform_axis(data.data(), data.size(), g.M, stride * data.rows(), false, engine);
    stride *= g.M;
  }
}

Eigen::VectorXd kinetic_symbol(const TorusGrid& g, int axes) {
  Eigen::VectorXd u2(g.M);
  for (int i = 0; i < g.M; ++i) {
    double u = g.wavenumber(i);
    u2[i] = u * u;
  }
  Eigen::VectorXd sym = Eigen::VectorXd::Zero(1);
  for (int a = 0; a < axes; ++a) {
    Eigen::VectorXd next(sym.size() * g.M);
    for (std::int64_t i = 0; i < sym.size(); ++i)
      for (int m = 0; m < g.M; ++m) next[i * g.M + m] = sym[i] + u2[m];
    sym.swap(next);
  }
  return sym;
}

Eigen::VectorXd bracket_symbol(const TorusGrid& g, int axes, double alpha) {
  BracketTable table(g, alpha);
  Eigen::VectorXd sym = Eigen::VectorXd::Ones(1);
  for (int a = 0; a < axes; ++a) {
    Eigen::VectorXd next(sym.size() * g.M);
    for (std::int64_t i = 0; i < sym.size(); ++i)
      for (int m = 0; m < g.M; ++m) next[i * g.M + m] = sym[i] * table.w[m];
    sym.swap(next);
  }
  return sym;
}

}  // namespace hierakit
